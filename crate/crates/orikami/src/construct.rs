//! Realizing a stick knot diagram as a cone folding of the square.
//!
//! Given a closed stick picture with an over-strand declared at every
//! crossing, pick an apex above a face the picture winds around and lift it
//! until the cone over the sticks has total apex angle exactly 2π. Such a
//! cone is intrinsically flat, so it unrolls isometrically: wedge by wedge
//! onto the square, apex at the centre. The folding creases are the unrolled
//! slant rays, and the picture itself unrolls to a closed polygon around the
//! centre. Routing that polygon back through the folding reproduces the
//! sticks at height zero; bowing each over-strand slightly towards the apex
//! lifts it off its partner, so the folded loop realizes exactly the declared
//! crossings and ties the knot the diagram describes.

use crate::error::{Error, Result};
use crate::folding::{build_pattern, validate_folding, CreasePattern, Folding, PaperLoop};
use crate::geometry::poly::{point_in_polygon_interior, point_seg_distance, polygon_centroid};
use crate::geometry::pslg::{pslg_faces, split_segments_at_intersections};
use crate::geometry::{
    embedding_from_triangles, flat_crossings, seg2, v2, v3, Segment2, V2, V3,
};
use crate::knotid::{diagram_from_sticks, Diagram};
use crate::num::{Scalar, Tolerance};

/// Over-strand declaration for one crossing of a stick diagram: the pair of
/// edge indices that cross, and which of the two runs on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingOverride {
    pub edges: (usize, usize),
    pub over: usize,
}

/// A closed stick picture of a knot: corner points in cyclic order, edges
/// joining consecutive corners, and an over-strand declared for every
/// crossing of the picture.
#[derive(Debug, Clone, PartialEq)]
pub struct StickDiagram<S> {
    pub vertices: Vec<V2<S>>,
    pub crossing_overrides: Vec<CrossingOverride>,
}

/// A crossing of the stick picture with its declaration resolved: edge pair,
/// parameters along each edge, the crossing point, and the edge on top.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StickCrossing<S> {
    pub edges: (usize, usize),
    pub params: (S, S),
    pub point: V2<S>,
    pub over: usize,
}

/// Length tolerance at the scale of the picture, matching the one the
/// diagram builder uses so both resolve the same crossing set.
fn picture_eps<S: Scalar>(vertices: &[V2<S>], tol_geom: S) -> S {
    let mut lo = vertices[0];
    let mut hi = vertices[0];
    for &p in vertices {
        lo = v2(lo.x.min(p.x), lo.y.min(p.y));
        hi = v2(hi.x.max(p.x), hi.y.max(p.y));
    }
    (tol_geom * S::s(100.0)).max(S::s(1e-7)) * (hi - lo).norm().max(S::one())
}

impl<S: Scalar> StickDiagram<S> {
    pub fn new(vertices: Vec<V2<S>>, crossing_overrides: Vec<CrossingOverride>) -> Self {
        StickDiagram { vertices, crossing_overrides }
    }

    pub fn edge(&self, i: usize) -> Segment2<S> {
        let n = self.vertices.len();
        seg2(self.vertices[i], self.vertices[(i + 1) % n])
    }

    /// All crossings of the picture with their declarations attached.
    ///
    /// Rejects pictures that are not generic stick knots (collinear corners,
    /// edges overlapping or touching at a vertex, coincident crossing
    /// points) and declarations that do not match the geometry one-to-one.
    pub fn crossings(&self, tol: &Tolerance<S>) -> Result<Vec<StickCrossing<S>>> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(Error::Domain(
                "a stick diagram needs at least three vertices".into(),
            ));
        }
        let eps = picture_eps(&self.vertices, tol.geom);
        for i in 0..n {
            let da = self.vertices[i] - self.vertices[(i + n - 1) % n];
            let db = self.vertices[(i + 1) % n] - self.vertices[i];
            let la = da.norm();
            let lb = db.norm();
            if la <= eps || lb <= eps {
                return Err(Error::Domain(format!(
                    "stick vertices around corner {i} coincide"
                )));
            }
            if (da.cross(db) / (la * lb)).abs() < S::s(1e-7) {
                return Err(Error::Domain(format!(
                    "corner {i} is collinear with its neighbours; every stick corner must turn"
                )));
            }
        }
        let found = flat_crossings(&self.vertices, eps)?;

        for (k, c) in self.crossing_overrides.iter().enumerate() {
            let (a, b) = c.edges;
            if c.over != a && c.over != b {
                return Err(Error::Specification(format!(
                    "over-strand {} is not one of the crossing pair ({a}, {b})",
                    c.over
                )));
            }
            let same = |x: &CrossingOverride| {
                (x.edges == (a, b)) || (x.edges == (b, a))
            };
            if self.crossing_overrides[..k].iter().any(same) {
                return Err(Error::Specification(format!(
                    "crossing between edges {a} and {b} is declared twice"
                )));
            }
        }

        let mut used = vec![false; self.crossing_overrides.len()];
        let mut out = Vec::with_capacity(found.len());
        for x in &found {
            let slot = self.crossing_overrides.iter().position(|c| {
                c.edges == (x.seg_a, x.seg_b) || c.edges == (x.seg_b, x.seg_a)
            });
            let Some(k) = slot else {
                return Err(Error::Specification(format!(
                    "edges {} and {} cross but no over-strand is declared for them",
                    x.seg_a, x.seg_b
                )));
            };
            used[k] = true;
            out.push(StickCrossing {
                edges: (x.seg_a, x.seg_b),
                params: (x.t_a, x.t_b),
                point: x.point,
                over: self.crossing_overrides[k].over,
            });
        }
        if let Some(k) = used.iter().position(|&u| !u) {
            let (a, b) = self.crossing_overrides[k].edges;
            return Err(Error::Specification(format!(
                "declared crossing between edges {a} and {b} does not occur"
            )));
        }
        Ok(out)
    }

    pub fn validate(&self, tol: &Tolerance<S>) -> Result<()> {
        self.crossings(tol).map(|_| ())
    }
}

/// The knot diagram a stick picture declares, read off directly from the
/// flat geometry and the over-strand declarations. The constructed folding's
/// loop must certify with the same invariants as this diagram.
pub fn reference_diagram<S: Scalar>(s: &StickDiagram<S>, tol: &Tolerance<S>) -> Result<Diagram> {
    s.validate(tol)?;
    let overrides: Vec<([usize; 2], usize)> = s
        .crossing_overrides
        .iter()
        .map(|c| ([c.edges.0, c.edges.1], c.over))
        .collect();
    diagram_from_sticks(&s.vertices, &overrides, tol.geom)
}

/// A cone over a stick picture: the apex, the slant distance from the apex
/// to each corner, and the apex angle each edge subtends. The angles sum to
/// 2π, which is what lets the cone unroll isometrically onto the square.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeConstruction<S> {
    pub q: V3<S>,
    pub radii: Vec<S>,
    pub thetas: Vec<S>,
    pub source: StickDiagram<S>,
}

/// Apex angle subtended by each edge of the picture at the point `(q, z)`.
fn apex_angles<S: Scalar>(vertices: &[V2<S>], q: V2<S>, z: S) -> Vec<S> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let a = (vertices[i] - q).lift(-z);
            let b = (vertices[(i + 1) % n] - q).lift(-z);
            let c = a.dot(b) / (a.norm() * b.norm());
            c.max(-S::one()).min(S::one()).acos()
        })
        .collect()
}

fn angle_sum<S: Scalar>(vertices: &[V2<S>], q: V2<S>, z: S) -> S {
    apex_angles(vertices, q, z)
        .into_iter()
        .fold(S::zero(), |a, b| a + b)
}

/// Pick the apex footprint: among the bounded faces of the picture's
/// arrangement whose points see total angle at least 2π, the interior point
/// with the largest clearance from the sticks (ties to the earliest face).
pub fn choose_apex<S: Scalar>(s: &StickDiagram<S>, tol: &Tolerance<S>) -> Result<V2<S>> {
    s.validate(tol)?;
    let eps = picture_eps(&s.vertices, tol.geom);
    let n = s.vertices.len();
    let segments: Vec<Segment2<S>> = (0..n).map(|i| s.edge(i)).collect();
    let (verts, edges) = split_segments_at_intersections(&segments, eps)?;
    let faces = pslg_faces(&verts, &edges)?;
    let two_pi = S::PI() * S::s(2.0);

    let clearance = |p: V2<S>| {
        segments
            .iter()
            .map(|e| point_seg_distance(p, e.a, e.b))
            .fold(S::infinity(), |a, b| a.min(b))
    };

    let grid = 24;
    let mut best: Option<(S, V2<S>)> = None;
    let mut sums = Vec::with_capacity(faces.len());
    for face in &faces {
        let poly: Vec<V2<S>> = face.iter().map(|&k| verts[k]).collect();
        let mut lo = poly[0];
        let mut hi = poly[0];
        for &p in &poly {
            lo = v2(lo.x.min(p.x), lo.y.min(p.y));
            hi = v2(hi.x.max(p.x), hi.y.max(p.y));
        }
        let mut face_best: Option<(S, V2<S>)> = None;
        let centroid = polygon_centroid(&poly);
        let cells = (0..grid * grid).map(|k| {
            let fx = (S::s(k as f64 % grid as f64) + S::s(0.5)) / S::s(grid as f64);
            let fy = (S::s((k / grid) as f64) + S::s(0.5)) / S::s(grid as f64);
            v2(lo.x + (hi.x - lo.x) * fx, lo.y + (hi.y - lo.y) * fy)
        });
        for p in std::iter::once(centroid).chain(cells) {
            if !point_in_polygon_interior(p, &poly, eps) {
                continue;
            }
            let c = clearance(p);
            if face_best.map_or(true, |(bc, _)| c > bc) {
                face_best = Some((c, p));
            }
        }
        let Some((c, p)) = face_best else {
            sums.push(S::zero());
            continue;
        };
        let sum = angle_sum(&s.vertices, p, S::zero());
        sums.push(sum);
        if sum >= two_pi - tol.angle && best.map_or(true, |(bc, _)| c > bc) {
            best = Some((c, p));
        }
    }
    match best {
        Some((_, p)) => Ok(p),
        None => {
            let listed: Vec<String> = sums
                .iter()
                .enumerate()
                .map(|(i, s)| format!("face {i}: {:.6}", s.to_f64().unwrap_or(f64::NAN)))
                .collect();
            Err(Error::Construction(format!(
                "no arrangement face sees total angle 2π from the plane; per-face sums: {}",
                listed.join(", ")
            )))
        }
    }
}

/// Lift the apex above `q0` until the total apex angle equals 2π, by
/// doubling and bisection. At height zero the angle sum must already be at
/// least 2π; it decreases to zero as the apex rises.
pub fn solve_apex_height<S: Scalar>(
    s: &StickDiagram<S>,
    q0: V2<S>,
    tol: &Tolerance<S>,
) -> Result<ConeConstruction<S>> {
    s.validate(tol)?;
    let eps = picture_eps(&s.vertices, tol.geom);
    for (i, &p) in s.vertices.iter().enumerate() {
        if p.dist(q0) <= eps {
            return Err(Error::Domain(format!(
                "apex footprint coincides with stick vertex {i}"
            )));
        }
    }
    let two_pi = S::PI() * S::s(2.0);
    let sum0 = angle_sum(&s.vertices, q0, S::zero());
    let z = if (sum0 - two_pi).abs() <= tol.angle {
        S::zero()
    } else if sum0 < two_pi {
        return Err(Error::Domain(format!(
            "apex footprint sees total angle {:.6} < 2π; pick a point the picture winds around",
            sum0.to_f64().unwrap_or(f64::NAN)
        )));
    } else {
        let cap = S::s((2.0f64).powi(60));
        let mut lo = S::zero();
        let mut hi = S::one();
        while angle_sum(&s.vertices, q0, hi) > two_pi {
            lo = hi;
            hi = hi * S::s(2.0);
            if hi > cap {
                return Err(Error::Numeric(
                    "apex height bracketing exceeded 2^60 without closing the cone".into(),
                ));
            }
        }
        let mut mid = (lo + hi) / S::s(2.0);
        let mut done = false;
        for _ in 0..500 {
            mid = (lo + hi) / S::s(2.0);
            let sm = angle_sum(&s.vertices, q0, mid);
            if (sm - two_pi).abs() <= tol.angle {
                done = true;
                break;
            }
            if sm > two_pi {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if !done {
            return Err(Error::Numeric(
                "apex height bisection did not converge to the cone angle".into(),
            ));
        }
        mid
    };
    let radii = s
        .vertices
        .iter()
        .map(|&p| (p - q0).lift(-z).norm())
        .collect();
    let thetas = apex_angles(&s.vertices, q0, z);
    Ok(ConeConstruction {
        q: v3(q0.x, q0.y, z),
        radii,
        thetas,
        source: s.clone(),
    })
}

/// The unrolled picture: apex at the square's centre, corner `i` at polar
/// angle `phis[i]` and distance `scale * radii[i]`.
struct UnrolledCone<S> {
    scale: S,
    centre: V2<S>,
    corners: Vec<V2<S>>,
    phis: Vec<S>,
}

fn unroll<S: Scalar>(c: &ConeConstruction<S>, tol: &Tolerance<S>) -> Result<UnrolledCone<S>> {
    let n = c.source.vertices.len();
    if n < 3 || c.radii.len() != n || c.thetas.len() != n {
        return Err(Error::Domain(
            "cone construction is inconsistent with its stick picture".into(),
        ));
    }
    let mut rmax = S::zero();
    for (i, &r) in c.radii.iter().enumerate() {
        if r <= S::zero() {
            return Err(Error::Domain(format!("cone radius {i} is not positive")));
        }
        rmax = rmax.max(r);
    }
    let two_pi = S::PI() * S::s(2.0);
    let mut phis = Vec::with_capacity(n + 1);
    let mut acc = S::zero();
    phis.push(acc);
    for (i, &t) in c.thetas.iter().enumerate() {
        if t <= S::zero() {
            return Err(Error::Domain(format!("cone angle {i} is not positive")));
        }
        acc = acc + t;
        phis.push(acc);
    }
    if (acc - two_pi).abs() > tol.angle * S::s(10.0) {
        return Err(Error::Construction(format!(
            "cone angles sum to {:.9}, not 2π; solve the apex height first",
            acc.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let scale = S::s(0.45) / rmax;
    let centre = v2(S::s(0.5), S::s(0.5));
    let corners = (0..n)
        .map(|i| {
            let r = scale * c.radii[i];
            centre + v2(phis[i].cos(), phis[i].sin()).scale(r)
        })
        .collect();
    Ok(UnrolledCone { scale, centre, corners, phis })
}

impl<S: Scalar> ConeConstruction<S> {
    /// Factor shrinking slant distances so the picture fits the square.
    pub fn scale(&self) -> S {
        let rmax = self.radii.iter().fold(S::zero(), |a, &b| a.max(b));
        S::s(0.45) / rmax
    }

    /// Unrolled positions of the stick corners inside the square.
    pub fn unfolded_corners(&self, tol: &Tolerance<S>) -> Result<Vec<V2<S>>> {
        unroll(self, tol).map(|u| u.corners)
    }
}

/// Unroll the cone to a crease pattern: one crease per corner, running from
/// the centre of the square through the unrolled corner to the boundary.
pub fn unfold_to_pattern<S: Scalar>(
    c: &ConeConstruction<S>,
    tol: &Tolerance<S>,
) -> Result<CreasePattern<S>> {
    let u = unroll(c, tol)?;
    let n = u.corners.len();
    let mut vertices = Vec::with_capacity(n + 1);
    vertices.push(u.centre);
    for &p in &u.corners {
        let dir = (p - u.centre)
            .normalize()
            .ok_or_else(|| Error::Domain("unrolled corner coincides with the centre".into()))?;
        // Exit parameter of the ray from the centre towards each side.
        let half = S::s(0.5);
        let tx = if dir.x.abs() > S::zero() { half / dir.x.abs() } else { S::infinity() };
        let ty = if dir.y.abs() > S::zero() { half / dir.y.abs() } else { S::infinity() };
        let t = tx.min(ty);
        let b = u.centre + dir.scale(t);
        vertices.push(v2(
            b.x.max(S::zero()).min(S::one()),
            b.y.max(S::zero()).min(S::one()),
        ));
    }
    let creases: Vec<(usize, usize)> = (0..n).map(|i| (0, i + 1)).collect();
    build_pattern(&vertices, &creases, tol)
}

/// Index of the wedge (by unrolled angle) that contains `p`.
fn wedge_of<S: Scalar>(u: &UnrolledCone<S>, p: V2<S>) -> usize {
    let two_pi = S::PI() * S::s(2.0);
    let d = p - u.centre;
    let mut ang = d.y.atan2(d.x);
    if ang < S::zero() {
        ang = ang + two_pi;
    }
    let n = u.corners.len();
    for i in 0..n {
        if ang < u.phis[i + 1] {
            return i;
        }
    }
    n - 1
}

/// Build the cone folding: each unrolled wedge maps rigidly back onto the
/// corresponding spatial triangle of the (scaled) cone.
pub fn build_cone_folding<S: Scalar>(
    c: &ConeConstruction<S>,
    tol: &Tolerance<S>,
) -> Result<Folding<S>> {
    let u = unroll(c, tol)?;
    let n = u.corners.len();
    let pattern = unfold_to_pattern(c, tol)?;
    if pattern.faces.len() != n {
        return Err(Error::InvalidFolding(format!(
            "cone pattern has {} faces for {n} wedges",
            pattern.faces.len()
        )));
    }
    let apex = c.q.scale(u.scale);
    let spatial: Vec<V3<S>> = c
        .source
        .vertices
        .iter()
        .map(|&p| p.lift(S::zero()).scale(u.scale))
        .collect();
    let wedge_maps: Vec<_> = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            embedding_from_triangles(
                [u.centre, u.corners[i], u.corners[j]],
                [apex, spatial[i], spatial[j]],
                tol.iso,
            )
        })
        .collect::<Result<_>>()?;
    let face_maps = pattern
        .faces
        .iter()
        .map(|face| {
            let poly: Vec<V2<S>> = face.iter().map(|&k| pattern.vertices[k]).collect();
            wedge_maps[wedge_of(&u, polygon_centroid(&poly))]
        })
        .collect();
    let folding = Folding { pattern, face_maps };
    let report = validate_folding(&folding, false, tol);
    if !report.is_valid {
        return Err(Error::InvalidFolding(
            "cone folding failed validation".into(),
        ));
    }
    Ok(folding)
}

/// Route the unrolled picture as a loop in the square, bowing each
/// over-strand towards the centre so its folded image passes above the
/// under-strand at every declared crossing.
pub fn loop_with_crossings<S: Scalar>(
    c: &ConeConstruction<S>,
    tol: &Tolerance<S>,
) -> Result<PaperLoop<S>> {
    let u = unroll(c, tol)?;
    let crossings = c.source.crossings(tol)?;
    let n = u.corners.len();
    if c.q.z <= tol.geom && !crossings.is_empty() {
        return Err(Error::Construction(
            "a flat cone leaves no room to lift over-strands; crossings need a raised apex".into(),
        ));
    }

    // One preimage of each crossing per participating edge, by edge parameter
    // (the wedge embeddings are rigid, so parameters carry over unchanged).
    let at = |edge: usize, t: S| u.corners[edge].lerp(u.corners[(edge + 1) % n], t);
    let mut passes: Vec<(usize, S, bool)> = Vec::with_capacity(2 * crossings.len());
    for x in &crossings {
        passes.push((x.edges.0, x.params.0, x.over == x.edges.0));
        passes.push((x.edges.1, x.params.1, x.over == x.edges.1));
    }

    // Detour radius: a quarter of the closest approach between crossing
    // preimages, corners, and the creases bounding each wedge.
    let mut gap = S::infinity();
    let points: Vec<V2<S>> = passes.iter().map(|&(e, t, _)| at(e, t)).collect();
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            gap = gap.min(p.dist(q));
        }
        for &v in &u.corners {
            gap = gap.min(p.dist(v));
        }
        let e = passes[i].0;
        for k in [e, (e + 1) % n] {
            let ray = u.centre + (u.corners[k] - u.centre).scale(S::s(4.0));
            gap = gap.min(point_seg_distance(p, u.centre, ray));
        }
    }
    let radius = gap / S::s(4.0);

    // Corner waypoints would sit exactly on crease rays, where folding is
    // ambiguous and projections degenerate; shift each a hair into the wedge
    // that follows its ray.
    let mut feature = S::infinity();
    for i in 0..n {
        feature = feature.min(u.corners[i].dist(u.centre));
        feature = feature.min(u.corners[i].dist(u.corners[(i + 1) % n]));
    }
    let shift = feature * S::s(1e-3);

    let mut per_edge: Vec<Vec<(S, bool)>> = vec![Vec::new(); n];
    for &(e, t, over) in &passes {
        per_edge[e].push((t, over));
    }
    let mut waypoints = Vec::new();
    for e in 0..n {
        per_edge[e].sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let ray = (u.corners[e] - u.centre)
            .normalize()
            .ok_or(Error::DegenerateVector)?;
        waypoints.push(u.corners[e] + ray.perp().scale(shift));
        for &(t, over) in &per_edge[e] {
            if !over {
                continue;
            }
            let p = at(e, t);
            let along = (u.corners[(e + 1) % n] - u.corners[e])
                .normalize()
                .ok_or(Error::DegenerateVector)?;
            let to_centre = u.centre - p;
            let side = to_centre - along.scale(to_centre.dot(along));
            let Some(inward) = side.normalize() else {
                return Err(Error::Construction(format!(
                    "crossing on edge {e} sits radially under the apex; its over-strand \
                     cannot bow towards the centre"
                )));
            };
            // Half-turn arc from radius behind to radius ahead of the
            // crossing, eight segments, bulging towards the centre.
            for k in 0..=8 {
                let a = S::PI() * S::s(k as f64) / S::s(8.0);
                waypoints.push(p - along.scale(radius * a.cos()) + inward.scale(radius * a.sin()));
            }
        }
    }
    let lp = PaperLoop::new(waypoints);
    lp.validate(tol)?;
    Ok(lp)
}

/// The full construction: choose an apex, close the cone, unroll it to a
/// folding of the square, and route the loop realizing the declared
/// crossings. Folding the loop ties the knot the stick diagram describes.
pub fn construct_from_sticks<S: Scalar>(
    s: &StickDiagram<S>,
    tol: &Tolerance<S>,
) -> Result<(Folding<S>, PaperLoop<S>)> {
    let q0 = choose_apex(s, tol)?;
    let cone = solve_apex_height(s, q0, tol)?;
    let folding = build_cone_folding(&cone, tol)?;
    let lp = loop_with_crossings(&cone, tol)?;
    Ok((folding, lp))
}
