//! Crease patterns on the unit square, foldings as per-face rigid
//! embeddings, and evaluation of points and loops under a folding.

use crate::error::{Error, Result};
use crate::geometry::poly::{point_in_polygon, polygon_area};
use crate::geometry::pslg::pslg_faces;
use crate::geometry::{
    flat_crossings, seg2, segment_intersect, v2, RigidEmbedding, SegIntersection, V2, V3,
};
use crate::num::{Scalar, Tolerance};

/// Planar subdivision of the unit square by crease edges.
#[derive(Debug, Clone, PartialEq)]
pub struct CreasePattern<S> {
    /// All subdivision vertices, including the square corners.
    pub vertices: Vec<V2<S>>,
    /// Interior (crease) edges as vertex index pairs; boundary edges are
    /// implicit.
    pub creases: Vec<(usize, usize)>,
    /// Faces as counterclockwise vertex cycles.
    pub faces: Vec<Vec<usize>>,
}

/// A folding: a crease pattern together with one rigid embedding per face.
#[derive(Debug, Clone, PartialEq)]
pub struct Folding<S> {
    pub pattern: CreasePattern<S>,
    pub face_maps: Vec<RigidEmbedding<S>>,
}

/// Closed piecewise-linear loop drawn on the square of paper.
#[derive(Debug, Clone, PartialEq)]
pub struct PaperLoop<S> {
    pub waypoints: Vec<V2<S>>,
}

/// Image of a loop under a folding.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialPolyline<S> {
    pub waypoints: Vec<V3<S>>,
    /// False when the image polyline intersects itself.
    pub injective: bool,
}

impl<S: Scalar> SpatialPolyline<S> {
    pub fn length(&self) -> S {
        let n = self.waypoints.len();
        (0..n)
            .map(|i| self.waypoints[i].dist(self.waypoints[(i + 1) % n]))
            .fold(S::zero(), |a, b| a + b)
    }
}

impl<S: Scalar> PaperLoop<S> {
    pub fn new(waypoints: Vec<V2<S>>) -> Self {
        PaperLoop { waypoints }
    }

    pub fn length(&self) -> S {
        let n = self.waypoints.len();
        (0..n)
            .map(|i| self.waypoints[i].dist(self.waypoints[(i + 1) % n]))
            .fold(S::zero(), |a, b| a + b)
    }

    /// Check the loop is closed, inside the square, and simple.
    pub fn validate(&self, tol: &Tolerance<S>) -> Result<()> {
        let n = self.waypoints.len();
        if n < 3 {
            return Err(Error::Domain("loop needs at least three waypoints".into()));
        }
        for (i, p) in self.waypoints.iter().enumerate() {
            if !in_unit_square(*p, tol.geom) {
                return Err(Error::Domain(format!(
                    "loop waypoint {i} at ({}, {}) lies outside the unit square",
                    p.x, p.y
                )));
            }
        }
        for i in 0..n {
            if self.waypoints[i].dist(self.waypoints[(i + 1) % n]) <= tol.geom {
                return Err(Error::Domain(format!(
                    "loop waypoints {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        match flat_crossings(&self.waypoints, tol.geom) {
            Ok(xs) if xs.is_empty() => Ok(()),
            Ok(xs) => Err(Error::Domain(format!(
                "loop is not simple: segments {} and {} cross",
                xs[0].seg_a, xs[0].seg_b
            ))),
            Err(e) => Err(Error::Domain(format!("loop is not simple: {e}"))),
        }
    }
}

fn in_unit_square<S: Scalar>(p: V2<S>, tol: S) -> bool {
    p.x >= -tol && p.x <= S::one() + tol && p.y >= -tol && p.y <= S::one() + tol
}

fn square_corners<S: Scalar>() -> [V2<S>; 4] {
    let z = S::zero();
    let o = S::one();
    [v2(z, z), v2(o, z), v2(o, o), v2(z, o)]
}

/// Which side of the square a boundary point lies on, if any.
fn boundary_side<S: Scalar>(p: V2<S>, tol: S) -> Option<usize> {
    let o = S::one();
    if p.y.abs() <= tol {
        Some(0)
    } else if (p.x - o).abs() <= tol {
        Some(1)
    } else if (p.y - o).abs() <= tol {
        Some(2)
    } else if p.x.abs() <= tol {
        Some(3)
    } else {
        None
    }
}

/// Build a crease pattern from vertices and crease edges. The square
/// boundary is added automatically and split at vertices lying on it.
/// Edges may meet only at shared vertices.
pub fn build_pattern<S: Scalar>(
    vertices: &[V2<S>],
    crease_edges: &[(usize, usize)],
    tol: &Tolerance<S>,
) -> Result<CreasePattern<S>> {
    for (i, p) in vertices.iter().enumerate() {
        if !in_unit_square(*p, tol.geom) {
            return Err(Error::Domain(format!(
                "vertex {i} at ({}, {}) lies outside the unit square",
                p.x, p.y
            )));
        }
    }
    for (i, a) in vertices.iter().enumerate() {
        for (j, b) in vertices.iter().enumerate().skip(i + 1) {
            if a.dist(*b) <= tol.geom {
                return Err(Error::Domain(format!("vertices {i} and {j} coincide")));
            }
        }
    }

    // Final vertex list: input order, then any missing square corners.
    let mut all: Vec<V2<S>> = vertices.to_vec();
    for c in square_corners::<S>() {
        if !all.iter().any(|&p| p.dist(c) <= tol.geom) {
            all.push(c);
        }
    }
    let locate = |p: V2<S>| all.iter().position(|&q| q.dist(p) <= tol.geom).unwrap();

    let mut creases: Vec<(usize, usize)> = Vec::new();
    for &(u, v) in crease_edges {
        if u >= vertices.len() || v >= vertices.len() {
            return Err(Error::Domain(format!(
                "crease ({u}, {v}) references a missing vertex"
            )));
        }
        if u == v {
            return Err(Error::Domain(format!("crease at vertex {u} is degenerate")));
        }
        let key = (u.min(v), u.max(v));
        if creases.contains(&key) {
            return Err(Error::Domain(format!("crease ({u}, {v}) appears twice")));
        }
        creases.push(key);
    }

    // Boundary chains: each side subdivided at the vertices lying on it.
    let corners = square_corners::<S>();
    let mut boundary: Vec<(usize, usize)> = Vec::new();
    for side in 0..4 {
        let a = corners[side];
        let b = corners[(side + 1) % 4];
        let dir = b - a;
        let mut on_side: Vec<(S, usize)> = all
            .iter()
            .enumerate()
            .filter(|&(_, &p)| boundary_side(p, tol.geom) == Some(side) || p.dist(a) <= tol.geom || p.dist(b) <= tol.geom)
            .map(|(k, &p)| ((p - a).dot(dir), k))
            .filter(|&(t, _)| t >= -tol.geom && t <= S::one() + tol.geom)
            .collect();
        on_side.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        for w in on_side.windows(2) {
            let (p, q) = (w[0].1, w[1].1);
            if p != q {
                boundary.push((p.min(q), q.max(p)));
            }
        }
    }
    boundary.sort_unstable();
    boundary.dedup();

    // No edge may cross another away from a shared vertex.
    let mut edges = boundary.clone();
    edges.extend_from_slice(&creases);
    let seg_of = |(u, v): (usize, usize)| seg2(all[u], all[v]);
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = (edges[i], edges[j]);
            let shares = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
            match segment_intersect(seg_of(a), seg_of(b), tol.geom) {
                SegIntersection::None => {}
                SegIntersection::Point { t_a, t_b, .. } => {
                    let ea = tol.geom / seg_of(a).len() + S::s(1e-9);
                    let eb = tol.geom / seg_of(b).len() + S::s(1e-9);
                    let at_a_end = t_a <= ea || t_a >= S::one() - ea;
                    let at_b_end = t_b <= eb || t_b >= S::one() - eb;
                    if !(shares && at_a_end && at_b_end) {
                        return Err(Error::NonPlanarInput(format!(
                            "edges ({}, {}) and ({}, {}) cross without a shared vertex",
                            a.0, a.1, b.0, b.1
                        )));
                    }
                }
                SegIntersection::Overlap { .. } | SegIntersection::Degenerate => {
                    return Err(Error::NonPlanarInput(format!(
                        "edges ({}, {}) and ({}, {}) overlap",
                        a.0, a.1, b.0, b.1
                    )));
                }
            }
        }
    }

    let faces = pslg_faces(&all, &edges).map_err(|e| match e {
        Error::Domain(msg) => Error::NonPlanarInput(msg),
        other => other,
    })?;

    let total: S = faces
        .iter()
        .map(|f| {
            let pts: Vec<V2<S>> = f.iter().map(|&k| all[k]).collect();
            polygon_area(&pts)
        })
        .fold(S::zero(), |a, b| a + b);
    if (total - S::one()).abs() > S::s(100.0) * tol.geom {
        return Err(Error::NonPlanarInput(format!(
            "face areas sum to {total}, not 1; the subdivision is inconsistent"
        )));
    }

    let _ = locate;
    Ok(CreasePattern { vertices: all, creases, faces })
}

/// Number of crease edges (boundary excluded). Each maximal segment between
/// consecutive subdivision vertices counts once.
pub fn crease_edge_count<S: Scalar>(f: &Folding<S>) -> usize {
    f.pattern.creases.len()
}

/// Validation findings for a folding; `is_valid` summarizes them.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ValidationReport {
    pub face_rigidity_defects: Vec<f64>,
    pub crease_agreement_defects: Vec<f64>,
    /// Crease indices whose two face maps coincide (strict mode only).
    pub spurious_creases: Vec<usize>,
    pub structural_errors: Vec<String>,
    pub area_defect: f64,
    pub is_valid: bool,
}

fn face_edge_pairs<S: Scalar>(pattern: &CreasePattern<S>) -> Vec<((usize, usize), usize)> {
    let mut out = Vec::new();
    for (fi, face) in pattern.faces.iter().enumerate() {
        let n = face.len();
        for k in 0..n {
            let (u, v) = (face[k], face[(k + 1) % n]);
            out.push(((u.min(v), u.max(v)), fi));
        }
    }
    out
}

/// Faces adjacent to each crease edge.
fn crease_faces<S: Scalar>(pattern: &CreasePattern<S>) -> Vec<Vec<usize>> {
    let pairs = face_edge_pairs(pattern);
    pattern
        .creases
        .iter()
        .map(|&(u, v)| {
            let key = (u.min(v), u.max(v));
            pairs.iter().filter(|&&(e, _)| e == key).map(|&(_, f)| f).collect()
        })
        .collect()
}

/// Check the arcwise-isometry conditions: rigidity of each face map and
/// agreement of adjacent maps along each crease. In strict mode, creases
/// across which the two maps coincide are reported as spurious.
pub fn validate_folding<S: Scalar>(
    f: &Folding<S>,
    strict: bool,
    tol: &Tolerance<S>,
) -> ValidationReport {
    let pattern = &f.pattern;
    let mut structural = Vec::new();

    if f.face_maps.len() != pattern.faces.len() {
        structural.push(format!(
            "{} faces but {} face maps",
            pattern.faces.len(),
            f.face_maps.len()
        ));
    }

    let face_rigidity_defects: Vec<f64> = f
        .face_maps
        .iter()
        .map(|m| m.orthonormality_defect().to_f64_lossy())
        .collect();

    // Every edge shared by two faces must be a listed crease, and vice versa.
    let pairs = face_edge_pairs(pattern);
    let mut edge_count: std::collections::BTreeMap<(usize, usize), usize> =
        std::collections::BTreeMap::new();
    for &(e, _) in &pairs {
        *edge_count.entry(e).or_insert(0) += 1;
    }
    let crease_set: std::collections::BTreeSet<(usize, usize)> = pattern
        .creases
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    for (&e, &count) in &edge_count {
        if count == 2 && !crease_set.contains(&e) {
            structural.push(format!(
                "faces share edge ({}, {}) which is not listed as a crease",
                e.0, e.1
            ));
        }
        if count > 2 {
            structural.push(format!("edge ({}, {}) borders {count} faces", e.0, e.1));
        }
    }

    let adjacency = crease_faces(pattern);
    let mut crease_agreement_defects = Vec::with_capacity(pattern.creases.len());
    let mut spurious = Vec::new();
    for (ci, (&(u, v), faces)) in pattern.creases.iter().zip(&adjacency).enumerate() {
        if faces.len() != 2 {
            structural.push(format!(
                "crease {ci} between vertices {u} and {v} borders {} faces, expected 2",
                faces.len()
            ));
            crease_agreement_defects.push(f64::INFINITY);
            continue;
        }
        let (fa, fb) = (faces[0], faces[1]);
        if fa >= f.face_maps.len() || fb >= f.face_maps.len() {
            crease_agreement_defects.push(f64::INFINITY);
            continue;
        }
        let (ma, mb) = (&f.face_maps[fa], &f.face_maps[fb]);
        let defect = ma.apply(pattern.vertices[u]).dist(mb.apply(pattern.vertices[u]))
            .max(ma.apply(pattern.vertices[v]).dist(mb.apply(pattern.vertices[v])));
        crease_agreement_defects.push(defect.to_f64_lossy());
        if strict {
            // The maps coincide when they also agree off the crease line.
            let mid = pattern.vertices[u].lerp(pattern.vertices[v], S::s(0.5));
            let off = mid + (pattern.vertices[v] - pattern.vertices[u]).perp();
            let same = defect <= tol.iso
                && ma.apply(off).dist(mb.apply(off)) <= S::s(10.0) * tol.iso;
            if same {
                spurious.push(ci);
            }
        }
    }

    let total: S = pattern
        .faces
        .iter()
        .map(|face| {
            let pts: Vec<V2<S>> = face.iter().map(|&k| pattern.vertices[k]).collect();
            polygon_area(&pts)
        })
        .fold(S::zero(), |a, b| a + b);
    let area_defect = (total - S::one()).abs().to_f64_lossy();

    let iso = tol.iso.to_f64_lossy();
    let is_valid = structural.is_empty()
        && face_rigidity_defects.iter().all(|&d| d <= iso)
        && crease_agreement_defects.iter().all(|&d| d <= 10.0 * iso)
        && area_defect <= 100.0 * tol.geom.to_f64_lossy()
        && (!strict || spurious.is_empty());

    ValidationReport {
        face_rigidity_defects,
        crease_agreement_defects,
        spurious_creases: spurious,
        structural_errors: structural,
        area_defect,
        is_valid,
    }
}

impl<S: Scalar> Folding<S> {
    /// Index of a face containing `p` (boundary-inclusive).
    pub fn face_containing(&self, p: V2<S>, tol: S) -> Option<usize> {
        let mut fallback = None;
        for (fi, face) in self.pattern.faces.iter().enumerate() {
            let pts: Vec<V2<S>> = face.iter().map(|&k| self.pattern.vertices[k]).collect();
            if point_in_polygon(p, &pts, S::zero()) {
                return Some(fi);
            }
            if fallback.is_none() && point_in_polygon(p, &pts, tol) {
                fallback = Some(fi);
            }
        }
        fallback
    }
}

/// Image of a single point of paper under the folding.
pub fn fold_point<S: Scalar>(f: &Folding<S>, p: V2<S>, tol: &Tolerance<S>) -> Result<V3<S>> {
    if !in_unit_square(p, tol.geom) {
        return Err(Error::Domain(format!(
            "point ({}, {}) lies outside the unit square",
            p.x, p.y
        )));
    }
    let fi = f
        .face_containing(p, tol.geom * S::s(10.0))
        .ok_or_else(|| Error::InvalidFolding("no face contains the point".into()))?;
    Ok(f.face_maps[fi].apply(p))
}

/// Move a waypoint lying on a crease (or subdivision vertex) slightly into
/// the interior of an adjacent face.
fn nudge_off_creases<S: Scalar>(f: &Folding<S>, p: V2<S>, tol: &Tolerance<S>) -> V2<S> {
    let clear = |q: V2<S>| -> bool {
        if !in_unit_square(q, S::zero()) {
            return false;
        }
        f.pattern.creases.iter().all(|&(u, v)| {
            crate::geometry::poly::point_seg_distance(
                q,
                f.pattern.vertices[u],
                f.pattern.vertices[v],
            ) > tol.geom
        })
    };
    if clear(p) {
        return p;
    }
    // Radius comfortably above the self-intersection threshold so the nudge
    // does not itself read as a contact.
    for ring in 1..4 {
        let r = tol.geom * S::s(50.0 * ring as f64);
        for k in 0..16 {
            let a = S::s(k as f64 * std::f64::consts::PI / 8.0 + 0.39);
            let q = p + v2(a.cos(), a.sin()).scale(r);
            if clear(q) && f.face_containing(q, S::zero()).is_some() {
                return q;
            }
        }
    }
    p
}

/// Fold a loop: subdivide it at every crease crossing, map each piece by its
/// face embedding, and flag whether the image is injective.
pub fn fold_loop<S: Scalar>(
    f: &Folding<S>,
    loop_: &PaperLoop<S>,
    tol: &Tolerance<S>,
) -> Result<SpatialPolyline<S>> {
    loop_.validate(tol)?;
    let pts: Vec<V2<S>> = loop_
        .waypoints
        .iter()
        .map(|&p| nudge_off_creases(f, p, tol))
        .collect();
    let n = pts.len();

    let mut out: Vec<V3<S>> = Vec::new();
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let seg = seg2(a, b);
        let mut ts: Vec<S> = vec![S::zero(), S::one()];
        for &(u, v) in &f.pattern.creases {
            let crease = seg2(f.pattern.vertices[u], f.pattern.vertices[v]);
            if let SegIntersection::Point { t_a, .. } = segment_intersect(seg, crease, tol.geom) {
                ts.push(t_a);
            }
        }
        ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let pad = tol.geom / seg.len().max(tol.geom);
        let mut cuts: Vec<S> = Vec::with_capacity(ts.len());
        for t in ts {
            let t = t.max(S::zero()).min(S::one());
            if cuts.last().map_or(true, |&prev| t - prev > pad) {
                cuts.push(t);
            }
        }
        if *cuts.last().unwrap() < S::one() - pad {
            cuts.push(S::one());
        }
        for w in cuts.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            let mid = seg.at((t0 + t1) / S::s(2.0));
            let fi = f
                .face_containing(mid, tol.geom * S::s(10.0))
                .ok_or_else(|| Error::InvalidFolding("loop leaves the face complex".into()))?;
            out.push(f.face_maps[fi].apply(seg.at(t0)));
        }
    }

    // Drop consecutive duplicates from tangential touches.
    let mut waypoints: Vec<V3<S>> = Vec::with_capacity(out.len());
    for p in out {
        if waypoints.last().map_or(true, |&q: &V3<S>| q.dist(p) > tol.geom) {
            waypoints.push(p);
        }
    }
    if waypoints.len() >= 2 {
        let first = waypoints[0];
        if waypoints.last().unwrap().dist(first) <= tol.geom {
            waypoints.pop();
        }
    }
    if waypoints.len() < 3 {
        return Err(Error::InvalidFolding(
            "loop image collapsed to fewer than three points".into(),
        ));
    }

    let image = SpatialPolyline { waypoints, injective: true };
    let len_in = {
        let n = pts.len();
        (0..n).map(|i| pts[i].dist(pts[(i + 1) % n])).fold(S::zero(), |a, b| a + b)
    };
    let len_out = image.length();
    let budget = S::s(10.0) * tol.iso * S::s((loop_.waypoints.len().max(image.waypoints.len())) as f64)
        + S::s(4.0) * tol.geom * S::s(image.waypoints.len() as f64);
    if (len_in - len_out).abs() > budget {
        return Err(Error::InvalidFolding(format!(
            "arc length not preserved: {} on paper vs {} in space",
            len_in.to_f64_lossy(),
            len_out.to_f64_lossy()
        )));
    }

    let injective = image_is_injective(&image.waypoints, tol);
    Ok(SpatialPolyline { injective, ..image })
}

fn image_is_injective<S: Scalar>(w: &[V3<S>], tol: &Tolerance<S>) -> bool {
    let n = w.len();
    let eps = (tol.geom * S::s(10.0)).max(S::s(1e-12));
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent {
                // Segments sharing an endpoint may not fold back onto each
                // other.
                let (shared, pa, pb) = if (i + 1) % n == j {
                    (w[j], w[i], w[(j + 1) % n])
                } else {
                    (w[i], w[j], w[(i + 1) % n])
                };
                let da = pa - shared;
                let db = pb - shared;
                let na = da.norm();
                let nb = db.norm();
                if na > S::zero() && nb > S::zero() {
                    let cosang = da.dot(db) / (na * nb);
                    let sin = da.cross(db).norm() / (na * nb);
                    if cosang > S::zero() && sin < S::s(1e-9) {
                        return false;
                    }
                }
            } else {
                let d = crate::geometry::seg3_distance(w[i], w[(i + 1) % n], w[j], w[(j + 1) % n]);
                if d <= eps {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::poly::polygon_centroid;
    use crate::geometry::{fold_across_line, v3};

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn identity_folding() -> Folding<f64> {
        let pattern = build_pattern::<f64>(&[], &[], &tol()).unwrap();
        let maps = vec![RigidEmbedding::identity(); pattern.faces.len()];
        Folding { pattern, face_maps: maps }
    }

    /// Fold about x = 0.5: left half fixed, right half rotated by `angle`.
    fn book_fold(angle: f64) -> Folding<f64> {
        let vertices = vec![v2(0.5, 0.0), v2(0.5, 1.0)];
        let pattern = build_pattern(&vertices, &[(0, 1)], &tol()).unwrap();
        let fold = fold_across_line(v2(0.5, 1.0), v2(0.5, 0.0), angle).unwrap();
        let maps: Vec<_> = pattern
            .faces
            .iter()
            .map(|face| {
                let pts: Vec<V2<f64>> = face.iter().map(|&k| pattern.vertices[k]).collect();
                if polygon_centroid(&pts).x < 0.5 {
                    RigidEmbedding::identity()
                } else {
                    fold
                }
            })
            .collect();
        Folding { pattern, face_maps: maps }
    }

    #[test]
    fn empty_pattern_is_one_face() {
        let p = build_pattern::<f64>(&[], &[], &tol()).unwrap();
        assert_eq!(p.faces.len(), 1);
        assert_eq!(p.creases.len(), 0);
        assert_eq!(p.vertices.len(), 4);
    }

    #[test]
    fn vertical_crease_splits_the_square() {
        let p = build_pattern(&[v2(0.5, 0.0), v2(0.5, 1.0)], &[(0, 1)], &tol()).unwrap();
        assert_eq!(p.faces.len(), 2);
        assert_eq!(p.creases.len(), 1);
        let f = Folding {
            pattern: p,
            face_maps: vec![RigidEmbedding::identity(); 2],
        };
        assert_eq!(crease_edge_count(&f), 1);
    }

    #[test]
    fn five_rays_from_the_center() {
        let mut vertices = vec![v2(0.5, 0.5)];
        for k in 0..5 {
            let a = 2.0 * std::f64::consts::PI * k as f64 / 5.0 + 0.21;
            // Push each ray out to the boundary of the square.
            let d = v2(a.cos(), a.sin());
            let mut t = f64::INFINITY;
            if d.x.abs() > 1e-12 {
                t = t.min(if d.x > 0.0 { 0.5 / d.x } else { -0.5 / d.x });
            }
            if d.y.abs() > 1e-12 {
                t = t.min(if d.y > 0.0 { 0.5 / d.y } else { -0.5 / d.y });
            }
            vertices.push(v2(0.5 + t * d.x, 0.5 + t * d.y));
        }
        let edges: Vec<(usize, usize)> = (1..=5).map(|k| (0, k)).collect();
        let p = build_pattern(&vertices, &edges, &tol()).unwrap();
        assert_eq!(p.faces.len(), 5);
        assert_eq!(p.creases.len(), 5);
    }

    #[test]
    fn crossing_creases_are_rejected() {
        let vertices = vec![
            v2(0.2, 0.2),
            v2(0.8, 0.8),
            v2(0.2, 0.8),
            v2(0.8, 0.2),
        ];
        let r = build_pattern(&vertices, &[(0, 1), (2, 3)], &tol());
        assert!(matches!(r, Err(Error::NonPlanarInput(_))), "{r:?}");
    }

    #[test]
    fn outside_vertex_is_rejected() {
        let r = build_pattern(&[v2(1.5, 0.5)], &[], &tol());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn dangling_crease_is_rejected() {
        let r = build_pattern(&[v2(0.5, 0.0), v2(0.5, 0.5)], &[(0, 1)], &tol());
        assert!(r.is_err());
    }

    #[test]
    fn identity_folding_is_valid() {
        let f = identity_folding();
        let report = validate_folding(&f, false, &tol());
        assert!(report.is_valid, "{report:?}");
        assert_eq!(fold_point(&f, v2(0.3, 0.7), &tol()).unwrap(), v3(0.3, 0.7, 0.0));
    }

    #[test]
    fn book_fold_is_valid_and_maps_points() {
        let f = book_fold(std::f64::consts::FRAC_PI_2);
        let report = validate_folding(&f, true, &tol());
        assert!(report.is_valid, "{report:?}");
        let img = fold_point(&f, v2(0.75, 0.5), &tol()).unwrap();
        assert!(img.dist(v3(0.5, 0.5, 0.25)) < 1e-12, "{img:?}");
        // A point on the crease agrees from both maps.
        let on = fold_point(&f, v2(0.5, 0.3), &tol()).unwrap();
        assert!(on.dist(v3(0.5, 0.3, 0.0)) < 1e-9);
    }

    #[test]
    fn spurious_crease_is_flagged_in_strict_mode() {
        let mut f = book_fold(0.7);
        f.face_maps = vec![RigidEmbedding::identity(); 2];
        let lax = validate_folding(&f, false, &tol());
        assert!(lax.is_valid);
        let strict = validate_folding(&f, true, &tol());
        assert!(!strict.is_valid);
        assert_eq!(strict.spurious_creases, vec![0]);
    }

    #[test]
    fn outside_point_is_a_domain_error() {
        let f = identity_folding();
        assert!(matches!(
            fold_point(&f, v2(1.2, 0.5), &tol()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn identity_fold_of_a_loop_is_planar_and_injective() {
        let f = identity_folding();
        let l = PaperLoop::new(vec![v2(0.1, 0.1), v2(0.9, 0.1), v2(0.9, 0.9), v2(0.1, 0.9)]);
        let img = fold_loop(&f, &l, &tol()).unwrap();
        assert!(img.injective);
        assert_eq!(img.waypoints.len(), 4);
        assert!((img.length() - l.length()).abs() < 1e-9);
        assert!(img.waypoints.iter().all(|p| p.z == 0.0));
    }

    #[test]
    fn right_angle_book_fold_keeps_the_loop_embedded() {
        let f = book_fold(std::f64::consts::FRAC_PI_2);
        let l = PaperLoop::new(vec![v2(0.2, 0.2), v2(0.8, 0.2), v2(0.8, 0.8), v2(0.2, 0.8)]);
        let img = fold_loop(&f, &l, &tol()).unwrap();
        assert!(img.injective);
        // Subdivided at two crease crossings.
        assert_eq!(img.waypoints.len(), 6);
        assert!((img.length() - l.length()).abs() < 1e-9);
    }

    #[test]
    fn flat_book_fold_collapses_the_loop() {
        let f = book_fold(std::f64::consts::PI);
        let l = PaperLoop::new(vec![v2(0.2, 0.2), v2(0.8, 0.2), v2(0.8, 0.8), v2(0.2, 0.8)]);
        let img = fold_loop(&f, &l, &tol()).unwrap();
        assert!(!img.injective);
        assert!((img.length() - l.length()).abs() < 1e-9);
    }

    #[test]
    fn loop_waypoint_on_a_crease_is_nudged() {
        let f = book_fold(0.9);
        let l = PaperLoop::new(vec![v2(0.5, 0.2), v2(0.8, 0.5), v2(0.5, 0.8), v2(0.2, 0.5)]);
        let img = fold_loop(&f, &l, &tol()).unwrap();
        assert!(img.injective);
        // The nudge perturbs the loop, so only approximate length survives.
        assert!((img.length() - l.length()).abs() < 1e-5);
    }

    #[test]
    fn continuity_across_the_crease() {
        let f = book_fold(1.1);
        let d = 1e-7;
        let a = fold_point(&f, v2(0.5 - d, 0.4), &tol()).unwrap();
        let b = fold_point(&f, v2(0.5 + d, 0.4), &tol()).unwrap();
        assert!(a.dist(b) <= 2.0 * d + 1e-9);
    }

    #[test]
    fn non_simple_loop_is_rejected() {
        let f = identity_folding();
        let l = PaperLoop::new(vec![v2(0.1, 0.1), v2(0.9, 0.9), v2(0.9, 0.1), v2(0.1, 0.9)]);
        assert!(fold_loop(&f, &l, &tol()).is_err());
    }
}
