//! Planar and spatial primitives: vectors, segment intersection, rigid
//! embeddings of the plane into space, and generic projection directions.

pub mod poly;
pub mod pslg;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};

use crate::error::{Error, Result};
use crate::num::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct V2<S> {
    pub x: S,
    pub y: S,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct V3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

pub fn v2<S: Scalar>(x: S, y: S) -> V2<S> {
    V2 { x, y }
}

pub fn v3<S: Scalar>(x: S, y: S, z: S) -> V3<S> {
    V3 { x, y, z }
}

impl<S: Scalar> V2<S> {
    pub fn zero() -> Self {
        v2(S::zero(), S::zero())
    }

    pub fn dot(self, o: Self) -> S {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the wedge product; positive when `o` is counterclockwise from `self`.
    pub fn cross(self, o: Self) -> S {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> S {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: Self) -> S {
        (self - o).norm()
    }

    pub fn scale(self, k: S) -> Self {
        v2(self.x * k, self.y * k)
    }

    pub fn normalize(self) -> Option<Self> {
        let n = self.norm();
        if n <= S::zero() {
            None
        } else {
            Some(self.scale(S::one() / n))
        }
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Self {
        v2(-self.y, self.x)
    }

    pub fn lerp(self, o: Self, t: S) -> Self {
        self + (o - self).scale(t)
    }

    pub fn lift(self, z: S) -> V3<S> {
        v3(self.x, self.y, z)
    }
}

impl<S: Scalar> V3<S> {
    pub fn zero() -> Self {
        v3(S::zero(), S::zero(), S::zero())
    }

    pub fn dot(self, o: Self) -> S {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        v3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> S {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: Self) -> S {
        (self - o).norm()
    }

    pub fn scale(self, k: S) -> Self {
        v3(self.x * k, self.y * k, self.z * k)
    }

    pub fn normalize(self) -> Option<Self> {
        let n = self.norm();
        if n <= S::zero() {
            None
        } else {
            Some(self.scale(S::one() / n))
        }
    }
}

macro_rules! vec_ops {
    ($t:ident { $($f:ident),+ }) => {
        impl<S: Scalar> std::ops::Add for $t<S> {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                $t { $($f: self.$f + o.$f),+ }
            }
        }
        impl<S: Scalar> std::ops::Sub for $t<S> {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                $t { $($f: self.$f - o.$f),+ }
            }
        }
        impl<S: Scalar> std::ops::Neg for $t<S> {
            type Output = Self;
            fn neg(self) -> Self {
                $t { $($f: -self.$f),+ }
            }
        }
    };
}

vec_ops!(V2 { x, y });
vec_ops!(V3 { x, y, z });

/// Unoriented angle between two spatial vectors, in [0, pi].
pub fn angle_between<S: Scalar>(u: V3<S>, v: V3<S>) -> Result<S> {
    let nu = u.norm();
    let nv = v.norm();
    if nu <= S::epsilon() || nv <= S::epsilon() {
        return Err(Error::DegenerateVector);
    }
    let c = (u.dot(v) / (nu * nv)).max(-S::one()).min(S::one());
    Ok(c.acos())
}

/// Angle subtended at `apex` by `a` and `b`.
pub fn angle_at<S: Scalar>(apex: V3<S>, a: V3<S>, b: V3<S>) -> Result<S> {
    angle_between(a - apex, b - apex)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment2<S> {
    pub a: V2<S>,
    pub b: V2<S>,
}

pub fn seg2<S: Scalar>(a: V2<S>, b: V2<S>) -> Segment2<S> {
    Segment2 { a, b }
}

impl<S: Scalar> Segment2<S> {
    pub fn dir(self) -> V2<S> {
        self.b - self.a
    }

    pub fn at(self, t: S) -> V2<S> {
        self.a.lerp(self.b, t)
    }

    pub fn len(self) -> S {
        self.dir().norm()
    }
}

/// Outcome of intersecting two planar segments. `Point` carries the
/// parameters along each segment; `Overlap` the shared collinear piece;
/// `Degenerate` marks configurations too close to parallel-tangency to
/// classify stably.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegIntersection<S> {
    None,
    Point { t_a: S, t_b: S, point: V2<S> },
    Overlap { start: V2<S>, end: V2<S> },
    Degenerate,
}

/// Total segment-segment intersection with tolerance `tol` (an absolute
/// length scale). Symmetric in its arguments up to swapping the parameters.
pub fn segment_intersect<S: Scalar>(
    p: Segment2<S>,
    q: Segment2<S>,
    tol: S,
) -> SegIntersection<S> {
    let r = p.dir();
    let s = q.dir();
    let lr = r.norm();
    let ls = s.norm();
    if lr <= tol || ls <= tol {
        return SegIntersection::Degenerate;
    }
    let rxs = r.cross(s);
    let qp = q.a - p.a;
    // Distance from q's line to p.a, and vice versa, normalised.
    let sin_angle = (rxs / (lr * ls)).abs();
    let near_parallel = sin_angle < S::s(1e-9);

    if near_parallel {
        // Parallel or collinear.
        let off = qp.cross(r).abs() / lr; // distance of q.a from p's line
        if off > tol {
            return SegIntersection::None;
        }
        // Collinear within tolerance: overlap interval in p's parameter.
        let rr = r.dot(r);
        let t0 = qp.dot(r) / rr;
        let t1 = t0 + s.dot(r) / rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let tpad = tol / lr;
        let lo_c = lo.max(S::zero());
        let hi_c = hi.min(S::one());
        if hi_c < lo_c - tpad {
            return SegIntersection::None;
        }
        let start = p.at(lo_c.max(S::zero()));
        let end = p.at(hi_c.min(S::one()));
        if start.dist(end) <= tol {
            // Endpoint touch of collinear segments.
            let t_a = (lo_c + hi_c) / S::s(2.0);
            let point = p.at(t_a);
            let t_b = (point - q.a).dot(s) / s.dot(s);
            return SegIntersection::Point { t_a, t_b, point };
        }
        return SegIntersection::Overlap { start, end };
    }

    let t = qp.cross(s) / rxs;
    let u = qp.cross(r) / rxs;
    let pad_t = tol / lr;
    let pad_u = tol / ls;
    if t < -pad_t || t > S::one() + pad_t || u < -pad_u || u > S::one() + pad_u {
        return SegIntersection::None;
    }
    // Nearly parallel but formally crossing inside the boxes: the crossing
    // point is ill-conditioned; report it explicitly.
    if sin_angle < S::s(1e-7) {
        return SegIntersection::Degenerate;
    }
    let t = t.max(S::zero()).min(S::one());
    let u = u.max(S::zero()).min(S::one());
    SegIntersection::Point {
        t_a: t,
        t_b: u,
        point: p.at(t),
    }
}

/// Rigid (arcwise-isometric) affine map from the plane into space:
/// `p -> cols[0]*p.x + cols[1]*p.y + translation`, with orthonormal columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidEmbedding<S> {
    pub cols: [V3<S>; 2],
    pub translation: V3<S>,
}

impl<S: Scalar> RigidEmbedding<S> {
    pub fn identity() -> Self {
        RigidEmbedding {
            cols: [v3(S::one(), S::zero(), S::zero()), v3(S::zero(), S::one(), S::zero())],
            translation: V3::zero(),
        }
    }

    pub fn apply(&self, p: V2<S>) -> V3<S> {
        self.cols[0].scale(p.x) + self.cols[1].scale(p.y) + self.translation
    }

    /// Worst deviation of the linear part from orthonormality.
    pub fn orthonormality_defect(&self) -> S {
        let g00 = (self.cols[0].dot(self.cols[0]) - S::one()).abs();
        let g11 = (self.cols[1].dot(self.cols[1]) - S::one()).abs();
        let g01 = self.cols[0].dot(self.cols[1]).abs();
        g00.max(g11).max(g01)
    }

    pub fn is_rigid(&self, tol: S) -> bool {
        self.orthonormality_defect() <= tol
    }

    /// Unit normal of the image plane (for rigid maps).
    pub fn normal(&self) -> V3<S> {
        self.cols[0].cross(self.cols[1])
    }

    /// Inverse on the image plane: recover the paper point of `q`.
    ///
    /// Only meaningful when `q` lies on (or near) the image plane; the
    /// off-plane component is discarded.
    pub fn pullback(&self, q: V3<S>) -> V2<S> {
        let d = q - self.translation;
        v2(d.dot(self.cols[0]), d.dot(self.cols[1]))
    }
}

/// Rigid embedding sending the triangle `src` onto `dst`. The triangles must
/// be congruent within `tol_iso` and non-degenerate.
pub fn embedding_from_triangles<S: Scalar>(
    src: [V2<S>; 3],
    dst: [V3<S>; 3],
    tol_iso: S,
) -> Result<RigidEmbedding<S>> {
    let mut defect = S::zero();
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let ds = src[i].dist(src[j]);
        let dd = dst[i].dist(dst[j]);
        defect = defect.max((ds - dd).abs());
    }
    if defect > tol_iso {
        return Err(Error::NonCongruent {
            defect: defect.to_f64_lossy(),
        });
    }

    let e1 = src[1] - src[0];
    let e2 = src[2] - src[0];
    let area2 = e1.cross(e2).abs();
    if area2 <= tol_iso * (e1.norm() + e2.norm()).max(S::one()) {
        return Err(Error::Domain(
            "triangle is degenerate; cannot determine an embedding".into(),
        ));
    }

    // Orthonormal frame in the source plane and its image frame.
    let u = e1.normalize().ok_or(Error::DegenerateVector)?;
    let w = {
        let proj = u.scale(e2.dot(u));
        (e2 - proj).normalize().ok_or(Error::DegenerateVector)?
    };
    let f1 = dst[1] - dst[0];
    let f2 = dst[2] - dst[0];
    let bu = f1.normalize().ok_or(Error::DegenerateVector)?;
    let bw = {
        let proj = bu.scale(f2.dot(bu));
        (f2 - proj).normalize().ok_or(Error::DegenerateVector)?
    };

    // Column i = image of the i-th standard basis vector.
    let ex = v2(S::one(), S::zero());
    let ey = v2(S::zero(), S::one());
    let col = |e: V2<S>| bu.scale(e.dot(u)) + bw.scale(e.dot(w));
    let cols = [col(ex), col(ey)];
    let lin_src0 = cols[0].scale(src[0].x) + cols[1].scale(src[0].y);
    let emb = RigidEmbedding {
        cols,
        translation: dst[0] - lin_src0,
    };

    for k in 0..3 {
        let err = emb.apply(src[k]).dist(dst[k]);
        if err > tol_iso * S::s(10.0) {
            return Err(Error::NonCongruent {
                defect: err.to_f64_lossy(),
            });
        }
    }
    Ok(emb)
}

/// Deterministic orthonormal basis of the plane orthogonal to `dir`.
pub fn plane_basis<S: Scalar>(dir: V3<S>) -> Result<(V3<S>, V3<S>)> {
    let d = dir.normalize().ok_or(Error::DegenerateVector)?;
    let seed = if d.x.abs() < S::s(0.9) {
        v3(S::one(), S::zero(), S::zero())
    } else {
        v3(S::zero(), S::one(), S::zero())
    };
    let b1 = d.cross(seed).normalize().ok_or(Error::DegenerateVector)?;
    let b2 = d.cross(b1).normalize().ok_or(Error::DegenerateVector)?;
    Ok((b1, b2))
}

/// Project waypoints onto the plane orthogonal to `dir`; also returns the
/// depth of each point along `dir` (larger = nearer the viewer).
pub fn project_points<S: Scalar>(points: &[V3<S>], dir: V3<S>) -> Result<(Vec<V2<S>>, Vec<S>)> {
    let d = dir.normalize().ok_or(Error::DegenerateVector)?;
    let (b1, b2) = plane_basis(d)?;
    let flat = points.iter().map(|&p| v2(p.dot(b1), p.dot(b2))).collect();
    let depth = points.iter().map(|&p| p.dot(d)).collect();
    Ok((flat, depth))
}

pub(crate) fn polyline_scale<S: Scalar>(points: &[V3<S>]) -> S {
    let mut lo = points[0];
    let mut hi = points[0];
    for &p in points {
        lo = v3(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = v3(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    (hi - lo).norm().max(S::one())
}

/// A transversal self-crossing of a closed flat polyline: segments `seg_a <
/// seg_b` cross at `point`, at parameters `t_a` and `t_b` along each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatCrossing<S> {
    pub seg_a: usize,
    pub seg_b: usize,
    pub t_a: S,
    pub t_b: S,
    pub point: V2<S>,
}

/// All transversal self-crossings of the closed polyline `flat`, or an error
/// naming the first non-generic configuration found: a collapsed segment, a
/// collinear overlap, a near-tangency, a vertex on a non-incident segment,
/// or two crossing points closer than `eps`.
pub fn flat_crossings<S: Scalar>(flat: &[V2<S>], eps: S) -> Result<Vec<FlatCrossing<S>>> {
    let n = flat.len();
    if n < 3 {
        return Err(Error::Domain("closed polyline needs at least three points".into()));
    }
    let seg = |i: usize| seg2(flat[i], flat[(i + 1) % n]);
    for i in 0..n {
        if seg(i).len() <= eps {
            return Err(Error::Domain(format!("segment {i} collapses under projection")));
        }
    }

    let adjacent = |i: usize, j: usize| (i + 1) % n == j || (j + 1) % n == i;
    let mut crossings: Vec<FlatCrossing<S>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            match segment_intersect(seg(i), seg(j), eps) {
                SegIntersection::Overlap { .. } => {
                    return Err(Error::Domain(format!("segments {i} and {j} overlap collinearly")));
                }
                SegIntersection::Degenerate => {
                    return Err(Error::Domain(format!("segments {i} and {j} are near-tangent")));
                }
                SegIntersection::Point { t_a, t_b, point } => {
                    let et = eps / seg(i).len();
                    let eu = eps / seg(j).len();
                    if adjacent(i, j) {
                        // Sharing exactly the common endpoint is fine.
                        let at_shared = (t_a > S::one() - et && t_b < eu)
                            || (t_b > S::one() - eu && t_a < et);
                        if !at_shared {
                            return Err(Error::Domain(format!(
                                "adjacent segments {i} and {j} fold back onto each other"
                            )));
                        }
                    } else {
                        // Vertex-on-segment coincidences are not generic.
                        if t_a < et || t_a > S::one() - et || t_b < eu || t_b > S::one() - eu {
                            return Err(Error::Domain(format!(
                                "a vertex of segment {i} or {j} lands on the other segment"
                            )));
                        }
                        crossings.push(FlatCrossing { seg_a: i, seg_b: j, t_a, t_b, point });
                    }
                }
                SegIntersection::None => {}
            }
        }
    }
    for i in 0..crossings.len() {
        for j in (i + 1)..crossings.len() {
            if crossings[i].point.dist(crossings[j].point) <= eps {
                return Err(Error::Domain(format!(
                    "crossings of segment pairs ({}, {}) and ({}, {}) coincide",
                    crossings[i].seg_a, crossings[i].seg_b, crossings[j].seg_a, crossings[j].seg_b
                )));
            }
        }
    }
    Ok(crossings)
}

/// Tolerance used for genericity checks of a projected polyline.
pub fn regularity_eps<S: Scalar>(points: &[V3<S>], tol: S) -> S {
    (tol * S::s(100.0)).max(S::s(1e-7)) * polyline_scale(points)
}

/// Is `dir` a regular projection direction for the closed polyline `points`?
/// Regular means: no segment collapses, no two segment projections are
/// collinear-overlapping or tangentially degenerate, no vertex lands on a
/// non-incident segment, and no two crossing points coincide (triple points).
pub fn is_regular_direction<S: Scalar>(points: &[V3<S>], dir: V3<S>, tol: S) -> bool {
    if points.len() < 3 {
        return false;
    }
    let Ok((flat, _)) = project_points(points, dir) else {
        return false;
    };
    flat_crossings(&flat, regularity_eps(points, tol)).is_ok()
}

/// Deterministic regular projection direction for a closed polyline. Samples
/// near-axis directions from a seeded stream and returns the first regular
/// one; errors after 1000 rejected candidates.
pub fn generic_direction<S: Scalar>(points: &[V3<S>], seed: u64, tol: S) -> Result<V3<S>> {
    if points.len() < 3 {
        return Err(Error::Domain("closed polyline needs at least three points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: usize = 1000;
    for k in 0..ATTEMPTS {
        let u: [f64; 3] = UnitSphere.sample(&mut rng);
        // Mostly vertical early on, drifting toward uniform if rejected.
        let spread = S::s(0.15 + 0.85 * (k as f64 / 64.0).min(1.0));
        let cand = v3(
            S::s(u[0]) * spread,
            S::s(u[1]) * spread,
            S::one() + S::s(u[2]) * spread,
        );
        let Some(cand) = cand.normalize() else {
            continue;
        };
        if is_regular_direction(points, cand, tol) {
            return Ok(cand);
        }
    }
    Err(Error::NonGenericDirection { attempts: ATTEMPTS })
}

/// Rotate `v` about the unit axis `u` by `angle` (Rodrigues form).
pub fn rotate_about_axis<S: Scalar>(v: V3<S>, u: V3<S>, angle: S) -> V3<S> {
    let c = angle.cos();
    let s = angle.sin();
    v.scale(c) + u.cross(v).scale(s) + u.scale(u.dot(v) * (S::one() - c))
}

/// Compose a rigid embedding with a spatial rotation about the line through
/// `p` with unit direction `axis`.
pub fn rotate_embedding_about_line<S: Scalar>(
    e: &RigidEmbedding<S>,
    p: V3<S>,
    axis: V3<S>,
    angle: S,
) -> RigidEmbedding<S> {
    let rot = |v: V3<S>| rotate_about_axis(v, axis, angle);
    RigidEmbedding {
        cols: [rot(e.cols[0]), rot(e.cols[1])],
        translation: p + rot(e.translation - p),
    }
}

/// Embedding of the paper plane that folds about the directed line `a -> b`
/// by the given dihedral angle: the line stays fixed and the whole plane is
/// rotated about it.
pub fn fold_across_line<S: Scalar>(a: V2<S>, b: V2<S>, angle: S) -> Result<RigidEmbedding<S>> {
    let u = (b - a).lift(S::zero()).normalize().ok_or(Error::DegenerateVector)?;
    Ok(rotate_embedding_about_line(
        &RigidEmbedding::identity(),
        a.lift(S::zero()),
        u,
        angle,
    ))
}

/// Closest distance between two segments in space.
pub fn seg3_distance<S: Scalar>(p1: V3<S>, p2: V3<S>, q1: V3<S>, q2: V3<S>) -> S {
    let d1 = p2 - p1;
    let d2 = q2 - q1;
    let r = p1 - q1;
    let a = d1.dot(d1);
    let e = d2.dot(d2);
    let f = d2.dot(r);
    let tiny = S::s(1e-30);
    let (s, t);
    if a <= tiny && e <= tiny {
        return r.norm();
    }
    if a <= tiny {
        s = S::zero();
        t = (f / e).max(S::zero()).min(S::one());
    } else {
        let c = d1.dot(r);
        if e <= tiny {
            t = S::zero();
            s = (-c / a).max(S::zero()).min(S::one());
        } else {
            let b = d1.dot(d2);
            let denom = a * e - b * b;
            let mut sn = if denom > tiny {
                ((b * f - c * e) / denom).max(S::zero()).min(S::one())
            } else {
                S::zero()
            };
            let mut tn = (b * sn + f) / e;
            if tn < S::zero() {
                tn = S::zero();
                sn = (-c / a).max(S::zero()).min(S::one());
            } else if tn > S::one() {
                tn = S::one();
                sn = ((b - c) / a).max(S::zero()).min(S::one());
            }
            s = sn;
            t = tn;
        }
    }
    let cp = p1 + d1.scale(s);
    let cq = q1 + d2.scale(t);
    cp.dist(cq)
}

/// Distance from a point to a spatial segment.
pub fn point_seg3_distance<S: Scalar>(p: V3<S>, a: V3<S>, b: V3<S>) -> S {
    let d = b - a;
    let dd = d.dot(d);
    if dd <= S::s(1e-30) {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / dd).max(S::zero()).min(S::one());
    p.dist(a + d.scale(t))
}
