//! Self-intersection analysis of foldings.
//!
//! Every pair of face images is intersected in space and each contact is
//! classified: contact along the image of a crease the two faces share is
//! the expected hinge behaviour; everything else is evidence that the map
//! folds the paper onto or through itself. The per-pair findings are then
//! summarised into a properness verdict for the whole folding.

use serde::Serialize;

use crate::error::Result;
use crate::folding::Folding;
use crate::geometry::poly::{
    point_in_polygon, point_in_polygon_interior, polygon_overlap_area, polygon_overlap_witness,
};
use crate::geometry::{
    plane_basis, point_seg3_distance, seg2, segment_intersect, v2, RigidEmbedding,
    SegIntersection, V2, V3,
};
use crate::num::{Scalar, Tolerance};

/// How two face images meet in space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContactKind {
    /// Contact along the image of a crease the two faces share; the hinge
    /// every folding is allowed (and expected) to have.
    SharedCrease,
    /// The images are coplanar and overlap with positive area.
    CoincidentOverlap,
    /// Boundary contact (a point or a segment) that is not a shared hinge:
    /// the images meet without either interior being pierced.
    Touching,
    /// The images cross transversally: points interior to both faces lie on
    /// a common segment, so the sheets pass through each other.
    TransversalCrossing,
}

/// Where a contact was observed, in space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness<S> {
    Point(V3<S>),
    Segment(V3<S>, V3<S>),
}

/// One classified contact between a pair of face images.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntersectionFinding<S> {
    /// Indices into the pattern's face list, smaller first.
    pub faces: (usize, usize),
    pub kind: ContactKind,
    pub witness: Witness<S>,
}

/// Summary verdict over all findings of a folding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Only shared-crease contacts: the folding is injective away from its
    /// hinges, i.e. an embedding of the square.
    ProperInjective,
    /// A single-crease folding whose two panels lie flat on each other:
    /// self-contact without crossing.
    ProperFlatContact,
    /// At least one transversal crossing: the sheets pierce each other.
    ImproperTransversal,
    /// Flat contacts or touches in a configuration this analysis does not
    /// attempt to certify either way.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropernessReport<S> {
    pub verdict: Verdict,
    pub findings: Vec<IntersectionFinding<S>>,
}

/// Contact tolerance in space, derived from the geometric tolerance.
fn contact_eps<S: Scalar>(tol: &Tolerance<S>) -> S {
    (tol.geom * S::s(1e3)).max(S::s(1e-7))
}

/// All non-trivial contacts between distinct face images, classified.
///
/// Contacts that are forced by the pattern itself are recognised: contact
/// along the image of a shared crease reports as `SharedCrease`, and an
/// isolated touch at the image of a shared pattern vertex is suppressed
/// entirely. The result is sorted by face pair and kind.
pub fn self_intersections<S: Scalar>(
    f: &Folding<S>,
    tol: &Tolerance<S>,
) -> Result<Vec<IntersectionFinding<S>>> {
    let eps = contact_eps(tol);
    let nf = f.pattern.faces.len();
    let polys: Vec<Vec<V2<S>>> = f
        .pattern
        .faces
        .iter()
        .map(|face| face.iter().map(|&k| f.pattern.vertices[k]).collect())
        .collect();

    let mut out: Vec<IntersectionFinding<S>> = Vec::new();
    for i in 0..nf {
        for j in (i + 1)..nf {
            pair_contacts(f, &polys, i, j, eps, &mut out)?;
        }
    }
    out.sort_by(|a, b| (a.faces, a.kind).partial_cmp(&(b.faces, b.kind)).unwrap());
    Ok(out)
}

/// True when the only self-contacts of the folding are its hinges.
pub fn is_injective<S: Scalar>(f: &Folding<S>, tol: &Tolerance<S>) -> Result<bool> {
    Ok(self_intersections(f, tol)?
        .iter()
        .all(|g| g.kind == ContactKind::SharedCrease))
}

/// Classify the folding as a whole.
///
/// `ProperFlatContact` is recognised only in the one shape where flatness
/// is unambiguous: a single crease separating two panels. Anything else
/// with non-hinge contact but no crossing stays `Unknown`.
pub fn properness_verdict<S: Scalar>(
    f: &Folding<S>,
    tol: &Tolerance<S>,
) -> Result<PropernessReport<S>> {
    let findings = self_intersections(f, tol)?;
    let any_crossing = findings
        .iter()
        .any(|g| g.kind == ContactKind::TransversalCrossing);
    let hinges_only = findings.iter().all(|g| g.kind == ContactKind::SharedCrease);
    let verdict = if any_crossing {
        Verdict::ImproperTransversal
    } else if hinges_only {
        Verdict::ProperInjective
    } else if f.pattern.creases.len() == 1 && f.pattern.faces.len() == 2 {
        Verdict::ProperFlatContact
    } else {
        Verdict::Unknown
    };
    Ok(PropernessReport { verdict, findings })
}

/// Geometric contact between two face images, before pattern context is
/// taken into account.
enum RawContact<S> {
    /// Coplanar overlap of positive area; carries an interior witness.
    Overlap(V3<S>),
    /// Segment with interior points of both faces: a genuine crossing.
    Crossing(V3<S>, V3<S>),
    /// Contact segment along at least one face's boundary.
    Seg(V3<S>, V3<S>),
    /// Isolated contact point.
    Pt(V3<S>),
}

/// Pattern-level context for one face pair: images of their shared creases
/// and shared vertices, used to recognise expected contacts.
struct PairContext<S> {
    crease_images: Vec<(V3<S>, V3<S>)>,
    vertex_images: Vec<V3<S>>,
}

impl<S: Scalar> PairContext<S> {
    fn new(f: &Folding<S>, i: usize, j: usize) -> Self {
        let edge_set = |face: &[usize]| -> Vec<(usize, usize)> {
            let n = face.len();
            (0..n)
                .map(|k| {
                    let (a, b) = (face[k], face[(k + 1) % n]);
                    (a.min(b), a.max(b))
                })
                .collect()
        };
        let ei = edge_set(&f.pattern.faces[i]);
        let ej = edge_set(&f.pattern.faces[j]);
        let mut crease_images = Vec::new();
        for &(a, b) in &f.pattern.creases {
            if ei.contains(&(a, b)) && ej.contains(&(a, b)) {
                let pa = f.pattern.vertices[a];
                let pb = f.pattern.vertices[b];
                // Both face maps should agree on the crease; record both
                // images so a disagreement does not misclassify contacts.
                for m in [&f.face_maps[i], &f.face_maps[j]] {
                    crease_images.push((m.apply(pa), m.apply(pb)));
                }
            }
        }
        let mut vertex_images = Vec::new();
        for &v in &f.pattern.faces[i] {
            if f.pattern.faces[j].contains(&v) {
                let p = f.pattern.vertices[v];
                vertex_images.push(f.face_maps[i].apply(p));
                vertex_images.push(f.face_maps[j].apply(p));
            }
        }
        PairContext { crease_images, vertex_images }
    }

    fn on_shared_crease(&self, samples: &[V3<S>], eps: S) -> bool {
        !self.crease_images.is_empty()
            && samples.iter().all(|&p| {
                self.crease_images
                    .iter()
                    .any(|&(a, b)| point_seg3_distance(p, a, b) <= eps)
            })
    }

    fn at_shared_vertex(&self, p: V3<S>, eps: S) -> bool {
        self.vertex_images.iter().any(|&q| q.dist(p) <= eps)
    }
}

fn pair_contacts<S: Scalar>(
    f: &Folding<S>,
    polys: &[Vec<V2<S>>],
    i: usize,
    j: usize,
    eps: S,
    out: &mut Vec<IntersectionFinding<S>>,
) -> Result<()> {
    let mi = &f.face_maps[i];
    let mj = &f.face_maps[j];
    let ni = mi.normal();
    let nj = mj.normal();
    let di = ni.dot(mi.translation);
    let dj = nj.dot(mj.translation);

    let cn = ni.cross(nj);
    let mut raw: Vec<RawContact<S>> = Vec::new();
    if cn.norm() < S::s(1e-7) {
        // Parallel image planes.
        if (ni.dot(mj.translation) - di).abs() > eps {
            return Ok(());
        }
        coplanar_contacts(mi, mj, &polys[i], &polys[j], ni, di, eps, &mut raw)?;
    } else {
        crossing_contacts(mi, mj, &polys[i], &polys[j], ni, nj, di, dj, cn, eps, &mut raw)?;
    }

    classify(&PairContext::new(f, i, j), raw, (i, j), eps, out);
    Ok(())
}

/// Contacts between two faces folded into a common plane.
#[allow(clippy::too_many_arguments)]
fn coplanar_contacts<S: Scalar>(
    mi: &RigidEmbedding<S>,
    mj: &RigidEmbedding<S>,
    pi: &[V2<S>],
    pj: &[V2<S>],
    n: V3<S>,
    d: S,
    eps: S,
    raw: &mut Vec<RawContact<S>>,
) -> Result<()> {
    let (e1, e2) = plane_basis(n)?;
    let origin = n.scale(d);
    let to2 = |q: V3<S>| v2((q - origin).dot(e1), (q - origin).dot(e2));
    let lift = |p: V2<S>| origin + e1.scale(p.x) + e2.scale(p.y);
    let qi: Vec<V2<S>> = pi.iter().map(|&p| to2(mi.apply(p))).collect();
    let qj: Vec<V2<S>> = pj.iter().map(|&p| to2(mj.apply(p))).collect();

    let area = polygon_overlap_area(&qi, &qj)?;
    if area > eps {
        let min_piece = (area / S::s(64.0)).max(S::s(1e-14));
        let w = polygon_overlap_witness(&qi, &qj, min_piece)?.unwrap_or(qi[0]);
        raw.push(RawContact::Overlap(lift(w)));
        return Ok(());
    }

    // Boundary contact only.
    for a in 0..qi.len() {
        let sa = seg2(qi[a], qi[(a + 1) % qi.len()]);
        for b in 0..qj.len() {
            let sb = seg2(qj[b], qj[(b + 1) % qj.len()]);
            match segment_intersect(sa, sb, eps) {
                SegIntersection::None | SegIntersection::Degenerate => {}
                SegIntersection::Point { point, .. } => raw.push(RawContact::Pt(lift(point))),
                SegIntersection::Overlap { start, end } => {
                    raw.push(RawContact::Seg(lift(start), lift(end)))
                }
            }
        }
    }
    Ok(())
}

/// Contacts between two faces whose image planes cross along a line.
#[allow(clippy::too_many_arguments)]
fn crossing_contacts<S: Scalar>(
    mi: &RigidEmbedding<S>,
    mj: &RigidEmbedding<S>,
    pi: &[V2<S>],
    pj: &[V2<S>],
    ni: V3<S>,
    nj: V3<S>,
    di: S,
    dj: S,
    cn: V3<S>,
    eps: S,
    raw: &mut Vec<RawContact<S>>,
) -> Result<()> {
    let u = cn.normalize().expect("checked non-parallel");
    let c = ni.dot(nj);
    let denom = S::one() - c * c;
    let x0 = ni.scale((di - dj * c) / denom) + nj.scale((dj - di * c) / denom);

    let iv_i = line_polygon_intervals(x0, u, mi, pi, eps);
    let iv_j = line_polygon_intervals(x0, u, mj, pj, eps);
    let at = |t: S| x0 + u.scale(t);

    for &(a1, b1) in &iv_i {
        for &(a2, b2) in &iv_j {
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if hi < lo - eps * S::s(0.5) {
                continue;
            }
            if hi - lo > eps {
                let tm = (lo + hi) / S::s(2.0);
                let interior = |m: &RigidEmbedding<S>, poly: &[V2<S>]| {
                    point_in_polygon_interior(m.pullback(at(tm)), poly, eps)
                };
                if interior(mi, pi) && interior(mj, pj) {
                    raw.push(RawContact::Crossing(at(lo), at(hi)));
                } else {
                    raw.push(RawContact::Seg(at(lo), at(hi)));
                }
            } else {
                raw.push(RawContact::Pt(at((lo + hi) / S::s(2.0))));
            }
        }
    }
    Ok(())
}

/// Parameter intervals along the line `x0 + t u` where the image of `poly`
/// under `m` meets the line. The line is assumed to lie in the image plane.
fn line_polygon_intervals<S: Scalar>(
    x0: V3<S>,
    u: V3<S>,
    m: &RigidEmbedding<S>,
    poly: &[V2<S>],
    eps: S,
) -> Vec<(S, S)> {
    let p0 = m.pullback(x0);
    let d = v2(u.dot(m.cols[0]), u.dot(m.cols[1]));
    let n = poly.len();
    let mut ts: Vec<S> = Vec::new();
    for k in 0..n {
        let a = poly[k];
        let b = poly[(k + 1) % n];
        let e = b - a;
        let elen = e.norm();
        let denom = d.cross(e);
        let w = a - p0;
        if denom.abs() <= S::s(1e-12) * elen.max(S::one()) {
            // Edge parallel to the line: contributes both ends if collinear.
            if w.cross(d).abs() <= eps {
                ts.push(w.dot(d));
                ts.push((b - p0).dot(d));
            }
            continue;
        }
        let s = w.cross(d) / denom;
        let t = w.cross(e) / denom;
        let pad = eps / elen.max(S::s(1e-30));
        if s >= -pad && s <= S::one() + pad {
            ts.push(t);
        }
    }
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut iv: Vec<(S, S)> = Vec::new();
    for w in ts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let mid = (t0 + t1) / S::s(2.0);
        if point_in_polygon(p0 + d.scale(mid), poly, eps) {
            match iv.last_mut() {
                Some(last) if t0 - last.1 <= eps * S::s(0.5) => last.1 = t1,
                _ => iv.push((t0, t1)),
            }
        }
    }
    if iv.is_empty() {
        // The line may only graze the boundary at isolated points.
        let mut k = 0;
        while k < ts.len() {
            let t = ts[k];
            if k + 1 < ts.len() && ts[k + 1] - t <= eps {
                iv.push((t, t));
                while k < ts.len() && ts[k] - t <= eps {
                    k += 1;
                }
            } else {
                k += 1;
            }
        }
    }
    iv
}

/// Map raw contacts of one face pair to findings, recognising hinges and
/// suppressing isolated touches at shared pattern vertices.
fn classify<S: Scalar>(
    ctx: &PairContext<S>,
    raw: Vec<RawContact<S>>,
    faces: (usize, usize),
    eps: S,
    out: &mut Vec<IntersectionFinding<S>>,
) {
    let mut findings: Vec<IntersectionFinding<S>> = Vec::new();
    let mut shared_seen = false;
    for contact in raw {
        match contact {
            RawContact::Overlap(w) => findings.push(IntersectionFinding {
                faces,
                kind: ContactKind::CoincidentOverlap,
                witness: Witness::Point(w),
            }),
            RawContact::Crossing(a, b) => findings.push(IntersectionFinding {
                faces,
                kind: ContactKind::TransversalCrossing,
                witness: Witness::Segment(a, b),
            }),
            RawContact::Seg(a, b) => {
                let midpoint = (a + b).scale(S::s(0.5));
                if ctx.on_shared_crease(&[a, midpoint, b], eps) {
                    shared_seen = true;
                } else {
                    findings.push(IntersectionFinding {
                        faces,
                        kind: ContactKind::Touching,
                        witness: Witness::Segment(a, b),
                    });
                }
            }
            RawContact::Pt(p) => {
                if ctx.on_shared_crease(&[p], eps) {
                    shared_seen = true;
                } else if !ctx.at_shared_vertex(p, eps) {
                    findings.push(IntersectionFinding {
                        faces,
                        kind: ContactKind::Touching,
                        witness: Witness::Point(p),
                    });
                }
            }
        }
    }

    if shared_seen {
        // One finding per hinge, witnessed by the crease image.
        if let Some(&(a, b)) = ctx.crease_images.first() {
            findings.push(IntersectionFinding {
                faces,
                kind: ContactKind::SharedCrease,
                witness: Witness::Segment(a, b),
            });
        }
    }

    // Deduplicate near-identical touch witnesses; segments first, so an
    // endpoint touch reported separately folds into its segment.
    findings.sort_by_key(|g| {
        (g.kind, matches!(g.witness, Witness::Point(_)))
    });
    let mut kept: Vec<IntersectionFinding<S>> = Vec::new();
    for g in findings {
        let dup = kept.iter().any(|h| {
            h.kind == g.kind
                && match (h.witness, g.witness) {
                    (Witness::Point(p), Witness::Point(q)) => p.dist(q) <= eps,
                    (Witness::Segment(a, b), Witness::Segment(c, d)) => {
                        (a.dist(c) <= eps && b.dist(d) <= eps)
                            || (a.dist(d) <= eps && b.dist(c) <= eps)
                    }
                    (Witness::Segment(a, b), Witness::Point(q)) => {
                        point_seg3_distance(q, a, b) <= eps
                    }
                    _ => false,
                }
        });
        if !dup {
            kept.push(g);
        }
    }
    out.extend(kept);
}
