//! Planar straight-line graphs: splitting segment arrangements at their
//! crossings and extracting the faces of the subdivision.

use super::{seg2, segment_intersect, SegIntersection, Segment2, V2};
use crate::error::{Error, Result};
use crate::num::Scalar;
use poly::polygon_area;

use super::poly;

/// Split a set of segments at all mutual intersection points, merging
/// endpoints within `tol`. Collinear-overlapping segments are rejected.
pub fn split_segments_at_intersections<S: Scalar>(
    segments: &[Segment2<S>],
    tol: S,
) -> Result<(Vec<V2<S>>, Vec<(usize, usize)>)> {
    let n = segments.len();
    let mut params: Vec<Vec<S>> = vec![vec![S::zero(), S::one()]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            match segment_intersect(segments[i], segments[j], tol) {
                SegIntersection::Point { t_a, t_b, .. } => {
                    params[i].push(t_a);
                    params[j].push(t_b);
                }
                SegIntersection::Overlap { .. } => {
                    return Err(Error::Domain(format!(
                        "segments {i} and {j} overlap along a collinear stretch"
                    )));
                }
                SegIntersection::Degenerate => {
                    return Err(Error::Domain(format!(
                        "segments {i} and {j} meet too degenerately to subdivide"
                    )));
                }
                SegIntersection::None => {}
            }
        }
    }

    let mut vertices: Vec<V2<S>> = Vec::new();
    let mut intern = |p: V2<S>| -> usize {
        for (k, &q) in vertices.iter().enumerate() {
            if p.dist(q) <= tol {
                return k;
            }
        }
        vertices.push(p);
        vertices.len() - 1
    };

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, ts) in params.iter_mut().enumerate() {
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let len = segments[i].len();
        if len <= tol {
            return Err(Error::Domain(format!("segment {i} has near-zero length")));
        }
        let tpad = tol / len;
        let mut cleaned: Vec<S> = Vec::with_capacity(ts.len());
        for &t in ts.iter() {
            let t = t.max(S::zero()).min(S::one());
            if cleaned.last().map_or(true, |&prev| t - prev > tpad) {
                cleaned.push(t);
            }
        }
        let ids: Vec<usize> = cleaned.iter().map(|&t| intern(segments[i].at(t))).collect();
        for w in ids.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if !edges.contains(&key) {
                edges.push(key);
            }
        }
    }
    Ok((vertices, edges))
}

/// Faces of a connected planar subdivision, as counterclockwise vertex
/// cycles. The (unique) outer face is detected by its negative signed area
/// and dropped; more than one negative face means the graph is disconnected
/// or contains an island, which is rejected.
pub fn pslg_faces<S: Scalar>(vertices: &[V2<S>], edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    if edges.is_empty() {
        return Err(Error::Domain("subdivision has no edges".into()));
    }
    let nv = vertices.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &(u, v) in edges {
        if u >= nv || v >= nv {
            return Err(Error::Domain(format!("edge ({u}, {v}) references a missing vertex")));
        }
        if u == v {
            return Err(Error::Domain(format!("edge at vertex {u} is a self-loop")));
        }
        if nbrs[u].contains(&v) {
            return Err(Error::Domain(format!("edge ({u}, {v}) appears twice")));
        }
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    for (v, adj) in nbrs.iter_mut().enumerate() {
        adj.sort_by(|&a, &b| {
            let da = vertices[a] - vertices[v];
            let db = vertices[b] - vertices[v];
            da.y.atan2(da.x).partial_cmp(&db.y.atan2(db.x)).unwrap()
        });
    }

    // Trace the face to the left of each half-edge: from (u, v), continue
    // with the outgoing edge at v just clockwise of the reversal (v, u).
    let next_target = |u: usize, v: usize| -> usize {
        let adj = &nbrs[v];
        let pos = adj.iter().position(|&w| w == u).unwrap();
        adj[(pos + adj.len() - 1) % adj.len()]
    };

    let mut seen: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();
    let mut interior: Vec<Vec<usize>> = Vec::new();
    let mut outer_count = 0usize;
    for &(a, b) in edges {
        for (u0, v0) in [(a, b), (b, a)] {
            if seen.contains(&(u0, v0)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = (u0, v0);
            loop {
                seen.insert((u, v));
                face.push(u);
                let w = next_target(u, v);
                u = v;
                v = w;
                if (u, v) == (u0, v0) {
                    break;
                }
                if face.len() > 4 * edges.len() {
                    return Err(Error::Domain("face walk failed to close".into()));
                }
            }
            let pts: Vec<V2<S>> = face.iter().map(|&i| vertices[i]).collect();
            if polygon_area(&pts) > S::zero() {
                interior.push(face);
            } else {
                outer_count += 1;
            }
        }
    }
    if outer_count != 1 {
        return Err(Error::Domain(format!(
            "subdivision must be connected with a single outer face; found {outer_count} outer walks"
        )));
    }
    for face in &interior {
        let mut sorted = face.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Domain(
                    "a face visits a vertex twice; the subdivision has a dangling edge".into(),
                ));
            }
        }
    }
    Ok(interior)
}

/// Convenience: subdivide the given chords together with the boundary of the
/// unit square and return (vertices, edges, faces).
pub fn square_subdivision<S: Scalar>(
    chords: &[Segment2<S>],
    tol: S,
) -> Result<(Vec<V2<S>>, Vec<(usize, usize)>, Vec<Vec<usize>>)> {
    let z = S::zero();
    let o = S::one();
    let corners = [
        super::v2(z, z),
        super::v2(o, z),
        super::v2(o, o),
        super::v2(z, o),
    ];
    let mut segs: Vec<Segment2<S>> = (0..4)
        .map(|i| seg2(corners[i], corners[(i + 1) % 4]))
        .collect();
    segs.extend_from_slice(chords);
    let (vertices, edges) = split_segments_at_intersections(&segs, tol)?;
    let faces = pslg_faces(&vertices, &edges)?;
    Ok((vertices, edges, faces))
}
