//! Polygon helpers: areas, containment, triangulation, convex clipping.

use super::{v2, V2};
use crate::error::{Error, Result};
use crate::num::Scalar;

/// Signed area (positive for counterclockwise orientation).
pub fn polygon_area<S: Scalar>(poly: &[V2<S>]) -> S {
    let n = poly.len();
    let mut acc = S::zero();
    for i in 0..n {
        acc += poly[i].cross(poly[(i + 1) % n]);
    }
    acc / S::s(2.0)
}

pub fn polygon_centroid<S: Scalar>(poly: &[V2<S>]) -> V2<S> {
    let n = poly.len();
    let a = polygon_area(poly);
    if a.abs() <= S::s(1e-30) {
        let mut c = V2::zero();
        for &p in poly {
            c = c + p;
        }
        return c.scale(S::one() / S::s(n as f64));
    }
    let mut cx = S::zero();
    let mut cy = S::zero();
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let w = p.cross(q);
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    let k = S::one() / (S::s(6.0) * a);
    v2(cx * k, cy * k)
}

/// Even-odd containment test; points within `tol` of the boundary count as
/// inside.
pub fn point_in_polygon<S: Scalar>(p: V2<S>, poly: &[V2<S>], tol: S) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        if point_seg_distance(p, poly[i], poly[(i + 1) % n]) <= tol {
            return true;
        }
    }
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let pi = poly[i];
        let pj = poly[j];
        if (pi.y > p.y) != (pj.y > p.y) {
            let xint = pj.x + (pi.x - pj.x) * (p.y - pj.y) / (pi.y - pj.y);
            if p.x < xint {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Strict interior test: inside and farther than `tol` from every edge.
pub fn point_in_polygon_interior<S: Scalar>(p: V2<S>, poly: &[V2<S>], tol: S) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        if point_seg_distance(p, poly[i], poly[(i + 1) % n]) <= tol {
            return false;
        }
    }
    point_in_polygon(p, poly, S::zero())
}

pub fn point_seg_distance<S: Scalar>(p: V2<S>, a: V2<S>, b: V2<S>) -> S {
    let d = b - a;
    let dd = d.dot(d);
    if dd <= S::s(1e-30) {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / dd).max(S::zero()).min(S::one());
    p.dist(a + d.scale(t))
}

/// Ear-clipping triangulation of a simple polygon (either orientation).
/// Returns index triples into the input.
pub fn ear_clip<S: Scalar>(poly: &[V2<S>]) -> Result<Vec<[usize; 3]>> {
    let n = poly.len();
    if n < 3 {
        return Err(Error::Domain("polygon needs at least three vertices".into()));
    }
    let ccw = polygon_area(poly) >= S::zero();
    let mut idx: Vec<usize> = (0..n).collect();
    if !ccw {
        idx.reverse();
    }
    let mut tris = Vec::with_capacity(n - 2);
    let mut guard = 0usize;
    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let ia = idx[(k + m - 1) % m];
            let ib = idx[k];
            let ic = idx[(k + 1) % m];
            let a = poly[ia];
            let b = poly[ib];
            let c = poly[ic];
            let turn = (b - a).cross(c - a);
            if turn <= S::zero() {
                continue; // reflex corner
            }
            let mut ear = true;
            for &other in &idx {
                if other == ia || other == ib || other == ic {
                    continue;
                }
                if point_in_triangle(poly[other], a, b, c) {
                    ear = false;
                    break;
                }
            }
            if ear {
                tris.push([ia, ib, ic]);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            guard += 1;
            if guard > 2 {
                return Err(Error::Domain(
                    "polygon is not simple; triangulation failed".into(),
                ));
            }
        } else {
            guard = 0;
        }
    }
    tris.push([idx[0], idx[1], idx[2]]);
    Ok(tris)
}

fn point_in_triangle<S: Scalar>(p: V2<S>, a: V2<S>, b: V2<S>, c: V2<S>) -> bool {
    let s1 = (b - a).cross(p - a);
    let s2 = (c - b).cross(p - b);
    let s3 = (a - c).cross(p - c);
    (s1 >= S::zero() && s2 >= S::zero() && s3 >= S::zero())
        || (s1 <= S::zero() && s2 <= S::zero() && s3 <= S::zero())
}

/// Clip a convex polygon `subject` against convex `clip` (Sutherland-Hodgman).
/// Both must be counterclockwise.
pub fn convex_clip<S: Scalar>(subject: &[V2<S>], clip: &[V2<S>]) -> Vec<V2<S>> {
    let mut out: Vec<V2<S>> = subject.to_vec();
    let m = clip.len();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % m];
        let edge = b - a;
        let input = std::mem::take(&mut out);
        let n = input.len();
        for j in 0..n {
            let cur = input[j];
            let nxt = input[(j + 1) % n];
            let side_cur = edge.cross(cur - a);
            let side_nxt = edge.cross(nxt - a);
            if side_cur >= S::zero() {
                out.push(cur);
            }
            if (side_cur > S::zero() && side_nxt < S::zero())
                || (side_cur < S::zero() && side_nxt > S::zero())
            {
                let t = side_cur / (side_cur - side_nxt);
                out.push(cur.lerp(nxt, t));
            }
        }
    }
    out
}

/// Area of the overlap of two triangles (orientation-insensitive).
pub fn tri_tri_overlap_area<S: Scalar>(t1: [V2<S>; 3], t2: [V2<S>; 3]) -> S {
    let fix = |t: [V2<S>; 3]| {
        if polygon_area(&t) < S::zero() {
            [t[0], t[2], t[1]]
        } else {
            t
        }
    };
    let a = fix(t1);
    let b = fix(t2);
    let clipped = convex_clip(&a, &b);
    if clipped.len() < 3 {
        S::zero()
    } else {
        polygon_area(&clipped).abs()
    }
}

/// Overlap area of two simple polygons via triangulation of both.
pub fn polygon_overlap_area<S: Scalar>(p: &[V2<S>], q: &[V2<S>]) -> Result<S> {
    let tp = ear_clip(p)?;
    let tq = ear_clip(q)?;
    let mut total = S::zero();
    for &[a, b, c] in &tp {
        let t1 = [p[a], p[b], p[c]];
        for &[d, e, f] in &tq {
            let t2 = [q[d], q[e], q[f]];
            total += tri_tri_overlap_area(t1, t2);
        }
    }
    Ok(total)
}

/// A representative interior point of the overlap region of two simple
/// polygons, if the overlap has positive area.
pub fn polygon_overlap_witness<S: Scalar>(p: &[V2<S>], q: &[V2<S>], min_area: S) -> Result<Option<V2<S>>> {
    let tp = ear_clip(p)?;
    let tq = ear_clip(q)?;
    let fix = |t: [V2<S>; 3]| {
        if polygon_area(&t) < S::zero() {
            [t[0], t[2], t[1]]
        } else {
            t
        }
    };
    let mut best: Option<(S, V2<S>)> = None;
    for &[a, b, c] in &tp {
        let t1 = fix([p[a], p[b], p[c]]);
        for &[d, e, f] in &tq {
            let t2 = fix([q[d], q[e], q[f]]);
            let clipped = convex_clip(&t1, &t2);
            if clipped.len() < 3 {
                continue;
            }
            let area = polygon_area(&clipped).abs();
            if area <= min_area {
                continue;
            }
            let w = polygon_centroid(&clipped);
            if best.map_or(true, |(ba, _)| area > ba) {
                best = Some((area, w));
            }
        }
    }
    Ok(best.map(|(_, w)| w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_area_and_centroid() {
        let sq: Vec<V2<f64>> = vec![v2(0.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0), v2(0.0, 1.0)];
        assert!((polygon_area(&sq) - 1.0).abs() < 1e-12);
        assert!(polygon_centroid(&sq).dist(v2(0.5, 0.5)) < 1e-12);
        let cw: Vec<_> = sq.iter().rev().cloned().collect();
        assert!((polygon_area(&cw) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn containment() {
        let sq = vec![v2(0.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0), v2(0.0, 1.0)];
        assert!(point_in_polygon(v2(0.5, 0.5), &sq, 1e-9));
        assert!(point_in_polygon(v2(0.0, 0.5), &sq, 1e-9));
        assert!(!point_in_polygon(v2(1.5, 0.5), &sq, 1e-9));
        assert!(point_in_polygon_interior(v2(0.5, 0.5), &sq, 1e-9));
        assert!(!point_in_polygon_interior(v2(0.0, 0.5), &sq, 1e-9));
    }

    #[test]
    fn ear_clip_covers_the_polygon() {
        // An L-shape: concave hexagon.
        let ell: Vec<V2<f64>> = vec![
            v2(0.0, 0.0),
            v2(2.0, 0.0),
            v2(2.0, 1.0),
            v2(1.0, 1.0),
            v2(1.0, 2.0),
            v2(0.0, 2.0),
        ];
        let tris = ear_clip(&ell).unwrap();
        assert_eq!(tris.len(), 4);
        let total: f64 = tris
            .iter()
            .map(|&[a, b, c]| polygon_area(&[ell[a], ell[b], ell[c]]).abs())
            .sum();
        assert!((total - 3.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_overlap_areas() {
        let t1: [V2<f64>; 3] = [v2(0.0, 0.0), v2(2.0, 0.0), v2(0.0, 2.0)];
        let shifted = [v2(5.0, 5.0), v2(7.0, 5.0), v2(5.0, 7.0)];
        assert_eq!(tri_tri_overlap_area(t1, shifted), 0.0);
        assert!((tri_tri_overlap_area(t1, t1) - 2.0).abs() < 1e-12);
        // Flipped orientation should not matter.
        let t1cw = [t1[0], t1[2], t1[1]];
        assert!((tri_tri_overlap_area(t1, t1cw) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn polygon_overlap_witness_lies_in_both() {
        let a: Vec<V2<f64>> = vec![v2(0.0, 0.0), v2(2.0, 0.0), v2(2.0, 2.0), v2(0.0, 2.0)];
        let b = vec![v2(1.0, 1.0), v2(3.0, 1.0), v2(3.0, 3.0), v2(1.0, 3.0)];
        let w = polygon_overlap_witness(&a, &b, 1e-9).unwrap().unwrap();
        assert!(point_in_polygon(w, &a, 1e-9));
        assert!(point_in_polygon(w, &b, 1e-9));
        let far = vec![v2(10.0, 10.0), v2(11.0, 10.0), v2(11.0, 11.0), v2(10.0, 11.0)];
        assert!(polygon_overlap_witness(&a, &far, 1e-9).unwrap().is_none());
        assert!((polygon_overlap_area(&a, &b).unwrap() - 1.0).abs() < 1e-9);
    }
}
