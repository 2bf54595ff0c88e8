//! Building diagrams from geometry: a closed spatial polyline seen along a
//! regular direction, or a flat stick picture with declared over-strands.

use super::diagram::Diagram;
use crate::error::{Error, Result};
use crate::geometry::{flat_crossings, project_points, regularity_eps, FlatCrossing, V2, V3};
use crate::num::Scalar;

/// Assemble a diagram from a closed flat polyline. `a_over_b` decides, for
/// each crossing, whether the earlier segment passes over the later one.
pub fn diagram_from_flat_path<S, F>(flat: &[V2<S>], eps: S, mut a_over_b: F) -> Result<Diagram>
where
    S: Scalar,
    F: FnMut(&FlatCrossing<S>) -> Result<bool>,
{
    let xs = flat_crossings(flat, eps)?;
    let n = flat.len();
    let mut per_seg: Vec<Vec<(S, usize)>> = vec![Vec::new(); n];
    let mut signs = Vec::with_capacity(xs.len());
    let mut a_over = Vec::with_capacity(xs.len());
    for (id, x) in xs.iter().enumerate() {
        let over = a_over_b(x)?;
        let da = flat[(x.seg_a + 1) % n] - flat[x.seg_a];
        let db = flat[(x.seg_b + 1) % n] - flat[x.seg_b];
        let (od, ud) = if over { (da, db) } else { (db, da) };
        signs.push(if od.cross(ud) > S::zero() { 1i8 } else { -1i8 });
        a_over.push(over);
        per_seg[x.seg_a].push((x.t_a, id));
        per_seg[x.seg_b].push((x.t_b, id));
    }
    let mut passes = Vec::new();
    for (i, hits) in per_seg.iter_mut().enumerate() {
        hits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for &(_, id) in hits.iter() {
            let on_a = xs[id].seg_a == i;
            passes.push((id, if on_a { a_over[id] } else { !a_over[id] }));
        }
    }
    Diagram::from_walk(passes, signs)
}

/// Diagram of a closed spatial polyline projected along a seeded regular
/// direction.
pub fn diagram_from_polyline<S: Scalar>(points: &[V3<S>], seed: u64, tol: S) -> Result<Diagram> {
    let dir = crate::geometry::generic_direction(points, seed, tol)?;
    diagram_from_projection(points, dir, tol)
}

/// Diagram of a closed spatial polyline projected along `dir`, which must be
/// regular for it. Strands meeting at (projectively) the same depth mean the
/// curve touches itself and traces no knot.
pub fn diagram_from_projection<S: Scalar>(points: &[V3<S>], dir: V3<S>, tol: S) -> Result<Diagram> {
    let (flat, depth) = project_points(points, dir)?;
    let eps = regularity_eps(points, tol);
    let depth_eps = super::depth_eps(points, tol);
    let n = points.len();
    diagram_from_flat_path(&flat, eps, |x| {
        let da = depth[x.seg_a] + (depth[(x.seg_a + 1) % n] - depth[x.seg_a]) * x.t_a;
        let db = depth[x.seg_b] + (depth[(x.seg_b + 1) % n] - depth[x.seg_b]) * x.t_b;
        if (da - db).abs() <= depth_eps {
            return Err(Error::NotAKnot(format!(
                "strands through segments {} and {} meet at the same depth; the loop \
                 image touches itself",
                x.seg_a, x.seg_b
            )));
        }
        Ok(da > db)
    })
}

/// Diagram of a flat stick picture. `overrides` assigns, per crossing pair of
/// segment indices, which segment runs on top; every actual crossing must be
/// covered and no override may name a pair that does not cross.
pub fn diagram_from_sticks<S: Scalar>(
    flat: &[V2<S>],
    overrides: &[([usize; 2], usize)],
    tol: S,
) -> Result<Diagram> {
    let mut lo = flat[0];
    let mut hi = flat[0];
    for &p in flat {
        lo = crate::geometry::v2(lo.x.min(p.x), lo.y.min(p.y));
        hi = crate::geometry::v2(hi.x.max(p.x), hi.y.max(p.y));
    }
    let eps = (tol * S::s(100.0)).max(S::s(1e-7)) * (hi - lo).norm().max(S::one());

    let mut used = vec![false; overrides.len()];
    let d = diagram_from_flat_path(flat, eps, |x| {
        let slot = overrides
            .iter()
            .position(|&([a, b], _)| (a, b) == (x.seg_a, x.seg_b) || (a, b) == (x.seg_b, x.seg_a));
        let Some(k) = slot else {
            return Err(Error::Specification(format!(
                "segments {} and {} cross but no over-strand is declared for them",
                x.seg_a, x.seg_b
            )));
        };
        used[k] = true;
        let (pair, over) = overrides[k];
        if over != pair[0] && over != pair[1] {
            return Err(Error::Specification(format!(
                "over-strand {over} is not one of the crossing pair {pair:?}"
            )));
        }
        Ok(over == x.seg_a)
    })?;
    if let Some(k) = used.iter().position(|&u| !u) {
        let (pair, _) = overrides[k];
        return Err(Error::Specification(format!(
            "declared crossing between segments {} and {} does not occur",
            pair[0], pair[1]
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{v2, v3};
    use crate::knotid::{alexander, determinant, jones};
    use crate::knotid::laurent::Laurent;
    use orikami_oracle::frozen;

    fn sample_curve(f: impl Fn(f64) -> V3<f64>, n: usize) -> Vec<V3<f64>> {
        (0..n)
            .map(|k| f(2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect()
    }

    fn trefoil_curve() -> Vec<V3<f64>> {
        sample_curve(
            |t| {
                v3(
                    t.sin() + 2.0 * (2.0 * t).sin(),
                    t.cos() - 2.0 * (2.0 * t).cos(),
                    -(3.0 * t).sin(),
                )
            },
            240,
        )
    }

    fn figure_eight_curve() -> Vec<V3<f64>> {
        sample_curve(
            |t| {
                v3(
                    (2.0 + (2.0 * t).cos()) * (3.0 * t).cos(),
                    (2.0 + (2.0 * t).cos()) * (3.0 * t).sin(),
                    (4.0 * t).sin(),
                )
            },
            320,
        )
    }

    fn torus_curve(q: u32) -> Vec<V3<f64>> {
        sample_curve(
            |u| {
                let r = 2.0 + (q as f64 * u).cos();
                v3(r * (2.0 * u).cos(), r * (2.0 * u).sin(), (q as f64 * u).sin())
            },
            160 * q as usize,
        )
    }

    fn certify_curve(points: &[V3<f64>]) -> Diagram {
        diagram_from_polyline(points, 11, 1e-9).unwrap().simplified()
    }

    #[test]
    fn planar_loop_is_unknotted() {
        let pts = vec![
            v3(0.0, 0.0, 0.0),
            v3(1.0, 0.2, 0.0),
            v3(0.8, 1.1, 0.0),
            v3(-0.1, 0.9, 0.0),
        ];
        let d = certify_curve(&pts);
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn trefoil_curve_has_determinant_three() {
        let d = certify_curve(&trefoil_curve());
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(determinant(&d).unwrap(), frozen::DET_TREFOIL);
        let (me, cs) = frozen::ALEX_TREFOIL;
        assert_eq!(alexander(&d).unwrap(), Laurent::from_parts(me, cs));
        let v = jones(&d).unwrap();
        let (me, cs) = frozen::JONES_LEFT_TREFOIL;
        let left = Laurent::from_parts(me, cs);
        assert!(v == left || v == left.reversed(), "got {v}");
    }

    #[test]
    fn figure_eight_curve_has_determinant_five() {
        let d = certify_curve(&figure_eight_curve());
        assert_eq!(determinant(&d).unwrap(), frozen::DET_FIGURE_EIGHT);
        let (me, cs) = frozen::ALEX_FIGURE_EIGHT;
        assert_eq!(alexander(&d).unwrap(), Laurent::from_parts(me, cs));
        let v = jones(&d).unwrap();
        let (me, cs) = frozen::JONES_FIGURE_EIGHT;
        // Amphichiral: the polynomial equals its own reversal.
        assert_eq!(v, Laurent::from_parts(me, cs));
        assert_eq!(v, v.reversed());
    }

    #[test]
    fn torus_curves_match_their_determinants() {
        for (q, det, alex) in [
            (5, frozen::DET_T25, frozen::ALEX_T25),
            (7, frozen::DET_T27, frozen::ALEX_T27),
        ] {
            let d = certify_curve(&torus_curve(q));
            assert_eq!(determinant(&d).unwrap(), det, "torus q={q}");
            let (me, cs) = alex;
            assert_eq!(alexander(&d).unwrap(), Laurent::from_parts(me, cs), "torus q={q}");
        }
    }

    #[test]
    fn pd_tuples_agree_with_the_independent_determinant(){
        for points in [trefoil_curve(), figure_eight_curve(), torus_curve(5)] {
            let d = certify_curve(&points);
            let mine = determinant(&d).unwrap();
            let theirs = orikami_oracle::goeritz_determinant(&d.pd_code()).unwrap();
            assert_eq!(mine, theirs);
        }
    }

    #[test]
    fn equal_depth_crossing_is_rejected() {
        // A flat figure-eight path: the crossing strands have equal depth.
        let pts = vec![
            v3(0.0, 0.0, 0.0),
            v3(2.0, 0.3, 0.0),
            v3(2.5, 1.6, 0.0),
            v3(1.2, 2.1, 0.0),
            v3(1.3, -0.6, 0.0),
            v3(-0.5, 1.8, 0.0),
        ];
        let dir = v3(0.02, -0.015, 1.0).normalize().unwrap();
        assert!(crate::geometry::is_regular_direction(&pts, dir, 1e-9));
        match diagram_from_projection(&pts, dir, 1e-9) {
            Err(Error::NotAKnot(_)) => {}
            other => panic!("expected a flat-touch rejection, got {other:?}"),
        }
    }

    #[test]
    fn sticks_with_declared_crossings() {
        // A pentagram star; every pair of non-adjacent chords crosses.
        let star: Vec<V2<f64>> = (0..5)
            .map(|k| {
                let a = std::f64::consts::FRAC_PI_2 + 4.0 * std::f64::consts::PI * k as f64 / 5.0;
                v2(a.cos(), a.sin())
            })
            .collect();
        // Alternate over/under along the strand: segment i crosses i+2, i+3.
        let overrides: Vec<([usize; 2], usize)> = (0..5)
            .map(|i| ([i, (i + 2) % 5], if i % 2 == 0 { i } else { (i + 2) % 5 }))
            .collect();
        let d = diagram_from_sticks(&star, &overrides, 1e-9).unwrap();
        assert_eq!(d.crossing_count(), 5);

        let missing = diagram_from_sticks(&star, &overrides[..4], 1e-9);
        assert!(matches!(missing, Err(Error::Specification(_))));

        let mut extra = overrides.clone();
        extra.push(([0, 1], 0));
        assert!(matches!(
            diagram_from_sticks(&star, &extra, 1e-9),
            Err(Error::Specification(_))
        ));
    }
}
