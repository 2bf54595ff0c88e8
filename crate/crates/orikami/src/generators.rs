//! Ready-made foldings: torus-knot loops on a two-crease pattern, single
//! crease folds, random simple fold sequences, and a deliberately improper
//! fixture for exercising the intersection analysis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::folding::{build_pattern, Folding, PaperLoop};
use crate::geometry::poly::polygon_centroid;
use crate::geometry::{
    fold_across_line, rotate_embedding_about_line, seg2, segment_intersect, v2, v3,
    RigidEmbedding, SegIntersection, V2,
};
use crate::num::{Scalar, Tolerance};

/// Dihedral offsets of the two flaps from the flat fold. Distinct values keep
/// the two sheets at different heights over the middle panel, so the loop's
/// strands cross at well-separated depths.
const THETA_B: f64 = 0.4;
const THETA_T: f64 = 0.5;

/// Parameters for [`torus_folding`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusParams<S> {
    /// The folded loop is a (2, 2n+3) torus knot built from n+1 tooth pairs.
    pub n: usize,
    /// Width of each tooth, in paper units.
    pub tooth_width: S,
    /// How far a tooth cap's image reaches past the height crossover of the
    /// two flaps, in image units.
    pub tooth_depth: S,
    /// Horizontal inset of the tooth block from the west edge.
    pub margin: S,
}

impl<S: Scalar> TorusParams<S> {
    pub fn new(n: usize) -> Self {
        TorusParams {
            n,
            ..Default::default()
        }
    }
}

impl<S: Scalar> Default for TorusParams<S> {
    fn default() -> Self {
        TorusParams {
            n: 0,
            tooth_width: S::s(0.04),
            tooth_depth: S::s(0.03),
            margin: S::s(0.10),
        }
    }
}

struct TorusLayout<S> {
    /// West x of each bottom tooth; top teeth sit half a tooth further west.
    tooth_west: Vec<S>,
    width: S,
    stagger: S,
    /// Base rows of the two tooth combs.
    row_b: S,
    row_t: S,
    /// Rows the caps reach on the flaps (in paper coordinates).
    row_bcap: S,
    row_tcap: S,
    /// Row of the return lane that crosses under both combs.
    row_hw: S,
    /// Row of the eastbound connector lane on the top flap.
    lane: S,
    /// Vertical rails west and east of the combs.
    west1: S,
    west2: S,
    east1: S,
    east2: S,
}

fn torus_layout<S: Scalar>(params: &TorusParams<S>) -> Result<TorusLayout<S>> {
    let w = params.tooth_width;
    let depth = params.tooth_depth;
    let margin = params.margin;
    let p = params.n + 1;

    if w < S::s(0.015) || w > S::s(0.10) {
        return Err(Error::Domain(format!(
            "tooth width {w} outside [0.015, 0.1]"
        )));
    }
    if depth < S::s(0.005) || depth > S::s(0.08) {
        return Err(Error::Domain(format!(
            "tooth depth {depth} outside [0.005, 0.08]"
        )));
    }
    let stagger = w / S::s(2.0);
    if margin < stagger + S::s(0.07) || margin > S::s(0.30) {
        return Err(Error::Domain(format!(
            "margin {margin} outside [tooth_width/2 + 0.07, 0.3]"
        )));
    }
    let usable = S::s(0.74) - margin;
    if S::s(2.0) * w * S::s(p as f64) > usable {
        return Err(Error::Domain(format!(
            "{p} tooth pairs of width {w} do not fit west of the east rails"
        )));
    }

    let third = S::one() / S::s(3.0);
    let two_thirds = S::s(2.0) * third;
    let (tan_b, tan_t) = (S::s(THETA_B).tan(), S::s(THETA_T).tan());
    // Image height where the two folded flaps pass each other.
    let y_star = (tan_b * third + tan_t * two_thirds) / (tan_b + tan_t);
    let row_bcap = third - (y_star + depth - third) / S::s(THETA_B).cos();
    let row_tcap = two_thirds + (two_thirds - (y_star - depth)) / S::s(THETA_T).cos();

    let pitch = usable / S::s(p as f64);
    let tooth_west: Vec<S> = (0..p)
        .map(|k| margin + pitch * S::s(k as f64))
        .collect();
    let east1 = tooth_west[p - 1] + w + S::s(0.02);
    let west1 = S::s(0.03);

    Ok(TorusLayout {
        width: w,
        stagger,
        row_b: S::s(0.31),
        row_t: S::s(0.69),
        row_bcap,
        row_tcap,
        row_hw: row_bcap / S::s(2.0),
        lane: S::s(0.6565),
        west1,
        west2: (west1 + margin - stagger) / S::s(2.0),
        east1,
        east2: east1 + S::s(0.03),
        tooth_west,
    })
}

/// A two-crease folding of the square together with a drawn loop whose image
/// is a (2, 2n+3) torus knot.
///
/// The pattern creases at y = 1/3 and y = 2/3 and folds both outer panels
/// over the middle one, at slightly different dihedral angles. The loop runs
/// two combs of teeth into the folded-over region, where each tooth of one
/// comb hooks the staggered teeth of the other; the return connectors close
/// the braid.
pub fn torus_folding<S: Scalar>(
    params: &TorusParams<S>,
    tol: &Tolerance<S>,
) -> Result<(Folding<S>, PaperLoop<S>)> {
    let l = torus_layout(params)?;
    let p = params.n + 1;
    let third = S::one() / S::s(3.0);
    let two_thirds = S::s(2.0) * third;

    let pattern = build_pattern(
        &[
            v2(S::zero(), third),
            v2(S::one(), third),
            v2(S::zero(), two_thirds),
            v2(S::one(), two_thirds),
        ],
        &[(0, 1), (2, 3)],
        tol,
    )?;

    let id = RigidEmbedding::identity();
    let flap_b = rotate_embedding_about_line(
        &id,
        v3(S::zero(), third, S::zero()),
        v3(-S::one(), S::zero(), S::zero()),
        S::PI() - S::s(THETA_B),
    );
    let flap_t = rotate_embedding_about_line(
        &id,
        v3(S::zero(), two_thirds, S::zero()),
        v3(S::one(), S::zero(), S::zero()),
        S::PI() - S::s(THETA_T),
    );
    let face_maps = pattern
        .faces
        .iter()
        .map(|cyc| {
            let pts: Vec<V2<S>> = cyc.iter().map(|&i| pattern.vertices[i]).collect();
            let c = polygon_centroid(&pts);
            if c.y < third {
                flap_b
            } else if c.y > two_thirds {
                flap_t
            } else {
                id
            }
        })
        .collect();

    let mut wp: Vec<V2<S>> = Vec::with_capacity(8 * p + 8);
    wp.push(v2(l.west1, l.row_b));
    for &a in &l.tooth_west {
        wp.push(v2(a, l.row_b));
        wp.push(v2(a, l.row_bcap));
        wp.push(v2(a + l.width, l.row_bcap));
        wp.push(v2(a + l.width, l.row_b));
    }
    wp.push(v2(l.east1, l.row_b));
    wp.push(v2(l.east1, l.lane));
    wp.push(v2(l.west2, l.lane));
    wp.push(v2(l.west2, l.row_t));
    for &a in &l.tooth_west {
        let b = a - l.stagger;
        wp.push(v2(b, l.row_t));
        wp.push(v2(b, l.row_tcap));
        wp.push(v2(b + l.width, l.row_tcap));
        wp.push(v2(b + l.width, l.row_t));
    }
    wp.push(v2(l.east2, l.row_t));
    wp.push(v2(l.east2, l.row_hw));
    wp.push(v2(l.west1, l.row_hw));

    Ok((
        Folding {
            pattern,
            face_maps,
        },
        PaperLoop::new(wp),
    ))
}

fn clip_line_to_square<S: Scalar>(a: V2<S>, b: V2<S>, eps: S) -> Option<(V2<S>, V2<S>)> {
    let d = b - a;
    if d.norm() <= eps {
        return None;
    }
    let mut t0 = S::neg_infinity();
    let mut t1 = S::infinity();
    for (start, vel) in [(a.x, d.x), (a.y, d.y)] {
        if vel.abs() <= eps {
            if start < -eps || start > S::one() + eps {
                return None;
            }
        } else {
            let (ta, tb) = (-start / vel, (S::one() - start) / vel);
            t0 = t0.max(ta.min(tb));
            t1 = t1.min(ta.max(tb));
        }
    }
    if t1 <= t0 {
        return None;
    }
    Some((a + d.scale(t0), a + d.scale(t1)))
}

/// Fold the square across the infinite line through `a` and `b`. The half
/// on the left of `a -> b` rotates about the line by `theta`; `theta = pi`
/// is the flat fold.
pub fn single_crease<S: Scalar>(
    a: V2<S>,
    b: V2<S>,
    theta: S,
    tol: &Tolerance<S>,
) -> Result<Folding<S>> {
    if !(theta > S::zero()) || theta > S::PI() + tol.angle {
        return Err(Error::Domain(format!("fold angle {theta} outside (0, pi]")));
    }
    let (e0, e1) = clip_line_to_square(a, b, tol.geom)
        .ok_or_else(|| Error::Domain("crease line misses the square".into()))?;
    if e0.dist(e1) <= S::s(10.0) * tol.geom {
        return Err(Error::Domain("crease line misses the square".into()));
    }
    let on_edge = |u: S, v: S| {
        (u.abs() <= tol.geom && v.abs() <= tol.geom)
            || ((u - S::one()).abs() <= tol.geom && (v - S::one()).abs() <= tol.geom)
    };
    if on_edge(e0.x, e1.x) || on_edge(e0.y, e1.y) {
        return Err(Error::Domain(
            "crease line runs along the square boundary".into(),
        ));
    }

    let pattern = build_pattern(&[e0, e1], &[(0, 1)], tol)?;
    let folded = fold_across_line(e0, e1, theta)?;
    let dir = e1 - e0;
    let face_maps = pattern
        .faces
        .iter()
        .map(|cyc| {
            let pts: Vec<V2<S>> = cyc.iter().map(|&i| pattern.vertices[i]).collect();
            let c = polygon_centroid(&pts);
            let side = dir.x * (c.y - e0.y) - dir.y * (c.x - e0.x);
            if side > S::zero() {
                folded
            } else {
                RigidEmbedding::identity()
            }
        })
        .collect();
    Ok(Folding {
        pattern,
        face_maps,
    })
}

fn perimeter_point<S: Scalar>(t: f64) -> V2<S> {
    let side = (t.floor() as i64).rem_euclid(4);
    let f = S::s(t - t.floor());
    match side {
        0 => v2(f, S::zero()),
        1 => v2(S::one(), f),
        2 => v2(S::one() - f, S::one()),
        _ => v2(S::zero(), S::one() - f),
    }
}

fn sample_chords<S: Scalar>(
    rng: &mut ChaCha8Rng,
    k: usize,
    tol: &Tolerance<S>,
) -> Option<Vec<(V2<S>, V2<S>)>> {
    let mut chords: Vec<(V2<S>, V2<S>)> = Vec::with_capacity(k);
    let mut tries = 0;
    while chords.len() < k {
        tries += 1;
        if tries > 60 {
            return None;
        }
        let ta = rng.gen_range(0.0..4.0);
        let tb = rng.gen_range(0.0..4.0);
        let near_corner = |t: f64| (t - t.round()).abs() < 0.08;
        if near_corner(ta) || near_corner(tb) {
            continue;
        }
        // Chords with both ends on one side fold nothing off that side.
        if ta.floor() as i64 == tb.floor() as i64 {
            continue;
        }
        let (a, b) = (perimeter_point::<S>(ta), perimeter_point::<S>(tb));
        let min_sep = S::s(0.05);
        let clear = chords.iter().all(|&(c, d)| {
            a.dist(c) > min_sep && a.dist(d) > min_sep && b.dist(c) > min_sep && b.dist(d) > min_sep
        });
        if !clear {
            continue;
        }
        let crossing = chords.iter().any(|&(c, d)| {
            !matches!(
                segment_intersect(seg2(a, b), seg2(c, d), tol.geom),
                SegIntersection::None
            )
        });
        if crossing {
            continue;
        }
        chords.push((a, b));
    }
    Some(chords)
}

/// Fold the faces of a pattern whose crease graph is a tree: face 0 keeps the
/// identity and every neighbor is reached by rotating its parent's embedding
/// about their shared crease image.
fn tree_fold<S: Scalar>(
    pattern: crate::folding::CreasePattern<S>,
    angles: &[S],
) -> Result<Folding<S>> {
    let nf = pattern.faces.len();
    let has_edge = |cyc: &[usize], u: usize, v: usize| {
        (0..cyc.len()).any(|i| {
            let (x, y) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            (x, y) == (u, v) || (x, y) == (v, u)
        })
    };
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
    for (ci, &(u, v)) in pattern.creases.iter().enumerate() {
        let sides: Vec<usize> = (0..nf)
            .filter(|&f| has_edge(&pattern.faces[f], u, v))
            .collect();
        if sides.len() != 2 {
            return Err(Error::InvalidFolding(format!(
                "crease {ci} borders {} faces, expected 2",
                sides.len()
            )));
        }
        adj[sides[0]].push((sides[1], ci));
        adj[sides[1]].push((sides[0], ci));
    }

    let mut maps: Vec<Option<RigidEmbedding<S>>> = vec![None; nf];
    maps[0] = Some(RigidEmbedding::identity());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let m = maps[f].unwrap();
        for &(g, ci) in &adj[f] {
            if maps[g].is_some() {
                continue;
            }
            let (u, v) = pattern.creases[ci];
            let pu = m.apply(pattern.vertices[u]);
            let pv = m.apply(pattern.vertices[v]);
            let axis = (pv - pu).normalize().ok_or(Error::DegenerateVector)?;
            maps[g] = Some(rotate_embedding_about_line(&m, pu, axis, angles[ci]));
            queue.push_back(g);
        }
    }
    let face_maps: Vec<RigidEmbedding<S>> = maps
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidFolding("unreachable face in crease tree".into()))?;
    Ok(Folding {
        pattern,
        face_maps,
    })
}

/// Random folding along `k` pairwise disjoint boundary-to-boundary creases,
/// with embedded (self-intersection free) image. Deterministic in `seed`;
/// retries fresh crease sets and angles until an embedded folding appears.
pub fn simple_fold_sequence<S: Scalar>(
    seed: u64,
    k: usize,
    tol: &Tolerance<S>,
) -> Result<Folding<S>> {
    if k > 6 {
        return Err(Error::Domain(format!(
            "at most six folds are supported, got {k}"
        )));
    }
    if k == 0 {
        let pattern = build_pattern::<S>(&[], &[], tol)?;
        let face_maps = vec![RigidEmbedding::identity(); pattern.faces.len()];
        return Ok(Folding {
            pattern,
            face_maps,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let Some(chords) = sample_chords(&mut rng, k, tol) else {
            continue;
        };
        let mut verts = Vec::with_capacity(2 * k);
        let mut edges = Vec::with_capacity(k);
        for &(a, b) in &chords {
            edges.push((verts.len(), verts.len() + 1));
            verts.push(a);
            verts.push(b);
        }
        let Ok(pattern) = build_pattern(&verts, &edges, tol) else {
            continue;
        };
        let angles: Vec<S> = (0..pattern.creases.len())
            .map(|_| S::s(rng.gen_range(0.1..std::f64::consts::PI - 0.1)))
            .collect();
        let Ok(folding) = tree_fold(pattern, &angles) else {
            continue;
        };
        if crate::analysis::is_injective(&folding, tol).unwrap_or(false) {
            return Ok(folding);
        }
    }
    Err(Error::Generation(format!(
        "no embedded {k}-fold sequence found in 100 attempts"
    )))
}

/// Crease set of [`improper_fixture`]: a flap folded east across the sheet,
/// a shallow east tilt, and a corner folded back flat and then bent up
/// through both of them.
fn fixture_pattern<S: Scalar>(tol: &Tolerance<S>) -> Result<crate::folding::CreasePattern<S>> {
    build_pattern(
        &[
            v2(S::s(0.45), S::zero()),
            v2(S::s(0.45), S::one()),
            v2(S::s(0.55), S::zero()),
            v2(S::s(0.55), S::one()),
            v2(S::s(0.75), S::zero()),
            v2(S::one(), S::s(0.25)),
            v2(S::s(0.85), S::zero()),
            v2(S::one(), S::s(0.15)),
        ],
        &[(0, 1), (2, 3), (4, 5), (6, 7)],
        tol,
    )
}

fn fixture_maps<S: Scalar>() -> Result<[RigidEmbedding<S>; 5]> {
    let flap = fold_across_line(
        v2(S::s(0.45), S::one()),
        v2(S::s(0.45), S::zero()),
        S::PI() - S::s(0.08),
    )?;
    let tilt = fold_across_line(
        v2(S::s(0.55), S::one()),
        v2(S::s(0.55), S::zero()),
        S::s(0.15),
    )?;
    let c3 = (v2(S::s(0.75), S::zero()), v2(S::one(), S::s(0.25)));
    let pu = tilt.apply(c3.0);
    let axis = (tilt.apply(c3.1) - pu).normalize().ok_or(Error::DegenerateVector)?;
    let t_low = rotate_embedding_about_line(&tilt, pu, axis, S::PI());
    let c2 = (v2(S::s(0.85), S::zero()), v2(S::one(), S::s(0.15)));
    let qu = t_low.apply(c2.0);
    let axis2 = (qu - t_low.apply(c2.1)).normalize().ok_or(Error::DegenerateVector)?;
    let c_tip = rotate_embedding_about_line(&t_low, qu, axis2, S::s(1.6));
    Ok([flap, RigidEmbedding::identity(), tilt, t_low, c_tip])
}

fn fixture_face_map<S: Scalar>(c: V2<S>, maps: &[RigidEmbedding<S>; 5]) -> RigidEmbedding<S> {
    if c.x <= S::s(0.45) {
        maps[0]
    } else if c.x <= S::s(0.55) {
        maps[1]
    } else if c.y < c.x - S::s(0.85) {
        maps[4]
    } else if c.y < c.x - S::s(0.75) {
        maps[3]
    } else {
        maps[2]
    }
}

/// A folding that self-intersects transversally: a near-flat flap lies
/// across the sheet while a doubled-back corner pokes through it. Useful for
/// exercising [`crate::analysis::self_intersections`] on every contact kind.
pub fn improper_fixture<S: Scalar>(tol: &Tolerance<S>) -> Result<Folding<S>> {
    let pattern = fixture_pattern(tol)?;
    let maps = fixture_maps()?;
    let face_maps = pattern
        .faces
        .iter()
        .map(|cyc| {
            let pts: Vec<V2<S>> = cyc.iter().map(|&i| pattern.vertices[i]).collect();
            fixture_face_map(polygon_centroid(&pts), &maps)
        })
        .collect();
    Ok(Folding {
        pattern,
        face_maps,
    })
}

/// Variant of [`improper_fixture`] that parks the listed faces far above the
/// rest, each on its own level. Parking every face involved in a contact
/// yields an injective (but no longer crease-connected) packing; the result
/// serves as an "intersections removed" reference in reports.
pub fn improper_fixture_restricted<S: Scalar>(
    avoid: &[usize],
    tol: &Tolerance<S>,
) -> Result<Folding<S>> {
    let mut f = improper_fixture(tol)?;
    for (i, &face) in avoid.iter().enumerate() {
        if face >= f.face_maps.len() {
            return Err(Error::Domain(format!(
                "face index {face} out of range ({} faces)",
                f.face_maps.len()
            )));
        }
        let mut parked = RigidEmbedding::identity();
        parked.translation = v3(
            S::zero(),
            S::zero(),
            S::s(10.0 + 2.0 * i as f64),
        );
        f.face_maps[face] = parked;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_injective, properness_verdict, self_intersections, ContactKind, Verdict};
    use crate::folding::{crease_edge_count, fold_loop, fold_point, validate_folding};
    use crate::geometry::V3;
    use crate::knotid::{certify, report_for_diagram, Diagram};

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn assert_close3(got: V3<f64>, want: (f64, f64, f64), eps: f64) {
        assert!(
            (got.x - want.0).abs() < eps
                && (got.y - want.1).abs() < eps
                && (got.z - want.2).abs() < eps,
            "got {got:?}, want {want:?}"
        );
    }

    /// Alternating two-strand closed braid with q crossings.
    fn reference_torus_report(q: usize) -> crate::knotid::KnotReport {
        let walk: Vec<(usize, bool)> = (0..q)
            .map(|c| (c, c % 2 == 0))
            .chain((0..q).map(|c| (c, c % 2 == 1)))
            .collect();
        let d = Diagram::from_walk(walk, vec![1; q]).unwrap();
        report_for_diagram(&d, [0.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn torus_folding_has_two_creases_and_the_expected_sheet_heights() {
        let (f, lp) = torus_folding(&TorusParams::new(0), &tol()).unwrap();
        assert_eq!(crease_edge_count(&f), 2);
        assert!(validate_folding(&f, false, &tol()).is_valid);
        lp.validate(&tol()).unwrap();

        let b = fold_point(&f, v2(0.5, 0.31), &tol()).unwrap();
        assert_close3(b, (0.5, 0.354824, 0.009086), 1e-5);
        let t = fold_point(&f, v2(0.5, 0.69), &tol()).unwrap();
        assert_close3(t, (0.5, 0.646190, 0.011187), 1e-5);
    }

    #[test]
    fn torus_loops_certify_as_the_expected_torus_knots() {
        for n in 0..6 {
            let (f, lp) = torus_folding(&TorusParams::new(n), &tol()).unwrap();
            let img = fold_loop(&f, &lp, &tol()).unwrap();
            assert!(img.injective, "n = {n}: image loop self-intersects");
            let report = certify(&img.waypoints, 7, 1e-9).unwrap();
            let q = 2 * n + 3;
            assert_eq!(report.determinant, q as u64, "n = {n}");
            assert!(!report.invariants_trivial);
            let want = reference_torus_report(q);
            assert_eq!(report.alexander, want.alexander, "n = {n}");
            if n < 3 {
                assert_eq!(report.crossing_count, q, "n = {n}: not fully reduced");
                assert_eq!(report.jones, want.jones, "n = {n}");
                assert_eq!(report.writhe.unsigned_abs(), q as u64);
            }
        }
    }

    #[test]
    fn torus_rejects_unbuildable_parameters() {
        let bad = [
            TorusParams {
                n: 12,
                ..TorusParams::new(0)
            },
            TorusParams {
                tooth_depth: 0.2,
                ..TorusParams::new(0)
            },
            TorusParams {
                margin: 0.05,
                ..TorusParams::new(0)
            },
            TorusParams {
                tooth_width: 0.2,
                ..TorusParams::new(0)
            },
        ];
        for params in bad {
            assert!(
                matches!(torus_folding(&params, &tol()), Err(Error::Domain(_))),
                "{params:?} should be rejected"
            );
        }
    }

    #[test]
    fn single_crease_covers_the_angle_range() {
        let t = tol();
        let book = single_crease(v2(0.5, 0.0), v2(0.5, 1.0), std::f64::consts::FRAC_PI_2, &t).unwrap();
        assert_eq!(crease_edge_count(&book), 1);
        assert!(is_injective(&book, &t).unwrap());

        let shallow = single_crease(v2(0.0, 0.3), v2(1.0, 0.7), 0.1, &t).unwrap();
        assert!(is_injective(&shallow, &t).unwrap());

        let flat = single_crease(v2(0.5, 0.0), v2(0.5, 1.0), std::f64::consts::PI, &t).unwrap();
        assert!(!is_injective(&flat, &t).unwrap());
        let report = properness_verdict(&flat, &t).unwrap();
        assert_eq!(report.verdict, Verdict::ProperFlatContact);
    }

    #[test]
    fn single_crease_rejects_degenerate_lines_and_angles() {
        let t = tol();
        for (a, b, theta) in [
            (v2(1.5, 0.0), v2(1.5, 1.0), 1.0),
            (v2(0.0, 0.0), v2(1.0, 0.0), 1.0),
            (v2(0.5, 0.0), v2(0.5, 1.0), 0.0),
            (v2(0.5, 0.0), v2(0.5, 1.0), 4.0),
        ] {
            assert!(matches!(
                single_crease(a, b, theta, &t),
                Err(Error::Domain(_))
            ));
        }
    }

    #[test]
    fn simple_fold_sequences_are_deterministic_and_embedded() {
        let t = tol();
        let none = simple_fold_sequence::<f64>(5, 0, &t).unwrap();
        assert_eq!(none.pattern.faces.len(), 1);
        assert_eq!(crease_edge_count(&none), 0);

        let f1 = simple_fold_sequence::<f64>(42, 3, &t).unwrap();
        assert_eq!(crease_edge_count(&f1), 3);
        assert!(is_injective(&f1, &t).unwrap());
        let f2 = simple_fold_sequence::<f64>(42, 3, &t).unwrap();
        assert_eq!(f1, f2);

        assert!(matches!(
            simple_fold_sequence::<f64>(1, 7, &t),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn improper_fixture_shows_the_three_expected_contacts() {
        let t = tol();
        let f = improper_fixture(&t).unwrap();
        assert!(validate_folding(&f, false, &t).is_valid);

        let tip = fold_point(&f, v2(1.0, 0.0), &t).unwrap();
        assert_close3(tip, (0.8399, 0.1728, -0.0634), 2e-3);

        let findings = self_intersections(&f, &t).unwrap();
        let mut kinds: Vec<_> = findings
            .iter()
            .map(|x| x.kind)
            .filter(|&k| k != ContactKind::SharedCrease)
            .collect();
        kinds.sort();
        assert_eq!(
            kinds,
            vec![
                ContactKind::CoincidentOverlap,
                ContactKind::Touching,
                ContactKind::TransversalCrossing
            ],
            "findings: {findings:?}"
        );
        assert_eq!(
            properness_verdict(&f, &t).unwrap().verdict,
            Verdict::ImproperTransversal
        );
        assert!(!is_injective(&f, &t).unwrap());
    }

    #[test]
    fn parking_the_contact_faces_makes_the_fixture_injective() {
        let t = tol();
        let f = improper_fixture(&t).unwrap();
        let flap = f.face_containing(v2(0.2, 0.5), 0.0).unwrap();
        let tilt = f.face_containing(v2(0.6, 0.8), 0.0).unwrap();
        let parked = improper_fixture_restricted(&[flap, tilt], &t).unwrap();
        assert!(is_injective(&parked, &t).unwrap());

        assert!(matches!(
            improper_fixture_restricted(&[99], &t),
            Err(Error::Domain(_))
        ));
    }

    /// A loop whose strands meet in the fixture's coincident-overlap region:
    /// one strand slices across where the doubled-back triangle lands, the
    /// other rides the triangle itself.
    fn overlap_loop() -> PaperLoop<f64> {
        PaperLoop::new(vec![
            v2(0.76, 0.08),
            v2(0.87, 0.135),
            v2(0.93, 0.23),
            v2(0.93, 0.155),
            v2(0.80, 0.028),
            v2(0.74, 0.06),
        ])
    }

    /// A loop through matching preimages of the flap / bent-corner crossing:
    /// the first waypoint (on the flap) and the third (on the corner) fold to
    /// the same point in space.
    fn stab_loop() -> PaperLoop<f64> {
        PaperLoop::new(vec![
            v2(0.06859652286730639, 0.16950786431680503),
            v2(0.30, 0.05),
            v2(0.971934039878941, 0.02005646526656424),
            v2(0.96, 0.09),
            v2(0.60, 0.35),
            v2(0.25, 0.42),
        ])
    }

    #[test]
    fn loops_through_the_fixture_contacts_fold_to_self_crossing_images() {
        let t = tol();
        let f = improper_fixture(&t).unwrap();
        for lp in [overlap_loop(), stab_loop()] {
            lp.validate(&t).unwrap();
            let img = fold_loop(&f, &lp, &t).unwrap();
            assert!(!img.injective);
        }
    }
}
