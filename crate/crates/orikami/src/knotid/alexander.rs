//! Alexander polynomial via the free-calculus matrix of the strand
//! presentation, evaluated exactly over the Laurent ring.

use super::diagram::Diagram;
use super::laurent::{det_laurent, Laurent};
use crate::error::{Error, Result};

/// Alexander polynomial, normalized to lowest exponent zero and positive
/// leading coefficient.
pub fn alexander(d: &Diagram) -> Result<Laurent> {
    let c = d.crossing_count();
    if c == 0 {
        return Ok(Laurent::one());
    }
    let passes = d.passes();
    let m = passes.len();

    // Arcs: the strand is cut at each under-passage; the stretch entering
    // passage j lies on arc_in[j]. The arc running past the end of the walk
    // is the one we started on.
    let mut arc_in = vec![0usize; m];
    let mut arc = 0usize;
    for (j, &(_, over)) in passes.iter().enumerate() {
        arc_in[j] = arc % c;
        if !over {
            arc += 1;
        }
    }

    let mut rows = vec![vec![Laurent::zero(); c]; c];
    let t = Laurent::monomial(1, 1);
    let one = Laurent::one();
    let mut at = vec![(usize::MAX, usize::MAX); c]; // (over pos, under pos)
    for (j, &(x, o)) in passes.iter().enumerate() {
        if o {
            at[x].0 = j;
        } else {
            at[x].1 = j;
        }
    }
    for x in 0..c {
        let (jo, ju) = at[x];
        let over = arc_in[jo];
        let u_in = arc_in[ju];
        let u_out = (u_in + 1) % c;
        let row = &mut rows[x];
        if d.signs()[x] > 0 {
            row[u_in] = row[u_in].add(&t);
            row[u_out] = row[u_out].sub(&one);
            row[over] = row[over].add(&one.sub(&t));
        } else {
            row[u_in] = row[u_in].add(&one);
            row[u_out] = row[u_out].sub(&t);
            row[over] = row[over].add(&t.sub(&one));
        }
    }

    // Any first minor of the presentation matrix gives the polynomial up to
    // units; drop the last row and column.
    let minor: Vec<Vec<Laurent>> = rows[..c - 1]
        .iter()
        .map(|r| r[..c - 1].to_vec())
        .collect();
    let delta = det_laurent(minor)?.unit_normalized();
    if delta.is_zero() {
        return Err(Error::UnsupportedDiagram(
            "presentation matrix is singular; the walk does not describe a knot".into(),
        ));
    }
    if delta.eval_pm_one(false).abs() != 1 {
        return Err(Error::Numeric(format!(
            "polynomial fails the unit evaluation check: ({delta}) at 1 gives {}",
            delta.eval_pm_one(false)
        )));
    }
    Ok(delta)
}

/// Knot determinant: the polynomial's absolute value at t = -1.
pub fn determinant(d: &Diagram) -> Result<u64> {
    let delta = alexander(d)?;
    let v = delta.eval_pm_one(true).unsigned_abs();
    u64::try_from(v).map_err(|_| Error::Numeric("determinant exceeds u64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use orikami_oracle::frozen;

    fn left_trefoil() -> Diagram {
        Diagram::from_walk(
            vec![(0, true), (1, false), (2, true), (0, false), (1, true), (2, false)],
            vec![-1, -1, -1],
        )
        .unwrap()
    }

    #[test]
    fn unknot_polynomial_is_one() {
        let d = Diagram::unknotted();
        assert_eq!(alexander(&d).unwrap(), Laurent::one());
        assert_eq!(determinant(&d).unwrap(), 1);
    }

    #[test]
    fn kink_polynomial_is_one() {
        let d = Diagram::from_walk(vec![(0, true), (0, false)], vec![1]).unwrap();
        assert_eq!(alexander(&d).unwrap(), Laurent::one());
        assert_eq!(determinant(&d).unwrap(), frozen::DET_UNKNOT);
    }

    #[test]
    fn trefoil_polynomial_and_determinant() {
        let d = left_trefoil();
        let (me, cs) = frozen::ALEX_TREFOIL;
        assert_eq!(alexander(&d).unwrap(), Laurent::from_parts(me, cs));
        assert_eq!(determinant(&d).unwrap(), frozen::DET_TREFOIL);
    }

    #[test]
    fn mirror_has_the_same_polynomial() {
        let d = Diagram::from_walk(
            vec![(0, true), (1, false), (2, true), (0, false), (1, true), (2, false)],
            vec![1, 1, 1],
        )
        .unwrap();
        let (me, cs) = frozen::ALEX_TREFOIL;
        assert_eq!(alexander(&d).unwrap(), Laurent::from_parts(me, cs));
    }

    #[test]
    fn determinant_is_stable_under_simplification() {
        let d = Diagram::from_walk(
            vec![
                (0, true),
                (1, false),
                (2, true),
                (3, true),
                (3, false),
                (0, false),
                (1, true),
                (2, false),
            ],
            vec![-1, -1, -1, 1],
        )
        .unwrap();
        assert_eq!(determinant(&d).unwrap(), determinant(&d.simplified()).unwrap());
    }
}
