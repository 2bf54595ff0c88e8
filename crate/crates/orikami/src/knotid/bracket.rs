//! State-sum bracket polynomial and the Jones polynomial derived from it.

use super::diagram::Diagram;
use super::laurent::Laurent;
use crate::error::{Error, Result};

/// Hard cap on the state sum; beyond this the caller should reduce the
/// diagram first.
pub const CROSSING_BUDGET: usize = 24;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&x| self.find(x) == x).count()
    }
}

/// Bracket polynomial in the smoothing variable, summed over all states.
pub fn kauffman_bracket(d: &Diagram) -> Result<Laurent> {
    let c = d.crossing_count();
    if c == 0 {
        return Ok(Laurent::one());
    }
    if c > CROSSING_BUDGET {
        return Err(Error::CrossingBudget { crossings: c, budget: CROSSING_BUDGET });
    }
    let pd = d.pd_code();
    let m = 2 * c;
    // delta = -A^2 - A^-2, the weight per extra loop
    let delta = Laurent::from_parts(-2, &[-1, 0, 0, 0, -1]);
    let mut delta_pow = vec![Laurent::one()];
    for _ in 0..c {
        delta_pow.push(delta_pow.last().unwrap().mul(&delta));
    }
    let mut total = Laurent::zero();
    for state in 0u64..(1u64 << c) {
        let mut uf = UnionFind::new(m);
        let mut exp: i64 = 0;
        for (k, &[a, b, cc, dd]) in pd.iter().enumerate() {
            if state >> k & 1 == 0 {
                exp += 1;
                uf.union(a - 1, b - 1);
                uf.union(cc - 1, dd - 1);
            } else {
                exp -= 1;
                uf.union(a - 1, dd - 1);
                uf.union(b - 1, cc - 1);
            }
        }
        let loops = uf.components();
        total = total.add(&delta_pow[loops - 1].shifted(exp));
    }
    Ok(total)
}

/// Jones polynomial in t, normalized so the unknot gives 1.
pub fn jones(d: &Diagram) -> Result<Laurent> {
    let bracket = kauffman_bracket(d)?;
    let w = d.writhe();
    let unit = Laurent::monomial(if w.rem_euclid(2) == 1 { -1 } else { 1 }, -3 * w);
    let f = bracket.mul(&unit);
    if f.is_zero() {
        return Err(Error::Numeric("bracket polynomial vanished".into()));
    }
    // Substitute t for the inverse fourth power of the smoothing variable.
    let mut terms: Vec<(i64, i64)> = Vec::new();
    for (k, &coef) in f.coeffs.iter().enumerate() {
        if coef == 0 {
            continue;
        }
        let e = f.min_exp + k as i64;
        if e.rem_euclid(4) != 0 {
            return Err(Error::Numeric(format!(
                "bracket exponent {e} is not a multiple of 4; the diagram is inconsistent"
            )));
        }
        terms.push((-e / 4, coef));
    }
    let lo = terms.iter().map(|&(e, _)| e).min().unwrap();
    let hi = terms.iter().map(|&(e, _)| e).max().unwrap();
    let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
    for (e, coef) in terms {
        coeffs[(e - lo) as usize] = coef;
    }
    Ok(Laurent::from_parts(lo, &coeffs))
}
