//! Integer Laurent polynomials in one variable, dense over an exponent
//! window. Zero is the empty coefficient list.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Laurent {
    pub min_exp: i64,
    /// Coefficients by ascending exponent starting at `min_exp`; trimmed so
    /// the first and last entries are nonzero (empty for the zero polynomial).
    pub coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        if coeff == 0 {
            Laurent::zero()
        } else {
            Laurent { min_exp: exp, coeffs: vec![coeff] }
        }
    }

    pub fn from_parts(min_exp: i64, coeffs: &[i64]) -> Self {
        Laurent { min_exp, coeffs: coeffs.to_vec() }.trimmed()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        if self.is_zero() || exp < self.min_exp || exp > self.max_exp() {
            0
        } else {
            self.coeffs[(exp - self.min_exp) as usize]
        }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
        self
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().max(other.max_exp());
        let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
        for p in [self, other] {
            for (k, &v) in p.coeffs.iter().enumerate() {
                coeffs[(p.min_exp - lo) as usize + k] += v;
            }
        }
        Laurent { min_exp: lo, coeffs }.trimmed()
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j]
                    .checked_add(a.checked_mul(b).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
        Laurent { min_exp: self.min_exp + other.min_exp, coeffs }.trimmed()
    }

    /// Multiply by t^k.
    pub fn shifted(&self, k: i64) -> Laurent {
        if self.is_zero() {
            Laurent::zero()
        } else {
            Laurent { min_exp: self.min_exp + k, coeffs: self.coeffs.clone() }
        }
    }

    /// Exact division; None when the remainder is nonzero.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len() - d.coeffs.len() + 1;
        let mut q = vec![0i64; qlen];
        let dl = *d.coeffs.last().unwrap();
        for k in (0..qlen).rev() {
            let top = rem[k + d.coeffs.len() - 1];
            if top % dl != 0 {
                return None;
            }
            let f = top / dl;
            q[k] = f;
            if f != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= f * dc;
                }
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Laurent { min_exp: self.min_exp - d.min_exp, coeffs: q }.trimmed())
    }

    /// Substitute t -> 1/t.
    pub fn reversed(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Laurent { min_exp: -self.max_exp(), coeffs }
    }

    /// Evaluate at t = 1 or t = -1.
    pub fn eval_pm_one(&self, at_minus_one: bool) -> i128 {
        let mut acc: i128 = 0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let e = self.min_exp + k as i64;
            let s = if at_minus_one && e.rem_euclid(2) == 1 { -1 } else { 1 };
            acc += s * c as i128;
        }
        acc
    }

    /// Same polynomial up to multiplication by a unit (plus or minus t^k)?
    pub fn eq_up_to_units(&self, other: &Laurent) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        self.coeffs == other.coeffs || self.coeffs.iter().map(|&c| -c).eq(other.coeffs.iter().copied())
    }

    /// Shift so the lowest exponent is zero and the top coefficient positive.
    pub fn unit_normalized(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let shifted = self.shifted(-self.min_exp);
        if *shifted.coeffs.last().unwrap() < 0 {
            shifted.neg()
        } else {
            shifted
        }
    }
}

impl std::fmt::Display for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.min_exp + k as i64;
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            match e {
                0 => write!(f, "{a}")?,
                1 => {
                    if a == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "{a}*t")?;
                    }
                }
                _ => {
                    if a == 1 {
                        write!(f, "t^{e}")?;
                    } else {
                        write!(f, "{a}*t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Fraction-free determinant over the Laurent ring (Bareiss). Row swaps are
/// tracked so the result is exact, not just up to sign.
pub fn det_laurent(mut m: Vec<Vec<Laurent>>) -> Result<Laurent> {
    let n = m.len();
    if n == 0 {
        return Ok(Laurent::one());
    }
    for row in &m {
        if row.len() != n {
            return Err(Error::Numeric("determinant needs a square matrix".into()));
        }
    }
    let mut sign = 1i64;
    let mut prev = Laurent::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Laurent::zero());
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::Numeric("fraction-free elimination hit a non-exact division".into())
                })?;
            }
            m[i][k] = Laurent::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { det.neg() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(min_exp: i64, coeffs: &[i64]) -> Laurent {
        Laurent::from_parts(min_exp, coeffs)
    }

    #[test]
    fn arithmetic() {
        let a = l(-1, &[1, 2]); // t^-1 + 2
        let b = l(0, &[3, -1]); // 3 - t
        assert_eq!(a.add(&b), l(-1, &[1, 5, -1]));
        assert_eq!(a.mul(&b), l(-1, &[3, 5, -2]));
        assert_eq!(a.sub(&a), Laurent::zero());
        assert_eq!(a.mul(&Laurent::zero()), Laurent::zero());
        assert_eq!(Laurent::one().mul(&b), b);
    }

    #[test]
    fn trim_and_coeff_access() {
        let a = l(2, &[0, 1, 0, -4, 0]);
        assert_eq!(a.min_exp, 3);
        assert_eq!(a.coeffs, vec![1, 0, -4]);
        assert_eq!(a.coeff(3), 1);
        assert_eq!(a.coeff(4), 0);
        assert_eq!(a.coeff(5), -4);
        assert_eq!(a.coeff(100), 0);
    }

    #[test]
    fn exact_division() {
        let a = l(0, &[1, -1, 1]);
        let b = l(-2, &[2, 1]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(l(0, &[1, 1]).div_exact(&l(0, &[2])).is_none());
        assert!(l(0, &[1, 1, 1]).div_exact(&l(0, &[1, 1])).is_none());
    }

    #[test]
    fn reverse_and_eval() {
        let v = l(1, &[1, 0, 1, -1]); // t + t^3 - t^4
        assert_eq!(v.reversed(), l(-4, &[-1, 1, 0, 1]));
        assert_eq!(v.eval_pm_one(false), 1);
        assert_eq!(l(0, &[1, -3, 1]).eval_pm_one(true), 5);
        assert_eq!(l(0, &[1, -1, 1]).eval_pm_one(true), 3);
    }

    #[test]
    fn unit_normalization() {
        let a = l(-3, &[-1, 1, -1]);
        let n = a.unit_normalized();
        assert_eq!(n, l(0, &[1, -1, 1]));
        assert!(a.eq_up_to_units(&n));
        assert!(!a.eq_up_to_units(&l(0, &[1, -3, 1])));
    }

    #[test]
    fn determinant_of_laurent_matrix() {
        // [[t, 1], [1, t]] has determinant t^2 - 1.
        let t = Laurent::monomial(1, 1);
        let one = Laurent::one();
        let m = vec![vec![t.clone(), one.clone()], vec![one.clone(), t.clone()]];
        assert_eq!(det_laurent(m).unwrap(), l(0, &[-1, 0, 1]));

        // A singular matrix.
        let m = vec![vec![t.clone(), t.clone()], vec![t.clone(), t.clone()]];
        assert!(det_laurent(m).unwrap().is_zero());

        // 3x3 integer case with a zero pivot forcing a swap.
        let z = Laurent::zero();
        let c = |v: i64| Laurent::monomial(v, 0);
        let m = vec![
            vec![z.clone(), c(2), c(1)],
            vec![c(1), c(0), c(3)],
            vec![c(4), c(1), c(0)],
        ];
        // det = 0*(0-3) - 2*(0-12) + 1*(1-0) = 25
        assert_eq!(det_laurent(m).unwrap(), c(25));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(l(-1, &[1, -2, 1]).to_string(), "t^-1 - 2 + t");
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(l(1, &[1]).to_string(), "t");
    }
}
