//! Knot diagrams as the passage sequence of a single closed strand, with a
//! sign per crossing. PD tuples are derived from the walk on demand.

use crate::error::{Error, Result};

/// Diagram of a knot: the strand visits `passes` in loop order, where each
/// entry names a crossing and whether the strand goes over there. Every
/// crossing is visited exactly twice, once over and once under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    passes: Vec<(usize, bool)>,
    signs: Vec<i8>,
}

impl Diagram {
    pub fn unknotted() -> Self {
        Diagram { passes: Vec::new(), signs: Vec::new() }
    }

    pub fn from_walk(passes: Vec<(usize, bool)>, signs: Vec<i8>) -> Result<Self> {
        let c = signs.len();
        if passes.len() != 2 * c {
            return Err(Error::Domain(format!(
                "walk has {} passages for {} crossings; expected {}",
                passes.len(),
                c,
                2 * c
            )));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain("crossing signs must be +1 or -1".into()));
        }
        let mut over = vec![0usize; c];
        let mut under = vec![0usize; c];
        for &(x, o) in &passes {
            if x >= c {
                return Err(Error::Domain(format!("passage names missing crossing {x}")));
            }
            if o {
                over[x] += 1;
            } else {
                under[x] += 1;
            }
        }
        for x in 0..c {
            if over[x] != 1 || under[x] != 1 {
                return Err(Error::Domain(format!(
                    "crossing {x} must be passed exactly once over and once under"
                )));
            }
        }
        Ok(Diagram { passes, signs })
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn passes(&self) -> &[(usize, bool)] {
        &self.passes
    }

    /// PD tuples [in-under, x, out-under, y] with edges numbered 1..2c along
    /// the strand; the over pair (x, y) is ordered by the crossing sign.
    pub fn pd_code(&self) -> Vec<[usize; 4]> {
        let m = self.passes.len();
        let c = self.signs.len();
        let inc = |j: usize| ((j + m - 1) % m) + 1;
        let out = |j: usize| j + 1;
        let mut at = vec![(usize::MAX, usize::MAX); c]; // (over pos, under pos)
        for (j, &(x, o)) in self.passes.iter().enumerate() {
            if o {
                at[x].0 = j;
            } else {
                at[x].1 = j;
            }
        }
        (0..c)
            .map(|x| {
                let (jo, ju) = at[x];
                let (a, c_out) = (inc(ju), out(ju));
                let (bin, bout) = (inc(jo), out(jo));
                if self.signs[x] > 0 {
                    [a, bout, c_out, bin]
                } else {
                    [a, bin, c_out, bout]
                }
            })
            .collect()
    }

    /// Remove the given passage positions and renumber the surviving
    /// crossings densely.
    fn without(&self, drop_pos: &[usize], drop_crossings: &[usize]) -> Diagram {
        let mut remap = vec![usize::MAX; self.signs.len()];
        let mut signs = Vec::new();
        for (x, &s) in self.signs.iter().enumerate() {
            if !drop_crossings.contains(&x) {
                remap[x] = signs.len();
                signs.push(s);
            }
        }
        let passes = self
            .passes
            .iter()
            .enumerate()
            .filter(|(j, _)| !drop_pos.contains(j))
            .map(|(_, &(x, o))| (remap[x], o))
            .collect();
        Diagram { passes, signs }
    }

    fn find_r1(&self) -> Option<Diagram> {
        let m = self.passes.len();
        for j in 0..m {
            let k = (j + 1) % m;
            let (x, _) = self.passes[j];
            if self.passes[k].0 == x {
                return Some(self.without(&[j, k], &[x]));
            }
        }
        None
    }

    fn find_r2(&self) -> Option<Diagram> {
        let m = self.passes.len();
        let mut pos = vec![[usize::MAX; 2]; self.signs.len()]; // [under, over]
        for (j, &(x, o)) in self.passes.iter().enumerate() {
            pos[x][o as usize] = j;
        }
        for j in 0..m {
            let k = (j + 1) % m;
            let (x, ox) = self.passes[j];
            let (y, oy) = self.passes[k];
            if x == y || ox != oy {
                continue;
            }
            // Other strand must run through both crossings consecutively on
            // the opposite level.
            let px = pos[x][(!ox) as usize];
            let py = pos[y][(!oy) as usize];
            if (px + 1) % m == py || (py + 1) % m == px {
                return Some(self.without(&[j, k, px, py], &[x, y]));
            }
        }
        None
    }

    /// Apply untwisting and strand-separation moves until neither applies.
    pub fn simplified(&self) -> Diagram {
        let mut d = self.clone();
        loop {
            if let Some(next) = d.find_r1() {
                d = next;
                continue;
            }
            if let Some(next) = d.find_r2() {
                d = next;
                continue;
            }
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn left_trefoil() -> Diagram {
        Diagram::from_walk(
            vec![(0, true), (1, false), (2, true), (0, false), (1, true), (2, false)],
            vec![-1, -1, -1],
        )
        .unwrap()
    }

    fn sorted(mut v: Vec<[usize; 4]>) -> Vec<[usize; 4]> {
        v.sort();
        v
    }

    #[test]
    fn trefoil_pd_matches_the_reference_tuples() {
        let d = left_trefoil();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe(), -3);
        assert_eq!(
            sorted(d.pd_code()),
            sorted(orikami_oracle::trefoil().to_vec())
        );
    }

    #[test]
    fn walk_validation() {
        assert!(Diagram::from_walk(vec![(0, true)], vec![1]).is_err());
        assert!(Diagram::from_walk(vec![(0, true), (0, true)], vec![1]).is_err());
        assert!(Diagram::from_walk(vec![(0, true), (1, false)], vec![1]).is_err());
        assert!(Diagram::from_walk(vec![(0, true), (0, false)], vec![2]).is_err());
        assert!(Diagram::from_walk(vec![(0, true), (0, false)], vec![1]).is_ok());
    }

    #[test]
    fn kink_untwists_to_nothing() {
        let d = Diagram::from_walk(vec![(0, true), (0, false)], vec![1]).unwrap();
        let s = d.simplified();
        assert_eq!(s.crossing_count(), 0);
    }

    #[test]
    fn parallel_strands_pull_apart() {
        let d = Diagram::from_walk(
            vec![(0, true), (1, true), (2, false), (0, false), (1, false), (2, true)],
            vec![1, -1, 1],
        )
        .unwrap();
        assert_eq!(d.simplified().crossing_count(), 0);
    }

    #[test]
    fn kinked_trefoil_reduces_to_the_trefoil() {
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
        let s = d.simplified();
        assert_eq!(s.crossing_count(), 3);
        assert_eq!(s.writhe(), -3);
        assert_eq!(sorted(s.pd_code()), sorted(left_trefoil().pd_code()));
    }

    #[test]
    fn trefoil_is_already_reduced() {
        let d = left_trefoil();
        assert_eq!(d.simplified(), d);
    }
}
