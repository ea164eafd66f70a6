//! Partitions, charge-graded Maya diagrams, and the orders and maps on them
//! used by the straightening algorithm.
//!
//! Labeling convention: a charge-0 Maya diagram `m = (i_1, i_2, ...)` stores the
//! partition `μ` with `μ_k = (k-1) - i_k`, and the partition it names is
//! `μ^T` (see [`Maya::of_partition`]). Under this labeling "n-regular" matches
//! the gap condition on beads, and the orders generated by bead moves are
//! the familiar orders on the *stored* `μ`, i.e. on transposes.

mod maya;
mod orders;

pub use maya::Maya;
pub use orders::{compare, jump_covers, jump_reachable, mlex_cmp, Order};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl Partition {
    /// Validate a list of parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Precondition(format!(
                "{parts:?} is not a weakly decreasing list of positive parts"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sort arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let width = self.part(0);
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Multiplicity of every part value.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// True iff no part appears `n` or more times.
    pub fn is_n_regular(&self, n: usize) -> bool {
        self.multiplicities().values().all(|&k| k < n)
    }

    /// Whether `self ⊵ other` in dominance (sizes must agree).
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `m`, in lexicographically decreasing order.
    pub fn all_of_size(m: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }

    /// Number of partitions of `m`.
    pub fn count(m: usize) -> usize {
        let mut p = vec![0usize; m + 1];
        p[0] = 1;
        for part in 1..=m {
            for s in part..=m {
                p[s] += p[s - part];
            }
        }
        p[m]
    }

    /// Bead data of the KLMW rewrite: `ℓ_n` (`None` for ∞), the regularized
    /// partition `ρ_n`, and `d` (= ℓ, or 0 when ℓ = ∞).
    pub fn gap_and_regularize(&self, n: usize) -> GapRegularize {
        let m = Maya::of_partition(self);
        let beads = m.beads(m.mu().len() + 1);
        let n_i = n as i64;
        let ell = (0..beads.len() - 1).find(|&k| beads[k + 1] - beads[k] > n_i);
        match ell {
            None => GapRegularize {
                ell: None,
                rho: self.clone(),
                d: 0,
            },
            Some(k) => {
                let l = k + 1;
                let mut shifted = beads.clone();
                for b in shifted.iter_mut().take(l) {
                    *b += n_i;
                }
                let tail = beads.len() as i64 - m.charge();
                let rho = Maya::from_beads(&shifted, tail)
                    .partition()
                    .expect("regularization keeps charge 0");
                GapRegularize {
                    ell: Some(l),
                    rho,
                    d: l,
                }
            }
        }
    }

    /// The `n`-core, by sliding beads along the runners of an `n`-abacus.
    pub fn n_core(&self, n: usize) -> Partition {
        Maya::of_partition(self)
            .abacus_normalize(n)
            .partition()
            .expect("abacus moves keep charge 0")
    }
}

/// Output of [`Partition::gap_and_regularize`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapRegularize {
    pub ell: Option<usize>,
    pub rho: Partition,
    pub d: usize,
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Shorthand for building partitions in tests and examples.
#[macro_export]
macro_rules! part {
    () => { $crate::partitions::Partition::empty() };
    ($($x:expr),+ $(,)?) => { $crate::partitions::Partition::new(vec![$($x),+]).unwrap() };
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validation_and_display() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![3, 1, 0]).unwrap(), part![3, 1]);
        assert_eq!(part![3, 3, 1].to_string(), "(3,3,1)");
        assert_eq!(serde_json::to_string(&part![2, 1]).unwrap(), "[2,1]");
        let p: Partition = serde_json::from_str("[4,2,2]").unwrap();
        assert_eq!(p, part![4, 2, 2]);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn counts_and_enumeration() {
        let sizes: Vec<usize> = (0..=10).map(Partition::count).collect();
        assert_eq!(sizes, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        for m in 0..=10 {
            let all = Partition::all_of_size(m);
            assert_eq!(all.len(), Partition::count(m));
            assert!(all.windows(2).all(|w| w[0] > w[1]));
            assert!(all.iter().all(|p| p.size() == m));
        }
    }

    #[test]
    fn regularity() {
        assert!(part![2, 1].is_n_regular(2));
        assert!(!part![1, 1].is_n_regular(2));
        assert!(part![3, 3, 1].is_n_regular(3));
    }

    #[test]
    fn documented_gaps() {
        let g = part![1, 1].gap_and_regularize(2);
        assert_eq!((g.ell, g.rho, g.d), (Some(1), part![], 1));
        let g = part![2, 2].gap_and_regularize(2);
        assert_eq!((g.ell, g.rho, g.d), (Some(2), part![], 2));
        let g = part![2, 1].gap_and_regularize(2);
        assert_eq!((g.ell, g.rho, g.d), (None, part![2, 1], 0));
        let g = part![1, 1, 1].gap_and_regularize(2);
        assert_eq!((g.ell, g.rho.clone(), g.d), (Some(1), part![1], 1));
    }

    #[test]
    fn gap_is_infinite_exactly_for_regular() {
        for n in 2..=4 {
            for m in 0..=12 {
                for p in Partition::all_of_size(m) {
                    let g = p.gap_and_regularize(n);
                    assert_eq!(g.ell.is_none(), p.is_n_regular(n), "{p} n={n}");
                    if let Some(l) = g.ell {
                        assert_eq!(g.rho.size() + n * l, p.size());
                    }
                }
            }
        }
    }

    #[test]
    fn documented_cores() {
        assert_eq!(part![].n_core(2), part![]);
        assert_eq!(part![2].n_core(2), part![]);
        assert_eq!(part![2, 1].n_core(2), part![2, 1]);
        assert_eq!(part![3, 1].n_core(3), part![3, 1].n_core(3).transpose().transpose());
    }

    /// Oracle: rim-hook removal on the first-column hook lengths
    /// (β-numbers) of `p` itself, rather than on its Maya diagram.
    fn core_by_hooks(p: &Partition, n: usize) -> Partition {
        let l = p.len();
        let mut beta: Vec<usize> = (0..l).map(|i| p.part(i) + l - 1 - i).collect();
        while let Some(k) = (0..l).find(|&k| beta[k] >= n && !beta.contains(&(beta[k] - n))) {
            beta[k] -= n;
        }
        beta.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_unsorted((0..l).map(|i| beta[i] - (l - 1 - i)).collect())
    }

    #[test]
    fn core_matches_hook_removal() {
        for n in 2..=4 {
            for m in 0..=10 {
                for p in Partition::all_of_size(m) {
                    assert_eq!(p.n_core(n), core_by_hooks(&p, n), "{p} n={n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn transpose_is_an_involution(parts in proptest::collection::vec(1usize..8, 0..8)) {
            let p = Partition::from_unsorted(parts);
            prop_assert_eq!(p.transpose().transpose(), p.clone());
            prop_assert_eq!(p.transpose().size(), p.size());
        }
    }
}
