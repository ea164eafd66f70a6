use super::Partition;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A Maya diagram: a strictly increasing sequence of bead positions
/// `i_1 < i_2 < ...` that eventually agrees with `(k - 1) - charge`.
///
/// The charge counts beads added relative to the vacuum `(0, 1, 2, ...)`, so
/// `ψ_i` raises it by one. Storage is canonical: `μ_k = (k-1) - charge - i_k`
/// is a partition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Maya {
    charge: i64,
    mu: Partition,
}

impl Maya {
    pub fn vacuum() -> Self {
        Self::from_mu(0, Partition::empty())
    }

    pub fn from_mu(charge: i64, mu: Partition) -> Self {
        Maya { charge, mu }
    }

    /// The charge-0 diagram labelled by `p`: its stored `μ` is `p^T`.
    pub fn of_partition(p: &Partition) -> Self {
        Self::from_mu(0, p.transpose())
    }

    /// The partition labelling a charge-0 diagram (`μ^T`).
    pub fn partition(&self) -> Result<Partition> {
        if self.charge != 0 {
            return Err(Error::Precondition(format!(
                "diagram {self} has charge {}",
                self.charge
            )));
        }
        Ok(self.mu.transpose())
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    /// The canonical storage `μ`.
    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    /// Degree of the basis vector, `|μ|`.
    pub fn degree(&self) -> usize {
        self.mu.size()
    }

    /// Bead `k` (1-based).
    pub fn bead(&self, k: usize) -> i64 {
        (k as i64 - 1) - self.charge - self.mu.part(k - 1) as i64
    }

    /// The first `count` beads.
    pub fn beads(&self, count: usize) -> Vec<i64> {
        (1..=count).map(|k| self.bead(k)).collect()
    }

    /// First bead position from which every position is occupied.
    pub fn tail_start(&self) -> i64 {
        self.mu.len() as i64 - self.charge
    }

    pub fn contains(&self, i: i64) -> bool {
        if i >= self.tail_start() {
            return true;
        }
        self.beads(self.mu.len()).contains(&i)
    }

    /// Rebuild from explicit sorted beads below `tail_start`, all positions
    /// from `tail_start` on being occupied.
    pub fn from_beads(explicit: &[i64], tail_start: i64) -> Self {
        debug_assert!(explicit.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(explicit.last().is_none_or(|&b| b < tail_start));
        let charge = explicit.len() as i64 - tail_start;
        let mu: Vec<usize> = explicit
            .iter()
            .enumerate()
            .map(|(k, &i)| (k as i64 - charge - i) as usize)
            .collect();
        Maya {
            charge,
            mu: Partition::new(mu).expect("bead list is increasing"),
        }
    }

    /// Slide every bead as far right along its runner of the `n`-abacus as
    /// possible (removal of all rim `n`-hooks).
    pub fn abacus_normalize(&self, n: usize) -> Maya {
        let n_i = n as i64;
        let len = self.mu.len();
        let beads = self.beads(len);
        let lo = beads.first().copied().unwrap_or(0).min(0).div_euclid(n_i) * n_i;
        let tail = self.tail_start();
        let hi = (tail.max(lo)).div_euclid(n_i) * n_i + n_i;
        let mut explicit = Vec::new();
        for r in 0..n_i {
            let slots: Vec<i64> = (0..).map(|j| lo + r + j * n_i).take_while(|&x| x < hi).collect();
            let count = slots
                .iter()
                .filter(|&&x| x >= tail || beads.contains(&x))
                .count();
            explicit.extend_from_slice(&slots[slots.len() - count..]);
        }
        explicit.sort_unstable();
        Maya::from_beads(&explicit, hi)
    }
}

impl fmt::Display for Maya {
    /// Canonical serialization: the displaced beads followed by the first tail
    /// bead, e.g. `(-2,1,...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self
            .beads(self.mu.len() + 1)
            .iter()
            .map(|x| x.to_string())
            .collect();
        write!(f, "({},...)", b.join(","))
    }
}

impl fmt::Debug for Maya {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
