use crate::exact::Ring;
use crate::exterior::{elems, LinearOperator};
use crate::partitions::Maya;

/// The model `V_[−N,N)` with basis `e_{−N}, …, e_{N−1}` (position `p = i + N + 1`
/// in `[2N]`) and the shift `e_i ↦ e_{i+n}`, `e_{i+n} = 0` once `i + n ≥ N`.
#[derive(Clone, Debug)]
pub struct TruncationModel<R: Ring> {
    pub half: usize,
    pub n: usize,
    pub shift: LinearOperator<R>,
}

pub fn truncation_model<R: Ring>(half: usize, n: usize) -> TruncationModel<R> {
    let dim = 2 * half;
    let mut shift = LinearOperator::zero(dim);
    for col in 0..dim {
        if col + n < dim {
            shift.set(col + n, col, R::one());
        }
    }
    TruncationModel { half, n, shift }
}

impl<R: Ring> TruncationModel<R> {
    pub fn dim(&self) -> usize {
        2 * self.half
    }

    /// The index `i ∈ [−N, N)` at 1-based position `p`.
    pub fn index_at(&self, p: usize) -> i64 {
        p as i64 - 1 - self.half as i64
    }

    pub fn position_of(&self, i: i64) -> Option<usize> {
        let p = i + self.half as i64 + 1;
        (1..=self.dim() as i64).contains(&p).then_some(p as usize)
    }

    /// Virtual dimension of a subspace of dimension `dim`.
    pub fn vdim(&self, dim: usize) -> i64 {
        self.half as i64 - dim as i64
    }

    /// Sizes of the Jordan blocks of the shift.
    pub fn jordan_type(&self) -> Vec<usize> {
        let (dim, n) = (self.dim(), self.n.max(1));
        let mut blocks: Vec<usize> = (0..n.min(dim)).map(|r| (dim - r).div_ceil(n)).collect();
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        blocks
    }
}

/// The charge-0 Maya diagram with beads `S ∪ {N, N+1, …}` for a subset `S`
/// of positions in `[2N]`.
pub fn maya_of_subset(half: usize, mask: u32) -> Maya {
    let beads: Vec<i64> = elems(mask).iter().map(|&p| p as i64 - 1 - half as i64).collect();
    Maya::from_beads(&beads, half as i64)
}

/// Inverse of [`maya_of_subset`] on diagrams whose beads lie in `[−N, ∞)` and
/// fill `[N, ∞)`.
pub fn subset_of_maya(half: usize, m: &Maya) -> Option<u32> {
    let h = half as i64;
    if (h..m.tail_start()).any(|j| !m.contains(j)) {
        return None;
    }
    let mut mask = 0u32;
    let explicit = m.beads(m.mu().len());
    for b in explicit.into_iter().chain(m.tail_start()..h) {
        if b < -h {
            return None;
        }
        mask |= 1 << (b + h) as u32;
    }
    Some(mask)
}
