use super::{Maya, Partition};
use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

/// The orders on partitions used by the straightening algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Lexicographic order of Maya bead lists, oriented so that straightening
    /// descends: `p > q` when the bead list of `p` is lexicographically
    /// *smaller*. Equivalently, lexicographic order of transposes.
    Mlex,
    /// Dominance by partial sums.
    Dominance,
    /// Transitive closure of `n`-jump moves on Maya diagrams.
    NJump(usize),
    /// The `n`-dominance order, i.e. the `n`-jump order transported to partitions.
    NDominance(usize),
}

/// Total `mlex` comparison.
pub fn mlex_cmp(p: &Partition, q: &Partition) -> Ordering {
    let len = p.transpose().len().max(q.transpose().len()) + 1;
    let a = Maya::of_partition(p).beads(len);
    let b = Maya::of_partition(q).beads(len);
    b.cmp(&a)
}

/// Partitions reached from `p` by one `n`-jump move: beads `i_α < i_β` with
/// `i_α + n ≤ i_β` replaced by `(i_α + n, i_β - n)` when both targets are free.
pub fn jump_covers(p: &Partition, n: usize) -> Vec<Partition> {
    let m = Maya::of_partition(p);
    let n_i = n as i64;
    let window = m.mu().len() + n + 1;
    let beads = m.beads(window);
    let tail = m.tail_start() + (window - m.mu().len()) as i64;
    let occupied = |x: i64, skip: [i64; 2]| -> bool {
        !skip.contains(&x) && (x >= tail || beads.binary_search(&x).is_ok())
    };
    let mut out = BTreeSet::new();
    for a in 0..beads.len() {
        for b in a + 1..beads.len() {
            let (ia, ib) = (beads[a], beads[b]);
            if ia + n_i >= ib || ia + n_i == ib - n_i {
                continue;
            }
            let skip = [ia, ib];
            if occupied(ia + n_i, skip) || occupied(ib - n_i, skip) {
                continue;
            }
            let mut nb: Vec<i64> = beads
                .iter()
                .copied()
                .filter(|&x| x != ia && x != ib)
                .chain([ia + n_i, ib - n_i])
                .collect();
            nb.sort_unstable();
            out.insert(
                Maya::from_beads(&nb, tail)
                    .partition()
                    .expect("jumps keep charge 0"),
            );
        }
    }
    out.into_iter().collect()
}

/// Everything reachable from `p` by `n`-jump moves, `p` included.
pub fn jump_reachable(p: &Partition, n: usize) -> BTreeSet<Partition> {
    let mut seen = BTreeSet::from([p.clone()]);
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(x) = queue.pop_front() {
        for y in jump_covers(&x, n) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Compare two partitions; `None` means incomparable.
pub fn compare(p: &Partition, q: &Partition, order: Order) -> Option<Ordering> {
    if p == q {
        return Some(Ordering::Equal);
    }
    match order {
        Order::Mlex => Some(mlex_cmp(p, q)),
        Order::Dominance => {
            if p.dominates(q) {
                Some(Ordering::Greater)
            } else if q.dominates(p) {
                Some(Ordering::Less)
            } else {
                None
            }
        }
        Order::NJump(n) | Order::NDominance(n) => {
            if p.size() != q.size() {
                None
            } else if jump_reachable(p, n).contains(q) {
                Some(Ordering::Greater)
            } else if jump_reachable(q, n).contains(p) {
                Some(Ordering::Less)
            } else {
                None
            }
        }
    }
}
