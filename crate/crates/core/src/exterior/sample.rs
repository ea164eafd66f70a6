//! Seeded random tensors and operators with small integer entries.

use super::{k_subsets, ExtTensor, LinearOperator, TwoTensor};
use crate::exact::Ring;
use rand::Rng;

/// A tensor in `∧^k` with each coordinate present with probability 0.6 and
/// drawn from `[-3, 3]`; usually not decomposable.
pub fn random_tensor<R: Ring>(rng: &mut impl Rng, n: usize, k: usize) -> ExtTensor<R> {
    let mut t = ExtTensor::zero(n, k);
    for s in k_subsets(n, k) {
        if rng.gen_bool(0.6) {
            t.add_term(s, R::from_i64(rng.gen_range(-3..=3)));
        }
    }
    t
}

/// `v_1 ∧ … ∧ v_k` for random vectors with entries in `[-2, 2]`.
pub fn decomposable<R: Ring>(rng: &mut impl Rng, n: usize, k: usize) -> ExtTensor<R> {
    (0..k).fold(ExtTensor::one(n), |acc, _| {
        let v: Vec<R> = (0..n).map(|_| R::from_i64(rng.gen_range(-2..=2))).collect();
        acc.wedge(&ExtTensor::vector(&v))
    })
}

/// An operator with entries in `[-2, 2]`.
pub fn random_op<R: Ring>(rng: &mut impl Rng, n: usize) -> LinearOperator<R> {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| R::from_i64(rng.gen_range(-2..=2))).collect())
        .collect();
    LinearOperator::from_rows(rows).expect("square")
}

/// A sum of two random `∧^a ⊗ ∧^b` product tensors.
pub fn random_two_tensor<R: Ring>(rng: &mut impl Rng, n: usize, a: usize, b: usize) -> TwoTensor<R> {
    let x = random_tensor::<R>(rng, n, a).tensor(&random_tensor(rng, n, b));
    let y = random_tensor::<R>(rng, n, a).tensor(&random_tensor(rng, n, b));
    x.add(&y)
}
