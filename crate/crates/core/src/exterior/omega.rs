use super::{clifford_mask, elems, k_subsets, signed, t_shuffle, wedge_of_images, wedge_power, ExtTensor, LinearOperator, TwoTensor};
use crate::exact::Ring;

/// `d`-subsets of the mask `s`.
fn subsets_of(s: u32, d: usize) -> Vec<u32> {
    let el = elems(s);
    k_subsets(el.len(), d)
        .into_iter()
        .map(|m| elems(m).iter().fold(0u32, |acc, &p| acc | 1 << (el[p - 1] - 1)))
        .collect()
}

fn out_shape<R: Ring>(w: &TwoTensor<R>, d: usize, raise_left: bool) -> Option<TwoTensor<R>> {
    let (a, b) = w.degrees();
    let (na, nb) = if raise_left {
        (a + d, b.checked_sub(d)?)
    } else {
        (a.checked_sub(d)?, b + d)
    };
    if na > w.n() || nb > w.n() {
        return None;
    }
    Some(TwoTensor::zero(w.n(), na, nb))
}

/// `Ω_d = Σ_{|I|=d} ψ_I ⊗ ψ*_I` on a two-tensor.
pub fn omega_apply<R: Ring>(d: usize, w: &TwoTensor<R>) -> TwoTensor<R> {
    let Some(mut out) = out_shape(w, d, true) else {
        return TwoTensor::zero(w.n(), 0, 0);
    };
    for ((l, r), c) in w.terms() {
        for i in subsets_of(r, d) {
            let Some((n1, l2)) = clifford_mask(i, false, l) else { continue };
            let Some((n2, r2)) = clifford_mask(i, true, r) else { continue };
            out.add_term(l2, r2, signed(n1 ^ n2, c.clone()));
        }
    }
    out
}

/// `Ω_d(u ⊗ v)`.
pub fn omega<R: Ring>(d: usize, u: &ExtTensor<R>, v: &ExtTensor<R>) -> TwoTensor<R> {
    omega_apply(d, &u.tensor(v))
}

/// The adjoint `Ω*_d = Σ_{|I|=d} ψ*_I ⊗ ψ_I`.
pub fn omega_star_apply<R: Ring>(d: usize, w: &TwoTensor<R>) -> TwoTensor<R> {
    let Some(mut out) = out_shape(w, d, false) else {
        return TwoTensor::zero(w.n(), 0, 0);
    };
    for ((l, r), c) in w.terms() {
        for i in subsets_of(l, d) {
            let Some((n1, l2)) = clifford_mask(i, true, l) else { continue };
            let Some((n2, r2)) = clifford_mask(i, false, r) else { continue };
            out.add_term(l2, r2, signed(n1 ^ n2, c.clone()));
        }
    }
    out
}

/// `Ω^T_d = Σ_{|I|=d} (T e_{i_1} ∧ ⋯ ∧ T e_{i_d}) ∧ (·) ⊗ ψ*_I`.
///
/// No extra sign is attached, so that `Ω^{Id}_d = Ω_d` term by term.
pub fn omega_t_apply<R: Ring>(d: usize, t: &LinearOperator<R>, w: &TwoTensor<R>) -> TwoTensor<R> {
    let Some(mut out) = out_shape(w, d, true) else {
        return TwoTensor::zero(w.n(), 0, 0);
    };
    let mut images = std::collections::HashMap::new();
    for ((l, r), c) in w.terms() {
        for i in subsets_of(r, d) {
            let Some((n2, r2)) = clifford_mask(i, true, r) else { continue };
            let ti = images.entry(i).or_insert_with(|| wedge_of_images(t, i));
            for (j, x) in ti.terms() {
                let Some((n1, l2)) = clifford_mask(j, false, l) else { continue };
                out.add_term(l2, r2, signed(n1 ^ n2, c.clone() * x.clone()));
            }
        }
    }
    out
}

pub fn omega_t<R: Ring>(d: usize, t: &LinearOperator<R>, u: &ExtTensor<R>, v: &ExtTensor<R>) -> TwoTensor<R> {
    omega_t_apply(d, t, &u.tensor(v))
}

/// `η^T_d(τ) = Ω_d(Tτ ⊗ τ)`.
pub fn eta_t<R: Ring>(d: usize, t: &LinearOperator<R>, tau: &ExtTensor<R>) -> TwoTensor<R> {
    omega(d, &wedge_power(t, tau), tau)
}

/// The bilinear form `(u, v) ↦ Σ_{|I|=d} e_I ∧ sh^T_d(u) ⊗ ψ*_I(v)`.
pub fn two_tensor_prop_rhs<R: Ring>(
    d: usize,
    t: &LinearOperator<R>,
    u: &ExtTensor<R>,
    v: &ExtTensor<R>,
) -> TwoTensor<R> {
    omega(d, &t_shuffle(d, t, u), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Fp;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = BigRational;

    fn e(n: usize, s: &[usize]) -> ExtTensor<BigInt> {
        ExtTensor::basis(n, s).unwrap()
    }

    fn random_tensor<R: Ring>(rng: &mut ChaCha8Rng, n: usize, k: usize) -> ExtTensor<R> {
        let mut t = ExtTensor::zero(n, k);
        for s in k_subsets(n, k) {
            if rng.gen_bool(0.6) {
                t.add_term(s, R::from_i64(rng.gen_range(-3..=3)));
            }
        }
        t
    }

    fn random_op<R: Ring>(rng: &mut ChaCha8Rng, n: usize) -> LinearOperator<R> {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| R::from_i64(rng.gen_range(-2..=2))).collect())
            .collect();
        LinearOperator::from_rows(rows).unwrap()
    }

    #[test]
    fn documented_omega() {
        let u = e(3, &[1]);
        let v = e(3, &[2]);
        assert_eq!(omega(0, &u, &v), u.tensor(&v));
        let r = omega(1, &u, &v);
        let mut want = TwoTensor::zero(3, 2, 0);
        want.add_term(0b011, 0, -BigInt::one());
        assert_eq!(r, want);
    }

    #[test]
    fn divided_powers_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(2..=5);
            let a = rng.gen_range(0..=n);
            let b = rng.gen_range(0..=n);
            let w = random_tensor::<Q>(&mut rng, n, a).tensor(&random_tensor(&mut rng, n, b));
            let mut iter = w.clone();
            for d in 1..=3 {
                iter = omega_apply(1, &iter);
                let fact: i64 = (1..=d as i64).product();
                let direct = omega_apply(d, &w).scale(&Q::from_integer(fact.into()));
                assert!(iter.sub(&direct).is_zero());
            }
        }
    }

    #[test]
    fn omega_t_identity_and_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..=5);
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(1..=n));
            let u = random_tensor::<BigInt>(&mut rng, n, a);
            let v = random_tensor::<BigInt>(&mut rng, n, b);
            for d in 0..=2 {
                assert_eq!(omega_t(d, &LinearOperator::identity(n), &u, &v), omega(d, &u, &v));
            }
            assert!(omega_t(1, &LinearOperator::zero(n), &u, &v).is_zero());
        }
    }

    fn additivity<R: Ring>(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let n = rng.gen_range(2..=4);
            let t1 = random_op::<R>(&mut rng, n);
            let t2 = random_op::<R>(&mut rng, n);
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(1..=n));
            let w = random_tensor::<R>(&mut rng, n, a).tensor(&random_tensor(&mut rng, n, b));
            for d in 0..=2 {
                let lhs = omega_t_apply(d, &t1.add(&t2), &w);
                let rhs = (0..=d).fold(TwoTensor::zero(n, 0, 0), |acc, k| {
                    acc.add(&omega_t_apply(k, &t1, &omega_t_apply(d - k, &t2, &w)))
                });
                assert!(lhs.sub(&rhs).is_zero(), "d={d}");
            }
        }
    }

    #[test]
    fn additivity_over_q_and_f5() {
        additivity::<Q>(3);
        additivity::<Fp<5>>(4);
    }

    #[test]
    fn adjoint_pairing() {
        // <Ω*_d(x), w> = <x, Ω_d(w)> on basis pairs
        let n = 4;
        for a in 0..=n {
            for b in 0..=n {
                for l in k_subsets(n, a) {
                    for r in k_subsets(n, b) {
                        let w = ExtTensor::<BigInt>::from_mask(n, l).tensor(&ExtTensor::from_mask(n, r));
                        let img = omega_apply(1, &w);
                        for ((l2, r2), c) in img.terms() {
                            let x = ExtTensor::<BigInt>::from_mask(n, l2).tensor(&ExtTensor::from_mask(n, r2));
                            let back = omega_star_apply(1, &x);
                            let got = back.terms().find(|(k, _)| *k == (l, r)).map(|(_, v)| v.clone());
                            assert_eq!(got.unwrap_or_else(BigInt::zero), c.clone());
                        }
                    }
                }
            }
        }
    }
}
