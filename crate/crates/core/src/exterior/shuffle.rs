use super::{clifford_mask, elems, k_subsets, psi_star_mask, signed, wedge_of_images, ExtTensor, LinearOperator};
use crate::exact::Ring;
use crate::symfunc::MPoly;
use crate::{Error, Result};

/// `∧^k T`: `u_1 ∧ ⋯ ∧ u_k ↦ T u_1 ∧ ⋯ ∧ T u_k`.
pub fn wedge_power<R: Ring>(t: &LinearOperator<R>, tau: &ExtTensor<R>) -> ExtTensor<R> {
    let mut out = ExtTensor::zero(tau.n(), tau.degree());
    for (s, c) in tau.terms() {
        out = out.add(&wedge_of_images(t, s).scale(c));
    }
    out
}

/// `v_1 ∧ ⋯ ∧ v_k` where `v_r` is `ops[r](e_{s_r})`.
fn wedge_of_factors<R: Ring>(n: usize, factors: &[ExtTensor<R>]) -> ExtTensor<R> {
    factors
        .iter()
        .rev()
        .fold(ExtTensor::one(n), |acc, v| v.wedge(&acc))
}

/// `sh_d^T` by subset replacement: the sum over `d`-subsets `R` of factor
/// positions of the wedge with `T` applied at the positions in `R`.
pub fn t_shuffle_subsets<R: Ring>(d: usize, t: &LinearOperator<R>, tau: &ExtTensor<R>) -> ExtTensor<R> {
    let n = tau.n();
    let k = tau.degree();
    let mut out = ExtTensor::zero(n, k);
    for (s, c) in tau.terms() {
        let idx = elems(s);
        let plain: Vec<ExtTensor<R>> = idx.iter().map(|&i| ExtTensor::from_mask(n, 1 << (i - 1))).collect();
        let moved: Vec<ExtTensor<R>> = idx.iter().map(|&i| t.image_of_basis(i - 1)).collect();
        for r in k_subsets(k, d) {
            let factors: Vec<ExtTensor<R>> = (0..k)
                .map(|p| if r >> p & 1 == 1 { moved[p].clone() } else { plain[p].clone() })
                .collect();
            out = out.add(&wedge_of_factors(n, &factors).scale(c));
        }
    }
    out
}

/// `ι_{T* e*_i} = Σ_j T[i][j] ψ*_j`.
fn contract_dual_image<R: Ring>(t: &LinearOperator<R>, i: usize, v: &ExtTensor<R>) -> ExtTensor<R> {
    let n = v.n();
    let mut out = ExtTensor::zero(n, v.degree().saturating_sub(1));
    for j in 1..=n {
        let a = t.get(i - 1, j - 1);
        if a.is_zero() {
            continue;
        }
        for (s, c) in v.terms() {
            if let Some((neg, r)) = psi_star_mask(j, s) {
                out.add_term(r, signed(neg, c.clone() * a.clone()));
            }
        }
    }
    out
}

/// `sh_d^T = Σ_{|I|=d} e_I ∧ ι(·)`, contracting with `T* e*_{i_1}` first,
/// then `T* e*_{i_2}`, and so on.
pub fn t_shuffle_basis_free<R: Ring>(d: usize, t: &LinearOperator<R>, tau: &ExtTensor<R>) -> ExtTensor<R> {
    let n = tau.n();
    let mut out = ExtTensor::zero(n, tau.degree());
    if d > tau.degree() {
        return out;
    }
    for i in k_subsets(n, d) {
        let mut v = tau.clone();
        for idx in elems(i) {
            v = contract_dual_image(t, idx, &v);
            if v.is_zero() {
                break;
            }
        }
        for (s, c) in v.terms() {
            if let Some((neg, r)) = clifford_mask(i, false, s) {
                out.add_term(r, signed(neg, c.clone()));
            }
        }
    }
    out
}

/// The T-shuffle operator `sh_d^T` on `∧^k V` (`sh_0^T` is the identity).
/// Debug builds check the subset-replacement and basis-free forms agree.
pub fn t_shuffle<R: Ring>(d: usize, t: &LinearOperator<R>, tau: &ExtTensor<R>) -> ExtTensor<R> {
    if d == 0 {
        return tau.clone();
    }
    let r = t_shuffle_subsets(d, t, tau);
    debug_assert!(r.sub(&t_shuffle_basis_free(d, t, tau)).is_zero());
    r
}

/// The endomorphism of `∧^k V` induced by a symmetric polynomial `f(x_1, …, x_k)`
/// acting through `x_i ↦ T` on the `i`-th tensor factor.
pub fn sym_operator<R: Ring>(
    f: &MPoly<R>,
    k: usize,
    t: &LinearOperator<R>,
    tau: &ExtTensor<R>,
) -> Result<ExtTensor<R>> {
    if tau.degree() != k {
        return Err(Error::DimensionMismatch(format!("tensor of degree {} for k = {k}", tau.degree())));
    }
    let mut full: Vec<(Vec<u16>, R)> = Vec::new();
    for (e, c) in f.terms() {
        if e.len() > k {
            return Err(Error::Precondition(format!("monomial {e:?} uses more than {k} variables")));
        }
        let mut e = e.clone();
        e.resize(k, 0);
        full.push((e, c.clone()));
    }
    for (e, c) in &full {
        for i in 0..k.saturating_sub(1) {
            let mut g = e.clone();
            g.swap(i, i + 1);
            if f.coeff(&g) != *c {
                return Err(Error::Precondition("polynomial is not symmetric".into()));
            }
        }
    }
    let n = tau.n();
    let top = full.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
    let powers: Vec<LinearOperator<R>> = (0..=top).map(|p| t.pow(p)).collect();
    let mut out = ExtTensor::zero(n, k);
    for (s, c) in tau.terms() {
        let idx = elems(s);
        for (e, a) in &full {
            let factors: Vec<ExtTensor<R>> = idx
                .iter()
                .zip(e)
                .map(|(&i, &p)| powers[p as usize].image_of_basis(i - 1))
                .collect();
            out = out.add(&wedge_of_factors(n, &factors).scale(&(c.clone() * a.clone())));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntPoly;
    use crate::exterior::{omega, omega_t, two_tensor_prop_rhs};
    use crate::symfunc::{SymBasis, SymPoly};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tensor(rng: &mut ChaCha8Rng, n: usize, k: usize) -> ExtTensor<BigInt> {
        let mut t = ExtTensor::zero(n, k);
        for s in k_subsets(n, k) {
            if rng.gen_bool(0.6) {
                t.add_term(s, BigInt::from(rng.gen_range(-3..=3)));
            }
        }
        t
    }

    fn random_op(rng: &mut ChaCha8Rng, n: usize) -> LinearOperator<BigInt> {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect())
            .collect();
        LinearOperator::from_rows(rows).unwrap()
    }

    fn decomposable(rng: &mut ChaCha8Rng, n: usize, k: usize) -> ExtTensor<BigInt> {
        (0..k).fold(ExtTensor::one(n), |acc, _| {
            let v: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect();
            acc.wedge(&ExtTensor::vector(&v))
        })
    }

    #[test]
    fn top_shuffle_is_wedge_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(0..=n);
            let t = random_op(&mut rng, n);
            let tau = random_tensor(&mut rng, n, k);
            assert_eq!(t_shuffle(k, &t, &tau), wedge_power(&t, &tau));
            assert_eq!(t_shuffle(0, &t, &tau), tau);
        }
    }

    #[test]
    fn identity_shuffle_is_binomial() {
        for n in 1..=5 {
            for k in 0..=n {
                let tau = ExtTensor::<BigInt>::from_mask(n, (1 << k) - 1);
                for d in 0..=k {
                    let c: i64 = (0..d).fold(1, |acc, i| acc * (k - i) as i64 / (i + 1) as i64);
                    assert_eq!(t_shuffle(d, &LinearOperator::identity(n), &tau), tau.scale(&c.into()));
                }
            }
        }
    }

    #[test]
    fn one_plus_t_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = IntPoly::t();
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(0..=n);
            let op = random_op(&mut rng, n).map(|x| IntPoly::constant(x.clone()));
            let tau = random_tensor(&mut rng, n, k).clone();
            let tau = {
                let mut p = ExtTensor::zero(n, k);
                for (s, c) in tau.terms() {
                    p.add_term(s, IntPoly::constant(c.clone()));
                }
                p
            };
            let lhs = wedge_power(&LinearOperator::identity(n).add(&op.scale(&t)), &tau);
            let mut rhs = tau.clone();
            for d in 1..=k {
                let td = (0..d).fold(IntPoly::one(), |a, _| a * t.clone());
                rhs = rhs.add(&t_shuffle(d, &op, &tau).scale(&td));
            }
            assert!(lhs.sub(&rhs).is_zero());
        }
    }

    #[test]
    fn identity_holds_on_decomposables() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = rng.gen_range(2..=5);
            let k = rng.gen_range(1..=n);
            let t = random_op(&mut rng, n);
            let tau = decomposable(&mut rng, n, k);
            for d in 1..=k {
                let lhs = omega_t(d, &t, &tau, &tau);
                let rhs = two_tensor_prop_rhs(d, &t, &tau, &tau);
                let sign = BigInt::from(if d % 2 == 0 { 1 } else { -1 });
                assert!(lhs.sub(&rhs.scale(&sign)).is_zero(), "n={n} k={k} d={d}");
            }
        }
    }

    #[test]
    fn identity_needs_decomposability() {
        let n = 4;
        let tau = ExtTensor::<BigInt>::basis(n, &[1, 2])
            .unwrap()
            .add(&ExtTensor::basis(n, &[3, 4]).unwrap());
        let id = LinearOperator::identity(n);
        let lhs = omega_t(1, &id, &tau, &tau);
        assert!(!lhs.is_zero());
        assert_eq!(lhs, omega(1, &tau, &tau));
        assert_eq!(two_tensor_prop_rhs(1, &id, &tau, &tau), lhs.scale(&BigInt::from(2)));
    }

    #[test]
    fn symmetric_polynomials_act() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=n);
            let t = random_op(&mut rng, n);
            let tau = random_tensor(&mut rng, n, k);
            for d in 1..=k {
                let e = SymPoly::<BigInt>::basis(&SymBasis::E(d), k, d.max(k)).unwrap();
                assert_eq!(sym_operator(e.poly(), k, &t, &tau).unwrap(), t_shuffle(d, &t, &tau));
            }
            let one = MPoly::constant(BigInt::one());
            assert_eq!(sym_operator(&one, k, &t, &tau).unwrap(), tau);
            let bad = MPoly::<BigInt>::var(0);
            if k >= 2 {
                assert!(sym_operator(&bad, k, &t, &tau).is_err());
            }
            assert!(sym_operator(&MPoly::<BigInt>::zero(), k, &t, &tau).unwrap().is_zero());
        }
    }
}
