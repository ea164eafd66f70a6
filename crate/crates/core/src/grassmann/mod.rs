//! Plücker quadrics, the KP-two-tensor ideal in degree 2, the schemes `𝒢^T`
//! and `𝒮^T` at the level of generators and field points, and truncated
//! models of the Sato Grassmannian.
//!
//! Degree-2 coordinates are monomials `X_S X_S'` (unordered pairs of
//! `k`-subsets) in the Grassmannian case and `X_S ⊗ Y_B` in the incidence
//! case. Subsets are bitmasks as in [`crate::exterior`].

mod points;
mod truncation;

pub use points::{
    chart_count, enumerate_points, gaussian_binomial, gt_points, is_invariant, local_expectation, plucker_vector,
    st_points, tangent_dim_gt, tangent_direction_holds, SubspaceBasis, DEFAULT_POINT_BUDGET,
};
pub use truncation::{maya_of_subset, subset_of_maya, truncation_model, TruncationModel};

use crate::exact::{lattice_equal, rank_over_q, solve_in_span, Ring};
use crate::exterior::signs::epsilon;
use crate::exterior::{clifford_mask, elems, k_subsets, omega, omega_t, ExtTensor, LinearOperator, TwoTensor};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Which coordinate ring a quadric lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PluckerKind {
    /// `Sym²(∧^k V*)`.
    Grassmannian { k: usize },
    /// `∧^k V* ⊗ ∧^ℓ V*`, `k ≥ ℓ`.
    Incidence { k: usize, l: usize },
}

impl PluckerKind {
    fn degrees(self) -> (usize, usize) {
        match self {
            PluckerKind::Grassmannian { k } => (k, k),
            PluckerKind::Incidence { k, l } => (k, l),
        }
    }

    fn symmetric(self) -> bool {
        matches!(self, PluckerKind::Grassmannian { .. })
    }
}

/// The degree-2 coordinate space of a [`PluckerKind`] over `[n]`.
#[derive(Clone, Debug)]
pub struct Degree2Space {
    kind: PluckerKind,
    n: usize,
    keys: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
}

impl Degree2Space {
    pub fn new(kind: PluckerKind, n: usize) -> Result<Self> {
        let (a, b) = kind.degrees();
        if b > a || a > n || n > crate::exterior::MAX_DIM {
            return Err(Error::Precondition(format!("need n ≥ k ≥ ℓ, got {kind:?} with n = {n}")));
        }
        let left = k_subsets(n, a);
        let right = k_subsets(n, b);
        let mut keys = Vec::new();
        for (i, &s) in left.iter().enumerate() {
            if kind.symmetric() {
                keys.extend(left[i..].iter().map(|&t| canonical(s, t)));
            } else {
                keys.extend(right.iter().map(|&t| (s, t)));
            }
        }
        let index = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Ok(Degree2Space { kind, n, keys, index })
    }

    pub fn kind(&self) -> PluckerKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[(u32, u32)] {
        &self.keys
    }

    /// Integer coordinate vector of a quadric.
    pub fn vector(&self, q: &PluckerQuadric) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        for (key, c) in &q.terms {
            v[self.index[key]] = c.clone();
        }
        v
    }

    /// The quadric with coordinate vector `v`.
    pub fn quadric(&self, v: &[BigInt]) -> PluckerQuadric {
        let mut q = PluckerQuadric::zero(self.kind);
        for (&(a, b), c) in self.keys.iter().zip(v) {
            q.add_term(a, b, c.clone());
        }
        q
    }

    pub fn vectors(&self, qs: &[PluckerQuadric]) -> Vec<Vec<BigInt>> {
        qs.iter().map(|q| self.vector(q)).collect()
    }
}

fn canonical(a: u32, b: u32) -> (u32, u32) {
    // lexicographic order of element lists, matching k_subsets
    if elems(a) <= elems(b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// A degree-2 element of the coordinate ring with integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PluckerQuadric {
    symmetric: bool,
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl PluckerQuadric {
    pub fn zero(kind: PluckerKind) -> Self {
        PluckerQuadric {
            symmetric: kind.symmetric(),
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c · X_a X_b` (or `c · X_a ⊗ Y_b`).
    pub fn add_term(&mut self, a: u32, b: u32, c: BigInt) {
        let key = if self.symmetric { canonical(a, b) } else { (a, b) };
        let e = self.terms.entry(key).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, o: &PluckerQuadric, c: &BigInt) {
        for (&(a, b), x) in &o.terms {
            self.add_term(a, b, x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coeff(&self, a: &[usize], b: &[usize]) -> BigInt {
        let (a, b) = (crate::exterior::mask_of(a), crate::exterior::mask_of(b));
        let key = if self.symmetric { canonical(a, b) } else { (a, b) };
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    /// Value at `(σ, τ)`; the Grassmannian case evaluates at `σ = τ`.
    pub fn eval<R: Ring>(&self, left: &ExtTensor<R>, right: &ExtTensor<R>) -> R {
        let mut acc = R::zero();
        for (&(a, b), c) in &self.terms {
            acc = acc + crate::exact::int_to_ring::<R>(c) * left.coeff_mask(a) * right.coeff_mask(b);
        }
        acc
    }
}

fn fmt_subset(s: u32) -> String {
    let e: Vec<String> = elems(s).iter().map(|i| i.to_string()).collect();
    format!("X[{}]", e.join(","))
}

impl fmt::Display for PluckerQuadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let glue = if self.symmetric { "*" } else { "⊗" };
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let right = if self.symmetric { fmt_subset(b) } else { fmt_subset(b).replacen('X', "Y", 1) };
            write!(f, "{}{glue}{}", fmt_subset(a), right)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PluckerQuadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `ψ_I` or `ψ*_I` applied to the coordinate `X_s` (the dual action uses the
/// same signs).
fn act(i: u32, star: bool, s: u32) -> Option<(bool, u32)> {
    clifford_mask(i, star, s)
}

/// `P_{α,β,d}` (or `P_{α⊗β,d}`) in the Clifford form
/// `X_α X_β − Σ_{|I|=d} ψ_J ψ*_I X_α · ψ_I ψ*_J X_β`, `J = {β_1, …, β_d}`.
pub fn plucker_quadric(kind: PluckerKind, alpha: u32, beta: u32, d: usize) -> PluckerQuadric {
    let mut q = PluckerQuadric::zero(kind);
    q.add_term(alpha, beta, BigInt::one());
    let j = crate::exterior::mask_of(&elems(beta)[..d]);
    let a_el = elems(alpha);
    for sub in k_subsets(a_el.len(), d) {
        let i = elems(sub).iter().fold(0u32, |m, &p| m | 1 << (a_el[p - 1] - 1));
        let left = act(i, true, alpha).and_then(|(n1, s)| act(j, false, s).map(|(n2, s)| (n1 ^ n2, s)));
        let right = act(j, true, beta).and_then(|(n1, s)| act(i, false, s).map(|(n2, s)| (n1 ^ n2, s)));
        if let (Some((n1, l)), Some((n2, r))) = (left, right) {
            q.add_term(l, r, if n1 ^ n2 { BigInt::one() } else { -BigInt::one() });
        }
    }
    q
}

/// All nonzero `P_{α,β,d}` over increasing `α, β` and `1 ≤ d ≤ ℓ`.
pub fn plucker_generators(kind: PluckerKind, n: usize) -> Result<Vec<PluckerQuadric>> {
    Degree2Space::new(kind, n)?;
    let (a, b) = kind.degrees();
    let mut out = Vec::new();
    for &alpha in &k_subsets(n, a) {
        for &beta in &k_subsets(n, b) {
            for d in 1..=b {
                let q = plucker_quadric(kind, alpha, beta, d);
                if !q.is_zero() {
                    out.push(q);
                }
            }
        }
    }
    Ok(out)
}

/// For a bilinear map `f` from basis pairs to two-tensors, the quadric
/// `τ ↦ ⟨e*_A ⊗ e*_B, f(τ, τ)⟩` (resp. `(σ, τ) ↦ …`) for every output
/// coordinate `(A, B)`.
pub fn forms_of_bilinear(
    kind: PluckerKind,
    n: usize,
    f: impl Fn(u32, u32) -> TwoTensor<BigInt>,
) -> Result<BTreeMap<(u32, u32), PluckerQuadric>> {
    Degree2Space::new(kind, n)?;
    let (a, b) = kind.degrees();
    let mut out: BTreeMap<(u32, u32), PluckerQuadric> = BTreeMap::new();
    for &s in &k_subsets(n, a) {
        for &t in &k_subsets(n, b) {
            for ((l, r), c) in f(s, t).terms() {
                out.entry((l, r))
                    .or_insert_with(|| PluckerQuadric::zero(kind))
                    .add_term(s, t, c.clone());
            }
        }
    }
    out.retain(|_, q| !q.is_zero());
    Ok(out)
}

/// The quadrics `(e*_A ⊗ e*_B) ∘ ω_d` for `1 ≤ d ≤ ℓ`.
pub fn kp_forms(kind: PluckerKind, n: usize) -> Result<Vec<PluckerQuadric>> {
    let (_, b) = kind.degrees();
    let mut out = Vec::new();
    for d in 1..=b {
        let forms = forms_of_bilinear(kind, n, |s, t| {
            omega(d, &ExtTensor::from_mask(n, s), &ExtTensor::from_mask(n, t))
        })?;
        out.extend(forms.into_values());
    }
    Ok(out)
}

/// Outcome of a degree-2 lattice comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree2Comparison {
    pub equal: bool,
    pub plucker_rank: usize,
    pub kp_rank: usize,
    pub plucker_generators: usize,
    pub kp_generators: usize,
}

/// Compares the ℤ-lattices spanned by the Plücker quadrics and by the KP
/// quadrics `(κ ⊗ λ) ∘ ω_d`.
pub fn degree2_comparison(kind: PluckerKind, n: usize) -> Result<Degree2Comparison> {
    let space = Degree2Space::new(kind, n)?;
    let p = space.vectors(&plucker_generators(kind, n)?);
    let w = space.vectors(&kp_forms(kind, n)?);
    Ok(Degree2Comparison {
        equal: lattice_equal(&p, &w)?,
        plucker_rank: rank_over_q(&p, space.dim())?,
        kp_rank: rank_over_q(&w, space.dim())?,
        plucker_generators: p.len(),
        kp_generators: w.len(),
    })
}

pub fn degree2_ideal_equal(k: usize, n: usize) -> Result<bool> {
    Ok(degree2_comparison(PluckerKind::Grassmannian { k }, n)?.equal)
}

pub fn incidence_ideal_equal(k: usize, l: usize, n: usize) -> Result<bool> {
    Ok(degree2_comparison(PluckerKind::Incidence { k, l }, n)?.equal)
}

fn clifford_on(n: usize, i: u32, star: bool, v: &ExtTensor<BigInt>) -> ExtTensor<BigInt> {
    let k = v.degree();
    let nk = if star { k.checked_sub(elems(i).len()) } else { Some(k + elems(i).len()) };
    match nk {
        Some(nk) if nk <= n => v.map_basis(nk, |s| act(i, star, s)),
        _ => ExtTensor::zero(n, 0),
    }
}

/// The reconstruction `−Σ_{K⊊J} ε_d(J,K) (κ_K ⊗ λ_K) ∘ ω_{d-|K|}` of the
/// Grassmannian quadric `P_{α,β,d}`, where `κ_K = ψ_{J-K} X_α` and
/// `λ_K = ψ_K ψ*_J X_β`. The `K = J` term of [`contraction_sides`] is exactly
/// `X_α X_β`, hence the overall minus sign.
pub fn omega_quadric(n: usize, alpha: u32, beta: u32, d: usize, cache: &mut KpFormCache) -> Result<PluckerQuadric> {
    let k = elems(alpha).len();
    let kind = PluckerKind::Grassmannian { k };
    let j_el: Vec<usize> = elems(beta)[..d].to_vec();
    let j = crate::exterior::mask_of(&j_el);
    let mut out = PluckerQuadric::zero(kind);
    let xa = ExtTensor::<BigInt>::from_mask(n, alpha);
    let xb = ExtTensor::<BigInt>::from_mask(n, beta);
    for ksz in 0..d {
        for sub in k_subsets(d, ksz) {
            let k_el: Vec<usize> = elems(sub).iter().map(|&p| j_el[p - 1]).collect();
            let kmask = crate::exterior::mask_of(&k_el);
            let eps = -BigInt::from(epsilon(d, &j_el, &k_el)?);
            let kappa = clifford_on(n, j & !kmask, false, &xa);
            let lambda = clifford_on(n, kmask, false, &clifford_on(n, j, true, &xb));
            if kappa.is_zero() || lambda.is_zero() {
                continue;
            }
            let forms = cache.get(n, k, d - ksz)?;
            for (a, ca) in kappa.terms() {
                for (b, cb) in lambda.terms() {
                    if let Some(q) = forms.get(&(a, b)) {
                        out.add_scaled(q, &(&eps * ca * cb));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Both sides of the two-tensor identity
/// `Σ_{|I|=d} ψ_J ψ*_I X_α ⊗ ψ_I ψ*_J X_β = Σ_{K⊆J} ε_d(J,K) Ω*_{d-|K|}(ψ_{J-K} X_α ⊗ ψ_K ψ*_J X_β)`
/// with `J = {β_1, …, β_d}` and `|α| ≥ |β|`.
pub fn contraction_sides(n: usize, alpha: u32, beta: u32, d: usize) -> Result<(TwoTensor<BigInt>, TwoTensor<BigInt>)> {
    let b_el = elems(beta);
    if d == 0 || d > b_el.len() || b_el.len() > elems(alpha).len() {
        return Err(Error::Precondition(format!("need 1 ≤ d ≤ |β| ≤ |α|, got d = {d}")));
    }
    let j_el = b_el[..d].to_vec();
    let j = crate::exterior::mask_of(&j_el);
    let xa = ExtTensor::<BigInt>::from_mask(n, alpha);
    let xb = ExtTensor::<BigInt>::from_mask(n, beta);
    let mut lhs = TwoTensor::zero(n, 0, 0);
    for i in k_subsets(n, d) {
        let l = clifford_on(n, j, false, &clifford_on(n, i, true, &xa));
        let r = clifford_on(n, i, false, &clifford_on(n, j, true, &xb));
        lhs = lhs.add(&l.tensor(&r));
    }
    let mut rhs = TwoTensor::zero(n, 0, 0);
    for ksz in 0..=d {
        for sub in k_subsets(d, ksz) {
            let k_el: Vec<usize> = elems(sub).iter().map(|&p| j_el[p - 1]).collect();
            let kmask = crate::exterior::mask_of(&k_el);
            let eps = BigInt::from(epsilon(d, &j_el, &k_el)?);
            let kappa = clifford_on(n, j & !kmask, false, &xa);
            let lambda = clifford_on(n, kmask, false, &clifford_on(n, j, true, &xb));
            let w = crate::exterior::omega_star_apply(d - ksz, &kappa.tensor(&lambda));
            rhs = rhs.add(&w.scale(&eps));
        }
    }
    Ok((lhs, rhs))
}

/// Memo of `(e*_A ⊗ e*_B) ∘ ω_m` on `Sym²(∧^k)` keyed by `(n, k, m)`.
#[derive(Default)]
pub struct KpFormCache {
    forms: HashMap<(usize, usize, usize), BTreeMap<(u32, u32), PluckerQuadric>>,
}

impl KpFormCache {
    pub fn get(&mut self, n: usize, k: usize, m: usize) -> Result<&BTreeMap<(u32, u32), PluckerQuadric>> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.forms.entry((n, k, m)) {
            let f = forms_of_bilinear(PluckerKind::Grassmannian { k }, n, |s, t| {
                omega(m, &ExtTensor::from_mask(n, s), &ExtTensor::from_mask(n, t))
            })?;
            e.insert(f);
        }
        Ok(&self.forms[&(n, k, m)])
    }
}

/// First `(α, β, d)` whose Plücker quadric differs from its ω-reconstruction,
/// or `None` when all agree.
pub fn omega_reconstruction_mismatch(k: usize, n: usize) -> Result<Option<(Vec<usize>, Vec<usize>, usize)>> {
    let mut cache = KpFormCache::default();
    let kind = PluckerKind::Grassmannian { k };
    for &alpha in &k_subsets(n, k) {
        for &beta in &k_subsets(n, k) {
            for d in 1..=k {
                if plucker_quadric(kind, alpha, beta, d) != omega_quadric(n, alpha, beta, d, &mut cache)? {
                    return Ok(Some((elems(alpha), elems(beta), d)));
                }
            }
        }
    }
    Ok(None)
}

/// The quadrics `(e*_A ⊗ e*_B) ∘ ω^T_d` for `1 ≤ d ≤ k` (any `T`).
pub fn omega_t_forms(t: &LinearOperator<BigInt>, k: usize) -> Result<Vec<PluckerQuadric>> {
    let n = t.n();
    let mut out = Vec::new();
    for d in 1..=k {
        let forms = forms_of_bilinear(PluckerKind::Grassmannian { k }, n, |s, u| {
            omega_t(d, t, &ExtTensor::from_mask(n, s), &ExtTensor::from_mask(n, u))
        })?;
        out.extend(forms.into_values());
    }
    Ok(out)
}

/// Degree-2 generators of `𝒢^T`: the Plücker lattice and the `ω^T_d` quadrics.
#[derive(Clone, Debug)]
pub struct GtGenerators {
    pub space: Degree2Space,
    pub plucker: Vec<Vec<BigInt>>,
    pub shuffle: Vec<Vec<BigInt>>,
}

impl GtGenerators {
    pub fn all(&self) -> Vec<Vec<BigInt>> {
        self.plucker.iter().chain(&self.shuffle).cloned().collect()
    }
}

pub fn gt_generators(t: &LinearOperator<BigInt>, k: usize) -> Result<GtGenerators> {
    if !t.is_nilpotent() {
        return Err(Error::Precondition("T must be nilpotent".into()));
    }
    let n = t.n();
    let kind = PluckerKind::Grassmannian { k };
    let space = Degree2Space::new(kind, n)?;
    Ok(GtGenerators {
        plucker: space.vectors(&plucker_generators(kind, n)?),
        shuffle: space.vectors(&omega_t_forms(t, k)?),
        space,
    })
}

/// The difference `ω^T_d − (−1)^d Σ_I e_I ∧ sh^T_d(·) ⊗ ψ*_I(·)` as one quadric
/// per output coordinate; on decomposable tensors every one of them vanishes.
pub fn shuffle_identity_defect(d: usize, t: &LinearOperator<BigInt>, k: usize) -> Result<Vec<PluckerQuadric>> {
    let n = t.n();
    let sign = BigInt::from(if d.is_multiple_of(2) { 1 } else { -1 });
    let forms = forms_of_bilinear(PluckerKind::Grassmannian { k }, n, |s, u| {
        let (x, y) = (ExtTensor::from_mask(n, s), ExtTensor::from_mask(n, u));
        omega_t(d, t, &x, &y).sub(&crate::exterior::two_tensor_prop_rhs(d, t, &x, &y).scale(&sign))
    })?;
    Ok(forms.into_values().collect())
}

/// Rational coefficients expressing `q` in terms of `gens`, if possible.
pub fn express_in_span(space: &Degree2Space, gens: &[PluckerQuadric], q: &PluckerQuadric) -> Option<Vec<BigRational>> {
    solve_in_span(&space.vectors(gens), &space.vector(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Fp;
    use crate::exterior::{mask_of, omega_t_apply};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gr(k: usize) -> PluckerKind {
        PluckerKind::Grassmannian { k }
    }

    #[test]
    fn classical_three_term_relation() {
        let q = plucker_quadric(gr(2), mask_of(&[1, 2]), mask_of(&[3, 4]), 1);
        assert_eq!(q.to_string(), "X[1,2]*X[3,4] - X[1,3]*X[2,4] + X[1,4]*X[2,3]");
        assert!(plucker_generators(gr(1), 5).unwrap().is_empty());
        let inc = plucker_generators(PluckerKind::Incidence { k: 2, l: 1 }, 3).unwrap();
        // X_{12}⊗Y_3 - X_{13}⊗Y_2 + X_{23}⊗Y_1 up to sign, repeated
        assert!(inc.iter().all(|q| q.terms().count() == 3));
    }

    #[test]
    fn degree2_lattices() {
        let c = degree2_comparison(gr(2), 4).unwrap();
        assert!(c.equal);
        assert_eq!((c.plucker_rank, c.kp_rank), (1, 1));
        let c = degree2_comparison(gr(1), 4).unwrap();
        assert!(c.equal && c.plucker_rank == 0 && c.kp_rank == 0);
        let c = degree2_comparison(gr(2), 5).unwrap();
        assert!(c.equal);
        assert_eq!(c.plucker_rank, 5);
        assert!(incidence_ideal_equal(2, 1, 4).unwrap());
    }

    #[test]
    fn contraction_identity() {
        let n = 5;
        for k in 1..=4 {
            for l in 1..=k {
                for &a in &k_subsets(n, k) {
                    for &b in &k_subsets(n, l) {
                        for d in 1..=l {
                            let (x, y) = contraction_sides(n, a, b, d).unwrap();
                            assert!(x.sub(&y).is_zero(), "{:?} {:?} {d}", elems(a), elems(b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn omega_reconstruction_small() {
        for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 5)] {
            assert_eq!(omega_reconstruction_mismatch(k, n).unwrap(), None, "k={k} n={n}");
        }
    }

    #[test]
    fn plucker_quadrics_vanish_on_points() {
        let pts = enumerate_points::<3>(4, 2, DEFAULT_POINT_BUDGET).unwrap();
        let gens = plucker_generators(gr(2), 4).unwrap();
        for b in &pts {
            let tau = plucker_vector(b);
            assert!(gens.iter().all(|q| q.eval(&tau, &tau).is_zero()));
        }
        let inc = plucker_generators(PluckerKind::Incidence { k: 2, l: 1 }, 3).unwrap();
        let u = SubspaceBasis::<3>::from_rows(3, vec![vec![Fp::new(1), Fp::new(0), Fp::new(2)], vec![Fp::new(0), Fp::new(1), Fp::new(1)]]).unwrap();
        let line = SubspaceBasis::<3>::from_rows(3, vec![vec![Fp::new(1), Fp::new(1), Fp::new(0)]]).unwrap();
        let (x, y) = (plucker_vector(&u), plucker_vector(&line));
        assert!(inc.iter().all(|q| q.eval(&x, &y).is_zero()));
        let off = SubspaceBasis::<3>::from_rows(3, vec![vec![Fp::new(0), Fp::new(0), Fp::new(1)]]).unwrap();
        assert!(inc.iter().any(|q| !q.eval(&x, &plucker_vector(&off)).is_zero()));
    }

    #[test]
    fn gt_generators_examples() {
        let zero = LinearOperator::<BigInt>::zero(4);
        let g = gt_generators(&zero, 2).unwrap();
        assert!(g.shuffle.is_empty());
        let j4 = LinearOperator::<BigInt>::jordan(&[4]);
        let g = gt_generators(&j4, 2).unwrap();
        let pr = rank_over_q(&g.plucker, g.space.dim()).unwrap();
        let all = rank_over_q(&g.all(), g.space.dim()).unwrap();
        assert!(all > pr);
        assert!(gt_generators(&LinearOperator::<BigInt>::identity(3), 1).is_err());
    }

    #[test]
    fn identity_plus_nilpotent_lattices() {
        let n = 4;
        let id = LinearOperator::<BigInt>::identity(n);
        for blocks in [vec![4], vec![2, 2], vec![3, 1]] {
            let t = LinearOperator::<BigInt>::jordan(&blocks);
            for k in 1..n {
                let space = Degree2Space::new(gr(k), n).unwrap();
                let wi = space.vectors(&omega_t_forms(&id, k).unwrap());
                let mut a = space.vectors(&omega_t_forms(&id.add(&t), k).unwrap());
                a.extend(wi.iter().cloned());
                let mut b = space.vectors(&omega_t_forms(&t, k).unwrap());
                b.extend(wi);
                assert!(lattice_equal(&a, &b).unwrap(), "{blocks:?} k={k}");
            }
        }
    }

    #[test]
    fn shuffle_identity_modulo_plucker() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, k) in [(4, 2), (5, 2), (5, 3)] {
            let space = Degree2Space::new(gr(k), n).unwrap();
            let pl = plucker_generators(gr(k), n).unwrap();
            let pv = space.vectors(&pl);
            let rows = (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect()).collect();
            let t = LinearOperator::from_rows(rows).unwrap();
            for d in 1..=k {
                for q in shuffle_identity_defect(d, &t, k).unwrap() {
                    let mut with = pv.clone();
                    with.push(space.vector(&q));
                    assert!(lattice_equal(&pv, &with).unwrap());
                }
            }
        }
    }

    #[test]
    fn omega_t_form_matches_direct_evaluation() {
        let n = 4;
        let t = LinearOperator::<BigInt>::jordan(&[3, 1]);
        let tau = ExtTensor::basis(n, &[1, 2]).unwrap().add(&ExtTensor::basis(n, &[3, 4]).unwrap());
        let direct = omega_t_apply(1, &t, &tau.tensor(&tau));
        let forms = forms_of_bilinear(gr(2), n, |s, u| {
            omega_t(1, &t, &ExtTensor::from_mask(n, s), &ExtTensor::from_mask(n, u))
        })
        .unwrap();
        for ((a, b), c) in direct.terms() {
            assert_eq!(&forms[&(a, b)].eval(&tau, &tau), c);
        }
    }
}
