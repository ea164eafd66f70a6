//! Symmetric functions modeled as symmetric polynomials in as many variables
//! as the degree bound (the stable range), plus Kostka–Foulkes polynomials,
//! their transition matrices, and identities among polynomials in the `h_k`.

mod hseries;
mod kostka;
mod mpoly;

pub use hseries::{
    det_coeffs_principal_nilpotent, h_var, jacobi_trudi_formal, principal_nilpotent_trace,
    toeplitz_minor, toeplitz_minor_formal, twist_in_h_basis, HPoly,
};
pub use kostka::{charge, kf_transition_matrices, kostka_foulkes, reading_word, ssyt, KfMatrices};
pub use mpoly::MPoly;

use crate::exact::{int_to_ring, Ring};
use crate::partitions::Partition;
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

/// A named element of one of the classical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymBasis {
    H(usize),
    E(usize),
    P(usize),
    M(Partition),
    S(Partition),
}

impl SymBasis {
    pub fn degree(&self) -> usize {
        match self {
            SymBasis::H(k) | SymBasis::E(k) | SymBasis::P(k) => *k,
            SymBasis::M(l) | SymBasis::S(l) => l.size(),
        }
    }
}

/// A symmetric polynomial in `nvars` variables of degree at most `degree_bound <= nvars`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly<R: Ring> {
    nvars: usize,
    degree_bound: usize,
    poly: MPoly<R>,
}

fn exponents_of_degree(nvars: usize, k: usize) -> Vec<Vec<u16>> {
    fn rec(nvars: usize, k: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() + 1 == nvars {
            cur.push(k as u16);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=k {
            cur.push(a as u16);
            rec(nvars, k - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, k, &mut Vec::new(), &mut out);
    out
}

fn distinct_arrangements(parts: &[u16], nvars: usize) -> Vec<Vec<u16>> {
    let mut v = parts.to_vec();
    v.resize(nvars, 0);
    v.sort_unstable();
    let mut out = vec![v.clone()];
    loop {
        let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            return out;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
}

impl<R: Ring> SymPoly<R> {
    fn check_range(nvars: usize, degree_bound: usize) -> Result<()> {
        if degree_bound > nvars {
            return Err(Error::Precondition(format!(
                "degree bound {degree_bound} exceeds variable count {nvars}"
            )));
        }
        Ok(())
    }

    pub fn zero(nvars: usize, degree_bound: usize) -> Result<Self> {
        Self::check_range(nvars, degree_bound)?;
        Ok(SymPoly {
            nvars,
            degree_bound,
            poly: MPoly::zero(),
        })
    }

    /// Wrap a polynomial, checking degree and symmetry.
    pub fn from_poly(poly: MPoly<R>, nvars: usize, degree_bound: usize) -> Result<Self> {
        Self::check_range(nvars, degree_bound)?;
        if poly.total_degree().unwrap_or(0) > degree_bound {
            return Err(Error::DegreeOverflow(format!(
                "degree {} above bound {degree_bound}",
                poly.total_degree().unwrap_or(0)
            )));
        }
        if poly.terms().any(|(e, _)| e.len() > nvars) {
            return Err(Error::DimensionMismatch("variable index out of range".into()));
        }
        let s = SymPoly {
            nvars,
            degree_bound,
            poly,
        };
        if !s.is_symmetric() {
            return Err(Error::Precondition("polynomial is not symmetric".into()));
        }
        Ok(s)
    }

    pub fn basis(kind: &SymBasis, nvars: usize, degree_bound: usize) -> Result<Self> {
        Self::check_range(nvars, degree_bound)?;
        if kind.degree() > degree_bound {
            return Err(Error::DegreeOverflow(format!(
                "{kind:?} has degree {} above bound {degree_bound}",
                kind.degree()
            )));
        }
        let mut poly = MPoly::zero();
        match kind {
            SymBasis::H(k) => {
                for e in exponents_of_degree(nvars, *k) {
                    poly.add_term(e, R::one());
                }
            }
            SymBasis::E(k) => {
                for e in exponents_of_degree(nvars, *k) {
                    if e.iter().all(|&x| x <= 1) {
                        poly.add_term(e, R::one());
                    }
                }
            }
            SymBasis::P(k) => {
                if *k == 0 {
                    poly = MPoly::constant(R::from_i64(nvars as i64));
                } else {
                    for i in 0..nvars {
                        let mut e = vec![0u16; i + 1];
                        e[i] = *k as u16;
                        poly.add_term(e, R::one());
                    }
                }
            }
            SymBasis::M(l) => {
                if l.len() <= nvars {
                    let parts: Vec<u16> = l.parts().iter().map(|&x| x as u16).collect();
                    for e in distinct_arrangements(&parts, nvars) {
                        poly.add_term(e, R::one());
                    }
                }
            }
            SymBasis::S(l) => {
                poly = SchurCache::new(nvars).schur(l);
            }
        }
        Ok(SymPoly {
            nvars,
            degree_bound,
            poly,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn poly(&self) -> &MPoly<R> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, exp: &[u16]) -> R {
        self.poly.coeff(exp)
    }

    /// Invariance under every adjacent transposition of variables.
    pub fn is_symmetric(&self) -> bool {
        self.poly.terms().all(|(e, c)| {
            (0..self.nvars.saturating_sub(1)).all(|i| {
                let mut f = e.clone();
                f.resize(self.nvars, 0);
                f.swap(i, i + 1);
                self.poly.coeff(&f) == *c
            })
        })
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars || self.degree_bound != o.degree_bound {
            return Err(Error::DimensionMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.nvars, self.degree_bound, o.nvars, o.degree_bound
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        Ok(SymPoly {
            poly: self.poly.clone() + o.poly.clone(),
            ..self.clone()
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        Ok(SymPoly {
            poly: self.poly.clone() - o.poly.clone(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        SymPoly {
            poly: self.poly.scale(c),
            ..self.clone()
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let d = self.poly.total_degree().unwrap_or(0) + o.poly.total_degree().unwrap_or(0);
        if d > self.degree_bound && !self.is_zero() && !o.is_zero() {
            return Err(Error::DegreeOverflow(format!(
                "product degree {d} above bound {}",
                self.degree_bound
            )));
        }
        Ok(SymPoly {
            poly: self.poly.clone() * o.poly.clone(),
            ..self.clone()
        })
    }

    /// `f(x_1^n, x_2^n, …)`.
    pub fn frobenius_twist(&self, n: usize) -> Result<Self> {
        let d = self.poly.total_degree().unwrap_or(0);
        if n * d > self.degree_bound {
            return Err(Error::DegreeOverflow(format!(
                "twist by {n} of degree {d} exceeds bound {}",
                self.degree_bound
            )));
        }
        Ok(SymPoly {
            poly: self
                .poly
                .map_exponents(|e| e.iter().map(|&x| x * n as u16).collect()),
            ..self.clone()
        })
    }

    /// Coefficients in the Schur basis.
    pub fn schur_expand(&self) -> Result<BTreeMap<Partition, R>> {
        let mut rest = self.poly.clone();
        let mut out = BTreeMap::new();
        let mut cache = SchurCache::new(self.nvars);
        while let Some((e, c)) = rest.leading() {
            if e.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Precondition(format!(
                    "leading exponent {e:?} is not a partition; input is not symmetric"
                )));
            }
            let lam = Partition::new(e.iter().map(|&x| x as usize).collect())?;
            let c = c.clone();
            let s = cache.schur(&lam);
            if s.leading().map(|(l, _)| l) != Some(e) {
                return Err(Error::Fault(format!("Schur polynomial {lam} has wrong leading term")));
            }
            rest = rest - s.scale(&c);
            out.insert(lam, c);
        }
        Ok(out)
    }
}

/// Schur polynomials in a fixed number of variables, built from formal
/// Jacobi–Trudi determinants with memoized products of `h`'s.
struct SchurCache<R: Ring> {
    nvars: usize,
    h: HashMap<usize, MPoly<R>>,
    hmono: HashMap<Vec<u16>, MPoly<R>>,
}

impl<R: Ring> SchurCache<R> {
    fn new(nvars: usize) -> Self {
        SchurCache {
            nvars,
            h: HashMap::new(),
            hmono: HashMap::new(),
        }
    }

    fn h(&mut self, k: usize) -> MPoly<R> {
        let nvars = self.nvars;
        self.h
            .entry(k)
            .or_insert_with(|| {
                let mut p = MPoly::zero();
                for e in exponents_of_degree(nvars, k) {
                    p.add_term(e, R::one());
                }
                p
            })
            .clone()
    }

    /// `∏ h_{i+1}^{e_i}`.
    fn h_monomial(&mut self, e: &[u16]) -> MPoly<R> {
        if let Some(p) = self.hmono.get(e) {
            return p.clone();
        }
        let Some(i) = e.iter().rposition(|&x| x > 0) else {
            return MPoly::constant(R::one());
        };
        let mut lower = e.to_vec();
        lower[i] -= 1;
        let mut lower = lower;
        while lower.last() == Some(&0) {
            lower.pop();
        }
        let p = self.h_monomial(&lower) * self.h(i + 1);
        self.hmono.insert(e.to_vec(), p.clone());
        p
    }

    fn schur(&mut self, l: &Partition) -> MPoly<R> {
        if l.len() > self.nvars {
            return MPoly::zero();
        }
        let jt = jacobi_trudi_formal(l);
        let mut out = MPoly::zero();
        for (e, c) in jt.terms() {
            out = out + self.h_monomial(e).scale(&int_to_ring(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type S = SymPoly<BigInt>;

    fn b(kind: SymBasis, d: usize) -> S {
        S::basis(&kind, d, d).unwrap()
    }

    fn expand(f: &S) -> BTreeMap<Partition, i64> {
        f.schur_expand()
            .unwrap()
            .into_iter()
            .map(|(k, v)| (k, i64::try_from(v).unwrap()))
            .collect()
    }

    #[test]
    fn documented_bases() {
        for d in 1..5 {
            assert_eq!(b(SymBasis::S(part![1]), d), b(SymBasis::H(1), d));
            assert_eq!(b(SymBasis::M(part![1]), d), b(SymBasis::H(1), d));
        }
        let h1 = b(SymBasis::H(1), 4);
        let h2 = b(SymBasis::H(2), 4);
        assert_eq!(b(SymBasis::S(part![1, 1]), 4), h1.mul(&h1).unwrap().sub(&h2).unwrap());
        assert_eq!(b(SymBasis::M(part![1, 1]), 4), b(SymBasis::E(2), 4));
        assert!(matches!(
            S::basis(&SymBasis::H(5), 4, 4),
            Err(Error::DegreeOverflow(_))
        ));
        assert!(S::basis(&SymBasis::H(1), 2, 3).is_err());
    }

    #[test]
    fn documented_expansions() {
        assert_eq!(expand(&b(SymBasis::H(2), 3)), [(part![2], 1)].into());
        assert_eq!(expand(&b(SymBasis::E(2), 3)), [(part![1, 1], 1)].into());
        assert_eq!(expand(&b(SymBasis::P(2), 3)), [(part![2], 1), (part![1, 1], -1)].into());
    }

    #[test]
    fn non_symmetric_rejected() {
        let p = MPoly::<BigInt>::var(1);
        assert!(S::from_poly(p.clone(), 3, 3).is_err());
        let s = SymPoly {
            nvars: 3,
            degree_bound: 3,
            poly: p,
        };
        assert!(s.schur_expand().is_err());
    }

    #[test]
    fn documented_twists() {
        let d = 6;
        for n in 2..=3 {
            for k in 1..=d / n {
                let e = b(SymBasis::E(k), d).frobenius_twist(n).unwrap();
                let parts = vec![n; k];
                assert_eq!(e, b(SymBasis::M(Partition::new(parts).unwrap()), d));
            }
        }
        assert_eq!(b(SymBasis::P(2), 6).frobenius_twist(3).unwrap(), b(SymBasis::P(6), 6));
        assert_eq!(b(SymBasis::H(1), 4).frobenius_twist(2).unwrap(), b(SymBasis::P(2), 4));
        assert!(b(SymBasis::H(3), 4).frobenius_twist(2).is_err());
    }

    #[test]
    fn jacobi_trudi_consistency() {
        for m in 0..=7 {
            for l in Partition::all_of_size(m) {
                let s = b(SymBasis::S(l.clone()), m.max(1));
                assert_eq!(expand(&s), [(l, 1)].into());
            }
        }
    }

    #[test]
    fn stable_range() {
        for l in Partition::all_of_size(4) {
            let small = S::basis(&SymBasis::S(l.clone()), 4, 4).unwrap();
            let big = S::basis(&SymBasis::S(l.clone()), 6, 4).unwrap();
            for (e, c) in small.poly().terms() {
                assert_eq!(&big.coeff(e), c);
            }
            assert_eq!(expand(&big), expand(&small));
        }
    }

    #[test]
    fn murnaghan_nakayama_hooks() {
        // p_k = Σ_{a+b+1=k} (-1)^b s_{(a+1, 1^b)}
        for k in 1..=6 {
            let got = expand(&b(SymBasis::P(k), k));
            let want: BTreeMap<Partition, i64> = (0..k)
                .map(|bb| {
                    let mut parts = vec![k - bb];
                    parts.extend(std::iter::repeat_n(1, bb));
                    (Partition::new(parts).unwrap(), if bb % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn rational_coefficients() {
        let p2 = SymPoly::<BigRational>::basis(&SymBasis::P(2), 3, 3).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let e = p2.scale(&half).schur_expand().unwrap();
        assert_eq!(e[&part![2]], half);
    }
}
