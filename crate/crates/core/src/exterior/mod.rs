//! Finite-dimensional exterior algebra `∧^• V`, `V = span(e_1, …, e_n)`.
//!
//! Basis wedges `e_S` are stored as bitmasks (bit `i-1` for `e_i`); the public
//! API speaks 1-based index lists. [`psi_mask`] and [`psi_star_mask`] are the
//! only places where wedge signs are produced.

mod omega;
mod shuffle;
pub mod sample;
pub mod signs;

pub use omega::{eta_t, omega, omega_apply, omega_star_apply, omega_t, omega_t_apply, two_tensor_prop_rhs};
pub use shuffle::{sym_operator, t_shuffle, t_shuffle_basis_free, t_shuffle_subsets, wedge_power};

use crate::exact::Ring;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 24;

pub fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

pub fn elems(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// All `k`-subsets of `[n]` as masks, in lexicographic order of their element lists.
pub fn k_subsets(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, cur: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n {
            if n - i + 1 < k {
                break;
            }
            rec(i + 1, n, k - 1, cur | 1 << (i - 1), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, 0, &mut out);
    }
    out
}

/// `e_i ∧ e_S`: `Some((negative, S ∪ {i}))` or `None`.
pub fn psi_mask(i: usize, s: u32) -> Option<(bool, u32)> {
    let bit = 1u32 << (i - 1);
    if s & bit != 0 {
        return None;
    }
    Some(((s & (bit - 1)).count_ones() % 2 == 1, s | bit))
}

/// Interior product with `e*_i` on `e_S`.
pub fn psi_star_mask(i: usize, s: u32) -> Option<(bool, u32)> {
    let bit = 1u32 << (i - 1);
    if s & bit == 0 {
        return None;
    }
    Some(((s & (bit - 1)).count_ones() % 2 == 1, s & !bit))
}

/// `ψ_I = ψ_{i_1} ⋯ ψ_{i_r}` (or the starred product) on one basis wedge;
/// `ψ_{i_r}` acts first.
pub fn clifford_mask(i: u32, star: bool, s: u32) -> Option<(bool, u32)> {
    let mut neg = false;
    let mut cur = s;
    for idx in elems(i).into_iter().rev() {
        let (n, r) = if star {
            psi_star_mask(idx, cur)?
        } else {
            psi_mask(idx, cur)?
        };
        neg ^= n;
        cur = r;
    }
    Some((neg, cur))
}

fn signed<R: Ring>(neg: bool, c: R) -> R {
    if neg {
        -c
    } else {
        c
    }
}

/// A homogeneous element of `∧^k V`.
#[derive(Clone, PartialEq)]
pub struct ExtTensor<R: Ring> {
    n: usize,
    k: usize,
    coeffs: BTreeMap<u32, R>,
}

impl<R: Ring> ExtTensor<R> {
    pub fn zero(n: usize, k: usize) -> Self {
        assert!(n <= MAX_DIM && k <= n);
        ExtTensor {
            n,
            k,
            coeffs: BTreeMap::new(),
        }
    }

    /// `e_{i_1} ∧ ⋯ ∧ e_{i_k}` for a strictly increasing index list.
    pub fn basis(n: usize, set: &[usize]) -> Result<Self> {
        if set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::Precondition(format!("{set:?} is not an increasing subset of [{n}]")));
        }
        Ok(Self::from_mask(n, mask_of(set)))
    }

    pub fn from_mask(n: usize, s: u32) -> Self {
        let mut t = Self::zero(n, s.count_ones() as usize);
        t.coeffs.insert(s, R::one());
        t
    }

    /// The scalar `1 ∈ ∧^0 V`.
    pub fn one(n: usize) -> Self {
        Self::from_mask(n, 0)
    }

    /// A vector of `V` from its coordinates.
    pub fn vector(coords: &[R]) -> Self {
        let mut t = Self::zero(coords.len(), 1);
        for (i, c) in coords.iter().enumerate() {
            t.add_term(1 << i, c.clone());
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, set: &[usize]) -> R {
        self.coeff_mask(mask_of(set))
    }

    pub fn coeff_mask(&self, s: u32) -> R {
        self.coeffs.get(&s).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &R)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    /// Terms with index lists, in lexicographic order of the lists.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, R)> {
        let mut v: Vec<(Vec<usize>, R)> = self.terms().map(|(s, c)| (elems(s), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn add_term(&mut self, s: u32, c: R) {
        debug_assert_eq!(s.count_ones() as usize, self.k);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(s) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let x = e.get().clone() + c;
                if x.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = x;
                }
            }
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!((self.n, self.k), (o.n, o.k), "mismatched exterior tensors");
    }

    /// Sum; a zero operand is accepted whatever its recorded degree.
    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        self.check(o);
        let mut out = self.clone();
        for (s, c) in o.terms() {
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-R::one()))
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for (s, x) in self.terms() {
            out.add_term(s, x.clone() * c.clone());
        }
        out
    }

    /// Apply a map defined on basis wedges.
    pub fn map_basis(&self, k: usize, f: impl Fn(u32) -> Option<(bool, u32)>) -> Self {
        let mut out = Self::zero(self.n, k);
        for (s, c) in self.terms() {
            if let Some((neg, r)) = f(s) {
                out.add_term(r, signed(neg, c.clone()));
            }
        }
        out
    }

    /// `self ∧ o`.
    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = Self::zero(self.n, self.k + o.k);
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                if let Some((neg, r)) = clifford_mask(a, false, b) {
                    out.add_term(r, signed(neg, x.clone() * y.clone()));
                }
            }
        }
        out
    }

    pub fn tensor(&self, o: &Self) -> TwoTensor<R> {
        assert_eq!(self.n, o.n);
        let mut out = TwoTensor::zero(self.n, self.k, o.k);
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                out.add_term(a, b, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<R: Ring> fmt::Display for ExtTensor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(s, c)| {
                let name: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                format!("({c})e{{{}}}", name.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> fmt::Debug for ExtTensor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `∧^a V ⊗ ∧^b V`.
#[derive(Clone, PartialEq)]
pub struct TwoTensor<R: Ring> {
    n: usize,
    a: usize,
    b: usize,
    coeffs: BTreeMap<(u32, u32), R>,
}

impl<R: Ring> TwoTensor<R> {
    pub fn zero(n: usize, a: usize, b: usize) -> Self {
        TwoTensor {
            n,
            a,
            b,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, left: &[usize], right: &[usize]) -> R {
        self.coeffs
            .get(&(mask_of(left), mask_of(right)))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &R)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn add_term(&mut self, l: u32, r: u32, c: R) {
        debug_assert_eq!(l.count_ones() as usize, self.a);
        debug_assert_eq!(r.count_ones() as usize, self.b);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry((l, r)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let x = e.get().clone() + c;
                if x.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = x;
                }
            }
        }
    }

    /// Sum; a zero operand is accepted whatever its recorded degrees.
    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        assert_eq!((self.n, self.a, self.b), (o.n, o.a, o.b), "mismatched two-tensors");
        let mut out = self.clone();
        for ((l, r), c) in o.terms() {
            out.add_term(l, r, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.n, self.a, self.b);
        for ((l, r), x) in self.terms() {
            out.add_term(l, r, x.clone() * c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-R::one()))
    }
}

impl<R: Ring> fmt::Debug for TwoTensor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R: Ring> fmt::Display for TwoTensor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let name = |s: u32| elems(s).iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&(l, r), c)| format!("({c})e{{{}}}⊗e{{{}}}", name(l), name(r)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `ψ_I` (or `ψ*_I`) on a tensor, `I` a 1-based increasing list.
pub fn clifford<R: Ring>(i: &[usize], star: bool, v: &ExtTensor<R>) -> ExtTensor<R> {
    let m = mask_of(i);
    let k = if star {
        v.k.checked_sub(i.len())
    } else {
        Some(v.k + i.len()).filter(|&k| k <= v.n)
    };
    match k {
        Some(k) => v.map_basis(k, |s| clifford_mask(m, star, s)),
        None => ExtTensor::zero(v.n, 0),
    }
}

/// `T: V → V` with `T e_j = Σ_i T[i][j] e_i`.
#[derive(Clone, PartialEq)]
pub struct LinearOperator<R: Ring> {
    n: usize,
    m: Vec<Vec<R>>,
}

impl<R: Ring> LinearOperator<R> {
    pub fn zero(n: usize) -> Self {
        LinearOperator {
            n,
            m: vec![vec![R::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut t = Self::zero(n);
        for i in 0..n {
            t.m[i][i] = R::one();
        }
        t
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("operator matrix is not square".into()));
        }
        Ok(LinearOperator { n, m: rows })
    }

    /// Nilpotent Jordan matrix with the given block sizes: inside each block
    /// `e_1 ↦ 0` and `e_i ↦ e_{i-1}`.
    pub fn jordan(blocks: &[usize]) -> Self {
        let n = blocks.iter().sum();
        let mut t = Self::zero(n);
        let mut start = 0;
        for &b in blocks {
            for i in start + 1..start + b {
                t.m[i - 1][i] = R::one();
            }
            start += b;
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `T[i][j]` (0-based).
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.m[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.m[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<R>] {
        &self.m
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut t = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                t.m[i][j] = self.m[i][j].clone() + o.m[i][j].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut t = self.clone();
        for row in &mut t.m {
            for x in row.iter_mut() {
                *x = x.clone() * c.clone();
            }
        }
        t
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = R::zero();
                for k in 0..self.n {
                    acc = acc + self.m[i][k].clone() * o.m[k][j].clone();
                }
                t.m[i][j] = acc;
            }
        }
        t
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n).is_zero()
    }

    /// `T e_j` as a vector (0-based column).
    pub fn image_of_basis(&self, j: usize) -> ExtTensor<R> {
        let coords: Vec<R> = (0..self.n).map(|i| self.m[i][j].clone()).collect();
        ExtTensor::vector(&coords)
    }

    /// Entrywise ring change.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> LinearOperator<S> {
        LinearOperator {
            n: self.n,
            m: self.m.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }
}

impl<R: Ring> fmt::Debug for LinearOperator<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// `T e_{i_1} ∧ ⋯ ∧ T e_{i_d}` for the subset `s`.
pub(crate) fn wedge_of_images<R: Ring>(t: &LinearOperator<R>, s: u32) -> ExtTensor<R> {
    let mut acc = ExtTensor::one(t.n);
    for j in elems(s).into_iter().rev() {
        acc = t.image_of_basis(j - 1).wedge(&acc);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    type E = ExtTensor<BigInt>;

    fn e(n: usize, s: &[usize]) -> E {
        E::basis(n, s).unwrap()
    }

    #[test]
    fn documented_clifford() {
        assert_eq!(clifford(&[1], false, &e(3, &[2])), e(3, &[1, 2]));
        assert_eq!(clifford(&[2], true, &e(3, &[1, 2])), e(3, &[1]).scale(&(-1).into()));
        assert!(clifford(&[1], false, &e(3, &[1, 3])).is_zero());
        assert_eq!(clifford(&[1, 2], true, &e(3, &[1, 2])), E::one(3).scale(&(-1).into()));
    }

    #[test]
    fn finite_clifford_relations() {
        for n in 1..=6 {
            for s in 0..(1u32 << n) {
                let v = E::from_mask(n, s);
                for i in 1..=n {
                    for j in 1..=n {
                        let pp = clifford(&[i], false, &clifford(&[j], false, &v));
                        let qq = clifford(&[j], false, &clifford(&[i], false, &v));
                        assert!(pp.add(&qq).is_zero());
                        let pp = clifford(&[i], true, &clifford(&[j], true, &v));
                        let qq = clifford(&[j], true, &clifford(&[i], true, &v));
                        assert!(pp.add(&qq).is_zero());
                        let a = clifford(&[i], false, &clifford(&[j], true, &v));
                        let b = clifford(&[j], true, &clifford(&[i], false, &v));
                        let sum = a.add(&b);
                        if i == j {
                            assert_eq!(sum, v);
                        } else {
                            assert!(sum.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subsets_and_wedges() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(elems(k_subsets(4, 2)[1]), vec![1, 3]);
        assert_eq!(k_subsets(3, 0), vec![0]);
        assert!(k_subsets(2, 3).is_empty());
        assert_eq!(e(4, &[2]).wedge(&e(4, &[1])), e(4, &[1, 2]).scale(&(-1).into()));
        assert!(E::basis(3, &[2, 1]).is_err());
        let j = LinearOperator::<BigInt>::jordan(&[2, 1]);
        assert!(j.is_nilpotent());
        assert_eq!(j.get(0, 1), &BigInt::one());
        assert_eq!(wedge_of_images(&LinearOperator::identity(3), 0b101), e(3, &[1, 3]));
    }
}
