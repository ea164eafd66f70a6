//! The charge-graded fermionic Fock space and its dual.
//!
//! Basis vectors are Maya diagrams. Every operator here is evaluated by
//! composing the two primitive maps [`Beads::psi`] and [`Beads::psi_star`] in
//! the order the operator is written, so there is exactly one sign routine.
//!
//! Two labelings by partitions are in use:
//! * [`FockVector::of_partition`]: `s_λ` on the diagram named by `λ` under
//!   [`Maya::of_partition`] (stored μ = λ^T); the straightening algorithm and
//!   n-regularity use this one;
//! * [`FockVector::sym`]: the symmetric-function dictionary, where `s_λ` sits
//!   on the diagram whose stored μ is `λ` itself. Under it `alpha(d)` is
//!   multiplication by `p_d` and [`monomial_operator`] is multiplication by `m_λ`.

use crate::exact::{sign, Ring};
use crate::partitions::{Maya, Partition};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// A single Clifford generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Psi(i64),
    PsiStar(i64),
}

/// A product of generators; the rightmost one acts first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CliffordWord(pub Vec<Gen>);

/// Explicit beads below `tail`, every position `>= tail` occupied.
#[derive(Clone, Debug)]
struct Beads {
    explicit: Vec<i64>,
    tail: i64,
}

impl Beads {
    fn of(m: &Maya) -> Beads {
        Beads {
            explicit: m.beads(m.mu().len()),
            tail: m.tail_start(),
        }
    }

    fn extend_to(&mut self, new_tail: i64) {
        while self.tail < new_tail {
            self.explicit.push(self.tail);
            self.tail += 1;
        }
    }

    fn occupied(&self, i: i64) -> bool {
        i >= self.tail || self.explicit.binary_search(&i).is_ok()
    }

    /// `e_i ∧ -`: returns whether the sign is negative, or `None` on zero.
    fn psi(&mut self, i: i64) -> Option<bool> {
        if i >= self.tail {
            return None;
        }
        match self.explicit.binary_search(&i) {
            Ok(_) => None,
            Err(pos) => {
                self.explicit.insert(pos, i);
                Some(pos % 2 == 1)
            }
        }
    }

    /// Contraction removing `e_i`.
    fn psi_star(&mut self, i: i64) -> Option<bool> {
        if i >= self.tail {
            self.extend_to(i + 1);
        }
        match self.explicit.binary_search(&i) {
            Ok(pos) => {
                self.explicit.remove(pos);
                Some(pos % 2 == 1)
            }
            Err(_) => None,
        }
    }

    fn apply(&mut self, g: Gen) -> Option<bool> {
        match g {
            Gen::Psi(i) => self.psi(i),
            Gen::PsiStar(i) => self.psi_star(i),
        }
    }

    fn maya(&self) -> Maya {
        Maya::from_beads(&self.explicit, self.tail)
    }
}

/// Apply a word to one basis diagram: `Some((negative, result))` or `None` for zero.
pub fn apply_word_to_basis(word: &CliffordWord, m: &Maya) -> Option<(bool, Maya)> {
    let mut b = Beads::of(m);
    let mut neg = false;
    for g in word.0.iter().rev() {
        neg ^= b.apply(*g)?;
    }
    Some((neg, b.maya()))
}

/// A finitely supported vector of fixed charge, primal or dual.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<R: Ring> {
    charge: i64,
    dual: bool,
    coeffs: BTreeMap<Maya, R>,
}

impl<R: Ring> FockVector<R> {
    pub fn zero(charge: i64, dual: bool) -> Self {
        FockVector {
            charge,
            dual,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(m: Maya, dual: bool) -> Self {
        let mut v = Self::zero(m.charge(), dual);
        v.coeffs.insert(m, R::one());
        v
    }

    pub fn vacuum(dual: bool) -> Self {
        Self::basis(Maya::vacuum(), dual)
    }

    /// `s_λ` (or `s*_λ`) on the diagram named by `λ`.
    pub fn of_partition(p: &Partition, dual: bool) -> Self {
        Self::basis(Maya::of_partition(p), dual)
    }

    /// `s_λ` (or `s*_λ`) in the symmetric-function dictionary.
    pub fn sym(p: &Partition, dual: bool) -> Self {
        Self::basis(Maya::from_mu(0, p.clone()), dual)
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn is_dual(&self) -> bool {
        self.dual
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

    pub fn terms(&self) -> impl Iterator<Item = (&Maya, &R)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &Maya) -> R {
        self.coeffs.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of the basis vector named by a partition (charge 0).
    pub fn coeff_of_partition(&self, p: &Partition) -> R {
        self.coeff(&Maya::of_partition(p))
    }

    /// Coefficients keyed by partition labels, for charge-0 vectors.
    pub fn by_partition(&self) -> BTreeMap<Partition, R> {
        self.coeffs
            .iter()
            .map(|(m, c)| (m.partition().expect("charge-0 vector"), c.clone()))
            .collect()
    }

    /// Coefficients keyed by the symmetric-function dictionary.
    pub fn by_sym(&self) -> BTreeMap<Partition, R> {
        self.coeffs
            .iter()
            .map(|(m, c)| (m.mu().clone(), c.clone()))
            .collect()
    }

    pub fn add_term(&mut self, m: Maya, c: R) {
        debug_assert_eq!(m.charge(), self.charge);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dual, o.dual, "adding primal and dual vectors");
        if self.is_zero() {
            return o.clone();
        }
        let mut out = self.clone();
        for (m, c) in &o.coeffs {
            assert_eq!(m.charge(), self.charge, "adding vectors of different charge");
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.charge, self.dual);
        for (m, x) in &self.coeffs {
            out.add_term(m.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-R::one()))
    }

    /// Drop basis vectors of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.retain(|m, _| m.degree() <= max_degree);
        out
    }

    /// Apply a charge-shifting map given on basis vectors.
    fn map_basis(&self, dcharge: i64, f: impl Fn(&Maya) -> Vec<(bool, Maya)>) -> Self {
        let mut out = Self::zero(self.charge + dcharge, self.dual);
        for (m, c) in &self.coeffs {
            for (neg, r) in f(m) {
                out.add_term(r, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|(m, c)| json!({"maya": m, "coefficient": c.to_string()}))
                .collect(),
        )
    }
}

pub fn psi<R: Ring>(i: i64, v: &FockVector<R>) -> FockVector<R> {
    apply_word(&CliffordWord(vec![Gen::Psi(i)]), v)
}

pub fn psi_star<R: Ring>(i: i64, v: &FockVector<R>) -> FockVector<R> {
    apply_word(&CliffordWord(vec![Gen::PsiStar(i)]), v)
}

pub fn apply_word<R: Ring>(word: &CliffordWord, v: &FockVector<R>) -> FockVector<R> {
    let dcharge = word
        .0
        .iter()
        .map(|g| match g {
            Gen::Psi(_) => 1,
            Gen::PsiStar(_) => -1,
        })
        .sum();
    v.map_basis(dcharge, |m| apply_word_to_basis(word, m).into_iter().collect())
}

/// Word `ψ_{j_d+δ} ⋯ ψ_{j_1+δ} ψ*_{j_1} ⋯ ψ*_{j_d}` for increasing `j`.
fn shift_word(js: &[i64], deltas: &[i64]) -> CliffordWord {
    let mut w: Vec<Gen> = js
        .iter()
        .zip(deltas)
        .rev()
        .map(|(&j, &dl)| Gen::Psi(j + dl))
        .collect();
    w.extend(js.iter().map(|&j| Gen::PsiStar(j)));
    CliffordWord(w)
}

/// All ways of moving `d` distinct beads of `m` by `delta` each, summed as the
/// word `ψ_{j_d+δ} ⋯ ψ_{j_1+δ} ψ*_{j_1} ⋯ ψ*_{j_d}` over `j_1 < ⋯ < j_d`.
fn uniform_shift(m: &Maya, d: usize, delta: i64) -> Vec<(bool, Maya)> {
    let mut b = Beads::of(m);
    if delta < 0 {
        b.extend_to(b.tail + (-delta) * d as i64);
    }
    let beads = b.explicit.clone();
    let mut out = Vec::new();
    let mut chosen: Vec<i64> = Vec::with_capacity(d);
    // A bead may move iff its target is free or vacated by another chosen bead.
    // Targets of left moves lie below the bead, so scan increasing; right moves
    // scan decreasing.
    fn rec(
        order: &[i64],
        start: usize,
        d: usize,
        delta: i64,
        b: &Beads,
        chosen: &mut Vec<i64>,
        out: &mut Vec<(bool, Maya)>,
        m: &Maya,
    ) {
        if chosen.len() == d {
            let mut js = chosen.clone();
            js.sort_unstable();
            let word = shift_word(&js, &vec![delta; d]);
            if let Some(r) = apply_word_to_basis(&word, m) {
                out.push(r);
            }
            return;
        }
        for k in start..order.len() {
            let j = order[k];
            let t = j + delta;
            if b.occupied(t) && !chosen.contains(&t) {
                continue;
            }
            chosen.push(j);
            rec(order, k + 1, d, delta, b, chosen, out, m);
            chosen.pop();
        }
    }
    let order: Vec<i64> = if delta < 0 {
        beads
    } else {
        beads.into_iter().rev().collect()
    };
    rec(&order, 0, d, delta, &b, &mut chosen, &mut out, m);
    out
}

/// The shuffle operator `sh_d^{(n)}`: `d` beads move right by `n`.
pub fn shuffle<R: Ring>(n: usize, d: usize, v: &FockVector<R>) -> FockVector<R> {
    assert!(n >= 1 && d >= 1);
    v.map_basis(0, |m| uniform_shift(m, d, n as i64))
}

/// The adjoint shuffle operator: `d` beads move left by `n`.
pub fn shuffle_adjoint<R: Ring>(n: usize, d: usize, w: &FockVector<R>) -> FockVector<R> {
    assert!(n >= 1 && d >= 1);
    w.map_basis(0, |m| uniform_shift(m, d, -(n as i64)))
}

/// `α_d = Σ_j ψ_{j-d} ψ*_j`.
pub fn alpha<R: Ring>(d: usize, w: &FockVector<R>) -> FockVector<R> {
    assert!(d >= 1);
    w.map_basis(0, |m| uniform_shift(m, 1, -(d as i64)))
}

/// Distinct permutations of a multiset, in lexicographic order.
fn distinct_permutations(parts: &[usize]) -> Vec<Vec<usize>> {
    let mut v: Vec<usize> = parts.to_vec();
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

/// `M(m_λ)`: for every increasing tuple of beads `i_1 < ⋯ < i_ℓ` and every
/// distinct rearrangement `α` of `λ`, the word
/// `ψ_{i_ℓ-α_ℓ} ⋯ ψ_{i_1-α_1} ψ*_{i_1} ⋯ ψ*_{i_ℓ}`.
pub fn monomial_operator<R: Ring>(lambda: &Partition, w: &FockVector<R>) -> FockVector<R> {
    if lambda.is_empty() {
        return w.clone();
    }
    let perms = distinct_permutations(lambda.parts());
    let l = lambda.len();
    w.map_basis(0, |m| {
        let mut b = Beads::of(m);
        b.extend_to(b.tail + lambda.size() as i64);
        let beads = b.explicit.clone();
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..l).collect();
        if beads.len() < l {
            return out;
        }
        loop {
            let js: Vec<i64> = idx.iter().map(|&k| beads[k]).collect();
            for a in &perms {
                let targets: Vec<i64> = js.iter().zip(a).map(|(&j, &x)| j - x as i64).collect();
                let valid = targets.iter().enumerate().all(|(t, &x)| {
                    (!b.occupied(x) || js.contains(&x)) && !targets[..t].contains(&x)
                });
                if !valid {
                    continue;
                }
                let deltas: Vec<i64> = a.iter().map(|&x| -(x as i64)).collect();
                if let Some(r) = apply_word_to_basis(&shift_word(&js, &deltas), m) {
                    out.push(r);
                }
            }
            // next combination
            let Some(pos) = (0..l).rev().find(|&p| idx[p] < beads.len() - l + p) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..l {
                idx[q] = idx[q - 1] + 1;
            }
        }
        out
    })
}

/// The pairing `⟨s*_λ, s_μ⟩ = δ_{λμ}` extended bilinearly.
pub fn pairing<R: Ring>(dual: &FockVector<R>, primal: &FockVector<R>) -> R {
    assert!(dual.is_dual() && !primal.is_dual());
    dual.terms()
        .filter_map(|(m, c)| primal.coeffs.get(m).map(|x| c.clone() * x.clone()))
        .fold(R::zero(), |a, b| a + b)
}

/// All charge-0 basis diagrams of degree at most `max_degree`.
pub fn basis_up_to(max_degree: usize) -> Vec<Maya> {
    (0..=max_degree)
        .flat_map(Partition::all_of_size)
        .map(|p| Maya::from_mu(0, p))
        .collect()
}

/// `±1` as a ring element.
pub fn unit<R: Ring>(negative: bool) -> R {
    sign(negative)
}
