use crate::exact::Ring;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse multivariate polynomial; exponent vectors carry no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct MPoly<R: Ring> {
    terms: BTreeMap<Vec<u16>, R>,
}

fn trim(mut e: Vec<u16>) -> Vec<u16> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl<R: Ring> MPoly<R> {
    pub fn monomial(exp: Vec<u16>, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exp), c);
        }
        MPoly { terms }
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(Vec::new(), c)
    }

    /// The variable with index `i` (0-based).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, R::one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u16>, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[u16]) -> R {
        self.terms
            .get(&trim(exp.to_vec()))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    /// The lexicographically greatest exponent and its coefficient.
    pub fn leading(&self) -> Option<(&Vec<u16>, &R)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    pub fn add_term(&mut self, exp: Vec<u16>, c: R) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(trim(exp)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn map_exponents(&self, f: impl Fn(&[u16]) -> Vec<u16>) -> Self {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            out.add_term(f(e), x.clone());
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MPoly<S> {
        let mut out = MPoly::zero();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), f(x));
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Render with variables named `<name><index+1>`.
    pub fn display_with(&self, name: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("{name}{}", i + 1)
                    } else {
                        format!("{name}{}^{x}", i + 1)
                    }
                })
                .collect();
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<R: Ring> fmt::Display for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl<R: Ring> fmt::Debug for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R: Ring> Add for MPoly<R> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (e, c) in o.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<R: Ring> Neg for MPoly<R> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<R: Ring> Sub for MPoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Mul for MPoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut acc: HashMap<Vec<u16>, R> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let len = a.len().max(b.len());
                let e: Vec<u16> = (0..len)
                    .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
                    .collect();
                let p = x.clone() * y.clone();
                match acc.get_mut(&e) {
                    Some(c) => *c = c.clone() + p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        MPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<R: Ring> Zero for MPoly<R> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for MPoly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Ring for MPoly<R> {
    fn from_i64(v: i64) -> Self {
        Self::constant(R::from_i64(v))
    }
    fn characteristic() -> u64 {
        R::characteristic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = MPoly<BigInt>;

    #[test]
    fn arithmetic_and_display() {
        let x = P::var(0);
        let y = P::var(1);
        let f = (x.clone() + y.clone()) * (x.clone() - y.clone());
        assert_eq!(f, x.pow(2) - y.pow(2));
        assert_eq!(f.to_string(), "x1^2 - x2^2");
        assert_eq!((y.scale(&BigInt::from(2)) - x.pow(2)).display_with("h"), "-h1^2 + 2*h2");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::from_i64(-3).to_string(), "-3");
        assert_eq!(f.total_degree(), Some(2));
        assert_eq!(f.coeff(&[0, 2, 0]), BigInt::from(-1));
        assert!((f.clone() - f).is_zero());
    }
}
