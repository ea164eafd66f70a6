use super::IntPoly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

fn cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial Φ_n, obtained by dividing `t^n - 1` by Φ_d
/// for every proper divisor `d` of `n`. Results are memoized.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = IntPoly::monomial(BigInt::one(), n as usize) - IntPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = p.div_rem_monic(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    cache().lock().unwrap().insert(n, p.clone());
    p
}

/// An element of ℤ[t]/(Φ_n), i.e. of ℤ[ζ] for a primitive `n`-th root of unity ζ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u64,
    residue: IntPoly,
}

/// Reduce `p` modulo Φ_n.
pub fn cyclotomic_reduce(p: &IntPoly, n: u64) -> Cyclotomic {
    let (_, r) = p.div_rem_monic(&cyclotomic_polynomial(n));
    Cyclotomic { n, residue: r }
}

impl Cyclotomic {
    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn residue(&self) -> &IntPoly {
        &self.residue
    }

    /// The value as a rational integer, if the residue is constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.residue.as_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn check(&self, o: &Cyclotomic) -> Result<()> {
        if self.n != o.n {
            return Err(Error::RingMismatch(format!(
                "cyclotomic orders {} and {}",
                self.n, o.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(o)?;
        Ok(cyclotomic_reduce(&(self.residue.clone() + o.residue.clone()), self.n))
    }

    pub fn try_sub(&self, o: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(o)?;
        Ok(cyclotomic_reduce(&(self.residue.clone() - o.residue.clone()), self.n))
    }

    pub fn try_mul(&self, o: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(o)?;
        Ok(cyclotomic_reduce(&(self.residue.clone() * o.residue.clone()), self.n))
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            residue: -self.residue.clone(),
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod Phi_{}", self.residue, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), IntPoly::from_i64s(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), IntPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), IntPoly::from_i64s(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn reductions() {
        assert_eq!(cyclotomic_reduce(&IntPoly::t(), 2).as_integer(), Some(BigInt::from(-1)));
        assert_eq!(
            cyclotomic_reduce(&IntPoly::from_i64s(&[0, 0, 0, 1]), 3).as_integer(),
            Some(BigInt::from(1))
        );
        assert!(cyclotomic_reduce(&IntPoly::from_i64s(&[1, 0, 1]), 4).is_zero());
    }

    #[test]
    fn geometric_sum_vanishes_at_prime_order() {
        for n in [2u64, 3, 5, 7, 11, 13] {
            let p = IntPoly::from_i64s(&vec![1; n as usize]);
            assert!(cyclotomic_reduce(&p, n).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn mixed_orders_are_rejected() {
        let a = cyclotomic_reduce(&IntPoly::t(), 3);
        let b = cyclotomic_reduce(&IntPoly::t(), 4);
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(_))));
        let c = a.try_mul(&a).unwrap().try_mul(&a).unwrap();
        assert_eq!(c.as_integer(), Some(BigInt::one()));
        assert!(a.try_sub(&a).unwrap().is_zero());
        assert_eq!(a.neg().try_add(&a).unwrap().as_integer(), Some(BigInt::zero()));
    }
}
