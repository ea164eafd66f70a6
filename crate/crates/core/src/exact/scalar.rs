use super::{cyclotomic_reduce, Cyclotomic, IntPoly, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// A scalar tagged with its ring role.
///
/// Arithmetic between different roles (or different primes, or different
/// cyclotomic orders) is rejected with [`Error::RingMismatch`].
#[derive(Clone, PartialEq, Eq)]
pub enum ExactScalar {
    Rational(Rational),
    PrimeField { value: u64, p: u64 },
    IntPoly(IntPoly),
    Cyclotomic(Cyclotomic),
}

impl ExactScalar {
    pub fn rational(num: i64, den: i64) -> Self {
        ExactScalar::Rational(Rational::new(num.into(), den.into()))
    }

    pub fn prime_field(v: i64, p: u64) -> Self {
        ExactScalar::PrimeField {
            value: v.rem_euclid(p as i64) as u64,
            p,
        }
    }

    pub fn cyclotomic(poly: &IntPoly, n: u64) -> Self {
        ExactScalar::Cyclotomic(cyclotomic_reduce(poly, n))
    }

    pub fn role(&self) -> String {
        match self {
            ExactScalar::Rational(_) => "Q".into(),
            ExactScalar::PrimeField { p, .. } => format!("F_{p}"),
            ExactScalar::IntPoly(_) => "Z[t]".into(),
            ExactScalar::Cyclotomic(c) => format!("Z[t]/Phi_{}", c.order()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_zero(),
            ExactScalar::PrimeField { value, .. } => *value == 0,
            ExactScalar::IntPoly(p) => p.is_zero(),
            ExactScalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    fn mismatch(&self, o: &Self) -> Error {
        Error::RingMismatch(format!("{} with {}", self.role(), o.role()))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        use ExactScalar::*;
        Ok(match (self, o) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (PrimeField { value: a, p }, PrimeField { value: b, p: q }) if p == q => PrimeField {
                value: (a + b) % p,
                p: *p,
            },
            (IntPoly(a), IntPoly(b)) => IntPoly(a.clone() + b.clone()),
            (Cyclotomic(a), Cyclotomic(b)) => Cyclotomic(a.try_add(b)?),
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        use ExactScalar::*;
        Ok(match (self, o) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (PrimeField { value: a, p }, PrimeField { value: b, p: q }) if p == q => PrimeField {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            (IntPoly(a), IntPoly(b)) => IntPoly(a.clone() * b.clone()),
            (Cyclotomic(a), Cyclotomic(b)) => Cyclotomic(a.try_mul(b)?),
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn neg(&self) -> Self {
        use ExactScalar::*;
        match self {
            Rational(a) => Rational(-a),
            PrimeField { value, p } => PrimeField {
                value: (p - value) % p,
                p: *p,
            },
            IntPoly(a) => IntPoly(-a.clone()),
            Cyclotomic(a) => Cyclotomic(a.neg()),
        }
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    /// The one element of the same role.
    pub fn one_like(&self) -> Self {
        use ExactScalar::*;
        match self {
            Rational(_) => Rational(super::Rational::one()),
            PrimeField { p, .. } => PrimeField { value: 1 % p, p: *p },
            IntPoly(_) => IntPoly(super::IntPoly::one()),
            Cyclotomic(c) => ExactScalar::cyclotomic(&super::IntPoly::one(), c.order()),
        }
    }

    pub fn from_integer_like(&self, v: &BigInt) -> Self {
        use ExactScalar::*;
        match self {
            Rational(_) => Rational(super::Rational::from_integer(v.clone())),
            PrimeField { p, .. } => {
                let r = v.mod_floor(&BigInt::from(*p));
                PrimeField {
                    value: u64::try_from(r).unwrap(),
                    p: *p,
                }
            }
            IntPoly(_) => IntPoly(super::IntPoly::constant(v.clone())),
            Cyclotomic(c) => ExactScalar::cyclotomic(&super::IntPoly::constant(v.clone()), c.order()),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{r}"),
            ExactScalar::PrimeField { value, .. } => write!(f, "{value}"),
            ExactScalar::IntPoly(p) => write!(f, "{p}"),
            ExactScalar::Cyclotomic(c) => write!(f, "{}", c.residue()),
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.role(), self)
    }
}
