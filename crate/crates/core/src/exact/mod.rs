//! Exact scalar rings and integer linear algebra.
//!
//! Computations are generic over [`Ring`]; the concrete roles are
//! [`Rational`], [`Fp`], [`IntPoly`] (integer polynomials in `t`) and
//! [`Cyclotomic`] residues. [`ExactScalar`] is the dynamically tagged form used
//! at serialization boundaries, where mixing roles is rejected.

mod cyclotomic;
mod fp;
mod matrix;
mod poly;
mod polymatrix;
mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_reduce, Cyclotomic};
pub use fp::Fp;
pub use matrix::{hermite_normal_form, lattice_equal, rank_over_q, solve_in_span, HnfBuilder, IntMatrix};
pub use poly::IntPoly;
pub use polymatrix::{invert_unitriangular, PolyMatrix};
pub use scalar::ExactScalar;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// A commutative ring with exact arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Characteristic of the ring (0 for rings containing ℤ).
    fn characteristic() -> u64 {
        0
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Multiply a ring element by an integer.
pub fn scale<R: Ring>(x: &R, k: i64) -> R {
    x.clone() * R::from_i64(k)
}

/// `(-1)^e` as a ring element.
pub fn sign<R: Ring>(negative: bool) -> R {
    if negative {
        -R::one()
    } else {
        R::one()
    }
}

/// Convert an integer into any ring (through its residue when the characteristic is positive).
pub fn int_to_ring<R: Ring>(x: &BigInt) -> R {
    if let Ok(v) = i64::try_from(x) {
        return R::from_i64(v);
    }
    let p = R::characteristic();
    if p > 0 {
        let r = x.mod_floor_u64(p);
        return R::from_i64(r as i64);
    }
    let (_, digits) = x.abs().to_u32_digits();
    let base = R::from_i64(1 << 32);
    let mut acc = R::zero();
    for d in digits.iter().rev() {
        acc = acc * base.clone() + R::from_i64(*d as i64);
    }
    if x.is_negative() {
        -acc
    } else {
        acc
    }
}

/// Determinant over any commutative ring, without division (subset dynamic programming).
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(n <= 24, "determinant too large");
    let mut f: Vec<R> = vec![R::zero(); 1 << n];
    f[0] = R::one();
    for mask in 0usize..(1 << n) {
        if f[mask].is_zero() {
            continue;
        }
        let r = mask.count_ones() as usize;
        if r == n {
            continue;
        }
        for c in 0..n {
            if mask & (1 << c) != 0 || m[r][c].is_zero() {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let term = f[mask].clone() * m[r][c].clone();
            let next = mask | (1 << c);
            f[next] = if above % 2 == 1 {
                f[next].clone() - term
            } else {
                f[next].clone() + term
            };
        }
    }
    f[(1 << n) - 1].clone()
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let r = self.mod_floor(&BigInt::from(p));
        u64::try_from(r).expect("residue fits")
    }
}
