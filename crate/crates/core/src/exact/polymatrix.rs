use super::IntPoly;
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

/// A square matrix of integer polynomials, indexed by `0..n` in their natural order.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![IntPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, IntPoly::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> IntPoly) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: IntPoly) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.n).all(|i| {
            self.get(i, i).is_one() && (0..i).all(|j| self.get(i, j).is_zero())
        })
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, o.n);
        PolyMatrix::from_fn(self.n, |i, j| {
            (0..self.n).fold(IntPoly::zero(), |acc, k| {
                acc + self.get(i, k).clone() * o.get(k, j).clone()
            })
        })
    }

    /// The submatrix on the given (ordered) row and column index lists, as a
    /// rectangular table.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<IntPoly>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Square submatrix on one index list.
    pub fn principal(&self, idx: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            let r: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Inverse over ℤ[t] of an upper unitriangular matrix, by back substitution.
pub fn invert_unitriangular(m: &PolyMatrix) -> Result<PolyMatrix> {
    if !m.is_upper_unitriangular() {
        return Err(Error::Precondition(
            "matrix is not unitriangular in its index order".into(),
        ));
    }
    let n = m.size();
    let mut x = PolyMatrix::identity(n);
    for j in 0..n {
        for i in (0..j).rev() {
            let mut acc = IntPoly::zero();
            for k in i + 1..=j {
                acc = acc + m.get(i, k).clone() * x.get(k, j).clone();
            }
            x.set(i, j, -acc);
        }
    }
    Ok(x)
}
