use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::from(1);
        }
        m
    }

    /// Build from rows of equal length; `cols` is needed for the empty case.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incremental row-style Hermite normal form.
///
/// Rows are inserted one at a time; the builder keeps at most one row per pivot
/// column and only performs unimodular row operations, so the ℤ-span is
/// preserved exactly.
#[derive(Clone, Debug)]
pub struct HnfBuilder {
    cols: usize,
    pivots: Vec<Option<Vec<BigInt>>>,
}

impl HnfBuilder {
    pub fn new(cols: usize) -> Self {
        HnfBuilder {
            cols,
            pivots: vec![None; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) -> Result<()> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a lattice of rank {}",
                v.len(),
                self.cols
            )));
        }
        let mut c = 0;
        loop {
            while c < self.cols && v[c].is_zero() {
                c += 1;
            }
            if c == self.cols {
                return Ok(());
            }
            match &mut self.pivots[c] {
                None => {
                    if v[c].is_negative() {
                        for x in v.iter_mut() {
                            *x = -std::mem::take(x);
                        }
                    }
                    self.pivots[c] = Some(v);
                    return Ok(());
                }
                Some(b) => {
                    let a = b[c].clone();
                    let x = v[c].clone();
                    if x.is_multiple_of(&a) {
                        let q = &x / &a;
                        for j in c..self.cols {
                            let t = &q * &b[j];
                            v[j] -= t;
                        }
                    } else {
                        let e = a.extended_gcd(&x);
                        let (g, s, t) = (e.gcd, e.x, e.y);
                        let (ag, xg) = (&a / &g, &x / &g);
                        for j in c..self.cols {
                            let nb = &s * &b[j] + &t * &v[j];
                            let nv = &ag * &v[j] - &xg * &b[j];
                            b[j] = nb;
                            v[j] = nv;
                        }
                        if b[c].is_negative() {
                            for y in b.iter_mut() {
                                *y = -std::mem::take(y);
                            }
                        }
                    }
                    c += 1;
                }
            }
        }
    }

    /// The echelon row with pivot in column `c`, if any.
    pub fn pivot_row(&self, c: usize) -> Option<&[BigInt]> {
        self.pivots.get(c)?.as_deref()
    }

    /// Integer coordinates `(pivot column, multiplier)` of `v` in the current
    /// echelon basis, or `None` when `v` is outside the lattice.
    pub fn express(&self, v: &[BigInt]) -> Option<Vec<(usize, BigInt)>> {
        if v.len() != self.cols {
            return None;
        }
        let mut v = v.to_vec();
        let mut out = Vec::new();
        for c in 0..self.cols {
            if v[c].is_zero() {
                continue;
            }
            let b = self.pivots[c].as_ref()?;
            if !v[c].is_multiple_of(&b[c]) {
                return None;
            }
            let q = &v[c] / &b[c];
            for j in c..self.cols {
                let t = &q * &b[j];
                v[j] -= t;
            }
            out.push((c, q));
        }
        Some(out)
    }

    /// The reduced normal form: nonzero rows in pivot order, entries above each
    /// pivot reduced into `[0, pivot)`.
    pub fn finish(self) -> Vec<Vec<BigInt>> {
        let mut rows: Vec<(usize, Vec<BigInt>)> = self
            .pivots
            .into_iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (c, r)))
            .collect();
        for j in 0..rows.len() {
            let (cj, pivot_row) = (rows[j].0, rows[j].1.clone());
            let p = &pivot_row[cj];
            for i in 0..j {
                let q = rows[i].1[cj].div_floor(p);
                if q.is_zero() {
                    continue;
                }
                for (k, pk) in pivot_row.iter().enumerate().skip(cj) {
                    let t = &q * pk;
                    rows[i].1[k] -= t;
                }
            }
        }
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// Row-style Hermite normal form of `m`, padded with zero rows to the shape of
/// `m`, together with the rank.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, usize) {
    let mut b = HnfBuilder::new(m.cols);
    for i in 0..m.rows {
        b.insert(m.row(i).to_vec()).expect("row length matches");
    }
    let rows = b.finish();
    let rank = rows.len();
    let mut h = IntMatrix::zeros(m.rows.max(rank), m.cols);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            h.entries[i * m.cols + j] = x;
        }
    }
    (h, rank)
}

fn normal_form(vs: &[Vec<BigInt>], cols: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut b = HnfBuilder::new(cols);
    for v in vs {
        b.insert(v.clone())?;
    }
    Ok(b.finish())
}

/// Whether two generating sets span the same sublattice of ℤ^N.
pub fn lattice_equal(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Result<bool> {
    let cols = match a.first().or(b.first()) {
        Some(v) => v.len(),
        None => return Ok(true),
    };
    Ok(normal_form(a, cols)? == normal_form(b, cols)?)
}

/// Rank over ℚ of a family of integer vectors of length `cols`.
pub fn rank_over_q(vs: &[Vec<BigInt>], cols: usize) -> Result<usize> {
    let mut b = HnfBuilder::new(cols);
    for v in vs {
        b.insert(v.clone())?;
    }
    Ok(b.rank())
}

/// Rational coefficients `c` with `Σ c_j gens[j] = target`, if the target lies
/// in the ℚ-span of `gens`.
pub fn solve_in_span(gens: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigRational>> {
    let g = gens.len();
    let rows = target.len();
    // augmented system: one equation per coordinate
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = gens.iter().map(|v| BigRational::from_integer(v[r].clone())).collect();
            row.push(BigRational::from_integer(target[r].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for c in 0..g {
        let Some(p) = (r0..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(r0, p);
        let inv = m[r0][c].recip();
        for x in m[r0].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r0].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != r0 && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r0 += 1;
    }
    if m[r0..].iter().any(|row| !row[g].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); g];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][g].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn membership_with_coordinates() {
        let mut h = HnfBuilder::new(3);
        for r in [[2i64, 4, 0], [0, 3, 6], [2, 1, -6]] {
            h.insert(r.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        }
        let v: Vec<BigInt> = [4i64, 11, 6].iter().map(|&x| BigInt::from(x)).collect();
        let coords = h.express(&v).expect("2·r0 + r1 lies in the lattice");
        let mut acc = vec![BigInt::zero(); 3];
        for (c, q) in coords {
            for (a, b) in acc.iter_mut().zip(h.pivot_row(c).unwrap()) {
                *a += &q * b;
            }
        }
        assert_eq!(acc, v);
        assert!(h.express(&[BigInt::from(1), BigInt::zero(), BigInt::zero()]).is_none());
    }

    #[test]
    fn span_solutions() {
        let gens = vec![iv(&[2, 0, 1]), iv(&[0, 2, 1])];
        let sol = solve_in_span(&gens, &iv(&[1, 1, 1])).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(sol, vec![half.clone(), half]);
        assert!(solve_in_span(&gens, &iv(&[1, 0, 0])).is_none());
        assert_eq!(solve_in_span(&[], &iv(&[0, 0])), Some(vec![]));
    }

    #[test]
    fn documented_normal_forms() {
        let (h, r) = hermite_normal_form(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(r, 2);
        let (h, r) = hermite_normal_form(&IntMatrix::zeros(3, 3));
        assert_eq!(h, IntMatrix::zeros(3, 3));
        assert_eq!(r, 0);
        let (h, r) = hermite_normal_form(&IntMatrix::from_i64_rows(&[&[2, 4], &[0, 3]]));
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[2, 1], &[0, 3]]));
        assert_eq!(r, 2);
    }

    #[test]
    fn documented_lattice_comparisons() {
        assert!(lattice_equal(&[iv(&[1, 0])], &[iv(&[1, 0])]).unwrap());
        assert!(!lattice_equal(&[iv(&[2, 0])], &[iv(&[1, 0])]).unwrap());
        assert!(lattice_equal(&[iv(&[1, 1]), iv(&[0, 2])], &[iv(&[1, -1]), iv(&[0, 2])]).unwrap());
        assert!(matches!(
            lattice_equal(&[iv(&[1, 0])], &[iv(&[1, 0, 0])]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    /// Brute-force oracle: lattice points of the span inside a box, from
    /// small integer combinations of the generators.
    fn box_points(gens: &[Vec<i64>], coef: i64, bound: i64) -> std::collections::BTreeSet<Vec<i64>> {
        let mut out = std::collections::BTreeSet::new();
        let k = gens.len();
        let dim = gens[0].len();
        let width = (2 * coef + 1) as usize;
        for mut idx in 0..width.pow(k as u32) {
            let mut v = vec![0i64; dim];
            for g in gens {
                let c = (idx % width) as i64 - coef;
                idx /= width;
                for j in 0..dim {
                    v[j] += c * g[j];
                }
            }
            if v.iter().all(|x| x.abs() <= bound) {
                out.insert(v);
            }
        }
        out
    }

    #[test]
    fn brute_force_oracle_agrees_on_small_examples() {
        let a = vec![vec![1, 1], vec![0, 2]];
        let b = vec![vec![1, -1], vec![0, 2]];
        let c = vec![vec![1, 1], vec![0, 4]];
        assert_eq!(box_points(&a, 6, 3), box_points(&b, 6, 3));
        assert_ne!(box_points(&a, 6, 3), box_points(&c, 6, 3));
        let to = |g: &Vec<Vec<i64>>| g.iter().map(|r| iv(r)).collect::<Vec<_>>();
        assert!(lattice_equal(&to(&a), &to(&b)).unwrap());
        assert!(!lattice_equal(&to(&a), &to(&c)).unwrap());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r)
        })
    }

    fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows[0].len();
        IntMatrix::from_rows(rows.iter().map(|r| iv(r)).collect(), cols).unwrap()
    }

    proptest! {
        #[test]
        fn hnf_is_idempotent(rows in small_matrix()) {
            let (h, r) = hermite_normal_form(&to_matrix(&rows));
            let (h2, r2) = hermite_normal_form(&h);
            prop_assert_eq!(h, h2);
            prop_assert_eq!(r, r2);
        }

        #[test]
        fn hnf_is_canonical_under_row_operations(rows in small_matrix(), a in -3i64..4, i in 0usize..4, j in 0usize..4) {
            let m = to_matrix(&rows);
            let n = rows.len();
            let (i, j) = (i % n, j % n);
            let mut moved = rows.clone();
            if i != j {
                for c in 0..rows[0].len() {
                    moved[i][c] += a * rows[j][c];
                }
            }
            moved.reverse();
            let (h1, _) = hermite_normal_form(&m);
            let (h2, _) = hermite_normal_form(&to_matrix(&moved));
            prop_assert_eq!(h1, h2);
        }

        #[test]
        fn lattice_equality_is_an_equivalence(a in small_matrix(), b in small_matrix(), c in small_matrix()) {
            let cols = a[0].len();
            let fix = |m: &Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
                m.iter().map(|r| (0..cols).map(|j| BigInt::from(*r.get(j).unwrap_or(&0))).collect()).collect()
            };
            let (a, b, c) = (fix(&a), fix(&b), fix(&c));
            prop_assert!(lattice_equal(&a, &a).unwrap());
            let ab = lattice_equal(&a, &b).unwrap();
            prop_assert_eq!(ab, lattice_equal(&b, &a).unwrap());
            if ab && lattice_equal(&b, &c).unwrap() {
                prop_assert!(lattice_equal(&a, &c).unwrap());
            }
            let mut doubled = a.clone();
            doubled.extend(a.iter().cloned());
            prop_assert!(lattice_equal(&a, &doubled).unwrap());
        }
    }
}
