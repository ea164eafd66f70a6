use crate::exact::{Field, Fp};
use crate::exterior::{k_subsets, elems, t_shuffle, ExtTensor, LinearOperator};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Largest enumeration accepted without an explicit override.
pub const DEFAULT_POINT_BUDGET: u128 = 2_000_000;

/// A `k`-dimensional subspace of `𝔽_P^n` in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceBasis<const P: u64> {
    n: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<Fp<P>>>,
}

/// Row-reduces in place and returns the pivot columns.
fn rref<const P: u64>(rows: &mut Vec<Vec<Fp<P>>>, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero");
        for x in rows[r].iter_mut() {
            *x = *x * inv;
        }
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = *x - f * *y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn rank<const P: u64>(mut rows: Vec<Vec<Fp<P>>>, n: usize) -> usize {
    rref(&mut rows, n).len()
}

impl<const P: u64> SubspaceBasis<P> {
    /// The row space of `rows`, which must be linearly independent.
    pub fn from_rows(n: usize, mut rows: Vec<Vec<Fp<P>>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("rows must have length {n}")));
        }
        let k = rows.len();
        let pivots = rref(&mut rows, n);
        if pivots.len() != k {
            return Err(Error::Precondition("rows are linearly dependent".into()));
        }
        Ok(SubspaceBasis { n, pivots, rows })
    }

    /// `span{e_i : i ∈ set}` (1-based).
    pub fn coordinate(n: usize, set: &[usize]) -> Result<Self> {
        let rows = set
            .iter()
            .map(|&i| (1..=n).map(|j| if i == j { Fp::one() } else { Fp::zero() }).collect())
            .collect();
        Self::from_rows(n, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns, 0-based.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Fp<P>>] {
        &self.rows
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Fp<P>]) -> Option<Vec<Fp<P>>> {
        let c: Vec<Fp<P>> = self.pivots.iter().map(|&p| v[p]).collect();
        let r = self.residual(v);
        r.iter().all(|x| x.is_zero()).then_some(c)
    }

    /// `v − Σ_m v[pivot_m] u_m`: the projection along `U` onto the span of the
    /// non-pivot coordinate vectors.
    pub fn residual(&self, v: &[Fp<P>]) -> Vec<Fp<P>> {
        let mut out = v.to_vec();
        for (m, &p) in self.pivots.iter().enumerate() {
            let f = v[p];
            if !f.is_zero() {
                for (x, y) in out.iter_mut().zip(&self.rows[m]) {
                    *x = *x - f * *y;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Fp<P>]) -> bool {
        self.residual(v).iter().all(|x| x.is_zero())
    }

    /// Text form `[[1,0,2],[0,1,1]]`.
    pub fn to_text(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.value().to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

impl<const P: u64> std::fmt::Debug for SubspaceBasis<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// The Gaussian binomial `[n choose k]_p`.
pub fn gaussian_binomial(n: usize, k: usize, p: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let p = BigInt::from(p);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1u32;
        den *= p.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

fn apply<const P: u64>(t: &LinearOperator<Fp<P>>, v: &[Fp<P>]) -> Vec<Fp<P>> {
    t.rows()
        .iter()
        .map(|row| row.iter().zip(v).fold(Fp::zero(), |acc, (a, b)| acc + *a * *b))
        .collect()
}

/// All points of `Gr(k, n)(𝔽_P)` in canonical order: pivot patterns
/// lexicographically, then free entries lexicographically.
pub fn enumerate_points<const P: u64>(n: usize, k: usize, budget: u128) -> Result<Vec<SubspaceBasis<P>>> {
    if k > n || n > crate::exterior::MAX_DIM {
        return Err(Error::Precondition(format!("need k ≤ n ≤ {}, got k = {k}, n = {n}", crate::exterior::MAX_DIM)));
    }
    let estimate = gaussian_binomial(n, k, P);
    let est: u128 = estimate.try_into().unwrap_or(u128::MAX);
    if est > budget {
        return Err(Error::Budget {
            what: format!("Gr({k},{n})(F_{P})"),
            estimate: est,
            budget,
        });
    }
    let shards: Vec<Vec<SubspaceBasis<P>>> = k_subsets(n, k)
        .into_par_iter()
        .map(|mask| {
            let pivots: Vec<usize> = elems(mask).iter().map(|i| i - 1).collect();
            // free slots: (row, col) with col > pivot and col not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| ((p + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = (P as usize).pow(free.len() as u32);
            let mut out = Vec::with_capacity(total);
            let mut digits = vec![0u64; free.len()];
            for _ in 0..total {
                let mut rows = vec![vec![Fp::<P>::zero(); n]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = Fp::one();
                }
                for (&(r, c), &x) in free.iter().zip(&digits) {
                    rows[r][c] = Fp::new(x as i64);
                }
                out.push(SubspaceBasis {
                    n,
                    pivots: pivots.clone(),
                    rows,
                });
                for dgt in digits.iter_mut().rev() {
                    *dgt += 1;
                    if *dgt < P {
                        break;
                    }
                    *dgt = 0;
                }
            }
            out
        })
        .collect();
    Ok(shards.into_iter().flatten().collect())
}

/// `row_1 ∧ ⋯ ∧ row_k`.
pub fn plucker_vector<const P: u64>(b: &SubspaceBasis<P>) -> ExtTensor<Fp<P>> {
    b.rows
        .iter()
        .fold(ExtTensor::one(b.n), |acc, r| acc.wedge(&ExtTensor::vector(r)))
}

pub fn is_invariant<const P: u64>(b: &SubspaceBasis<P>, t: &LinearOperator<Fp<P>>) -> bool {
    b.rows.iter().all(|r| b.contains(&apply(t, r)))
}

fn check_dim<const P: u64>(t: &LinearOperator<Fp<P>>, n: usize) -> Result<()> {
    if t.n() != n {
        return Err(Error::DimensionMismatch(format!("operator on dimension {}, points in dimension {n}", t.n())));
    }
    Ok(())
}

/// Points `U` with `TU ⊆ U`.
pub fn gt_points<const P: u64>(t: &LinearOperator<Fp<P>>, k: usize, budget: u128) -> Result<Vec<SubspaceBasis<P>>> {
    let n = t.n();
    let pts = enumerate_points::<P>(n, k, budget)?;
    check_dim(t, n)?;
    Ok(pts.into_par_iter().filter(|b| is_invariant(b, t)).collect())
}

/// Points whose Plücker vector is killed by every `sh^T_d`, `1 ≤ d ≤ k`.
pub fn st_points<const P: u64>(t: &LinearOperator<Fp<P>>, k: usize, budget: u128) -> Result<Vec<SubspaceBasis<P>>> {
    let n = t.n();
    let pts = enumerate_points::<P>(n, k, budget)?;
    Ok(pts
        .into_par_iter()
        .filter(|b| {
            let tau = plucker_vector(b);
            (1..=k).all(|d| t_shuffle(d, t, &tau).is_zero())
        })
        .collect())
}

/// Dimension of the Zariski tangent space of `𝒢^T` at `U`: solutions
/// `φ : U → W` (`W` spanned by the non-pivot coordinate vectors) of
/// `π(T φ̃ − φ̃ T)|_U = 0`.
pub fn tangent_dim_gt<const P: u64>(u: &SubspaceBasis<P>, t: &LinearOperator<Fp<P>>) -> Result<usize> {
    check_dim(t, u.n)?;
    if !is_invariant(u, t) {
        return Err(Error::Precondition(format!("{} is not T-invariant", u.to_text())));
    }
    let (n, k) = (u.n, u.k());
    let comp: Vec<usize> = (0..n).filter(|c| !u.pivots.contains(c)).collect();
    // a[i][m]: coefficient of u_m in T u_i
    let a: Vec<Vec<Fp<P>>> = u.rows.iter().map(|r| u.coordinates(&apply(t, r)).expect("invariant")).collect();
    let mut columns = Vec::new();
    for ip in 0..k {
        for &c in &comp {
            // φ̃(u_ip) = e_c, all other basis vectors to 0
            let mut col = Vec::with_capacity(k * comp.len());
            for i in 0..k {
                let mut e = vec![Fp::<P>::zero(); n];
                if i == ip {
                    for (r, row) in t.rows().iter().enumerate() {
                        e[r] = e[r] + row[c];
                    }
                }
                e[c] = e[c] - a[i][ip];
                let res = u.residual(&e);
                col.extend(comp.iter().map(|&j| res[j]));
            }
            columns.push(col);
        }
    }
    Ok(k * comp.len() - rank(columns, k * (n - k)))
}

/// Whether the lift `φ̃` (images of the echelon rows) satisfies the tangent
/// condition `π(T φ̃(u_i) − φ̃(T u_i)) = 0` for all rows.
pub fn tangent_direction_holds<const P: u64>(u: &SubspaceBasis<P>, t: &LinearOperator<Fp<P>>, phi: &[Vec<Fp<P>>]) -> bool {
    if phi.len() != u.k() || !is_invariant(u, t) {
        return false;
    }
    u.rows.iter().zip(phi).all(|(r, image)| {
        let a = u.coordinates(&apply(t, r)).expect("invariant");
        let mut e = apply(t, image);
        for (m, am) in a.iter().enumerate() {
            for (x, y) in e.iter_mut().zip(&phi[m]) {
                *x = *x - *am * *y;
            }
        }
        u.residual(&e).iter().all(|x| x.is_zero())
    })
}

/// Number of `points` inside the affine chart of `U` (those whose Plücker
/// coordinate at `U`'s pivot set is nonzero).
pub fn chart_count<const P: u64>(u: &SubspaceBasis<P>, points: &[SubspaceBasis<P>]) -> usize {
    let key = u.pivots.iter().fold(0u32, |m, &p| m | 1 << p);
    points.iter().filter(|w| !plucker_vector(w).coeff_mask(key).is_zero()).count()
}

/// `⌊log_P(#points of 𝒢^T in U's chart)⌋`, the dimension a reduced variety
/// with that many nearby points would be expected to have.
pub fn local_expectation<const P: u64>(u: &SubspaceBasis<P>, gt: &[SubspaceBasis<P>]) -> u32 {
    let c = chart_count(u, gt) as u128;
    let mut e = 0;
    let mut q = P as u128;
    while q <= c {
        e += 1;
        q *= P as u128;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::omega;

    #[test]
    fn point_counts() {
        assert_eq!(enumerate_points::<2>(4, 2, DEFAULT_POINT_BUDGET).unwrap().len(), 35);
        assert_eq!(enumerate_points::<3>(2, 1, DEFAULT_POINT_BUDGET).unwrap().len(), 4);
        assert_eq!(enumerate_points::<5>(2, 2, DEFAULT_POINT_BUDGET).unwrap().len(), 1);
        for (n, k) in [(5, 2), (4, 0), (5, 3), (3, 3)] {
            let pts = enumerate_points::<3>(n, k, DEFAULT_POINT_BUDGET).unwrap();
            assert_eq!(BigInt::from(pts.len()), gaussian_binomial(n, k, 3));
            let mut sorted = pts.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), pts.len());
        }
        assert!(matches!(enumerate_points::<5>(7, 3, 1000), Err(Error::Budget { .. })));
    }

    #[test]
    fn plucker_vectors_are_decomposable() {
        let e12 = plucker_vector(&SubspaceBasis::<2>::coordinate(4, &[1, 2]).unwrap());
        assert_eq!(e12.sorted_terms(), vec![(vec![1, 2], Fp::one())]);
        for b in enumerate_points::<2>(4, 2, DEFAULT_POINT_BUDGET).unwrap() {
            let tau = plucker_vector(&b);
            assert!((1..=2).all(|d| omega(d, &tau, &tau).is_zero()));
        }
    }

    #[test]
    fn jordan_block_points() {
        let j4 = LinearOperator::<Fp<2>>::jordan(&[4]);
        let gt = gt_points(&j4, 2, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(gt, vec![SubspaceBasis::coordinate(4, &[1, 2]).unwrap()]);
        assert_eq!(st_points(&j4, 2, DEFAULT_POINT_BUDGET).unwrap(), gt);
        let zero = LinearOperator::<Fp<2>>::zero(4);
        assert_eq!(gt_points(&zero, 2, DEFAULT_POINT_BUDGET).unwrap().len(), 35);
        assert_eq!(st_points(&zero, 2, DEFAULT_POINT_BUDGET).unwrap().len(), 35);
    }

    #[test]
    fn tangent_dimensions() {
        let zero = LinearOperator::<Fp<2>>::zero(4);
        let u = SubspaceBasis::<2>::coordinate(4, &[1, 2]).unwrap();
        assert_eq!(tangent_dim_gt(&u, &zero).unwrap(), 4);
        for n in 2..=5 {
            let j = LinearOperator::<Fp<2>>::jordan(&[n]);
            for k in 1..n {
                let set: Vec<usize> = (1..=k).collect();
                let u = SubspaceBasis::<2>::coordinate(n, &set).unwrap();
                assert!(tangent_dim_gt(&u, &j).unwrap() >= 1);
                // e_k ↦ e_{k+1}
                let mut phi = vec![vec![Fp::zero(); n]; k];
                phi[k - 1][k] = Fp::one();
                assert!(tangent_direction_holds(&u, &j, &phi));
                phi[k - 1][k] = Fp::zero();
                if k >= 2 {
                    phi[k - 2][k] = Fp::one();
                    assert!(!tangent_direction_holds(&u, &j, &phi));
                }
            }
            let all: Vec<usize> = (1..=n).collect();
            assert_eq!(tangent_dim_gt(&SubspaceBasis::<2>::coordinate(n, &all).unwrap(), &j).unwrap(), 0);
        }
        let j = LinearOperator::<Fp<2>>::jordan(&[3]);
        assert!(tangent_dim_gt(&SubspaceBasis::<2>::coordinate(3, &[2]).unwrap(), &j).is_err());
    }

    #[test]
    fn tangent_of_zero_operator_is_everything() {
        let zero = LinearOperator::<Fp<3>>::zero(5);
        for u in enumerate_points::<3>(5, 2, DEFAULT_POINT_BUDGET).unwrap().iter().step_by(37) {
            assert_eq!(tangent_dim_gt(u, &zero).unwrap(), 6);
        }
        let pts = enumerate_points::<3>(5, 2, DEFAULT_POINT_BUDGET).unwrap();
        // the big cell of Gr(2,5) over F_3 has 3^6 points
        assert_eq!(local_expectation(&pts[0], &pts), 6);
    }
}
