use super::MPoly;
use crate::exact::{determinant, IntPoly, PolyMatrix, Ring};
use crate::partitions::{Maya, Partition};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Integer polynomials in formal generators `h_1, h_2, …`; variable `i` is `h_{i+1}`.
pub type HPoly = MPoly<BigInt>;

/// `h_k` as a formal generator (`h_0 = 1`).
pub fn h_var<R: Ring>(k: usize) -> MPoly<R> {
    if k == 0 {
        MPoly::one()
    } else {
        MPoly::var(k - 1)
    }
}

fn h_or_zero<R: Ring>(k: i64) -> MPoly<R> {
    if k < 0 {
        MPoly::zero()
    } else {
        h_var(k as usize)
    }
}

/// `det(h_{λ_i - i + j})` in the formal generators.
pub fn jacobi_trudi_formal(l: &Partition) -> HPoly {
    let n = l.len();
    let m: Vec<Vec<HPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| h_or_zero(l.part(i) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    determinant(&m)
}

/// Rows: the beads of `m` below its tail; columns `0, 1, …`; entry `h_{column - bead}`.
fn toeplitz_rows(m: &Maya) -> Result<Vec<i64>> {
    if m.charge() != 0 {
        return Err(Error::Precondition(format!("toeplitz minor needs charge 0, got {}", m.charge())));
    }
    Ok(m.beads(m.mu().len()))
}

/// The minor of the upper-triangular Toeplitz matrix `(h_{j-i})` on rows given by
/// the beads of `m` and columns `0, 1, 2, …`, reduced to its finite part.
/// `hvals[i]` is the value of `h_{i+1}`; later generators are zero.
pub fn toeplitz_minor<R: Ring>(hvals: &[R], m: &Maya) -> Result<R> {
    let rows = toeplitz_rows(m)?;
    let h = |k: i64| -> R {
        if k == 0 {
            R::one()
        } else if k < 0 || k as usize > hvals.len() {
            R::zero()
        } else {
            hvals[k as usize - 1].clone()
        }
    };
    let mat: Vec<Vec<R>> = rows
        .iter()
        .map(|&b| (0..rows.len() as i64).map(|j| h(j - b)).collect())
        .collect();
    Ok(determinant(&mat))
}

/// [`toeplitz_minor`] with the `h`'s left formal.
pub fn toeplitz_minor_formal(m: &Maya) -> Result<HPoly> {
    let rows = toeplitz_rows(m)?;
    let mat: Vec<Vec<HPoly>> = rows
        .iter()
        .map(|&b| (0..rows.len() as i64).map(|j| h_or_zero(j - b)).collect())
        .collect();
    Ok(determinant(&mat))
}

/// `tr E^k` for the principal nilpotent `E` of the loop presentation, as a
/// polynomial in `s = t^{-1}`.
pub fn principal_nilpotent_trace(n: usize, k: usize) -> IntPoly {
    let e = PolyMatrix::from_fn(n, |r, c| {
        if c == (r + 1) % n {
            if r + 1 == n {
                IntPoly::t()
            } else {
                IntPoly::one()
            }
        } else {
            IntPoly::zero()
        }
    });
    let mut p = PolyMatrix::identity(n);
    for _ in 0..k {
        p = p.mul(&e);
    }
    (0..n).fold(IntPoly::zero(), |acc, i| acc + p.get(i, i).clone())
}

type Series = Vec<HPoly>;

fn series_mul(a: &Series, b: &Series, top: usize) -> Series {
    let mut out = vec![HPoly::zero(); top + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(top + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, neg) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting the largest value passes over p.len() - pos smaller ones
            out.push((q, neg ^ ((p.len() - pos) % 2 == 1)));
        }
    }
    out
}

/// `det^{(n)}_1, …, det^{(n)}_K`: coefficients of `s^k` in
/// `det(Σ_{k ≤ nK} h_k E^k)`, with `E^k` having entry `s^{⌊(r+k)/n⌋}` at
/// `(r, (r+k) mod n)`.
pub fn det_coeffs_principal_nilpotent(n: usize, kmax: usize) -> Vec<HPoly> {
    assert!(n >= 1);
    let mut a: Vec<Vec<Series>> = vec![vec![vec![HPoly::zero(); kmax + 1]; n]; n];
    for r in 0..n {
        for k in 0..=n * kmax {
            let c = (r + k) % n;
            let s = (r + k) / n;
            if s <= kmax {
                a[r][c][s] = a[r][c][s].clone() + h_var(k);
            }
        }
    }
    let mut total: Series = vec![HPoly::zero(); kmax + 1];
    for (p, neg) in permutations(n) {
        let mut prod: Series = vec![HPoly::zero(); kmax + 1];
        prod[0] = HPoly::one();
        for (r, &c) in p.iter().enumerate() {
            prod = series_mul(&prod, &a[r][c], kmax);
        }
        for (t, x) in total.iter_mut().zip(prod) {
            *t = if neg { t.clone() - x } else { t.clone() + x };
        }
    }
    total.into_iter().skip(1).collect()
}

/// `h_k^{(n)}` as an integer polynomial in the `h_i`, through power sums over ℚ.
pub fn twist_in_h_basis(n: usize, k: usize) -> Result<HPoly> {
    type QPoly = MPoly<BigRational>;
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let top = n * k;
    // Newton: p_j = j h_j - Σ_{i<j} p_i h_{j-i}
    let mut p: Vec<QPoly> = vec![QPoly::zero(); top + 1];
    for j in 1..=top {
        let mut x = h_var::<BigRational>(j).scale(&q(j as i64));
        for i in 1..j {
            x = x - p[i].clone() * h_var(j - i);
        }
        p[j] = x;
    }
    // m H_m = Σ_{i=1}^m p_i^{(n)} H_{m-i},  p_i^{(n)} = p_{in}
    let mut ht: Vec<QPoly> = vec![QPoly::one()];
    for m in 1..=k {
        let mut acc = QPoly::zero();
        for i in 1..=m {
            acc = acc + p[i * n].clone() * ht[m - i].clone();
        }
        ht.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(m))));
    }
    let r = &ht[k];
    if let Some((e, c)) = r.terms().find(|(_, c)| !c.is_integer()) {
        return Err(Error::Fault(format!("non-integral coefficient {c} at {e:?}")));
    }
    Ok(r.map_coeffs(|c| c.to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    fn h(k: usize) -> HPoly {
        h_var(k)
    }

    #[test]
    fn documented_det_coeffs() {
        let d1 = det_coeffs_principal_nilpotent(1, 5);
        for k in 1..=5 {
            assert_eq!(d1[k - 1], h(k));
        }
        let d2 = det_coeffs_principal_nilpotent(2, 1);
        assert_eq!(d2[0], h(2).scale(&2.into()) - h(1).pow(2));
        assert_eq!(d2[0].display_with("h"), "-h1^2 + 2*h2");
    }

    #[test]
    fn traces_of_powers() {
        for n in 1..=4 {
            for k in 0..=12 {
                let want = if k % n == 0 {
                    IntPoly::monomial(BigInt::from(n), k / n)
                } else {
                    IntPoly::zero()
                };
                assert_eq!(principal_nilpotent_trace(n, k), want, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn documented_twists() {
        for k in 1..=5 {
            assert_eq!(twist_in_h_basis(1, k).unwrap(), h(k));
        }
        assert_eq!(twist_in_h_basis(2, 1).unwrap(), h(2).scale(&2.into()) - h(1).pow(2));
        assert_eq!(twist_in_h_basis(2, 2).unwrap(), det_coeffs_principal_nilpotent(2, 2)[1]);
    }

    #[test]
    fn determinant_identity() {
        for n in 2..=4 {
            let det = det_coeffs_principal_nilpotent(n, 5);
            for k in 1..=5 {
                assert_eq!(twist_in_h_basis(n, k).unwrap(), det[k - 1], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn documented_minors() {
        let hv: Vec<BigInt> = (1..=6).map(|i| BigInt::from(i * i + 1)).collect();
        assert_eq!(toeplitz_minor(&hv, &Maya::vacuum()).unwrap(), BigInt::one());
        for k in 1..=6 {
            assert_eq!(toeplitz_minor(&hv, &Maya::from_mu(0, part![k])).unwrap(), hv[k - 1]);
        }
        let want = hv[0].clone() * hv[0].clone() - hv[1].clone();
        assert_eq!(toeplitz_minor(&hv, &Maya::from_mu(0, part![1, 1])).unwrap(), want);
        assert!(toeplitz_minor(&hv, &Maya::from_mu(1, part![])).is_err());
    }

    #[test]
    fn minors_are_jacobi_trudi() {
        for m in 0..=6 {
            for l in Partition::all_of_size(m) {
                let t = toeplitz_minor_formal(&Maya::from_mu(0, l.clone())).unwrap();
                assert_eq!(t, jacobi_trudi_formal(&l), "{l}");
            }
        }
    }

    #[test]
    fn permutation_signs() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        let odd = ps.iter().filter(|(_, n)| *n).count();
        assert_eq!(odd, 3);
        assert!(ps.contains(&(vec![1, 0, 2], true)));
        assert!(ps.contains(&(vec![1, 2, 0], false)));
    }
}
