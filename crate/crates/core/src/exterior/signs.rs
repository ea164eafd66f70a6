//! Signs attached to index sets. Sets are strictly increasing lists of integers.

use crate::{Error, Result};

fn is_set(s: &[usize]) -> bool {
    s.windows(2).all(|w| w[0] < w[1])
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn check(sets: &[&[usize]]) -> Result<()> {
    if sets.iter().all(|s| is_set(s)) {
        Ok(())
    } else {
        Err(Error::Precondition("index sets must be strictly increasing".into()))
    }
}

fn parity(count: usize) -> i64 {
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(-1)^{R-1} = ∏_{r ∈ R} (-1)^{r-1}`.
pub fn sign_r_minus_one(r: &[usize]) -> i64 {
    parity(r.iter().map(|&x| x.saturating_sub(1)).sum())
}

/// `sgn(K, J) = (-1)^{#{(k, j) : k ∈ K, j ∈ J - K, k < j}}`, for `K ⊆ J`.
pub fn sgn_kj(k: &[usize], j: &[usize]) -> Result<i64> {
    check(&[k, j])?;
    if !subset(k, j) {
        return Err(Error::Precondition(format!("{k:?} is not contained in {j:?}")));
    }
    let count = k
        .iter()
        .map(|&a| j.iter().filter(|&&b| k.binary_search(&b).is_err() && a < b).count())
        .sum();
    Ok(parity(count))
}

/// `sgn(I, J, K) = (-1)^{|I×J - {(i,j) : i ≤ j, i ∈ K or j ∈ K}|}`, for `K ⊆ I ∩ J`.
pub fn sgn_ijk(i: &[usize], j: &[usize], k: &[usize]) -> Result<i64> {
    check(&[i, j, k])?;
    if !subset(k, i) || !subset(k, j) {
        return Err(Error::Precondition(format!("{k:?} is not contained in {i:?} ∩ {j:?}")));
    }
    let inside = |x: &usize| k.binary_search(x).is_ok();
    let mut count = 0;
    for a in i {
        for b in j {
            if !(a <= b && (inside(a) || inside(b))) {
                count += 1;
            }
        }
    }
    Ok(parity(count))
}

/// `sgn(J, I, K)·sgn(K, I)` for an explicit auxiliary `I ⊇ K`.
pub fn epsilon_with(j: &[usize], k: &[usize], i: &[usize]) -> Result<i64> {
    Ok(sgn_ijk(j, i, k)? * sgn_kj(k, i)?)
}

fn auxiliary(k: &[usize], d: usize, low: bool) -> Vec<usize> {
    let mut i = k.to_vec();
    let mut x = if low { 1 } else { k.last().copied().unwrap_or(0) + 1 };
    while i.len() < d {
        if k.binary_search(&x).is_err() {
            i.push(x);
        }
        x += 1;
    }
    i.sort_unstable();
    i
}

/// `ε_d(J, K)`, computed from the auxiliary set `K ∪ {smallest free integers}` of size `d`.
pub fn epsilon(d: usize, j: &[usize], k: &[usize]) -> Result<i64> {
    if k.len() > d {
        return Err(Error::Precondition(format!("|K| = {} exceeds d = {d}", k.len())));
    }
    if !subset(k, j) {
        return Err(Error::Precondition(format!("{k:?} is not contained in {j:?}")));
    }
    let e = epsilon_with(j, k, &auxiliary(k, d, true))?;
    debug_assert_eq!(e, epsilon_with(j, k, &auxiliary(k, d, false))?);
    Ok(e)
}

fn to_mask(set: &[usize]) -> u32 {
    super::mask_of(set)
}

/// Applies the words `ops` (rightmost first, `(mask, starred)`) to `e_s`.
fn apply_ops(ops: &[(u32, bool)], s: u32) -> Option<(i64, u32)> {
    let mut sign = 1;
    let mut cur = s;
    for &(m, star) in ops.iter().rev() {
        let (neg, r) = super::clifford_mask(m, star, cur)?;
        if neg {
            sign = -sign;
        }
        cur = r;
    }
    Some((sign, cur))
}

fn all_sets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(super::elems)
}

/// `ψ_J = sgn(K,J) ψ_{J−K} ψ_K` on every basis wedge of `∧[n]`.
pub fn split_sign_holds(n: usize, k: &[usize], j: &[usize]) -> Result<bool> {
    let sg = sgn_kj(k, j)?;
    let (km, jm) = (to_mask(k), to_mask(j));
    Ok((0u32..1 << n).all(|s| {
        let lhs = apply_ops(&[(jm, false)], s);
        let rhs = apply_ops(&[(jm & !km, false), (km, false)], s).map(|(c, r)| (c * sg, r));
        lhs == rhs
    }))
}

/// `ψ_I ψ*_J = Σ_{K ⊆ I∩J} sgn(I,J,K) ψ*_{J−K} ψ_{I−K}` on every basis wedge of `∧[n]`.
pub fn commutation_holds(n: usize, i: &[usize], j: &[usize]) -> Result<bool> {
    let (im, jm) = (to_mask(i), to_mask(j));
    let common: Vec<usize> = i.iter().copied().filter(|x| j.contains(x)).collect();
    let mut terms = Vec::new();
    for sub in 0u32..1 << common.len() {
        let k: Vec<usize> = (0..common.len()).filter(|b| sub >> b & 1 == 1).map(|b| common[b]).collect();
        terms.push((sgn_ijk(i, j, &k)?, to_mask(&k)));
    }
    Ok((0u32..1 << n).all(|s| {
        let mut acc: std::collections::BTreeMap<u32, i64> = Default::default();
        if let Some((c, r)) = apply_ops(&[(im, false), (jm, true)], s) {
            *acc.entry(r).or_default() += c;
        }
        for &(sg, km) in &terms {
            if let Some((c, r)) = apply_ops(&[(jm & !km, true), (im & !km, false)], s) {
                *acc.entry(r).or_default() -= sg * c;
            }
        }
        acc.values().all(|&v| v == 0)
    }))
}

/// Whether `sgn(J,I,K)·sgn(K,I)` is the same for all `I ⊆ [n]` of each size
/// containing `K`.
pub fn sign_product_constant(n: usize, j: &[usize], k: &[usize]) -> Result<bool> {
    let mut seen: std::collections::HashMap<usize, i64> = Default::default();
    for i in all_sets(n) {
        if !subset(k, &i) || !subset(k, j) {
            continue;
        }
        let v = sgn_ijk(j, &i, k)? * sgn_kj(k, &i)?;
        if *seen.entry(i.len()).or_insert(v) != v {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_subsets(n: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn documented_signs() {
        assert_eq!(sign_r_minus_one(&[1]), 1);
        assert_eq!(sign_r_minus_one(&[2, 3]), -1);
        assert_eq!(sign_r_minus_one(&[]), 1);
        assert_eq!(sgn_kj(&[2, 3], &[2, 3]).unwrap(), 1);
        assert_eq!(sgn_kj(&[1], &[1, 2]).unwrap(), -1);
        assert!(sgn_kj(&[4], &[1, 2]).is_err());
        assert!(sgn_ijk(&[1], &[2], &[1]).is_err());
        for d in 0..=5 {
            let j: Vec<usize> = (2..2 + d).collect();
            let want = if (d * d.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(epsilon(d, &j, &j).unwrap(), want);
        }
    }

    #[test]
    fn commutation_on_small_sets() {
        let sets = all_subsets(4);
        for i in &sets {
            for j in &sets {
                assert!(commutation_holds(4, i, j).unwrap(), "I={i:?} J={j:?}");
                if subset(i, j) {
                    assert!(split_sign_holds(4, i, j).unwrap());
                    assert!(sign_product_constant(4, j, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn epsilon_is_independent_of_auxiliary_set() {
        let sets = all_subsets(6);
        for j in &sets {
            for k in sets.iter().filter(|k| subset(k, j)) {
                for d in k.len()..=4 {
                    let vals: Vec<i64> = sets
                        .iter()
                        .filter(|i| i.len() == d && subset(k, i))
                        .map(|i| epsilon_with(j, k, i).unwrap())
                        .collect();
                    assert!(vals.windows(2).all(|w| w[0] == w[1]), "J={j:?} K={k:?} d={d}");
                }
            }
        }
    }
}
