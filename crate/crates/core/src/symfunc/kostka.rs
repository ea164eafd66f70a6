use crate::exact::{invert_unitriangular, IntPoly, PolyMatrix};
use crate::partitions::Partition;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Semistandard tableaux of the given shape and content, as rows of letters `1, 2, …`.
pub fn ssyt(shape: &Partition, content: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if shape.size() != content.iter().sum::<usize>() {
        return Vec::new();
    }
    let rows = shape.len();
    let mut out = Vec::new();
    let mut tab: Vec<Vec<usize>> = vec![Vec::new(); rows];
    fn strips(
        shape: &Partition,
        content: &[usize],
        letter: usize,
        tab: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if letter == content.len() {
            out.push(tab.clone());
            return;
        }
        let cur: Vec<usize> = tab.iter().map(|r| r.len()).collect();
        let mut add = vec![0usize; cur.len()];
        fn place(
            j: usize,
            left: usize,
            cur: &[usize],
            add: &mut Vec<usize>,
            shape: &Partition,
            content: &[usize],
            letter: usize,
            tab: &mut Vec<Vec<usize>>,
            out: &mut Vec<Vec<Vec<usize>>>,
        ) {
            if j == cur.len() {
                if left == 0 {
                    for (r, &a) in add.iter().enumerate() {
                        tab[r].extend(std::iter::repeat_n(letter + 1, a));
                    }
                    strips(shape, content, letter + 1, tab, out);
                    for (r, &a) in add.iter().enumerate() {
                        let l = tab[r].len();
                        tab[r].truncate(l - a);
                    }
                }
                return;
            }
            // a horizontal strip never puts two boxes in one column
            let cap = if j == 0 { shape.part(0) } else { shape.part(j).min(cur[j - 1]) };
            let room = cap.saturating_sub(cur[j]);
            for a in 0..=room.min(left) {
                add[j] = a;
                place(j + 1, left - a, cur, add, shape, content, letter, tab, out);
            }
            add[j] = 0;
        }
        place(0, content[letter], &cur, &mut add, shape, content, letter, tab, out);
    }
    strips(shape, content, 0, &mut tab, &mut out);
    out
}

/// Rows from bottom to top, each read left to right.
pub fn reading_word(t: &[Vec<usize>]) -> Vec<usize> {
    t.iter().rev().flatten().copied().collect()
}

/// The charge of a word whose content is a partition: standard subwords are
/// extracted starting from the rightmost `1`, each next letter found by
/// scanning leftwards cyclically; every wrap-around raises the index by one.
pub fn charge(word: &[usize]) -> usize {
    let mut used = vec![false; word.len()];
    let mut total = 0;
    loop {
        let Some(mut pos) = (0..word.len()).rev().find(|&i| !used[i] && word[i] == 1) else {
            break;
        };
        used[pos] = true;
        let mut index = 0;
        let mut letter = 2;
        loop {
            let left = (0..pos).rev().find(|&i| !used[i] && word[i] == letter);
            let found = match left {
                Some(i) => Some(i),
                None => {
                    let wrapped = (pos + 1..word.len()).rev().find(|&i| !used[i] && word[i] == letter);
                    if wrapped.is_some() {
                        index += 1;
                    }
                    wrapped
                }
            };
            let Some(i) = found else { break };
            used[i] = true;
            total += index;
            pos = i;
            letter += 1;
        }
    }
    debug_assert!(used.iter().all(|&u| u), "content is not a partition");
    total
}

/// `K_{λμ}(t)`: the charge generating function of semistandard tableaux of shape λ and content μ.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> Result<IntPoly> {
    if lambda.size() != mu.size() {
        return Err(Error::Precondition(format!(
            "sizes differ: {lambda} has {}, {mu} has {}",
            lambda.size(),
            mu.size()
        )));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    for t in ssyt(lambda, mu.parts()) {
        let c = charge(&reading_word(&t));
        if coeffs.len() <= c {
            coeffs.resize(c + 1, BigInt::zero());
        }
        coeffs[c] += 1;
    }
    Ok(IntPoly::new(coeffs))
}

/// `K`, `C = K⁻¹`, `A`, `B`, `D = A·B` for one size, indexed by partitions in
/// lexicographically decreasing order; `regular` lists the n-regular indices.
#[derive(Clone, Debug)]
pub struct KfMatrices {
    pub partitions: Vec<Partition>,
    pub regular: Vec<usize>,
    pub k: PolyMatrix,
    pub c: PolyMatrix,
    pub a: PolyMatrix,
    /// Rows: n-regular partitions; columns: all partitions.
    pub b: Vec<Vec<IntPoly>>,
    /// Rows: n-regular partitions; columns: all partitions.
    pub d: Vec<Vec<IntPoly>>,
}

pub fn kf_transition_matrices(size: usize, n: usize) -> Result<KfMatrices> {
    let partitions = Partition::all_of_size(size);
    let np = partitions.len();
    let mut k = PolyMatrix::zeros(np);
    for i in 0..np {
        for j in i..np {
            if partitions[i].dominates(&partitions[j]) {
                k.set(i, j, kostka_foulkes(&partitions[i], &partitions[j])?);
            }
        }
    }
    let c = invert_unitriangular(&k)?;
    let regular: Vec<usize> = (0..np).filter(|&i| partitions[i].is_n_regular(n)).collect();
    let a = invert_unitriangular(&c.principal(&regular))?;
    let all: Vec<usize> = (0..np).collect();
    let b = c.submatrix(&regular, &all);
    let d = (0..regular.len())
        .map(|i| {
            (0..np)
                .map(|j| {
                    (0..regular.len()).fold(IntPoly::zero(), |acc, m| {
                        acc + a.get(i, m).clone() * b[m][j].clone()
                    })
                })
                .collect()
        })
        .collect();
    Ok(KfMatrices {
        partitions,
        regular,
        k,
        c,
        a,
        b,
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::symfunc::{SymBasis, SymPoly};
    use num_traits::One;

    fn t() -> IntPoly {
        IntPoly::t()
    }

    #[test]
    fn documented_values() {
        assert_eq!(kostka_foulkes(&part![2], &part![1, 1]).unwrap(), t());
        assert!(kostka_foulkes(&part![1, 1], &part![2]).unwrap().is_zero());
        assert_eq!(
            kostka_foulkes(&part![2, 1], &part![1, 1, 1]).unwrap(),
            IntPoly::from_i64s(&[0, 1, 1])
        );
        assert_eq!(kostka_foulkes(&part![3], &part![1, 1, 1]).unwrap(), IntPoly::monomial(1.into(), 3));
        assert!(kostka_foulkes(&part![3], &part![1, 1]).is_err());
        for m in 0..=6 {
            for l in Partition::all_of_size(m) {
                assert!(kostka_foulkes(&l, &l).unwrap().is_one());
            }
        }
    }

    #[test]
    fn single_row_is_a_q_binomial_top() {
        // K_{(m),μ}(t) = t^{n(μ)}
        for m in 1..=6 {
            for mu in Partition::all_of_size(m) {
                let nmu: usize = mu.parts().iter().enumerate().map(|(i, &x)| i * x).sum();
                assert_eq!(kostka_foulkes(&part![m], &mu).unwrap(), IntPoly::monomial(1.into(), nmu));
            }
        }
    }

    #[test]
    fn kostka_numbers_from_schur_polynomials() {
        // K_{λμ}(1) is the coefficient of x^μ in s_λ
        for m in 1..=6 {
            for l in Partition::all_of_size(m) {
                let s = SymPoly::<BigInt>::basis(&SymBasis::S(l.clone()), m, m).unwrap();
                for mu in Partition::all_of_size(m) {
                    let e: Vec<u16> = mu.parts().iter().map(|&x| x as u16).collect();
                    let k = kostka_foulkes(&l, &mu).unwrap();
                    assert_eq!(k.eval(&BigInt::one()), s.coeff(&e), "{l} {mu}");
                    if !k.is_zero() {
                        assert!(l.dominates(&mu));
                    }
                }
            }
        }
    }

    #[test]
    fn ssyt_counts() {
        assert_eq!(ssyt(&part![2, 1], &[1, 1, 1]).len(), 2);
        assert_eq!(ssyt(&part![3, 2, 1], &[1; 6]).len(), 16);
        assert_eq!(ssyt(&part![2, 2], &[2, 2]).len(), 1);
        assert_eq!(reading_word(&[vec![1, 2], vec![3]]), vec![3, 1, 2]);
        assert_eq!(charge(&[3, 1, 2]), 2);
    }

    #[test]
    fn documented_transitions() {
        let m = kf_transition_matrices(2, 2).unwrap();
        assert_eq!(m.partitions, vec![part![2], part![1, 1]]);
        assert_eq!(m.k.get(0, 1), &t());
        assert_eq!(m.d, vec![vec![IntPoly::one(), -t()]]);
        let z = kf_transition_matrices(0, 2).unwrap();
        assert_eq!(z.k, PolyMatrix::identity(1));
        assert_eq!(z.d, vec![vec![IntPoly::one()]]);
    }

    #[test]
    fn regular_block_of_d_is_identity() {
        for n in 2..=3 {
            for size in 0..=6 {
                let m = kf_transition_matrices(size, n).unwrap();
                assert_eq!(m.k.mul(&m.c), PolyMatrix::identity(m.partitions.len()));
                for (i, &ri) in m.regular.iter().enumerate() {
                    for &rj in &m.regular {
                        let want = if ri == rj { IntPoly::one() } else { IntPoly::zero() };
                        assert_eq!(m.d[i][rj], want);
                    }
                }
            }
        }
    }
}
