//! Shuffle operators on the Fock space, T-shuffles on wedges, and Frobenius twists.

use affgr::exterior::{t_shuffle, ExtTensor, LinearOperator};
use affgr::fock::{shuffle, shuffle_adjoint, FockVector};
use affgr::part;
use affgr::symfunc::twist_in_h_basis;
use num_bigint::BigInt;

fn main() {
    let v = FockVector::<BigInt>::of_partition(&part![1, 1], false);
    for d in 1..=2 {
        let w = shuffle(2, d, &v);
        let terms: Vec<String> = w.by_partition().iter().map(|(p, c)| format!("{c}*s{p}")).collect();
        println!("sh^(2)_{d} s(1,1) = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    }
    let dual = shuffle_adjoint(2, 1, &FockVector::<BigInt>::of_partition(&part![], true));
    let terms: Vec<String> = dual.by_partition().iter().map(|(p, c)| format!("{c}*s*{p}")).collect();
    println!("(sh^(2)_1)* s*() = {}", terms.join(" + "));

    let j = LinearOperator::<BigInt>::jordan(&[2, 2]);
    let tau = ExtTensor::<BigInt>::basis(4, &[2, 4]).unwrap();
    for d in 0..=2 {
        println!("sh^T_{d}(e24) = {}", t_shuffle(d, &j, &tau));
    }
    for k in 1..=3 {
        println!("h_{k}^(2) = {}", twist_in_h_basis(2, k).unwrap().display_with("h"));
    }
}
