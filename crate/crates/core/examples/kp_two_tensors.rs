//! The two-tensor operators ω_d, their divided powers, and the T-twisted ω^T_d.

use affgr::exterior::{omega, omega_apply, omega_t, ExtTensor, LinearOperator};
use num_bigint::BigInt;

fn main() {
    let n = 4;
    let u = ExtTensor::<BigInt>::basis(n, &[1, 2]).unwrap();
    let v = ExtTensor::<BigInt>::basis(n, &[3, 4]).unwrap();
    for d in 0..=2 {
        println!("omega_{d}(e12, e34) = {}", omega(d, &u, &v));
    }
    let w = u.tensor(&v);
    let twice = omega_apply(1, &omega_apply(1, &w));
    assert_eq!(twice, omega_apply(2, &w).scale(&BigInt::from(2)));
    println!("omega_1^2 = 2 omega_2 on e12 ⊗ e34");

    let tau = ExtTensor::<BigInt>::basis(n, &[1, 2]).unwrap();
    let j = LinearOperator::<BigInt>::jordan(&[4]);
    for d in 1..=2 {
        println!("omega^J4_{d}(e12, e12) = {}", omega_t(d, &j, &tau, &tau));
    }
}
