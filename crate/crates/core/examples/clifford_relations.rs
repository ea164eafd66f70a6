//! Clifford generators on a finite exterior algebra and on the Fock space.

use affgr::exterior::{clifford, ExtTensor};
use affgr::fock::{basis_up_to, psi, psi_star, FockVector};
use num_bigint::BigInt;

fn main() {
    let n = 4;
    let v = ExtTensor::<BigInt>::basis(n, &[1, 3]).unwrap();
    println!("v = {v}");
    println!("psi_2 v = {}", clifford(&[2], false, &v));
    println!("psi*_3 v = {}", clifford(&[3], true, &v));
    for i in 1..=n {
        let anti = clifford(&[i], false, &clifford(&[i], true, &v)).add(&clifford(&[i], true, &clifford(&[i], false, &v)));
        assert_eq!(anti, v);
    }
    println!("{{psi_i, psi*_i}} v = v for i = 1..{n}");

    let vac = FockVector::<BigInt>::vacuum(false);
    for i in [-1, 0, 1] {
        let w = psi(i, &vac);
        let shown: Vec<String> = w.terms().map(|(m, c)| format!("{c}*{m}")).collect();
        println!("psi_{i} |0> = {}", if shown.is_empty() { "0".into() } else { shown.join(" + ") });
    }
    let basis = basis_up_to(4);
    let mut checked = 0;
    for m in &basis {
        let v = FockVector::<BigInt>::basis(m.clone(), false);
        for i in -3..=4 {
            for j in -3..=4 {
                let s = psi(i, &psi_star(j, &v)).add(&psi_star(j, &psi(i, &v)));
                let want = if i == j { v.clone() } else { FockVector::zero(0, false) };
                assert!(s.sub(&want).is_zero());
                checked += 1;
            }
        }
    }
    println!("{{psi_i, psi*_j}} = delta_ij on {} basis vectors ({checked} pairs)", basis.len());
}
