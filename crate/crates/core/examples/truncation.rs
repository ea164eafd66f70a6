//! The finite window model: the n-shift on V_[-N,N) and its Fock counterpart.

use affgr::exterior::{k_subsets, t_shuffle, ExtTensor};
use affgr::fock::{shuffle, FockVector};
use affgr::grassmann::{maya_of_subset, subset_of_maya, truncation_model};
use num_bigint::BigInt;

fn main() {
    let (half, n) = (3, 2);
    let model = truncation_model::<BigInt>(half, n);
    println!("N={half}, n={n}: dim {}, Jordan type {:?}", model.dim(), model.jordan_type());
    let mut agree = 0;
    for s in k_subsets(2 * half, half) {
        let m = maya_of_subset(half, s);
        for d in 1..=half {
            let lhs = t_shuffle(d, &model.shift, &ExtTensor::from_mask(2 * half, s));
            let rhs = shuffle(n, d, &FockVector::<BigInt>::basis(m.clone(), false));
            let mut mapped = ExtTensor::zero(2 * half, half);
            for (w, c) in rhs.terms() {
                mapped.add_term(subset_of_maya(half, w).unwrap(), c.clone());
            }
            assert_eq!(lhs, mapped);
            agree += 1;
        }
    }
    println!("shift shuffle matches the Fock shuffle on {agree} (subset, d) pairs");
    let s = k_subsets(2 * half, half)[0];
    println!("subset {s:06b} <-> diagram {}", maya_of_subset(half, s));
}
