//! h_k^(n) against the coefficients of the loop-group determinant.

use affgr::symfunc::{det_coeffs_principal_nilpotent, twist_in_h_basis};

fn main() {
    for n in [2, 3] {
        let det = det_coeffs_principal_nilpotent(n, 3);
        for (i, d) in det.iter().enumerate() {
            let h = twist_in_h_basis(n, i + 1).unwrap();
            println!("n={n} k={}: {}   equal: {}", i + 1, d.display_with("h"), &h == d);
        }
    }
}
