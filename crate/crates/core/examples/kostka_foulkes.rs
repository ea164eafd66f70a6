//! Kostka-Foulkes polynomials and the D(ζ_n) cross-check against straightening.

use affgr::klmw::kf_compare;
use affgr::part;
use affgr::symfunc::kostka_foulkes;

fn main() {
    for (l, m) in [(part![2, 1], part![1, 1, 1]), (part![3], part![1, 1, 1]), (part![2, 2], part![2, 1, 1])] {
        println!("K_{l},{m}(t) = {}", kostka_foulkes(&l, &m).unwrap());
    }
    let c = kf_compare(2, 4).unwrap();
    println!("n=2, size 4: agrees = {}", c.matches());
    for e in c.entries.iter().filter(|e| e.d_at_root != "0") {
        println!("  D[{}][{}] = {}  (from {})", e.lambda, e.nu, e.d_at_root, e.d_poly);
    }
}
