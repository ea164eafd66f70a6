//! Straightening dual wedges into n-regular ones, and the resulting d-matrix.

use affgr::klmw::{d_matrix, straighten};
use affgr::part;

fn main() {
    for (lambda, n) in [(part![1, 1], 2), (part![1, 1, 1, 1], 2), (part![2, 1, 1, 1], 3)] {
        let r = straighten(&lambda, n).unwrap();
        let terms: Vec<String> = r.coeffs.iter().map(|(p, c)| format!("{c}*s*{p}")).collect();
        println!("n={n}: s*{lambda} = {}   ({} rewrites)", terms.join(" + "), r.trace.len());
    }
    let d = d_matrix(2, 4).unwrap();
    let header: Vec<String> = d.partitions.iter().map(|p| p.to_string()).collect();
    println!("d-matrix, n=2, size 4; rows n-regular, columns {}", header.join(" "));
    for l in &d.regular {
        let row: Vec<String> = d.partitions.iter().map(|nu| format!("{:>3}", d.get(l, nu))).collect();
        println!("  {:<10}{}", l.to_string(), row.join(""));
    }
}
