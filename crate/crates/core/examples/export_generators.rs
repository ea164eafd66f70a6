//! Plain-text generator listings for external computer-algebra systems.

use affgr::exterior::LinearOperator;
use affgr::klmw::{emit_ideal_generators, ExportTarget};
use num_bigint::BigInt;

fn main() {
    print!("{}", emit_ideal_generators(&ExportTarget::SatoShuffle { n: 2, max_degree: 4 }).unwrap());
    println!();
    let t = LinearOperator::<BigInt>::jordan(&[4]);
    print!("{}", emit_ideal_generators(&ExportTarget::TShuffle { t, k: 2 }).unwrap());
}
