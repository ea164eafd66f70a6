//! Plücker quadrics, the degree-2 lattice comparison, and their ω reconstruction.

use affgr::exterior::mask_of;
use affgr::grassmann::{degree2_comparison, plucker_quadric, omega_reconstruction_mismatch, PluckerKind};

fn main() {
    let gr = |k| PluckerKind::Grassmannian { k };
    println!("P(12,34,1) = {}", plucker_quadric(gr(2), mask_of(&[1, 2]), mask_of(&[3, 4]), 1));
    for (kind, n) in [(gr(2), 4), (gr(2), 5), (gr(3), 6), (PluckerKind::Incidence { k: 2, l: 1 }, 4)] {
        let c = degree2_comparison(kind, n).unwrap();
        println!(
            "{kind:?} n={n}: Plücker rank {} from {} generators, two-tensor rank {} from {}, equal: {}",
            c.plucker_rank, c.plucker_generators, c.kp_rank, c.kp_generators, c.equal
        );
    }
    for (k, n) in [(2, 4), (2, 5), (3, 6)] {
        println!("reconstruction Gr({k},{n}): {:?}", omega_reconstruction_mismatch(k, n).unwrap().map_or("exact", |_| "mismatch"));
    }
}
