//! F_p-points of the T-invariant loci and tangent dimensions at them.

use affgr::exact::Fp;
use affgr::exterior::LinearOperator;
use affgr::grassmann::{
    enumerate_points, gt_points, local_expectation, st_points, tangent_dim_gt, DEFAULT_POINT_BUDGET,
};

fn main() {
    println!("|Gr(2,4)(F_2)| = {}", enumerate_points::<2>(4, 2, DEFAULT_POINT_BUDGET).unwrap().len());
    for blocks in [vec![4], vec![2, 2], vec![2, 1, 1]] {
        let t = LinearOperator::<Fp<2>>::jordan(&blocks);
        let gt = gt_points(&t, 2, DEFAULT_POINT_BUDGET).unwrap();
        let st = st_points(&t, 2, DEFAULT_POINT_BUDGET).unwrap();
        println!("J={blocks:?}, k=2: {} points (Schubert-type count {})", gt.len(), st.len());
        for u in gt.iter().take(4) {
            println!(
                "  U = {}  tangent dim {}  local expectation {}",
                u.to_text(),
                tangent_dim_gt(u, &t).unwrap(),
                local_expectation(u, &gt)
            );
        }
    }
}
