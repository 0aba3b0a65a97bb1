//! Iterated extensions by the trivial system, and invariance under coboundaries.

use monograph::cohomology::{alpha_matrix, invariant_cycles_report};
use monograph::graph::DualGraph;
use monograph::linalg::{int, rat};
use monograph::local_system::{EdgeCochain, LocalSystem};

fn main() {
    let g = DualGraph::new(3, vec![(0, 1), (1, 2), (0, 2), (0, 2)]).unwrap();
    let base = LocalSystem::trivial(g.clone(), 1).unwrap();
    let c = EdgeCochain::new(&base, vec![vec![int(1)], vec![int(0)], vec![int(2)], vec![rat(-1, 2)]]).unwrap();
    let rank2 = base.extend_by_trivial(&c).unwrap();
    let report = invariant_cycles_report(&rank2).unwrap();
    println!("rank 2: h0 = {}, h1 = {}, defect = {}", report.h0_dim, report.h1_dim, report.defect);

    // shifting the cochain by a coboundary α(b) leaves everything unchanged
    let alpha = alpha_matrix(&base).unwrap();
    let shift = alpha.mul_vec(&[int(3), int(-1), rat(1, 2)]).unwrap();
    let shifted: Vec<_> = c.to_flat().iter().zip(&shift).map(|(x, y)| x + y).collect();
    let c2 = EdgeCochain::from_flat(&base, &shifted).unwrap();
    let report2 = invariant_cycles_report(&base.extend_by_trivial(&c2).unwrap()).unwrap();
    println!("after coboundary shift: defect = {}", report2.defect);

    let c3 = EdgeCochain::new(&rank2, vec![vec![int(1), int(0)]; 4]).unwrap();
    let rank3 = rank2.extend_by_trivial(&c3).unwrap();
    let report3 = invariant_cycles_report(&rank3).unwrap();
    println!("rank 3: h0 = {}, h1 = {}, defect = {}", report3.h0_dim, report3.h1_dim, report3.defect);
}
