//! The triangle with a rank-2 unipotent system: kernel generators and the obstruction W ∩ T.

use monograph::cohomology::{alpha_matrix, invariant_cycles_report, system_matrix};
use monograph::graph::DualGraph;
use monograph::linalg::{format_rational, int};
use monograph::local_system::LocalSystem;
use monograph::tate::triangle_kernel_generators;

fn main() {
    let (g12, g23, g13) = (int(1), int(2), int(4));
    let sys = LocalSystem::unipotent_rank2(
        DualGraph::cycle(3).unwrap(),
        &[g12.clone(), g23.clone(), g13.clone()],
    )
    .unwrap();

    let a = system_matrix(&sys).unwrap();
    println!("system matrix A:\n{}", *a);
    println!("det A = {}", format_rational(&a.det().unwrap()));

    let alpha = alpha_matrix(&sys).unwrap();
    for (i, k) in triangle_kernel_generators(&g12, &g23, &g13).iter().enumerate() {
        let image: Vec<String> = alpha.mul_vec(k).unwrap().iter().map(format_rational).collect();
        let k: Vec<String> = k.iter().map(format_rational).collect();
        println!("K{} = ({})  ↦  α(K{}) = ({})", i + 1, k.join(", "), i + 1, image.join(", "));
    }

    let report = invariant_cycles_report(&sys).unwrap();
    println!("dim W = {}, dim T = {}, dim W∩T = {}", report.w.dim(), report.t.dim(), report.defect);
}
