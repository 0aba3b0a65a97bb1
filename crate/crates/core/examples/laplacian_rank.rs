//! Laplacian of a dual graph: L = D·Dᵗ, rank n − 1, kernel spanned by the constants.

use monograph::graph::{min_principle_holds, DualGraph};
use monograph::linalg::{format_rational, int, nullspace};

fn main() {
    // two vertices joined by a double edge, plus a pendant vertex
    let g = DualGraph::new(3, vec![(0, 1), (0, 1), (1, 2)]).expect("connected");
    let d = g.incidence_matrix();
    let l = g.laplacian();
    println!("incidence D:\n{d}");
    println!("laplacian L:\n{l}");
    assert_eq!(d.mul(&d.transpose()).unwrap(), l);
    println!("rank L = {} (n = {})", l.rank(), g.vertex_count());
    for k in nullspace(&l).basis_vectors() {
        let k: Vec<String> = k.iter().map(format_rational).collect();
        println!("ker L spanned by ({})", k.join(", "));
    }

    let harmonic = vec![int(5); 3];
    println!("constant function satisfies the minimum principle: {}", min_principle_holds(&g, &harmonic));
}
