//! Tate m-gons: the defect is 1 exactly when the holonomy of the cocycle is nonzero.

use monograph::linalg::{format_rational, rat, Rational};
use monograph::tate::{holonomy, tate_report};

fn main() {
    let cases: Vec<(usize, Vec<Rational>)> = vec![
        (3, vec![rat(1, 1), rat(2, 1), rat(4, 1)]),
        (3, vec![rat(1, 1), rat(2, 1), rat(3, 1)]),
        (5, vec![rat(1, 2), rat(-1, 3), rat(0, 1), rat(2, 1), rat(7, 6)]),
        (6, vec![rat(1, 1); 6]),
    ];
    for (m, g) in cases {
        let rep = tate_report(m, &g).unwrap();
        let g: Vec<String> = g.iter().map(format_rational).collect();
        println!(
            "m = {m}, g = ({}): holonomy {}, rank A = {}, defect {}",
            g.join(", "),
            format_rational(&holonomy(&rep.gvals)),
            rep.rank,
            rep.defect
        );
    }
}
