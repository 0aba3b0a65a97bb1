//! Acceptance criteria. All arithmetic is exact, so every comparison is equality.
//!
//! Runs as a plain binary (`harness = false`) and prints one PASS/FAIL line per criterion.

use std::process::ExitCode;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monograph::cohomology::{
    alpha_matrix, invariant_cycles_report, obstruction, residue_constraints, system_matrix,
};
use monograph::graph::{DualGraph, EdgeId};
use monograph::linalg::{int, nullspace, rat, Mat, Rational, Subspace};
use monograph::local_system::{EdgeCochain, LocalSystem};
use monograph::tate::{build_tate, tate_report};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64) -> Rational {
    int(n)
}

fn vec_q(xs: &[Rational]) -> Vec<Rational> {
    xs.to_vec()
}

fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Rational::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * cofactor_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank from minors: the largest k with some nonzero k×k minor.
fn rank_by_minors(m: &Mat) -> usize {
    let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<Rational>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                if !cofactor_det(&minor).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn mat_vec(m: &Mat, v: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// The printed triangle matrix for g = (1, 2, 4), entries substituted by hand:
/// g_[II,I] = −1, g_[III,II] = −2, g_[III,I] = −4.
fn printed_a_124() -> Mat {
    Mat::from_i64(&[
        &[2, 0, -1, -1, -1, -4],
        &[0, 2, 0, -1, 0, -1],
        &[-1, 1, 2, 0, -1, -2],
        &[0, -1, 0, 2, 0, -1],
        &[-1, 4, -1, 2, 2, 0],
        &[0, -1, 0, -1, 0, 2],
    ])
}

fn triangle_system(g: &[i64]) -> LocalSystem {
    LocalSystem::unipotent_rank2(DualGraph::cycle(3).unwrap(), &ints(g)).unwrap()
}

fn criterion_1() -> Outcome {
    let sys = triangle_system(&[1, 2, 4]);
    let a = system_matrix(&sys).map_err(|e| e.to_string())?;
    let printed = printed_a_124();
    ensure!(*a == printed, "system matrix differs from the printed matrix:\n{}", *a);
    let rows: Vec<Vec<Rational>> = (0..6).map(|r| printed.row(r).to_vec()).collect();
    let det_oracle = cofactor_det(&rows);
    let det = a.det().map_err(|e| e.to_string())?;
    ensure!(det.is_zero() && det_oracle.is_zero(), "det = {det}, cofactor det = {det_oracle}");
    let rank_oracle = rank_by_minors(&printed);
    ensure!(
        a.rank() == 4 && rank_oracle == 4,
        "rank = {}, rank by minors = {rank_oracle}",
        a.rank()
    );
    Ok("A equals the printed matrix; det = 0; rank = 4 (elimination and minors agree)".into())
}

fn criterion_2() -> Outcome {
    // g = (1, 2, 4): K2 = (1/3 + 8/3 + 2/3, 1, −1/3 + 4/3 + 4/3, 1, 0, 1) = (11/3, 1, 7/3, 1, 0, 1)
    // holonomy h = 1 + 2 − 4 = −1, so H2 = (−h/3, 0, −h/3, 0, h/3, 0) = (1/3, 0, 1/3, 0, −1/3, 0)
    let cases: [([i64; 3], Vec<Rational>, Vec<Rational>); 2] = [
        (
            [1, 2, 4],
            vec_q(&[rat(11, 3), q(1), rat(7, 3), q(1), q(0), q(1)]),
            vec_q(&[rat(1, 3), q(0), rat(1, 3), q(0), rat(-1, 3), q(0)]),
        ),
        // g = (6, 3, 9): K2 = (2 + 6 + 1, 1, −2 + 3 + 2, 1, 0, 1), holonomy 0
        ([6, 3, 9], ints(&[9, 1, 3, 1, 0, 1]), ints(&[0, 0, 0, 0, 0, 0])),
    ];
    let k1 = ints(&[1, 0, 1, 0, 1, 0]);
    for (g, k2, h2) in cases {
        let sys = triangle_system(&g);
        let a = system_matrix(&sys).map_err(|e| e.to_string())?;
        ensure!(mat_vec(&a, &k1).iter().all(Zero::is_zero), "A·K1 ≠ 0 at g={g:?}");
        ensure!(mat_vec(&a, &k2).iter().all(Zero::is_zero), "A·K2 ≠ 0 at g={g:?}");
        let span = Subspace::span(6, &[k1.clone(), k2.clone()]).unwrap();
        ensure!(nullspace(&a) == span, "ker A ≠ span{{K1, K2}} at g={g:?}");

        let alpha = alpha_matrix(&sys).map_err(|e| e.to_string())?;
        ensure!(
            mat_vec(&alpha, &k1).iter().all(Zero::is_zero),
            "α(K1) ≠ 0 at g={g:?}"
        );
        ensure!(mat_vec(&alpha, &k2) == h2, "α(K2) ≠ H2 at g={g:?}");
        let obs = obstruction(&sys).map_err(|e| e.to_string())?;
        let expected = Subspace::span(6, &[h2]).unwrap();
        ensure!(obs == expected, "obstruction ≠ span{{H2}} at g={g:?}");
    }
    Ok("ker A = span{K1, K2}; α(K1) = 0; α(K2) = H2 spans W∩T (g = (1,2,4) and (6,3,9))".into())
}

fn criterion_3() -> Outcome {
    for (g, expected) in [
        ([1, 2, 4], 1),
        ([1, 1, 1], 1),
        ([0, 0, 5], 1),
        ([1, 2, 3], 0),
        ([6, 3, 9], 0),
        ([0, 0, 0], 0),
    ] {
        let rep = tate_report(3, &ints(&g)).map_err(|e| e.to_string())?;
        ensure!(rep.defect == expected, "triangle g={g:?}: defect {}", rep.defect);
        ensure!(rep.quotient_dim == expected, "triangle g={g:?}: quotient dim {}", rep.quotient_dim);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0003);
    let draws = 70;
    let mut nonzero = 0;
    for i in 0..draws {
        let m = 2 + i % 7;
        let mut g: Vec<Rational> = (0..m)
            .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
            .collect();
        // signed sum around the cycle; the closing edge 0 → m−1 runs against the traversal
        let signed = |g: &[Rational]| -> Rational {
            g[..m - 1].iter().fold(Rational::zero(), |a, x| a + x) - &g[m - 1]
        };
        if rng.gen_bool(0.4) {
            let h = signed(&g);
            g[m - 1] += h;
        }
        let hol = signed(&g);
        let expected = usize::from(!hol.is_zero());
        nonzero += expected;

        let rep = tate_report(m, &g).map_err(|e| e.to_string())?;
        let sys = build_tate(m, &g).map_err(|e| e.to_string())?;
        let w = Subspace::span(
            2 * m,
            &alpha_matrix(&sys).unwrap().columns(),
        )
        .unwrap();
        let t = nullspace(&residue_constraints(&sys).unwrap());
        let oracle = w.intersect(&t).unwrap().dim();
        ensure!(
            rep.defect == expected && oracle == expected,
            "m={m}: defect {} oracle {oracle} expected {expected}",
            rep.defect
        );
        ensure!(rep.rank == 2 * m - 2, "m={m}: rank A = {}", rep.rank);
        ensure!(rep.det.is_zero(), "m={m}: det A ≠ 0");
    }
    Ok(format!(
        "triangle dichotomy exact; {draws} draws over m = 2..8 ({nonzero} with nonzero holonomy) agree with W∩T"
    ))
}

fn random_multigraph(rng: &mut ChaCha8Rng) -> (usize, Vec<(usize, usize)>) {
    let n = rng.gen_range(2..=12);
    let mut count = vec![vec![0; n]; n];
    let mut edges = Vec::new();
    let mut add = |a: usize, b: usize, edges: &mut Vec<(usize, usize)>| {
        let (lo, hi) = (a.min(b), a.max(b));
        if count[lo][hi] < 3 {
            count[lo][hi] += 1;
            edges.push((a, b));
        }
    };
    for v in 1..n {
        let u = rng.gen_range(0..v);
        if rng.gen_bool(0.5) {
            add(u, v, &mut edges);
        } else {
            add(v, u, &mut edges);
        }
    }
    for _ in 0..rng.gen_range(0..=3 * n) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            add(a, b, &mut edges);
        }
    }
    (n, edges)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0004);
    let graphs = 150;
    let mut max_edges = 0;
    for _ in 0..graphs {
        let (n, edges) = random_multigraph(&mut rng);
        max_edges = max_edges.max(edges.len());
        let g = DualGraph::new(n, edges.clone()).map_err(|e| e.to_string())?;

        // Laplacian from adjacency counts
        let mut lap = vec![vec![0i64; n]; n];
        for &(a, b) in &edges {
            lap[a][a] += 1;
            lap[b][b] += 1;
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
        let rows: Vec<&[i64]> = lap.iter().map(Vec::as_slice).collect();
        let lap = Mat::from_i64(&rows);

        let d = g.incidence_matrix();
        ensure!(g.laplacian() == lap, "laplacian differs from adjacency count");
        ensure!(d.mul(&d.transpose()).unwrap() == lap, "L ≠ D·Dᵗ");
        for c in 0..d.cols() {
            let s: Rational = d.column(c).iter().sum();
            ensure!(s.is_zero(), "incidence column {c} sums to {s}");
        }
        ensure!(lap.rank() == n - 1, "rank L = {} with n = {n}", lap.rank());
        let ones = vec![int(1); n];
        ensure!(
            nullspace(&lap) == Subspace::span(n, &[ones]).unwrap(),
            "ker L ≠ span{{(1,…,1)}}"
        );

        let sys = LocalSystem::trivial(g, 1).unwrap();
        let obs = obstruction(&sys).map_err(|e| e.to_string())?;
        ensure!(obs.is_zero(), "W∩T has dimension {}", obs.dim());
    }
    Ok(format!("{graphs} multigraphs (n ≤ 12, ≤ 3 parallel, up to {max_edges} edges): zero failures"))
}

fn random_q(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-7..=7), rng.gen_range(1..=3))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0005);
    let systems = 80;
    for i in 0..systems {
        let (n, edges) = random_multigraph(&mut rng);
        let n = n.min(7);
        let edges: Vec<_> = edges.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let Ok(g) = DualGraph::new(n, edges) else {
            // restricting to the first vertices of the tree keeps it connected
            return Err("restricted graph disconnected".into());
        };
        let rank = 1 + i % 3;
        let mut sys = LocalSystem::trivial(g.clone(), 1).unwrap();
        for _ in 1..rank {
            let vals = (0..g.edge_count())
                .map(|_| (0..sys.rank()).map(|_| random_q(&mut rng)).collect())
                .collect();
            let c = EdgeCochain::new(&sys, vals).unwrap();
            sys = sys.extend_by_trivial(&c).unwrap();
        }
        ensure!(sys.is_unipotent(), "iterated extension is not unipotent");

        let alpha = alpha_matrix(&sys).unwrap();
        let residue = residue_constraints(&sys).unwrap();
        let a = system_matrix(&sys).unwrap();
        ensure!(residue.mul(&alpha).unwrap() == *a, "A ≠ R·α (rank {rank})");

        let rep = invariant_cycles_report(&sys).map_err(|e| e.to_string())?;
        let pushed = Subspace::span(
            alpha.rows(),
            &nullspace(&a)
                .basis_vectors()
                .iter()
                .map(|k| mat_vec(&alpha, k))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        ensure!(pushed == rep.obstruction, "W∩T ≠ α(ker A)");
        let m = g.edge_count() as i64;
        ensure!(
            rep.h0_dim as i64 - rep.h1_dim as i64 == rank as i64 * (n as i64 - m),
            "h0 − h1 ≠ r(n − m)"
        );

        for e in 0..g.edge_count() {
            let flipped = invariant_cycles_report(&sys.reoriented(EdgeId(e)).unwrap())
                .map_err(|e| e.to_string())?;
            ensure!(
                (flipped.h0_dim, flipped.h1_dim, flipped.defect)
                    == (rep.h0_dim, rep.h1_dim, rep.defect),
                "re-orienting e{e} changed (h0, h1, defect)"
            );
        }

        let c_vals: Vec<Vec<Rational>> = (0..g.edge_count())
            .map(|_| (0..sys.rank()).map(|_| random_q(&mut rng)).collect())
            .collect();
        let b: Vec<Rational> = (0..n * sys.rank()).map(|_| random_q(&mut rng)).collect();
        let db = mat_vec(&alpha, &b);
        let c = EdgeCochain::new(&sys, c_vals).unwrap();
        let shifted = EdgeCochain::from_flat(
            &sys,
            &c.to_flat().iter().zip(&db).map(|(x, y)| x + y).collect::<Vec<_>>(),
        )
        .unwrap();
        let d1 = invariant_cycles_report(&sys.extend_by_trivial(&c).unwrap())
            .map_err(|e| e.to_string())?
            .defect;
        let d2 = invariant_cycles_report(&sys.extend_by_trivial(&shifted).unwrap())
            .map_err(|e| e.to_string())?
            .defect;
        ensure!(d1 == d2, "cohomologous cochains: defects {d1} vs {d2}");
    }
    Ok(format!("{systems} unipotent systems, ranks 1..3: zero failures"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 5] = [
        ("1 triangle system matrix, det, rank", criterion_1),
        ("2 kernel generators and residue images", criterion_2),
        ("3 defect dichotomy", criterion_3),
        ("4 W∩T = 0 for trivial coefficients", criterion_4),
        ("5 structural identities", criterion_5),
    ];
    let mut failed = 0;
    let mut passed = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(detail) => {
                println!("[PASS] criterion {name}: {detail}");
                passed.push(name);
            }
            Err(detail) => {
                println!("[FAIL] criterion {name}: {detail}");
                failed += 1;
            }
        }
    }
    // The analytic statements are represented by their combinatorial content in 3 and 4.
    let covered = passed.iter().any(|n| n.starts_with('3')) && passed.iter().any(|n| n.starts_with('4'));
    if covered {
        println!("[PASS] criterion 6 analytic theorems: covered by criteria 3 and 4");
    } else {
        println!("[FAIL] criterion 6 analytic theorems: criteria 3 or 4 failed");
        failed += 1;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
