use num_traits::Zero;
use proptest::prelude::*;

use monograph::graph::{DualGraph, EdgeId};
use monograph::linalg::{colspace, nullspace, rat, Mat, Rational, Subspace};
use monograph::local_system::{LocalSystem, Orientation};
use monograph::problem::{parse_spec, EdgeSpec, ProblemSpec, SystemSpec};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Mat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(rational(), c), r)
            .prop_map(|rows| Mat::from_rows(rows).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(rational(), n), n)
            .prop_map(|rows| Mat::from_rows(rows).unwrap())
    })
}

fn subspace_pair(dim: usize) -> impl Strategy<Value = (Subspace, Subspace)> {
    let vecs = || prop::collection::vec(prop::collection::vec(rational(), dim), 0..=dim);
    (vecs(), vecs()).prop_map(move |(a, b)| {
        (Subspace::span(dim, &a).unwrap(), Subspace::span(dim, &b).unwrap())
    })
}

fn spec() -> impl Strategy<Value = ProblemSpec> {
    (3usize..=6)
        .prop_flat_map(|m| (Just(m), prop::collection::vec(rational(), m)))
        .prop_map(|(m, g)| {
            let vertices: Vec<String> = (0..m).map(|i| format!("v{i}")).collect();
            let edges = DualGraph::cycle(m)
                .unwrap()
                .edges()
                .iter()
                .map(|&(a, b)| EdgeSpec {
                    from: vertices[a.0].clone(),
                    to: vertices[b.0].clone(),
                })
                .collect();
            let cochain = g.iter().map(|x| vec![x.clone(), -x.clone()]).collect();
            ProblemSpec {
                vertices,
                edges,
                system: SystemSpec::Extension {
                    base: Box::new(SystemSpec::Unipotent2 { g }),
                    cochain,
                },
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_column_count(m in matrix(5, 6)) {
        prop_assert_eq!(m.rank() + nullspace(&m).dim(), m.cols());
        prop_assert_eq!(colspace(&m).dim(), m.rank());
    }

    #[test]
    fn rref_is_idempotent(m in matrix(5, 5)) {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn nonzero_det_iff_full_rank(m in square(4)) {
        let det = m.det().unwrap();
        prop_assert_eq!(!det.is_zero(), m.rank() == m.rows());
    }

    #[test]
    fn det_is_multiplicative(a in square(3), b in square(3)) {
        prop_assume!(a.rows() == b.rows());
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn intersection_is_commutative_and_obeys_grassmann((u, w) in subspace_pair(4)) {
        let uw = u.intersect(&w).unwrap();
        prop_assert_eq!(&uw, &w.intersect(&u).unwrap());
        prop_assert_eq!(u.dim() + w.dim(), uw.dim() + u.sum(&w).unwrap().dim());
        prop_assert!(uw.is_subspace_of(&u).unwrap() && uw.is_subspace_of(&w).unwrap());
    }

    #[test]
    fn text_and_json_forms_round_trip(s in spec()) {
        prop_assert_eq!(&parse_spec(&s.render()).unwrap(), &s);
        prop_assert_eq!(&parse_spec(&s.to_json().to_string()).unwrap(), &s);
    }

    #[test]
    fn transport_there_and_back_is_identity(
        g in prop::collection::vec(rational(), 4),
        v in prop::collection::vec(rational(), 2),
        e in 0usize..4,
    ) {
        let sys = LocalSystem::unipotent_rank2(DualGraph::cycle(4).unwrap(), &g).unwrap();
        let there = sys.transport(EdgeId(e), Orientation::Canonical, &v).unwrap();
        let back = sys.transport(EdgeId(e), Orientation::Reversed, &there).unwrap();
        prop_assert_eq!(back, v);
    }
}
