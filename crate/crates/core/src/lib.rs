//! Exact graph cohomology for dual graphs of semistable curves.
//!
//! The crate models the combinatorial side of the invariant cycles sequence: a connected dual
//! graph, a local coefficient system on it (trivial, or unipotent built from iterated
//! extensions), the Mayer–Vietoris map `α`, and the two subspaces of edge space that decide
//! exactness:
//!
//! * `W`, the image of `α`;
//! * `T`, the edge families whose values sum to zero around every vertex.
//!
//! The sequence is exact on the combinatorial level when `W ∩ T = 0`. For trivial coefficients
//! this always holds, because the system matrix is the graph Laplacian, of rank `n − 1`. For the
//! rank-2 unipotent system on the Tate `m`-gon it fails by one dimension exactly when the
//! cocycle has nonzero holonomy.
//!
//! All arithmetic is exact over `Q`.
//!
//! ```
//! use monograph::{cohomology, linalg::int, tate};
//!
//! let sys = tate::build_tate(3, &[int(1), int(2), int(4)]).unwrap();
//! let report = cohomology::invariant_cycles_report(&sys).unwrap();
//! assert_eq!(report.defect, 1);
//! assert!(!report.exact);
//! ```

pub mod check;
pub mod cohomology;
pub mod graph;
pub mod linalg;
pub mod local_system;
pub mod problem;
pub mod report;
pub mod tate;

pub use cohomology::{invariant_cycles_report, CohomologyReport};
pub use graph::{DualGraph, EdgeId, VertexId};
pub use linalg::{Mat, Rational, Subspace};
pub use local_system::{EdgeCochain, LocalSystem};
pub use tate::{tate_report, TateReport};
