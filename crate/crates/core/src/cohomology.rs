//! Graph cohomology with local coefficients, and the obstruction `W ∩ T`.
//!
//! Vertex space is `⊕_v Q^r`, edge space is `⊕_e Q^r`, both ordered block-major: the vertex
//! coordinates are `a_0¹, …, a_0ʳ, a_1¹, …` and the edge coordinates follow `EdgeId` order the
//! same way. With this ordering the rank-2 triangle reproduces the printed 6×6 system literally.
//!
//! * `α` sends vertex data to `a_e = a_v − U_e·a_w` on each `e = [v, w]`. Its kernel is `H⁰`,
//!   its cokernel `H¹(Gr, E)`, and its image is `W`.
//! * The residue constraints sum, at every vertex `u`, the incident edge values written in the
//!   `u`-frame. An outgoing edge contributes its stored value; an incoming one contributes the
//!   reversed value `−U_e⁻¹·a_e`. The kernel is `T`.
//! * The system matrix is the composite `R·α`, block row `u` reading
//!   `deg(u)·a_u − Σ U_{u←w}·a_w`. For trivial rank-1 coefficients it is the graph Laplacian.
//!
//! `W ∩ T = α(ker(R·α))`; its dimension is the defect of exactness.

use std::ops::Deref;

use crate::graph::Direction;
use crate::linalg::{colspace, int, nullspace, LinalgError, Mat, Subspace};
use crate::local_system::{LocalSystem, LocalSystemError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error(transparent)]
    LocalSystem(#[from] LocalSystemError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// `α` as an `(m·r) × (n·r)` matrix; row blocks are edges, column blocks are vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaMatrix(Mat);

/// The `(n·r) × (n·r)` system matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemMatrix(Mat);

impl Deref for AlphaMatrix {
    type Target = Mat;
    fn deref(&self) -> &Mat {
        &self.0
    }
}

impl Deref for SystemMatrix {
    type Target = Mat;
    fn deref(&self) -> &Mat {
        &self.0
    }
}

impl AlphaMatrix {
    pub fn into_inner(self) -> Mat {
        self.0
    }
}

impl SystemMatrix {
    pub fn into_inner(self) -> Mat {
        self.0
    }
}

pub fn alpha_matrix(sys: &LocalSystem) -> Result<AlphaMatrix, CohomologyError> {
    let g = sys.graph();
    let r = sys.rank();
    let mut a = Mat::zeros(g.edge_count() * r, g.vertex_count() * r);
    let id = Mat::identity(r);
    for e in g.edge_ids() {
        let (v, w) = g.endpoints(e).map_err(LocalSystemError::from)?;
        a.set_block(e.0 * r, v.0 * r, &id);
        a.set_block(e.0 * r, w.0 * r, &sys.transition(e)?.scale(&int(-1)));
    }
    Ok(AlphaMatrix(a))
}

/// The `(n·r) × (m·r)` matrix whose kernel is `T`.
pub fn residue_constraints(sys: &LocalSystem) -> Result<Mat, CohomologyError> {
    let g = sys.graph();
    let r = sys.rank();
    let mut t = Mat::zeros(g.vertex_count() * r, g.edge_count() * r);
    let id = Mat::identity(r);
    for u in g.vertices() {
        for (e, dir) in g.star(u).map_err(LocalSystemError::from)? {
            let block = match dir {
                Direction::Source => id.clone(),
                Direction::Target => sys.inverse_transition(e)?.scale(&int(-1)),
            };
            t.set_block(u.0 * r, e.0 * r, &block);
        }
    }
    Ok(t)
}

/// Builds the system matrix directly from the balance equations at each vertex.
///
/// This does not go through `residue_constraints · alpha_matrix`; agreement of the two is
/// checked by [`invariant_cycles_report`].
pub fn system_matrix(sys: &LocalSystem) -> Result<SystemMatrix, CohomologyError> {
    let g = sys.graph();
    let r = sys.rank();
    let n = g.vertex_count();
    let mut a = Mat::zeros(n * r, n * r);
    for u in g.vertices() {
        let star = g.star(u).map_err(LocalSystemError::from)?;
        for i in 0..r {
            a[(u.0 * r + i, u.0 * r + i)] += int(star.len() as i64);
        }
        for (e, dir) in star {
            let (s, t) = g.endpoints(e).map_err(LocalSystemError::from)?;
            let (w, to_u) = match dir {
                Direction::Source => (t, sys.transition(e)?.clone()),
                Direction::Target => (s, sys.inverse_transition(e)?),
            };
            for i in 0..r {
                for j in 0..r {
                    a[(u.0 * r + i, w.0 * r + j)] -= &to_u[(i, j)];
                }
            }
        }
    }
    Ok(SystemMatrix(a))
}

/// Global flat sections: `ker α`.
pub fn h0(sys: &LocalSystem) -> Result<Subspace, CohomologyError> {
    Ok(nullspace(&alpha_matrix(sys)?.into_inner()))
}

/// `dim coker α = m·r − rank α`.
pub fn h1_dim(sys: &LocalSystem) -> Result<usize, CohomologyError> {
    let a = alpha_matrix(sys)?;
    Ok(a.rows() - a.rank())
}

/// `W = im α` inside edge space.
pub fn image_subspace(sys: &LocalSystem) -> Result<Subspace, CohomologyError> {
    Ok(colspace(&alpha_matrix(sys)?.into_inner()))
}

/// `T = ker R` inside edge space.
pub fn residue_subspace(sys: &LocalSystem) -> Result<Subspace, CohomologyError> {
    Ok(nullspace(&residue_constraints(sys)?))
}

/// `W ∩ T`.
pub fn obstruction(sys: &LocalSystem) -> Result<Subspace, CohomologyError> {
    Ok(image_subspace(sys)?.intersect(&residue_subspace(sys)?)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub rank: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub h0_dim: usize,
    pub h1_dim: usize,
    pub h0_basis: Subspace,
    pub alpha: AlphaMatrix,
    pub residue_constraints: Mat,
    pub system_matrix: SystemMatrix,
    pub system_kernel: Subspace,
    pub w: Subspace,
    pub t: Subspace,
    pub obstruction: Subspace,
    pub defect: usize,
    pub exact: bool,
}

/// Computes everything at once and cross-checks the identities tying the pieces together.
///
/// Fails with [`CohomologyError::InvariantViolation`] if the direct system matrix differs from
/// `R·α`, if `W ∩ T` differs from `α(ker A)`, or if the Euler characteristic is off.
pub fn invariant_cycles_report(sys: &LocalSystem) -> Result<CohomologyReport, CohomologyError> {
    let g = sys.graph();
    let (n, m, r) = (g.vertex_count(), g.edge_count(), sys.rank());

    let alpha = alpha_matrix(sys)?;
    let residue = residue_constraints(sys)?;
    let system = system_matrix(sys)?;
    let composite = residue.mul(&alpha)?;
    if composite != *system {
        return Err(CohomologyError::InvariantViolation(
            "system matrix differs from residue_constraints · alpha".into(),
        ));
    }

    let h0_basis = nullspace(&alpha);
    let h1 = m * r - alpha.rank();
    if h0_basis.dim() as i64 - h1 as i64 != (r as i64) * (n as i64 - m as i64) {
        return Err(CohomologyError::InvariantViolation(format!(
            "Euler characteristic: h0={} h1={} r(n-m)={}",
            h0_basis.dim(),
            h1,
            (r as i64) * (n as i64 - m as i64)
        )));
    }

    let w = colspace(&alpha);
    let t = nullspace(&residue);
    let obstruction = w.intersect(&t)?;
    let system_kernel = nullspace(&system);
    let pushed = system_kernel.image_under(&alpha)?;
    if pushed != obstruction {
        return Err(CohomologyError::InvariantViolation(
            "W ∩ T differs from α(ker A)".into(),
        ));
    }
    let defect = obstruction.dim();
    if defect + h0_basis.dim() != system_kernel.dim() {
        return Err(CohomologyError::InvariantViolation(
            "defect != dim ker A − dim H⁰".into(),
        ));
    }

    Ok(CohomologyReport {
        rank: r,
        vertex_count: n,
        edge_count: m,
        h0_dim: h0_basis.dim(),
        h1_dim: h1,
        h0_basis,
        alpha,
        residue_constraints: residue,
        system_matrix: system,
        system_kernel,
        w,
        t,
        obstruction,
        defect,
        exact: defect == 0,
    })
}
