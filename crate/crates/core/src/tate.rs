//! The Tate curve with `ord_π q = m`: an `m`-gon dual graph carrying the rank-2 unipotent
//! system `U_e = [[1, g_e], [0, 1]]`.
//!
//! The system matrix always has a 2-dimensional kernel. One generator is the flat section
//! `(1, 0, 1, 0, …)`, whose α-image vanishes. The other maps to a residue family that is
//! nonzero exactly when the signed holonomy `g_0 + … + g_{m−2} − g_{m−1}` is nonzero, and
//! then the invariant cycles sequence has a one-dimensional defect.

use num_traits::Zero;

use crate::cohomology::{alpha_matrix, invariant_cycles_report, CohomologyError, SystemMatrix};
use crate::graph::{DualGraph, GraphError};
use crate::linalg::{int, rat, LinalgError, Rational, Subspace};
use crate::local_system::{LocalSystem, LocalSystemError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TateError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected {expected} cocycle values, one per edge of the {expected}-gon, got {found}")]
    GvalCount { expected: usize, found: usize },
    #[error(transparent)]
    LocalSystem(#[from] LocalSystemError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateReport {
    pub m: usize,
    pub gvals: Vec<Rational>,
    pub system_matrix: SystemMatrix,
    pub det: Rational,
    pub rank: usize,
    /// Kernel of the system matrix, canonical basis.
    pub kernel: Subspace,
    /// α applied to each canonical kernel generator.
    pub edge_images: Vec<Vec<Rational>>,
    pub holonomy: Rational,
    pub obstruction: Subspace,
    pub defect: usize,
    pub quotient_dim: usize,
    /// For `m = 3`, whether the kernel equals the span of the closed-form generators.
    pub matches_closed_form: Option<bool>,
}

pub fn build_tate(m: usize, gvals: &[Rational]) -> Result<LocalSystem, TateError> {
    let graph = DualGraph::cycle(m)?;
    if gvals.len() != m {
        return Err(TateError::GvalCount {
            expected: m,
            found: gvals.len(),
        });
    }
    Ok(LocalSystem::unipotent_rank2(graph, gvals)?)
}

/// `g_0 + … + g_{m−2} − g_{m−1}`: the cocycle summed around the cycle, with the closing
/// edge `0 → m−1` traversed backwards.
pub fn holonomy(gvals: &[Rational]) -> Rational {
    match gvals.split_last() {
        None => Rational::zero(),
        Some((last, rest)) => rest.iter().fold(Rational::zero(), |acc, g| acc + g) - last,
    }
}

pub fn tate_report(m: usize, gvals: &[Rational]) -> Result<TateReport, TateError> {
    let sys = build_tate(m, gvals)?;
    let report = invariant_cycles_report(&sys)?;
    let alpha = alpha_matrix(&sys)?;
    let a = report.system_matrix;

    let kernel = report.system_kernel;
    let edge_images = kernel
        .basis_vectors()
        .iter()
        .map(|k| alpha.mul_vec(k))
        .collect::<Result<Vec<_>, _>>()?;
    let h_vectors: Vec<Vec<Rational>> = edge_images
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let quotient_dim = if h_vectors.is_empty() {
        0
    } else {
        Subspace::span(alpha.rows(), &h_vectors)?
            .intersect(&report.obstruction)?
            .dim()
    };

    let matches_closed_form = if m == 3 {
        let [k1, k2] = triangle_kernel_generators(&gvals[0], &gvals[1], &gvals[2]);
        Some(Subspace::span(6, &[k1, k2])? == kernel)
    } else {
        None
    };

    Ok(TateReport {
        m,
        gvals: gvals.to_vec(),
        det: a.det()?,
        rank: a.rank(),
        system_matrix: a,
        kernel,
        edge_images,
        holonomy: holonomy(gvals),
        obstruction: report.obstruction,
        defect: report.defect,
        quotient_dim,
        matches_closed_form,
    })
}

/// Closed-form kernel generators of the triangle system for cocycle values on
/// `[I,II], [II,III], [I,III]`.
///
/// `K1 = (1,0,1,0,1,0)` and
/// `K2 = (g12/3 + 2·g13/3 + g23/3, 1, −g12/3 + g13/3 + 2·g23/3, 1, 0, 1)`.
pub fn triangle_kernel_generators(
    g12: &Rational,
    g23: &Rational,
    g13: &Rational,
) -> [Vec<Rational>; 2] {
    let third = rat(1, 3);
    let two_thirds = rat(2, 3);
    let k1 = vec![int(1), int(0), int(1), int(0), int(1), int(0)];
    let x_i = &third * g12 + &two_thirds * g13 + &third * g23;
    let x_ii = -(&third * g12) + &third * g13 + &two_thirds * g23;
    let k2 = vec![x_i, int(1), x_ii, int(1), int(0), int(1)];
    [k1, k2]
}

/// Closed-form residue family `α(K2)`: `(−h/3, 0, −h/3, 0, h/3, 0)` with `h = g12 + g23 − g13`.
pub fn triangle_residue_pattern(g12: &Rational, g23: &Rational, g13: &Rational) -> Vec<Rational> {
    let h = (g12 + g23 - g13) * rat(1, 3);
    vec![-h.clone(), int(0), -h.clone(), int(0), h, int(0)]
}
