//! Dense exact linear algebra over the rationals.

mod mat;
mod rational;
mod subspace;

pub use mat::Mat;
pub use rational::{format_rational, int, one, parse_rational, rat, zero, Rational, RationalParseError};
pub use subspace::{colspace, nullspace, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Inverse by Gauss–Jordan on `[m | I]`.
pub fn inverse(m: &Mat) -> Result<Mat, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    let mut aug = Mat::zeros(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, &Mat::identity(n));
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    Ok(r.block(0, n, n, n))
}
