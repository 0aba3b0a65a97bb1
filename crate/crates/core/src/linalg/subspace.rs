use num_traits::Zero;

use super::mat::Mat;
use super::rational::Rational;
use super::LinalgError;

/// A linear subspace of `Q^ambient_dim`.
///
/// The basis is kept in reduced column echelon form (pivots equal to 1, every other entry in a
/// pivot row zero), so two subspaces are equal exactly when their representations are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let as_rows = Mat::from_columns(ambient_dim, vectors)?.transpose();
        Ok(Self::from_row_space(ambient_dim, &as_rows))
    }

    fn from_row_space(ambient_dim: usize, rows: &Mat) -> Self {
        let (r, pivots) = rows.rref();
        let basis = Mat::from_fn(ambient_dim, pivots.len(), |i, j| r[(j, i)].clone());
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis as the columns of an `ambient_dim × dim` matrix.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        if v.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        // In column echelon form the coefficient of basis vector j is v at pivot row j.
        let mut residual = v.to_vec();
        for j in 0..self.dim() {
            let pivot_row = (0..self.ambient_dim)
                .find(|&r| !self.basis[(r, j)].is_zero())
                .expect("basis columns are nonzero");
            let coeff = residual[pivot_row].clone();
            if coeff.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().enumerate() {
                let b = &self.basis[(r, j)];
                if !b.is_zero() {
                    *x -= &coeff * b;
                }
            }
        }
        Ok(residual.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        Subspace::span(self.ambient_dim, &vectors)
    }

    /// Intersection by the Zassenhaus algorithm.
    ///
    /// Rows `[a | a]` for each basis vector of `self` and `[b | 0]` for each basis vector of
    /// `other` are row reduced; rows whose left half vanished carry a basis of the intersection
    /// in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let mut block = Mat::zeros(self.dim() + other.dim(), 2 * n);
        for (i, a) in self.basis_vectors().into_iter().enumerate() {
            for (k, x) in a.into_iter().enumerate() {
                block[(i, k)] = x.clone();
                block[(i, n + k)] = x;
            }
        }
        for (i, b) in other.basis_vectors().into_iter().enumerate() {
            for (k, x) in b.into_iter().enumerate() {
                block[(self.dim() + i, k)] = x;
            }
        }
        let (r, _) = block.rref();
        let vectors: Vec<Vec<Rational>> = (0..r.rows())
            .filter(|&i| r.row(i)[..n].iter().all(Zero::is_zero))
            .map(|i| r.row(i)[n..].to_vec())
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        Subspace::span(n, &vectors)
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Mat) -> Result<Subspace, LinalgError> {
        if m.cols() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.cols(),
            });
        }
        let image = m.mul(&self.basis)?;
        Ok(colspace(&image))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// `{x : m·x = 0}`.
pub fn nullspace(m: &Mat) -> Subspace {
    let (r, pivots) = m.rref();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Rational>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = num_traits::One::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors).expect("vectors have length cols(m)")
}

/// Column span of `m`.
pub fn colspace(m: &Mat) -> Subspace {
    Subspace::from_row_space(m.rows(), &m.transpose())
}
