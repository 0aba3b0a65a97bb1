//! Local coefficient systems on a dual graph.
//!
//! A rank-`r` system puts a copy of `Q^r` (a frame) at every vertex and, on each edge
//! `e = [v, w]` in its canonical orientation, an invertible `r × r` matrix `U_e` that rewrites
//! coordinates in the `w`-frame as coordinates in the `v`-frame. Crossing the edge the other way
//! uses `U_e⁻¹`, which is always derived and never stored.

use num_traits::{One, Zero};

use crate::graph::{DualGraph, EdgeId, GraphError};
use crate::linalg::{inverse, LinalgError, Mat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalSystemError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("expected {expected} per-edge entries, got {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("transition on {edge} is {rows}x{cols}, expected {rank}x{rank}")]
    TransitionShape {
        edge: EdgeId,
        rows: usize,
        cols: usize,
        rank: usize,
    },
    #[error("transition on {0} is not invertible")]
    NotInvertible(EdgeId),
    #[error("cochain value on {edge} has length {found}, expected {rank}")]
    CochainShape {
        edge: EdgeId,
        found: usize,
        rank: usize,
    },
    #[error("vector has length {found}, expected {rank}")]
    VectorLength { found: usize, rank: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which way an edge is crossed relative to its canonical orientation `[v, w]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Apply `U_e`: coordinates in the target frame become coordinates in the source frame.
    Canonical,
    /// Apply `U_e⁻¹`: source-frame coordinates become target-frame coordinates.
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSystem {
    graph: DualGraph,
    rank: usize,
    transitions: Vec<Mat>,
}

impl LocalSystem {
    /// General constructor; every transition must be an invertible `rank × rank` matrix.
    pub fn new(graph: DualGraph, rank: usize, transitions: Vec<Mat>) -> Result<Self, LocalSystemError> {
        if rank == 0 {
            return Err(LocalSystemError::ZeroRank);
        }
        if transitions.len() != graph.edge_count() {
            return Err(LocalSystemError::EdgeCount {
                expected: graph.edge_count(),
                found: transitions.len(),
            });
        }
        for (i, u) in transitions.iter().enumerate() {
            if u.rows() != rank || u.cols() != rank {
                return Err(LocalSystemError::TransitionShape {
                    edge: EdgeId(i),
                    rows: u.rows(),
                    cols: u.cols(),
                    rank,
                });
            }
            if u.det()?.is_zero() {
                return Err(LocalSystemError::NotInvertible(EdgeId(i)));
            }
        }
        Ok(LocalSystem {
            graph,
            rank,
            transitions,
        })
    }

    pub fn trivial(graph: DualGraph, rank: usize) -> Result<Self, LocalSystemError> {
        let m = graph.edge_count();
        LocalSystem::new(graph, rank, vec![Mat::identity(rank); m])
    }

    /// Rank-2 system with `U_e = [[1, g_e], [0, 1]]`.
    pub fn unipotent_rank2(graph: DualGraph, gvals: &[Rational]) -> Result<Self, LocalSystemError> {
        if gvals.len() != graph.edge_count() {
            return Err(LocalSystemError::EdgeCount {
                expected: graph.edge_count(),
                found: gvals.len(),
            });
        }
        let transitions = gvals
            .iter()
            .map(|g| {
                let mut u = Mat::identity(2);
                u[(0, 1)] = g.clone();
                u
            })
            .collect();
        LocalSystem::new(graph, 2, transitions)
    }

    /// The extension `0 → E → F → O → 0` classified by the cochain `c`.
    ///
    /// `F` has rank `r + 1` and block transitions `[[U_e, c_e], [0, 1]]`; the first `r`
    /// coordinates are the sub-object `E` and the last one projects onto the trivial quotient.
    pub fn extend_by_trivial(&self, c: &EdgeCochain) -> Result<Self, LocalSystemError> {
        c.check_against(self)?;
        let r = self.rank;
        let transitions = self
            .transitions
            .iter()
            .zip(&c.values)
            .map(|(u, ce)| {
                let mut f = Mat::identity(r + 1);
                f.set_block(0, 0, u);
                for (i, x) in ce.iter().enumerate() {
                    f[(i, r)] = x.clone();
                }
                f
            })
            .collect();
        LocalSystem::new(self.graph.clone(), r + 1, transitions)
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn transition(&self, e: EdgeId) -> Result<&Mat, LocalSystemError> {
        self.transitions
            .get(e.0)
            .ok_or(LocalSystemError::Graph(GraphError::BadEdge(e)))
    }

    pub fn transitions(&self) -> &[Mat] {
        &self.transitions
    }

    /// `U_e⁻¹`, the transition for the reversed edge.
    pub fn inverse_transition(&self, e: EdgeId) -> Result<Mat, LocalSystemError> {
        Ok(inverse(self.transition(e)?)?)
    }

    pub fn transport(
        &self,
        e: EdgeId,
        orientation: Orientation,
        v: &[Rational],
    ) -> Result<Vec<Rational>, LocalSystemError> {
        if v.len() != self.rank {
            return Err(LocalSystemError::VectorLength {
                found: v.len(),
                rank: self.rank,
            });
        }
        let out = match orientation {
            Orientation::Canonical => self.transition(e)?.mul_vec(v)?,
            Orientation::Reversed => self.inverse_transition(e)?.mul_vec(v)?,
        };
        Ok(out)
    }

    /// True if every transition is upper triangular with ones on the diagonal.
    pub fn is_unipotent(&self) -> bool {
        self.transitions.iter().all(|u| {
            (0..self.rank).all(|i| {
                (0..=i).all(|j| {
                    if i == j {
                        u[(i, j)].is_one()
                    } else {
                        u[(i, j)].is_zero()
                    }
                })
            })
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.transitions
            .iter()
            .all(|u| *u == Mat::identity(self.rank))
    }

    /// The same system described with edge `e` flipped: `U_e` becomes `U_e⁻¹`.
    pub fn reoriented(&self, e: EdgeId) -> Result<Self, LocalSystemError> {
        let graph = self.graph.reoriented(e)?;
        let mut transitions = self.transitions.clone();
        transitions[e.0] = self.inverse_transition(e)?;
        LocalSystem::new(graph, self.rank, transitions)
    }
}

/// Per-edge values of a rank-`r` system, each written in the canonical source-vertex frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCochain {
    rank: usize,
    values: Vec<Vec<Rational>>,
}

impl EdgeCochain {
    pub fn new(sys: &LocalSystem, values: Vec<Vec<Rational>>) -> Result<Self, LocalSystemError> {
        let c = EdgeCochain {
            rank: sys.rank(),
            values,
        };
        c.check_against(sys)?;
        Ok(c)
    }

    pub fn zero(sys: &LocalSystem) -> Self {
        EdgeCochain {
            rank: sys.rank(),
            values: vec![vec![Rational::zero(); sys.rank()]; sys.graph().edge_count()],
        }
    }

    /// Splits a flat edge-major vector (`a_{e0}¹, …, a_{e0}ʳ, a_{e1}¹, …`) into per-edge values.
    pub fn from_flat(sys: &LocalSystem, flat: &[Rational]) -> Result<Self, LocalSystemError> {
        let r = sys.rank();
        let m = sys.graph().edge_count();
        if flat.len() != m * r {
            return Err(LocalSystemError::EdgeCount {
                expected: m * r,
                found: flat.len(),
            });
        }
        EdgeCochain::new(sys, flat.chunks(r).map(<[Rational]>::to_vec).collect())
    }

    pub fn to_flat(&self) -> Vec<Rational> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn value(&self, e: EdgeId) -> &[Rational] {
        &self.values[e.0]
    }

    /// Value on the reversed edge `ē`, in the target frame: `−U_e⁻¹·c_e`.
    pub fn reversed_value(&self, sys: &LocalSystem, e: EdgeId) -> Result<Vec<Rational>, LocalSystemError> {
        Ok(sys
            .transport(e, Orientation::Reversed, self.value(e))?
            .into_iter()
            .map(|x| -x)
            .collect())
    }

    pub fn add(&self, other: &EdgeCochain) -> EdgeCochain {
        assert_eq!(self.rank, other.rank);
        assert_eq!(self.values.len(), other.values.len());
        EdgeCochain {
            rank: self.rank,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    fn check_against(&self, sys: &LocalSystem) -> Result<(), LocalSystemError> {
        let m = sys.graph().edge_count();
        if self.values.len() != m {
            return Err(LocalSystemError::EdgeCount {
                expected: m,
                found: self.values.len(),
            });
        }
        for (i, v) in self.values.iter().enumerate() {
            if v.len() != sys.rank() {
                return Err(LocalSystemError::CochainShape {
                    edge: EdgeId(i),
                    found: v.len(),
                    rank: sys.rank(),
                });
            }
        }
        Ok(())
    }
}
