//! Dual graphs of semistable special fibers.
//!
//! Vertices are irreducible components, edges are double points. Each unoriented edge is stored
//! once with a canonical orientation `source → target`; the reversed edge is never stored.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{int, Mat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// How a vertex sits on an edge relative to the edge's canonical orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Source,
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected: vertex {unreached} is not reachable from v0")]
    Disconnected { unreached: VertexId },
    #[error("edge {edge} is a loop at {vertex}")]
    LoopEdge { edge: EdgeId, vertex: VertexId },
    #[error("edge {edge} references vertex {vertex} but the graph has {n} vertices")]
    BadEdgeEndpoint { edge: EdgeId, vertex: VertexId, n: usize },
    #[error("vertex {0} does not exist")]
    BadVertex(VertexId),
    #[error("edge {0} does not exist")]
    BadEdge(EdgeId),
    #[error("a cycle graph needs at least 2 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    labels: Option<Vec<String>>,
}

impl DualGraph {
    /// Builds and validates a graph on `n` vertices from canonical `(source, target)` pairs.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let g = DualGraph {
            n,
            edges: edges
                .into_iter()
                .map(|(s, t)| (VertexId(s), VertexId(t)))
                .collect(),
            labels: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The `m`-gon with edges `i → i+1` and the closing edge oriented `0 → m-1`.
    ///
    /// For `m = 3` this is the edge list `[I,II], [II,III], [I,III]`.
    pub fn cycle(m: usize) -> Result<Self, GraphError> {
        if m < 2 {
            return Err(GraphError::CycleTooShort(m));
        }
        let mut edges: Vec<(usize, usize)> = (0..m - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, m - 1));
        DualGraph::new(m, edges)
    }

    /// Ok iff nonempty, loop-free, every endpoint exists, and connected.
    pub fn validate(&self) -> Result<(), GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        for (i, &(s, t)) in self.edges.iter().enumerate() {
            for v in [s, t] {
                if v.0 >= self.n {
                    return Err(GraphError::BadEdgeEndpoint {
                        edge: EdgeId(i),
                        vertex: v,
                        n: self.n,
                    });
                }
            }
            if s == t {
                return Err(GraphError::LoopEdge {
                    edge: EdgeId(i),
                    vertex: s,
                });
            }
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let adj = self.adjacency();
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(u) => Err(GraphError::Disconnected {
                unreached: VertexId(u),
            }),
            None => Ok(()),
        }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(s, t) in &self.edges {
            adj[s.0].push(t.0);
            adj[t.0].push(s.0);
        }
        adj
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        self.edges.get(e.0).copied().ok_or(GraphError::BadEdge(e))
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(l) => l[v.0].clone(),
            None => v.0.to_string(),
        }
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.n {
            Ok(())
        } else {
            Err(GraphError::BadVertex(v))
        }
    }

    /// Number of edge-ends at `v`; parallel edges each count.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        Ok(self.star(v)?.len())
    }

    /// Edges incident to `v` in edge order, tagged with `v`'s role in the canonical orientation.
    pub fn star(&self, v: VertexId) -> Result<Vec<(EdgeId, Direction)>, GraphError> {
        self.check_vertex(v)?;
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, &(s, t))| {
                if s == v {
                    Some((EdgeId(i), Direction::Source))
                } else if t == v {
                    Some((EdgeId(i), Direction::Target))
                } else {
                    None
                }
            })
            .collect())
    }

    /// Number of edges joining `a` and `b` in either orientation.
    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(s, t)| (s, t) == (a, b) || (s, t) == (b, a))
            .count()
    }

    /// `n × m` matrix with `+1` at (source, e) and `-1` at (target, e).
    pub fn incidence_matrix(&self) -> Mat {
        let mut d = Mat::zeros(self.n, self.edges.len());
        for (j, &(s, t)) in self.edges.iter().enumerate() {
            d[(s.0, j)] = Rational::one();
            d[(t.0, j)] = -Rational::one();
        }
        d
    }

    /// Degree on the diagonal, minus the edge multiplicity off it.
    pub fn laplacian(&self) -> Mat {
        let mut a = Mat::zeros(self.n, self.n);
        for &(s, t) in &self.edges {
            a[(s.0, s.0)] += int(1);
            a[(t.0, t.0)] += int(1);
            a[(s.0, t.0)] -= int(1);
            a[(t.0, s.0)] -= int(1);
        }
        a
    }

    /// Same graph with edge `e`'s canonical orientation swapped.
    pub fn reoriented(&self, e: EdgeId) -> Result<Self, GraphError> {
        let (s, t) = self.endpoints(e)?;
        let mut g = self.clone();
        g.edges[e.0] = (t, s);
        Ok(g)
    }
}

/// Checks the minimum principle for a vertex function satisfying `deg(v)·a_v = Σ a_w`.
///
/// At a vertex where `a` attains its minimum, the balance equation forces every neighbour to
/// share the minimum. Starting from one minimising vertex this spreads along edges; on a
/// connected graph it reaches every vertex, so `a` is constant. Returns `false` if the values
/// violate the balance equation or if the spreading leaves some vertex unreached.
pub fn min_principle_holds(g: &DualGraph, a: &[Rational]) -> bool {
    if a.len() != g.vertex_count() {
        return false;
    }
    let adj = g.adjacency();
    for v in 0..g.n {
        let lhs = int(adj[v].len() as i64) * &a[v];
        let rhs = adj[v].iter().fold(Rational::zero(), |acc, &w| acc + &a[w]);
        if lhs != rhs {
            return false;
        }
    }
    let min = a.iter().min().expect("n >= 1").clone();
    let start = a.iter().position(|x| *x == min).unwrap();
    let mut reached = vec![false; g.n];
    reached[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        // a_v is minimal here; any larger neighbour would give deg(v)·a_v < Σ a_w
        if adj[v].iter().any(|&w| a[w] != min) {
            return false;
        }
        for &w in &adj[v] {
            if !reached[w] {
                reached[w] = true;
                queue.push_back(w);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn triangle() -> DualGraph {
        DualGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(triangle().validate().is_ok());
        assert!(matches!(
            DualGraph::new(2, vec![]),
            Err(GraphError::Disconnected { unreached: VertexId(1) })
        ));
        assert!(matches!(
            DualGraph::new(1, vec![(0, 0)]),
            Err(GraphError::LoopEdge { .. })
        ));
        assert_eq!(DualGraph::new(0, vec![]), Err(GraphError::Empty));
        assert!(matches!(
            DualGraph::new(2, vec![(0, 2)]),
            Err(GraphError::BadEdgeEndpoint { .. })
        ));
        assert!(DualGraph::new(1, vec![]).is_ok());
    }

    #[test]
    fn degree_examples() {
        let t = triangle();
        for v in t.vertices() {
            assert_eq!(t.degree(v).unwrap(), 2);
        }
        let two_cycle = DualGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(two_cycle.degree(VertexId(0)).unwrap(), 2);
        let path = DualGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.degree(VertexId(1)).unwrap(), 2);
        assert_eq!(path.degree(VertexId(3)), Err(GraphError::BadVertex(VertexId(3))));
    }

    #[test]
    fn star_examples() {
        use Direction::*;
        assert_eq!(
            triangle().star(VertexId(0)).unwrap(),
            vec![(EdgeId(0), Source), (EdgeId(2), Source)]
        );
        let path = DualGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            path.star(VertexId(1)).unwrap(),
            vec![(EdgeId(0), Target), (EdgeId(1), Source)]
        );
        let two_cycle = DualGraph::cycle(2).unwrap();
        assert_eq!(
            two_cycle.star(VertexId(0)).unwrap(),
            vec![(EdgeId(0), Source), (EdgeId(1), Source)]
        );
    }

    #[test]
    fn incidence_examples() {
        let single = DualGraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(single.incidence_matrix(), Mat::from_i64(&[&[1], &[-1]]));
        assert_eq!(
            triangle().incidence_matrix(),
            Mat::from_i64(&[&[1, 0, 1], &[-1, 1, 0], &[0, -1, -1]])
        );
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(
            triangle().laplacian(),
            Mat::from_i64(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])
        );
        assert_eq!(
            DualGraph::cycle(2).unwrap().laplacian(),
            Mat::from_i64(&[&[2, -2], &[-2, 2]])
        );
        assert_eq!(
            DualGraph::new(2, vec![(0, 1)]).unwrap().laplacian(),
            Mat::from_i64(&[&[1, -1], &[-1, 1]])
        );
    }

    #[test]
    fn cycle_examples() {
        let t = DualGraph::cycle(3).unwrap();
        assert_eq!(t, triangle());
        let two = DualGraph::cycle(2).unwrap();
        assert_eq!(two.multiplicity(VertexId(0), VertexId(1)), 2);
        assert_eq!(DualGraph::cycle(1), Err(GraphError::CycleTooShort(1)));
    }

    #[test]
    fn min_principle() {
        let t = triangle();
        assert!(min_principle_holds(&t, &[rat(2, 3), rat(2, 3), rat(2, 3)]));
        assert!(!min_principle_holds(&t, &[int(0), int(1), int(2)]));
    }

    #[test]
    fn reorienting_swaps_endpoints() {
        let g = triangle().reoriented(EdgeId(2)).unwrap();
        assert_eq!(g.endpoints(EdgeId(2)).unwrap(), (VertexId(2), VertexId(0)));
        assert_eq!(g.laplacian(), triangle().laplacian());
    }
}
