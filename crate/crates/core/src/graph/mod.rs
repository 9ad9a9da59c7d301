//! Sparse undirected graphs.
//!
//! A [`Graph`] is an immutable compressed adjacency structure: vertices are
//! dense indices `0..n`, every neighbor list is strictly increasing, and
//! adjacency is symmetric. All constructors validate these invariants.

mod gnp;
mod io;
mod predicates;

pub use gnp::{sample_gnp, GnpParams};
pub use io::{read_edge_list, write_edge_list};
pub use predicates::{
    induced_subgraph, is_independent_set, is_induced_copy, is_induced_path, split_vertices,
    VertexSplit,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate vertex {0} in vertex set")]
    DuplicateVertex(usize),
    #[error("adjacency is not symmetric: {0} lists {1} but not vice versa")]
    Asymmetric(usize, usize),
    #[error("mapping is not injective: vertex {0} is hit twice")]
    NotInjective(usize),
    #[error("mapping has {got} entries, pattern has {expected} vertices")]
    MappingLength { expected: usize, got: usize },
    #[error("need at least 2 vertices to split, got {0}")]
    SplitTooSmall(usize),
    #[error("edge list parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has {0} vertices, which exceeds the u32 index space")]
    TooLarge(usize),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for GraphError {
    fn from(e: std::io::Error) -> Self {
        GraphError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GraphError>;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("m", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph { offsets: vec![0; n + 1], targets: Vec::new() }
    }

    /// Builds a graph from an edge list in any order and orientation.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(GraphError::TooLarge(n));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            normalized.push((u.min(v) as u32, u.max(v) as u32));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0 as usize, w[0].1 as usize));
        }
        Ok(Self::from_sorted_pairs(n, &normalized))
    }

    /// Builds a graph from per-vertex neighbor lists, which must already be
    /// symmetric; lists are sorted here.
    pub fn from_adjacency(lists: Vec<Vec<usize>>) -> Result<Self> {
        let n = lists.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for (u, mut list) in lists.into_iter().enumerate() {
            list.sort_unstable();
            for (i, &v) in list.iter().enumerate() {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if i > 0 && list[i - 1] == v {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
                targets.push(v as u32);
            }
            offsets.push(targets.len());
        }
        let g = Graph { offsets, targets };
        g.validate()?;
        Ok(g)
    }

    /// `pairs` must be strictly increasing in lexicographic order with `u < v`.
    /// Filling lists in that order leaves every list sorted.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        let g = Graph { offsets, targets };
        debug_assert!(g.validate().is_ok());
        g
    }

    /// Checks sortedness, range, loop-freeness and symmetry.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        for u in 0..n {
            let list = self.neighbors(u);
            for (i, &v) in list.iter().enumerate() {
                let v = v as usize;
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if i > 0 && list[i - 1] as usize >= v {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
            }
        }
        for u in 0..n {
            for &v in self.neighbors(u) {
                if self.neighbors(v as usize).binary_search(&(u as u32)).is_err() {
                    return Err(GraphError::Asymmetric(u, v as usize));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Binary search in the shorter of the two lists. Out-of-range vertices
    /// are never adjacent.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return false;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path is a valid graph")
    }

    /// Cycle on `n >= 3` vertices in index order.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Self::from_edges(n, &edges).expect("cycle is a valid graph")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(n, &edges).expect("complete graph is valid")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star is a valid graph")
    }

    /// Vertex-disjoint union, second graph shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.vertex_count();
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Self::from_edges(shift + other.vertex_count(), &edges).expect("union of valid graphs")
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        stack.push(v as usize);
                    }
                }
            }
        }
        count
    }

    /// Acyclic and connected (the empty graph is not a tree).
    pub fn is_tree(&self) -> bool {
        let n = self.vertex_count();
        n > 0 && self.edge_count() == n - 1 && self.component_count() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.component_count() == self.vertex_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn from_adjacency_rejects_asymmetry() {
        let err = Graph::from_adjacency(vec![vec![1], vec![]]).unwrap_err();
        assert_eq!(err, GraphError::Asymmetric(0, 1));
    }

    #[test]
    fn families_have_expected_shape() {
        assert_eq!(Graph::path(5).edge_count(), 4);
        assert_eq!(Graph::cycle(5).edge_count(), 5);
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::star(3).max_degree(), 3);
        assert!(Graph::path(4).is_tree());
        assert!(!Graph::cycle(4).is_forest());
        assert!(Graph::path(2).disjoint_union(&Graph::path(3)).is_forest());
        assert_eq!(Graph::empty(4).component_count(), 4);
    }

    #[test]
    fn neighbor_lists_sorted_after_unsorted_input() {
        let g = Graph::from_edges(4, &[(3, 0), (2, 0), (1, 0), (3, 1)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert_eq!(g.neighbors(3), &[0, 1]);
        assert!(g.validate().is_ok());
        assert!(g.has_edge(1, 3));
        assert!(!g.has_edge(1, 2));
        assert!(!g.has_edge(1, 9));
    }
}
