//! Simple undirected graphs on vertices `0..n`.

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
}

/// An undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: 0 }
    }

    /// Builds a graph from an edge list; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    /// `adj` must be symmetric and loop free; lists are sorted and deduplicated here.
    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph { adj, edges: twice / 2 }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Self::from_adjacency_unchecked(adj)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Neighborhoods as `u64` masks, for graphs with at most 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.order() > 64 {
            return None;
        }
        Some(self.adj.iter().map(|list| list.iter().fold(0u64, |m, &v| m | 1u64 << v)).collect())
    }

    /// Neighborhoods as bitsets of length `order()`.
    pub fn bitset_rows(&self) -> Vec<FixedBitSet> {
        let n = self.order();
        self.adj
            .iter()
            .map(|list| {
                let mut row = FixedBitSet::with_capacity(n);
                for &v in list {
                    row.insert(v);
                }
                row
            })
            .collect()
    }

    pub fn is_independent(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|u| self.adj[u].iter().all(|&v| !set.contains(v)))
    }

    /// Connected components of the subgraph induced by the vertices *not* in `removed`.
    pub fn components_avoiding(&self, removed: &FixedBitSet) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen.contains(s) || removed.contains(s) {
                continue;
            }
            seen.insert(s);
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen.contains(v) && !removed.contains(v) {
                        seen.insert(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The graph with the listed edges removed.
    pub fn without_edges(&self, drop: &[(usize, usize)]) -> Graph {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, list)| {
                list.iter()
                    .copied()
                    .filter(|&v| !drop.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v)))
                    .collect()
            })
            .collect();
        Self::from_adjacency_unchecked(adj)
    }
}

/// A bitset of length `n` holding `members`.
pub fn vertex_set(n: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in members {
        s.insert(v);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_queries() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 1), (2, 3)]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 3);
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(0, 3));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.masks().unwrap()[1], 0b101);
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn components() {
        let g = Graph::path(5);
        let removed = vertex_set(5, [2]);
        assert_eq!(g.components_avoiding(&removed), vec![vec![0, 1], vec![3, 4]]);
        assert_eq!(Graph::complete(4).size(), 6);
        assert!(g.is_independent(&vertex_set(5, [0, 2, 4])));
        assert!(!g.is_independent(&vertex_set(5, [0, 1])));
        assert_eq!(g.without_edges(&[(2, 1)]).size(), 3);
    }
}
