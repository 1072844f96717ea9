//! Simple undirected graphs on dense vertex ids `0..vertex_count`.
//!
//! Graphs are immutable once built. Every constructor normalizes edges to
//! `(u, v)` with `u < v` and keeps them sorted, so two graphs with the same
//! edge set compare equal and serialize identically.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::dsu::RollbackUnionFind;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    ShortCycle(usize),
    #[error("vertex {vertex} out of range for graph on {vertex_count} vertices")]
    OutOfRange { vertex: Vertex, vertex_count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<Vertex>>,
    labels: BTreeMap<Vertex, String>,
}

/// Side assignment of a complete bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionMeta {
    pub x_vertices: Vec<Vertex>,
    pub y_vertices: Vec<Vertex>,
}

impl BipartitionMeta {
    pub fn m(&self) -> usize {
        self.x_vertices.len()
    }

    pub fn n(&self) -> usize {
        self.y_vertices.len()
    }

    /// The same bipartition with the roles of X and Y exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            x_vertices: self.y_vertices.clone(),
            y_vertices: self.x_vertices.clone(),
        }
    }
}

/// Result of [`Graph::induced`]: the re-indexed subgraph plus, for each new
/// vertex id, the id it had in the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub back_map: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph, rejecting the 0-vertex graph, self-loops, duplicate
    /// edges (in either orientation) and out-of-range endpoints.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        Self::build(vertex_count, edges)
    }

    fn build<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::OutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            vertex_count,
            edges: normalized,
            adjacency,
            labels: BTreeMap::new(),
        })
    }

    /// Edgeless graph on `vertex_count` vertices.
    pub fn empty(vertex_count: usize) -> Result<Self, GraphError> {
        Self::new(vertex_count, std::iter::empty())
    }

    /// The complete graph `K_k`.
    pub fn complete(k: usize) -> Result<Self, GraphError> {
        Self::new(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
    }

    /// The cycle `C_k`, `k >= 3`.
    pub fn cycle(k: usize) -> Result<Self, GraphError> {
        if k < 3 {
            return Err(GraphError::ShortCycle(k));
        }
        Self::new(k, (0..k).map(|i| (i, (i + 1) % k)))
    }

    /// The path on `k` vertices.
    pub fn path(k: usize) -> Result<Self, GraphError> {
        Self::new(k, (1..k).map(|i| (i - 1, i)))
    }

    pub fn with_labels<I, S>(mut self, labels: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, S)>,
        S: Into<String>,
    {
        for (v, label) in labels {
            if v >= self.vertex_count {
                return Err(GraphError::OutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
            self.labels.insert(v, label.into());
        }
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count
    }

    /// `self ∨ other`: disjoint union plus every edge between the two parts.
    /// Vertices of `self` keep their ids; those of `other` are shifted by
    /// `self.vertex_count()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count;
        let cross = (0..shift).flat_map(|u| (0..other.vertex_count).map(move |v| (u, v + shift)));
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .chain(cross);
        let mut joined = Self::build(shift + other.vertex_count, edges)
            .expect("join of two simple graphs is simple");
        joined.labels = self.labels.clone();
        joined
            .labels
            .extend(other.labels.iter().map(|(&v, l)| (v + shift, l.clone())));
        joined
    }

    /// Appends `count` isolated vertices with ids `vertex_count..`.
    pub fn add_isolated(&self, count: usize) -> Graph {
        let mut padded = self.clone();
        padded.vertex_count += count;
        padded.adjacency.resize(padded.vertex_count, Vec::new());
        padded
    }

    /// Subgraph induced by `subset`, re-indexed in ascending id order.
    /// Repeated ids are collapsed. An empty subset yields the 0-vertex graph.
    pub fn induced(&self, subset: &[Vertex]) -> Result<InducedSubgraph, GraphError> {
        let mut back_map = subset.to_vec();
        back_map.sort_unstable();
        back_map.dedup();
        if let Some(&v) = back_map.iter().find(|&&v| v >= self.vertex_count) {
            return Err(GraphError::OutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        let mut index = vec![usize::MAX; self.vertex_count];
        for (new, &old) in back_map.iter().enumerate() {
            index[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let mut graph = Self::build(back_map.len(), edges).expect("subgraph of a simple graph");
        graph.labels = self
            .labels
            .iter()
            .filter(|(&v, _)| index[v] != usize::MAX)
            .map(|(&v, l)| (index[v], l.clone()))
            .collect();
        Ok(InducedSubgraph { graph, back_map })
    }

    pub fn component_count(&self) -> usize {
        let mut dsu = RollbackUnionFind::new(self.vertex_count);
        let merged = self.edges.iter().filter(|&&(u, v)| dsu.union(u, v)).count();
        self.vertex_count - merged
    }

    /// Acyclic iff `|E| = |V| - #components`.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.component_count() == self.vertex_count
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// `K_{m,n}` with `X = 0..m` and `Y = m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<(Graph, BipartitionMeta), GraphError> {
    let graph = Graph::new(m + n, (0..m).flat_map(|x| (m..m + n).map(move |y| (x, y))))?;
    let meta = BipartitionMeta {
        x_vertices: (0..m).collect(),
        y_vertices: (m..m + n).collect(),
    };
    Ok((graph, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn has_cycle_dfs(g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        for root in g.vertices() {
            if seen[root] {
                continue;
            }
            let mut stack = vec![(root, usize::MAX)];
            seen[root] = true;
            while let Some((v, parent)) = stack.pop() {
                for &w in g.neighbors(v) {
                    if w == parent {
                        continue;
                    }
                    if seen[w] {
                        return true;
                    }
                    seen[w] = true;
                    stack.push((w, v));
                }
            }
        }
        false
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
                let edges = pairs.iter().zip(mask).filter(|(_, b)| *b).map(|(e, _)| *e);
                Graph::new(n, edges).unwrap()
            })
        })
    }

    #[test]
    fn complete_bipartite_examples() {
        let (g, meta) = complete_bipartite(2, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert_eq!(g.max_degree(), 2);
        assert!(!g.is_forest());
        assert_eq!(meta.x_vertices, vec![0, 1]);
        assert_eq!(meta.y_vertices, vec![2, 3]);

        let (star, _) = complete_bipartite(1, 3).unwrap();
        assert_eq!(star.degree(0), 3);
        assert_eq!(star.max_degree(), 3);

        let (g, meta) = complete_bipartite(3, 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 0));
        assert!(meta.y_vertices.is_empty());

        assert_eq!(complete_bipartite(0, 0), Err(GraphError::Empty));
    }

    #[test]
    fn complete_examples() {
        let k1 = Graph::complete(1).unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        assert_eq!(Graph::complete(3).unwrap(), Graph::cycle(3).unwrap());
        assert_eq!(Graph::complete(5).unwrap().edge_count(), 10);
        assert_eq!(Graph::complete(0), Err(GraphError::Empty));
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::OutOfRange {
                vertex: 2,
                vertex_count: 2
            })
        );
    }

    #[test]
    fn join_examples() {
        let k4 = Graph::complete(4).unwrap();
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k4.join(&k3), Graph::complete(7).unwrap());

        let c4 = Graph::cycle(4).unwrap();
        let h = c4.join(&k3);
        assert_eq!(h.vertex_count(), 7);
        assert_eq!(h.edge_count(), 4 + 3 + 4 * 3);
        // every cross pair is present
        for u in 0..4 {
            for v in 4..7 {
                assert!(h.has_edge(u, v));
            }
        }

        let e2 = Graph::empty(2).unwrap();
        let (k22, _) = complete_bipartite(2, 2).unwrap();
        assert_eq!(e2.join(&e2), k22);
    }

    #[test]
    fn join_shifts_labels() {
        let g = Graph::empty(1).unwrap().with_labels([(0, "left")]).unwrap();
        let h = Graph::empty(2)
            .unwrap()
            .with_labels([(1, "right")])
            .unwrap();
        let j = g.join(&h);
        assert_eq!(j.label(0), Some("left"));
        assert_eq!(j.label(2), Some("right"));
        assert_eq!(j.label(1), None);
    }

    #[test]
    fn add_isolated_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.add_isolated(0), k3);
        let padded = k3.add_isolated(9);
        assert_eq!((padded.vertex_count(), padded.edge_count()), (12, 3));
        assert_eq!(padded.degree(11), 0);
        let six = Graph::empty(1).unwrap().add_isolated(5);
        assert_eq!((six.vertex_count(), six.edge_count()), (6, 0));
    }

    #[test]
    fn induced_examples() {
        let (k22, meta) = complete_bipartite(2, 2).unwrap();
        let side = k22.induced(&meta.x_vertices).unwrap();
        assert_eq!((side.graph.vertex_count(), side.graph.edge_count()), (2, 0));

        let k5 = Graph::complete(5).unwrap();
        assert_eq!(
            k5.induced(&[4, 0, 2]).unwrap().graph,
            Graph::complete(3).unwrap()
        );

        let c4 = Graph::cycle(4).unwrap();
        let sub = c4.induced(&[0, 1, 2]).unwrap();
        assert_eq!(sub.graph, Graph::path(3).unwrap());
        assert_eq!(sub.back_map, vec![0, 1, 2]);

        assert_eq!(
            c4.induced(&[0, 7]).unwrap_err(),
            GraphError::OutOfRange {
                vertex: 7,
                vertex_count: 4
            }
        );
        assert_eq!(c4.induced(&[]).unwrap().graph.vertex_count(), 0);
    }

    #[test]
    fn forest_and_degree_examples() {
        assert!(!Graph::cycle(4).unwrap().is_forest());
        assert!(complete_bipartite(1, 3).unwrap().0.is_forest());
        assert!(Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_forest());
        assert_eq!(Graph::empty(4).unwrap().max_degree(), 0);
        assert_eq!(Graph::complete(5).unwrap().max_degree(), 4);
    }

    proptest! {
        #[test]
        fn forest_test_matches_dfs(g in arb_graph(20)) {
            prop_assert_eq!(g.is_forest(), !has_cycle_dfs(&g));
        }

        #[test]
        fn join_sizes(g in arb_graph(7), h in arb_graph(7)) {
            let j = g.join(&h);
            prop_assert_eq!(j.vertex_count(), g.vertex_count() + h.vertex_count());
            prop_assert_eq!(
                j.edge_count(),
                g.edge_count() + h.edge_count() + g.vertex_count() * h.vertex_count()
            );
        }

        #[test]
        fn induced_on_everything_is_identity(g in arb_graph(12)) {
            let all: Vec<_> = g.vertices().collect();
            let sub = g.induced(&all).unwrap();
            prop_assert_eq!(&sub.graph, &g);
            prop_assert_eq!(sub.back_map, all);
        }
    }
}
