//! Gadgets that transfer proper colorability to tree-colorability.
//!
//! * [`gadget_npt`]: attach `t` private copies of `K_{2q-1}` to every vertex.
//!   Each copy plus its vertex is a `K_{2q}`, whose tree-colorings use every
//!   color exactly twice, so the vertex already has `t` same-colored
//!   neighbors and none may come from the original graph.
//! * [`gadget_npi`]: `G ∨ K_q`, for unbounded degree.
//! * [`pad_equitable`]: `q·n` isolated vertices make any tree-coloring
//!   extendable to an equitable one.
//!
//! Original vertices keep their ids in every gadget.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::DegreeBound;
use crate::graph::{Graph, GraphError, Vertex};
use crate::oracle::{self, OracleError, SearchConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("clique gadget needs q >= 2, got {0}")]
    TooFewColors(usize),
    #[error("number of colors must be positive")]
    NoColors,
    #[error("degree bound must be at least 1")]
    ZeroDegreeBound,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub label: String,
    /// Original vertex a clique copy hangs off, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attached_to: Option<Vertex>,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetOutput {
    pub graph: Graph,
    /// `source_vertex_map[v]` is the id of original vertex `v` in `graph`.
    pub source_vertex_map: Vec<Vertex>,
    pub regions: Vec<Region>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    /// Clique attachment with degree bound `t`.
    Npt { t: usize },
    /// Join with `K_q`.
    Npi,
    /// Isolated-vertex padding; the equivalence is stated for bound `t`.
    Pad { t: DegreeBound },
}

impl ReductionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ReductionKind::Npt { .. } => "npt",
            ReductionKind::Npi => "npi",
            ReductionKind::Pad { .. } => "pad",
        }
    }
}

fn original_labels(n: usize) -> impl Iterator<Item = (Vertex, String)> {
    (0..n).map(|v| (v, format!("G:v{}", v + 1)))
}

fn original_region(n: usize) -> Region {
    Region {
        label: "G".to_string(),
        attached_to: None,
        vertices: (0..n).collect(),
    }
}

/// Joins every vertex of `g` to `t` private copies of `K_{2q-1}`. Copies are
/// numbered by (original vertex, copy index) and laid out in that order
/// after the original vertices.
pub fn gadget_npt(g: &Graph, q: usize, t: usize) -> Result<GadgetOutput, ReductionError> {
    if q < 2 {
        return Err(ReductionError::TooFewColors(q));
    }
    if t == 0 {
        return Err(ReductionError::ZeroDegreeBound);
    }
    let n = g.vertex_count();
    let clique = 2 * q - 1;
    let total = n * (1 + t * clique);
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().to_vec();
    let mut regions = vec![original_region(n)];
    let mut labels: Vec<(Vertex, String)> = original_labels(n).collect();
    let mut next = n;
    for v in 0..n {
        for _ in 0..t {
            let copy = regions.len() - 1;
            let members: Vec<Vertex> = (next..next + clique).collect();
            for (i, &a) in members.iter().enumerate() {
                edges.push((v, a));
                edges.extend(members[i + 1..].iter().map(|&b| (a, b)));
                labels.push((a, format!("clique{}:v{}", copy + 1, i + 1)));
            }
            regions.push(Region {
                label: format!("clique{}", copy + 1),
                attached_to: Some(v),
                vertices: members,
            });
            next += clique;
        }
    }
    debug_assert_eq!(next, total);
    let graph = Graph::new(total, edges)?.with_labels(labels)?;
    Ok(GadgetOutput {
        graph,
        source_vertex_map: (0..n).collect(),
        regions,
    })
}

/// `g ∨ K_q`.
pub fn gadget_npi(g: &Graph, q: usize) -> Result<GadgetOutput, ReductionError> {
    if q == 0 {
        return Err(ReductionError::NoColors);
    }
    let n = g.vertex_count();
    let block = Graph::complete(q)?.with_labels((0..q).map(|i| (i, format!("join:v{}", i + 1))))?;
    let graph = g.clone().with_labels(original_labels(n))?.join(&block);
    Ok(GadgetOutput {
        graph,
        source_vertex_map: (0..n).collect(),
        regions: vec![
            original_region(n),
            Region {
                label: "join".to_string(),
                attached_to: None,
                vertices: (n..n + q).collect(),
            },
        ],
    })
}

/// `g` plus `q·|V(g)|` isolated vertices.
pub fn pad_equitable(g: &Graph, q: usize) -> Result<GadgetOutput, ReductionError> {
    if q == 0 {
        return Err(ReductionError::NoColors);
    }
    let n = g.vertex_count();
    let pad = q * n;
    let graph = g
        .clone()
        .with_labels(original_labels(n))?
        .add_isolated(pad)
        .with_labels((0..pad).map(|i| (n + i, format!("pad:v{}", i + 1))))?;
    Ok(GadgetOutput {
        graph,
        source_vertex_map: (0..n).collect(),
        regions: vec![
            original_region(n),
            Region {
                label: "pad".to_string(),
                attached_to: None,
                vertices: (n..n + pad).collect(),
            },
        ],
    })
}

pub fn build_gadget(
    g: &Graph,
    kind: ReductionKind,
    q: usize,
) -> Result<GadgetOutput, ReductionError> {
    match kind {
        ReductionKind::Npt { t } => gadget_npt(g, q, t),
        ReductionKind::Npi => gadget_npi(g, q),
        ReductionKind::Pad { .. } => pad_equitable(g, q),
    }
}

/// Both sides of a reduction's equivalence, each decided by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Proper `q`-colorability of `g` (npt, npi) or `(q,t)`-tree-colorability
    /// of `g` (pad).
    pub left: bool,
    /// Tree-colorability of the gadget (equitable for pad).
    pub right: bool,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.left == self.right
    }
}

pub fn check_reduction(
    g: &Graph,
    kind: ReductionKind,
    q: usize,
    node_budget: u64,
) -> Result<EquivalenceReport, ReductionError> {
    let gadget = build_gadget(g, kind, q)?;
    let (left, right_cfg) = match kind {
        ReductionKind::Npt { t } => (
            oracle::oracle_proper(g, q, node_budget)?.is_some(),
            SearchConfig::new(DegreeBound::finite(t).map_err(|_| ReductionError::ZeroDegreeBound)?),
        ),
        ReductionKind::Npi => (
            oracle::oracle_proper(g, q, node_budget)?.is_some(),
            SearchConfig::new(DegreeBound::Unbounded),
        ),
        ReductionKind::Pad { t } => {
            let left_cfg = SearchConfig::new(t).node_budget(node_budget);
            (
                oracle::oracle_tree(g, q, &left_cfg)?.is_some(),
                SearchConfig::new(t).equitable(true),
            )
        }
    };
    let right =
        oracle::oracle_tree(&gadget.graph, q, &right_cfg.node_budget(node_budget))?.is_some();
    Ok(EquivalenceReport { left, right })
}
