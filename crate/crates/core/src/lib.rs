//! Equitable `(q,t)`-tree-colorings.
//!
//! A `(q,t)`-tree-coloring assigns one of `q` colors to every vertex so that
//! each color class induces a forest of maximum degree at most `t` (or just a
//! forest when `t` is unbounded). It is equitable when class sizes differ by
//! at most one.
//!
//! The crate provides closed-form decisions and witness colorings for
//! complete bipartite graphs ([`decider`]), the shape-count systems behind
//! them ([`kvector`]), reduction gadgets from proper coloring ([`reductions`]),
//! an exact backtracking oracle for small graphs ([`oracle`]), and the text
//! and JSON formats used by the command-line tool ([`format`]).

pub mod coloring;
pub mod decider;
pub mod dsu;
pub mod format;
pub mod graph;
pub mod kvector;
pub mod oracle;
pub mod reductions;
pub mod sweep;

pub use coloring::{
    shape_census, verify_tree_coloring, Coloring, ColoringError, DegreeBound, Shape, ShapeCensus,
    VerifyReport,
};
pub use graph::{complete_bipartite, BipartitionMeta, Graph, GraphError, Vertex};
pub use kvector::{KVector4, KVector8, Params};
