//! Exact backtracking deciders for small graphs.
//!
//! These are the ground truth the closed-form decisions and reduction
//! gadgets are checked against, so they share no code with [`crate::decider`]
//! or [`crate::kvector`]. Vertices are assigned in descending-degree order
//! (ties by id). With symmetry breaking on, a vertex may only open the
//! lowest unused color, which does not change whether a solution exists since
//! all colors are interchangeable.

use thiserror::Error;

use crate::coloring::{Coloring, DegreeBound};
use crate::dsu::RollbackUnionFind;
use crate::graph::{Graph, Vertex};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("number of colors must be positive")]
    NoColors,
    #[error("degree bound must be at least 1")]
    ZeroDegreeBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub symmetry_breaking: bool,
    pub equitable: bool,
    pub t: DegreeBound,
}

impl SearchConfig {
    pub fn new(t: DegreeBound) -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            symmetry_breaking: true,
            equitable: false,
            t,
        }
    }

    pub fn equitable(mut self, equitable: bool) -> Self {
        self.equitable = equitable;
        self
    }

    pub fn symmetry_breaking(mut self, on: bool) -> Self {
        self.symmetry_breaking = on;
        self
    }

    pub fn node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget.max(1);
        self
    }
}

fn search_order(g: &Graph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Class-size bookkeeping for equitable search: sizes stay within
/// `floor..=floor+1`, at most `r` classes reach `floor + 1`, and the
/// unassigned vertices must still be able to lift every class to `floor`.
#[derive(Debug)]
struct SizeLimits {
    enabled: bool,
    floor: usize,
    remainder: usize,
    sizes: Vec<usize>,
    large: usize,
    deficiency: usize,
}

impl SizeLimits {
    fn new(vertex_count: usize, q: usize, enabled: bool) -> Self {
        let floor = vertex_count / q;
        Self {
            enabled,
            floor,
            remainder: vertex_count % q,
            sizes: vec![0; q],
            large: 0,
            deficiency: if enabled { q * floor } else { 0 },
        }
    }

    fn admits(&self, c: usize) -> bool {
        if !self.enabled {
            return true;
        }
        let size = self.sizes[c];
        size < self.floor || (size == self.floor && self.large < self.remainder)
    }

    fn push(&mut self, c: usize) {
        if self.enabled {
            if self.sizes[c] < self.floor {
                self.deficiency -= 1;
            } else {
                self.large += 1;
            }
        }
        self.sizes[c] += 1;
    }

    fn pop(&mut self, c: usize) {
        self.sizes[c] -= 1;
        if self.enabled {
            if self.sizes[c] < self.floor {
                self.deficiency += 1;
            } else {
                self.large -= 1;
            }
        }
    }

    fn reachable(&self, unassigned: usize) -> bool {
        self.deficiency <= unassigned
    }
}

struct NodeCounter {
    used: u64,
    budget: u64,
}

impl NodeCounter {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.used += 1;
        if self.used > self.budget {
            return Err(OracleError::BudgetExhausted {
                budget: self.budget,
            });
        }
        Ok(())
    }
}

struct TreeSearch<'g> {
    graph: &'g Graph,
    q: usize,
    t: DegreeBound,
    symmetry_breaking: bool,
    order: Vec<Vertex>,
    colors: Vec<usize>,
    inner_degree: Vec<usize>,
    forest: RollbackUnionFind,
    limits: SizeLimits,
    nodes: NodeCounter,
    same_class: Vec<Vertex>,
}

impl TreeSearch<'_> {
    fn run(&mut self, depth: usize, opened: usize) -> Result<bool, OracleError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        let limit = if self.symmetry_breaking {
            self.q.min(opened + 1)
        } else {
            self.q
        };
        for c in 0..limit {
            self.nodes.tick()?;
            if !self.limits.admits(c) {
                continue;
            }
            let checkpoint = self.forest.time();
            if !self.attach(v, c) {
                self.forest.rollback(checkpoint);
                continue;
            }
            self.colors[v] = c;
            self.limits.push(c);
            let unassigned = self.order.len() - depth - 1;
            for &u in &self.same_class {
                self.inner_degree[u] += 1;
            }
            self.inner_degree[v] = self.same_class.len();
            let attached = std::mem::take(&mut self.same_class);

            if self.limits.reachable(unassigned) && self.run(depth + 1, opened.max(c + 1))? {
                return Ok(true);
            }

            for &u in &attached {
                self.inner_degree[u] -= 1;
            }
            self.inner_degree[v] = 0;
            self.same_class = attached;
            self.limits.pop(c);
            self.colors[v] = usize::MAX;
            self.forest.rollback(checkpoint);
        }
        Ok(false)
    }

    /// Collects `v`'s neighbors already colored `c` into `same_class` and
    /// merges them into `v`'s tree. Fails on a cycle or a degree excess.
    fn attach(&mut self, v: Vertex, c: usize) -> bool {
        self.same_class.clear();
        for &u in self.graph.neighbors(v) {
            if self.colors[u] != c {
                continue;
            }
            if !self.t.allows(self.inner_degree[u] + 1) {
                return false;
            }
            self.same_class.push(u);
        }
        if !self.t.allows(self.same_class.len()) {
            return false;
        }
        let Self {
            forest, same_class, ..
        } = self;
        same_class.iter().all(|&u| forest.union(v, u))
    }
}

/// Finds a `(q,t)`-tree-coloring of `g` (equitable if `cfg.equitable`), or
/// proves there is none.
pub fn oracle_tree(
    g: &Graph,
    q: usize,
    cfg: &SearchConfig,
) -> Result<Option<Coloring>, OracleError> {
    if q == 0 {
        return Err(OracleError::NoColors);
    }
    if cfg.t == DegreeBound::Finite(0) {
        return Err(OracleError::ZeroDegreeBound);
    }
    let n = g.vertex_count();
    let mut search = TreeSearch {
        graph: g,
        q,
        t: cfg.t,
        symmetry_breaking: cfg.symmetry_breaking,
        order: search_order(g),
        colors: vec![usize::MAX; n],
        inner_degree: vec![0; n],
        forest: RollbackUnionFind::new(n),
        limits: SizeLimits::new(n, q, cfg.equitable),
        nodes: NodeCounter {
            used: 0,
            budget: cfg.node_budget,
        },
        same_class: Vec::new(),
    };
    if !search.limits.reachable(n) {
        return Ok(None);
    }
    if search.run(0, 0)? {
        Ok(Some(
            Coloring::new(q, search.colors).expect("colors below q"),
        ))
    } else {
        Ok(None)
    }
}

struct ProperSearch<'g> {
    graph: &'g Graph,
    q: usize,
    order: Vec<Vertex>,
    colors: Vec<usize>,
    limits: SizeLimits,
    nodes: NodeCounter,
}

impl ProperSearch<'_> {
    fn run(&mut self, depth: usize, opened: usize) -> Result<bool, OracleError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        for c in 0..self.q.min(opened + 1) {
            self.nodes.tick()?;
            if !self.limits.admits(c)
                || self.graph.neighbors(v).iter().any(|&u| self.colors[u] == c)
            {
                continue;
            }
            self.colors[v] = c;
            self.limits.push(c);
            let unassigned = self.order.len() - depth - 1;
            if self.limits.reachable(unassigned) && self.run(depth + 1, opened.max(c + 1))? {
                return Ok(true);
            }
            self.limits.pop(c);
            self.colors[v] = usize::MAX;
        }
        Ok(false)
    }
}

fn proper_search(
    g: &Graph,
    q: usize,
    equitable: bool,
    budget: u64,
) -> Result<Option<Coloring>, OracleError> {
    if q == 0 {
        return Err(OracleError::NoColors);
    }
    let n = g.vertex_count();
    let mut search = ProperSearch {
        graph: g,
        q,
        order: search_order(g),
        colors: vec![usize::MAX; n],
        limits: SizeLimits::new(n, q, equitable),
        nodes: NodeCounter { used: 0, budget },
    };
    if search.run(0, 0)? {
        Ok(Some(
            Coloring::new(q, search.colors).expect("colors below q"),
        ))
    } else {
        Ok(None)
    }
}

/// Finds a proper `q`-coloring of `g`, or proves there is none.
pub fn oracle_proper(g: &Graph, q: usize, budget: u64) -> Result<Option<Coloring>, OracleError> {
    proper_search(g, q, false, budget)
}

/// Finds a proper equitable `q`-coloring of `g`, or proves there is none.
pub fn oracle_proper_equitable(
    g: &Graph,
    q: usize,
    budget: u64,
) -> Result<Option<Coloring>, OracleError> {
    proper_search(g, q, true, budget)
}
