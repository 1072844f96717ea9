//! Grid sweep comparing the closed-form decision, the shape-count system and
//! the exact oracle on `K_{m,n}`.

use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::DegreeBound;
use crate::decider::{self, Clause, DeciderError};
use crate::graph::{complete_bipartite, GraphError};
use crate::kvector::{self, KVectorError, Params};
use crate::oracle::{self, OracleError, SearchConfig};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Decider(#[from] DeciderError),
    #[error(transparent)]
    KVector(#[from] KVectorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("oracle on K({m},{n}) with q={q}, t={t}: {source}")]
    Oracle {
        m: usize,
        n: usize,
        q: usize,
        t: DegreeBound,
        source: OracleError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OracleCell {
    Skipped,
    Decided(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SweepRow {
    pub m: usize,
    pub n: usize,
    pub q: usize,
    pub t: DegreeBound,
    pub a: usize,
    pub r: usize,
    /// Clause of the proper condition met by either orientation.
    pub cond_a: Option<Clause>,
    /// Clause of the tree condition met by either orientation.
    pub cond_b: Option<Clause>,
    pub closed_form: bool,
    pub kvector: bool,
    pub oracle: OracleCell,
    pub agree: bool,
}

pub const CSV_HEADER: &str = "m,n,q,t,a,r,condA,condB,closed_form,kvector,oracle,agree";

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let clause = |c: Option<Clause>| c.map_or("none", Clause::as_str);
        let oracle = match self.oracle {
            OracleCell::Skipped => "skipped".to_string(),
            OracleCell::Decided(b) => b.to_string(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.m,
            self.n,
            self.q,
            self.t,
            self.a,
            self.r,
            clause(self.cond_a),
            clause(self.cond_b),
            self.closed_form,
            self.kvector,
            oracle,
            self.agree
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_sum: usize,
    pub max_q: usize,
    pub t_list: Vec<DegreeBound>,
    /// The oracle runs only when `m + n` is at most this.
    pub oracle_limit: usize,
    pub node_budget: u64,
}

fn either(
    m: usize,
    n: usize,
    q: usize,
    cond: fn(usize, usize, usize) -> Result<Option<Clause>, DeciderError>,
) -> Result<Option<Clause>, DeciderError> {
    Ok(cond(m, n, q)?.or(cond(n, m, q)?))
}

pub fn sweep_row(
    m: usize,
    n: usize,
    q: usize,
    t: DegreeBound,
    oracle_limit: usize,
    node_budget: u64,
) -> Result<SweepRow, SweepError> {
    let p = Params::new(m, n, q)?;
    let degenerate = p.is_degenerate();
    let (cond_a, cond_b, kvector) = if degenerate {
        (Some(Clause::Degenerate), Some(Clause::Degenerate), true)
    } else {
        (
            either(m, n, q, decider::condition_a)?,
            either(m, n, q, decider::condition_b)?,
            kvector::enumerate_tree(&p, t)?.is_some(),
        )
    };
    let closed_form = decider::decide_equitable_tree(m, n, q, t)?.feasible;
    let oracle = if m + n <= oracle_limit {
        let (g, _) = complete_bipartite(m, n)?;
        let cfg = SearchConfig::new(t)
            .equitable(true)
            .node_budget(node_budget);
        let found = oracle::oracle_tree(&g, q, &cfg).map_err(|source| SweepError::Oracle {
            m,
            n,
            q,
            t,
            source,
        })?;
        OracleCell::Decided(found.is_some())
    } else {
        OracleCell::Skipped
    };
    let agree = closed_form == kvector && oracle != OracleCell::Decided(!closed_form);
    Ok(SweepRow {
        m,
        n,
        q,
        t,
        a: p.a(),
        r: p.r(),
        cond_a,
        cond_b,
        closed_form,
        kvector,
        oracle,
        agree,
    })
}

/// All rows with `m, n >= 1`, `m + n <= max_sum`, `1 <= q <= max_q` and `t`
/// from the list, sorted.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, SweepError> {
    let mut tuples = Vec::new();
    for m in 1..cfg.max_sum {
        for n in 1..=cfg.max_sum - m {
            for q in 1..=cfg.max_q {
                for &t in &cfg.t_list {
                    tuples.push((m, n, q, t));
                }
            }
        }
    }
    let mut rows = tuples
        .into_par_iter()
        .map(|(m, n, q, t)| sweep_row(m, n, q, t, cfg.oracle_limit, cfg.node_budget))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort();
    rows.dedup();
    Ok(rows)
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_NODE_BUDGET;

    const INF: DegreeBound = DegreeBound::Unbounded;

    #[test]
    fn named_rows() {
        let row = sweep_row(7, 3, 2, INF, 10, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(
            row.to_csv(),
            "7,3,2,inf,5,0,none,none,false,false,false,true"
        );

        let row = sweep_row(2, 2, 2, INF, 10, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(row.cond_a, Some(Clause::AI));
        assert!(row.closed_form && row.agree);

        let row = sweep_row(30, 30, 2, INF, 10, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(row.oracle, OracleCell::Skipped);
    }

    #[test]
    fn small_grid_agrees_and_is_sorted() {
        let cfg = SweepConfig {
            max_sum: 6,
            max_q: 4,
            t_list: vec![INF, DegreeBound::Finite(1), DegreeBound::Finite(2)],
            oracle_limit: 6,
            node_budget: DEFAULT_NODE_BUDGET,
        };
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 15 * 4 * 3);
        assert!(rows.windows(2).all(|w| w[0] < w[1]));
        assert!(
            rows.iter().all(|r| r.agree),
            "{:?}",
            rows.iter().find(|r| !r.agree)
        );
        assert_eq!(to_csv(&rows), to_csv(&run_sweep(&cfg).unwrap()));
        assert!(to_csv(&rows).starts_with(&format!("{CSV_HEADER}\n1,1,1,1,")));
    }
}
