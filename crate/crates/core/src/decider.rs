//! Closed-form decisions for complete bipartite graphs.
//!
//! Condition A decides whether `K_{m,n}` has a proper equitable `q`-coloring;
//! Condition A or B decides whether it has an equitable `(q,t)`-tree-coloring
//! when `t >= a`. Both are pure integer arithmetic on `m`, `n`, `q`. Below
//! `t = a` the conditions do not apply and the decision falls back to the
//! shape-filtered enumeration in [`crate::kvector`].

use std::fmt;

use thiserror::Error;

use crate::coloring::{Coloring, DegreeBound, Shape};
use crate::graph::BipartitionMeta;
use crate::kvector::{self, KVector4, KVector8, KVectorError, Params};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeciderError {
    #[error(transparent)]
    Params(#[from] KVectorError),
    #[error("degree bound must be at least 1")]
    ZeroDegreeBound,
    #[error("clause {clause} does not hold for m = {m}, n = {n}, q = {q}")]
    ClauseMismatch {
        clause: Clause,
        m: usize,
        n: usize,
        q: usize,
    },
    #[error("k-vector {k:?} is not a solution for m = {m}, n = {n}, q = {q}")]
    Infeasible {
        k: [usize; 8],
        m: usize,
        n: usize,
        q: usize,
    },
}

/// Which rule produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    AI,
    AII,
    AIII,
    BI,
    BII,
    Degenerate,
    Enumerated,
    None,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::AI => "A.i",
            Clause::AII => "A.ii",
            Clause::AIII => "A.iii",
            Clause::BI => "B.i",
            Clause::BII => "B.ii",
            Clause::Degenerate => "degenerate",
            Clause::Enumerated => "enumerated",
            Clause::None => "none",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    AsGiven,
    Swapped,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::AsGiven => "as-given",
            Orientation::Swapped => "swapped",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessK {
    Proper(KVector4),
    Tree(KVector8),
}

impl WitnessK {
    pub fn as_slice(&self) -> &[usize] {
        match self {
            WitnessK::Proper(k) => &k.0,
            WitnessK::Tree(k) => &k.0,
        }
    }

    pub fn to_tree(self) -> KVector8 {
        match self {
            WitnessK::Proper(k) => k.embed(),
            WitnessK::Tree(k) => k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub feasible: bool,
    pub orientation: Orientation,
    pub clause: Clause,
    pub params: Params,
    /// Shape counts in the orientation given by `orientation`.
    pub witness_k: Option<WitnessK>,
    pub witness_coloring: Option<Coloring>,
}

/// Question asked of `K_{m,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    ProperEquitable,
    EquitableTree(DegreeBound),
}

fn nondegenerate(m: usize, n: usize, q: usize) -> Result<Params, DeciderError> {
    let p = Params::new(m, n, q)?;
    if p.is_degenerate() {
        return Err(KVectorError::Degenerate { q, total: m + n }.into());
    }
    Ok(p)
}

/// First clause of Condition A satisfied by the ordered pair `(m, n)`.
pub fn condition_a(m: usize, n: usize, q: usize) -> Result<Option<Clause>, DeciderError> {
    let p = nondegenerate(m, n, q)?;
    let (a, r) = (p.a(), p.r());
    if r == 0 && m.is_multiple_of(a) {
        return Ok(Some(Clause::AI));
    }
    if r >= 1 && r * (a + 1) >= m {
        let c = m.div_ceil(a + 1);
        if c.min(q - r) >= (a + 1) * c - m {
            return Ok(Some(Clause::AII));
        }
    }
    if r >= 1 && r * (a + 1) < m {
        let c = (m - r).div_ceil(a);
        let slack = (r as i64).min(q as i64 - c as i64);
        if slack >= (a * c + r - m) as i64 {
            return Ok(Some(Clause::AIII));
        }
    }
    Ok(None)
}

/// First clause of Condition B satisfied by the ordered pair `(m, n)`.
///
/// Clause (ii) covers two cases: `r = 0` with `q + (a-1)⌊m/a⌋ >= m`, and
/// `r >= 1`, `r(a+1) < m` with `q + r + (a-1)⌊(m-r)/a⌋ >= m`. The first is
/// the second with `r = 0` substituted.
pub fn condition_b(m: usize, n: usize, q: usize) -> Result<Option<Clause>, DeciderError> {
    let p = nondegenerate(m, n, q)?;
    let (a, r) = (p.a(), p.r());
    if r >= 1 && r * (a + 1) >= m && q + a * (m / (a + 1)) >= m {
        return Ok(Some(Clause::BI));
    }
    let second_branch = r == 0 || r * (a + 1) < m;
    if second_branch && q + r + (a - 1) * ((m - r) / a) >= m {
        return Ok(Some(Clause::BII));
    }
    Ok(None)
}

fn mismatch(clause: Clause, m: usize, n: usize, q: usize) -> DeciderError {
    DeciderError::ClauseMismatch { clause, m, n, q }
}

/// Shape counts of a proper equitable coloring certified by `clause`.
pub fn witness_a(m: usize, n: usize, q: usize, clause: Clause) -> Result<KVector4, DeciderError> {
    if condition_a(m, n, q)? != Some(clause) {
        return Err(mismatch(clause, m, n, q));
    }
    let p = nondegenerate(m, n, q)?;
    let (a, r) = (p.a(), p.r());
    let k = match clause {
        // r = 0: every class has exactly a vertices
        Clause::AI => [0, m / a, 0, n / a],
        Clause::AII | Clause::AIII => {
            let c = if clause == Clause::AII {
                m.div_ceil(a + 1)
            } else {
                (m - r).div_ceil(a)
            };
            [
                m - a * c,
                (a + 1) * c - m,
                r + a * c - m,
                m + q - r - (a + 1) * c,
            ]
        }
        _ => return Err(mismatch(clause, m, n, q)),
    };
    Ok(KVector4(k))
}

/// Shape counts of an equitable tree-coloring certified by `clause`.
pub fn witness_b(m: usize, n: usize, q: usize, clause: Clause) -> Result<KVector8, DeciderError> {
    if condition_b(m, n, q)? != Some(clause) {
        return Err(mismatch(clause, m, n, q));
    }
    let p = nondegenerate(m, n, q)?;
    let (a, r) = (p.a(), p.r());
    let k = match clause {
        Clause::BI => {
            let f = m / (a + 1);
            let k3 = (r + a * f).saturating_sub(m);
            [
                f,
                0,
                k3,
                q + a * f - m - k3,
                0,
                0,
                r - f - k3,
                m + k3 - r - a * f,
            ]
        }
        Clause::BII if r == 0 => {
            let f = m / a;
            [0, f, 0, q + (a - 1) * f - m, 0, 0, 0, m - a * f]
        }
        Clause::BII => {
            let f = (m - r) / a;
            [r, f - r, 0, q + r + (a - 1) * f - m, 0, 0, 0, m - r - a * f]
        }
        _ => return Err(mismatch(clause, m, n, q)),
    };
    Ok(KVector8(k))
}

/// Lays out classes in shape order. X vertices are consumed in the order of
/// `meta.x_vertices`, Y vertices likewise; a class takes its X vertices
/// before its Y vertices. Class `i` gets color `i`.
pub fn realize(meta: &BipartitionMeta, q: usize, k: &KVector8) -> Result<Coloring, DeciderError> {
    let (m, n) = (meta.m(), meta.n());
    let p = nondegenerate(m, n, q)?;
    if kvector::residual_tree(k, &p)? != (0, 0, 0) {
        return Err(DeciderError::Infeasible { k: k.0, m, n, q });
    }
    let mut colors = vec![usize::MAX; m + n];
    let mut xs = meta.x_vertices.iter();
    let mut ys = meta.y_vertices.iter();
    let mut color = 0;
    for shape in Shape::ALL {
        let (dx, dy) = shape.dims(p.a());
        for _ in 0..k.count(shape) {
            for &v in xs.by_ref().take(dx).chain(ys.by_ref().take(dy)) {
                colors[v] = color;
            }
            color += 1;
        }
    }
    Ok(Coloring::new(q, colors).expect("shape counts sum to q"))
}

fn degenerate_verdict(p: Params) -> Verdict {
    let q = p.q;
    let colors = (0..p.m + p.n).map(|v| v % q).collect();
    Verdict {
        feasible: true,
        orientation: Orientation::AsGiven,
        clause: Clause::Degenerate,
        params: p,
        witness_k: None,
        witness_coloring: Some(Coloring::new(q, colors).expect("q >= 1")),
    }
}

fn is_degenerate(p: &Params) -> bool {
    p.is_degenerate() || p.m == 0 || p.n == 0
}

fn oriented_meta(p: &Params, orientation: Orientation) -> BipartitionMeta {
    let meta = BipartitionMeta {
        x_vertices: (0..p.m).collect(),
        y_vertices: (p.m..p.m + p.n).collect(),
    };
    match orientation {
        Orientation::AsGiven => meta,
        Orientation::Swapped => meta.swapped(),
    }
}

fn certified(
    p: Params,
    orientation: Orientation,
    clause: Clause,
    k: WitnessK,
) -> Result<Verdict, DeciderError> {
    let coloring = realize(&oriented_meta(&p, orientation), p.q, &k.to_tree())?;
    Ok(Verdict {
        feasible: true,
        orientation,
        clause,
        params: p,
        witness_k: Some(k),
        witness_coloring: Some(coloring),
    })
}

fn infeasible(p: Params) -> Verdict {
    Verdict {
        feasible: false,
        orientation: Orientation::AsGiven,
        clause: Clause::None,
        params: p,
        witness_k: None,
        witness_coloring: None,
    }
}

fn try_condition_a(p: Params) -> Result<Option<Verdict>, DeciderError> {
    for (orientation, (m, n)) in [
        (Orientation::AsGiven, (p.m, p.n)),
        (Orientation::Swapped, (p.n, p.m)),
    ] {
        if let Some(clause) = condition_a(m, n, p.q)? {
            let k = witness_a(m, n, p.q, clause)?;
            return certified(p, orientation, clause, WitnessK::Proper(k)).map(Some);
        }
    }
    Ok(None)
}

/// Does `K_{m,n}` have a proper equitable `q`-coloring?
pub fn decide_proper_equitable(m: usize, n: usize, q: usize) -> Result<Verdict, DeciderError> {
    let p = Params::new(m, n, q)?;
    if is_degenerate(&p) {
        return Ok(degenerate_verdict(p));
    }
    Ok(try_condition_a(p)?.unwrap_or_else(|| infeasible(p)))
}

/// Does `K_{m,n}` have an equitable `(q,t)`-tree-coloring?
pub fn decide_equitable_tree(
    m: usize,
    n: usize,
    q: usize,
    t: DegreeBound,
) -> Result<Verdict, DeciderError> {
    if t == DegreeBound::Finite(0) {
        return Err(DeciderError::ZeroDegreeBound);
    }
    let p = Params::new(m, n, q)?;
    if is_degenerate(&p) {
        return Ok(degenerate_verdict(p));
    }
    if !t.at_least(p.a()) {
        return match kvector::enumerate_tree(&p, t)? {
            Some(k) => certified(
                p,
                Orientation::AsGiven,
                Clause::Enumerated,
                WitnessK::Tree(k),
            ),
            None => Ok(infeasible(p)),
        };
    }
    if let Some(verdict) = try_condition_a(p)? {
        return Ok(verdict);
    }
    for (orientation, (m, n)) in [
        (Orientation::AsGiven, (p.m, p.n)),
        (Orientation::Swapped, (p.n, p.m)),
    ] {
        if let Some(clause) = condition_b(m, n, q)? {
            let k = witness_b(m, n, q, clause)?;
            return certified(p, orientation, clause, WitnessK::Tree(k));
        }
    }
    Ok(infeasible(p))
}

pub fn decide(m: usize, n: usize, q: usize, mode: Mode) -> Result<Verdict, DeciderError> {
    match mode {
        Mode::ProperEquitable => decide_proper_equitable(m, n, q),
        Mode::EquitableTree(t) => decide_equitable_tree(m, n, q, t),
    }
}
