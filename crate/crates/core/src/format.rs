//! File formats. Everything on disk uses 1-based vertex and color ids.
//!
//! Graph (DIMACS edge format):
//!
//! ```text
//! p edge <V> <E>
//! e <u> <v>        (E lines, u < v, sorted)
//! ```
//!
//! Coloring (text):
//!
//! ```text
//! q <q> t <t|inf>
//! <vertex> <color>  (one line per vertex, sorted by vertex)
//! ```
//!
//! Lines starting with `c` are comments in both text formats. The JSON forms
//! (coloring, decision certificate, gadget sidecar) have fixed field order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Coloring, ColoringError, DegreeBound};
use crate::decider::Verdict;
use crate::graph::{Graph, GraphError};
use crate::reductions::{GadgetOutput, ReductionKind};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, tokens)| !tokens.is_empty() && tokens[0] != "c")
}

fn number(line: usize, token: &str) -> Result<usize, FormatError> {
    token.parse().map_err(|_| {
        syntax(
            line,
            format!("expected a nonnegative integer, got {token:?}"),
        )
    })
}

fn one_based(line: usize, token: &str) -> Result<usize, FormatError> {
    match number(line, token)? {
        0 => Err(syntax(line, "ids are 1-based")),
        v => Ok(v - 1),
    }
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (line, tokens) in content_lines(text) {
        match tokens.as_slice() {
            ["p", "edge", v, e] if header.is_none() => {
                header = Some((number(line, v)?, number(line, e)?));
            }
            ["p", ..] => return Err(syntax(line, "expected a single `p edge <V> <E>` header")),
            ["e", u, v] => {
                if header.is_none() {
                    return Err(syntax(line, "edge before `p edge` header"));
                }
                edges.push((one_based(line, u)?, one_based(line, v)?));
            }
            _ => {
                return Err(syntax(
                    line,
                    format!("unrecognized line {:?}", tokens.join(" ")),
                ))
            }
        }
    }
    let (vertex_count, edge_count) = header.ok_or_else(|| syntax(0, "missing `p edge` header"))?;
    if edges.len() != edge_count {
        return Err(syntax(
            0,
            format!("header announces {edge_count} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::new(vertex_count, edges)?)
}

/// A coloring together with the degree bound it is claimed to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringFile {
    pub coloring: Coloring,
    pub t: DegreeBound,
}

pub fn write_coloring(file: &ColoringFile) -> String {
    let mut out = format!("q {} t {}\n", file.coloring.q(), file.t);
    for (v, &c) in file.coloring.colors().iter().enumerate() {
        out.push_str(&format!("{} {}\n", v + 1, c + 1));
    }
    out
}

pub fn parse_coloring(text: &str) -> Result<ColoringFile, FormatError> {
    let mut lines = content_lines(text);
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| syntax(0, "empty coloring file"))?;
    let (q, t) = match tokens.as_slice() {
        ["q", q, "t", t] => (number(line, q)?, t.parse::<DegreeBound>()?),
        _ => return Err(syntax(line, "expected header `q <q> t <t|inf>`")),
    };
    let mut assigned: Vec<(usize, usize, usize)> = Vec::new();
    for (line, tokens) in lines {
        match tokens.as_slice() {
            [v, c] => assigned.push((one_based(line, v)?, one_based(line, c)?, line)),
            _ => return Err(syntax(line, "expected `<vertex> <color>`")),
        }
    }
    assigned.sort_unstable();
    let mut colors = Vec::with_capacity(assigned.len());
    for (expected, &(v, c, line)) in assigned.iter().enumerate() {
        if v != expected {
            return Err(syntax(
                line,
                format!("vertices must be exactly 1..{}, each once", assigned.len()),
            ));
        }
        colors.push(c);
    }
    Ok(ColoringFile {
        coloring: Coloring::new(q, colors)?,
        t,
    })
}

/// `t` as it appears in JSON: an integer or the string `"inf"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundJson {
    Finite(usize),
    Named(String),
}

impl From<DegreeBound> for BoundJson {
    fn from(t: DegreeBound) -> Self {
        match t {
            DegreeBound::Finite(t) => BoundJson::Finite(t),
            DegreeBound::Unbounded => BoundJson::Named("inf".to_string()),
        }
    }
}

impl TryFrom<&BoundJson> for DegreeBound {
    type Error = ColoringError;

    fn try_from(value: &BoundJson) -> Result<Self, Self::Error> {
        match value {
            BoundJson::Finite(t) => DegreeBound::finite(*t),
            BoundJson::Named(s) => s.parse(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub q: usize,
    pub t: BoundJson,
    /// 1-based vertex ids per class, ascending; empty classes included.
    pub classes: Vec<Vec<usize>>,
}

impl From<&ColoringFile> for ColoringJson {
    fn from(file: &ColoringFile) -> Self {
        Self {
            q: file.coloring.q(),
            t: file.t.into(),
            classes: file
                .coloring
                .classes()
                .into_iter()
                .map(|class| class.into_iter().map(|v| v + 1).collect())
                .collect(),
        }
    }
}

impl TryFrom<&ColoringJson> for ColoringFile {
    type Error = FormatError;

    fn try_from(json: &ColoringJson) -> Result<Self, Self::Error> {
        if json.classes.len() != json.q {
            return Err(syntax(
                0,
                format!("expected {} classes, found {}", json.q, json.classes.len()),
            ));
        }
        let len = json.classes.iter().map(Vec::len).sum();
        let classes = json
            .classes
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&v| v.checked_sub(1).ok_or_else(|| syntax(0, "ids are 1-based")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ColoringFile {
            coloring: Coloring::from_classes(len, &classes)?,
            t: DegreeBound::try_from(&json.t)?,
        })
    }
}

pub fn write_coloring_json(file: &ColoringFile) -> String {
    serde_json::to_string(&ColoringJson::from(file)).expect("plain data serializes") + "\n"
}

pub fn parse_coloring_json(text: &str) -> Result<ColoringFile, FormatError> {
    let json: ColoringJson = serde_json::from_str(text)?;
    ColoringFile::try_from(&json)
}

/// Decision certificate printed by `equitree decide`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub feasible: bool,
    pub orientation: &'static str,
    pub clause: &'static str,
    pub a: usize,
    pub r: usize,
    pub k: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringJson>,
}

impl Certificate {
    /// `t` labels the embedded coloring; it is omitted unless
    /// `with_coloring` is set.
    pub fn new(verdict: &Verdict, t: DegreeBound, with_coloring: bool) -> Self {
        let coloring = verdict
            .witness_coloring
            .as_ref()
            .filter(|_| with_coloring)
            .map(|c| {
                ColoringJson::from(&ColoringFile {
                    coloring: c.clone(),
                    t,
                })
            });
        Self {
            feasible: verdict.feasible,
            orientation: verdict.orientation.as_str(),
            clause: verdict.clause.as_str(),
            a: verdict.params.a(),
            r: verdict.params.r(),
            k: verdict.witness_k.map(|k| k.as_slice().to_vec()),
            coloring,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionJson {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attached_to: Option<usize>,
    pub vertices: Vec<usize>,
}

/// Provenance written next to a gadget graph; ids are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetSidecar {
    pub kind: &'static str,
    pub q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<BoundJson>,
    pub vertex_count: usize,
    pub source_vertex_map: Vec<usize>,
    pub regions: Vec<RegionJson>,
    pub labels: Vec<String>,
}

impl GadgetSidecar {
    pub fn new(gadget: &GadgetOutput, kind: ReductionKind, q: usize) -> Self {
        let t = match kind {
            ReductionKind::Npt { t } => Some(BoundJson::Finite(t)),
            ReductionKind::Npi => None,
            ReductionKind::Pad { t } => Some(t.into()),
        };
        let g = &gadget.graph;
        Self {
            kind: kind.name(),
            q,
            t,
            vertex_count: g.vertex_count(),
            source_vertex_map: gadget.source_vertex_map.iter().map(|v| v + 1).collect(),
            regions: gadget
                .regions
                .iter()
                .map(|r| RegionJson {
                    label: r.label.clone(),
                    attached_to: r.attached_to.map(|v| v + 1),
                    vertices: r.vertices.iter().map(|v| v + 1).collect(),
                })
                .collect(),
            labels: g
                .vertices()
                .map(|v| g.label(v).unwrap_or_default().to_string())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }
}
