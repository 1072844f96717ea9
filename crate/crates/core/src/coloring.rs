//! Colorings, the tree-coloring and equitability verifiers, and the class
//! shape census used for complete bipartite graphs.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dsu::RollbackUnionFind;
use crate::graph::{BipartitionMeta, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("number of colors must be positive")]
    NoColors,
    #[error("vertex {vertex} has color {color}, but only {q} colors are available")]
    ColorOutOfRange {
        vertex: Vertex,
        color: usize,
        q: usize,
    },
    #[error("coloring covers {colored} vertices but the graph has {vertex_count}")]
    SizeMismatch { colored: usize, vertex_count: usize },
    #[error("vertex {vertex} out of range for coloring of {len} vertices")]
    VertexOutOfRange { vertex: Vertex, len: usize },
    #[error("degree bound must be at least 1")]
    ZeroDegreeBound,
    #[error("class size parameter a must be at least 1")]
    DegenerateClassSize,
    #[error("invalid degree bound {0:?}, expected a positive integer or `inf`")]
    ParseDegreeBound(String),
}

/// Maximum degree allowed inside a color class: a positive integer, or
/// unbounded (only acyclicity is required).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DegreeBound {
    Finite(usize),
    Unbounded,
}

impl DegreeBound {
    pub fn finite(t: usize) -> Result<Self, ColoringError> {
        if t == 0 {
            return Err(ColoringError::ZeroDegreeBound);
        }
        Ok(Self::Finite(t))
    }

    pub fn allows(self, degree: usize) -> bool {
        match self {
            Self::Finite(t) => degree <= t,
            Self::Unbounded => true,
        }
    }

    /// `true` when the bound is at least `a` (always for `Unbounded`).
    pub fn at_least(self, a: usize) -> bool {
        self.allows(a)
    }
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(t) => write!(f, "{t}"),
            Self::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for DegreeBound {
    type Err = ColoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "unbounded" => Ok(Self::Unbounded),
            other => other
                .parse::<usize>()
                .ok()
                .filter(|&t| t >= 1)
                .map(Self::Finite)
                .ok_or_else(|| ColoringError::ParseDegreeBound(s.to_string())),
        }
    }
}

/// A total assignment of colors `0..q` to vertices `0..len`. Classes may be
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    q: usize,
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(q: usize, colors: Vec<usize>) -> Result<Self, ColoringError> {
        if q == 0 {
            return Err(ColoringError::NoColors);
        }
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= q) {
            return Err(ColoringError::ColorOutOfRange { vertex, color, q });
        }
        Ok(Self { q, colors })
    }

    /// Builds a coloring from explicit classes; class `i` gets color `i`.
    /// Every vertex `0..len` must appear in exactly one class.
    pub fn from_classes(len: usize, classes: &[Vec<Vertex>]) -> Result<Self, ColoringError> {
        let mut colors = vec![usize::MAX; len];
        for (c, class) in classes.iter().enumerate() {
            for &v in class {
                if v >= len || colors[v] != usize::MAX {
                    return Err(ColoringError::VertexOutOfRange { vertex: v, len });
                }
                colors[v] = c;
            }
        }
        if let Some(v) = colors.iter().position(|&c| c == usize::MAX) {
            return Err(ColoringError::SizeMismatch {
                colored: v,
                vertex_count: len,
            });
        }
        Self::new(classes.len(), colors)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: Vertex) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Vertices of each class, ascending, indexed by color.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut classes = vec![Vec::new(); self.q];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.q];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }

    /// Coloring of the subgraph induced by `subset`, re-indexed the same way
    /// as [`Graph::induced`].
    pub fn restrict(&self, subset: &[Vertex]) -> Result<Coloring, ColoringError> {
        let mut vertices = subset.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&vertex) = vertices.iter().find(|&&v| v >= self.len()) {
            return Err(ColoringError::VertexOutOfRange {
                vertex,
                len: self.len(),
            });
        }
        Ok(Coloring {
            q: self.q,
            colors: vertices.iter().map(|&v| self.colors[v]).collect(),
        })
    }

    /// Class sizes differ by at most one, counting empty classes.
    pub fn is_equitable(&self) -> bool {
        let sizes = self.class_sizes();
        let max = sizes.iter().max().copied().unwrap_or(0);
        let min = sizes.iter().min().copied().unwrap_or(0);
        max - min <= 1
    }

    fn check_covers(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.len() != g.vertex_count() {
            return Err(ColoringError::SizeMismatch {
                colored: self.len(),
                vertex_count: g.vertex_count(),
            });
        }
        Ok(())
    }

    /// No edge of `g` joins two vertices of the same class.
    pub fn is_proper(&self, g: &Graph) -> Result<bool, ColoringError> {
        self.check_covers(g)?;
        Ok(g.edges()
            .iter()
            .all(|&(u, v)| self.colors[u] != self.colors[v]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `edge` closes a cycle among the class's earlier edges (sorted order).
    Cycle {
        edge: (Vertex, Vertex),
    },
    DegreeExceeded {
        vertex: Vertex,
        degree: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cycle { edge: (u, v) } => write!(f, "cycle through edge {} {}", u + 1, v + 1),
            Self::DegreeExceeded { vertex, degree } => {
                write!(f, "degree {degree} at vertex {}", vertex + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassViolation {
    pub class: usize,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// First offending class in class-index order, if any.
    pub failure: Option<ClassViolation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that every color class induces a forest whose maximum degree
/// respects `t`. Within a class a cycle is reported before a degree excess.
pub fn verify_tree_coloring(
    g: &Graph,
    coloring: &Coloring,
    t: DegreeBound,
) -> Result<VerifyReport, ColoringError> {
    coloring.check_covers(g)?;
    let q = coloring.q();
    let mut dsu = RollbackUnionFind::new(g.vertex_count());
    let mut cycle: Vec<Option<(Vertex, Vertex)>> = vec![None; q];
    let mut inner_degree = vec![0usize; g.vertex_count()];
    for &(u, v) in g.edges() {
        let c = coloring.color(u);
        if c != coloring.color(v) {
            continue;
        }
        inner_degree[u] += 1;
        inner_degree[v] += 1;
        if cycle[c].is_none() && !dsu.union(u, v) {
            cycle[c] = Some((u, v));
        }
    }
    let mut over_degree: Vec<Option<Vertex>> = vec![None; q];
    for v in g.vertices() {
        let c = coloring.color(v);
        if over_degree[c].is_none() && !t.allows(inner_degree[v]) {
            over_degree[c] = Some(v);
        }
    }
    let failure = (0..q).find_map(|class| {
        let violation = match (cycle[class], over_degree[class]) {
            (Some(edge), _) => Violation::Cycle { edge },
            (None, Some(vertex)) => Violation::DegreeExceeded {
                vertex,
                degree: inner_degree[vertex],
            },
            (None, None) => return None,
        };
        Some(ClassViolation { class, violation })
    });
    Ok(VerifyReport { failure })
}

/// The eight class shapes `(|V ∩ X|, |V ∩ Y|)` of an equitable coloring of
/// `K_{m,n}` with class sizes `a` and `a + 1`, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// `(a+1, 0)`
    X1,
    /// `(a, 0)`
    X2,
    /// `(0, a+1)`
    Y1,
    /// `(0, a)`
    Y2,
    /// `(a, 1)`
    CrossX1,
    /// `(a-1, 1)`
    CrossX2,
    /// `(1, a)`
    CrossY1,
    /// `(1, a-1)`
    CrossY2,
}

impl Shape {
    pub const ALL: [Shape; 8] = [
        Shape::X1,
        Shape::X2,
        Shape::Y1,
        Shape::Y2,
        Shape::CrossX1,
        Shape::CrossX2,
        Shape::CrossY1,
        Shape::CrossY2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `(x, y)` vertex counts of this shape for class size parameter `a >= 1`.
    pub fn dims(self, a: usize) -> (usize, usize) {
        match self {
            Shape::X1 => (a + 1, 0),
            Shape::X2 => (a, 0),
            Shape::Y1 => (0, a + 1),
            Shape::Y2 => (0, a),
            Shape::CrossX1 => (a, 1),
            Shape::CrossX2 => (a - 1, 1),
            Shape::CrossY1 => (1, a),
            Shape::CrossY2 => (1, a - 1),
        }
    }

    /// Largest same-class degree of a class with this shape in `K_{m,n}`:
    /// the class induces a complete bipartite graph `K_{x,y}`.
    pub fn star_degree(self, a: usize) -> usize {
        let (x, y) = self.dims(a);
        if x == 0 || y == 0 {
            0
        } else {
            x.max(y)
        }
    }

    /// First shape (canonical order) with the given dimensions.
    pub fn classify(a: usize, dims: (usize, usize)) -> Option<Shape> {
        Self::ALL.into_iter().find(|s| s.dims(a) == dims)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ShapeCensus {
    pub counts: [usize; 8],
    pub unclassified: usize,
}

impl ShapeCensus {
    pub fn count(&self, shape: Shape) -> usize {
        self.counts[shape.index()]
    }
}

/// Counts color classes of a coloring of `K_{m,n}` per shape. When shapes
/// coincide (only possible for `a = 1`), the lowest-index shape wins.
pub fn shape_census(
    coloring: &Coloring,
    meta: &BipartitionMeta,
    a: usize,
) -> Result<ShapeCensus, ColoringError> {
    if a == 0 {
        return Err(ColoringError::DegenerateClassSize);
    }
    let mut per_class = vec![(0usize, 0usize); coloring.q()];
    for (side, vertices) in [(0, &meta.x_vertices), (1, &meta.y_vertices)] {
        for &v in vertices {
            if v >= coloring.len() {
                return Err(ColoringError::VertexOutOfRange {
                    vertex: v,
                    len: coloring.len(),
                });
            }
            let entry = &mut per_class[coloring.color(v)];
            if side == 0 {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
    }
    let mut census = ShapeCensus::default();
    for dims in per_class {
        match Shape::classify(a, dims) {
            Some(shape) => census.counts[shape.index()] += 1,
            None => census.unclassified += 1,
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_bipartite;
    use proptest::prelude::*;

    fn sized(q: usize, sizes: &[usize]) -> Coloring {
        let colors = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
            .collect();
        Coloring::new(q, colors).unwrap()
    }

    #[test]
    fn rejects_bad_colorings() {
        assert_eq!(Coloring::new(0, vec![]), Err(ColoringError::NoColors));
        assert_eq!(
            Coloring::new(2, vec![0, 2]),
            Err(ColoringError::ColorOutOfRange {
                vertex: 1,
                color: 2,
                q: 2
            })
        );
        assert!(Coloring::from_classes(3, &[vec![0], vec![1]]).is_err());
        assert!(Coloring::from_classes(2, &[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn degree_bound_parsing() {
        assert_eq!("inf".parse::<DegreeBound>(), Ok(DegreeBound::Unbounded));
        assert_eq!("3".parse::<DegreeBound>(), Ok(DegreeBound::Finite(3)));
        assert!("0".parse::<DegreeBound>().is_err());
        assert!("x".parse::<DegreeBound>().is_err());
        assert_eq!(DegreeBound::finite(0), Err(ColoringError::ZeroDegreeBound));
        assert!(DegreeBound::Finite(7) < DegreeBound::Unbounded);
        assert_eq!(DegreeBound::Finite(2).to_string(), "2");
        assert_eq!(DegreeBound::Unbounded.to_string(), "inf");
    }

    #[test]
    fn equitability() {
        assert!(sized(3, &[2, 2, 2]).is_equitable());
        assert!(!sized(2, &[3, 1]).is_equitable());
        assert!(sized(2, &[1, 0]).is_equitable());
        assert!(!sized(3, &[2, 0, 1]).is_equitable());
    }

    #[test]
    fn restrict_examples() {
        let c = Coloring::new(2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(c.restrict(&[0, 1, 2, 3]).unwrap(), c);
        assert_eq!(c.restrict(&[2, 0]).unwrap().colors(), &[0, 0]);
        assert_eq!(c.restrict(&[0, 1]).unwrap().colors(), &[0, 1]);
        assert_eq!(
            c.restrict(&[4]),
            Err(ColoringError::VertexOutOfRange { vertex: 4, len: 4 })
        );
    }

    #[test]
    fn verifier_examples() {
        let (k22, _) = complete_bipartite(2, 2).unwrap();
        let mono = Coloring::new(1, vec![0; 4]).unwrap();
        let report = verify_tree_coloring(&k22, &mono, DegreeBound::Unbounded).unwrap();
        assert_eq!(
            report.failure,
            Some(ClassViolation {
                class: 0,
                violation: Violation::Cycle { edge: (1, 3) }
            })
        );

        let (star, _) = complete_bipartite(1, 3).unwrap();
        let mono = Coloring::new(1, vec![0; 4]).unwrap();
        assert!(verify_tree_coloring(&star, &mono, DegreeBound::Finite(3))
            .unwrap()
            .passed());
        let report = verify_tree_coloring(&star, &mono, DegreeBound::Finite(2)).unwrap();
        assert_eq!(
            report.failure.unwrap().violation,
            Violation::DegreeExceeded {
                vertex: 0,
                degree: 3
            }
        );

        // K_{9,2}: {x1..x4}, {x5..x8}, {x9, y1, y2}
        let (k92, _) = complete_bipartite(9, 2).unwrap();
        let classes = [vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8, 9, 10]];
        let c = Coloring::from_classes(11, &classes).unwrap();
        assert!(verify_tree_coloring(&k92, &c, DegreeBound::Finite(2))
            .unwrap()
            .passed());
        assert!(c.is_equitable());
        assert!(!c.is_proper(&k92).unwrap());

        assert_eq!(
            verify_tree_coloring(&k92, &mono, DegreeBound::Unbounded),
            Err(ColoringError::SizeMismatch {
                colored: 4,
                vertex_count: 11
            })
        );
    }

    #[test]
    fn verifier_reports_lowest_class() {
        // class 1 is a triangle, class 0 a star of degree 2
        let g = Graph::new(6, [(0, 1), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let c = Coloring::new(2, vec![0, 0, 0, 1, 1, 1]).unwrap();
        let report = verify_tree_coloring(&g, &c, DegreeBound::Finite(1)).unwrap();
        assert_eq!(report.failure.unwrap().class, 0);
        let report = verify_tree_coloring(&g, &c, DegreeBound::Finite(2)).unwrap();
        assert_eq!(
            report.failure.unwrap(),
            ClassViolation {
                class: 1,
                violation: Violation::Cycle { edge: (4, 5) }
            }
        );
    }

    #[test]
    fn census_examples() {
        // K_{2,3}, classes X and Y, a = 2
        let (_, meta) = complete_bipartite(2, 3).unwrap();
        let c = Coloring::new(2, vec![0, 0, 1, 1, 1]).unwrap();
        let census = shape_census(&c, &meta, 2).unwrap();
        assert_eq!(census.counts, [0, 1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(census.unclassified, 0);

        // K_{4,4}: {x1,x2,x3}, {y1,y2}, {x4,y3,y4}
        let (_, meta) = complete_bipartite(4, 4).unwrap();
        let c = Coloring::from_classes(8, &[vec![0, 1, 2], vec![4, 5], vec![3, 6, 7]]).unwrap();
        let census = shape_census(&c, &meta, 2).unwrap();
        assert_eq!(census.counts, [1, 0, 0, 1, 0, 0, 1, 0]);

        // a 2+2 class falls outside the table
        let c = Coloring::from_classes(8, &[vec![0, 1, 4, 5], vec![2, 3, 6, 7]]).unwrap();
        let census = shape_census(&c, &meta, 3).unwrap();
        assert_eq!(census.unclassified, 2);

        assert_eq!(
            shape_census(&c, &meta, 0),
            Err(ColoringError::DegenerateClassSize)
        );
    }

    #[test]
    fn census_tie_order_at_a_one() {
        // a = 1: (1,1) is CrossX1, (0,1) is Y2
        assert_eq!(Shape::classify(1, (1, 1)), Some(Shape::CrossX1));
        assert_eq!(Shape::classify(1, (0, 1)), Some(Shape::Y2));
        assert_eq!(Shape::classify(1, (1, 0)), Some(Shape::X2));
        assert_eq!(Shape::classify(1, (2, 0)), Some(Shape::X1));
    }

    proptest! {
        #[test]
        fn unbounded_accepts_whatever_finite_accepts(
            n in 2usize..9,
            edge_bits in any::<u64>(),
            color_seed in proptest::collection::vec(0usize..3, 9),
            t in 1usize..4,
        ) {
            let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let edges = pairs.iter().enumerate().filter(|(i, _)| edge_bits >> i & 1 == 1).map(|(_, e)| *e);
            let g = Graph::new(n, edges).unwrap();
            let c = Coloring::new(3, color_seed[..n].to_vec()).unwrap();
            let finite = verify_tree_coloring(&g, &c, DegreeBound::Finite(t)).unwrap().passed();
            let looser = verify_tree_coloring(&g, &c, DegreeBound::Finite(t + 1)).unwrap().passed();
            let unbounded = verify_tree_coloring(&g, &c, DegreeBound::Unbounded).unwrap().passed();
            prop_assert!(!finite || looser);
            prop_assert!(!looser || unbounded);
        }

        #[test]
        fn two_by_two_class_is_rejected(m in 2usize..6, n in 2usize..6) {
            let (g, _) = complete_bipartite(m, n).unwrap();
            // class 0 gets x1, x2, y1, y2; everything else its own color
            let mut colors = vec![0; m + n];
            let mut next = 1;
            for (v, color) in colors.iter_mut().enumerate() {
                if !(v < 2 || (v >= m && v < m + 2)) {
                    *color = next;
                    next += 1;
                }
            }
            let c = Coloring::new(next, colors).unwrap();
            let report = verify_tree_coloring(&g, &c, DegreeBound::Unbounded).unwrap();
            prop_assert_eq!(report.failure.map(|f| f.class), Some(0));
        }
    }
}
