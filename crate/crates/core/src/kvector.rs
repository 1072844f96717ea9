//! Shape-count systems for equitable colorings of `K_{m,n}`.
//!
//! With `a = ⌊(m+n)/q⌋` every class of an equitable coloring has `a` or
//! `a + 1` vertices, and a class that induces a forest has at most one vertex
//! on one of the two sides. So such a coloring is described, up to renaming
//! vertices, by how many classes it has of each [`Shape`]. A proper coloring
//! only uses the four one-sided shapes (`KVector4`); a tree-coloring may also
//! use the four crossing stars (`KVector8`). Both systems are three linear
//! equations over nonnegative integers; the enumerators below decide them by
//! bounded search.

use thiserror::Error;

use crate::coloring::{DegreeBound, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum KVectorError {
    #[error("number of colors must be positive")]
    NoColors,
    #[error("degenerate parameters: q = {q} exceeds m + n = {total}, so a = 0")]
    Degenerate { q: usize, total: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    pub q: usize,
    a: usize,
    r: usize,
}

impl Params {
    pub fn new(m: usize, n: usize, q: usize) -> Result<Self, KVectorError> {
        if q == 0 {
            return Err(KVectorError::NoColors);
        }
        let total = m + n;
        Ok(Self {
            m,
            n,
            q,
            a: total / q,
            r: total % q,
        })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == 0
    }

    pub fn swapped(&self) -> Self {
        Self {
            m: self.n,
            n: self.m,
            ..*self
        }
    }

    fn require_nondegenerate(&self) -> Result<(), KVectorError> {
        if self.is_degenerate() {
            return Err(KVectorError::Degenerate {
                q: self.q,
                total: self.m + self.n,
            });
        }
        Ok(())
    }
}

/// Counts of the one-sided shapes `(a+1,0)_X, (a,0)_X, (0,a+1)_Y, (0,a)_Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct KVector4(pub [usize; 4]);

/// Counts of all eight shapes in [`Shape::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct KVector8(pub [usize; 8]);

impl KVector4 {
    /// The same counts with the crossing shapes set to zero.
    pub fn embed(self) -> KVector8 {
        let [k1, k2, k3, k4] = self.0;
        KVector8([k1, k2, k3, k4, 0, 0, 0, 0])
    }
}

impl KVector8 {
    pub fn count(&self, shape: Shape) -> usize {
        self.0[shape.index()]
    }

    /// Sum over the shapes of size `a + 1` and over those of size `a`.
    pub fn size_split(&self) -> (usize, usize) {
        let k = self.0;
        (k[0] + k[2] + k[4] + k[6], k[1] + k[3] + k[5] + k[7])
    }
}

/// `(Σk − q, X-side total − m, Y-side total − n)` for the proper system.
pub fn residual_proper(k: &KVector4, p: &Params) -> Result<(i64, i64, i64), KVectorError> {
    residual_tree(&k.embed(), p)
}

/// `(Σk − q, X-side total − m, Y-side total − n)` for the tree system.
pub fn residual_tree(k: &KVector8, p: &Params) -> Result<(i64, i64, i64), KVectorError> {
    p.require_nondegenerate()?;
    let mut classes = 0i64;
    let mut x = 0i64;
    let mut y = 0i64;
    for shape in Shape::ALL {
        let count = k.count(shape) as i64;
        let (dx, dy) = shape.dims(p.a);
        classes += count;
        x += count * dx as i64;
        y += count * dy as i64;
    }
    Ok((classes - p.q as i64, x - p.m as i64, y - p.n as i64))
}

/// Set of shapes usable under a degree bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeSet([bool; 8]);

impl ShapeSet {
    pub fn contains(&self, shape: Shape) -> bool {
        self.0[shape.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = Shape> + '_ {
        Shape::ALL.into_iter().filter(|&s| self.contains(s))
    }
}

/// One-sided shapes are always allowed. `(a,1)` and `(1,a)` need `t >= a`;
/// `(a-1,1)` and `(1,a-1)` need `a >= 2` and `t >= a - 1` (at `a = 1` they
/// coincide with the one-sided `(0,1)`/`(1,0)`, which are already present).
pub fn allowed_shapes(p: &Params, t: DegreeBound) -> Result<ShapeSet, KVectorError> {
    p.require_nondegenerate()?;
    let a = p.a;
    let mut set = [false; 8];
    for shape in Shape::ALL {
        set[shape.index()] = match shape {
            Shape::X1 | Shape::X2 | Shape::Y1 | Shape::Y2 => true,
            Shape::CrossX1 | Shape::CrossY1 => t.allows(shape.star_degree(a)),
            Shape::CrossX2 | Shape::CrossY2 => a >= 2 && t.allows(shape.star_degree(a)),
        };
    }
    Ok(ShapeSet(set))
}

/// Lexicographically smallest solution of the proper system, if any.
pub fn enumerate_proper(p: &Params) -> Result<Option<KVector4>, KVectorError> {
    p.require_nondegenerate()?;
    let (a, r) = (p.a, p.r);
    let even = p.q - r;
    // k1 + k3 = r and k2 + k4 = q - r follow from the equations, so only
    // k1 and k2 are free.
    for k1 in 0..=r {
        for k2 in 0..=even {
            if k1 * (a + 1) + k2 * a != p.m {
                continue;
            }
            let k = KVector4([k1, k2, r - k1, even - k2]);
            if residual_proper(&k, p)? == (0, 0, 0) {
                return Ok(Some(k));
            }
        }
    }
    Ok(None)
}

/// Lexicographically smallest solution of the tree system using only
/// [`allowed_shapes`]`(p, t)`, if any.
///
/// `k1..k5` are enumerated in ascending order; `k7` then follows from the
/// size-`(a+1)` count, and `k6`, `k8` from the size-`a` count together with
/// the X-side equation. For `a = 2` the latter two equations coincide and the
/// smallest admissible `k6` is taken.
pub fn enumerate_tree(p: &Params, t: DegreeBound) -> Result<Option<KVector8>, KVectorError> {
    let allowed = allowed_shapes(p, t)?;
    let (m, a, r) = (p.m as i64, p.a as i64, p.r as i64);
    let even = (p.q - p.r) as i64;
    let bound = |shape: Shape, limit: i64| {
        if allowed.contains(shape) {
            limit.max(-1)
        } else {
            0
        }
    };

    for k1 in 0..=bound(Shape::X1, r.min(m / (a + 1))) {
        let x1 = k1 * (a + 1);
        for k2 in 0..=bound(Shape::X2, even.min((m - x1) / a)) {
            let x2 = x1 + k2 * a;
            for k3 in 0..=bound(Shape::Y1, r - k1) {
                for k4 in 0..=bound(Shape::Y2, even - k2) {
                    for k5 in 0..=bound(Shape::CrossX1, (r - k1 - k3).min((m - x2) / a)) {
                        let k7 = r - k1 - k3 - k5;
                        if k7 < 0 || (k7 > 0 && !allowed.contains(Shape::CrossY1)) {
                            continue;
                        }
                        let pairs = even - k2 - k4;
                        // (a-1) k6 + k8 = rest, k6 + k8 = pairs
                        let rest = m - x2 - k5 * a - k7;
                        if pairs < 0 || rest < 0 {
                            continue;
                        }
                        let Some(k6) = solve_k6(a, rest, pairs, &allowed) else {
                            continue;
                        };
                        let k =
                            KVector8([k1, k2, k3, k4, k5, k6, k7, pairs - k6].map(|v| v as usize));
                        if residual_tree(&k, p)? == (0, 0, 0) {
                            return Ok(Some(k));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn solve_k6(a: i64, rest: i64, pairs: i64, allowed: &ShapeSet) -> Option<i64> {
    let ok = |k6: i64| {
        let k8 = pairs - k6;
        (0..=pairs).contains(&k6)
            && (k6 == 0 || allowed.contains(Shape::CrossX2))
            && (k8 == 0 || allowed.contains(Shape::CrossY2))
    };
    // k6 (a - 2) = rest - pairs
    let lhs = rest - pairs;
    if a == 2 {
        return if lhs == 0 {
            (0..=pairs).find(|&k6| ok(k6))
        } else {
            None
        };
    }
    if lhs % (a - 2) != 0 {
        return None;
    }
    Some(lhs / (a - 2)).filter(|&k6| ok(k6))
}
