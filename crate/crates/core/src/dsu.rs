//! Union-find with undo. No path compression, so every union can be rolled
//! back exactly by restoring the recorded parent slot.

#[derive(Debug, Clone)]
pub struct RollbackUnionFind {
    // negative: root holding -size; otherwise parent index
    parent: Vec<isize>,
    history: Vec<(usize, usize, isize)>,
}

impl RollbackUnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: vec![-1; len],
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] >= 0 {
            v = self.parent[v] as usize;
        }
        v
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Merges the sets of `a` and `b`. Returns `false` when they were
    /// already connected, i.e. the edge `ab` would close a cycle.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut x, mut y) = (self.find(a), self.find(b));
        if x == y {
            return false;
        }
        if self.parent[x] > self.parent[y] {
            std::mem::swap(&mut x, &mut y);
        }
        self.history.push((x, y, self.parent[y]));
        self.parent[x] += self.parent[y];
        self.parent[y] = x as isize;
        true
    }

    /// Checkpoint for [`rollback`](Self::rollback).
    pub fn time(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, time: usize) {
        while self.history.len() > time {
            let (x, y, old) = self.history.pop().expect("non-empty history");
            self.parent[y] = old;
            self.parent[x] -= old;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_detects_cycle_and_rolls_back() {
        let mut dsu = RollbackUnionFind::new(4);
        assert!(dsu.union(0, 1));
        let t = dsu.time();
        assert!(dsu.union(1, 2));
        assert!(!dsu.union(0, 2));
        assert!(dsu.same(0, 2));
        dsu.rollback(t);
        assert!(!dsu.same(0, 2));
        assert!(dsu.same(0, 1));
        assert!(dsu.union(2, 3));
        dsu.rollback(0);
        assert!((0..4).all(|v| dsu.find(v) == v));
    }
}
