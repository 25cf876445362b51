//! Union-find partition of an initial segment `[0, n)` of the naturals.
//!
//! Each class is canonically represented by its least member; the least
//! member is tracked at the root so `rep` never needs a class scan. Reads
//! (`rep`, `same`) do not mutate, so a frozen partition can sit behind a
//! shared reference; call [`Partition::compress`] once after the final
//! union to flatten every path.

/// A partition of `{0, 1, …, n-1}` into disjoint classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parent: Vec<usize>,
    /// Class size, valid at roots only.
    size: Vec<usize>,
    /// Least member of the class, valid at roots only.
    min: Vec<usize>,
}

impl Partition {
    /// The discrete partition of `[0, n)`: every element alone.
    pub fn new(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
            size: vec![1; n],
            min: (0..n).collect(),
        }
    }

    /// Number of elements carried by the partition.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Least element of the class containing `x`.
    pub fn rep(&self, x: usize) -> usize {
        self.min[self.root(x)]
    }

    /// Do `x` and `y` share a class?
    pub fn same(&self, x: usize, y: usize) -> bool {
        self.root(x) == self.root(y)
    }

    /// Merge the classes of `x` and `y`; returns `true` when two distinct
    /// classes were actually joined.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let mut a = self.root(x);
        let mut b = self.root(y);
        if a == b {
            return false;
        }
        // Union by size; the minimum migrates to the surviving root.
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.min[a] = self.min[a].min(self.min[b]);
        true
    }

    /// Point every element directly at its root so later reads walk a
    /// path of length one.
    pub fn compress(&mut self) {
        for x in 0..self.parent.len() {
            self.parent[x] = self.root(x);
        }
    }

    /// Size of the class containing `x`.
    pub fn class_size(&self, x: usize) -> usize {
        self.size[self.root(x)]
    }

    /// Number of classes.
    pub fn class_count(&self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.parent[x] == x)
            .count()
    }

    /// Least representatives of all classes, in increasing order.
    pub fn reps(&self) -> Vec<usize> {
        (0..self.parent.len()).filter(|&x| self.rep(x) == x).collect()
    }

    /// Members of the class containing `x`, in increasing order.
    pub fn class_of(&self, x: usize) -> Vec<usize> {
        let r = self.root(x);
        (0..self.parent.len())
            .filter(|&y| self.root(y) == r)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_partition_is_all_singletons() {
        let p = Partition::new(5);
        assert_eq!(p.class_count(), 5);
        for x in 0..5 {
            assert_eq!(p.rep(x), x);
            assert_eq!(p.class_of(x), vec![x]);
        }
    }

    #[test]
    fn union_tracks_least_member() {
        let mut p = Partition::new(6);
        assert!(p.union(4, 2));
        assert!(p.union(2, 5));
        assert!(!p.union(5, 4)); // already joined
        assert_eq!(p.rep(5), 2);
        assert_eq!(p.rep(4), 2);
        assert_eq!(p.class_of(4), vec![2, 4, 5]);
        assert_eq!(p.class_size(5), 3);
        assert_eq!(p.reps(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn reps_are_fixed_points_and_sorted() {
        let mut p = Partition::new(10);
        for &(a, b) in &[(9, 0), (3, 7), (7, 1), (8, 8)] {
            p.union(a, b);
        }
        let reps = p.reps();
        assert!(reps.windows(2).all(|w| w[0] < w[1]));
        for &r in &reps {
            assert_eq!(p.rep(r), r);
        }
        // Every element's rep is the minimum of its class.
        for x in 0..10 {
            let class = p.class_of(x);
            assert_eq!(p.rep(x), class[0]);
        }
    }

    #[test]
    fn compress_preserves_the_partition() {
        let mut p = Partition::new(8);
        for &(a, b) in &[(0, 7), (7, 3), (2, 6), (5, 6)] {
            p.union(a, b);
        }
        let before: Vec<usize> = (0..8).map(|x| p.rep(x)).collect();
        p.compress();
        let after: Vec<usize> = (0..8).map(|x| p.rep(x)).collect();
        assert_eq!(before, after);
    }
}
