//! Disjoint sets with path halving and union by size.

use crate::graph::Partition;

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// The partition of `labels` where `labels[i]` stands for element `i`.
    pub fn partition_of(&mut self, labels: &[usize]) -> Partition {
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
        for (i, &v) in labels.iter().enumerate() {
            let r = self.find(i);
            groups[r].push(v);
        }
        Partition::from_blocks(groups.into_iter().filter(|g| !g.is_empty()).collect())
            .expect("labels are distinct")
    }
}
