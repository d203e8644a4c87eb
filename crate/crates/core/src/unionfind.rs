use alloc::vec::Vec;

/// Disjoint sets with a parity bit per element relative to its root.
///
/// Plain connectivity callers pass parity `false` everywhere; the orientation
/// check uses the parity to detect an odd cycle of reversing joins.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    parity: Vec<bool>,
}

impl UnionFind {
    pub(crate) fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            rank: alloc::vec![0; len],
            parity: alloc::vec![false; len],
        }
    }

    /// Root of `x` and the parity of `x` relative to that root.
    pub(crate) fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress from the top so each parent's parity is already relative to root
        for &node in path.iter().rev() {
            let p = self.parent[node];
            if p != root {
                self.parity[node] ^= self.parity[p];
            }
            self.parent[node] = root;
        }
        (root, if x == root { false } else { self.parity[x] })
    }

    pub(crate) fn root(&mut self, x: usize) -> usize {
        self.find(x).0
    }

    /// Joins `a` and `b` requiring `parity(a) ^ parity(b) == odd`.
    /// Returns `false` when this contradicts an earlier constraint.
    pub(crate) fn union_with_parity(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == odd;
        }
        let rel = pa ^ pb ^ odd;
        let (child, parent) = if self.rank[ra] < self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[child] = parent;
        self.parity[child] = rel;
        if self.rank[ra] == self.rank[rb] {
            self.rank[parent] += 1;
        }
        true
    }

    /// Returns `true` if the sets were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.root(a);
        let rb = self.root(b);
        if ra == rb {
            return false;
        }
        self.union_with_parity(ra, rb, false);
        true
    }
}
