//! Union-find with union by size and optional rollback (no path compression,
//! so unions can be undone in reverse order). Rollback is used by the census
//! search to prune partial gluing tables.

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    history: Vec<u32>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            history: Vec::new(),
            components: n,
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Returns true if the two elements were in different classes.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.history.push(rb as u32);
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Number of unions performed so far; pass to `rollback_to`.
    pub fn mark(&self) -> usize {
        self.history.len()
    }

    pub fn rollback_to(&mut self, mark: usize) {
        while self.history.len() > mark {
            let rb = self.history.pop().unwrap() as usize;
            let ra = self.parent[rb] as usize;
            self.parent[rb] = rb as u32;
            self.size[ra] -= self.size[rb];
            self.components += 1;
        }
    }

    /// Map from root to a dense class index, plus the class count.
    pub fn classes(&self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut index = vec![usize::MAX; n];
        let mut count = 0;
        let mut out = vec![0usize; n];
        for x in 0..n {
            let r = self.find(x);
            if index[r] == usize::MAX {
                index[r] = count;
                count += 1;
            }
            out[x] = index[r];
        }
        (out, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_rollback() {
        let mut uf = UnionFind::new(5);
        let m0 = uf.mark();
        assert!(uf.union(0, 1));
        assert!(uf.union(1, 2));
        assert!(!uf.union(0, 2));
        assert_eq!(uf.components(), 3);
        uf.rollback_to(m0);
        assert_eq!(uf.components(), 5);
        assert!(!uf.same(0, 1));
    }
}
