//! Bipartite maximum matching (Hopcroft–Karp).

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

/// A matching given by the partner of every left and right vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub size: usize,
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        Self {
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        assert!(r < self.right, "right vertex out of range");
        self.adj[l].push(r);
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn max_matching(&self) -> BipartiteMatching {
        let n = self.adj.len();
        let mut ml = vec![NONE; n];
        let mut mr = vec![NONE; self.right];
        let mut dist = vec![0u32; n];
        let mut size = 0;
        loop {
            let mut queue = VecDeque::new();
            let mut found = false;
            for l in 0..n {
                if ml[l] == NONE {
                    dist[l] = 0;
                    queue.push_back(l);
                } else {
                    dist[l] = u32::MAX;
                }
            }
            while let Some(l) = queue.pop_front() {
                for &r in &self.adj[l] {
                    let m = mr[r];
                    if m == NONE {
                        found = true;
                    } else if dist[m] == u32::MAX {
                        dist[m] = dist[l] + 1;
                        queue.push_back(m);
                    }
                }
            }
            if !found {
                break;
            }
            let mut it = vec![0usize; n];
            for l in 0..n {
                if ml[l] == NONE && self.dfs(l, &mut ml, &mut mr, &mut dist, &mut it) {
                    size += 1;
                }
            }
        }
        let wrap = |v: Vec<usize>| v.into_iter().map(|m| (m != NONE).then_some(m)).collect();
        BipartiteMatching {
            size,
            left_mate: wrap(ml),
            right_mate: wrap(mr),
        }
    }

    fn dfs(
        &self,
        l: usize,
        ml: &mut [usize],
        mr: &mut [usize],
        dist: &mut [u32],
        it: &mut [usize],
    ) -> bool {
        while it[l] < self.adj[l].len() {
            let r = self.adj[l][it[l]];
            it[l] += 1;
            let m = mr[r];
            if m == NONE || (dist[m] == dist[l] + 1 && self.dfs(m, ml, mr, dist, it)) {
                ml[l] = r;
                mr[r] = l;
                return true;
            }
        }
        dist[l] = u32::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let mut g = BipartiteGraph::new(3, 3);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(2, 0);
        let m = g.max_matching();
        assert_eq!(m.size, 2);
        let mut g = BipartiteGraph::new(3, 3);
        for l in 0..3 {
            for r in 0..3 {
                g.add_edge(l, r);
            }
        }
        assert_eq!(g.max_matching().size, 3);
        assert_eq!(BipartiteGraph::new(2, 0).max_matching().size, 0);
    }
}
