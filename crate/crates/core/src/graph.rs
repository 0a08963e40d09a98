//! Simple undirected unit-edge graphs with a cached all-pairs hop table.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Hop distance between vertices in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// A simple undirected graph whose edges all have length one.
///
/// Vertices are `0..n` internally; the text formats use `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    dist: Vec<Vec<u32>>,
}

impl MetricGraph {
    /// Builds a graph from an edge list. Edges are normalized to `u < v`
    /// and sorted; loops, parallel edges and out-of-range ids are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidPoint(format!(
                    "edge ({}, {}) out of range for {n} vertices",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidPoint(format!("loop at vertex {}", u + 1)));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidPoint(format!(
                    "duplicate edge ({}, {})",
                    u + 1,
                    v + 1
                )));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let dist = (0..n).map(|s| bfs(&adj, s)).collect();
        Ok(Self {
            n,
            edges,
            adj,
            dist,
        })
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs three vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is simple")
    }

    /// Star with one center (vertex 0) and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.dist[u][v] == 1
    }

    /// Index of edge `{u, v}` in [`Self::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Hop distance, or [`UNREACHABLE`].
    pub fn hops(&self, u: usize, v: usize) -> u32 {
        self.dist[u][v]
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.dist[0].iter().all(|&d| d != UNREACHABLE)
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&v| self.adj[v].is_empty())
    }

    /// Largest finite hop distance.
    pub fn diameter(&self) -> u32 {
        self.dist
            .iter()
            .flatten()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }

    /// The `l`-subdivision: every edge becomes a path of `l` unit edges.
    ///
    /// Original vertices keep their ids; the `l − 1` inner vertices of the
    /// `i`-th edge `(u, v)` get ids `n + i(l − 1) .. n + (i + 1)(l − 1)`,
    /// ordered from `u` towards `v`.
    pub fn subdivide(&self, l: usize) -> Self {
        assert!(l >= 1, "subdivision factor must be positive");
        if l == 1 {
            return self.clone();
        }
        let inner = l - 1;
        let n = self.n + self.edges.len() * inner;
        let mut edges = Vec::with_capacity(self.edges.len() * l);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let base = self.n + i * inner;
            let mut prev = u;
            for j in 0..inner {
                edges.push((prev, base + j));
                prev = base + j;
            }
            edges.push((prev, v));
        }
        Self::new(n, edges).expect("subdivision of a simple graph is simple")
    }

    /// Disjoint union, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::new(self.n + other.n, edges).expect("union of simple graphs is simple")
    }
}

fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; adj.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All connected graphs on `n` vertices, one per isomorphism class, in a
/// fixed order. Intended for exhaustive checks on tiny graphs (`n ≤ 7`).
pub fn connected_graphs(n: usize) -> Vec<MetricGraph> {
    assert!(n <= 7, "exhaustive enumeration is limited to 7 vertices");
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = i;
        pair_index[v][u] = i;
    }
    let perms = permutations(n);
    let mut canon = BTreeSet::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let edges = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]);
        let g = MetricGraph::new(n, edges).expect("subsets of pairs are simple");
        if !g.is_connected() {
            continue;
        }
        let best = perms
            .iter()
            .map(|p| {
                g.edges
                    .iter()
                    .fold(0u32, |m, &(u, v)| m | 1 << pair_index[p[u]][p[v]])
            })
            .min()
            .expect("at least one permutation");
        canon.insert(best);
    }
    canon
        .into_iter()
        .map(|mask| {
            let edges = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]);
            MetricGraph::new(n, edges).expect("canonical forms are simple")
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            let j = if k % 2 == 0 { i } else { 0 };
            if i + 1 < k {
                cur.swap(j, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}
