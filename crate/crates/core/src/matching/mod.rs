//! Matching, flow and edge-cover primitives.

mod bipartite;
mod blossom;
mod flow;

pub use bipartite::{BipartiteGraph, BipartiteMatching};
pub use blossom::{matching_number, max_matching};
pub use flow::{ArcId, FlowNetwork};

use crate::graph::MetricGraph;

/// A multiset of edges `(u, v, multiplicity)` with `u < v`, sorted.
pub type EdgeMultiset = Vec<(usize, usize, u64)>;

/// Maximum `b`-matching: a multiset of edges in which every vertex `v`
/// meets at most `b[v]` edges. With `simple` each edge is used at most once.
pub fn max_b_matching(g: &MetricGraph, b: &[u64], simple: bool) -> EdgeMultiset {
    assert_eq!(b.len(), g.n());
    // Tutte's reduction: b[v] copies of every vertex, and for every usable
    // edge copy a pair (x, y) with x joined to the copies of u and y to
    // the copies of v.
    let mut offset = Vec::with_capacity(g.n() + 1);
    let mut next = 0usize;
    for &bv in b {
        offset.push(next);
        next += bv as usize;
    }
    offset.push(next);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); next];
    let mut gadgets = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let copies = if simple { b[u].min(b[v]).min(1) } else { b[u].min(b[v]) };
        for _ in 0..copies {
            let x = adj.len();
            let y = x + 1;
            adj.push(vec![y]);
            adj.push(vec![x]);
            for (side, w) in [(x, u), (y, v)] {
                for c in offset[w]..offset[w + 1] {
                    adj[side].push(c);
                    adj[c].push(side);
                }
            }
            gadgets.push((e, x, y));
        }
    }
    let mate = max_matching(&adj);
    let copy_count = next;
    let mut count = vec![0u64; g.edge_count()];
    for (e, x, y) in gadgets {
        let to_copy = |s: usize| mate[s].is_some_and(|m| m < copy_count);
        if to_copy(x) && to_copy(y) {
            count[e] += 1;
        }
    }
    g.edges()
        .iter()
        .zip(count)
        .filter(|&(_, c)| c > 0)
        .map(|(&(u, v), c)| (u, v, c))
        .collect()
}

/// Minimum `b`-edge cover: fewest edges (counted with multiplicity) such
/// that every vertex `v` meets at least `b[v]` of them. `None` if no cover
/// exists.
pub fn min_b_edge_cover(g: &MetricGraph, b: &[u64], simple: bool) -> Option<EdgeMultiset> {
    for v in 0..g.n() {
        let deg = g.degree(v) as u64;
        if (simple && deg < b[v]) || (!simple && b[v] > 0 && deg == 0) {
            return None;
        }
    }
    let mut chosen: std::collections::BTreeMap<(usize, usize), u64> = max_b_matching(g, b, simple)
        .into_iter()
        .map(|(u, v, c)| ((u, v), c))
        .collect();
    let mut have = vec![0u64; g.n()];
    for (&(u, v), &c) in &chosen {
        have[u] += c;
        have[v] += c;
    }
    for v in 0..g.n() {
        while have[v] < b[v] {
            let key = |w: usize| (v.min(w), v.max(w));
            let w = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| !simple || !chosen.contains_key(&key(w)))
                .max_by_key(|&w| (b[w].saturating_sub(have[w]), std::cmp::Reverse(w)))
                .expect("degree was checked");
            *chosen.entry(key(w)).or_insert(0) += 1;
            have[v] += 1;
            have[w] += 1;
        }
    }
    Some(chosen.into_iter().map(|((u, v), c)| (u, v, c)).collect())
}

/// Minimum edge cover, or `None` when the graph has an isolated vertex.
pub fn min_edge_cover(g: &MetricGraph) -> Option<Vec<(usize, usize)>> {
    let cover = min_b_edge_cover(g, &vec![1; g.n()], true)?;
    Some(cover.into_iter().map(|(u, v, _)| (u, v)).collect())
}

/// Total multiplicity of an edge multiset.
pub fn multiset_size(edges: &EdgeMultiset) -> u64 {
    edges.iter().map(|e| e.2).sum()
}
