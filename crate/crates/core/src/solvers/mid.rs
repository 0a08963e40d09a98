//! 1/2 ≤ δ < 1: tokens worth placing sit on edge midpoints (or near a
//! vertex), each reaching at most the two ends of one edge.

use crate::budget::Meter;
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::matching::{min_b_edge_cover, min_edge_cover, EdgeMultiset};
use crate::point::{Point, TokenSet};
use crate::rational::{half, int, Rational};
use crate::variant::{AttackDomain, Instance};

use super::small::near_vertex_points;
use super::{Certificate, FactorCertificate, FactorTree, Method, Solution};

fn check_range(inst: &Instance, multiset_attack: bool) -> Result<()> {
    let v = &inst.variant;
    let d = v.delta();
    if v.attack_domain != AttackDomain::Vertex || *d < half() || *d >= int(1) {
        return Err(Error::UnsupportedParameter(
            "needs a vertex attack with 1/2 <= δ < 1".into(),
        ));
    }
    if v.attack_multiset != multiset_attack {
        return Err(Error::UnsupportedParameter(format!(
            "needs attack_multiset = {multiset_attack}"
        )));
    }
    Ok(())
}

fn components(g: &MetricGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in g.neighbors(comp[i]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask & bit(i) != 0)
}

struct Partitioner<'a> {
    nbr: Vec<u64>,
    min: u32,
    best: Vec<u64>,
    current: Vec<u64>,
    meter: &'a mut Meter,
}

impl Partitioner<'_> {
    fn components_ok(&self, rest: u64) -> bool {
        let mut left = rest;
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let add = self.nbr[v] & rest & !comp;
                comp |= add;
                frontier |= add;
            }
            if comp.count_ones() < self.min {
                return false;
            }
            left &= !comp;
        }
        true
    }

    fn split(&mut self, rest: u64) -> Result<()> {
        self.meter.tick(1)?;
        if rest == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return Ok(());
        }
        if self.current.len() + (rest.count_ones() / self.min) as usize <= self.best.len() {
            return Ok(());
        }
        let r = rest & rest.wrapping_neg();
        let cand = self.nbr[r.trailing_zeros() as usize] & rest;
        self.grow(rest, r, cand, 0)
    }

    /// Enumerates connected blocks `s ⊆ rest` containing the lowest vertex,
    /// each exactly once.
    fn grow(&mut self, rest: u64, s: u64, cand: u64, banned: u64) -> Result<()> {
        if s.count_ones() >= self.min && self.components_ok(rest & !s) {
            self.current.push(s);
            self.split(rest & !s)?;
            self.current.pop();
        }
        let mut c = cand;
        let mut banned = banned;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            let s2 = s | bit(v);
            let cand2 = (c | (self.nbr[v] & rest)) & !s2 & !banned;
            self.grow(rest, s2, cand2, banned)?;
            banned |= bit(v);
        }
        Ok(())
    }
}

/// A partition of `vertices` (which must induce a connected subgraph) into
/// the largest number of connected blocks with at least `min_size`
/// vertices each. Empty if `vertices` itself is too small.
pub fn max_connected_partition(
    g: &MetricGraph,
    vertices: &[usize],
    min_size: usize,
) -> Result<Vec<Vec<usize>>> {
    if vertices.len() > 64 {
        return Err(Error::UnsupportedParameter(
            "partition search handles at most 64 vertices per component".into(),
        ));
    }
    let index = |v: usize| vertices.binary_search(&v).ok();
    let nbr: Vec<u64> = vertices
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|&w| index(w))
                .fold(0, |m, i| m | bit(i))
        })
        .collect();
    let all = if vertices.len() == 64 { u64::MAX } else { bit(vertices.len()) - 1 };
    let mut meter = Meter::new("tree-factor search");
    let mut p = Partitioner {
        nbr,
        min: min_size.max(1) as u32,
        best: Vec::new(),
        current: Vec::new(),
        meter: &mut meter,
    };
    if vertices.len() >= min_size && p.components_ok(all) {
        p.split(all)?;
    }
    Ok(p
        .best
        .iter()
        .map(|&m| bits(m).map(|i| vertices[i]).collect())
        .collect())
}

fn spanning_tree(g: &MetricGraph, block: &[usize]) -> FactorTree {
    let mut seen = vec![block[0]];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < seen.len() {
        let v = seen[i];
        for &w in g.neighbors(v) {
            if block.binary_search(&w).is_ok() && !seen.contains(&w) {
                seen.push(w);
                edges.push((v.min(w), v.max(w)));
            }
        }
        i += 1;
    }
    edges.sort_unstable();
    FactorTree {
        vertices: block.to_vec(),
        edges,
    }
}

/// Set attacks: components with at most `k` vertices get a token on every
/// vertex; larger ones get the midpoints of a minimum-edge forest whose
/// trees all have more than `k` vertices.
pub fn solve_mid_delta_set_attack(inst: &Instance) -> Result<Solution> {
    check_range(inst, false)?;
    let g = &inst.graph;
    let k = inst.k;
    let mut cert = FactorCertificate::default();
    for comp in components(g) {
        if (comp.len() as u64) <= k {
            cert.direct.extend(&comp);
            continue;
        }
        if k == 1 {
            let sub = induced(g, &comp);
            let cover = min_edge_cover(&sub).expect("component has no isolated vertex");
            let cover_graph = MetricGraph::new(sub.n(), cover.iter().copied())?;
            for star in components(&cover_graph) {
                let block: Vec<usize> = star.iter().map(|&i| comp[i]).collect();
                let edges: Vec<(usize, usize)> = cover
                    .iter()
                    .filter(|e| star.binary_search(&e.0).is_ok())
                    .map(|&(a, b)| (comp[a].min(comp[b]), comp[a].max(comp[b])))
                    .collect();
                let mut block = block;
                block.sort_unstable();
                cert.trees.push(FactorTree {
                    vertices: block,
                    edges,
                });
            }
            continue;
        }
        for block in max_connected_partition(g, &comp, k as usize + 1)? {
            cert.trees.push(spanning_tree(g, &block));
        }
    }
    cert.direct.sort_unstable();
    cert.trees.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    let mut defense = TokenSet::new(inst.variant.defense_multiset);
    for t in &cert.trees {
        for &(u, v) in &t.edges {
            defense.insert(Point::on_edge(u, v, half()), 1)?;
        }
    }
    for &v in &cert.direct {
        defense.insert(Point::vertex(v), 1)?;
    }
    let method = if k == 1 { Method::EdgeCover } else { Method::TreeFactor };
    Ok(Solution::found(defense, method, Some(Certificate::Factor(cert))))
}

fn induced(g: &MetricGraph, vertices: &[usize]) -> MetricGraph {
    let idx = |v: usize| vertices.binary_search(&v).ok();
    let edges = g
        .edges()
        .iter()
        .filter_map(|&(u, v)| Some((idx(u)?, idx(v)?)));
    MetricGraph::new(vertices.len(), edges).expect("induced subgraph is simple")
}

/// Multiset attacks: every vertex must see `k` tokens. Midpoint tokens
/// serve two vertices, so this is a `b`-edge cover with `b ≡ k`; at
/// δ = 1/2 with a set defense each midpoint holds one token and the rest
/// are topped up next to the vertices.
pub fn solve_mid_delta_multiset_attack(inst: &Instance) -> Result<Solution> {
    check_range(inst, true)?;
    let g = &inst.graph;
    let var = &inst.variant;
    let k = inst.k;
    let dm = var.defense_multiset;
    let capacitated = !dm && *var.delta() == half();
    let method = if capacitated {
        Method::CapacitatedBEdgeCover
    } else {
        Method::BEdgeCover
    };
    let isolated: Vec<usize> = g.isolated_vertices().collect();
    if !dm && k >= 2 && !isolated.is_empty() {
        return Ok(Solution::infeasible(dm, method));
    }
    let per_isolated = if dm { k } else { 1 };
    let mut defense = TokenSet::new(dm);
    for &w in &isolated {
        defense.insert(Point::vertex(w), per_isolated)?;
    }
    if !capacitated {
        let b: Vec<u64> = (0..g.n()).map(|v| if g.degree(v) > 0 { k } else { 0 }).collect();
        let cover = min_b_edge_cover(g, &b, false).expect("demanded vertices have edges");
        let l = defense.total() + cover.iter().map(|e| e.2).sum::<u64>();
        let steps = l.max(2) as i64 - 1;
        let slack = var.delta_frac() - half();
        for &(u, v, m) in &cover {
            if dm {
                defense.insert(Point::on_edge(u, v, half()), m)?;
            } else {
                for i in 0..m as i64 {
                    let lambda = half() - &slack * Rational::new(i, steps);
                    defense.insert(Point::on_edge(u, v, lambda), 1)?;
                }
            }
        }
        return Ok(Solution::found(defense, method, Some(Certificate::Edges(cover))));
    }
    // Leaf augmentation: a vertex of degree below k gets k − deg pendant
    // leaves of demand 1, which forces all its own edges into the cover.
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut b: Vec<u64> = (0..n).map(|v| if g.degree(v) > 0 { k } else { 0 }).collect();
    for v in 0..n {
        let deg = g.degree(v) as u64;
        if deg == 0 {
            continue;
        }
        for _ in deg..k {
            edges.push((v, b.len()));
            b.push(1);
        }
    }
    let augmented = MetricGraph::new(b.len(), edges)?;
    let cover = min_b_edge_cover(&augmented, &b, true)
        .ok_or_else(|| Error::Internal("augmented demands are always satisfiable".into()))?;
    let chosen: EdgeMultiset = cover.into_iter().filter(|e| e.1 < n).collect();
    let mut have = vec![0u64; n];
    for &(u, v, _) in &chosen {
        have[u] += 1;
        have[v] += 1;
    }
    let top_up: Vec<u64> = (0..n)
        .map(|v| if g.degree(v) > 0 { k.saturating_sub(have[v]) } else { 0 })
        .collect();
    let l = defense.total() + chosen.len() as u64 + top_up.iter().sum::<u64>();
    for &(u, v, _) in &chosen {
        defense.insert(Point::on_edge(u, v, half()), 1)?;
    }
    for v in 0..n {
        if top_up[v] == 0 {
            continue;
        }
        let points = near_vertex_points(g, v, top_up[v], &half(), true, l)
            .ok_or_else(|| Error::Internal("not enough near-vertex positions".into()))?;
        for p in points {
            defense.insert(p, 1)?;
        }
    }
    Ok(Solution::found(defense, method, Some(Certificate::Edges(chosen))))
}
