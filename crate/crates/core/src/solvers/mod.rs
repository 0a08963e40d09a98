//! Minimum defenses for every variant: closed-form and matching-based
//! algorithms where they exist, exact search elsewhere, and independent
//! brute-force oracles.

mod classes;
mod exact;
mod ilp;
mod mid;
mod oracle;
mod point;
mod small;

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::matching::EdgeMultiset;
use crate::point::TokenSet;
use crate::rational::{half, int};
use crate::variant::{AttackDomain, Instance};
use crate::verify::{uncovered_probe, worst_vertex_attack, GroupedDefense};

pub use exact::exact_search;
pub use mid::{
    max_connected_partition, solve_mid_delta_multiset_attack, solve_mid_delta_set_attack,
};
pub use oracle::{oracle_min_defense, oracle_point_defense};
pub use point::solve_point_attack;
pub use small::solve_small_delta;

/// Which algorithm produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    SmallDelta,
    TreeFactor,
    EdgeCover,
    BEdgeCover,
    CapacitatedBEdgeCover,
    ExactSearch,
    PointCover,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::SmallDelta => "small-delta",
            Method::TreeFactor => "tree-factor",
            Method::EdgeCover => "edge-cover",
            Method::BEdgeCover => "b-edge-cover",
            Method::CapacitatedBEdgeCover => "capacitated-b-edge-cover",
            Method::ExactSearch => "exact-search",
            Method::PointCover => "point-cover",
        })
    }
}

/// A spanning forest whose trees each have more than `k` vertices, plus
/// the vertices of graph components too small to host such a tree (these
/// are defended by a token on each vertex).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorCertificate {
    pub trees: Vec<FactorTree>,
    pub direct: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorTree {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl FactorCertificate {
    pub fn edge_count(&self) -> usize {
        self.trees.iter().map(|t| t.edges.len()).sum()
    }

    /// Trees are disjoint, acyclic, connected, large enough, and together
    /// with `direct` cover every vertex exactly once.
    pub fn check(&self, g: &MetricGraph, k: u64) -> bool {
        let mut seen = vec![false; g.n()];
        let mut mark = |v: usize| v < g.n() && !std::mem::replace(&mut seen[v], true);
        for t in &self.trees {
            if (t.vertices.len() as u64) < k + 1 || t.edges.len() + 1 != t.vertices.len() {
                return false;
            }
            if !t.vertices.iter().all(|&v| mark(v)) {
                return false;
            }
            let inside = |v: usize| t.vertices.binary_search(&v).is_ok();
            if !t.edges.iter().all(|&(u, v)| g.has_edge(u, v) && inside(u) && inside(v)) {
                return false;
            }
            let sub = MetricGraph::new(
                t.vertices.len(),
                t.edges.iter().map(|&(u, v)| {
                    let idx = |x: usize| t.vertices.binary_search(&x).expect("inside");
                    (idx(u), idx(v))
                }),
            );
            if !sub.is_ok_and(|s| s.is_connected()) {
                return false;
            }
        }
        self.direct.iter().all(|&v| mark(v)) && seen.iter().all(|&s| s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Factor(FactorCertificate),
    Edges(EdgeMultiset),
    Grouped(GroupedDefense),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// `None` when no defense of any size counters every attack.
    pub optimal_size: Option<u64>,
    pub defense: TokenSet,
    pub method: Method,
    pub certificate: Option<Certificate>,
}

impl Solution {
    pub(crate) fn found(defense: TokenSet, method: Method, certificate: Option<Certificate>) -> Self {
        Self {
            optimal_size: Some(defense.total()),
            defense,
            method,
            certificate,
        }
    }

    pub(crate) fn infeasible(multiset: bool, method: Method) -> Self {
        Self {
            optimal_size: None,
            defense: TokenSet::new(multiset),
            method,
            certificate: None,
        }
    }

    /// Is there a defense of size at most `l`?
    pub fn fits(&self, l: u64) -> bool {
        self.optimal_size.is_some_and(|s| s <= l)
    }
}

/// Minimum defense for `inst`, routed to the matching algorithm for its
/// variant and re-verified before returning.
pub fn solve(inst: &Instance) -> Result<Solution> {
    let v = &inst.variant;
    let sol = match v.attack_domain {
        AttackDomain::Point => solve_point_attack(inst)?,
        AttackDomain::Vertex if *v.delta() < half() => solve_small_delta(inst)?,
        AttackDomain::Vertex if *v.delta() < int(1) => {
            if v.attack_multiset {
                solve_mid_delta_multiset_attack(inst)?
            } else {
                solve_mid_delta_set_attack(inst)?
            }
        }
        AttackDomain::Vertex => exact_search(inst)?,
    };
    verify_solution(inst, &sol)?;
    Ok(sol)
}

/// Checks that a solution's defense is valid and counters every attack.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> Result<()> {
    if sol.optimal_size.is_none() {
        return Ok(());
    }
    let g = &inst.graph;
    let v = &inst.variant;
    if sol.optimal_size != Some(sol.defense.total()) {
        return Err(Error::Internal("reported size differs from the defense".into()));
    }
    let ok = match v.attack_domain {
        AttackDomain::Vertex => worst_vertex_attack(g, v, &sol.defense, inst.k)?.deficiency == 0,
        AttackDomain::Point => uncovered_probe(g, v, &sol.defense, inst.k)?.is_none(),
    };
    if !ok {
        return Err(Error::Internal(format!(
            "{} produced a defense that fails verification",
            sol.method
        )));
    }
    if let Some(Certificate::Factor(f)) = &sol.certificate {
        if !f.check(g, inst.k) {
            return Err(Error::Internal("malformed factor certificate".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::variant::Variant;

    fn vertex(g: MetricGraph, d: (i64, i64), k: u64, am: bool, dm: bool) -> Instance {
        Instance::new(g, Variant::vertex(ratio(d.0, d.1), am, dm), k, None).unwrap()
    }

    fn point(g: MetricGraph, d: (i64, i64), k: u64, am: bool, dm: bool) -> Instance {
        Instance::new(g, Variant::point(ratio(d.0, d.1), am, dm), k, None).unwrap()
    }

    fn opt(inst: &Instance) -> Option<u64> {
        solve(inst).unwrap().optimal_size
    }

    #[test]
    fn dispatcher_examples() {
        let p3 = MetricGraph::path(3);
        let sol = solve(&vertex(p3.clone(), (1, 4), 2, false, false)).unwrap();
        assert_eq!(sol.optimal_size, Some(3));
        assert!((0..3).all(|v| sol.defense.multiplicity(&crate::Point::vertex(v)) == 1));
        assert_eq!(opt(&vertex(p3, (1, 4), 2, true, true)), Some(6));
        assert_eq!(opt(&vertex(MetricGraph::complete(3), (3, 4), 2, false, false)), Some(2));
    }

    #[test]
    fn small_delta_examples() {
        let p2 = MetricGraph::path(2);
        assert_eq!(solve_small_delta(&vertex(p2.clone(), (1, 3), 1, false, false)).unwrap().optimal_size, Some(2));
        assert_eq!(solve_small_delta(&vertex(p2.clone(), (1, 3), 3, true, true)).unwrap().optimal_size, Some(6));
        let set_def = solve(&vertex(p2, (1, 3), 3, true, false)).unwrap();
        assert_eq!(set_def.optimal_size, Some(6));
        let empty = MetricGraph::new(0, []).unwrap();
        assert_eq!(opt(&vertex(empty, (1, 3), 1, false, false)), Some(0));
    }

    #[test]
    fn factor_examples() {
        let k3 = solve_mid_delta_set_attack(&vertex(MetricGraph::complete(3), (3, 4), 2, false, false)).unwrap();
        assert_eq!(k3.optimal_size, Some(2));
        assert_eq!(k3.method, Method::TreeFactor);
        assert_eq!(opt(&vertex(MetricGraph::path(4), (3, 4), 2, false, false)), Some(3));
        let c5 = vertex(MetricGraph::cycle(5), (1, 2), 1, false, false);
        assert_eq!(solve(&c5).unwrap().optimal_size, Some(3));
        assert_eq!(solve(&c5).unwrap().method, Method::EdgeCover);
    }

    #[test]
    fn b_edge_cover_examples() {
        assert_eq!(opt(&vertex(MetricGraph::cycle(4), (3, 4), 1, true, false)), Some(2));
        assert_eq!(opt(&vertex(MetricGraph::star(3), (3, 4), 2, true, true)), Some(6));
        let p2 = solve(&vertex(MetricGraph::path(2), (1, 2), 1, true, false)).unwrap();
        assert_eq!(p2.optimal_size, Some(1));
        assert_eq!(p2.method, Method::CapacitatedBEdgeCover);
        // two tokens per vertex on an edge: the midpoint plus one token per end
        assert_eq!(opt(&vertex(MetricGraph::path(2), (1, 2), 2, true, false)), Some(3));
    }

    #[test]
    fn exact_search_examples() {
        let p3 = MetricGraph::path(3);
        assert_eq!(exact_search(&vertex(p3.clone(), (1, 1), 1, false, false)).unwrap().optimal_size, Some(1));
        assert_eq!(opt(&vertex(p3, (1, 1), 2, false, false)), Some(2));
        assert_eq!(opt(&vertex(MetricGraph::complete(3), (1, 1), 3, false, false)), Some(3));
    }

    #[test]
    fn point_attack_examples() {
        assert_eq!(opt(&point(MetricGraph::cycle(4), (1, 1), 1, false, true)), Some(2));
        assert_eq!(opt(&point(MetricGraph::path(2), (1, 2), 1, false, false)), Some(1));
        // δ at least the largest distance in the space: one token anywhere
        assert_eq!(opt(&point(MetricGraph::path(3), (2, 1), 1, false, false)), Some(1));
    }

    #[test]
    fn oracle_examples() {
        let p3 = vertex(MetricGraph::path(3), (1, 1), 1, false, false);
        assert_eq!(oracle_min_defense(&p3, 1).unwrap(), Some(1));
        let p2 = vertex(MetricGraph::path(2), (1, 3), 1, false, false);
        assert_eq!(oracle_min_defense(&p2, 2).unwrap(), Some(2));
        let k3 = vertex(MetricGraph::complete(3), (3, 4), 2, false, false);
        assert_eq!(oracle_min_defense(&k3, 2).unwrap(), Some(2));
    }

    #[test]
    fn infeasible_isolated_vertex() {
        let g = MetricGraph::new(2, [(0, 1)]).unwrap().disjoint_union(&MetricGraph::new(1, []).unwrap());
        let inst = vertex(g, (3, 4), 2, true, false);
        assert_eq!(opt(&inst), None);
        assert_eq!(oracle_min_defense(&inst, 1).unwrap(), None);
        assert!(!solve(&inst).unwrap().fits(100));
    }
}
