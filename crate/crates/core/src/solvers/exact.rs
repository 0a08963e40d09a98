//! Exact minimum defense against vertex attacks for any δ.
//!
//! Tokens are grouped by the vertex set they reach. A relaxation that only
//! knows some Hall inequalities is solved to optimality; if its defense
//! fails some attack, the violated inequality is added and the relaxation
//! re-solved. The first defense that counters every attack is optimal.

use crate::error::{Error, Result};
use crate::matching::FlowNetwork;
use crate::point::TokenSet;
use crate::variant::{AttackDomain, Instance};
use crate::verify::{find_uncountered_vertex_attack, GroupedDefense};

use super::classes::{vertex_classes, Class};
use super::ilp::CoveringProgram;
use super::{Certificate, Method, Solution};

const MAX_ROUNDS: usize = 100_000;

fn realize(classes: &[Class], x: &[u64], multiset: bool) -> TokenSet {
    let mut defense = TokenSet::new(multiset);
    for (c, &count) in classes.iter().zip(x) {
        c.realize(count, multiset, &mut defense);
    }
    defense
}

/// Vertices of a maximally violated Hall set of `attack` against the class
/// counts `x`.
fn violated_hall_set(
    classes: &[Class],
    x: &[u64],
    attack: &[(usize, u64)],
) -> Option<Vec<usize>> {
    let (s, t) = (0, 1);
    let a0 = 2;
    let c0 = 2 + attack.len();
    let mut net = FlowNetwork::new(c0 + classes.len());
    let total: u64 = attack.iter().map(|a| a.1).sum();
    for (i, &(v, m)) in attack.iter().enumerate() {
        net.add_edge(s, a0 + i, m);
        for (j, c) in classes.iter().enumerate() {
            if c.signature.binary_search(&v).is_ok() {
                net.add_edge(a0 + i, c0 + j, total);
            }
        }
    }
    for (j, &xj) in x.iter().enumerate() {
        net.add_edge(c0 + j, t, xj);
    }
    if net.max_flow(s, t) == total {
        return None;
    }
    let side = net.residual_reachable(s);
    Some(
        attack
            .iter()
            .enumerate()
            .filter(|&(i, _)| side[a0 + i])
            .map(|(_, a)| a.0)
            .collect(),
    )
}

/// Minimum defense countering every vertex `k`-attack.
pub fn exact_search(inst: &Instance) -> Result<Solution> {
    let g = &inst.graph;
    let var = &inst.variant;
    if var.attack_domain != AttackDomain::Vertex {
        return Err(Error::UnsupportedParameter("exact_search handles vertex attacks".into()));
    }
    let dm = var.defense_multiset;
    let per_vertex = if var.attack_multiset { inst.k } else { 1 };
    let unbounded = per_vertex * g.n() as u64;
    let classes = vertex_classes(g, var);
    let caps: Vec<u64> = classes
        .iter()
        .map(|c| match c.capacity() {
            Some(cap) if !dm => cap.min(unbounded),
            _ => unbounded,
        })
        .collect();
    let mut program = CoveringProgram::new(caps);
    let reaching = |set: &[usize]| -> Vec<usize> {
        (0..classes.len())
            .filter(|&j| classes[j].signature.iter().any(|v| set.contains(v)))
            .collect()
    };
    for v in 0..g.n() {
        program.add_row(reaching(&[v]), per_vertex);
    }
    for _ in 0..MAX_ROUNDS {
        let Some(x) = program.solve()? else {
            return Ok(Solution::infeasible(dm, Method::ExactSearch));
        };
        let defense = realize(&classes, &x, dm);
        let Some(attack) = find_uncountered_vertex_attack(g, var, &defense, inst.k)? else {
            let grouped = GroupedDefense::from_tokens(&defense);
            return Ok(Solution::found(
                defense,
                Method::ExactSearch,
                Some(Certificate::Grouped(grouped)),
            ));
        };
        let counts: Vec<(usize, u64)> = attack
            .iter()
            .map(|(p, m)| (p.as_vertex().expect("vertex attack"), m))
            .collect();
        let hall = violated_hall_set(&classes, &x, &counts)
            .ok_or_else(|| Error::Internal("uncountered attack without a Hall violation".into()))?;
        let demand = counts
            .iter()
            .filter(|a| hall.contains(&a.0))
            .map(|a| a.1)
            .sum();
        program.add_row(reaching(&hall), demand);
    }
    Err(Error::ResourceLimit(format!(
        "exact search did not converge within {MAX_ROUNDS} rounds"
    )))
}
