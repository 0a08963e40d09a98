//! δ < 1/2: a token reaches at most one vertex, so each vertex needs its
//! own tokens.

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::point::{Point, TokenSet};
use crate::rational::{half, Rational};
use crate::variant::Instance;

use super::{Method, Solution};

/// Distinct points reaching `v` and no other vertex, on the neat grid for
/// defenses of size `l`: `v` itself, then `λ = j·r/(l−1)` along incident
/// edges. With `strict` the radius `r` is excluded (the open ball).
pub(crate) fn near_vertex_points(
    g: &MetricGraph,
    v: usize,
    count: u64,
    radius: &Rational,
    strict: bool,
    l: u64,
) -> Option<Vec<Point>> {
    let mut out = vec![Point::vertex(v)];
    let steps = l.max(2) as i64 - 1;
    let last = if strict { steps - 1 } else { steps };
    for &w in g.neighbors(v) {
        for j in 1..=last {
            if out.len() as u64 >= count {
                break;
            }
            out.push(Point::on_edge(v, w, radius * Rational::new(j, steps)));
        }
    }
    out.truncate(count as usize);
    (out.len() as u64 == count).then_some(out)
}

/// One token per vertex against set attacks, `k` per vertex against
/// multiset attacks.
pub fn solve_small_delta(inst: &Instance) -> Result<Solution> {
    let g = &inst.graph;
    let var = &inst.variant;
    if *var.delta() >= half() {
        return Err(Error::UnsupportedParameter("solve_small_delta needs δ < 1/2".into()));
    }
    let per_vertex = if var.attack_multiset { inst.k } else { 1 };
    let l = per_vertex * g.n() as u64;
    let mut defense = TokenSet::new(var.defense_multiset);
    for v in 0..g.n() {
        if var.defense_multiset || per_vertex == 1 {
            defense.insert(Point::vertex(v), per_vertex)?;
            continue;
        }
        match near_vertex_points(g, v, per_vertex, var.delta(), false, l) {
            Some(points) => {
                for p in points {
                    defense.insert(p, 1)?;
                }
            }
            None => return Ok(Solution::infeasible(var.defense_multiset, Method::SmallDelta)),
        }
    }
    Ok(Solution::found(defense, Method::SmallDelta, None))
}

