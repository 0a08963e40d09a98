//! Partition of the whole metric space into classes of points that reach
//! the same vertices within δ.
//!
//! Along an edge the reached vertex set can only change at `λ = δ̃` and
//! `λ = 1 − δ̃`, so every edge splits into at most three breakpoints and
//! four open intervals. Breakpoints hold one point each, intervals hold
//! infinitely many.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::graph::MetricGraph;
use crate::point::{Point, TokenSet};
use crate::rational::{int, Rational};
use crate::variant::Variant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Member {
    Single(Point),
    /// Open interval `(lo, hi)` of `λ` on edge `(u, v)`, `u < v`.
    Interval {
        u: usize,
        v: usize,
        lo: Rational,
        hi: Rational,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Class {
    /// Vertices within δ of every point of the class, sorted.
    pub signature: Vec<usize>,
    pub members: Vec<Member>,
}

impl Class {
    /// Distinct points available, `None` when unbounded.
    pub fn capacity(&self) -> Option<u64> {
        let mut n = 0;
        for m in &self.members {
            match m {
                Member::Single(_) => n += 1,
                Member::Interval { .. } => return None,
            }
        }
        Some(n)
    }

    /// `count` tokens of this class: stacked on one representative for a
    /// multiset defense, on distinct points otherwise.
    pub fn realize(&self, count: u64, multiset: bool, out: &mut TokenSet) {
        if count == 0 {
            return;
        }
        if multiset {
            out.insert(representative(&self.members[0]), count)
                .expect("multiset insert");
            return;
        }
        let mut left = count;
        for m in &self.members {
            if let Member::Single(p) = m {
                out.insert(p.clone(), 1).expect("class points are distinct");
                left -= 1;
                if left == 0 {
                    return;
                }
            }
        }
        let (u, v, lo, hi) = self
            .members
            .iter()
            .find_map(|m| match m {
                Member::Interval { u, v, lo, hi } => Some((*u, *v, lo, hi)),
                Member::Single(_) => None,
            })
            .expect("set defense asked for more points than a finite class holds");
        let step = (hi - lo) / int(left as i64 + 1);
        for j in 1..=left {
            let lambda = lo + &step * int(j as i64);
            out.insert(Point::on_edge(u, v, lambda), 1)
                .expect("interval points are distinct");
        }
    }
}

fn representative(m: &Member) -> Point {
    match m {
        Member::Single(p) => p.clone(),
        Member::Interval { u, v, lo, hi } => Point::on_edge(*u, *v, (lo + hi) / int(2)),
    }
}

/// All classes, ordered by their first member (vertices first).
pub(crate) fn vertex_classes(g: &MetricGraph, variant: &Variant) -> Vec<Class> {
    let delta = variant.delta();
    let f = variant.delta_frac();
    let mut members: Vec<Member> = (0..g.n()).map(|v| Member::Single(Point::vertex(v))).collect();
    for &(u, v) in g.edges() {
        let mut cuts = vec![Rational::zero(), Rational::one()];
        for c in [f.clone(), Rational::one() - &f] {
            if c > Rational::zero() && c < Rational::one() {
                cuts.push(c);
            }
        }
        cuts.sort();
        cuts.dedup();
        for w in cuts.windows(2) {
            if !w[0].is_zero() {
                members.push(Member::Single(Point::on_edge(u, v, w[0].clone())));
            }
            members.push(Member::Interval {
                u,
                v,
                lo: w[0].clone(),
                hi: w[1].clone(),
            });
        }
    }
    let mut by_signature: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut classes: Vec<Class> = Vec::new();
    for m in members {
        let signature = g.ball_vertices(&representative(&m), delta);
        match by_signature.get(&signature) {
            Some(&i) => classes[i].members.push(m),
            None => {
                by_signature.insert(signature.clone(), classes.len());
                classes.push(Class {
                    signature,
                    members: vec![m],
                });
            }
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, ratio};

    #[test]
    fn single_edge_classes() {
        let g = MetricGraph::path(2);
        // δ = 1/4: vertex classes absorb the near intervals, the middle reaches nothing
        let v = Variant::vertex(ratio(1, 4), false, false);
        let cs = vertex_classes(&g, &v);
        let sigs: Vec<_> = cs.iter().map(|c| c.signature.clone()).collect();
        assert_eq!(sigs, vec![vec![0], vec![1], vec![]]);
        assert_eq!(cs[0].capacity(), None);
        // δ = 1/2: the midpoint is a lone point reaching both ends
        let v = Variant::vertex(half(), false, false);
        let cs = vertex_classes(&g, &v);
        let both = cs.iter().find(|c| c.signature == vec![0, 1]).unwrap();
        assert_eq!(both.capacity(), Some(1));
    }

    #[test]
    fn realize_spreads_set_tokens() {
        let g = MetricGraph::path(2);
        let v = Variant::vertex(ratio(1, 4), false, false);
        let cs = vertex_classes(&g, &v);
        let mut t = TokenSet::new(false);
        cs[0].realize(3, false, &mut t);
        assert_eq!(t.total(), 3);
        for (p, _) in t.iter() {
            assert_eq!(g.ball_vertices(p, v.delta()), vec![0]);
        }
    }
}
