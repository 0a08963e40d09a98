//! Finite candidate positions that are guaranteed to contain an optimal
//! defense or cover.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::point::Point;
use crate::rational::{half, ratio, Rational};
use crate::variant::{FractionClass, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    /// One position per edge side: the vertex when δ̃ < 1/2, else the midpoint.
    Nice,
    /// The neat family for defenses of size `l` (requires `l ≥ 2`).
    Neat(u64),
    /// All `2b`-simple points.
    CoverMultiset,
    /// All `4k·|E|·b`-simple points.
    CoverSet(u64),
}

/// Candidate positions for `mode`, sorted and deduplicated.
///
/// Isolated vertices are always included: they host the only points that
/// can reach themselves.
pub fn defense_grid(g: &MetricGraph, variant: &Variant, mode: GridMode) -> Result<Vec<Point>> {
    let mut out: BTreeSet<Point> = g.isolated_vertices().map(Point::vertex).collect();
    match mode {
        GridMode::Nice => {
            if variant.delta_frac() < half() {
                out.extend((0..g.n()).map(Point::vertex));
            } else {
                out.extend(g.edges().iter().map(|&(u, v)| Point::on_edge(u, v, half())));
            }
        }
        GridMode::Neat(l) => {
            if l < 2 {
                return Err(Error::UnsupportedParameter(format!(
                    "neat grid needs l >= 2, got {l}"
                )));
            }
            let lambdas = neat_lambdas(variant, l);
            for &(u, v) in g.edges() {
                for lambda in &lambdas {
                    out.insert(Point::on_edge(u, v, *lambda));
                    out.insert(Point::on_edge(v, u, *lambda));
                }
            }
        }
        GridMode::CoverMultiset | GridMode::CoverSet(_) => {
            let den = cover_denominator(g, variant, mode)?;
            out.extend(uniform_grid(g, den));
        }
    }
    Ok(out.into_iter().collect())
}

/// Offsets `λ ≤ 1/2` (measured from either endpoint) of the neat family.
pub fn neat_lambdas(variant: &Variant, l: u64) -> Vec<Rational> {
    let steps = (l - 1) as i64;
    let f = variant.delta_frac();
    (0..=steps)
        .map(|i| match variant.fraction_class() {
            FractionClass::Low => ratio(i, steps) * f,
            FractionClass::High => half() - ratio(i, steps) * (f - half()),
            FractionClass::Zero | FractionClass::Half => ratio(i, 2 * steps),
        })
        .collect()
}

/// Grid denominator of a cover mode: `2b`, or `4k·|E|·b` (falling back to
/// `2b` on an edgeless graph).
pub fn cover_denominator(g: &MetricGraph, variant: &Variant, mode: GridMode) -> Result<i64> {
    let b = variant.delta_den();
    match mode {
        GridMode::CoverMultiset => Ok(2 * b),
        GridMode::CoverSet(k) => {
            if k == 0 {
                return Err(Error::UnsupportedParameter("cover grid needs k >= 1".into()));
            }
            if g.edge_count() == 0 {
                Ok(2 * b)
            } else {
                Ok(4 * k as i64 * g.edge_count() as i64 * b)
            }
        }
        _ => Err(Error::UnsupportedParameter(
            "only cover grids have a uniform denominator".into(),
        )),
    }
}

/// Every vertex plus every interior point whose λ is a multiple of `1/den`.
pub fn uniform_grid(g: &MetricGraph, den: i64) -> Vec<Point> {
    let mut out: Vec<Point> = (0..g.n()).map(Point::vertex).collect();
    for &(u, v) in g.edges() {
        out.extend((1..den).map(|i| Point::on_edge(u, v, ratio(i, den))));
    }
    out.sort();
    out
}

/// True if `p` lies on the uniform grid of denominator `den`.
pub fn on_uniform_grid(p: &Point, den: i64) -> bool {
    crate::rational::is_multiple_of(p.lambda(), den)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn edge() -> MetricGraph {
        MetricGraph::path(2)
    }

    #[test]
    fn nice_examples() {
        let g = edge();
        let v = Variant::vertex(ratio(3, 4), false, false);
        assert_eq!(
            defense_grid(&g, &v, GridMode::Nice).unwrap(),
            vec![Point::on_edge(0, 1, half())]
        );
        let v = Variant::vertex(ratio(1, 4), false, false);
        assert_eq!(
            defense_grid(&g, &v, GridMode::Nice).unwrap(),
            vec![Point::vertex(0), Point::vertex(1)]
        );
    }

    #[test]
    fn cover_multiset_example() {
        let g = edge();
        let v = Variant::point(half(), false, true);
        let grid = defense_grid(&g, &v, GridMode::CoverMultiset).unwrap();
        let expected = vec![
            Point::vertex(0),
            Point::vertex(1),
            Point::on_edge(0, 1, ratio(1, 4)),
            Point::on_edge(0, 1, ratio(1, 2)),
            Point::on_edge(0, 1, ratio(3, 4)),
        ];
        let mut expected = expected;
        expected.sort();
        assert_eq!(grid, expected);
    }

    #[test]
    fn neat_families() {
        let g = edge();
        // 0 < δ̃ < 1/2: λ = i/(l-1)·δ̃ from both ends
        let v = Variant::vertex(ratio(5, 4), false, false);
        let grid = defense_grid(&g, &v, GridMode::Neat(3)).unwrap();
        assert_eq!(grid.len(), 6);
        assert!(grid.contains(&Point::on_edge(0, 1, ratio(1, 8))));
        assert!(grid.contains(&Point::on_edge(0, 1, ratio(7, 8))));
        // δ̃ > 1/2: between 1 − δ̃ and 1/2
        let v = Variant::vertex(ratio(3, 4), false, false);
        let grid = defense_grid(&g, &v, GridMode::Neat(3)).unwrap();
        let lambdas: Vec<_> = grid.iter().map(|p| *p.lambda()).collect();
        assert_eq!(lambdas, vec![ratio(1, 4), ratio(3, 8), ratio(1, 2), ratio(5, 8), ratio(3, 4)]);
        // δ̃ ∈ {0, 1/2}: i/(2(l-1))
        let v = Variant::vertex(int(1), false, false);
        let grid = defense_grid(&g, &v, GridMode::Neat(2)).unwrap();
        assert_eq!(grid.len(), 3);
        assert!(defense_grid(&g, &v, GridMode::Neat(1)).is_err());
    }

    #[test]
    fn cover_set_denominator() {
        let g = MetricGraph::cycle(4);
        let v = Variant::point(ratio(1, 2), false, false);
        assert_eq!(cover_denominator(&g, &v, GridMode::CoverSet(2)).unwrap(), 64);
        let grid = defense_grid(&g, &v, GridMode::CoverSet(1)).unwrap();
        assert_eq!(grid.len(), 4 + 4 * 31);
    }

    #[test]
    fn isolated_vertices_always_present() {
        let g = MetricGraph::new(3, [(0, 1)]).unwrap();
        let v = Variant::vertex(ratio(3, 4), false, false);
        assert!(defense_grid(&g, &v, GridMode::Nice).unwrap().contains(&Point::vertex(2)));
    }
}
