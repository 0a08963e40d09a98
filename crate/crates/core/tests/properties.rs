use std::collections::BTreeMap;

use defcover::grid::{defense_grid, GridMode};
use defcover::matching::{matching_number, min_edge_cover, FlowNetwork};
use defcover::rational::{frac, half, int, ratio};
use defcover::solvers::{solve, solve_point_attack};
use defcover::verify::{
    counters, verify_multiset_attack_flow, worst_vertex_attack, GroupedDefense,
};
use defcover::{Instance, MetricGraph, Point, Rational, TokenSet, Variant};
use proptest::prelude::*;

/// Connected graph on `lo..=hi` vertices: a random spanning tree plus a
/// random subset of the remaining pairs.
fn connected_graph(lo: usize, hi: usize) -> impl Strategy<Value = MetricGraph> {
    (lo..=hi)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            let pairs = n * n.saturating_sub(1) / 2;
            (
                Just(n),
                parents,
                proptest::collection::vec(any::<bool>(), pairs),
            )
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i + 1))
                .collect();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if extra[idx] && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            MetricGraph::new(n, edges).unwrap()
        })
}

/// Turns a seed into a point of `g`: a vertex, or an interior point with a
/// small denominator.
fn point_from(g: &MetricGraph, (pick, num, den): (usize, i64, i64)) -> Point {
    let m = g.edge_count();
    let slot = pick % (g.n() + m);
    if slot < g.n() {
        return Point::vertex(slot);
    }
    let (u, v) = g.edges()[slot - g.n()];
    let den = den.max(2);
    Point::on_edge(u, v, ratio(1 + num % (den - 1), den))
}

fn seed() -> impl Strategy<Value = (usize, i64, i64)> {
    (0usize..64, 0i64..12, 2i64..13)
}

fn delta() -> impl Strategy<Value = Rational> {
    (prop::sample::select(vec![1i64, 2, 3, 4, 6]), 1i64..=16).prop_map(|(den, num)| ratio(num, den))
}

fn tokens(multiset: bool, points: impl IntoIterator<Item = Point>) -> TokenSet {
    let mut counts: BTreeMap<Point, u64> = BTreeMap::new();
    for p in points {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut out = TokenSet::new(multiset);
    for (p, c) in counts {
        out.insert(p, if multiset { c } else { 1 }).unwrap();
    }
    out
}

/// Maps each original edge to the chain of vertices replacing it, read from
/// its smaller endpoint.
fn chains(h: &MetricGraph, n: usize) -> BTreeMap<(usize, usize), Vec<usize>> {
    let mut out = BTreeMap::new();
    for s in 0..n {
        for &first in h.neighbors(s) {
            let mut chain = vec![s, first];
            while chain[chain.len() - 1] >= n {
                let cur = chain[chain.len() - 1];
                let prev = chain[chain.len() - 2];
                let next = *h.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
                chain.push(next);
            }
            let t = chain[chain.len() - 1];
            if s < t {
                out.insert((s, t), chain);
            }
        }
    }
    out
}

fn opt_key(x: Option<u64>) -> u64 {
    x.unwrap_or(u64::MAX)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_unique(g in connected_graph(2, 5), s in seed()) {
        let p = point_from(&g, s);
        prop_assert_eq!(Point::on_edge(p.u(), p.v(), *p.lambda()), p.clone());
        if !p.is_vertex() {
            let flipped = Point::on_edge(p.v(), p.u(), int(1) - p.lambda());
            prop_assert_eq!(flipped, p);
        }
    }

    #[test]
    fn point_distance_is_a_metric(g in connected_graph(1, 6), a in seed(), b in seed(), c in seed()) {
        let (p, q, r) = (point_from(&g, a), point_from(&g, b), point_from(&g, c));
        let d = |x: &Point, y: &Point| g.point_distance(x, y).unwrap().unwrap();
        prop_assert_eq!(d(&p, &p), int(0));
        prop_assert_eq!(d(&p, &q), d(&q, &p));
        prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r));
        if p != q {
            prop_assert!(d(&p, &q) > int(0));
        }
    }

    #[test]
    fn balls_snap_to_vertex_or_midpoint(g in connected_graph(2, 6), e in 0usize..32, lam in (1i64..12, 2i64..13), delta in delta()) {
        let (u, v) = g.edges()[e % g.edge_count()];
        let (num, den) = lam;
        let lambda = ratio(1 + num % (den - 1), den);
        let frac_d = frac(&delta);
        let ball = |l: Rational| g.ball_vertices(&Point::on_edge(u, v, l), &delta);
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
        for (a, b) in [(u, v), (v, u)] {
            let here = g.ball_vertices(&Point::on_edge(a, b, lambda), &delta);
            if frac_d < half() {
                if lambda <= half() {
                    let at_a = g.ball_vertices(&Point::vertex(a), &delta);
                    prop_assert!(subset(&here, &at_a));
                    if lambda <= frac_d {
                        prop_assert_eq!(&here, &at_a);
                    }
                }
            } else {
                let mid = ball(half());
                prop_assert!(subset(&here, &mid));
                if int(1) - frac_d <= lambda && lambda <= frac_d {
                    prop_assert_eq!(&here, &mid);
                }
            }
        }
        if frac_d == int(0) || frac_d == half() {
            let other = ratio(1, 2 * den + 2);
            let (lo, hi) = if other < lambda { (other, lambda) } else { (lambda, other) };
            if hi < half() {
                prop_assert_eq!(ball(lo), ball(hi));
            }
        }
    }

    #[test]
    fn subdividing_twice_composes(g in connected_graph(1, 5), a in 1usize..4, b in 1usize..4) {
        let twice = g.subdivide(a).subdivide(b);
        let once = g.subdivide(a * b);
        prop_assert_eq!(twice.n(), once.n());
        prop_assert_eq!(twice.edge_count(), once.edge_count());
        let (ct, co) = (chains(&twice, g.n()), chains(&once, g.n()));
        prop_assert_eq!(ct.len(), g.edge_count());
        let mut map = vec![usize::MAX; once.n()];
        for (key, path) in &ct {
            let other = &co[key];
            prop_assert_eq!(path.len(), other.len());
            for (&x, &y) in path.iter().zip(other) {
                map[x] = y;
            }
        }
        for &(x, y) in twice.edges() {
            prop_assert!(once.has_edge(map[x], map[y]));
        }
    }

    #[test]
    fn gallai_identity(g in connected_graph(2, 8)) {
        let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
        let cover = min_edge_cover(&g).unwrap();
        prop_assert_eq!(cover.len() + matching_number(&adj), g.n());
        let mut hit = vec![false; g.n()];
        for (u, v) in cover {
            prop_assert!(g.has_edge(u, v));
            hit[u] = true;
            hit[v] = true;
        }
        prop_assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn max_flow_equals_a_cut(nodes in 2usize..8, arcs in proptest::collection::vec((0usize..8, 0usize..8, 0u64..6), 0..20)) {
        let arcs: Vec<_> = arcs.into_iter().map(|(a, b, c)| (a % nodes, b % nodes, c)).filter(|a| a.0 != a.1).collect();
        let mut net = FlowNetwork::new(nodes);
        let ids: Vec<_> = arcs.iter().map(|&(a, b, c)| net.add_edge(a, b, c)).collect();
        let value = net.max_flow(0, 1);
        let side = net.residual_reachable(0);
        prop_assert!(side[0] && !side[1]);
        let cut: u64 = arcs.iter().filter(|a| side[a.0] && !side[a.1]).map(|a| a.2).sum();
        prop_assert_eq!(value, cut);
        for (id, a) in ids.iter().zip(&arcs) {
            prop_assert!(net.flow(*id) <= a.2);
        }
    }

    #[test]
    fn counters_matches_hall_condition(
        g in connected_graph(1, 5),
        delta in delta(),
        attack in proptest::collection::vec(0usize..5, 0..=4),
        defense in proptest::collection::vec(seed(), 0..5),
    ) {
        let var = Variant::vertex(delta, true, true);
        let a: Vec<Point> = attack.into_iter().map(|v| Point::vertex(v % g.n())).collect();
        let d = tokens(true, defense.into_iter().map(|s| point_from(&g, s)));
        let hall = (0u32..1 << a.len()).all(|mask| {
            let chosen: Vec<&Point> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| &a[i]).collect();
            let reach: u64 = d
                .iter()
                .filter(|(q, _)| chosen.iter().any(|p| g.within(p, q, var.delta())))
                .map(|(_, m)| m)
                .sum();
            chosen.len() as u64 <= reach
        });
        let cert = counters(&g, &var, &d, &tokens(true, a)).unwrap();
        prop_assert_eq!(cert.feasible, hall);
        if cert.feasible {
            for (p, q) in &cert.pairs {
                prop_assert!(g.within(p, q, var.delta()));
            }
        }
    }

    #[test]
    fn flow_verifier_agrees_with_enumeration(
        g in connected_graph(1, 5),
        delta in delta(),
        k in 1u64..=3,
        dm in any::<bool>(),
        picks in proptest::collection::vec(0usize..256, 1..=5),
    ) {
        let var = Variant::vertex(delta, true, dm);
        let total = picks.len() as u64;
        let mut grid = defense_grid(&g, &var, GridMode::Nice).unwrap();
        grid.extend(defense_grid(&g, &var, GridMode::Neat(total.max(2))).unwrap());
        let d = tokens(dm, picks.iter().map(|&i| grid[i % grid.len()].clone()));
        prop_assume!(d.total() == total);
        let by_flow = verify_multiset_attack_flow(&g, &var, &GroupedDefense::from_tokens(&d), k).unwrap();
        let by_enum = worst_vertex_attack(&g, &var, &d, k).unwrap().deficiency == 0;
        prop_assert_eq!(by_flow, by_enum);
    }

    #[test]
    fn extra_tokens_never_break_a_defense(
        g in connected_graph(1, 5),
        delta in delta(),
        k in 1u64..=3,
        am in any::<bool>(),
        defense in proptest::collection::vec(seed(), 0..6),
        extra in seed(),
    ) {
        let var = Variant::vertex(delta, am, true);
        let base = tokens(true, defense.iter().map(|&s| point_from(&g, s)));
        let grown = tokens(true, defense.iter().chain([&extra]).map(|&s| point_from(&g, s)));
        let before = worst_vertex_attack(&g, &var, &base, k).unwrap().deficiency;
        let after = worst_vertex_attack(&g, &var, &grown, k).unwrap().deficiency;
        prop_assert!(after <= before);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn optimum_is_monotone_in_k_and_delta(
        g in connected_graph(1, 5),
        am in any::<bool>(),
        dm in any::<bool>(),
        i in 0usize..5,
    ) {
        let deltas = [ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1), ratio(3, 2)];
        let opt = |d: &Rational, k: u64| {
            let inst = Instance::new(g.clone(), Variant::vertex(*d, am, dm), k, None).unwrap();
            let sol = solve(&inst).unwrap();
            if sol.optimal_size.is_some() {
                let worst = worst_vertex_attack(&g, &inst.variant, &sol.defense, k).unwrap();
                assert_eq!(worst.deficiency, 0);
            }
            opt_key(sol.optimal_size)
        };
        let (d, k) = (&deltas[i], 1 + (i as u64 % 2));
        let here = opt(d, k);
        prop_assert!(opt(d, k + 1) >= here);
        if let Some(bigger) = deltas.get(i + 1) {
            prop_assert!(opt(bigger, k) <= here);
        }
    }

    #[test]
    fn point_cover_is_invariant_under_subdivision(
        g in connected_graph(1, 3),
        am in any::<bool>(),
        dm in any::<bool>(),
        d in prop::sample::select(vec![(1i64, 2i64), (3, 2), (1, 3), (2, 3)]),
    ) {
        let (a, b) = d;
        let opt = |h: MetricGraph, delta: Rational| {
            let inst = Instance::new(h, Variant::point(delta, am, dm), 1, None).unwrap();
            solve_point_attack(&inst).unwrap().optimal_size
        };
        prop_assert_eq!(opt(g.clone(), ratio(a, b)), opt(g.subdivide(b as usize), int(a)));
    }
}
