//! Certificate checks: countering one attack, all vertex attacks, and
//! (k-tuple) δ-covers.

use std::collections::BTreeMap;

use crate::budget::{binomial, budget};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::grid::{cover_denominator, defense_grid, on_uniform_grid, uniform_grid, GridMode};
use crate::matching::{BipartiteGraph, FlowNetwork};
use crate::point::{Point, TokenSet};
use crate::rational::ratio;
use crate::variant::{AttackDomain, Variant};

/// Outcome of matching one attack against one defense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterCertificate {
    pub feasible: bool,
    /// Attack token → defense token, one pair per attack token when feasible.
    pub pairs: Vec<(Point, Point)>,
}

fn check_attack(g: &MetricGraph, variant: &Variant, attack: &TokenSet) -> Result<()> {
    attack
        .check_in(g)
        .map_err(|e| Error::InvalidAttack(e.to_string()))?;
    if variant.attack_domain == AttackDomain::Vertex {
        if let Some((p, _)) = attack.iter().find(|(p, _)| !p.is_vertex()) {
            return Err(Error::InvalidAttack(format!("{p} is not a vertex")));
        }
    }
    if !variant.attack_multiset {
        if let Some((p, _)) = attack.iter().find(|&(_, m)| m > 1) {
            return Err(Error::InvalidAttack(format!("{p} repeated in a set attack")));
        }
    }
    Ok(())
}

fn check_defense(g: &MetricGraph, variant: &Variant, defense: &TokenSet) -> Result<()> {
    defense
        .check_in(g)
        .map_err(|e| Error::InvalidCertificate(e.to_string()))?;
    if !variant.defense_multiset {
        if let Some((p, _)) = defense.iter().find(|&(_, m)| m > 1) {
            return Err(Error::InvalidCertificate(format!(
                "{p} repeated in a set defense"
            )));
        }
    }
    Ok(())
}

/// Does `defense` counter `attack`? Feasible iff the δ-incidence graph has a
/// matching saturating the attack.
pub fn counters(
    g: &MetricGraph,
    variant: &Variant,
    defense: &TokenSet,
    attack: &TokenSet,
) -> Result<CounterCertificate> {
    check_attack(g, variant, attack)?;
    check_defense(g, variant, defense)?;
    let a = attack.expanded();
    let d = defense.expanded();
    let mut bip = BipartiteGraph::new(a.len(), d.len());
    for (i, p) in a.iter().enumerate() {
        for (j, q) in d.iter().enumerate() {
            if g.within(p, q, variant.delta()) {
                bip.add_edge(i, j);
            }
        }
    }
    let m = bip.max_matching();
    let feasible = m.size == a.len();
    let pairs = if feasible {
        m.left_mate
            .iter()
            .enumerate()
            .map(|(i, j)| (a[i].clone(), d[j.expect("saturating matching")].clone()))
            .collect()
    } else {
        Vec::new()
    };
    Ok(CounterCertificate { feasible, pairs })
}

/// Which defense tokens reach which vertex.
#[derive(Debug, Clone)]
pub(crate) struct VertexReach {
    mult: Vec<u64>,
    reach: Vec<Vec<usize>>,
}

impl VertexReach {
    pub(crate) fn new(g: &MetricGraph, variant: &Variant, defense: &TokenSet) -> Self {
        let tokens: Vec<(&Point, u64)> = defense.iter().collect();
        let reach = (0..g.n())
            .map(|v| {
                let w = Point::vertex(v);
                (0..tokens.len())
                    .filter(|&j| g.within(tokens[j].0, &w, variant.delta()))
                    .collect()
            })
            .collect();
        Self {
            mult: tokens.iter().map(|t| t.1).collect(),
            reach,
        }
    }

    /// `|A|` minus the largest number of attack tokens that can be matched.
    pub(crate) fn deficiency(&self, attack: &[(usize, u64)]) -> u64 {
        let total: u64 = attack.iter().map(|a| a.1).sum();
        let t = self.mult.len();
        let (s, sink) = (0, 1);
        let mut net = FlowNetwork::new(2 + attack.len() + t);
        for (i, &(v, c)) in attack.iter().enumerate() {
            net.add_edge(s, 2 + i, c);
            for &j in &self.reach[v] {
                net.add_edge(2 + i, 2 + attack.len() + j, c);
            }
        }
        for (j, &m) in self.mult.iter().enumerate() {
            net.add_edge(2 + attack.len() + j, sink, m);
        }
        total - net.max_flow(s, sink)
    }
}

/// Result of searching for the attack a defense handles worst.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstAttack {
    pub attack: TokenSet,
    pub deficiency: u64,
}

/// Number of attacks [`worst_vertex_attack`] enumerates.
pub fn vertex_attack_count(n: usize, k: u64, multiset: bool) -> u64 {
    let n = n as u64;
    if multiset {
        if n == 0 {
            return 0;
        }
        binomial(n + k - 1, k)
    } else {
        binomial(n, k.min(n))
    }
}

/// The lexicographically first attack of maximum deficiency among all
/// vertex attacks of size exactly `k` (multiset) or `min(k, n)` (set).
pub fn worst_vertex_attack(
    g: &MetricGraph,
    variant: &Variant,
    defense: &TokenSet,
    k: u64,
) -> Result<WorstAttack> {
    worst_vertex_attack_jobs(g, variant, defense, k, 1)
}

/// [`worst_vertex_attack`] sharded by the first attacked vertex across
/// `jobs` threads. The result does not depend on `jobs`.
pub fn worst_vertex_attack_jobs(
    g: &MetricGraph,
    variant: &Variant,
    defense: &TokenSet,
    k: u64,
    jobs: usize,
) -> Result<WorstAttack> {
    if variant.attack_domain != AttackDomain::Vertex {
        return Err(Error::UnsupportedParameter(
            "worst_vertex_attack needs vertex attacks".into(),
        ));
    }
    check_defense(g, variant, defense)?;
    let found = scan_vertex_attacks(g, variant, defense, k, jobs, false)?;
    let (deficiency, attack) = found.unwrap_or((0, Vec::new()));
    Ok(WorstAttack {
        attack: attack_tokens(variant.attack_multiset, &attack),
        deficiency,
    })
}

/// Some vertex attack the defense fails to counter, if any.
pub fn find_uncountered_vertex_attack(
    g: &MetricGraph,
    variant: &Variant,
    defense: &TokenSet,
    k: u64,
) -> Result<Option<TokenSet>> {
    let found = scan_vertex_attacks(g, variant, defense, k, 1, true)?;
    Ok(found
        .filter(|f| f.0 > 0)
        .map(|(_, a)| attack_tokens(variant.attack_multiset, &a)))
}

fn attack_tokens(multiset: bool, attack: &[usize]) -> TokenSet {
    let mut t = TokenSet::new(multiset);
    for &v in attack {
        t.insert(Point::vertex(v), 1).expect("enumerated attacks are valid");
    }
    t
}

type Scan = Option<(u64, Vec<usize>)>;

fn scan_vertex_attacks(
    g: &MetricGraph,
    variant: &Variant,
    defense: &TokenSet,
    k: u64,
    jobs: usize,
    stop_at_first: bool,
) -> Result<Scan> {
    let n = g.n();
    let multiset = variant.attack_multiset;
    let size = if multiset { k } else { k.min(n as u64) } as usize;
    if n == 0 || size == 0 {
        return Ok(None);
    }
    let count = vertex_attack_count(n, k, multiset);
    if count > budget() {
        return Err(Error::ResourceLimit(format!(
            "{count} vertex attacks exceed the budget (set DDC_BUDGET to raise it)"
        )));
    }
    let reach = VertexReach::new(g, variant, defense);
    let shard = |first: usize| -> Scan {
        let mut best: Scan = None;
        let mut attack = vec![first];
        let mut visit = |a: &[usize]| -> bool {
            let d = reach.deficiency(&compress(a));
            if best.as_ref().is_none_or(|b| d > b.0) {
                best = Some((d, a.to_vec()));
            }
            !(stop_at_first && d > 0)
        };
        combinations(n, size, multiset, &mut attack, &mut visit);
        best
    };
    let firsts: Vec<usize> = (0..n).collect();
    let results: Vec<Scan> = if jobs <= 1 {
        let mut out = Vec::new();
        for &f in &firsts {
            let r = shard(f);
            let stop = stop_at_first && r.as_ref().is_some_and(|r| r.0 > 0);
            out.push(r);
            if stop {
                break;
            }
        }
        out
    } else {
        let mut out = vec![None; n];
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs.min(n))
                .map(|w| {
                    let shard = &shard;
                    scope.spawn(move || {
                        (w..n)
                            .step_by(jobs)
                            .map(|f| (f, shard(f)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (f, r) in h.join().expect("worker panicked") {
                    out[f] = r;
                }
            }
        });
        out
    };
    let mut best: Scan = None;
    for r in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| r.0 > b.0) {
            best = Some(r);
        }
    }
    Ok(best)
}

/// Visits the sorted attacks extending `prefix` in lexicographic order;
/// `visit` returns false to stop. Returns false if stopped.
fn combinations(
    n: usize,
    size: usize,
    repeat: bool,
    prefix: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if prefix.len() == size {
        return visit(prefix);
    }
    let last = *prefix.last().expect("prefix starts non-empty");
    let start = if repeat { last } else { last + 1 };
    let remaining = size - prefix.len();
    for v in start..n {
        if !repeat && n - v < remaining {
            break;
        }
        prefix.push(v);
        let go_on = combinations(n, size, repeat, prefix, visit);
        prefix.pop();
        if !go_on {
            return false;
        }
    }
    true
}

fn compress(attack: &[usize]) -> Vec<(usize, u64)> {
    let mut out: Vec<(usize, u64)> = Vec::new();
    for &v in attack {
        match out.last_mut() {
            Some(last) if last.0 == v => last.1 += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Every closed neighborhood carries at least `k` tokens.
pub fn verify_k_tuple_domination(g: &MetricGraph, defense: &TokenSet, k: u64) -> Result<bool> {
    defense
        .check_in(g)
        .map_err(|e| Error::InvalidCertificate(e.to_string()))?;
    let mut weight = vec![0u64; g.n()];
    for (p, m) in defense.iter() {
        let v = p
            .as_vertex()
            .ok_or_else(|| Error::InvalidCertificate(format!("{p} is not a vertex")))?;
        weight[v] += m;
    }
    Ok((0..g.n()).all(|v| {
        weight[v] + g.neighbors(v).iter().map(|&u| weight[u]).sum::<u64>() >= k
    }))
}

/// A defense given as multiplicities on grid positions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupedDefense {
    groups: BTreeMap<Point, u64>,
}

impl GroupedDefense {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tokens(tokens: &TokenSet) -> Self {
        let mut out = Self::new();
        for (p, m) in tokens.iter() {
            out.add(p.clone(), m);
        }
        out
    }

    pub fn add(&mut self, p: Point, mult: u64) {
        if mult > 0 {
            *self.groups.entry(p).or_insert(0) += mult;
        }
    }

    pub fn total(&self) -> u64 {
        self.groups.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, u64)> {
        self.groups.iter().map(|(p, &m)| (p, m))
    }
}

/// Flow test for multiset vertex attacks: the defense counters every
/// multiset `k`-attack iff every vertex sees `k` tokens within δ, which is
/// what a flow of value `k·|V|` certifies.
pub fn verify_multiset_attack_flow(
    g: &MetricGraph,
    variant: &Variant,
    grouped: &GroupedDefense,
    k: u64,
) -> Result<bool> {
    if variant.attack_domain != AttackDomain::Vertex || !variant.attack_multiset {
        return Err(Error::UnsupportedParameter(
            "the flow verifier handles multiset vertex attacks only".into(),
        ));
    }
    let total = grouped.total();
    let mut grid = defense_grid(g, variant, GridMode::Nice)?;
    grid.extend(defense_grid(g, variant, GridMode::Neat(total.max(2)))?);
    for (p, _) in grouped.iter() {
        g.check_point(p)
            .map_err(|e| Error::InvalidCertificate(e.to_string()))?;
        if !grid.contains(p) {
            return Err(Error::InvalidCertificate(format!("{p} is off the defense grid")));
        }
        if !variant.defense_multiset && grouped.groups[p] > 1 {
            return Err(Error::InvalidCertificate(format!("{p} repeated in a set defense")));
        }
    }
    let groups: Vec<(&Point, u64)> = grouped.iter().collect();
    let n = g.n();
    let (s, t) = (0, 1);
    let group_node = |i: usize| 2 + i;
    let vertex_node = |v: usize| 2 + groups.len() + v;
    let mut net = FlowNetwork::new(2 + groups.len() + n);
    let unbounded = total.saturating_mul(n as u64).max(1);
    for (i, &(p, m)) in groups.iter().enumerate() {
        net.add_edge(s, group_node(i), unbounded);
        for v in g.ball_vertices(p, variant.delta()) {
            net.add_edge(group_node(i), vertex_node(v), m);
        }
    }
    for v in 0..n {
        net.add_edge(vertex_node(v), t, k);
    }
    Ok(net.max_flow(s, t) == k * n as u64)
}

/// Probe positions and demands used to check a cover: all multiples of
/// `1/(2N)` for the cover grid denominator `N`.
fn cover_probes(g: &MetricGraph, variant: &Variant, k: u64) -> Result<(i64, Vec<Point>)> {
    let mode = if variant.defense_multiset {
        GridMode::CoverMultiset
    } else {
        GridMode::CoverSet(k)
    };
    let den = cover_denominator(g, variant, mode)?;
    Ok((den, uniform_grid(g, 2 * den)))
}

/// Demand at a probe: `k`, except that a set attack can place only one
/// token on an isolated vertex.
pub(crate) fn probe_demand(g: &MetricGraph, variant: &Variant, p: &Point, k: u64) -> u64 {
    match p.as_vertex() {
        Some(v) if !variant.attack_multiset && g.degree(v) == 0 => k.min(1),
        _ => k,
    }
}

/// The first probe (in point order) that sees fewer tokens than it needs.
pub fn uncovered_probe(
    g: &MetricGraph,
    variant: &Variant,
    cover: &TokenSet,
    k: u64,
) -> Result<Option<Point>> {
    check_defense(g, variant, cover)?;
    let (den, probes) = cover_probes(g, variant, k)?;
    for (p, _) in cover.iter() {
        if !on_uniform_grid(p, den) {
            return Err(Error::InvalidCertificate(format!(
                "{p} is not a multiple of {}",
                crate::rational::format_rational(&ratio(1, den))
            )));
        }
    }
    let tokens: Vec<(&Point, u64)> = cover.iter().collect();
    for probe in probes {
        let need = probe_demand(g, variant, &probe, k);
        let mut seen = 0u64;
        for &(q, m) in &tokens {
            if g.within(q, &probe, variant.delta()) {
                seen += m;
                if seen >= need {
                    break;
                }
            }
        }
        if seen < need {
            return Ok(Some(probe));
        }
    }
    Ok(None)
}

/// Every point of the graph has at least `k` cover tokens within δ.
pub fn verify_k_tuple_delta_cover(
    g: &MetricGraph,
    variant: &Variant,
    cover: &TokenSet,
    k: u64,
) -> Result<bool> {
    Ok(uncovered_probe(g, variant, cover, k)?.is_none())
}
