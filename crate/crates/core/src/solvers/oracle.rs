//! Brute-force reference solvers, deliberately sharing no search logic
//! with the main solvers: fine uniform grids, explicit attack enumeration
//! and augmenting-path matching.

use std::collections::{BTreeMap, HashMap};

use crate::budget::Meter;
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::grid::{cover_denominator, uniform_grid, GridMode};
use crate::point::Point;
use crate::variant::{AttackDomain, Instance, Variant};

use super::ilp::CoveringProgram;
use super::point::Bitset;

/// Grid positions grouped by the vertices they reach.
struct Positions {
    reach: Vec<Vec<usize>>,
    cap: Vec<u64>,
    /// `reaches[v]` lists the groups reaching vertex `v`.
    reaches: Vec<Vec<usize>>,
}

impl Positions {
    fn new(g: &MetricGraph, var: &Variant, den: i64, unbounded: u64) -> Self {
        let mut groups: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for p in uniform_grid(g, den) {
            *groups.entry(g.ball_vertices(&p, var.delta())).or_insert(0) += 1;
        }
        groups.remove(&Vec::new());
        let reach: Vec<Vec<usize>> = groups.keys().cloned().collect();
        let cap = groups
            .values()
            .map(|&c| if var.defense_multiset { unbounded } else { c.min(unbounded) })
            .collect();
        let mut reaches = vec![Vec::new(); g.n()];
        for (j, r) in reach.iter().enumerate() {
            for &v in r {
                reaches[v].push(j);
            }
        }
        Self { reach, cap, reaches }
    }
}

/// Largest matching of attack tokens (vertices, with repetition) into
/// defense tokens (group ids, with repetition), by augmenting paths.
fn matched(pos: &Positions, attack: &[usize], tokens: &[usize]) -> usize {
    fn augment(
        a: usize,
        attack: &[usize],
        tokens: &[usize],
        pos: &Positions,
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for t in 0..tokens.len() {
            if seen[t] || pos.reach[tokens[t]].binary_search(&attack[a]).is_err() {
                continue;
            }
            seen[t] = true;
            if owner[t].is_none_or(|b| augment(b, attack, tokens, pos, owner, seen)) {
                owner[t] = Some(a);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; tokens.len()];
    (0..attack.len())
        .filter(|&a| augment(a, attack, tokens, pos, &mut owner, &mut vec![false; tokens.len()]))
        .count()
}

struct VertexSearch<'a> {
    g: &'a MetricGraph,
    pos: Positions,
    attacks: Vec<Vec<usize>>,
    per_vertex: u64,
    meter: Meter,
}

impl VertexSearch<'_> {
    fn tokens(count: &[u64]) -> Vec<usize> {
        count
            .iter()
            .enumerate()
            .flat_map(|(j, &c)| std::iter::repeat_n(j, c as usize))
            .collect()
    }

    /// First attack (in enumeration order) left uncountered, with its
    /// deficiency, and the largest deficiency over all attacks.
    fn worst(&self, count: &[u64]) -> (Option<&Vec<usize>>, usize) {
        let tokens = Self::tokens(count);
        let mut first = None;
        let mut worst = 0;
        for a in &self.attacks {
            let d = a.len() - matched(&self.pos, a, &tokens);
            if d > 0 && first.is_none() {
                first = Some(a);
            }
            worst = worst.max(d);
        }
        (first, worst)
    }

    /// Lower bound from vertices no single group reaches two of.
    fn packing_bound(&self, count: &[u64]) -> u64 {
        let seen = |v: usize| -> u64 { self.pos.reaches[v].iter().map(|&j| count[j]).sum() };
        let mut order: Vec<(u64, usize)> = (0..self.g.n())
            .map(|v| (self.per_vertex.saturating_sub(seen(v)), v))
            .filter(|x| x.0 > 0)
            .collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut blocked = vec![false; self.pos.reach.len()];
        let mut bound = 0;
        for (deficit, v) in order {
            if self.pos.reaches[v].iter().any(|&j| blocked[j]) {
                continue;
            }
            bound += deficit;
            for &j in &self.pos.reaches[v] {
                blocked[j] = true;
            }
        }
        bound
    }

    fn dfs(&mut self, count: &mut Vec<u64>, frozen: &mut Vec<bool>, left: u64) -> Result<bool> {
        self.meter.tick(1)?;
        let (first, worst) = self.worst(count);
        let Some(attack) = first.cloned() else {
            return Ok(true);
        };
        if worst as u64 > left || self.packing_bound(count) > left {
            return Ok(false);
        }
        // Some new token must reach a Hall-violating part of the attack;
        // the smallest violating part found keeps the branching narrow.
        let mut target: Option<Vec<usize>> = None;
        let m = attack.len();
        for mask in 1u32..(1 << m) {
            let sub: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| attack[i]).collect();
            let mut near: Vec<usize> = sub.clone();
            near.sort_unstable();
            near.dedup();
            let have: u64 = (0..count.len())
                .filter(|&j| near.iter().any(|v| self.pos.reach[j].binary_search(v).is_ok()))
                .map(|j| count[j])
                .sum();
            if (sub.len() as u64) > have && target.as_ref().is_none_or(|t| near.len() < t.len()) {
                target = Some(near);
            }
        }
        let target = target.ok_or_else(|| Error::Internal("no Hall violation found".into()))?;
        let mut branch: Vec<usize> = (0..count.len())
            .filter(|&j| target.iter().any(|v| self.pos.reach[j].binary_search(v).is_ok()))
            .collect();
        branch.retain(|&j| !frozen[j] && count[j] < self.pos.cap[j]);
        let mut newly = Vec::new();
        let mut found = false;
        for j in branch {
            count[j] += 1;
            found = self.dfs(count, frozen, left - 1)?;
            count[j] -= 1;
            if found {
                break;
            }
            frozen[j] = true;
            newly.push(j);
        }
        for j in newly {
            frozen[j] = false;
        }
        Ok(found)
    }
}

fn all_attacks(n: usize, size: usize, repeat: bool) -> Vec<Vec<usize>> {
    fn go(n: usize, size: usize, repeat: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let start = match cur.last() {
            None => 0,
            Some(&l) if repeat => l,
            Some(&l) => l + 1,
        };
        for v in start..n {
            cur.push(v);
            go(n, size, repeat, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size > 0 {
        go(n, size, repeat, &mut Vec::new(), &mut out);
    }
    out
}

/// Minimum defense size against vertex attacks by exhaustive search over a
/// uniform grid `grid_refinement` times finer than needed to separate all
/// reach patterns. `None` if no defense exists.
pub fn oracle_min_defense(inst: &Instance, grid_refinement: u64) -> Result<Option<u64>> {
    let g = &inst.graph;
    let var = &inst.variant;
    if var.attack_domain != AttackDomain::Vertex {
        return Err(Error::UnsupportedParameter("the vertex oracle needs vertex attacks".into()));
    }
    let n = g.n();
    let per_vertex = if var.attack_multiset { inst.k } else { 1 };
    let l_max = per_vertex * n as u64;
    let den = grid_refinement.max(1) as i64 * 2 * var.delta_den() * (l_max as i64 + 2);
    let size = if var.attack_multiset { inst.k } else { inst.k.min(n as u64) } as usize;
    let mut search = VertexSearch {
        g,
        pos: Positions::new(g, var, den, l_max),
        attacks: all_attacks(n, size, var.attack_multiset),
        per_vertex,
        meter: Meter::new("vertex oracle"),
    };
    let groups = search.pos.reach.len();
    for l in 0..=l_max {
        let mut count = vec![0u64; groups];
        let mut frozen = vec![false; groups];
        if search.dfs(&mut count, &mut frozen, l)? {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Minimum defense size against point attacks, by alternating between an
/// integer program over a grid `grid_refinement` times finer than the cover
/// grid and an exhaustive search for attacks on a four times finer probe
/// grid. `None` if no defense exists.
pub fn oracle_point_defense(inst: &Instance, grid_refinement: u64) -> Result<Option<u64>> {
    let g = &inst.graph;
    let var = &inst.variant;
    if var.attack_domain != AttackDomain::Point {
        return Err(Error::UnsupportedParameter("the point oracle needs point attacks".into()));
    }
    let k = inst.k;
    let mode = if var.defense_multiset { GridMode::CoverMultiset } else { GridMode::CoverSet(k) };
    let den = cover_denominator(g, var, mode)? * grid_refinement.max(1) as i64;
    let columns = uniform_grid(g, den);
    let probes: Vec<Point> = uniform_grid(g, 4 * den);
    Meter::new("point oracle").tick((columns.len() * probes.len()) as u64)?;

    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut cap: Vec<u64> = Vec::new();
    let mut covers: Vec<Bitset> = Vec::new();
    for c in &columns {
        let mut bits = Bitset::new(probes.len());
        for (i, p) in probes.iter().enumerate() {
            if g.within(c, p, var.delta()) {
                bits.set(i);
            }
        }
        match index.get(bits.words()) {
            Some(&j) => cap[j] += 1,
            None => {
                index.insert(bits.words().to_vec(), cap.len());
                cap.push(1);
                covers.push(bits);
            }
        }
    }
    if var.defense_multiset {
        cap.iter_mut().for_each(|c| *c = k);
    }
    let mut program = CoveringProgram::new(cap);
    let mut meter = Meter::new("point oracle");
    loop {
        let Some(x) = program.solve()? else {
            return Ok(None);
        };
        // Probes grouped by which used columns reach them.
        let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for i in 0..probes.len() {
            let near: Vec<usize> = (0..covers.len()).filter(|&j| x[j] > 0 && covers[j].get(i)).collect();
            groups.entry(near).or_default().push(i);
        }
        let groups: Vec<(Vec<usize>, Vec<usize>)> = groups.into_iter().collect();
        let mut violations: Vec<Vec<usize>> = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        find_violations(&groups, &x, k, var.attack_multiset, 0, &mut chosen, &mut violations, &mut meter)?;
        if violations.is_empty() {
            return Ok(Some(x.iter().sum()));
        }
        let mut added = 0;
        for combo in &violations {
            for attack in spread_attacks(&groups, combo, k, var.attack_multiset, VARIANTS_PER_VIOLATION) {
                let cols: Vec<usize> = (0..covers.len())
                    .filter(|&j| attack.iter().any(|&i| covers[j].get(i)))
                    .collect();
                program.add_row(cols, attack.len() as u64);
                added += 1;
            }
            if added >= MAX_ROWS_PER_ROUND {
                break;
            }
        }
    }
}

const VARIANTS_PER_VIOLATION: usize = 4;
const MAX_ROWS_PER_ROUND: usize = 256;
const MAX_VIOLATIONS: usize = 32;

/// Up to `variants` attacks realizing the group combination `combo`, using
/// probes spread evenly through each group.
fn spread_attacks(
    groups: &[(Vec<usize>, Vec<usize>)],
    combo: &[usize],
    k: u64,
    multiset: bool,
    variants: usize,
) -> Vec<Vec<usize>> {
    let widest = combo.iter().map(|&c| groups[c].1.len()).max().unwrap_or(1);
    let variants = variants.min(widest);
    let mut out: Vec<Vec<usize>> = Vec::new();
    for t in 0..variants {
        let mut attack: Vec<usize> = Vec::new();
        for &c in combo {
            let probes = &groups[c].1;
            let start = t * probes.len() / variants;
            attack.push(probes[start]);
        }
        'fill: for &c in combo {
            let probes = &groups[c].1;
            let start = t * probes.len() / variants;
            let mut idx = 1;
            while (attack.len() as u64) < k {
                if multiset {
                    attack.push(probes[start]);
                } else if idx < probes.len() {
                    attack.push(probes[(start + idx) % probes.len()]);
                    idx += 1;
                } else {
                    continue 'fill;
                }
            }
        }
        attack.sort_unstable();
        if !out.contains(&attack) {
            out.push(attack);
        }
    }
    out
}

/// Collects group combinations (at most `k` groups) whose probes can form
/// an attack that sees fewer used tokens than its size.
#[allow(clippy::too_many_arguments)]
fn find_violations(
    groups: &[(Vec<usize>, Vec<usize>)],
    x: &[u64],
    k: u64,
    multiset: bool,
    from: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    meter: &mut Meter,
) -> Result<()> {
    if out.len() >= MAX_VIOLATIONS || chosen.len() as u64 >= k {
        return Ok(());
    }
    for gi in from..groups.len() {
        meter.tick(1)?;
        chosen.push(gi);
        let mut near: Vec<usize> = chosen.iter().flat_map(|&c| groups[c].0.iter().copied()).collect();
        near.sort_unstable();
        near.dedup();
        let have: u64 = near.iter().map(|&j| x[j]).sum();
        let room: u64 = if multiset {
            k
        } else {
            chosen.iter().map(|&c| groups[c].1.len() as u64).sum::<u64>().min(k)
        };
        if room > have {
            out.push(chosen.clone());
        }
        find_violations(groups, x, k, multiset, gi + 1, chosen, out, meter)?;
        chosen.pop();
        if out.len() >= MAX_VIOLATIONS {
            break;
        }
    }
    Ok(())
}
