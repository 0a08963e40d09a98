//! Point attacks: a defense counters every point `k`-attack iff every point
//! of the graph sees `k` tokens within δ, and some optimal such cover lies
//! on a uniform grid.

use std::collections::HashMap;

use crate::budget::Meter;
use crate::error::{Error, Result};
use crate::grid::{cover_denominator, uniform_grid, GridMode};
use crate::point::{Point, TokenSet};
use crate::variant::{AttackDomain, Instance};
use crate::verify::probe_demand;

use super::ilp::CoveringProgram;
use super::{Method, Solution};

const ROWS_PER_ROUND: usize = 64;

pub(crate) struct Bitset(Vec<u64>);

impl Bitset {
    pub(crate) fn new(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.0
    }
}

/// Minimum k-tuple δ-cover on the cover grid.
pub fn solve_point_attack(inst: &Instance) -> Result<Solution> {
    let g = &inst.graph;
    let var = &inst.variant;
    if var.attack_domain != AttackDomain::Point {
        return Err(Error::UnsupportedParameter("solve_point_attack needs point attacks".into()));
    }
    let dm = var.defense_multiset;
    let mode = if dm { GridMode::CoverMultiset } else { GridMode::CoverSet(inst.k) };
    let den = cover_denominator(g, var, mode)?;
    let columns = uniform_grid(g, den);
    let probes = uniform_grid(g, 2 * den);
    Meter::new("point cover grid").tick((columns.len() * probes.len()) as u64)?;
    let demand: Vec<u64> = probes
        .iter()
        .map(|p| probe_demand(g, var, p, inst.k))
        .collect();

    // Columns covering the same probes are interchangeable.
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut members: Vec<Vec<&Point>> = Vec::new();
    let mut covers: Vec<Bitset> = Vec::new();
    for c in &columns {
        let mut bits = Bitset::new(probes.len());
        for (i, p) in probes.iter().enumerate() {
            if g.within(c, p, var.delta()) {
                bits.set(i);
            }
        }
        match index.get(bits.words()) {
            Some(&j) => members[j].push(c),
            None => {
                index.insert(bits.words().to_vec(), members.len());
                members.push(vec![c]);
                covers.push(bits);
            }
        }
    }
    let max_demand = demand.iter().copied().max().unwrap_or(0);
    let caps: Vec<u64> = members
        .iter()
        .map(|m| if dm { max_demand } else { m.len() as u64 })
        .collect();
    let covering = |i: usize| -> Vec<usize> { (0..covers.len()).filter(|&j| covers[j].get(i)).collect() };

    let mut program = CoveringProgram::new(caps);
    for (i, p) in probes.iter().enumerate() {
        if p.is_vertex() && demand[i] > 0 {
            program.add_row(covering(i), demand[i]);
        }
    }
    loop {
        let Some(x) = program.solve()? else {
            return Ok(Solution::infeasible(dm, Method::PointCover));
        };
        let mut short: Vec<(u64, usize)> = Vec::new();
        for i in 0..probes.len() {
            let seen: u64 = (0..covers.len()).filter(|&j| covers[j].get(i)).map(|j| x[j]).sum();
            if seen < demand[i] {
                short.push((seen, i));
            }
        }
        if short.is_empty() {
            let mut defense = TokenSet::new(dm);
            for (j, &count) in x.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                if dm {
                    defense.insert(members[j][0].clone(), count)?;
                } else {
                    for p in &members[j][..count as usize] {
                        defense.insert((*p).clone(), 1)?;
                    }
                }
            }
            return Ok(Solution::found(defense, Method::PointCover, None));
        }
        short.sort();
        for &(_, i) in short.iter().take(ROWS_PER_ROUND) {
            program.add_row(covering(i), demand[i]);
        }
    }
}
