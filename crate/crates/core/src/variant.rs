//! Problem variants and instances.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::rational::{floor_int, format_rational, frac, half, is_positive, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttackDomain {
    /// Attacks may only hit vertices.
    Vertex,
    /// Attacks may hit any point of the metric space.
    Point,
}

impl fmt::Display for AttackDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackDomain::Vertex => "vertex",
            AttackDomain::Point => "point",
        })
    }
}

/// Where the fractional part of δ falls; ball shapes split on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FractionClass {
    /// δ̃ = 0
    Zero,
    /// 0 < δ̃ < 1/2
    Low,
    /// δ̃ = 1/2
    Half,
    /// 1/2 < δ̃ < 1
    High,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variant {
    pub attack_domain: AttackDomain,
    pub attack_multiset: bool,
    pub defense_multiset: bool,
    delta: Rational,
}

impl Variant {
    pub fn new(
        attack_domain: AttackDomain,
        attack_multiset: bool,
        defense_multiset: bool,
        delta: Rational,
    ) -> Result<Self> {
        if !is_positive(&delta) {
            return Err(Error::UnsupportedParameter(format!(
                "delta must be positive, got {}",
                format_rational(&delta)
            )));
        }
        Ok(Self {
            attack_domain,
            attack_multiset,
            defense_multiset,
            delta,
        })
    }

    /// Vertex attack with the given multiset flags.
    pub fn vertex(delta: Rational, attack_multiset: bool, defense_multiset: bool) -> Self {
        Self::new(AttackDomain::Vertex, attack_multiset, defense_multiset, delta)
            .expect("delta must be positive")
    }

    pub fn point(delta: Rational, attack_multiset: bool, defense_multiset: bool) -> Self {
        Self::new(AttackDomain::Point, attack_multiset, defense_multiset, delta)
            .expect("delta must be positive")
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn delta_floor(&self) -> i64 {
        floor_int(&self.delta)
    }

    pub fn delta_frac(&self) -> Rational {
        frac(&self.delta)
    }

    /// Denominator `b` of δ = a/b in lowest terms.
    pub fn delta_den(&self) -> i64 {
        *self.delta.denom()
    }

    pub fn fraction_class(&self) -> FractionClass {
        let f = self.delta_frac();
        if f.is_zero() {
            FractionClass::Zero
        } else if f < half() {
            FractionClass::Low
        } else if f == half() {
            FractionClass::Half
        } else {
            FractionClass::High
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "attack={} attack_multiset={} defense_multiset={} delta={}",
            self.attack_domain,
            self.attack_multiset,
            self.defense_multiset,
            format_rational(&self.delta)
        )
    }
}

/// One decision/optimization problem: graph, variant, attack size `k` and
/// an optional defense budget `l` (absent means "report the optimum").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: MetricGraph,
    pub variant: Variant,
    pub k: u64,
    pub l: Option<u64>,
}

impl Instance {
    pub fn new(graph: MetricGraph, variant: Variant, k: u64, l: Option<u64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::UnsupportedParameter("attack size k must be at least 1".into()));
        }
        Ok(Self {
            graph,
            variant,
            k,
            l,
        })
    }

    /// Number of attacked vertices that matters: a set attack never exceeds
    /// the vertex count.
    pub fn effective_vertex_attack_size(&self) -> u64 {
        if self.variant.attack_multiset {
            self.k
        } else {
            self.k.min(self.graph.n() as u64)
        }
    }
}
