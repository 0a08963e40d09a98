//! Points of the metric space of a graph, exact distances and balls.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{MetricGraph, UNREACHABLE};
use crate::rational::{format_rational, int, Rational};

/// The point at distance `lambda` from `u` on edge `{u, v}`.
///
/// Always canonical: a vertex is stored as `(u, u, 0)`, an interior point
/// as `(u, v, λ)` with `u < v` and `0 < λ < 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    u: usize,
    v: usize,
    lambda: Rational,
}

impl Point {
    pub fn vertex(v: usize) -> Self {
        Self {
            u: v,
            v,
            lambda: Rational::zero(),
        }
    }

    /// Canonicalizes `p(u, v, λ)` without consulting a graph.
    ///
    /// Panics if `λ ∉ [0, 1]`, or if `u == v` and `λ ≠ 0`.
    pub fn on_edge(u: usize, v: usize, lambda: Rational) -> Self {
        assert!(
            lambda >= Rational::zero() && lambda <= Rational::one(),
            "lambda must lie in [0, 1]"
        );
        if lambda.is_zero() {
            return Self::vertex(u);
        }
        if lambda.is_one() {
            return Self::vertex(v);
        }
        assert!(u != v, "interior point needs two distinct endpoints");
        if u < v {
            Self { u, v, lambda }
        } else {
            Self {
                u: v,
                v: u,
                lambda: Rational::one() - lambda,
            }
        }
    }

    pub fn is_vertex(&self) -> bool {
        self.lambda.is_zero()
    }

    pub fn as_vertex(&self) -> Option<usize> {
        self.is_vertex().then_some(self.u)
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// `(endpoint, distance to it)` for each endpoint of the host edge.
    fn exits(&self) -> [(usize, Rational); 2] {
        [
            (self.u, self.lambda),
            (self.v, Rational::one() - self.lambda),
        ]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vertex() {
            write!(f, "v{}", self.u + 1)
        } else {
            write!(
                f,
                "p(v{},v{},{})",
                self.u + 1,
                self.v + 1,
                format_rational(&self.lambda)
            )
        }
    }
}

impl MetricGraph {
    /// Builds and validates `p(u, v, λ)` in this graph.
    pub fn point(&self, u: usize, v: usize, lambda: Rational) -> Result<Point> {
        if u >= self.n() || v >= self.n() {
            return Err(Error::InvalidPoint(format!(
                "vertex out of range in p(v{},v{},{})",
                u + 1,
                v + 1,
                format_rational(&lambda)
            )));
        }
        if lambda < Rational::zero() || lambda > Rational::one() {
            return Err(Error::InvalidPoint(format!(
                "lambda {} outside [0, 1]",
                format_rational(&lambda)
            )));
        }
        let interior = !lambda.is_zero() && !lambda.is_one();
        if interior && !self.has_edge(u, v) {
            return Err(Error::InvalidPoint(format!(
                "{{v{}, v{}}} is not an edge",
                u + 1,
                v + 1
            )));
        }
        if u == v && lambda.is_one() {
            return Ok(Point::vertex(u));
        }
        Ok(Point::on_edge(u, v, lambda))
    }

    /// Checks that `p` is a vertex of this graph or lies on one of its edges.
    pub fn check_point(&self, p: &Point) -> Result<()> {
        let ok = if p.is_vertex() {
            p.u < self.n()
        } else {
            self.has_edge(p.u, p.v) && p.lambda > Rational::zero() && p.lambda < Rational::one()
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPoint(format!("{p} is not a point of the graph")))
        }
    }

    /// Exact shortest distance between two valid points, `None` when they
    /// lie in different components.
    pub fn distance(&self, p: &Point, q: &Point) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        if p.u == q.u && p.v == q.v {
            let along = if p.lambda > q.lambda {
                p.lambda - q.lambda
            } else {
                q.lambda - p.lambda
            };
            best = Some(along);
        }
        for (a, da) in p.exits() {
            for (c, dc) in q.exits() {
                let hops = self.hops(a, c);
                if hops == UNREACHABLE {
                    continue;
                }
                let d = da + int(hops as i64) + dc;
                if best.is_none_or(|b| d < b) {
                    best = Some(d);
                }
            }
        }
        best
    }

    /// Checked form of [`Self::distance`].
    pub fn point_distance(&self, p: &Point, q: &Point) -> Result<Option<Rational>> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(self.distance(p, q))
    }

    pub fn within(&self, p: &Point, q: &Point, delta: &Rational) -> bool {
        self.distance(p, q).is_some_and(|d| d <= *delta)
    }

    /// Distance from `p` to vertex `w`.
    pub fn distance_to_vertex(&self, p: &Point, w: usize) -> Option<Rational> {
        p.exits()
            .into_iter()
            .filter(|(a, _)| self.hops(*a, w) != UNREACHABLE)
            .map(|(a, da)| da + int(self.hops(a, w) as i64))
            .min()
    }

    /// Vertices `w` with `dist(p, w) ≤ delta`, ascending.
    pub fn ball_vertices(&self, p: &Point, delta: &Rational) -> Vec<usize> {
        (0..self.n())
            .filter(|&w| self.distance_to_vertex(p, w).is_some_and(|d| d <= *delta))
            .collect()
    }
}

/// A set or multiset of points, used for defenses, attacks and covers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TokenSet {
    entries: BTreeMap<Point, u64>,
    multiset: bool,
}

impl TokenSet {
    pub fn new(multiset: bool) -> Self {
        Self {
            entries: BTreeMap::new(),
            multiset,
        }
    }

    pub fn from_points(multiset: bool, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut set = Self::new(multiset);
        for p in points {
            set.insert(p, 1)?;
        }
        Ok(set)
    }

    pub fn is_multiset(&self) -> bool {
        self.multiset
    }

    /// Adds `mult` copies of `p`. A plain set rejects a second copy.
    pub fn insert(&mut self, p: Point, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let slot = self.entries.entry(p).or_insert(0);
        if !self.multiset && *slot + mult > 1 {
            return Err(Error::InvalidCertificate(
                "a set cannot hold a point twice".into(),
            ));
        }
        *slot += mult;
        Ok(())
    }

    pub fn multiplicity(&self, p: &Point) -> u64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// `(point, multiplicity)` in canonical point order.
    pub fn iter(&self) -> impl Iterator<Item = (&Point, u64)> {
        self.entries.iter().map(|(p, &m)| (p, m))
    }

    /// One entry per token, repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Point> {
        self.iter()
            .flat_map(|(p, m)| std::iter::repeat_n(p.clone(), m as usize))
            .collect()
    }

    pub fn check_in(&self, g: &MetricGraph) -> Result<()> {
        self.entries.keys().try_for_each(|p| g.check_point(p))
    }
}

impl fmt::Display for TokenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}x{m}")?;
            }
        }
        write!(f, "}}")
    }
}
