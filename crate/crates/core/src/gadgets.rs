//! Generators for the reduction gadgets.
//!
//! Every generator assigns vertex ids class by class, in the order the
//! classes are introduced by the construction, so outputs are stable.

use std::fmt::Write as _;
use std::ops::Range;

use crate::budget::binomial;
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::rational::{format_rational, half, int, Rational};
use crate::variant::{Instance, Variant};

/// Which edge gadget [`gen_distance_d_gadget`] substitutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceVariant {
    /// Single clique between the middle path and the tail.
    Base,
    /// Two matched cliques `C^l_k`, `C^r_k`, for δ ≥ 2 with δ̃ ≥ 1/2.
    DeltaGe2,
}

/// How the defense budget of the generated instance relates to the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetRule {
    /// `ℓ' = ℓ + offset` for the source budget `ℓ`.
    Offset(u64),
    Fixed(u64),
}

impl BudgetRule {
    pub fn apply(self, l: u64) -> u64 {
        match self {
            BudgetRule::Offset(off) => l + off,
            BudgetRule::Fixed(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    pub label: String,
    pub vertices: Vec<usize>,
}

/// Output graph of a generator together with its labeled vertex classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLayout {
    pub graph: MetricGraph,
    pub classes: Vec<VertexClass>,
    pub k: u64,
    pub budget: BudgetRule,
}

impl GadgetLayout {
    pub fn class(&self, label: &str) -> Option<&VertexClass> {
        self.classes.iter().find(|c| c.label == label)
    }

    /// Size of the class, zero if it does not exist.
    pub fn class_size(&self, label: &str) -> usize {
        self.class(label).map_or(0, |c| c.vertices.len())
    }

    /// Label of every vertex, indexed by id.
    pub fn labels(&self) -> Vec<&str> {
        let mut out = vec![""; self.graph.n()];
        for c in &self.classes {
            for &v in &c.vertices {
                out[v] = &c.label;
            }
        }
        out
    }

    /// Class-annotation sidecar: one `<id> <label>` line per vertex, 1-indexed.
    pub fn sidecar(&self) -> String {
        let mut s = String::new();
        for (v, label) in self.labels().into_iter().enumerate() {
            let _ = writeln!(s, "{} {}", v + 1, label);
        }
        s
    }
}

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    classes: Vec<VertexClass>,
}

impl Builder {
    fn class(&mut self, label: impl Into<String>, size: usize) -> Range<usize> {
        let r = self.n..self.n + size;
        self.n += size;
        self.classes.push(VertexClass {
            label: label.into(),
            vertices: r.clone().collect(),
        });
        r
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn path(&mut self, vs: &[usize]) {
        for w in vs.windows(2) {
            self.edge(w[0], w[1]);
        }
    }

    fn clique(&mut self, r: Range<usize>) {
        for u in r.clone() {
            for v in u + 1..r.end {
                self.edge(u, v);
            }
        }
    }

    fn join(&mut self, a: Range<usize>, b: Range<usize>) {
        for u in a {
            for v in b.clone() {
                self.edge(u, v);
            }
        }
    }

    /// Perfect matching between two equally sized ranges.
    fn matching(&mut self, a: Range<usize>, b: Range<usize>) {
        debug_assert_eq!(a.len(), b.len());
        for (u, v) in a.zip(b) {
            self.edge(u, v);
        }
    }

    fn finish(self, k: u64, budget: BudgetRule) -> Result<GadgetLayout> {
        Ok(GadgetLayout {
            graph: MetricGraph::new(self.n, self.edges)?,
            classes: self.classes,
            k,
            budget,
        })
    }
}

/// Replaces every edge of `g` by the distance-`d` gadget.
///
/// The edge is subdivided `d − 1` times, a path of `⌊(d+1)/2⌋` vertices hangs
/// off its middle (the middle vertex for even `d`, both middle vertices for
/// odd `d`), then come the clique(s) of size `k`, a tail path of `d − 1`
/// vertices and an independent set of size `k`. For `d = 1` the "middle" is
/// the pair of endpoints. The budget rule is `ℓ' = ℓ + k·|E|`.
pub fn gen_distance_d_gadget(
    g: &MetricGraph,
    k: u64,
    d: u64,
    variant: DistanceVariant,
) -> Result<GadgetLayout> {
    if k == 0 || d == 0 {
        return Err(Error::UnsupportedParameter("k and d must be at least 1".into()));
    }
    if variant == DistanceVariant::DeltaGe2 && d < 2 {
        return Err(Error::UnsupportedParameter(
            "the two-clique gadget needs d = floor(delta) >= 2".into(),
        ));
    }
    let (k_us, d_us) = (k as usize, d as usize);
    let mut b = Builder::default();
    let original = b.class("V", g.n());
    for &(u, v) in g.edges() {
        let tag = format!("[{}-{}]", u + 1, v + 1);
        let sub = b.class(format!("sub{tag}"), d_us - 1);
        let mut line = vec![original.start + u];
        line.extend(sub.clone());
        line.push(original.start + v);
        b.path(&line);
        let mid = b.class(format!("mid{tag}"), (d_us + 1) / 2);
        let mid: Vec<usize> = mid.collect();
        // `line` has d + 1 vertices.
        if d_us % 2 == 0 {
            b.edge(line[d_us / 2], mid[0]);
        } else {
            b.edge(line[d_us / 2], mid[0]);
            b.edge(line[d_us / 2 + 1], mid[0]);
        }
        b.path(&mid);
        let hub = *mid.last().expect("mid path is nonempty");
        let last_clique = match variant {
            DistanceVariant::Base => {
                let c = b.class(format!("clique{tag}"), k_us);
                b.clique(c.clone());
                b.join(hub..hub + 1, c.clone());
                c
            }
            DistanceVariant::DeltaGe2 => {
                let cl = b.class(format!("clique_l{tag}"), k_us);
                let cr = b.class(format!("clique_r{tag}"), k_us);
                b.clique(cl.clone());
                b.clique(cr.clone());
                b.join(hub..hub + 1, cl.clone());
                b.matching(cl, cr.clone());
                cr
            }
        };
        let tail = b.class(format!("tail{tag}"), d_us - 1);
        let indep = b.class(format!("indep{tag}"), k_us);
        if tail.is_empty() {
            b.join(last_clique, indep);
        } else {
            b.join(last_clique, tail.start..tail.start + 1);
            b.path(&tail.clone().collect::<Vec<_>>());
            b.join(tail.end - 1..tail.end, indep);
        }
    }
    let offset = k * g.edge_count() as u64;
    b.finish(k, BudgetRule::Offset(offset))
}

/// Set-cover gadget: element vertices with pendant paths of `⌊δ⌋ − 1`
/// vertices, one vertex per set joined to its elements, and an apex joined to
/// every set vertex carrying a path of `2⌊δ⌋ − 1` vertices.
///
/// The instance asks for a set defense against one-token multiset vertex
/// attacks with budget `x + 1`. Elements are `1..=universe`.
pub fn gen_setcover_instance(
    universe: usize,
    families: &[Vec<usize>],
    x: u64,
    delta: Rational,
) -> Result<(Instance, GadgetLayout)> {
    if delta < int(1) {
        return Err(Error::UnsupportedParameter(format!(
            "set-cover gadget needs delta >= 1, got {}",
            format_rational(&delta)
        )));
    }
    if families.is_empty() {
        return Err(Error::UnsupportedParameter("family list is empty".into()));
    }
    for set in families {
        if let Some(&e) = set.iter().find(|&&e| e == 0 || e > universe) {
            return Err(Error::UnsupportedParameter(format!(
                "element {e} outside universe 1..={universe}"
            )));
        }
    }
    let fl = crate::rational::floor_int(&delta) as usize;
    let mut b = Builder::default();
    let elements = b.class("element", universe);
    let mut pendants = Vec::with_capacity(universe);
    for u in 1..=universe {
        pendants.push(b.class(format!("pendant[{u}]"), fl - 1));
    }
    let sets = b.class("set", families.len());
    let apex = b.class("apex", 1).start;
    let apex_path = b.class("apex_path", 2 * fl - 1);

    for (i, p) in pendants.into_iter().enumerate() {
        let mut line = vec![elements.start + i];
        line.extend(p);
        b.path(&line);
    }
    for (j, set) in families.iter().enumerate() {
        let mut set = set.clone();
        set.sort_unstable();
        set.dedup();
        for e in set {
            b.edge(sets.start + j, elements.start + e - 1);
        }
        b.edge(apex, sets.start + j);
    }
    let mut line = vec![apex];
    line.extend(apex_path);
    b.path(&line);

    let layout = b.finish(1, BudgetRule::Fixed(x + 1))?;
    let inst = Instance::new(
        layout.graph.clone(),
        Variant::vertex(delta, true, false),
        1,
        Some(x + 1),
    )?;
    Ok((inst, layout))
}

/// Maps a P3-factor question on `g` to a set-attack instance with `k = 2` and
/// `ℓ = 2|V|/3`. When `3` does not divide `|V|` the answer is a fixed
/// no-instance: one vertex, `k = 1`, `ℓ = 0`.
pub fn map_p3_factor(g: &MetricGraph, delta: Rational) -> Result<Instance> {
    if delta < half() || delta >= int(1) {
        return Err(Error::UnsupportedParameter(format!(
            "P3-factor mapping needs 1/2 <= delta < 1, got {}",
            format_rational(&delta)
        )));
    }
    let variant = Variant::vertex(delta, false, false);
    if g.n() % 3 != 0 {
        return Instance::new(MetricGraph::path(1), variant, 1, Some(0));
    }
    Instance::new(g.clone(), variant, 2, Some(2 * g.n() as u64 / 3))
}

/// Vertex ranges of the clique-interdiction construction.
struct Interdiction {
    n: usize,
    w: Range<usize>,
    f: Range<usize>,
    i_v: Range<usize>,
    i_prime_l: Range<usize>,
    i_prime_r: Range<usize>,
    i_j: [Range<usize>; 3],
    q_j: [(Range<usize>, Range<usize>); 3],
    i2: Range<usize>,
    q2: (Range<usize>, Range<usize>),
    i3: Range<usize>,
    pair: usize,
    t: usize,
}

impl Interdiction {
    /// `v'_l, v'_r, v''_l, v''_r` for original vertex `v`.
    fn w_of(&self, v: usize) -> [usize; 4] {
        let s = self.w.start + 4 * v;
        [s, s + 1, s + 2, s + 3]
    }

    fn w_right(&self) -> Vec<usize> {
        (0..self.n).flat_map(|v| [self.w_of(v)[1], self.w_of(v)[3]]).collect()
    }

    fn i_of(&self, v: usize) -> Range<usize> {
        let s = self.i_v.start + v * self.pair;
        s..s + self.pair
    }

    fn i_prime_of(&self, v: usize) -> (Range<usize>, Range<usize>) {
        let l = self.i_prime_l.start + v * self.t;
        let r = self.i_prime_r.start + v * self.t;
        (l..l + self.t, r..r + self.t)
    }
}

fn wire_w(b: &mut Builder, x: &Interdiction) {
    for v in 0..x.n {
        let [a, c, d, e] = x.w_of(v);
        b.edge(a, c);
        b.edge(d, e);
    }
}

fn wire_f(b: &mut Builder, x: &Interdiction, g: &MetricGraph) {
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        for end in [u, v] {
            for w in x.w_of(end) {
                b.edge(x.f.start + i, w);
            }
        }
    }
}

fn wire_i_v(b: &mut Builder, x: &Interdiction) {
    for v in 0..x.n {
        let right = x.w_of(v)[1];
        b.join(x.i_of(v), right..right + 1);
    }
}

fn wire_i_prime(b: &mut Builder, x: &Interdiction) {
    for v in 0..x.n {
        let (l, r) = x.i_prime_of(v);
        b.matching(l.clone(), r);
        b.join(x.i_of(v), l);
    }
}

fn wire_q_j(b: &mut Builder, x: &Interdiction) {
    for (i, (l, r)) in x.i_j.iter().zip(&x.q_j) {
        b.clique(l.clone());
        b.clique(r.clone());
        b.matching(l.clone(), r.clone());
        b.join(i.clone(), l.clone());
    }
    let q4r = x.q_j[1].1.clone();
    for w in x.w_right() {
        b.join(q4r.clone(), w..w + 1);
    }
    b.join(x.q_j[2].1.clone(), x.i_prime_l.clone());
}

fn wire_q2(b: &mut Builder, x: &Interdiction) {
    let (l, r) = x.q2.clone();
    b.clique(l.clone());
    b.clique(r.clone());
    b.matching(l.clone(), r.clone());
    b.join(x.q_j[0].1.clone(), l.start..r.end);
    b.join(x.i2.clone(), l);
    b.join(r.clone(), x.f.clone());
    b.join(r, x.i_v.clone());
}

fn wire_i3(b: &mut Builder, x: &Interdiction) {
    for w in x.w_right() {
        b.join(w..w + 1, x.i3.clone());
    }
}

/// Layered construction reducing clique interdiction on `(g, s, t)` to a
/// vertex-attack instance with `δ = 3/2`, `k = n + s` and
/// `ℓ = 5(n+s) + nt − (t+1)`.
pub fn gen_clique_interdiction_instance(
    g: &MetricGraph,
    s: u64,
    t: u64,
) -> Result<(Instance, GadgetLayout)> {
    if t < 4 {
        return Err(Error::UnsupportedParameter(format!(
            "clique size threshold t must be at least 4, got {t}"
        )));
    }
    let n = g.n();
    let (ns, tu) = (n + s as usize, t as usize);
    let pair = binomial(tu as u64, 2) as usize;
    if ns < pair {
        return Err(Error::UnsupportedParameter(format!(
            "n + s = {ns} is smaller than C(t, 2) = {pair}"
        )));
    }
    let mut b = Builder::default();
    let w = b.class("W", 4 * n);
    let f = b.class("F", g.edge_count());
    let i_v = b.class("I_V", n * pair);
    let i_prime_l = b.class("I'_V,l", n * tu);
    let i_prime_r = b.class("I'_V,r", n * tu);
    let i_j = [b.class("I1", ns), b.class("I4", ns), b.class("I5", ns)];
    let q_j = [
        (b.class("Q1,l", ns), b.class("Q1,r", ns)),
        (b.class("Q4,l", ns), b.class("Q4,r", ns)),
        (b.class("Q5,l", ns), b.class("Q5,r", ns)),
    ];
    let i2 = b.class("I2", ns - pair);
    let q2 = (b.class("Q2,l", ns - tu - 1), b.class("Q2,r", ns - tu - 1));
    let i3 = b.class("I3", 2 * ns);
    let x = Interdiction {
        n,
        w,
        f,
        i_v,
        i_prime_l,
        i_prime_r,
        i_j,
        q_j,
        i2,
        q2,
        i3,
        pair,
        t: tu,
    };
    wire_w(&mut b, &x);
    wire_f(&mut b, &x, g);
    wire_i_v(&mut b, &x);
    wire_i_prime(&mut b, &x);
    wire_q_j(&mut b, &x);
    wire_q2(&mut b, &x);
    wire_i3(&mut b, &x);

    let k = ns as u64;
    let l = 5 * k + n as u64 * t - (t + 1);
    let layout = b.finish(k, BudgetRule::Fixed(l))?;
    let inst = Instance::new(
        layout.graph.clone(),
        Variant::vertex(Rational::new(3, 2), false, false),
        k,
        Some(l),
    )?;
    Ok((inst, layout))
}
