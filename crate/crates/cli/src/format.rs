//! Line formats for graphs, token files and class sidecars.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v>
//! ```
//!
//! Token files hold `v <id> [mult]` and `e <u> <v> <num>/<den> [mult]` lines.
//! Ids are 1-indexed everywhere.

use std::fmt::Write as _;

use defcover::rational::{format_rational, parse_rational};
use defcover::{Error, MetricGraph, Point, Rational, Result, TokenSet};
use num_traits::{One, Zero};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| parse_err(line, format!("expected {what}, got `{field}`")))
}

fn vertex_id(line: usize, field: &str, n: usize) -> Result<usize> {
    let id: usize = number(line, field, "a vertex id")?;
    if id == 0 || id > n {
        return Err(parse_err(line, format!("vertex {id} out of range 1..={n}")));
    }
    Ok(id - 1)
}

pub fn parse_graph(text: &str) -> Result<MetricGraph> {
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return Err(parse_err(1, "missing `p <n> <m>` header"));
    };
    if header.len() != 3 || header[0] != "p" {
        return Err(parse_err(hline, "expected `p <n> <m>`"));
    }
    let n: usize = number(hline, header[1], "a vertex count")?;
    let m: usize = number(hline, header[2], "an edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    let mut last = hline;
    for (line, f) in lines {
        last = line;
        if f.len() != 3 || f[0] != "e" {
            return Err(parse_err(line, "expected `e <u> <v>`"));
        }
        let u = vertex_id(line, f[1], n)?;
        let v = vertex_id(line, f[2], n)?;
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, format!("duplicate edge {} {}", u + 1, v + 1)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            last,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    MetricGraph::new(n, edges)
}

pub fn serialize_graph(g: &MetricGraph) -> String {
    let mut s = format!("p {} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", u + 1, v + 1);
    }
    s
}

fn multiplicity(line: usize, field: Option<&&str>) -> Result<u64> {
    let Some(field) = field else {
        return Ok(1);
    };
    let m: u64 = number(line, field, "a multiplicity")?;
    if m == 0 {
        return Err(parse_err(line, "multiplicity must be at least 1"));
    }
    Ok(m)
}

/// Parses a token file into a multiset; repeated lines add up.
pub fn parse_tokens(text: &str, g: &MetricGraph) -> Result<TokenSet> {
    let mut out = TokenSet::new(true);
    for (line, f) in content_lines(text) {
        let (point, rest) = match f[0] {
            "v" if (2..=3).contains(&f.len()) => (Point::vertex(vertex_id(line, f[1], g.n())?), 2),
            "e" if (4..=5).contains(&f.len()) => {
                let u = vertex_id(line, f[1], g.n())?;
                let v = vertex_id(line, f[2], g.n())?;
                if !g.has_edge(u, v) {
                    return Err(parse_err(line, format!("{} {} is not an edge", u + 1, v + 1)));
                }
                let lambda: Rational =
                    parse_rational(f[3]).map_err(|e| parse_err(line, e.to_string()))?;
                if lambda <= Rational::zero() || lambda >= Rational::one() {
                    return Err(parse_err(
                        line,
                        format!("lambda {} outside (0, 1)", format_rational(&lambda)),
                    ));
                }
                (Point::on_edge(u, v, lambda), 4)
            }
            _ => {
                return Err(parse_err(
                    line,
                    "expected `v <id> [mult]` or `e <u> <v> <num>/<den> [mult]`",
                ))
            }
        };
        let m = multiplicity(line, f.get(rest))?;
        out.insert(point, m)?;
    }
    Ok(out)
}

/// One token line without the multiplicity.
pub fn point_line(p: &Point) -> String {
    match p.as_vertex() {
        Some(v) => format!("v {}", v + 1),
        None => format!("e {} {} {}", p.u() + 1, p.v() + 1, format_rational(p.lambda())),
    }
}

/// Canonical token file: points in canonical order, multiplicity only when
/// above one.
pub fn serialize_tokens<'a>(tokens: impl IntoIterator<Item = (&'a Point, u64)>) -> String {
    let mut s = String::new();
    for (p, m) in tokens {
        s.push_str(&point_line(p));
        if m > 1 {
            let _ = write!(s, " {m}");
        }
        s.push('\n');
    }
    s
}

/// Re-tags parsed tokens as a set or multiset.
pub fn retag(tokens: &TokenSet, multiset: bool) -> Result<TokenSet> {
    let mut out = TokenSet::new(multiset);
    for (p, m) in tokens.iter() {
        out.insert(p.clone(), m)?;
    }
    Ok(out)
}

/// Parses `"1,2;3"` into set families. Elements are positive integers.
pub fn parse_families(specs: &[String]) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for spec in specs {
        for part in spec.split(';') {
            let set = part
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>().map_err(|_| {
                        Error::UnsupportedParameter(format!("expected an element, got `{s}`"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if !set.is_empty() {
                out.push(set);
            }
        }
    }
    Ok(out)
}
