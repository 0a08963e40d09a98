//! Argument parsing and the four subcommands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use defcover::gadgets::{
    gen_clique_interdiction_instance, gen_distance_d_gadget, gen_setcover_instance,
    map_p3_factor, DistanceVariant, GadgetLayout,
};
use defcover::rational::{format_rational, parse_rational};
use defcover::solvers::{oracle_min_defense, oracle_point_defense, solve, Certificate};
use defcover::verify::{
    counters, uncovered_probe, verify_multiset_attack_flow, worst_vertex_attack_jobs,
    GroupedDefense,
};
use defcover::{AttackDomain, Error, Instance, MetricGraph, Rational, TokenSet, Variant};

use crate::format::{
    parse_families, parse_graph, parse_tokens, point_line, retag, serialize_graph,
    serialize_tokens,
};
use crate::report::{fingerprint, RunReport};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "ddc", version, about = "Exact defensive delta-covering solver and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum defense, or a yes/no answer when --l is given.
    Solve(SolveArgs),
    /// Check a defense against one attack or against all attacks.
    Verify(VerifyArgs),
    /// Emit a reduction gadget.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Brute-force grid optimum, independent of the solvers.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AttackKind {
    Vertex,
    Point,
}

#[derive(Args, Debug)]
struct Common {
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Worker threads for attack enumeration.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct VariantArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Radius as an integer or a fraction a/b.
    #[arg(long, value_parser = rational_arg)]
    delta: Rational,
    #[arg(long, value_enum, default_value_t = AttackKind::Vertex)]
    attack: AttackKind,
    #[arg(long)]
    attack_multiset: bool,
    #[arg(long)]
    defense_multiset: bool,
}

impl VariantArgs {
    fn variant(&self) -> Variant {
        let domain = match self.attack {
            AttackKind::Vertex => AttackDomain::Vertex,
            AttackKind::Point => AttackDomain::Point,
        };
        Variant::new(domain, self.attack_multiset, self.defense_multiset, self.delta)
            .expect("delta is positive")
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    v: VariantArgs,
    #[arg(long)]
    k: u64,
    /// Defense budget; omit to report the optimum.
    #[arg(long)]
    l: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    v: VariantArgs,
    /// Attack size, needed when no attack file is given.
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    defense: PathBuf,
    #[arg(long)]
    attack_file: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    v: VariantArgs,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    l: Option<u64>,
    /// Grid refinement factor.
    #[arg(long, default_value_t = 3)]
    refinement: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GenOutput {
    /// Also write the graph file here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the class sidecar here.
    #[arg(long)]
    classes: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GadgetKind {
    Base,
    DeltaGe2,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Set-cover gadget.
    Setcover {
        #[arg(long)]
        universe: usize,
        /// Sets as comma lists; separate several with `;` or repeat the flag.
        #[arg(long, required = true)]
        sets: Vec<String>,
        #[arg(long)]
        x: u64,
        #[arg(long, value_parser = rational_arg)]
        delta: Rational,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Distance-d edge gadget substitution.
    Distance {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = GadgetKind::Base)]
        variant: GadgetKind,
        #[command(flatten)]
        out: GenOutput,
    },
    /// P3-factor instance.
    P3 {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = rational_arg, default_value = "3/4")]
        delta: Rational,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Clique-interdiction layered construction.
    Interdiction {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[command(flatten)]
        out: GenOutput,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s).map_err(|e| match e {
        Error::Parse { message, .. } => message,
        other => other.to_string(),
    })?;
    if r <= Rational::from_integer(0) {
        return Err("delta must be positive".into());
    }
    Ok(r)
}

/// Result of one invocation: exit status plus what goes to stdout/stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn echo(argv: &[String]) -> String {
    argv.iter()
        .skip(1)
        .map(|a| {
            if a.is_empty() || a.contains(char::is_whitespace) {
                format!("'{a}'")
            } else {
                a.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(argv: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let command = echo(argv);
    let start = Instant::now();
    let (json, result) = match cli.command {
        Command::Solve(a) => (a.common.json, run_solve(&command, &a)),
        Command::Verify(a) => (a.common.json, run_verify(&command, &a)),
        Command::Oracle(a) => (a.common.json, run_oracle(&command, &a)),
        Command::Gen { what } => {
            let json = match &what {
                GenCommand::Setcover { out, .. }
                | GenCommand::Distance { out, .. }
                | GenCommand::P3 { out, .. }
                | GenCommand::Interdiction { out, .. } => out.common.json,
            };
            (json, run_gen(&command, &what))
        }
    };
    match result {
        Ok((code, mut report)) => {
            report.time_ms = start.elapsed().as_millis();
            let stdout = if json { report.to_json() } else { report.to_text() };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(CliError::Core(Error::ResourceLimit(msg))) => {
            let mut report = RunReport::new(command, String::new(), "resource-limit");
            report.field("error", &msg);
            report.time_ms = start.elapsed().as_millis();
            let stdout = if json { report.to_json() } else { report.to_text() };
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error: {msg}\n"),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<MetricGraph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::File {
        path: path.to_path_buf(),
        source: e,
    })
}

fn load_tokens(path: &Path, g: &MetricGraph, multiset: bool) -> Result<TokenSet, CliError> {
    let parsed = parse_tokens(&read(path)?, g).map_err(|e| CliError::File {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(retag(&parsed, multiset)?)
}

fn instance_text(inst: &Instance) -> String {
    format!(
        "{}\nk={}\nl={}",
        inst.variant,
        inst.k,
        inst.l.map_or("none".into(), |l| l.to_string())
    )
}

type Run = Result<(i32, RunReport), CliError>;

fn certificate_text(cert: &Certificate) -> (&'static str, String) {
    match cert {
        Certificate::Factor(f) => {
            let mut s = String::new();
            for t in &f.trees {
                let ids: Vec<String> = t.vertices.iter().map(|v| (v + 1).to_string()).collect();
                s.push_str(&format!("tree {}\n", ids.join(" ")));
                for &(u, v) in &t.edges {
                    s.push_str(&format!("e {} {}\n", u + 1, v + 1));
                }
            }
            for &v in &f.direct {
                s.push_str(&format!("direct {}\n", v + 1));
            }
            ("factor", s)
        }
        Certificate::Edges(es) => {
            let s = es
                .iter()
                .map(|&(u, v, m)| format!("e {} {} {m}\n", u + 1, v + 1))
                .collect();
            ("edges", s)
        }
        Certificate::Grouped(gd) => ("groups", serialize_tokens(gd.iter())),
    }
}

fn run_solve(command: &str, a: &SolveArgs) -> Run {
    let g = load_graph(&a.v.graph)?;
    let inst = Instance::new(g, a.v.variant(), a.k, a.l)?;
    let fp = fingerprint(&[&serialize_graph(&inst.graph), &instance_text(&inst)]);
    let sol = solve(&inst)?;
    let (result, code) = match (a.l, sol.optimal_size) {
        (Some(l), _) if sol.fits(l) => ("yes", 0),
        (Some(_), _) => ("no", 1),
        (None, Some(_)) => ("optimal", 0),
        (None, None) => ("infeasible", 1),
    };
    let mut report = RunReport::new(command.to_string(), fp, result);
    report.optimal = sol.optimal_size;
    report.method = Some(sol.method.to_string());
    if sol.optimal_size.is_some() {
        report.certificate("defense", &serialize_tokens(sol.defense.iter()));
    }
    if let Some(cert) = &sol.certificate {
        let (name, text) = certificate_text(cert);
        report.certificate(name, &text);
    }
    Ok((code, report))
}

fn run_oracle(command: &str, a: &OracleArgs) -> Run {
    let g = load_graph(&a.v.graph)?;
    let inst = Instance::new(g, a.v.variant(), a.k, a.l)?;
    let fp = fingerprint(&[&serialize_graph(&inst.graph), &instance_text(&inst)]);
    let opt = match inst.variant.attack_domain {
        AttackDomain::Vertex => oracle_min_defense(&inst, a.refinement)?,
        AttackDomain::Point => oracle_point_defense(&inst, a.refinement)?,
    };
    let (result, code) = match (a.l, opt) {
        (Some(l), Some(o)) if o <= l => ("yes", 0),
        (Some(_), _) => ("no", 1),
        (None, Some(_)) => ("optimal", 0),
        (None, None) => ("infeasible", 1),
    };
    let mut report = RunReport::new(command.to_string(), fp, result);
    report.optimal = opt;
    report.method = Some("oracle".into());
    report.field("refinement", a.refinement);
    Ok((code, report))
}

fn run_verify(command: &str, a: &VerifyArgs) -> Run {
    let g = load_graph(&a.v.graph)?;
    let var = a.v.variant();
    let defense = load_tokens(&a.defense, &g, var.defense_multiset)?;
    let def_text = serialize_tokens(defense.iter());
    if let Some(path) = &a.attack_file {
        let attack = load_tokens(path, &g, var.attack_multiset)?;
        let att_text = serialize_tokens(attack.iter());
        let fp = fingerprint(&[&serialize_graph(&g), &var.to_string(), &def_text, &att_text]);
        let cert = counters(&g, &var, &defense, &attack)?;
        let (result, code) = if cert.feasible { ("countered", 0) } else { ("not-countered", 1) };
        let mut report = RunReport::new(command.to_string(), fp, result);
        report.method = Some("matching".into());
        if cert.feasible {
            let pairs: String = cert
                .pairs
                .iter()
                .map(|(x, d)| format!("{} -> {}\n", point_line(x), point_line(d)))
                .collect();
            report.certificate("pairs", &pairs);
        }
        return Ok((code, report));
    }
    let k = a
        .k
        .ok_or_else(|| CliError::Usage("verify needs --k or --attack-file".into()))?;
    if k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let fp = fingerprint(&[&serialize_graph(&g), &var.to_string(), &format!("k={k}"), &def_text]);
    match var.attack_domain {
        AttackDomain::Vertex => {
            let flow = if var.attack_multiset {
                match verify_multiset_attack_flow(&g, &var, &GroupedDefense::from_tokens(&defense), k)
                {
                    Ok(ok) => Some(ok),
                    Err(Error::InvalidCertificate(_)) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let worst = worst_vertex_attack_jobs(&g, &var, &defense, k, a.common.jobs.max(1))?;
            let ok = worst.deficiency == 0;
            if flow.is_some_and(|f| f != ok) {
                return Err(Error::Internal("flow and enumeration verdicts differ".into()).into());
            }
            let mut report = RunReport::new(
                command.to_string(),
                fp,
                if ok { "countered" } else { "not-countered" },
            );
            report.method = Some(if flow.is_some() { "flow" } else { "enumeration" }.into());
            if !ok {
                report.field("deficiency", worst.deficiency);
                report.certificate("attack", &serialize_tokens(worst.attack.iter()));
            }
            Ok((if ok { 0 } else { 1 }, report))
        }
        AttackDomain::Point => {
            let probe = uncovered_probe(&g, &var, &defense, k)?;
            let mut report = RunReport::new(
                command.to_string(),
                fp,
                if probe.is_none() { "countered" } else { "not-countered" },
            );
            report.method = Some("probe-grid".into());
            if let Some(p) = &probe {
                report.certificate("probe", &format!("{}\n", point_line(p)));
            }
            Ok((if probe.is_none() { 0 } else { 1 }, report))
        }
    }
}

fn emit_gadget(
    command: &str,
    lay: &GadgetLayout,
    params: &[(&str, String)],
    out: &GenOutput,
) -> Run {
    let graph = serialize_graph(&lay.graph);
    let sidecar = lay.sidecar();
    let mut fp_parts = vec![graph.clone()];
    fp_parts.extend(params.iter().map(|(k, v)| format!("{k}={v}")));
    let fp_refs: Vec<&str> = fp_parts.iter().map(String::as_str).collect();
    let mut report = RunReport::new(command.to_string(), fingerprint(&fp_refs), "generated");
    report.method = Some("gadget".into());
    report.field("vertices", lay.graph.n());
    report.field("edges", lay.graph.edge_count());
    for (k, v) in params {
        report.field(k, v);
    }
    for c in &lay.classes {
        report.field(&format!("class.{}", c.label), c.vertices.len());
    }
    report.certificate("graph", &graph);
    report.certificate("classes", &sidecar);
    if let Some(p) = &out.out {
        write(p, &graph)?;
    }
    if let Some(p) = &out.classes {
        write(p, &sidecar)?;
    }
    Ok((0, report))
}

fn run_gen(command: &str, what: &GenCommand) -> Run {
    match what {
        GenCommand::Setcover {
            universe,
            sets,
            x,
            delta,
            out,
        } => {
            let families = parse_families(sets)?;
            let (inst, lay) = gen_setcover_instance(*universe, &families, *x, *delta)?;
            let params = [
                ("k", inst.k.to_string()),
                ("l", inst.l.expect("fixed budget").to_string()),
                ("delta", format_rational(delta)),
                ("variant", inst.variant.to_string()),
            ];
            emit_gadget(command, &lay, &params, out)
        }
        GenCommand::Distance {
            graph,
            k,
            d,
            variant,
            out,
        } => {
            let g = load_graph(graph)?;
            let kind = match variant {
                GadgetKind::Base => DistanceVariant::Base,
                GadgetKind::DeltaGe2 => DistanceVariant::DeltaGe2,
            };
            let lay = gen_distance_d_gadget(&g, *k, *d, kind)?;
            let params = [
                ("k", k.to_string()),
                ("l_offset", lay.budget.apply(0).to_string()),
                ("d", d.to_string()),
            ];
            emit_gadget(command, &lay, &params, out)
        }
        GenCommand::P3 { graph, delta, out } => {
            let g = load_graph(graph)?;
            let inst = map_p3_factor(&g, *delta)?;
            let lay = GadgetLayout {
                classes: vec![defcover::gadgets::VertexClass {
                    label: "V".into(),
                    vertices: (0..inst.graph.n()).collect(),
                }],
                graph: inst.graph.clone(),
                k: inst.k,
                budget: defcover::gadgets::BudgetRule::Fixed(inst.l.unwrap_or(0)),
            };
            let params = [
                ("k", inst.k.to_string()),
                ("l", inst.l.unwrap_or(0).to_string()),
                ("delta", format_rational(delta)),
            ];
            emit_gadget(command, &lay, &params, out)
        }
        GenCommand::Interdiction { graph, s, t, out } => {
            let g = load_graph(graph)?;
            let (inst, lay) = gen_clique_interdiction_instance(&g, *s, *t)?;
            let params = [
                ("k", inst.k.to_string()),
                ("l", inst.l.expect("fixed budget").to_string()),
                ("delta", format_rational(inst.variant.delta())),
            ];
            emit_gadget(command, &lay, &params, out)
        }
    }
}
