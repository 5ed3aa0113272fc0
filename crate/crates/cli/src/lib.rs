//! Command-line front end for `jacwall`.
//!
//! Exit codes: 0 ok, 1 a checked identity failed, 2 malformed input,
//! 3 degenerate parameter, 4 graph shape violation, 5 formula precondition
//! violation.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use jacwall::json::{
    class_to_json, graph_from_json, label_from_json, label_to_json, multidegree_to_json, parameter_from_json,
    parameter_to_json, rational_to_json,
};
use jacwall::rational::{format_rational, int, rat};
use jacwall::{
    all_stable_multidegrees_bruteforce, hain_class, mueller_class, mueller_comparison,
    stable_multidegree, stable_pairs_class, theta_pullback, wall_crossing, BoundaryPair, DivisorClass, Error,
    MarkedGraph, PolytopeLabel, StabilityParameter,
};
use serde_json::{json, Value};

mod check;

#[derive(Debug, Parser)]
#[command(name = "jacwall", version, about = "Stability polytopes, stable multidegrees and theta-divisor classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polytope label of a parameter, with nondegeneracy and flatness flags.
    Polytope {
        #[command(flatten)]
        gn: GnArgs,
        #[command(flatten)]
        phi: PhiSource,
    },
    /// Graph parameter and unique stable multidegree on a tree-like graph.
    StableDegree {
        /// Graph JSON file.
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        phi: PhiSource,
        /// Re-check the answer by exhaustive search.
        #[arg(long)]
        verify: bool,
    },
    /// Difference of pulled-back theta classes between two parameters.
    WallCross {
        #[command(flatten)]
        gn: GnArgs,
        /// `fromdeg:d1,...,dn`, `label:d1,...,dm`, `file:path.json` or `canonical`.
        #[arg(long, allow_hyphen_values = true)]
        phi1: String,
        #[arg(long, allow_hyphen_values = true)]
        phi2: String,
    },
    /// Pullback of the theta divisor along the section of O(sum d_j p_j).
    Pullback {
        #[command(flatten)]
        gn: GnArgs,
        /// Degree vector `d1,...,dn` summing to g - 1.
        #[arg(long, allow_hyphen_values = true)]
        degrees: String,
        #[command(flatten)]
        phi: PhiSource,
    },
    /// Comparison classes for a degree vector and the identities relating them.
    Compare {
        #[command(flatten)]
        gn: GnArgs,
        #[arg(long, allow_hyphen_values = true)]
        degrees: String,
        /// Only the closure class and T-set; fails with exit 5 when no degree is negative.
        #[arg(long)]
        mueller_only: bool,
    },
    /// Randomized self-check sweep; `JACWALL_SEED` fixes the sample.
    Check {
        /// Samples per (g, n).
        #[arg(long, default_value_t = 20)]
        rounds: usize,
    },
}

#[derive(Debug, Args)]
pub struct GnArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct PhiSource {
    /// Parameter JSON file.
    #[arg(long)]
    pub phi: Option<PathBuf>,
    /// The parameter with phi+(i, S) = d_S.
    #[arg(long, allow_hyphen_values = true)]
    pub from_degrees: Option<String>,
    /// Label JSON file; uses the integral point of that polytope.
    #[arg(long)]
    pub from_label: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) => match e {
                Error::DegenerateParameter(_) => 3,
                Error::NotTreeLike(_) | Error::LoopEdge(_) | Error::GraphMismatch(_) => 4,
                Error::NoNegativeDegree | Error::NonAmple => 5,
                _ => 2,
            },
            CliError::Io { .. } | CliError::Usage(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What to print, and the exit status to return after printing it.
pub struct Report {
    pub output: String,
    pub code: u8,
}

impl Report {
    fn ok(output: String) -> Self {
        Report { output, code: 0 }
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    Ok(jacwall::json::parse(&text)?)
}

pub fn parse_integers(list: &str) -> CliResult<Vec<i64>> {
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("{s:?} is not an integer in list {list:?}")))
        })
        .collect()
}

fn check_gn(phi: &StabilityParameter, g: u32, n: usize) -> CliResult<()> {
    if (phi.g(), phi.n()) != (g, n) {
        return Err(CliError::Usage(format!(
            "parameter is for (g, n) = ({}, {}), expected ({g}, {n})",
            phi.g(),
            phi.n()
        )));
    }
    Ok(())
}

impl PhiSource {
    fn resolve(&self, g: u32, n: usize) -> CliResult<StabilityParameter> {
        let phi = if let Some(path) = &self.phi {
            parameter_from_json(&read_json(path)?)?
        } else if let Some(list) = &self.from_degrees {
            StabilityParameter::from_degrees(g, n, &parse_integers(list)?)?
        } else if let Some(path) = &self.from_label {
            StabilityParameter::from_label(&label_from_json(&read_json(path)?)?)
        } else {
            return Err(CliError::Usage("one of --phi, --from-degrees, --from-label is required".into()));
        };
        check_gn(&phi, g, n)?;
        Ok(phi)
    }
}

/// `fromdeg:...`, `label:...`, `file:...` or `canonical`.
pub fn parse_phi_spec(g: u32, n: usize, spec: &str) -> CliResult<StabilityParameter> {
    let phi = if spec == "canonical" {
        StabilityParameter::canonical(g, n)?
    } else if let Some(list) = spec.strip_prefix("fromdeg:") {
        StabilityParameter::from_degrees(g, n, &parse_integers(list)?)?
    } else if let Some(list) = spec.strip_prefix("label:") {
        StabilityParameter::from_label(&PolytopeLabel::from_values(g, n, &parse_integers(list)?)?)
    } else if let Some(path) = spec.strip_prefix("file:") {
        parameter_from_json(&read_json(Path::new(path))?)?
    } else {
        return Err(CliError::Usage(format!(
            "parameter spec {spec:?} is not fromdeg:..., label:..., file:... or canonical"
        )));
    };
    check_gn(&phi, g, n)?;
    Ok(phi)
}

fn pretty(v: &Value) -> String {
    let mut s = jacwall::json::to_string(v);
    s.push('\n');
    s
}

fn pair_json(p: BoundaryPair) -> Value {
    json!({"i": p.i, "S": p.markings()})
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    let json = cli.json;
    match &cli.command {
        Command::Polytope { gn, phi } => polytope(gn.g, gn.n, &phi.resolve(gn.g, gn.n)?, json).map(Report::ok),
        Command::StableDegree { graph, phi, verify } => stable_degree(graph, phi, *verify, json),
        Command::WallCross { gn, phi1, phi2 } => {
            let a = parse_phi_spec(gn.g, gn.n, phi1)?;
            let b = parse_phi_spec(gn.g, gn.n, phi2)?;
            Ok(Report::ok(class_report(&wall_crossing(&a, &b)?, json)))
        }
        Command::Pullback { gn, degrees, phi } => {
            let d = parse_integers(degrees)?;
            let phi = phi.resolve(gn.g, gn.n)?;
            Ok(Report::ok(class_report(&theta_pullback(&phi, &d)?, json)))
        }
        Command::Compare { gn, degrees, mueller_only } => compare(gn.g, gn.n, &parse_integers(degrees)?, *mueller_only, json),
        Command::Check { rounds } => Ok(check::run(check::seed_from_env()?, *rounds, json)),
    }
}

fn polytope(g: u32, n: usize, phi: &StabilityParameter, json: bool) -> CliResult<String> {
    let label = phi.polytope_label()?;
    if json {
        return Ok(pretty(&json!({
            "parameter": parameter_to_json(phi),
            "label": label_to_json(&label),
            "nondegenerate": true,
            "theta_flat": label.is_theta_flat(),
            "theta_reduced": label.is_theta_reduced(),
        })));
    }
    let mut out = String::new();
    writeln!(out, "g = {g}, n = {n}").unwrap();
    writeln!(out, "{:<14} {:>10} {:>6}", "pair", "phi+", "d").unwrap();
    for (p, x) in phi.coords() {
        writeln!(out, "{:<14} {:>10} {:>6}", p.to_string(), format_rational(x), label.entries()[p]).unwrap();
    }
    writeln!(out, "nondegenerate: true").unwrap();
    writeln!(out, "theta-flat: {}", label.is_theta_flat()).unwrap();
    writeln!(out, "theta-reduced: {}", label.is_theta_reduced()).unwrap();
    Ok(out)
}

fn stable_degree(path: &Path, source: &PhiSource, verify: bool, json: bool) -> CliResult<Report> {
    let graph: MarkedGraph = graph_from_json(&read_json(path)?)?;
    let rank = graph.loop_free_circuit_rank();
    if rank != 0 {
        return Err(Error::NotTreeLike(rank).into());
    }
    let phi = source.resolve(graph.genus(), graph.n())?;
    let ext = phi.extend_to_graph(&graph)?;
    let stable = stable_multidegree(&ext)?;
    let verified = verify.then(|| {
        let brute = all_stable_multidegrees_bruteforce(&ext, true);
        brute.len() == 1 && brute[0] == stable
    });
    let code = if verified == Some(false) { 1 } else { 0 };
    let output = if json {
        let values: serde_json::Map<String, Value> = (0..graph.num_vertices())
            .map(|v| (graph.id(v).to_string(), rational_to_json(&ext.value(v))))
            .collect();
        let mut report = json!({
            "graph_parameter": values,
            "multidegree": multidegree_to_json(&stable.to_sheaf()),
        });
        if let Some(ok) = verified {
            report["verified"] = json!(ok);
        }
        pretty(&report)
    } else {
        let mut out = String::new();
        writeln!(out, "{:<8} {:>6} {:>10} {:>6}", "vertex", "genus", "phi", "deg").unwrap();
        for v in 0..graph.num_vertices() {
            writeln!(
                out,
                "{:<8} {:>6} {:>10} {:>6}",
                graph.id(v),
                graph.vertex_genus(v),
                format_rational(&ext.value(v)),
                stable.degrees()[v]
            )
            .unwrap();
        }
        if let Some(ok) = verified {
            writeln!(out, "exhaustive check: {}", if ok { "PASS" } else { "FAIL" }).unwrap();
        }
        out
    };
    Ok(Report { output, code })
}

fn class_report(class: &DivisorClass, json: bool) -> String {
    if json {
        pretty(&class_to_json(class))
    } else {
        format!("{class}\n")
    }
}

fn compare(g: u32, n: usize, d: &[i64], mueller_only: bool, json: bool) -> CliResult<Report> {
    let has_negative = d.iter().any(|&x| x < 0);
    if mueller_only {
        let closure = mueller_class(g, n, d)?;
        let cmp = mueller_comparison(g, n, d)?;
        let output = if json {
            pretty(&json!({
                "mueller": class_to_json(&closure),
                "t_set": cmp.pairs.iter().map(|&p| pair_json(p)).collect::<Vec<_>>(),
                "diff": class_to_json(&cmp.diff),
            }))
        } else {
            format!(
                "mueller: {closure}\nT: {}\ndiff: {}\n",
                format_pairs(&cmp.pairs),
                cmp.diff
            )
        };
        return Ok(Report::ok(output));
    }

    let from_degrees = StabilityParameter::from_degrees(g, n, d)?;
    let theta_d = theta_pullback(&from_degrees, d)?;
    let stable_pairs = stable_pairs_class(g, n, d)?;
    let hain = hain_class(g, n, d)?;
    // The flat polytope with label d(i, S) = i - 1 everywhere.
    let flat = StabilityParameter::from_fn(g, n, |p| int(i64::from(p.i) - 1))?;
    let theta_flat = theta_pullback(&flat, d)?;
    let irr = DivisorClass::new(g, n, int(0), vec![int(0); n], rat(1, 8), [])?;

    let mut identities: Vec<(&str, bool)> = vec![
        ("hain - stable_pairs = delta_irr/8", hain.checked_sub(&stable_pairs)? == irr),
        ("theta(phi_d) has no boundary terms", theta_d.boundary_is_zero()),
        ("theta(flat) = stable_pairs", theta_flat == stable_pairs),
        ("theta(flat) - theta(phi_d) = wall_crossing", theta_flat.checked_sub(&theta_d)? == wall_crossing(&from_degrees, &flat)?),
    ];
    let mueller = if has_negative {
        let closure = mueller_class(g, n, d)?;
        let cmp = mueller_comparison(g, n, d)?;
        identities.push(("mueller + diff = stable_pairs", closure.checked_add(&cmp.diff)? == stable_pairs));
        Some((closure, cmp))
    } else {
        None
    };
    let code = if identities.iter().all(|&(_, ok)| ok) { 0 } else { 1 };

    let output = if json {
        let mut report = json!({
            "g": g,
            "n": n,
            "degrees": d,
            "theta_at_phi_d": class_to_json(&theta_d),
            "stable_pairs": class_to_json(&stable_pairs),
            "hain": class_to_json(&hain),
            "mueller": Value::Null,
        });
        if let Some((closure, cmp)) = &mueller {
            report["mueller"] = class_to_json(closure);
            report["t_set"] = json!(cmp.pairs.iter().map(|&p| pair_json(p)).collect::<Vec<_>>());
            report["diff"] = class_to_json(&cmp.diff);
        }
        report["identities"] = identities
            .iter()
            .map(|&(name, ok)| json!({"name": name, "pass": ok}))
            .collect();
        pretty(&report)
    } else {
        let mut out = String::new();
        writeln!(out, "theta(phi_d):  {theta_d}").unwrap();
        writeln!(out, "stable pairs:  {stable_pairs}").unwrap();
        writeln!(out, "hain:          {hain}").unwrap();
        match &mueller {
            Some((closure, cmp)) => {
                writeln!(out, "mueller:       {closure}").unwrap();
                writeln!(out, "T:             {}", format_pairs(&cmp.pairs)).unwrap();
                writeln!(out, "diff:          {}", cmp.diff).unwrap();
            }
            None => writeln!(out, "mueller:       undefined (no negative degree)").unwrap(),
        }
        for (name, ok) in &identities {
            writeln!(out, "{}  {name}", if *ok { "PASS" } else { "FAIL" }).unwrap();
        }
        out
    };
    Ok(Report { output, code })
}

fn format_pairs(pairs: &[BoundaryPair]) -> String {
    let inner: Vec<String> = pairs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}
