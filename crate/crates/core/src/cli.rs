//! Command-line front end.
//!
//! Every subcommand writes a versioned JSON report (or CSV for bound grids)
//! to `-o FILE` or standard output. Exit status is 0 on success, 1 when the
//! input fails a check, and 2 for usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{fmt_rational, parse_rational, rat, Rational};
use crate::bounds::{bounds_report, write_csv, Grid};
use crate::connectivity::contains_k1_connected_subgraph;
use crate::constructions::{example1, example1_chain, example2, mader_graph, mader_hypergraph, ConstructionOutput};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::oracle::oracle_max_edges;
use crate::report::envelope;
use crate::septree::{audit_edge_identity, build_separator_tree, validate_separator_tree, SeparatorTree};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "hypersep", version, about = "Separator trees and extremal bounds for uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an extremal family with its separator tree and predicted edge count.
    Construct(ConstructArgs),
    /// Build a separator tree by recursive separation.
    Decompose(DecomposeArgs),
    /// Check a certificate or class membership.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Evaluate the exact edge identity of a separator tree.
    Audit(AuditArgs),
    /// Evaluate the bound formulas at one point or over a grid.
    Bounds(BoundsArgs),
    /// Exhaustive maximum edge count at micro scale.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    MaderGraph,
    MaderHyper,
    Example1,
    Example1Chain,
    Example2,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    family: Family,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long = "p-num")]
    p_num: Option<i64>,
    #[arg(long = "p-den")]
    p_den: Option<i64>,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    /// Also write the bare hypergraph JSON here.
    #[arg(long)]
    emit_hypergraph: Option<PathBuf>,
    /// Also write the bare tree JSON here.
    #[arg(long)]
    emit_tree: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(short = 'H', long = "hypergraph")]
    hypergraph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_parser = parse_rat)]
    c: Rational,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Validate a separator tree as a certificate.
    Tree {
        #[arg(short = 'H', long = "hypergraph")]
        hypergraph: PathBuf,
        #[arg(short = 'T', long = "tree")]
        tree: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_rat)]
        c: Rational,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for a (k+1)-connected subgraph.
    Membership {
        #[arg(short = 'H', long = "hypergraph")]
        hypergraph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long = "min-size", default_value_t = 0)]
        min_size: usize,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(short = 'H', long = "hypergraph")]
    hypergraph: PathBuf,
    #[arg(short = 'T', long = "tree")]
    tree: PathBuf,
    /// Expected separator size; read off the tree when omitted.
    #[arg(long)]
    k: Option<usize>,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_parser = parse_rat)]
    c: Option<Rational>,
    /// Comma-separated `name=values`, e.g. `n=20..60:10,k=6,r=3,c=1|3/2`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Add the surplus of this hypergraph to a single-point report.
    #[arg(short = 'H', long = "hypergraph")]
    hypergraph: Option<PathBuf>,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long = "min-size", default_value_t = 0)]
    min_size: usize,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("expected NUM/DEN or an integer, got {s:?}"))
}

/// Why a command stopped.
enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::ScaleLimit(_) | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Io<'a> {
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, out: Option<&Path>, text: &str) -> Outcome {
        match out {
            Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
            None => self.stdout.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Reads a hypergraph file, or the hypergraph inside a construction file.
fn load_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let inner = value.get("hypergraph").cloned().unwrap_or(value);
    Hypergraph::from_json(&inner.to_string()).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

/// Reads a tree file, or the tree inside a construction file.
fn load_tree(path: &Path) -> Result<SeparatorTree, Failure> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let inner = match value.get("tree") {
        Some(t) if value.get("hypergraph").is_some() => t.clone(),
        _ => value,
    };
    SeparatorTree::from_json(&inner.to_string()).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{family} needs --{flag}")))
}

fn construct(a: ConstructArgs, io: &mut Io) -> Outcome {
    let out: ConstructionOutput = match a.family {
        Family::MaderGraph => mader_graph(need(a.q, "q", "mader-graph")?, need(a.k, "k", "mader-graph")?)?,
        Family::MaderHyper => mader_hypergraph(
            need(a.q, "q", "mader-hyper")?,
            need(a.k, "k", "mader-hyper")?,
            need(a.r, "r", "mader-hyper")?,
        )?,
        Family::Example1 => example1(need(a.s, "s", "example1")?, need(a.r, "r", "example1")?, need(a.c, "c", "example1")?)?,
        Family::Example1Chain => example1_chain(
            need(a.s, "s", "example1-chain")?,
            need(a.r, "r", "example1-chain")?,
            need(a.c, "c", "example1-chain")?,
            need(a.m, "m", "example1-chain")?,
        )?,
        Family::Example2 => {
            let (num, den) = (need(a.p_num, "p-num", "example2")?, need(a.p_den, "p-den", "example2")?);
            if den == 0 {
                return Err(Failure::Usage("--p-den must be nonzero".into()));
            }
            example2(need(a.s, "s", "example2")?, need(a.r, "r", "example2")?, &rat(num, den))?
        }
    };
    if let Some(p) = &a.emit_hypergraph {
        io.emit(Some(p), &(out.hypergraph.to_json() + "\n"))?;
    }
    if let Some(p) = &a.emit_tree {
        io.emit(Some(p), &(out.tree.to_json() + "\n"))?;
    }
    io.emit(a.out.as_deref(), &(out.to_json() + "\n"))?;
    if !out.prediction_holds() {
        return Err(Failure::Invalid(format!(
            "generated {} edges but the closed form predicts {}",
            out.hypergraph.edge_count(),
            out.predicted_edges
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct DecomposeFailure<'a> {
    decomposed: bool,
    k: usize,
    c: String,
    failure: &'a crate::septree::BuildFailure,
}

fn decompose(a: DecomposeArgs, io: &mut Io) -> Outcome {
    let h = load_hypergraph(&a.hypergraph)?;
    match build_separator_tree(&h, a.k, &a.c) {
        Ok(tree) => io.emit(a.out.as_deref(), &(tree.to_json() + "\n")),
        Err(failure) => {
            let report = DecomposeFailure { decomposed: false, k: a.k, c: fmt_rational(&a.c), failure: &failure };
            io.emit(None, &envelope("decompose-failure", &report))?;
            Err(Failure::Invalid(failure.to_string()))
        }
    }
}

#[derive(Serialize)]
struct MembershipReport {
    k: usize,
    min_size: usize,
    /// True when no `(k+1)`-connected subgraph on at least `min_size` vertices exists.
    member: bool,
    witness: Option<Vec<Vertex>>,
}

fn verify(what: VerifyCommand, io: &mut Io) -> Outcome {
    match what {
        VerifyCommand::Tree { hypergraph, tree, k, c, out } => {
            let h = load_hypergraph(&hypergraph)?;
            let t = load_tree(&tree)?;
            let report = validate_separator_tree(&h, &t, k, &c);
            io.emit(out.as_deref(), &envelope("certificate", &report))?;
            if !report.valid {
                return Err(Failure::Invalid(format!("{} violation(s)", report.violations.len())));
            }
            Ok(())
        }
        VerifyCommand::Membership { hypergraph, k, min_size, out } => {
            let h = load_hypergraph(&hypergraph)?;
            let witness = contains_k1_connected_subgraph(&h, k, min_size);
            let report = MembershipReport { k, min_size, member: witness.is_none(), witness };
            io.emit(out.as_deref(), &envelope("membership", &report))?;
            if let Some(w) = report.witness {
                return Err(Failure::Invalid(format!("the vertices {w:?} induce a (k+1)-connected subgraph")));
            }
            Ok(())
        }
    }
}

fn audit(a: AuditArgs, io: &mut Io) -> Outcome {
    let h = load_hypergraph(&a.hypergraph)?;
    let t = load_tree(&a.tree)?;
    let ledger = audit_edge_identity(&h, &t)?;
    if let Some(k) = a.k {
        if ledger.k != k && !ledger.separators.is_empty() {
            return Err(Failure::Invalid(format!("the tree has separators of size {}, not {k}", ledger.k)));
        }
    }
    io.emit(a.out.as_deref(), &envelope("edge-ledger", &ledger))
}

fn bounds(a: BoundsArgs, io: &mut Io) -> Outcome {
    let h = match &a.hypergraph {
        Some(p) => Some(load_hypergraph(p)?),
        None => None,
    };
    let points = match &a.grid {
        Some(spec) => {
            if h.is_some() {
                return Err(Failure::Usage("-H applies to a single point, not a grid".into()));
            }
            let defaults = Grid {
                n: a.n.into_iter().collect(),
                k: a.k.into_iter().collect(),
                r: a.r.into_iter().collect(),
                c: a.c.clone().into_iter().collect(),
            };
            Grid::parse(spec, &defaults)?.points()
        }
        None => {
            let n = need(a.n, "n", "bounds")?;
            let k = need(a.k, "k", "bounds")?;
            let r = need(a.r, "r", "bounds")?;
            let c = need(a.c.clone(), "c", "bounds")?;
            vec![(n, k, r, c)]
        }
    };
    if points.is_empty() {
        return Err(Failure::Usage("the grid has no points with n > k >= r >= 3".into()));
    }
    let reports = points
        .iter()
        .map(|(n, k, r, c)| bounds_report(*n, *k, *r, c, h.as_ref()))
        .collect::<crate::Result<Vec<_>>>()?;
    if let Some(path) = &a.csv {
        let mut buf = Vec::new();
        write_csv(&mut buf, &reports)?;
        io.emit(Some(path), &String::from_utf8(buf).expect("csv is utf-8"))?;
        if a.out.is_none() {
            return Ok(());
        }
    }
    if a.grid.is_none() {
        io.emit(a.out.as_deref(), &envelope("bounds", &reports[0]))
    } else {
        io.emit(a.out.as_deref(), &envelope("bounds-grid", &reports))
    }
}

fn oracle(a: OracleArgs, io: &mut Io) -> Outcome {
    let result = oracle_max_edges(a.n, a.k, a.r, a.min_size, a.threads)?;
    io.emit(a.out.as_deref(), &envelope("oracle", &result))
}

/// Parses `args` (program name first) and runs the command, writing reports
/// without `-o` to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{}", e.render()) } else { write!(stderr, "{}", e.render()) };
            return code;
        }
    };
    let mut io = Io { stdout };
    let outcome = match cli.command {
        Command::Construct(a) => construct(a, &mut io),
        Command::Decompose(a) => decompose(a, &mut io),
        Command::Verify { what } => verify(what, &mut io),
        Command::Audit(a) => audit(a, &mut io),
        Command::Bounds(a) => bounds(a, &mut io),
        Command::Oracle(a) => oracle(a, &mut io),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("hypersep").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["construct", "example1", "--s", "1"]).0, 2);
        assert_eq!(call(&["bounds", "--n", "30", "--k", "6", "--r", "3", "--c", "x"]).0, 2);
        assert_eq!(call(&["oracle", "--n", "7", "--k", "3", "--r", "3"]).0, 2);
    }

    #[test]
    fn bounds_point() {
        let (code, out, _) = call(&["bounds", "--n", "30", "--k", "6", "--r", "3", "--c", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kind"], "bounds");
        assert_eq!(v["report"]["n_bound"]["value"], "2134/1");
    }

    #[test]
    fn construct_then_verify() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("out.json");
        let fs = f.to_str().unwrap();
        assert_eq!(call(&["construct", "mader-hyper", "--q", "2", "--k", "3", "--r", "3", "-o", fs]).0, 0);
        let (code, out, _) = call(&["verify", "membership", "-H", fs, "--k", "3", "--min-size", "5"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = call(&["verify", "tree", "-H", fs, "-T", fs, "--k", "3", "--c", "1"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(call(&["audit", "-H", fs, "-T", fs, "--k", "3"]).0, 0);
        let g = dir.path().join("q3.json");
        let gs = g.to_str().unwrap();
        assert_eq!(call(&["construct", "mader-hyper", "--q", "3", "--k", "3", "--r", "3", "-o", gs]).0, 0);
        assert_eq!(call(&["audit", "-H", gs, "-T", gs]).0, 0);
        assert_eq!(call(&["audit", "-H", gs, "-T", gs, "--k", "2"]).0, 1);
    }
}
