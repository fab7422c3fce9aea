//! The `sym` command line: symbol evaluation, reciprocity checks, Toeplitz
//! joint torsion and local expansions.

pub mod parse;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ccsym::geometry::{detect_line_flags, flag_expand, local_expand, Place, SurfaceFlag};
use ccsym::reciprocity::{cc_check, default_precision, parshin_check, weil_check, ReciprocityReport};
use ccsym::symbols::{
    cc_symbol, higher_cc_symbol, higher_tame_symbol, tame_symbol, toeplitz_joint_torsion, toeplitz_static_window,
    TOEPLITZ_ORIENTATION,
};
use ccsym::{RationalFunction, Ring, RingValue};

pub use parse::{infer_variables, parse_expression, parse_expression_in, Parsed};

pub const SCHEMA: &str = "cc-symbols/1";

/// Identifier of the sign conventions in force.
pub const ORIENTATION: &str = "tt=-1;ct=c;toeplitz=cc^-1";

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERDICT: i32 = 4;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CliError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown symbol '{name}' at {line}:{col}")]
    UnknownSymbol { line: usize, col: usize, name: String },
    #[error("{0}")]
    Usage(String),
    #[error("division by a non-unit: {0}")]
    DivisionByNonUnit(String),
    #[error(transparent)]
    Domain(#[from] ccsym::Error),
}

impl CliError {
    pub fn syntax(line: usize, col: usize, msg: &str) -> CliError {
        CliError::Syntax { line, col, msg: msg.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::UnknownSymbol { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::DivisionByNonUnit(_) | CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "sym", version, about = "Exact tame, Contou-Carrère and higher symbols")]
pub struct Cli {
    /// Coefficient ring, e.g. F5, GF(3^2), F5[e]/e^2
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Truncation order for series expansions
    #[arg(long, global = true)]
    pub precision: Option<i64>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a symbol of Laurent series
    Symbol {
        kind: SymbolKind,
        #[arg(required = true)]
        args: Vec<String>,
    },
    /// Check a reciprocity law
    Verify {
        law: Law,
        #[arg(required = true)]
        args: Vec<String>,
        /// Flag through the origin (parshin): `t1=0` or `t2=<poly in t1>`;
        /// repeat for each curve. Defaults to the lines in the tangent cones.
        #[arg(long = "flag")]
        flags: Vec<String>,
    },
    /// Toeplitz joint torsion of two units
    Toeplitz {
        f: String,
        g: String,
        /// Window `M,N` of inner and fine lattice
        #[arg(long)]
        window: Option<String>,
    },
    /// Expand a function at a place, a flag, or the origin
    Expand {
        expr: String,
        /// `inf`, a monic irreducible polynomial in t, or a flag `t1=0` / `t2=...`
        #[arg(long)]
        place: Option<String>,
    },
    /// Read commands from stdin, one per line
    Batch,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Tame,
    Cc,
    HigherTame,
    HigherCc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    Weil,
    Cc,
    Parshin,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx<'a> {
    ring_src: &'a str,
    ring: Ring,
    precision: Option<i64>,
    json: bool,
}

impl Ctx<'_> {
    fn header(&self, command: &str) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(command));
        m.insert("ring".into(), json!(self.ring_src));
        m.insert("precision".into(), json!(self.precision));
        m.insert("orientation".into(), json!(ORIENTATION));
        m
    }

    fn value_output(&self, command: &str, value: &str, precision: i64) -> String {
        if self.json {
            let mut m = self.header(command);
            m.insert("effective_precision".into(), json!(precision));
            m.insert("value".into(), json!(value));
            Value::Object(m).to_string()
        } else {
            value.to_string()
        }
    }

    fn parse_all(&self, srcs: &[String]) -> Result<(Vec<Parsed>, Vec<&'static str>), CliError> {
        let refs: Vec<&str> = srcs.iter().map(|s| s.as_str()).collect();
        let vars = infer_variables(&refs);
        let parsed = refs.iter().map(|s| parse_expression_in(s, &self.ring, &vars)).collect::<Result<Vec<_>, _>>()?;
        Ok((parsed, vars))
    }

    fn series_precision(&self, parsed: &[Parsed]) -> i64 {
        self.precision.unwrap_or_else(|| {
            let d = parsed
                .iter()
                .map(|p| {
                    let f = p.function();
                    [f.numerator(), f.denominator()].iter().map(|q| q.total_degree().unwrap_or(0) as i64).sum::<i64>()
                })
                .max()
                .unwrap_or(0);
            default_precision(d, self.ring.nilpotency_bound() as i64)
        })
    }
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn std::io::BufRead) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if matches!(cli.command, Command::Batch) {
        return run_batch(stdin);
    }
    match execute(&cli) {
        Ok((code, out)) => Outcome { code, stdout: format!("{out}\n"), stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Runs every non-empty, non-comment line of `input` as a command. The
/// exit code is the largest one seen.
pub fn run_batch(input: &mut dyn std::io::BufRead) -> Outcome {
    let mut out = Outcome { code: 0, stdout: String::new(), stderr: String::new() };
    let mut empty = std::io::empty();
    let mut i = 0;
    loop {
        let mut line = String::new();
        match input.read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                out.code = out.code.max(EXIT_PARSE);
                let _ = writeln!(out.stderr, "line {}: {e}", i + 1);
                break;
            }
        }
        i += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(mut words) = shlex::split(trimmed) else {
            out.code = out.code.max(EXIT_PARSE);
            let _ = writeln!(out.stderr, "line {i}: unbalanced quotes");
            continue;
        };
        if words.first().map(|w| w.as_str()) != Some("sym") {
            words.insert(0, "sym".into());
        }
        if words.get(1).map(|w| w.as_str()) == Some("batch") {
            out.code = out.code.max(EXIT_PARSE);
            let _ = writeln!(out.stderr, "line {i}: nested batch");
            continue;
        }
        let r = run(words, &mut empty);
        out.code = out.code.max(r.code);
        out.stdout.push_str(&r.stdout);
        if !r.stderr.is_empty() {
            let _ = write!(out.stderr, "line {i}: {}", r.stderr);
        }
    }
    out
}

fn execute(cli: &Cli) -> Result<(i32, String), CliError> {
    let ring_src = cli.ring.as_deref().ok_or_else(|| CliError::Usage("--ring is required".into()))?;
    let ring: Ring = ring_src.parse()?;
    if !ring.is_scalar() {
        return Err(CliError::Usage(format!("--ring must be a coefficient ring, got {ring}")));
    }
    let ctx = Ctx { ring_src, ring, precision: cli.precision, json: cli.json };
    match &cli.command {
        Command::Symbol { kind, args } => symbol(&ctx, *kind, args),
        Command::Verify { law, args, flags } => verify(&ctx, *law, args, flags),
        Command::Toeplitz { f, g, window } => toeplitz(&ctx, f, g, window.as_deref()),
        Command::Expand { expr, place } => expand(&ctx, expr, place.as_deref()),
        Command::Batch => Err(CliError::Usage("nested batch".into())),
    }
}

fn arity(args: &[String], n: usize, what: &str) -> Result<(), CliError> {
    if args.len() != n {
        return Err(CliError::Usage(format!("{what} takes {n} arguments, got {}", args.len())));
    }
    Ok(())
}

fn symbol(ctx: &Ctx, kind: SymbolKind, args: &[String]) -> Result<(i32, String), CliError> {
    let (parsed, vars) = ctx.parse_all(args)?;
    let n = ctx.series_precision(&parsed);
    let name = match kind {
        SymbolKind::Tame | SymbolKind::Cc => {
            arity(args, 2, "a two-argument symbol")?;
            if vars.len() != 1 {
                return Err(CliError::Usage("two-argument symbols are functions of t".into()));
            }
            if kind == SymbolKind::Tame { "symbol tame" } else { "symbol cc" }
        }
        SymbolKind::HigherTame | SymbolKind::HigherCc => {
            arity(args, vars.len() + 1, &format!("a symbol in {} variables", vars.len()))?;
            if kind == SymbolKind::HigherTame { "symbol higher-tame" } else { "symbol higher-cc" }
        }
    };
    let series = parsed.iter().map(|p| p.to_series(&vars, n)).collect::<Result<Vec<_>, _>>()?;
    let value = match kind {
        SymbolKind::Tame => tame_symbol(&series[0], &series[1])?,
        SymbolKind::Cc => cc_symbol(&series[0], &series[1])?,
        SymbolKind::HigherTame => higher_tame_symbol(&series)?,
        SymbolKind::HigherCc => higher_cc_symbol(&series)?,
    };
    Ok((0, ctx.value_output(name, &value.to_string(), n)))
}

fn report_output(ctx: &Ctx, command: &str, rep: &ReciprocityReport) -> String {
    if ctx.json {
        let mut m = ctx.header(command);
        m.insert("effective_precision".into(), json!(rep.precision));
        let entries: Vec<Value> = rep
            .entries
            .iter()
            .map(|e| json!({"place": e.place, "value": e.value.to_string(), "regular": e.regular}))
            .collect();
        m.insert("entries".into(), Value::Array(entries));
        m.insert("product".into(), json!(rep.product.to_string()));
        m.insert("verdict".into(), json!(rep.verdict));
        Value::Object(m).to_string()
    } else {
        rep.to_string()
    }
}

/// Parses `t1=0` or `t2=<polynomial in t1 without constant term>`.
pub fn parse_flag(src: &str, ring: &Ring) -> Result<SurfaceFlag, CliError> {
    let (lhs, rhs) = src.split_once('=').ok_or_else(|| CliError::Usage(format!("flag '{src}' needs '='")))?;
    match lhs.trim() {
        "t1" if rhs.trim() == "0" => Ok(SurfaceFlag::VerticalAxis),
        "t2" => {
            let f = parse_expression_in(rhs, ring, &["t1"])?;
            let Parsed::Function(f) = f else {
                return Err(CliError::Usage("flag curves are polynomials".into()));
            };
            if f.denominator().as_constant().is_none() {
                return Err(CliError::Usage(format!("flag curve {f} is not a polynomial")));
            }
            let den_inv = f.denominator().as_constant().expect("constant").inv()?;
            let phi = f.numerator().to_dense().iter().map(|c| c * &den_inv).collect();
            Ok(SurfaceFlag::graph(phi)?)
        }
        _ => Err(CliError::Usage(format!("flag '{src}' must be t1=0 or t2=<poly in t1>"))),
    }
}

fn verify(ctx: &Ctx, law: Law, args: &[String], flag_srcs: &[String]) -> Result<(i32, String), CliError> {
    let (parsed, vars) = ctx.parse_all(args)?;
    let fs: Vec<RationalFunction> = parsed.iter().map(|p| p.function().clone()).collect();
    let (name, rep) = match law {
        Law::Weil | Law::Cc => {
            arity(args, 2, "a curve reciprocity check")?;
            if vars.len() != 1 {
                return Err(CliError::Usage("curve reciprocity takes functions of t".into()));
            }
            if law == Law::Weil {
                ("verify weil", weil_check(&fs[0], &fs[1], ctx.precision)?)
            } else {
                ("verify cc", cc_check(&fs[0], &fs[1], ctx.precision)?)
            }
        }
        Law::Parshin => {
            arity(args, 3, "parshin")?;
            if vars != ["t1", "t2"] {
                return Err(CliError::Usage("parshin takes functions of t1, t2".into()));
            }
            let flags = if flag_srcs.is_empty() {
                detect_line_flags(&[&fs[0], &fs[1], &fs[2]])?
            } else {
                flag_srcs.iter().map(|s| parse_flag(s, &ctx.ring)).collect::<Result<Vec<_>, _>>()?
            };
            ("verify parshin", parshin_check(&fs[0], &fs[1], &fs[2], &flags, ctx.precision)?)
        }
    };
    let code = if rep.verdict { 0 } else { EXIT_VERDICT };
    Ok((code, report_output(ctx, name, &rep)))
}

fn toeplitz(ctx: &Ctx, f: &str, g: &str, window: Option<&str>) -> Result<(i32, String), CliError> {
    let (parsed, vars) = ctx.parse_all(&[f.to_string(), g.to_string()])?;
    if vars.len() != 1 {
        return Err(CliError::Usage("toeplitz takes functions of t".into()));
    }
    let n = ctx.series_precision(&parsed);
    let fs = parsed[0].to_series(&vars, n)?;
    let gs = parsed[1].to_series(&vars, n)?;
    let window = match window {
        None => toeplitz_static_window(&fs, &gs)?,
        Some(w) => {
            let bad = || CliError::Usage(format!("window '{w}' must be M,N"));
            let (a, b) = w.split_once(',').ok_or_else(bad)?;
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        }
    };
    let value = toeplitz_joint_torsion(&fs, &gs, window)?;
    if ctx.json {
        let mut m = ctx.header("toeplitz");
        m.insert("window".into(), json!([window.0, window.1]));
        m.insert("exponent".into(), json!(TOEPLITZ_ORIENTATION));
        m.insert("value".into(), json!(value.to_string()));
        Ok((0, Value::Object(m).to_string()))
    } else {
        Ok((0, value.to_string()))
    }
}

fn parse_place(src: &str, ring: &Ring) -> Result<Place, CliError> {
    let k = ring.residue_field();
    if matches!(src.trim(), "inf" | "infinity") {
        return Ok(Place::infinity(k));
    }
    let f = match parse_expression_in(src, ring, &["t"])? {
        Parsed::Function(f) => f,
        Parsed::Series(..) => return Err(CliError::Usage("a place is a polynomial".into())),
    };
    let is_poly = f.denominator().as_constant().is_some_and(|c| c.is_one());
    let residue = |c: &RingValue| c.to_coefficients().filter(|v| v.iter().skip(1).all(|&x| x == 0)).map(|v| v[0]);
    let coeffs: Option<Vec<u32>> = f.numerator().to_dense().iter().map(residue).collect();
    match coeffs {
        Some(c) if is_poly => Ok(Place::finite(k, c)?),
        _ => Err(CliError::Usage(format!("place '{src}' must be a polynomial over the residue field"))),
    }
}

fn expand(ctx: &Ctx, src: &str, place: Option<&str>) -> Result<(i32, String), CliError> {
    let (parsed, vars) = ctx.parse_all(&[src.to_string()])?;
    let n = ctx.series_precision(&parsed);
    let f = parsed[0].function();
    let (label, series) = match place {
        None => ("origin".to_string(), parsed[0].to_series(&vars, n)?),
        Some(p) if vars.len() == 2 => {
            let flag = parse_flag(p, &ctx.ring)?;
            (flag.to_string(), flag_expand(f, &flag, n)?)
        }
        Some(p) => {
            let place = parse_place(p, &ctx.ring)?;
            (place.to_string(), local_expand(f, &place, n)?)
        }
    };
    if ctx.json {
        let mut m = ctx.header("expand");
        m.insert("place".into(), json!(label));
        m.insert("effective_precision".into(), json!(n));
        m.insert("value".into(), json!(series.to_string()));
        Ok((0, Value::Object(m).to_string()))
    } else {
        Ok((0, series.to_string()))
    }
}
