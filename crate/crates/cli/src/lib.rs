//! Command-line front end: argument parsing, dispatch, and JSON or aligned
//! text rendering with fixed exit codes.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logsyn_core::logtc::{default_table_precision, logtc_table};
use logsyn_core::syntomic::{
    default_precision, descent_square_check, nil_invariance_check, render_degrees, run_syntomic, CORNER_NAMES,
};
use logsyn_core::toric::{axes_table, perfection_check, verify_axes_proof_with};
use logsyn_core::witt::ptypical_decomposition;
use logsyn_core::{Check, Error, FinPModule, Status, Summand};
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "logsyn", version, about = "Exact logarithmic syntomic cohomology tables")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Model {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub e: u64,
    #[arg(long)]
    pub i: u64,
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long = "orbit-bound")]
    pub orbit_bound: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Syntomic cohomology of (k[x]/x^e, N) against its closed form.
    Syntomic(Model),
    /// Homotopy groups of log TC over a range of degrees.
    Logtc {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
        /// Inclusive degree range `a..b`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: (i64, i64),
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Rational cartesianness of the descent square.
    Descent {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long = "orbit-bound")]
        orbit_bound: Option<u64>,
    },
    /// Comparison of (k[x]/x^e, N) with (k, N).
    Nilinv {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Syn(i)(k,N) + Syn(i-1)(k,N)[-2].
    Axes {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Fan combinatorics.
    #[command(subcommand)]
    Fan(FanCommand),
    /// Witt vector utilities.
    #[command(subcommand)]
    Witt(WittCommand),
    /// Saturated pushout of perfections of N.
    Perfection {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value_t = 10)]
        b: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FanCommand {
    /// Checklist for the projective-axes fans.
    VerifyAxes {
        /// Extra ray `x,y` of tau'.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_vector, default_value = "-1,1")]
        v: [i64; 2],
    },
}

#[derive(Debug, Subcommand)]
pub enum WittCommand {
    /// p-typical decomposition of bW_m(F_p).
    Decompose {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_vector(s: &str) -> Result<[i64; 2], String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let x = x.trim().parse().map_err(|_| format!("bad coordinate {x:?}"))?;
    let y = y.trim().parse().map_err(|_| format!("bad coordinate {y:?}"))?;
    Ok([x, y])
}

/// Result of one invocation: exit code and the text for stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// A finished command before rendering.
struct Report {
    command: &'static str,
    p: u64,
    e: Option<u64>,
    i: Option<u64>,
    precision: Option<u32>,
    result: Value,
    extra: Vec<(&'static str, Value)>,
    text: String,
    code: i32,
}

impl Report {
    fn pass(&self) -> bool {
        self.code == EXIT_PASS
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("command".into(), json!(self.command));
                obj.insert("p".into(), json!(self.p));
                obj.insert("e".into(), json!(self.e));
                obj.insert("i".into(), json!(self.i));
                obj.insert("precision".into(), json!(self.precision));
                obj.insert("result".into(), self.result.clone());
                obj.insert("pass".into(), json!(self.pass()));
                for (k, v) in &self.extra {
                    obj.insert((*k).into(), v.clone());
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.text.clone();
                let _ = writeln!(s, "{}", if self.pass() { "PASS" } else { "FAIL" });
                s
            }
        }
    }
}

fn factors(m: &FinPModule) -> Value {
    let mut out: Vec<Value> = m.torsion().into_iter().map(|a| json!({"type": "torsion", "exp": a})).collect();
    out.extend((0..m.at_cap_count()).map(|_| json!({"type": "free-at-cap"})));
    Value::Array(out)
}

fn per_degree(degrees: &[FinPModule]) -> Value {
    Value::Array(degrees.iter().map(factors).collect())
}

fn rendered(degrees: &[FinPModule]) -> Value {
    Value::Array(degrees.iter().map(|h| json!(h.describe())).collect())
}

fn module_text(m: &FinPModule) -> String {
    let parts = m.describe();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn summands_text(summands: &[Summand], p: u64) -> String {
    if summands.is_empty() {
        return "0".into();
    }
    summands.iter().map(|s| s.render(p)).collect::<Vec<_>>().join(" + ")
}

fn checks_json(checks: &[Check]) -> Value {
    serde_json::to_value(checks).expect("checks serialize")
}

fn checks_text(out: &mut String, checks: &[Check]) {
    let width = checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    for c in checks {
        let pad = width - c.name.chars().count();
        let _ = writeln!(
            out,
            "  [{}] {}{}  {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            " ".repeat(pad),
            c.detail
        );
    }
}

fn exit_for_error(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) => EXIT_USAGE,
        Error::StabilizationFailure { .. } | Error::PrecisionExhausted { .. } | Error::WeightOverflow { .. } => {
            EXIT_PRECISION
        }
        _ => EXIT_MISMATCH,
    }
}

fn require_prime(p: u64) -> logsyn_core::Result<()> {
    if logsyn_core::padic::is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

fn require_period(e: u64) -> logsyn_core::Result<()> {
    if e == 0 {
        Err(Error::InvalidArgument("e must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn syntomic(m: &Model) -> logsyn_core::Result<Report> {
    require_prime(m.p)?;
    require_period(m.e)?;
    let run = run_syntomic(m.p, m.e, m.i, m.precision, m.orbit_bound)?;
    let code = match run.comparison.status {
        Status::Pass => EXIT_PASS,
        Status::Mismatch => EXIT_MISMATCH,
        Status::PrecisionFailure => EXIT_PRECISION,
    };
    let degrees = &run.result.degrees;
    let mut text = format!(
        "syntomic p={} e={} i={} N={} orbit-bound={}\n",
        run.p, run.e, run.i, run.precision, run.orbit_bound
    );
    let computed: Vec<String> = degrees.iter().map(module_text).collect();
    let width = computed.iter().map(|s| s.len()).max().unwrap_or(1);
    for (d, h) in computed.iter().enumerate() {
        let expected = summands_text(&run.closed_form.in_degree(d as u32), run.p);
        let _ = writeln!(text, "  H^{d}  {h:<width$}  expected {expected}");
    }
    for line in &run.comparison.discrepancies {
        let _ = writeln!(text, "  ! {line}");
    }
    let orbits: Vec<Value> = run
        .result
        .orbits
        .iter()
        .map(|o| json!({"j": o.orbit, "cutoff": o.cutoff, "result": per_degree(&o.degrees)}))
        .collect();
    let closed: Vec<Value> = run
        .closed_form
        .terms
        .iter()
        .map(|(d, s)| json!({"degree": d, "summand": s.to_string(), "expansion": s.render(run.p)}))
        .collect();
    Ok(Report {
        command: "syntomic",
        p: run.p,
        e: Some(run.e),
        i: Some(run.i),
        precision: Some(run.precision),
        result: per_degree(degrees),
        extra: vec![
            ("rendered", rendered(degrees)),
            ("orbit_bound", json!(run.orbit_bound)),
            ("status", serde_json::to_value(run.comparison.status).expect("status serializes")),
            ("closed_form", Value::Array(closed)),
            ("result_next", per_degree(&run.comparison.computed_next)),
            ("discrepancies", json!(run.comparison.discrepancies)),
            ("orbits", Value::Array(orbits)),
        ],
        text,
        code,
    })
}

fn logtc(p: u64, e: u64, range: (i64, i64), precision: Option<u32>) -> logsyn_core::Result<Report> {
    require_prime(p)?;
    require_period(e)?;
    let range = range.0..=range.1;
    let n = precision.unwrap_or_else(|| default_table_precision(p, e, &range));
    let table = logtc_table(e, p, range, n)?;
    let mut text = format!("logtc p={p} e={e} N={n}\n");
    let described: Vec<String> = table.entries.iter().map(|e| summands_text(&e.summands, p)).collect();
    let width = described.iter().map(|s| s.len()).max().unwrap_or(1);
    let mut result = Vec::new();
    for (entry, summands) in table.entries.iter().zip(&described) {
        let _ = writeln!(text, "  pi_{:<3} {summands:<width$}  {}", entry.degree, module_text(&entry.module));
        result.push(json!({
            "degree": entry.degree,
            "summands": entry.summands.iter().map(|s| s.render(p)).collect::<Vec<_>>(),
            "factors": factors(&entry.module),
            "big_witt_length": entry.big_witt_length,
        }));
    }
    Ok(Report {
        command: "logtc",
        p,
        e: Some(e),
        i: None,
        precision: Some(n),
        result: Value::Array(result),
        extra: vec![],
        text,
        code: EXIT_PASS,
    })
}

fn descent(p: u64, i: u64, precision: Option<u32>, orbit_bound: Option<u64>) -> logsyn_core::Result<Report> {
    require_prime(p)?;
    let n = precision.unwrap_or_else(|| default_precision(p, 1, i).max(4));
    let r = descent_square_check(p, i, n, orbit_bound)?;
    let mut text = format!("descent p={p} i={i} N={n} orbit-bound={}\n", r.orbit_bound);
    for (name, degrees) in &r.corners_weight_zero {
        let _ = writeln!(text, "  weight 0 {name:<9} {}", render_degrees(degrees));
    }
    checks_text(&mut text, &r.checks);
    let ring = logsyn_core::ResidueRing::new(p, n)?;
    let total: Vec<FinPModule> = (0..5)
        .map(|d| FinPModule::sum_all(ring, r.orbits.iter().map(|o| &o.total[d])))
        .collect();
    let corners: Vec<Value> = r
        .corners_weight_zero
        .iter()
        .map(|(name, degrees)| json!({"corner": name, "result": per_degree(degrees)}))
        .collect();
    Ok(Report {
        command: "descent",
        p,
        e: None,
        i: Some(i),
        precision: Some(n),
        result: per_degree(&total),
        extra: vec![
            ("orbit_bound", json!(r.orbit_bound)),
            ("corners", json!(CORNER_NAMES)),
            ("corners_weight_zero", Value::Array(corners)),
            (
                "log_fibers_weight_zero",
                Value::Array(r.log_fibers_weight_zero.iter().map(|f| per_degree(f)).collect()),
            ),
            ("checks", checks_json(&r.checks)),
        ],
        text,
        code: if r.pass { EXIT_PASS } else { EXIT_MISMATCH },
    })
}

fn nilinv(p: u64, e: u64, i: u64, precision: Option<u32>) -> logsyn_core::Result<Report> {
    require_prime(p)?;
    require_period(e)?;
    let n = precision.unwrap_or_else(|| default_precision(p, e, i));
    let r = nil_invariance_check(e, p, i, n)?;
    let mut text = format!("nilinv p={p} e={e} i={i} N={n}\n");
    checks_text(&mut text, &r.checks);
    let positive: Vec<Value> = r
        .positive
        .iter()
        .map(|o| json!({"j": o.orbit, "cutoff": o.cutoff, "result": per_degree(&o.degrees)}))
        .collect();
    Ok(Report {
        command: "nilinv",
        p,
        e: Some(e),
        i: Some(i),
        precision: Some(n),
        result: per_degree(&r.weight_zero),
        extra: vec![
            ("weight_zero_reduced", per_degree(&r.weight_zero_reduced)),
            ("positive", Value::Array(positive)),
            ("max_torsion_exponent", json!(r.max_torsion_exponent)),
            ("checks", checks_json(&r.checks)),
        ],
        text,
        code: if r.pass { EXIT_PASS } else { EXIT_MISMATCH },
    })
}

fn axes(p: u64, i: u64, precision: Option<u32>) -> logsyn_core::Result<Report> {
    require_prime(p)?;
    let n = precision.unwrap_or_else(|| default_precision(p, 1, i).max(4));
    let t = axes_table(p, i, n)?;
    let mut text = format!("axes p={p} i={i} N={n}\n");
    for (d, h) in t.computed.iter().enumerate() {
        let terms: Vec<Summand> = t.terms.iter().filter(|(deg, _)| *deg as usize == d).map(|&(_, s)| s).collect();
        let _ = writeln!(text, "  H^{d}  {:<16} expected {}", module_text(h), summands_text(&terms, p));
    }
    let terms: Vec<Value> = t
        .terms
        .iter()
        .map(|(d, s)| json!({"degree": d, "summand": s.render(p)}))
        .collect();
    Ok(Report {
        command: "axes",
        p,
        e: Some(1),
        i: Some(i),
        precision: Some(n),
        result: per_degree(&t.computed),
        extra: vec![("terms", Value::Array(terms)), ("expected", per_degree(&t.expected))],
        text,
        code: if t.pass { EXIT_PASS } else { EXIT_MISMATCH },
    })
}

fn verify_axes(v: [i64; 2]) -> logsyn_core::Result<Report> {
    let r = verify_axes_proof_with(v)?;
    let mut text = format!("fan verify-axes v=({}, {})\n", v[0], v[1]);
    checks_text(&mut text, &r.items);
    Ok(Report {
        command: "fan verify-axes",
        p: 0,
        e: None,
        i: None,
        precision: None,
        result: checks_json(&r.items),
        extra: vec![("v", json!(v))],
        text,
        code: if r.pass { EXIT_PASS } else { EXIT_MISMATCH },
    })
}

fn witt_decompose(p: u64, m: u64) -> logsyn_core::Result<Report> {
    require_prime(p)?;
    let shape = ptypical_decomposition(p, m);
    let text = format!("bW_{m}(F_{p}) = {shape}  total length {}\n", shape.total_length());
    Ok(Report {
        command: "witt decompose",
        p,
        e: None,
        i: None,
        precision: None,
        result: json!(shape.components),
        extra: vec![("m", json!(m)), ("total_length", json!(shape.total_length()))],
        text,
        code: EXIT_PASS,
    })
}

fn perfection(p: u64, k: u32, b: i64) -> logsyn_core::Result<Report> {
    let r = perfection_check(p, k, b)?;
    let text = format!(
        "perfection p={p} K={k} B={b}\n  source {} elements, target {}, pairs {}\n  injective {} surjective {} additive {}\n  (1/p, 0) -> ({}, {})\n",
        r.source_size, r.target_size, r.pairs_checked, r.injective, r.surjective, r.additive, r.sample_image.0, r.sample_image.1
    );
    Ok(Report {
        command: "perfection",
        p,
        e: None,
        i: None,
        precision: None,
        result: serde_json::to_value(&r).expect("report serializes"),
        extra: vec![],
        text,
        code: if r.pass { EXIT_PASS } else { EXIT_MISMATCH },
    })
}

pub fn dispatch(cli: &Cli) -> Outcome {
    let report = match &cli.command {
        Command::Syntomic(m) => syntomic(m),
        Command::Logtc { p, e, range, precision } => logtc(*p, *e, *range, *precision),
        Command::Descent { p, i, precision, orbit_bound } => descent(*p, *i, *precision, *orbit_bound),
        Command::Nilinv { p, e, i, precision } => nilinv(*p, *e, *i, *precision),
        Command::Axes { p, i, precision } => axes(*p, *i, *precision),
        Command::Fan(FanCommand::VerifyAxes { v }) => verify_axes(*v),
        Command::Witt(WittCommand::Decompose { p, m }) => witt_decompose(*p, *m),
        Command::Perfection { p, k, b } => perfection(*p, *k, *b),
    };
    match report {
        Ok(r) => Outcome {
            code: r.code,
            output: r.render(cli.format),
        },
        Err(err) => {
            let code = exit_for_error(&err);
            let output = match cli.format {
                Format::Json => {
                    let v = json!({"error": err.to_string(), "pass": false, "exit_code": code});
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("JSON values serialize"))
                }
                Format::Text => format!("error: {err}\n"),
            };
            Outcome { code, output }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            Outcome {
                code,
                output: err.render().to_string(),
            }
        }
    }
}
