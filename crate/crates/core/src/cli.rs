//! Command-line front end.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::classify::{class_l2_euler, incompressible_classes};
use crate::error::{Error, Result};
use crate::haar::{compare, estimate, MCEstimate};
use crate::ratfunc::{ratio_to_f64, LaurentJson, LaurentSeries, RationalFunction, RationalFunctionJson};
use crate::surface::DEFAULT_BUDGET;
use crate::symgrp::{all_permutations, Partition};
use crate::trace::{chi_max_budgeted, commutator_length, scl_upper, trace_laurent, trace_rational_budgeted};
use crate::weingarten::{wg, wg_perm, wg_table};
use crate::words::{parse, parse_word, WordTuple, GRAMMAR};

pub const BUDGET_ENV: &str = "WORDTRACE_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "wordtrace", version, about = "Exact moments of word measures on the unitary groups")]
#[command(after_help = GRAMMAR)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum number of matchings an enumeration may visit.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Exact rational function Tr(n) and the n from which it is valid.
    Trace { tuple: String },
    /// Laurent expansion by direct enumeration of matchings.
    Laurent {
        tuple: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Maximal Euler characteristic of an admissible surface.
    Chimax { tuple: String },
    /// Commutator length of a single word.
    Cl { word: String },
    /// Upper bound on stable commutator length from power tuples.
    Scl {
        word: String,
        #[arg(long, default_value_t = 1)]
        max_l: usize,
        #[arg(long, default_value_t = 3)]
        max_j: usize,
    },
    /// Incompressible classes of admissible pairs.
    Classify { tuple: String },
    /// L²-Euler characteristic of one incompressible class.
    L2euler {
        tuple: String,
        #[arg(long)]
        class: usize,
    },
    /// Weingarten function Wg_L on a conjugacy class.
    Wg {
        #[arg(long)]
        size: usize,
        /// Cycle type, e.g. 2,1.
        #[arg(long)]
        class: Partition,
    },
    /// Monte-Carlo estimate from Haar-random unitaries.
    Mc {
        tuple: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Golden-value self check.
    Selftest,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceOut {
    pub tuple: String,
    pub value: RationalFunctionJson,
    /// Absent for unbalanced tuples, where the value is 0 for every n.
    pub threshold: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentOut {
    pub tuple: String,
    pub depth: usize,
    pub series: LaurentJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiMaxOut {
    pub tuple: String,
    /// `null` stands for −∞.
    pub chi_max: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClOut {
    pub word: String,
    pub cl: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SclOut {
    pub word: String,
    pub max_l: usize,
    pub max_j: usize,
    pub bound: String,
    pub powers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassOut {
    pub id: usize,
    pub chi: i64,
    /// `(genus, boundary components)` per connected component.
    pub profile: Vec<(usize, usize)>,
    pub vertex_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOut {
    pub tuple: String,
    pub classes: Vec<ClassOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct L2Out {
    pub tuple: String,
    pub class: usize,
    pub chi: i64,
    pub l2_euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WgOut {
    pub size: usize,
    pub class: String,
    pub value: RationalFunctionJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McOut {
    pub tuple: String,
    pub estimate: MCEstimate,
    pub exact: Option<RationalFunctionJson>,
    pub exact_value: Option<f64>,
    pub z: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestOut {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(EXIT_USAGE, text),
            };
        }
    };
    let pool = match cli.global.threads {
        Some(0) => return Outcome::fail(EXIT_USAGE, "error: --threads must be positive\n".into()),
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    pool.install(|| match execute(&cli.command, &cli.global) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => report(e),
    })
}

fn report(e: Error) -> Outcome {
    match e {
        Error::Budget { .. } | Error::CapExceeded { .. } => Outcome::fail(EXIT_BUDGET, format!("error: {e}\n")),
        Error::Syntax { .. } | Error::UnknownGenerator { .. } => {
            Outcome::fail(EXIT_USAGE, format!("error: {e}\n\nword grammar:\n{GRAMMAR}\n"))
        }
        e => Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    }
}

fn render<T: Serialize>(json: bool, value: &T, text: String) -> Result<(i32, String)> {
    if json {
        let s = serde_json::to_string(value).map_err(|e| Error::Invalid(e.to_string()))?;
        Ok((EXIT_OK, s + "\n"))
    } else {
        Ok((EXIT_OK, text + "\n"))
    }
}

/// Text form of a trace result.
pub fn trace_text(out: &TraceOut) -> Result<String> {
    let value = RationalFunction::from_json(&out.value)?;
    Ok(match out.threshold {
        Some(k) => format!("{value}  (valid for n >= {k})"),
        None => value.to_string(),
    })
}

fn execute(cmd: &Command, g: &Global) -> Result<(i32, String)> {
    match cmd {
        Command::Trace { tuple } => {
            let t = parse(tuple)?;
            let v = trace_rational_budgeted(&t, g.budget)?;
            let threshold = t.is_balanced().then_some(v.threshold);
            let out = TraceOut { tuple: tuple.clone(), value: v.value.to_json(), threshold };
            let text = trace_text(&out)?;
            render(g.json, &out, text)
        }
        Command::Laurent { tuple, depth } => {
            let t = parse(tuple)?;
            let s = trace_laurent(&t, *depth, g.budget)?;
            let out = LaurentOut { tuple: tuple.clone(), depth: *depth, series: s.to_json() };
            render(g.json, &out, s.to_string())
        }
        Command::Chimax { tuple } => {
            let t = parse(tuple)?;
            let chi = chi_max_budgeted(&t, g.budget)?;
            let text = chi.map_or_else(|| "-inf".to_string(), |c| c.to_string());
            render(g.json, &ChiMaxOut { tuple: tuple.clone(), chi_max: chi }, text)
        }
        Command::Cl { word } => {
            let w = parse_word(word)?;
            let cl = commutator_length(&w, g.budget)?;
            render(g.json, &ClOut { word: word.clone(), cl }, cl.to_string())
        }
        Command::Scl { word, max_l, max_j } => {
            let w = parse_word(word)?;
            let b = scl_upper(&w, *max_l, *max_j, g.budget)?;
            let powers = b.powers.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(",");
            let text = format!("{}  (attained at powers {powers})", b.value);
            let out = SclOut {
                word: word.clone(),
                max_l: *max_l,
                max_j: *max_j,
                bound: b.value.to_string(),
                powers: b.powers,
            };
            render(g.json, &out, text)
        }
        Command::Classify { tuple } => {
            let t = parse(tuple)?;
            let classes = incompressible_classes(&t, g.budget)?;
            let classes: Vec<ClassOut> = classes
                .into_iter()
                .map(|c| ClassOut { id: c.id, chi: c.chi, profile: c.profile, vertex_count: c.vertex_count })
                .collect();
            let out = ClassifyOut { tuple: tuple.clone(), classes };
            render(g.json, &out, classify_text(&out))
        }
        Command::L2euler { tuple, class } => {
            let t = parse(tuple)?;
            let classes = incompressible_classes(&t, g.budget)?;
            let c = classes.iter().find(|c| c.id == *class).ok_or_else(|| {
                Error::Invalid(format!("no incompressible class {class}; there are {}", classes.len()))
            })?;
            let v = class_l2_euler(&t, c, g.budget)?;
            let out = L2Out { tuple: tuple.clone(), class: *class, chi: c.chi, l2_euler: v };
            render(g.json, &out, v.to_string())
        }
        Command::Wg { size, class } => {
            if class.size() != *size {
                return Err(Error::SizeMismatch(format!("class {class} is not a partition of {size}")));
            }
            let v = wg(*size, class)?;
            let out = WgOut { size: *size, class: class.to_string(), value: v.to_json() };
            render(g.json, &out, v.to_string())
        }
        Command::Mc { tuple, dim, samples, seed } => {
            let t = parse(tuple)?;
            let e = estimate(&t, *dim, *samples, *seed)?;
            let out = mc_out(tuple, &t, e, g.budget)?;
            render(g.json, &out, mc_text(&out))
        }
        Command::Selftest => {
            let out = selftest();
            let code = if out.failed == 0 { EXIT_OK } else { EXIT_USAGE };
            let text = selftest_text(&out);
            render(g.json, &out, text).map(|(_, s)| (code, s))
        }
    }
}

fn classify_text(out: &ClassifyOut) -> String {
    let mut s = format!("{:>4}  {:>5}  {:>8}  profile (genus, boundaries)", "id", "chi", "vertices");
    for c in &out.classes {
        let profile = c.profile.iter().map(|(g, b)| format!("({g},{b})")).collect::<Vec<_>>().join(" ");
        s += &format!("\n{:>4}  {:>5}  {:>8}  {profile}", c.id, c.chi, c.vertex_count);
    }
    s
}

fn mc_out(text: &str, t: &WordTuple, e: MCEstimate, budget: u64) -> Result<McOut> {
    let exact = match trace_rational_budgeted(t, budget) {
        Ok(v) if e.dim >= v.threshold || !t.is_balanced() => Some(v.value),
        Ok(_) | Err(Error::Budget { .. }) => None,
        Err(err) => return Err(err),
    };
    let (exact_value, z) = match &exact {
        Some(r) => match r.evaluate(&BigRational::from_integer(e.dim.into())) {
            Ok(v) => (Some(ratio_to_f64(&v)), Some(compare(&e, r)?)),
            Err(_) => (None, None),
        },
        None => (None, None),
    };
    Ok(McOut { tuple: text.to_string(), estimate: e, exact: exact.map(|r| r.to_json()), exact_value, z })
}

fn mc_text(out: &McOut) -> String {
    let e = &out.estimate;
    let mut s = format!(
        "estimate  {:.6} ± {:.6}  (n = {}, {} samples, seed {}, |imag| {:.2e})",
        e.mean, e.stderr, e.dim, e.samples, e.seed, e.residual
    );
    match (&out.exact, out.exact_value, out.z) {
        (Some(r), Some(v), Some(z)) => {
            let r = RationalFunction::from_json(r).map(|r| r.to_string()).unwrap_or_default();
            s += &format!("\nexact     {v:.6}  = {r} at n = {}\nz-score   {z:.3}", e.dim);
        }
        _ => s += "\nexact     not computed",
    }
    s
}

fn selftest_text(out: &SelftestOut) -> String {
    let mut s = String::new();
    for c in &out.checks {
        let tag = if c.ok { "ok  " } else { "FAIL" };
        s += &format!("{tag}  {}: {}", c.name, c.got);
        if !c.ok {
            s += &format!(" (expected {})", c.expected);
        }
        s.push('\n');
    }
    s += &format!("{} passed, {} failed", out.passed, out.failed);
    s
}

const TRACE_GOLDEN: &[(&str, &str)] = &[
    ("[x,y]", "1/n"),
    ("[x^3,y]", "3/n"),
    ("[x,y]^2", "-4/(n^3 - n)"),
    ("[x,y]^3", "9(n^2 + 4)/(n^5 - 5n^3 + 4n)"),
    ("[x,y][x,z]", "0"),
    ("[x,y][x,z][x,t]", "0"),
    ("x^2y^2, xy^-3x^-3y", "4(n^2 - 5)/(n^4 - 5n^2 + 4)"),
    ("x^2yxY, yXYX^2", "1"),
    ("x^2y^2xY, yXY^2X^2", "(n^4 - 5n^2)/(n^4 - 5n^2 + 4)"),
];

const LAURENT_GOLDEN: &[(&str, i64, &str)] = &[
    ("[x,y]^2", -7, "-4/n^3 - 4/n^5 - 4/n^7 + O(n^-8)"),
    ("[x,y]^3", -7, "9/n^3 + 81/n^5 + 369/n^7 + O(n^-8)"),
    ("x^2y^2, xy^-3x^-3y", -8, "4/n^2 - 16/n^6 - 80/n^8 + O(n^-9)"),
    ("x^2y^2xY, yXY^2X^2", -6, "1 - 4/n^4 - 20/n^6 + O(n^-7)"),
];

const WG_GOLDEN: &[(usize, &str, &str)] = &[
    (1, "1", "1/n"),
    (2, "1,1", "1/(n^2 - 1)"),
    (2, "2", "-1/(n^3 - n)"),
    (3, "1,1,1", "(n^2 - 2)/(n^5 - 5n^3 + 4n)"),
    (3, "2,1", "-1/(n^4 - 5n^2 + 4)"),
    (3, "3", "2/(n^5 - 5n^3 + 4n)"),
];

fn check(name: String, expected: &str, got: Result<String>) -> Check {
    let got = got.unwrap_or_else(|e| format!("error: {e}"));
    Check { ok: got == expected, name, expected: expected.to_string(), got }
}

/// Golden moments, Laurent columns and Weingarten values.
pub fn selftest() -> SelftestOut {
    let mut checks = Vec::new();
    for (tuple, expected) in TRACE_GOLDEN {
        let got = parse(tuple).and_then(|t| trace_rational_budgeted(&t, DEFAULT_BUDGET)).map(|v| v.value.to_string());
        checks.push(check(format!("trace {tuple}"), expected, got));
    }
    for (tuple, floor, expected) in LAURENT_GOLDEN {
        let got = parse(tuple)
            .and_then(|t| trace_rational_budgeted(&t, DEFAULT_BUDGET))
            .map(|v| v.value.laurent(*floor).to_string());
        checks.push(check(format!("laurent {tuple}"), expected, got));
    }
    for (size, class, expected) in WG_GOLDEN {
        let got = class.parse::<Partition>().and_then(|p| wg(*size, &p));
        checks.push(check(format!("wg {size} ({class})"), expected, got.map(|v| v.to_string())));
    }
    for size in 1..=3 {
        let got = wg_table(size, size).map(|table| {
            let agree = all_permutations(size).iter().all(|p| *table.get(p) == wg_perm(p));
            if agree { "agree" } else { "differ" }.to_string()
        });
        checks.push(check(format!("wg {size} characters vs group-ring inverse"), "agree", got));
    }
    let passed = checks.iter().filter(|c| c.ok).count();
    SelftestOut { passed, failed: checks.len() - passed, checks }
}

/// Reads a JSON Laurent result back into its text form.
pub fn laurent_text(out: &LaurentOut) -> Result<String> {
    Ok(LaurentSeries::from_json(&out.series)?.to_string())
}
