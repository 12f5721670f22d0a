//! The `raag` command line.
//!
//! Exit codes: 0 success, 1 check failures or an internal inconsistency,
//! 2 unreadable or malformed input, 3 a resource cap was exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use raag_core::{parse_graph, Element, Error, Limits, Raag};
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks;
use crate::report::{Document, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "raag", version, about = "Right-angled Artin group toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Commutation graph file (`gens:` line, then `edge:` lines).
    #[arg(short = 'g', long = "graph")]
    pub graph: PathBuf,
    /// Emit a single JSON document instead of text.
    #[arg(long)]
    pub json: bool,
    /// Largest cell that may be enumerated.
    #[arg(long, default_value_t = 20_000, value_parser = positive)]
    pub interval_cap: usize,
    /// Largest set of cyclically reduced conjugates that may be enumerated.
    #[arg(long, default_value_t = 100_000, value_parser = positive)]
    pub conj_cap: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Group law and median geometry.
    Eval {
        op: EvalOp,
        #[command(flatten)]
        common: Common,
        #[arg(allow_negative_numbers = true)]
        words: Vec<String>,
    },
    /// Cyclic reduction, conjugacy, foldings and quasidirections.
    Dyn {
        op: DynOp,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(allow_negative_numbers = true)]
        words: Vec<String>,
    },
    /// Roots, primitive decomposition, centralizers and the center.
    Struct {
        op: StructOp,
        #[command(flatten)]
        common: Common,
        /// Root degree for `root`; without it the maximal root is returned.
        #[arg(long, value_parser = positive)]
        m: Option<usize>,
        #[arg(allow_negative_numbers = true)]
        words: Vec<String>,
    },
    /// Runs a property suite and reports counterexamples.
    Check {
        #[arg(value_parser = suite_name)]
        suite: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000, value_parser = positive)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Worker threads; 0 uses every core. Does not affect the report.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn suite_name(s: &str) -> Result<String, String> {
    if checks::is_suite(s) {
        Ok(s.to_string())
    } else {
        let mut names = vec!["all"];
        names.extend(checks::SUITES);
        names.extend(checks::ORACLE_SUITES);
        Err(format!("unknown suite; expected one of: {}", names.join(", ")))
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalOp {
    Normalize,
    Mul,
    Inv,
    Pow,
    Len,
    Meet,
    Median,
    Join,
    Orth,
    Prefix,
    Interval,
    Boundary,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynOp {
    Cyclred,
    Conj,
    Phi,
    Axis,
    Preceq,
    Sim,
    Equiv,
    Qdir,
    Psi,
    Slice,
    Dirjoin,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructOp {
    Prim,
    Root,
    Decompose,
    Centralizer,
    Center,
    Hbasis,
}

/// A failed invocation.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Group(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Group(Error::Parse(_) | Error::Precondition(_)) => 2,
            Failure::Group(Error::CapExceeded { .. }) => 3,
            Failure::Group(Error::InvariantViolation(_)) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(msg) => f.write_str(msg),
            Failure::Group(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Group(e)
    }
}

/// Output of a successful invocation.
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

/// Parses the process arguments, runs, prints, and maps the exit code.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Eval { op, common, words } => {
            let g = load(&common)?;
            let result = eval(&g, op, &words)?;
            Ok(emit(&common, &format!("eval {}", name(op)), &g, result))
        }
        Command::Dyn { op, common, w, x, a, words } => {
            let g = load(&common)?;
            let result = dynamics(&g, op, w.as_deref(), x.as_deref(), a.as_deref(), &words)?;
            Ok(emit(&common, &format!("dyn {}", name(op)), &g, result))
        }
        Command::Struct { op, common, m, words } => {
            let g = load(&common)?;
            let result = structure(&g, op, m, &words)?;
            Ok(emit(&common, &format!("struct {}", name(op)), &g, result))
        }
        Command::Check { suite, common, seed, samples, max_len, jobs } => {
            let g = load(&common)?;
            let config = RunConfig {
                graph: common.graph.display().to_string(),
                seed,
                samples,
                max_len,
                interval_cap: common.interval_cap,
                conj_cap: common.conj_cap,
            };
            check(&g, &config, &suite, jobs, common.json)
        }
    }
}

fn name<T: ValueEnum>(op: T) -> String {
    op.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn load(common: &Common) -> Result<Raag, Failure> {
    let text = std::fs::read_to_string(&common.graph)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", common.graph.display())))?;
    let graph = parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", common.graph.display())))?;
    Ok(Raag::new(graph).with_limits(Limits {
        interval_cap: common.interval_cap,
        conjugate_cap: common.conj_cap,
        ..Limits::default()
    }))
}

/// A command result: its text form and its JSON form.
pub struct Answer {
    text: String,
    json: Value,
}

impl Answer {
    fn element(g: &Raag, x: &Element) -> Self {
        let s = g.render(x);
        Answer { text: s.clone(), json: Value::String(s) }
    }

    fn boolean(b: bool) -> Self {
        Answer { text: b.to_string(), json: Value::Bool(b) }
    }

    fn elements(g: &Raag, xs: &[Element]) -> Self {
        let words: Vec<String> = xs.iter().map(|x| g.render(x)).collect();
        Answer { text: words.join("\n"), json: json!(words) }
    }
}

fn emit(common: &Common, command: &str, g: &Raag, answer: Answer) -> Output {
    let stdout = if common.json {
        #[derive(Serialize)]
        struct Config<'a> {
            graph: String,
            generators: &'a [String],
            interval_cap: usize,
            conj_cap: usize,
        }
        let config = Config {
            graph: common.graph.display().to_string(),
            generators: g.graph().names(),
            interval_cap: common.interval_cap,
            conj_cap: common.conj_cap,
        };
        let doc = Document { command, config, result: Some(answer.json), report: None };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    } else {
        answer.text + "\n"
    };
    Output { stdout, code: 0 }
}

fn operands<const N: usize>(g: &Raag, words: &[String], usage: &str) -> Result<[Element; N], Failure> {
    if words.len() != N {
        return Err(Failure::Input(format!("expected {N} word(s): {usage}")));
    }
    let mut out = Vec::with_capacity(N);
    for w in words {
        out.push(g.parse(w)?);
    }
    Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
}

fn eval(g: &Raag, op: EvalOp, words: &[String]) -> Result<Answer, Failure> {
    Ok(match op {
        EvalOp::Normalize => {
            let [x] = operands(g, words, "WORD")?;
            Answer::element(g, &x)
        }
        EvalOp::Mul => {
            let parsed = words.iter().map(|w| g.parse(w)).collect::<Result<Vec<_>, _>>()?;
            Answer::element(g, &g.product(&parsed))
        }
        EvalOp::Inv => {
            let [x] = operands(g, words, "WORD")?;
            Answer::element(g, &g.inv(&x))
        }
        EvalOp::Pow => {
            let [w, n] = words else {
                return Err(Failure::Input("expected: WORD EXPONENT".into()));
            };
            let n: i64 = n.parse().map_err(|e| Failure::Input(format!("bad exponent {n:?}: {e}")))?;
            Answer::element(g, &g.pow(&g.parse(w)?, n))
        }
        EvalOp::Len => {
            let [x] = operands(g, words, "WORD")?;
            Answer { text: x.len().to_string(), json: json!(x.len()) }
        }
        EvalOp::Meet => {
            let [x, y] = operands(g, words, "X Y")?;
            Answer::element(g, &g.meet(&x, &y))
        }
        EvalOp::Median => {
            let [x, y, z] = operands(g, words, "X Y Z")?;
            Answer::element(g, &g.median(&x, &y, &z))
        }
        EvalOp::Join => {
            let [x, y] = operands(g, words, "X Y")?;
            match g.join(&x, &y) {
                Some(j) => Answer::element(g, &j),
                None => Answer { text: "none".into(), json: Value::Null },
            }
        }
        EvalOp::Orth => {
            let [x, y] = operands(g, words, "X Y")?;
            Answer::boolean(g.is_orthogonal(&x, &y))
        }
        EvalOp::Prefix => {
            let [x, y] = operands(g, words, "X Y")?;
            Answer::boolean(g.is_prefix(&x, &y))
        }
        EvalOp::Interval => {
            let [x, y] = operands(g, words, "X Y")?;
            Answer::elements(g, &g.interval(&x, &y)?.elements)
        }
        EvalOp::Boundary => {
            let [x, y] = operands(g, words, "X Y")?;
            Answer::elements(g, &g.boundary(&g.interval(&x, &y)?))
        }
    })
}

fn dynamics(
    g: &Raag,
    op: DynOp,
    w: Option<&str>,
    x: Option<&str>,
    a: Option<&str>,
    words: &[String],
) -> Result<Answer, Failure> {
    let mut rest: Vec<String> = x.map(str::to_string).into_iter().collect();
    rest.extend(words.iter().cloned());
    if matches!(op, DynOp::Cyclred | DynOp::Conj) {
        if let Some(w) = w {
            rest.insert(0, w.to_string());
        }
        return Ok(match op {
            DynOp::Cyclred => {
                let [w] = operands(g, &rest, "W")?;
                let c = g.cyclic_reduce(&w);
                let (u, v) = (g.render(&c.conjugator), g.render(&c.core));
                Answer { text: format!("conjugator: {u}\ncore: {v}"), json: json!({"conjugator": u, "core": v}) }
            }
            _ => {
                let [w1, w2] = operands(g, &rest, "W1 W2")?;
                match g.conjugacy_witness(&w1, &w2)? {
                    Some(c) => {
                        let c = g.render(&c.conjugator);
                        Answer {
                            text: format!("true\nconjugator: {c}"),
                            json: json!({"conjugate": true, "conjugator": c}),
                        }
                    }
                    None => Answer { text: "false".into(), json: json!({"conjugate": false, "conjugator": null}) },
                }
            }
        });
    }
    let w = w.ok_or_else(|| Failure::Input("--w is required".into()))?;
    let ctx = g.axis(&g.parse(w)?);
    let base = || -> Result<Element, Failure> {
        let a = a.ok_or_else(|| Failure::Input("--a is required".into()))?;
        Ok(g.parse(a)?)
    };
    Ok(match op {
        DynOp::Phi => {
            let [x] = operands(g, &rest, "X")?;
            Answer::element(g, &ctx.fold_phi(&x))
        }
        DynOp::Axis => {
            let [x] = operands(g, &rest, "X")?;
            Answer::boolean(ctx.in_axis(&x))
        }
        DynOp::Preceq => {
            let [x, y] = operands(g, &rest, "X Y")?;
            Answer::boolean(ctx.preceq(&x, &y))
        }
        DynOp::Sim => {
            let [x, y] = operands(g, &rest, "X Y")?;
            Answer::boolean(ctx.sim(&x, &y))
        }
        DynOp::Equiv => {
            let [x, y] = operands(g, &rest, "X Y")?;
            Answer::boolean(ctx.equiv(&x, &y)?)
        }
        DynOp::Qdir => {
            let [x, y] = operands(g, &rest, "X Y")?;
            Answer::element(g, &ctx.qdir(&x, &y))
        }
        DynOp::Psi => {
            let [x] = operands(g, &rest, "X")?;
            Answer::element(g, &ctx.psi_fold(&base()?, &x)?)
        }
        DynOp::Slice => {
            let [x] = operands(g, &rest, "X")?;
            Answer::boolean(ctx.in_axis_slice(&base()?, &x)?)
        }
        DynOp::Dirjoin => {
            let [x, y] = operands(g, &rest, "X Y")?;
            Answer::element(g, &ctx.dir_join(&base()?, &x, &y))
        }
        DynOp::Cyclred | DynOp::Conj => unreachable!(),
    })
}

fn structure(g: &Raag, op: StructOp, m: Option<usize>, words: &[String]) -> Result<Answer, Failure> {
    if op == StructOp::Center {
        operands::<0>(g, words, "no words")?;
        let names: Vec<&str> = g.center().iter().map(|s| g.graph().name(s)).collect();
        return Ok(Answer { text: names.join(" "), json: json!(names) });
    }
    let [w] = operands(g, words, "W")?;
    Ok(match op {
        StructOp::Prim => Answer::boolean(g.is_primitive(&w)),
        StructOp::Root => match m {
            Some(m) => match g.mth_root(&w, m) {
                Some(r) => Answer::element(g, &r),
                None => Answer { text: "none".into(), json: Value::Null },
            },
            None => {
                let (p, k) = g.max_root(&w)?;
                let p = g.render(&p);
                Answer { text: format!("root: {p}\nexponent: {k}"), json: json!({"root": p, "exponent": k}) }
            }
        },
        StructOp::Decompose => {
            let d = g.prim_decompose(&w)?;
            let conj = g.render(&d.conjugator);
            let mut text = format!("conjugator: {conj}");
            let mut pairs = Vec::new();
            for (p, m) in &d.pairs {
                let p = g.render(p);
                write!(text, "\npair: {p} ^ {m}").unwrap();
                pairs.push(json!({"p": p, "m": m}));
            }
            Answer { text, json: json!({"conjugator": conj, "pairs": pairs}) }
        }
        StructOp::Centralizer => {
            let z = g.centralizer(&w)?;
            let raag: Vec<String> = z.raag_generators.iter().map(|x| g.render(x)).collect();
            let abelian: Vec<String> = z.abelian_generators.iter().map(|x| g.render(x)).collect();
            Answer {
                text: format!("raag: {}\nabelian: {}", raag.join(", "), abelian.join(", ")),
                json: json!({"raag_gens": raag, "abelian_gens": abelian}),
            }
        }
        StructOp::Hbasis => Answer::elements(g, &g.h_basis(&w)?),
        StructOp::Center => unreachable!(),
    })
}

fn check(g: &Raag, config: &RunConfig, suite: &str, jobs: usize, json: bool) -> Result<Output, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Input(format!("cannot start workers: {e}")))?;
    let report = pool
        .install(|| checks::run(g, config, suite))
        .ok_or_else(|| Failure::Input(format!("unknown suite {suite}")))?;
    let code = if report.total_failures == 0 { 0 } else { 1 };
    let stdout = if json {
        let doc: Document<'_, &RunConfig, ()> =
            Document { command: &format!("check {suite}"), config, result: None, report: Some(&report) };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    } else {
        let mut out = String::new();
        for s in &report.suites {
            for c in &s.checks {
                let status = if c.failure_count > 0 { "FAIL" } else { "ok" };
                write!(out, "{status:4} {:40} samples={} failures={}", c.axiom, c.samples, c.failure_count).unwrap();
                if c.inconclusive > 0 {
                    write!(out, " inconclusive={}", c.inconclusive).unwrap();
                }
                out.push('\n');
                for f in &c.failures {
                    writeln!(out, "     counterexample: {}", f.join("; ")).unwrap();
                }
            }
        }
        writeln!(out, "total failures: {}, inconclusive: {}", report.total_failures, report.total_inconclusive)
            .unwrap();
        out
    };
    Ok(Output { stdout, code })
}
