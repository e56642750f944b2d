//! Command-line front end. [`run`] takes the argument vector and returns the
//! exit code together with everything that would be printed, so the binary
//! is a thin wrapper and tests can drive commands in-process.
//!
//! Exit codes: 0 success or pass (inconclusive included), 1 a checker
//! reported `fail` or a complex failed validation, 2 usage or input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{
    from_json, homology, parse_rational, random_complex, to_json, FilteredComplex, HomologyClass, Level,
    RandomParams,
};
use crate::error::{Error, Result};
use crate::linalg::Ring;
use crate::quantum_ring::{qadd, qdegree, qinverse, qmul, qpairing, qtau, qvaluation, QuantumClass};
use crate::spectral::{
    check_all, check_coeff_monotone, check_corrected_pd, check_depth_identity, check_field_pd,
    check_prime_envelope, check_refinement, check_tor_lipschitz, check_z_vs_q, describe_class, dual_pairs,
    generator_classes, interleavings, membership_profile, spectral_depth, spectral_invariant, spectral_norm,
    torsion_depth_all, Report, Status, MONOTONE_TARGETS, PD_FIELDS, REFINE_PRIMES,
};

#[derive(Debug, Parser)]
#[command(name = "spectra", version, about = "Spectral invariants of action-filtered chain complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of a table
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Select {
    /// Coefficient ring: Z, Q or Z/m
    #[arg(long)]
    ring: Option<Ring>,
    #[arg(long)]
    degree: Option<i64>,
    /// Filtration level, `p/q` or `inf`
    #[arg(long, default_value = "inf")]
    level: Level,
    /// Chain such as `x=1,w=-2`
    #[arg(long)]
    class: Option<String>,
    /// Chain in the dual complex, e.g. `u*=2,v*=1`
    #[arg(long = "dual-class")]
    dual_class: Option<String>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Inclusive seed range `a..b`
    #[arg(long = "gen-seeds")]
    gen_seeds: Option<SeedRange>,
    #[arg(long, default_value_t = RandomParams::default().max_degree)]
    max_degree: u32,
    #[arg(long, default_value_t = RandomParams::default().gens_per_degree)]
    gens_per_degree: usize,
    #[arg(long, default_value_t = RandomParams::default().action_range)]
    action_range: u32,
    #[arg(long, default_value_t = RandomParams::default().torsion_bias)]
    torsion_bias: f64,
    #[arg(long, default_value_t = RandomParams::default().persistent_torsion)]
    persistent_torsion: f64,
}

impl GenArgs {
    fn params(&self) -> RandomParams {
        RandomParams {
            max_degree: self.max_degree,
            gens_per_degree: self.gens_per_degree,
            action_range: self.action_range,
            torsion_bias: self.torsion_bias,
            persistent_torsion: self.persistent_torsion,
        }
    }

    fn params_json(&self) -> Value {
        json!({
            "max_degree": self.max_degree,
            "gens_per_degree": self.gens_per_degree,
            "action_range": self.action_range,
            "torsion_bias": self.torsion_bias,
            "persistent_torsion": self.persistent_torsion,
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct SeedRange(u64, u64);

impl FromStr for SeedRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("not a seed: `{t}`"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if a > b {
            return Err(format!("empty seed range `{s}`"));
        }
        Ok(SeedRange(a, b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    CoeffMono,
    Zq,
    PdField,
    PdZ,
    Primes,
    Refine,
    DepthId,
    Lipschitz,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QOp {
    Normal,
    Add,
    Mul,
    Tau,
    Pair,
    Degree,
    Valuation,
    Inverse,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the complex invariants of a file
    Validate { file: PathBuf },
    /// Homology groups with generating cycles
    Homology {
        file: PathBuf,
        #[command(flatten)]
        sel: Select,
    },
    /// Spectral invariant of a class of the full complex
    Spectral {
        file: PathBuf,
        #[command(flatten)]
        sel: Select,
    },
    /// Spectral depth of an integral class, or the torsion depth table
    Depth {
        file: PathBuf,
        #[command(flatten)]
        sel: Select,
    },
    /// The dual complex
    Dual { file: PathBuf },
    /// Spectral norm of a class and a dual class
    Gamma {
        file: PathBuf,
        #[command(flatten)]
        sel: Select,
    },
    /// Run a checker on a file or on generated complexes
    Check {
        #[arg(value_enum)]
        which: CheckKind,
        file: Option<PathBuf>,
        #[command(flatten)]
        sel: Select,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Generate a random valid complex
    Gen {
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Arithmetic in the quantum ring of CP^n
    Qring {
        #[arg(value_enum)]
        op: QOp,
        a: String,
        b: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value = "Q")]
        ring: Ring,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: msg }
    }
}

/// What a command produced before rendering.
enum Output {
    Reports(Vec<Report>, Option<String>),
    Text(String),
}

fn field_err(field: &str, e: impl std::fmt::Display) -> Error {
    Error::Input { field: field.into(), message: e.to_string() }
}

fn load(path: &Path) -> Result<FilteredComplex> {
    let text = std::fs::read_to_string(path).map_err(|e| field_err(&path.display().to_string(), e))?;
    from_json(&text).map_err(|e| field_err(&path.display().to_string(), e))
}

fn load_valid(path: &Path) -> Result<FilteredComplex> {
    let c = load(path)?;
    c.ensure_valid().map_err(|e| field_err(&path.display().to_string(), e))?;
    Ok(c)
}

/// Resolves a selector `id=coef,...` to the homology class of that chain at
/// `level`. All ids must share one degree.
pub fn resolve_class(
    c: &FilteredComplex,
    expr: &str,
    ring: Ring,
    degree: Option<i64>,
    level: &Level,
) -> Result<HomologyClass> {
    let mut terms = Vec::new();
    for part in expr.split(',').map(str::trim).filter(|p| !p.is_empty() && *p != "0") {
        let (id, coef) = part.split_once('=').unwrap_or((part, "1"));
        let i = c.index_of(id.trim()).ok_or_else(|| Error::UnknownGenerator(id.trim().to_string()))?;
        terms.push((i, parse_rational(coef)?));
    }
    let mut k = degree;
    for &(i, _) in &terms {
        let d = c.generators()[i].degree;
        match k {
            Some(k) if k != d => {
                return Err(Error::ClassMismatch(format!(
                    "`{}` has degree {d}, expected {k}",
                    c.generators()[i].id
                )))
            }
            _ => k = Some(d),
        }
    }
    let k = k.ok_or_else(|| field_err("--class", "an empty chain needs --degree"))?;
    let mut chain = vec![BigRational::zero(); c.in_degree(k).len()];
    for (i, v) in terms {
        chain[c.position(i)] += v;
    }
    homology(c, ring, k, level).class_of_chain(&chain).map_err(|e| match e {
        Error::NotACycle(_) => {
            let d = c.boundary_matrix(k).to_rational().mul_vec(&chain);
            Error::NotACycle(c.format_chain(k - 1, &d))
        }
        e => e,
    })
}

fn class_arg(
    c: &FilteredComplex,
    field: &str,
    expr: Option<&String>,
    ring: Ring,
    sel: &Select,
) -> Result<Option<HomologyClass>> {
    expr.map(|e| resolve_class(c, e, ring, sel.degree, &Level::Infinite).map_err(|err| field_err(field, err)))
        .transpose()
}

fn required<T>(x: Option<T>, field: &str) -> Result<T> {
    x.ok_or_else(|| field_err(field, "required"))
}

fn report(check: &str, inputs: Value, values: Value) -> Report {
    Report { check: check.into(), inputs, status: Status::Pass, witness: json!({}), values }
}

fn file_input(path: &Path) -> Value {
    json!({ "file": path.display().to_string() })
}

fn cmd_validate(file: &Path) -> Result<Output> {
    let c = load(file)?;
    let violations: Vec<String> = c.validate().iter().map(ToString::to_string).collect();
    let mut r = report(
        "validate",
        file_input(file),
        json!({ "generators": c.len(), "top_degree": c.top_degree(), "violations": violations }),
    );
    let table = if violations.is_empty() {
        "ok".to_string()
    } else {
        r.status = Status::Fail;
        violations.join("\n")
    };
    Ok(Output::Reports(vec![r], Some(table)))
}

fn cmd_homology(file: &Path, sel: &Select) -> Result<Output> {
    let c = load_valid(file)?;
    let ring = sel.ring.unwrap_or(Ring::Integers);
    let degrees: Vec<i64> = match sel.degree {
        Some(k) => vec![k],
        None => c.degrees().collect(),
    };
    let mut rows = Vec::new();
    let mut table = String::new();
    for k in degrees {
        let h = homology(&c, ring, k, &sel.level);
        let gens: Vec<String> = (0..h.ngens())
            .map(|j| {
                let z: Vec<BigRational> = h.lifts().column(j).into_iter().map(BigRational::from_integer).collect();
                c.format_chain(k, &z)
            })
            .collect();
        let group = h.group().normal_form().to_string();
        let _ = writeln!(table, "H_{k} = {group}    generators: {}", if gens.is_empty() { "-".into() } else { gens.join("; ") });
        rows.push(json!({ "degree": k, "group": group, "generators": gens }));
    }
    let inputs = json!({ "file": file.display().to_string(), "ring": ring.to_string(), "level": sel.level.to_string() });
    Ok(Output::Reports(vec![report("homology", inputs, json!({ "degrees": rows }))], Some(table.trim_end().into())))
}

fn cmd_spectral(file: &Path, sel: &Select) -> Result<Output> {
    let c = load_valid(file)?;
    let ring = sel.ring.unwrap_or(Ring::Integers);
    let a = required(class_arg(&c, "--class", sel.class.as_ref(), ring, sel)?, "--class")?;
    let v = spectral_invariant(&c, &a)?;
    let profile: Vec<Value> = membership_profile(&c, &a)
        .map(|p| p.iter().map(|(t, m)| json!([t.to_string(), m])).collect())
        .unwrap_or_default();
    let mut r = report("spectral", json!({ "file": file.display().to_string(), "class": describe_class(&c, &a) }), json!({ "c": v.to_string() }));
    r.witness = json!({ "membership": profile });
    Ok(Output::Reports(vec![r], Some(format!("c = {v}"))))
}

fn cmd_depth(file: &Path, sel: &Select) -> Result<Output> {
    let c = load_valid(file)?;
    if let Some(a) = class_arg(&c, "--class", sel.class.as_ref(), Ring::Integers, sel)? {
        let d = spectral_depth(&c, &a)?;
        let witness = d.witness.as_ref().map_or("none".to_string(), ToString::to_string);
        let values = json!({
            "beta_spec": d.beta.to_string(),
            "c_z": d.c_z.to_string(),
            "c_q": d.c_q.to_string(),
            "witness": witness,
            "bound": d.bound.to_string(),
        });
        let table = format!(
            "beta_spec = {} (c_Z = {}, c_Q = {}, witness k = {}, bound = {})",
            d.beta, d.c_z, d.c_q, witness, d.bound
        );
        let inputs = json!({ "file": file.display().to_string(), "class": describe_class(&c, &a) });
        return Ok(Output::Reports(vec![report("depth", inputs, values)], Some(table)));
    }
    let (beta, table) = torsion_depth_all(&c);
    let mut text = format!("beta_tor = {beta}");
    let rows: Vec<Value> = table
        .iter()
        .map(|t| {
            let _ = write!(text, "\nbeta_{},tor = {}", t.degree, t.beta);
            json!({
                "degree": t.degree,
                "beta": t.beta.to_string(),
                "settle": t.settle.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let values = json!({ "beta_tor": beta.to_string(), "degrees": rows });
    Ok(Output::Reports(vec![report("depth", file_input(file), values)], Some(text)))
}

fn cmd_gamma(file: &Path, sel: &Select) -> Result<Output> {
    let c = load_valid(file)?;
    let ring = sel.ring.unwrap_or(Ring::Integers);
    let dual = c.dual();
    let a = required(class_arg(&c, "--class", sel.class.as_ref(), ring, sel)?, "--class")?;
    let b = required(
        sel.dual_class
            .as_ref()
            .map(|e| resolve_class(&dual, e, ring, None, &Level::Infinite).map_err(|err| field_err("--dual-class", err)))
            .transpose()?,
        "--dual-class",
    )?;
    let g = spectral_norm(&c, &a, &b)?;
    let ca = spectral_invariant(&c, &a)?;
    let cb = spectral_invariant(&dual, &b)?;
    let inputs = json!({
        "file": file.display().to_string(),
        "class": describe_class(&c, &a),
        "dual_class": describe_class(&dual, &b),
    });
    let values = json!({ "gamma": g.to_string(), "c": ca.to_string(), "c_dual": cb.to_string() });
    Ok(Output::Reports(vec![report("gamma", inputs, values)], Some(format!("gamma = {g} (c = {ca}, c_dual = {cb})"))))
}

/// All reports of one checker on one complex.
fn check_one(c: &FilteredComplex, which: CheckKind, sel: &Select, source: &Value) -> Result<Vec<Report>> {
    let dual = c.dual();
    let z = |expr: Option<&String>, cx: &FilteredComplex, field: &str| -> Result<Option<HomologyClass>> {
        expr.map(|e| resolve_class(cx, e, Ring::Integers, None, &Level::Infinite).map_err(|err| field_err(field, err)))
            .transpose()
    };
    let z_classes = |cx: &FilteredComplex, expr: Option<&String>, field: &str| -> Result<Vec<HomologyClass>> {
        Ok(match z(expr, cx, field)? {
            Some(a) => vec![a],
            None => generator_classes(cx, Ring::Integers),
        })
    };
    let mut out = Vec::new();
    match which {
        CheckKind::All => out.push(check_all(c, source.clone())?),
        CheckKind::CoeffMono => {
            let targets: Vec<Ring> = match sel.ring {
                Some(r) if r != Ring::Integers => vec![r],
                _ => MONOTONE_TARGETS.to_vec(),
            };
            for a in z_classes(c, sel.class.as_ref(), "--class")? {
                for &t in &targets {
                    out.push(check_coeff_monotone(c, &a, t)?);
                }
            }
        }
        CheckKind::Zq => {
            for a in z_classes(c, sel.class.as_ref(), "--class")? {
                out.push(check_z_vs_q(c, &a)?);
            }
        }
        CheckKind::Primes => {
            for a in z_classes(c, sel.class.as_ref(), "--class")? {
                out.push(check_prime_envelope(c, &a)?);
            }
        }
        CheckKind::Refine => {
            let primes: Vec<u64> = match sel.ring {
                Some(Ring::IntegersMod(p)) => vec![p],
                _ => REFINE_PRIMES.to_vec(),
            };
            for a in z_classes(c, sel.class.as_ref(), "--class")? {
                for &p in &primes {
                    out.push(check_refinement(c, &a, p)?);
                }
            }
        }
        CheckKind::PdField => {
            let fields: Vec<Ring> = match sel.ring {
                Some(r) => vec![r],
                None => PD_FIELDS.to_vec(),
            };
            for f in fields {
                let classes = match &sel.dual_class {
                    Some(e) => vec![resolve_class(&dual, e, f, None, &Level::Infinite)
                        .map_err(|err| field_err("--dual-class", err))?],
                    None => generator_classes(&dual, f),
                };
                for a in classes {
                    out.push(check_field_pd(c, &a)?);
                }
            }
        }
        CheckKind::PdZ => {
            for a in z_classes(&dual, sel.dual_class.as_ref(), "--dual-class")? {
                out.push(check_corrected_pd(c, &a)?);
            }
        }
        CheckKind::DepthId => {
            let pairs = match (z(sel.class.as_ref(), c, "--class")?, z(sel.dual_class.as_ref(), &dual, "--dual-class")?) {
                (Some(a), Some(b)) => vec![(a, b)],
                (None, None) => dual_pairs(c),
                _ => return Err(field_err("--dual-class", "--class and --dual-class go together")),
            };
            for (a, b) in pairs {
                out.push(check_depth_identity(c, &a, &b)?);
            }
        }
        CheckKind::Lipschitz => {
            for i in interleavings(c) {
                out.push(check_tor_lipschitz(&i)?);
            }
        }
    }
    if which != CheckKind::All {
        for r in &mut out {
            if let Value::Object(m) = &mut r.inputs {
                m.insert("source".into(), source.clone());
            }
        }
    }
    Ok(out)
}

fn seeds(gen: &GenArgs) -> Option<Vec<u64>> {
    match (gen.gen_seeds, gen.seed) {
        (Some(SeedRange(a, b)), _) => Some((a..=b).collect()),
        (None, Some(s)) => Some(vec![s]),
        (None, None) => None,
    }
}

/// Runs `f` on a pool capped by `SPECTRA_THREADS` when that is set.
fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var("SPECTRA_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok());
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn cmd_check(which: CheckKind, file: Option<&PathBuf>, sel: &Select, gen: &GenArgs) -> Result<Output> {
    let reports = match (file, seeds(gen)) {
        (Some(path), None) => check_one(&load_valid(path)?, which, sel, &file_input(path))?,
        (None, Some(list)) => {
            let params = gen.params();
            let per_seed: Vec<Result<Vec<Report>>> = with_pool(|| {
                list.par_iter()
                    .map(|&s| {
                        let c = random_complex(s, &params);
                        check_one(&c, which, sel, &json!({ "seed": s, "params": gen.params_json() }))
                    })
                    .collect()
            });
            let mut all = Vec::new();
            for r in per_seed {
                all.extend(r?);
            }
            all
        }
        (Some(_), Some(_)) => return Err(field_err("--gen-seeds", "give either a file or seeds, not both")),
        (None, None) => return Err(field_err("file", "check needs a file or --seed/--gen-seeds")),
    };
    Ok(Output::Reports(reports, None))
}

fn cmd_gen(gen: &GenArgs) -> Result<Output> {
    if gen.gen_seeds.is_some() {
        return Err(field_err("--gen-seeds", "gen writes one complex, use --seed"));
    }
    Ok(Output::Text(to_json(&random_complex(gen.seed.unwrap_or(0), &gen.params()))))
}

fn cmd_qring(op: QOp, a: &str, b: Option<&String>, n: u32, ring: Ring) -> Result<Output> {
    let qa = QuantumClass::parse(a, n, ring)?;
    let qb = || -> Result<QuantumClass> {
        let b = required(b, "second operand")?;
        QuantumClass::parse(b, n, ring)
    };
    let result = match op {
        QOp::Normal => qa.to_string(),
        QOp::Add => qadd(&qa, &qb()?)?.to_string(),
        QOp::Mul => qmul(&qa, &qb()?)?.to_string(),
        QOp::Tau => qtau(&qa).to_string(),
        QOp::Pair => qpairing(&qa, &qb()?)?.to_string(),
        QOp::Degree => qdegree(&qa).map_or("none".into(), |d| d.to_string()),
        QOp::Valuation => qvaluation(&qa)?.to_string(),
        QOp::Inverse => qinverse(&qa)?.to_string(),
    };
    let op_name = format!("{op:?}").to_lowercase();
    let inputs = json!({ "op": op_name, "n": n, "ring": ring.to_string(), "a": a, "b": b });
    Ok(Output::Reports(vec![report("qring", inputs, json!({ "result": result }))], Some(result)))
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One block per report: header line, then `key: value` for each value.
pub fn render_table(reports: &[Report]) -> String {
    let mut s = String::new();
    for r in reports {
        let source = r.inputs.get("source").or(Some(&r.inputs)).map(|v| {
            v.get("seed").map(|x| format!("seed {x}")).or_else(|| v.get("file").map(render_value))
        });
        let _ = writeln!(s, "{} {} {}", r.check, r.status, source.flatten().unwrap_or_default());
        if let Value::Object(m) = &r.values {
            for (k, v) in m {
                let _ = writeln!(s, "  {k}: {}", render_value(v));
            }
        }
        if r.status == Status::Fail {
            let _ = writeln!(s, "  witness: {}", r.witness);
        }
    }
    s
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Homology { file, sel } => cmd_homology(file, sel),
        Command::Spectral { file, sel } => cmd_spectral(file, sel),
        Command::Depth { file, sel } => cmd_depth(file, sel),
        Command::Dual { file } => Ok(Output::Text(to_json(&load_valid(file)?.dual()))),
        Command::Gamma { file, sel } => cmd_gamma(file, sel),
        Command::Check { which, file, sel, gen } => cmd_check(*which, file.as_ref(), sel, gen),
        Command::Gen { gen } => cmd_gen(gen),
        Command::Qring { op, a, b, n, ring } => cmd_qring(*op, a, b.as_ref(), *n, *ring),
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let output = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    let (code, text) = match output {
        Output::Text(t) => (0, t),
        Output::Reports(reports, table) => {
            let code = if reports.iter().any(|r| r.status == Status::Fail) { 1 } else { 0 };
            let text = if cli.json {
                reports.iter().map(|r| serde_json::to_string(r).expect("reports serialize") + "\n").collect()
            } else {
                match table {
                    Some(t) => t + "\n",
                    None => render_table(&reports),
                }
            };
            (code, text)
        }
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome::usage(format!("error: --out {}: {e}\n", path.display())),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}
