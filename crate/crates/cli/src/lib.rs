//! `ivp` command-line front end. [`run`] does all the work and returns the
//! exit code with the text to print, so it can be tested without a process.

pub mod parse;

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use ivp_core::{
    canonicalize, delta, factor, fixed_divisor, is_integer_valued, is_irreducible,
    oracle_is_irreducible, splits, CanonicalIvp, DSequence, DegreeVector, IntPoly,
    LatticePoint, MembershipReport, PiSequence, PointSet, PointSource, Prime, Verdict,
    VerdictReason,
};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use parse::{default_box, parse_degree_vector, parse_points, parse_poly, parse_set, ParseError};

/// Exit code for a definite answer.
pub const EXIT_OK: i32 = 0;
/// Exit code for usage, parse and input errors.
pub const EXIT_ERROR: i32 = 1;
/// Exit code when a search limit prevented an answer.
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ivp",
    version,
    about = "Integer-valued polynomials on subsets of Z^n: sequences, membership, fixed divisors, irreducibility"
)]
struct Cli {
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for candidate searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct SetArgs {
    /// Point set: Z^2, Zx{0,1,2}, {(0,0),(1,0)}; optional "box=N" suffix.
    #[arg(long, default_value = "Z^2")]
    set: String,
    /// Initial search half-width (overrides box= and IVP_DEFAULT_BOX).
    #[arg(long = "box")]
    box_bound: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a π_m-, d_m- or unisolvent sequence.
    Seq {
        #[command(flatten)]
        set: SetArgs,
        /// Degree vector, e.g. "2,4" or "inf,inf".
        #[arg(long)]
        m: String,
        /// Number of points (default: size of the m-restricted basis).
        #[arg(long)]
        count: Option<usize>,
        /// Build a π_m-sequence for this prime.
        #[arg(long, conflicts_with = "d")]
        pi: Option<String>,
        /// Build a d_m-sequence for this integer.
        #[arg(long)]
        d: Option<String>,
    },
    /// Evaluate Δ_m at a list of points.
    Delta {
        #[arg(long)]
        m: String,
        /// Points, e.g. "(0,0),(1,0),(0,1)".
        #[arg(long)]
        points: String,
    },
    /// Decide whether f is integer-valued on S.
    Member {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Fixed divisor of the numerator of f on S.
    Fixdiv {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Factor an integer polynomial over Z.
    Factor {
        #[arg(long)]
        poly: String,
    },
    /// Decide irreducibility of f in Int(S, Z) with a per-split analysis.
    Irreducible {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Brute-force irreducibility decision (small inputs only).
    Oracle {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        set: SetArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Seq { .. } => "seq",
            Command::Delta { .. } => "delta",
            Command::Member { .. } => "member",
            Command::Fixdiv { .. } => "fixdiv",
            Command::Factor { .. } => "factor",
            Command::Irreducible { .. } => "irreducible",
            Command::Oracle { .. } => "oracle",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Parse(ParseError),
    Usage(String),
    Core(ivp_core::Error),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<ivp_core::Error> for CliError {
    fn from(e: ivp_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_inconclusive() => EXIT_INCONCLUSIVE,
            _ => EXIT_ERROR,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(e) => e.to_string(),
            CliError::Usage(s) => s.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

struct Report {
    inputs: Value,
    result: Value,
    certificates: Vec<Value>,
    warnings: Vec<String>,
    text: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let name = cli.command.name();
    let json_mode = cli.json;
    let result = match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(CliError::Usage(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(&cli.command),
    };
    match result {
        Ok(r) => {
            let stdout = if json_mode {
                let v = json!({
                    "command": name,
                    "inputs": r.inputs,
                    "result": r.result,
                    "certificates": r.certificates,
                    "warnings": r.warnings,
                });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            } else {
                let mut t = r.text;
                for w in &r.warnings {
                    let _ = writeln!(t, "warning: {w}");
                }
                t
            };
            Outcome {
                code: EXIT_OK,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = e.code();
            let msg = e.message();
            if json_mode {
                let v = json!({
                    "command": name,
                    "error": msg,
                    "inconclusive": code == EXIT_INCONCLUSIVE,
                });
                Outcome {
                    code,
                    stdout: format!("{}\n", serde_json::to_string_pretty(&v).expect("json")),
                    stderr: String::new(),
                }
            } else {
                let label = if code == EXIT_INCONCLUSIVE { "inconclusive" } else { "error" };
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("{label}: {msg}\n"),
                }
            }
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Seq { set, m, count, pi, d } => cmd_seq(set, m, *count, pi.as_deref(), d.as_deref()),
        Command::Delta { m, points } => cmd_delta(m, points),
        Command::Member { poly, set } => cmd_member(poly, set),
        Command::Fixdiv { poly, set } => cmd_fixdiv(poly, set),
        Command::Factor { poly } => cmd_factor(poly),
        Command::Irreducible { poly, set } => cmd_irreducible(poly, set),
        Command::Oracle { poly, set } => cmd_oracle(poly, set),
    }
}

fn load_set(args: &SetArgs) -> Result<PointSet, CliError> {
    let set = parse_set(&args.set, default_box()?)?;
    Ok(match args.box_bound {
        Some(0) => return Err(CliError::Usage("--box must be positive".into())),
        Some(b) => set.with_box(b),
        None => set,
    })
}

fn load_ivp(poly: &str, set: &PointSet) -> Result<CanonicalIvp, CliError> {
    let p = parse_poly(poly, set.nvars())?;
    if p.nvars() != set.nvars() {
        return Err(ivp_core::Error::ArityMismatch(p.nvars(), set.nvars()).into());
    }
    Ok(canonicalize(&p)?)
}

fn points_json(points: &[LatticePoint]) -> Value {
    Value::Array(points.iter().map(|p| Value::String(p.to_string())).collect())
}

fn set_inputs(set: &PointSet) -> Value {
    json!({ "set": set.to_string(), "nvars": set.nvars() })
}

fn pi_certificates(seq: &PiSequence) -> Vec<Value> {
    let prime = seq.prime.as_ref().map(|p| p.value().to_string());
    seq.certificates
        .iter()
        .map(|c| {
            json!({
                "kind": "greedy-step",
                "prime": prime,
                "step": c.step,
                "min_valuation": c.min_valuation,
                "box_bound": c.box_bound,
                "candidates": c.candidates,
                "residue_complete": c.residue_complete,
            })
        })
        .collect()
}

fn pi_json(seq: &PiSequence) -> Value {
    json!({
        "prime": seq.prime.as_ref().map(|p| p.value().to_string()),
        "m": seq.m.to_string(),
        "points": points_json(&seq.points),
        "step_valuations": seq.step_valuations,
        "deltas": seq.deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "requested": seq.requested,
        "exhausted": seq.exhausted.as_ref().map(|e| format!("{e:?}")),
    })
}

fn d_json(seq: &DSequence) -> Value {
    json!({
        "d": seq.d.to_string(),
        "m": seq.m.to_string(),
        "points": points_json(&seq.points),
        "shared": seq.shared,
        "moduli": seq.moduli.iter().map(|(p, e, t)| json!({
            "prime": p.value().to_string(), "e": e, "exponent": t,
        })).collect::<Vec<_>>(),
        "sources": seq.sources.iter().map(pi_json).collect::<Vec<_>>(),
        "target_length": seq.target_length,
        "exhaustion": seq.exhaustion_message(),
    })
}

fn resolve_count(m: &DegreeVector, count: Option<usize>) -> Result<usize, CliError> {
    match count {
        Some(0) => Err(CliError::Usage("--count must be at least 1".into())),
        Some(c) => Ok(c),
        None => match m.basis_size() {
            Some(n) if n <= 1 << 16 => Ok(n as usize),
            Some(n) => Err(CliError::Usage(format!(
                "the m-restricted basis has {n} monomials; pass --count"
            ))),
            None => Err(CliError::Usage("--count is required when m has an inf component".into())),
        },
    }
}

fn parse_bigint(flag: &str, s: &str) -> Result<BigInt, CliError> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| CliError::Usage(format!("{flag} expects an integer, got '{s}'")))
}

fn cmd_seq(
    set_args: &SetArgs,
    m: &str,
    count: Option<usize>,
    pi: Option<&str>,
    d: Option<&str>,
) -> Result<Report, CliError> {
    let set = load_set(set_args)?;
    let m = parse_degree_vector(m)?;
    let count = resolve_count(&m, count)?;
    let mut text = String::new();
    let mut warnings = Vec::new();
    if let Some(p) = pi {
        let prime = Prime::new(parse_bigint("--pi", p)?)?;
        let seq = ivp_core::build_pi_sequence(&set, &prime, &m, count)?;
        let _ = writeln!(text, "{}_{}-sequence on {}", prime.value(), m, set);
        for (i, p) in seq.points.iter().enumerate() {
            let _ = writeln!(
                text,
                "  u_{i} = {p}    v(Delta) = {}    Delta = {}",
                seq.step_valuations[i], seq.deltas[i]
            );
        }
        if let Some(why) = &seq.exhausted {
            warnings.push(format!("term {} does not exist: {why:?}", seq.len()));
        }
        return Ok(Report {
            inputs: json!({ "set": set.to_string(), "m": m.to_string(), "count": count, "pi": prime.value().to_string() }),
            result: pi_json(&seq),
            certificates: pi_certificates(&seq),
            warnings,
            text,
        });
    }
    let d = match d {
        Some(s) => parse_bigint("--d", s)?,
        None => BigInt::one(),
    };
    let seq = ivp_core::build_d_sequence(&set, &d, &m, count)?;
    let _ = writeln!(text, "d_{}-sequence for d = {} on {}", m, seq.d, set);
    for (i, p) in seq.points.iter().enumerate() {
        let note = if seq.shared[i] { "" } else { "    (CRT)" };
        let _ = writeln!(text, "  a_{i} = {p}{note}");
    }
    for ((p, e, t), src) in seq.moduli.iter().zip(&seq.sources) {
        let _ = writeln!(
            text,
            "  {}-sequence: {}    e = {e}, modulus {}^{t}",
            p.value(),
            src,
            p.value()
        );
    }
    if let Some(msg) = seq.exhaustion_message() {
        warnings.push(msg);
    }
    let certificates = seq.sources.iter().flat_map(pi_certificates).collect();
    Ok(Report {
        inputs: json!({ "set": set.to_string(), "m": m.to_string(), "count": count, "d": seq.d.to_string() }),
        result: d_json(&seq),
        certificates,
        warnings,
        text,
    })
}

fn cmd_delta(m: &str, points: &str) -> Result<Report, CliError> {
    let m = parse_degree_vector(m)?;
    let pts = parse_points(points)?;
    if let Some(p) = pts.iter().find(|p| p.nvars() != m.nvars()) {
        return Err(ivp_core::Error::ArityMismatch(m.nvars(), p.nvars()).into());
    }
    let value = delta(&m, &pts)?;
    Ok(Report {
        inputs: json!({ "m": m.to_string(), "points": points_json(&pts) }),
        result: json!({ "delta": value.to_string() }),
        certificates: Vec::new(),
        warnings: Vec::new(),
        text: format!("Delta_{m} = {value}\n"),
    })
}

fn source_name(s: &PointSource) -> &'static str {
    match s {
        PointSource::Trivial => "trivial",
        PointSource::Sequence => "sequence",
        PointSource::Direct => "direct",
    }
}

fn membership_json(r: &MembershipReport) -> Value {
    json!({
        "member": r.is_member,
        "source": source_name(&r.source),
        "checked_points": points_json(&r.checked_points),
        "witness": r.witness.as_ref().map(|(p, v)| json!({ "point": p.to_string(), "value": v.to_string() })),
    })
}

fn cmd_member(poly: &str, set_args: &SetArgs) -> Result<Report, CliError> {
    let set = load_set(set_args)?;
    let f = load_ivp(poly, &set)?;
    let r = is_integer_valued(&f, &set)?;
    let mut text = format!("f = {f}\nS = {set}\n");
    let _ = writeln!(text, "integer-valued: {}", if r.is_member { "yes" } else { "no" });
    let _ = writeln!(
        text,
        "checked {} point(s) ({})",
        r.checked_points.len(),
        source_name(&r.source)
    );
    if let Some((p, v)) = &r.witness {
        let _ = writeln!(text, "witness: f{p} = {v}");
    }
    let mut inputs = set_inputs(&set);
    inputs["poly"] = json!(f.to_string());
    Ok(Report {
        inputs,
        result: membership_json(&r),
        certificates: Vec::new(),
        warnings: Vec::new(),
        text,
    })
}

fn cmd_fixdiv(poly: &str, set_args: &SetArgs) -> Result<Report, CliError> {
    let set = load_set(set_args)?;
    let f = load_ivp(poly, &set)?;
    let fd = fixed_divisor(&f.g, &set)?;
    let mut text = format!("g = {}\nS = {set}\nfixed divisor of g: {fd}\n", f.g);
    let mut result = json!({
        "numerator": f.g.to_string(),
        "denominator": f.d.to_string(),
        "fixed_divisor": fd.to_string(),
    });
    if !f.d.is_one() {
        let member = (&fd % &f.d) == BigInt::from(0);
        let _ = writeln!(text, "denominator d = {}", f.d);
        let _ = writeln!(text, "f = g/d integer-valued: {}", if member { "yes" } else { "no" });
        result["member"] = json!(member);
        if member {
            let _ = writeln!(text, "image-primitive: {}", if fd == f.d { "yes" } else { "no" });
            result["image_primitive"] = json!(fd == f.d);
        }
    } else {
        result["image_primitive"] = json!(fd.is_one());
        let _ = writeln!(text, "image-primitive: {}", if fd.is_one() { "yes" } else { "no" });
    }
    let mut inputs = set_inputs(&set);
    inputs["poly"] = json!(f.to_string());
    Ok(Report {
        inputs,
        result,
        certificates: Vec::new(),
        warnings: Vec::new(),
        text,
    })
}

fn cmd_factor(poly: &str) -> Result<Report, CliError> {
    let p = parse_poly(poly, 0)?;
    let f = canonicalize(&p)?;
    if !f.d.is_one() {
        return Err(CliError::Usage("factor expects integer coefficients".into()));
    }
    let g: IntPoly = f.g.clone();
    let fac = factor(&g)?;
    let n_splits = splits(&fac).len();
    let irreducible = fac.is_irreducible();
    let text = format!(
        "{g} = {fac}\nirreducible over Z: {}\n",
        if irreducible { "yes" } else { "no" }
    );
    Ok(Report {
        inputs: json!({ "poly": g.to_string() }),
        result: json!({
            "unit": fac.unit,
            "content": fac.content.to_string(),
            "factors": fac.factors.iter().map(|(h, e)| json!({ "factor": h.to_string(), "multiplicity": e })).collect::<Vec<_>>(),
            "irreducible": irreducible,
            "splits": n_splits,
        }),
        certificates: Vec::new(),
        warnings: Vec::new(),
        text,
    })
}

fn reason_text(r: &VerdictReason) -> String {
    match r {
        VerdictReason::IrreducibleOverZ => "d = 1 and the numerator is irreducible over Z".into(),
        VerdictReason::ReducibleOverZ => "d = 1 and the numerator factors over Z".into(),
        VerdictReason::NoSplitRealizes => "every split of the numerator has a witness prime".into(),
        VerdictReason::SplitRealizes => "a split of the numerator has no witness prime".into(),
        VerdictReason::NotImagePrimitive { fixed_divisor } => {
            format!("not image-primitive: the numerator's fixed divisor is {fixed_divisor}")
        }
    }
}

fn reason_key(r: &VerdictReason) -> &'static str {
    match r {
        VerdictReason::IrreducibleOverZ => "irreducible-over-z",
        VerdictReason::ReducibleOverZ => "reducible-over-z",
        VerdictReason::NoSplitRealizes => "no-split-realizes",
        VerdictReason::SplitRealizes => "split-realizes",
        VerdictReason::NotImagePrimitive { .. } => "not-image-primitive",
    }
}

fn quotient(g: &IntPoly, d: &BigInt) -> String {
    if d.is_one() {
        format!("({g})")
    } else {
        format!("({g})/{d}")
    }
}

fn verdict_report(f: &CanonicalIvp, set: &PointSet, v: &Verdict) -> Report {
    let mut text = format!("f = {f}\nS = {set}\n");
    let _ = writeln!(text, "verdict: {}", if v.irreducible { "irreducible" } else { "reducible" });
    let _ = writeln!(text, "reason: {}", reason_text(&v.reason));
    if let Some(fac) = &v.factorization {
        let _ = writeln!(text, "numerator = {fac}");
    }
    let mut certificates = Vec::new();
    for (i, a) in v.analysis.iter().enumerate() {
        let _ = writeln!(text, "split {}: g1 = {}, g2 = {}", i + 1, a.g1, a.g2);
        let mut primes = Vec::new();
        for p in &a.primes {
            let w = match &p.witness {
                Some((j, pt, val)) => format!("witness j = {j} at {pt}: g2 = {val}"),
                None => "no witness".into(),
            };
            let _ = writeln!(
                text,
                "  prime {}: v(d) = {}, e1 = {}, e2 = {}, w = {}, {w}",
                p.prime, p.d_valuation, p.e1, p.e2, p.power
            );
            primes.push(json!({
                "prime": p.prime.to_string(),
                "d_valuation": p.d_valuation,
                "e1": p.e1,
                "e2": p.e2,
                "power": p.power.to_string(),
                "witness": p.witness.as_ref().map(|(j, pt, val)| json!({
                    "index": j, "point": pt.to_string(), "g2_value": val.to_string(),
                })),
            }));
        }
        certificates.push(json!({
            "kind": "split",
            "g1": a.g1.to_string(),
            "g2": a.g2.to_string(),
            "g1_points": points_json(&a.g1_points),
            "g2_points": points_json(&a.g2_points),
            "primes": primes,
            "realizes_reducibility": a.realizes_reducibility,
        }));
    }
    let split_json = v.split.as_ref().map(|s| {
        json!({ "g1": s.g1.to_string(), "d1": s.d1.to_string(), "g2": s.g2.to_string(), "d2": s.d2.to_string() })
    });
    if let Some(s) = &v.split {
        let _ = writeln!(text, "f = {} * {}", quotient(&s.g1, &s.d1), quotient(&s.g2, &s.d2));
    }
    let mut inputs = set_inputs(set);
    inputs["poly"] = json!(f.to_string());
    Report {
        inputs,
        result: json!({
            "irreducible": v.irreducible,
            "reason": reason_key(&v.reason),
            "d": v.d.to_string(),
            "factorization": v.factorization.as_ref().map(|x| x.to_string()),
            "split": split_json,
            "sequences": v.sequences.iter().map(d_json).collect::<Vec<_>>(),
        }),
        certificates,
        warnings: Vec::new(),
        text,
    }
}

fn cmd_irreducible(poly: &str, set_args: &SetArgs) -> Result<Report, CliError> {
    let set = load_set(set_args)?;
    let f = load_ivp(poly, &set)?;
    let v = is_irreducible(&f, &set)?;
    Ok(verdict_report(&f, &set, &v))
}

fn cmd_oracle(poly: &str, set_args: &SetArgs) -> Result<Report, CliError> {
    let set = load_set(set_args)?;
    let f = load_ivp(poly, &set)?;
    let irreducible = oracle_is_irreducible(&f, &set)?;
    let mut inputs = set_inputs(&set);
    inputs["poly"] = json!(f.to_string());
    Ok(Report {
        inputs,
        result: json!({ "irreducible": irreducible }),
        certificates: Vec::new(),
        warnings: Vec::new(),
        text: format!(
            "f = {f}\nS = {set}\noracle verdict: {}\n",
            if irreducible { "irreducible" } else { "reducible" }
        ),
    })
}
