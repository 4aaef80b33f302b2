//! Command-line front end for exact Clifford-cyclotomic synthesis.

mod census;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclosynth::{
    equal_up_to_phase, phase_condition, synthesize_ring, verify_finite_lemma, GateSequence,
    Membership, Synthesizer, UnitaryRn,
};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "cyclosynth", version, about = "Exact synthesis over Clifford-cyclotomic gate sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize a circuit for a matrix.
    Synth(SynthArgs),
    /// Check that a circuit implements a matrix up to a power of zeta.
    Verify(VerifyArgs),
    /// Print the optimal T-count of a matrix.
    Tcount(MatrixArgs),
    /// Decide membership in the Clifford-cyclotomic group.
    Member(MatrixArgs),
    /// Synthesize by column reduction (n in {2, 4, 6, 8, 12}).
    Ringsynth(MatrixArgs),
    /// Run the exhaustive mod-2 check behind the column reduction.
    CheckFiniteLemma(NArgs),
    /// Test whether 2^t = -1 (mod s) has a solution for n = 2^k s.
    PhaseCondition(NArgs),
    /// Tabulate the phase condition for every even n up to a bound.
    FnCensus(CensusArgs),
    /// Emit a random matrix of given T-count with a witness circuit.
    Random(RandomArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Optimal,
    Ring,
}

#[derive(Args, Debug)]
struct Common {
    /// Gate-set parameter; must agree with the input when both are given.
    #[arg(long)]
    n: Option<u32>,
    /// Input file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also print floating-point approximations of the input to stderr.
    #[arg(long)]
    approx: bool,
    /// Worker threads for batch inputs.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Method::Optimal)]
    method: Method,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Circuit text file.
    #[arg(long, conflicts_with = "circuit_text")]
    circuit: Option<PathBuf>,
    /// Circuit given inline.
    #[arg(long)]
    circuit_text: Option<String>,
}

#[derive(Args, Debug)]
struct NArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Largest n to include.
    #[arg(long = "max")]
    max: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Progress file, updated every 100000 integers; an existing file resumes
    /// the run.
    #[arg(long, requires = "output")]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "target-tcount", default_value_t = 1)]
    target_tcount: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Process outcome, mapped onto the exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Integrity(String),
}

impl From<cyclosynth::Error> for Failure {
    fn from(e: cyclosynth::Error) -> Failure {
        if e.is_integrity_failure() {
            Failure::Integrity(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Integrity(msg)) => {
            eprintln!("integrity failure: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Synth(a) => with_jobs(a.common.jobs, || synth(&a)),
        Command::Verify(a) => verify(&a),
        Command::Tcount(a) => with_jobs(a.common.jobs, || tcount(&a.common)),
        Command::Member(a) => with_jobs(a.common.jobs, || member(&a.common)),
        Command::Ringsynth(a) => with_jobs(a.common.jobs, || ringsynth(&a.common)),
        Command::CheckFiniteLemma(a) => check_finite_lemma(&a),
        Command::PhaseCondition(a) => phase(&a),
        Command::FnCensus(a) => with_jobs(a.jobs, || census::run(a.max, a.output.as_deref(), a.checkpoint.as_deref())),
        Command::Random(a) => random(&a),
    }
}

fn with_jobs(jobs: Option<usize>, f: impl FnOnce() -> Outcome + Send) -> Outcome {
    match jobs {
        None => f(),
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(f),
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
    }
}

fn write_output(path: Option<&std::path::Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Read one matrix or a batch. Accepted shapes: a matrix object, an object
/// with a `matrix` field (as written by `random`), or an array of either.
fn read_matrices(c: &Common) -> Result<(Vec<UnitaryRn>, bool), Failure> {
    let text = read_input(&c.input)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))?;
    let (items, batch) = match value {
        Value::Array(items) => (items, true),
        v => (vec![v], false),
    };
    let mut out = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let m = item.get("matrix").unwrap_or(item);
        let u = UnitaryRn::from_json(m).map_err(|e| {
            let where_ = if batch { format!("item {i}: ") } else { String::new() };
            Failure::Usage(format!("{where_}{e}"))
        })?;
        if let Some(n) = c.n {
            if u.ctx().n() != n {
                return Err(Failure::Usage(format!(
                    "field \"n\" = {} disagrees with --n {n}",
                    u.ctx().n()
                )));
            }
        }
        out.push(u);
    }
    if c.approx {
        for (i, u) in out.iter().enumerate() {
            eprintln!("approximate entries of matrix {i} (non-authoritative):");
            for r in 0..2 {
                let row: Vec<String> = (0..2)
                    .map(|col| {
                        let (re, im) = u.get(r, col).to_complex();
                        format!("{re:+.12}{im:+.12}i")
                    })
                    .collect();
                eprintln!("  [{}]", row.join(", "));
            }
        }
    }
    Ok((out, batch))
}

/// Render per-item results, one block per matrix in input order.
fn emit(c: &Common, batch: bool, results: Vec<(Value, String)>) -> Result<(), Failure> {
    let text = match c.format {
        Format::Json => {
            let values: Vec<Value> = results.into_iter().map(|(v, _)| v).collect();
            let v = if batch { Value::Array(values) } else { values.into_iter().next().unwrap_or(Value::Null) };
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => results.into_iter().map(|(_, t)| t).collect::<Vec<_>>().join(""),
    };
    write_output(c.output.as_deref(), &text)
}

fn synthesizer(n: u32) -> Result<Synthesizer, Failure> {
    Ok(Synthesizer::new(n as i64)?)
}

fn synth(a: &SynthArgs) -> Outcome {
    let (mats, batch) = read_matrices(&a.common)?;
    let results: Vec<Result<(Value, String, bool), Failure>> = mats
        .par_iter()
        .map(|u| {
            let syn = synthesizer(u.ctx().n())?;
            let optimal = match syn.membership(u)? {
                Membership::Member { form, circuit } => Some((form, circuit)),
                Membership::NotMember { .. } => None,
            };
            match a.method {
                Method::Optimal => {
                    let Some((form, circuit)) = optimal else {
                        return Ok((json!({"member": false}), "NotMember\n".to_string(), false));
                    };
                    check_circuit(u, &circuit)?;
                    let text = format!("{circuit}\ntcount={} m={}\n", form.tcount(), form.m());
                    let v = json!({
                        "member": true,
                        "circuit": circuit.to_string(),
                        "tcount": form.tcount(),
                        "m": form.m(),
                        "form": form.to_string(),
                    });
                    Ok((v, text, true))
                }
                Method::Ring => {
                    let ring = synthesize_ring(u)?;
                    check_circuit(u, &ring.circuit)?;
                    let (tcount, m) = optimal
                        .as_ref()
                        .map(|(f, _)| (f.tcount(), f.m()))
                        .ok_or_else(|| Failure::Integrity("ring synthesis succeeded on a non-member".into()))?;
                    let text = format!(
                        "{}\ntcount={tcount} m={m}\nwcost={} steps={}\n",
                        ring.circuit,
                        ring.circuit.cost(),
                        ring.steps.len()
                    );
                    let v = json!({
                        "member": true,
                        "circuit": ring.circuit.to_string(),
                        "tcount": tcount,
                        "m": m,
                        "wcost": ring.circuit.cost(),
                        "steps": ring.steps,
                        "initial_mu": ring.initial_mu,
                    });
                    Ok((v, text, true))
                }
            }
        })
        .collect();
    finish(&a.common, batch, results)
}

fn finish(c: &Common, batch: bool, results: Vec<Result<(Value, String, bool), Failure>>) -> Outcome {
    let mut rendered = Vec::with_capacity(results.len());
    let mut all = true;
    for r in results {
        let (v, t, ok) = r?;
        all &= ok;
        rendered.push((v, t));
    }
    emit(c, batch, rendered)?;
    Ok(all)
}

fn check_circuit(u: &UnitaryRn, circuit: &GateSequence) -> Result<(), Failure> {
    if circuit.eval(u.ctx())? != *u {
        return Err(Failure::Integrity(format!("circuit {circuit} does not evaluate to the input")));
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> Outcome {
    let (mats, batch) = read_matrices(&a.common)?;
    if batch {
        return Err(Failure::Usage("verify takes a single matrix".into()));
    }
    let u = &mats[0];
    let text = match (&a.circuit, &a.circuit_text) {
        (Some(p), _) => fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?,
        (None, Some(t)) => t.clone(),
        (None, None) => return Err(Failure::Usage("verify needs --circuit or --circuit-text".into())),
    };
    let seq = GateSequence::parse(text.trim(), u.ctx().n())?;
    let v = seq.eval(u.ctx())?;
    let phase = equal_up_to_phase(u, &v).and_then(|l| l.as_zeta_power());
    let ok = phase.is_some();
    let out = match a.common.format {
        Format::Text => match phase {
            Some(j) => format!("true phase={j}\n"),
            None => "false\n".to_string(),
        },
        Format::Json => format!("{}\n", json!({"equal": ok, "phase": phase})),
    };
    write_output(a.common.output.as_deref(), &out)?;
    Ok(ok)
}

fn tcount(c: &Common) -> Outcome {
    let (mats, batch) = read_matrices(c)?;
    let results = mats
        .par_iter()
        .map(|u| {
            let syn = synthesizer(u.ctx().n())?;
            Ok(match syn.membership(u)? {
                Membership::Member { form, .. } => {
                    (json!({"member": true, "tcount": form.tcount()}), format!("{}\n", form.tcount()), true)
                }
                Membership::NotMember { .. } => (json!({"member": false}), "NotMember\n".to_string(), false),
            })
        })
        .collect();
    finish(c, batch, results)
}

fn member(c: &Common) -> Outcome {
    let (mats, batch) = read_matrices(c)?;
    let results = mats
        .par_iter()
        .map(|u| {
            let syn = synthesizer(u.ctx().n())?;
            Ok(match syn.membership(u)? {
                Membership::Member { form, circuit } => {
                    check_circuit(u, &circuit)?;
                    (
                        json!({"member": true, "circuit": circuit.to_string(), "form": form.to_string()}),
                        format!("Member\n{circuit}\n"),
                        true,
                    )
                }
                Membership::NotMember { stage, reason } => (
                    json!({"member": false, "stage": stage.to_string(), "reason": reason}),
                    format!("NotMember stage={stage}: {reason}\n"),
                    false,
                ),
            })
        })
        .collect();
    finish(c, batch, results)
}

fn ringsynth(c: &Common) -> Outcome {
    let (mats, batch) = read_matrices(c)?;
    let results = mats
        .par_iter()
        .map(|u| {
            let ring = synthesize_ring(u)?;
            check_circuit(u, &ring.circuit)?;
            let v = json!({
                "circuit": ring.circuit.to_string(),
                "wcost": ring.circuit.cost(),
                "steps": ring.steps,
                "initial_mu": ring.initial_mu,
            });
            let t = format!(
                "{}\nwcost={} steps={} initial_mu={}\n",
                ring.circuit,
                ring.circuit.cost(),
                ring.steps.len(),
                ring.initial_mu
            );
            Ok((v, t, true))
        })
        .collect();
    finish(c, batch, results)
}

fn check_finite_lemma(a: &NArgs) -> Outcome {
    let report = verify_finite_lemma(a.n)?;
    let out = match a.format {
        Format::Text => format!("{}\n", report.holds()),
        Format::Json => format!(
            "{}\n",
            json!({
                "n": report.n,
                "holds": report.holds(),
                "representatives": report.representatives,
                "pairs": report.pairs,
                "failures": report.failures,
            })
        ),
    };
    write_output(a.output.as_deref(), &out)?;
    Ok(report.holds())
}

fn phase(a: &NArgs) -> Outcome {
    let c = phase_condition(a.n as u64)?;
    let out = match a.format {
        Format::Text => match c.t {
            Some(t) => format!("true s={} t={t}\n", c.s),
            None => format!("false s={}\n", c.s),
        },
        Format::Json => format!("{}\n", json!({"n": c.n, "holds": c.holds(), "s": c.s, "t": c.t})),
    };
    write_output(a.output.as_deref(), &out)?;
    Ok(c.holds())
}

fn random(a: &RandomArgs) -> Outcome {
    let syn = synthesizer(a.n)?;
    let (u, witness) = syn.random_unitary(a.target_tcount, a.seed)?;
    let out = match a.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "matrix": u.to_json(),
                "witness": witness.to_string(),
                "tcount": a.target_tcount,
                "seed": a.seed,
            }))
            .expect("serializable")
        ),
        Format::Text => format!("{}\n{witness}\n", u.to_json_string()),
    };
    write_output(a.output.as_deref(), &out)?;
    Ok(true)
}
