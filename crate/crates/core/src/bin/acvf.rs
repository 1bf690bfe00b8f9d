use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use acvf::task::{self, op_spec, render, run_batch, run_value};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "acvf", version, about = "Exact valued-field algebra on JSON task files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a task file (a task object, or an array of tasks).
    Run(Io),
    /// Run an array of tasks concurrently, results in input order.
    Batch(Io),
    /// Scalar arithmetic, valuations, residues and digits.
    Field(OpArgs),
    /// Matrices over K: Smith normal form, determinants, kernels.
    Mat(OpArgs),
    /// Lattices: canonical bases, join/meet/dual, wedge powers, samples.
    Lattice(OpArgs),
    /// Definable O-submodules: classification, membership, codes.
    Module(OpArgs),
    /// Valued vector spaces: balls, orbits, separating bases.
    Vvs(OpArgs),
    /// Definable subsets of K as swiss cheeses.
    Cheese(OpArgs),
    /// Coding maps into the geometric sorts.
    Code(OpArgs),
}

#[derive(Args)]
struct Io {
    /// Input file (stdin when absent).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OpArgs {
    /// Operation name within the family.
    op: String,
    /// Field descriptor, e.g. padic:3 or laurent:4.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    retry_budget: Option<usize>,
    #[command(flatten)]
    io: Io,
}

fn read_input(io: &Io) -> io::Result<String> {
    match &io.input {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(io: &Io, s: &str) -> io::Result<()> {
    match &io.out {
        Some(p) => fs::write(p, s),
        None => io::stdout().write_all(s.as_bytes()),
    }
}

fn malformed(msg: String) -> (Value, i32) {
    (json!({ "error": task::error_object(&acvf::Error::MalformedInput(msg)) }), 1)
}

/// Operands from the input object, overridden by the command-line flags.
fn family_task(family: &str, a: &OpArgs, text: &str) -> (Value, i32) {
    match op_spec(&a.op) {
        Some(spec) if spec.0 == family => {}
        _ => return malformed(format!("unknown {family} op {:?}", a.op)),
    }
    let mut obj = match serde_json::from_str::<Value>(if text.trim().is_empty() { "{}" } else { text }) {
        Ok(Value::Object(m)) => m,
        Ok(_) => return malformed("operands must be a JSON object".into()),
        Err(e) => return malformed(format!("invalid JSON: {e}")),
    };
    obj.insert("op".into(), json!(a.op));
    if let Some(f) = &a.field {
        obj.insert("field".into(), json!(f));
    }
    if let Some(s) = a.seed {
        obj.insert("seed".into(), json!(s));
    }
    let mut options = obj.remove("options").and_then(|o| o.as_object().cloned()).unwrap_or_default();
    for (k, v) in [("depth", a.depth), ("degree", a.degree), ("retry_budget", a.retry_budget)] {
        if let Some(v) = v {
            options.insert(k.into(), json!(v));
        }
    }
    if !options.is_empty() {
        obj.insert("options".into(), Value::Object(options));
    }
    run_value(&Value::Object(obj))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (io, result) = match &cli.command {
        Command::Run(io) | Command::Batch(io) => {
            let text = match read_input(io) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("acvf: {e}");
                    return ExitCode::from(1);
                }
            };
            let r = match (serde_json::from_str::<Value>(&text), &cli.command) {
                (Ok(Value::Array(ts)), _) => run_batch(&ts),
                (Ok(_), Command::Batch(_)) => malformed("batch input must be an array of tasks".into()),
                (Ok(v), _) => run_value(&v),
                (Err(e), _) => malformed(format!("invalid JSON: {e}")),
            };
            (io, r)
        }
        Command::Field(a)
        | Command::Mat(a)
        | Command::Lattice(a)
        | Command::Module(a)
        | Command::Vvs(a)
        | Command::Cheese(a)
        | Command::Code(a) => {
            let family = match &cli.command {
                Command::Field(_) => "field",
                Command::Mat(_) => "mat",
                Command::Lattice(_) => "lattice",
                Command::Module(_) => "module",
                Command::Vvs(_) => "vvs",
                Command::Cheese(_) => "cheese",
                _ => "code",
            };
            let text = match read_input(&a.io) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("acvf: {e}");
                    return ExitCode::from(1);
                }
            };
            (&a.io, family_task(family, a, &text))
        }
    };
    let (doc, code) = result;
    if let Err(e) = write_output(io, &render(&doc)) {
        eprintln!("acvf: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
