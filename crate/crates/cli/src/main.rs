//! `metabelian`: decide the Group and Identity problems for rational
//! subsemigroups of `Y ⋊ Zⁿ` from JSON instance files.
//!
//! Exit codes: 0 for group / identity found / certificate valid, 1 for not a
//! group / no identity / certificate invalid, 2 for unknown (including an
//! oracle search that found nothing, which proves nothing), 3 for input
//! errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use metabelian::agraph::graph_of_run;
use metabelian::decide::{
    check_certificate, check_verdict, decide_group, decide_identity_fg, decide_identity_rational, BudgetReport,
    Certificate, Verdict, VerdictKind, DEFAULT_BUDGET,
};
use metabelian::io::{parse_certificate_file, verdict_json, Instance};
use metabelian::matrixfront::{build_example_instance, ExampleName};
use metabelian::oracle::{bfs_identity, OracleOutcome, DEFAULT_NODE_CAP};

#[derive(Parser)]
#[command(name = "metabelian", version, about = "Group and Identity problems for rational subsemigroups of Y ⋊ Zⁿ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    /// Is the recognized semigroup a group?
    Group,
    /// Does the recognized semigroup contain the identity?
    Identity,
}

#[derive(Subcommand)]
enum Command {
    /// Run a decider on an instance file.
    Decide {
        problem: Problem,
        /// Instance file, or `-` for stdin.
        #[arg(short, long)]
        input: String,
        /// Identity problem for the semigroup generated by `generators`.
        #[arg(short = 'g', long = "generators")]
        generators: bool,
        /// Work limit; double it if the answer is unknown.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u32,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
        /// Write the A-graph of a group traversal as a JSON edge list.
        #[arg(long, value_name = "FILE")]
        dump_graph: Option<PathBuf>,
    },
    /// Verify a certificate (or a whole verdict) against an instance.
    CheckCert {
        #[arg(short, long)]
        input: String,
        #[arg(short, long)]
        cert: String,
    },
    /// Breadth-first search for an accepting run evaluating to the identity.
    Oracle {
        #[arg(short, long)]
        input: String,
        /// Maximal run length.
        #[arg(long)]
        depth: usize,
        /// Maximal number of stored search nodes.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        cap: usize,
    },
    /// Write a shipped example instance: free_abelian, wreath_zz,
    /// bs_like(q), lamplighter(m) or parity_coset.
    Examples {
        name: String,
        /// Output file, or `-` for stdout.
        #[arg(short, long, default_value = "-")]
        output: String,
    },
}

/// An input problem, reported with exit code 3.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_source(path: &str) -> Result<String, InputError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
    }
}

fn load_instance(path: &str) -> Result<Instance, InputError> {
    let text = read_source(path)?;
    Instance::from_json(&text).map_err(|e| InputError(format!("{path}: {e}")))
}

fn exit_code(kind: VerdictKind) -> u8 {
    match kind {
        VerdictKind::Group | VerdictKind::IdentityYes => 0,
        VerdictKind::NotGroup | VerdictKind::IdentityNo => 1,
        VerdictKind::Unknown => 2,
    }
}

fn human(v: &Verdict) -> String {
    let runs = |r: &[usize]| r.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join(" ");
    let head = metabelian::io::kind_name(v.kind).replace('_', " ");
    let detail = match &v.certificate {
        Certificate::Traversal(r) => format!("identity traversal: {}", runs(&r.0)),
        Certificate::IdentityRun(r) => format!("identity run: {}", runs(&r.0)),
        Certificate::Refutation(r) => format!("refutation: {r:?}"),
        Certificate::SubRefutations(list) => format!("sub-automata refuted: {}", list.len()),
        Certificate::Exhausted { reason } => format!("undecided: {reason}"),
    };
    format!("{head}\n{detail}\n")
}

fn decide(
    problem: Problem,
    input: &str,
    generators: bool,
    budget: u32,
    as_json: bool,
    dump_graph: Option<&Path>,
) -> Result<u8, InputError> {
    let inst = load_instance(input)?;
    let ctx = |e: metabelian::Error| InputError(format!("{input}: {e}"));
    let (verdict, automaton) = match (problem, generators) {
        (Problem::Identity, true) => {
            if inst.coset.is_some() {
                return Err(InputError("-g cannot be combined with a coset block; drop -g".into()));
            }
            let (g, gens) = inst.generator_elements().map_err(ctx)?;
            (decide_identity_fg(&g, &gens, budget).map_err(ctx)?, inst.automaton().map_err(ctx)?)
        }
        (Problem::Group, true) => return Err(InputError("-g applies to the identity problem only".into())),
        (Problem::Group, false) => {
            let a = inst.automaton().map_err(ctx)?;
            (decide_group(&a, budget).map_err(ctx)?, a)
        }
        (Problem::Identity, false) => {
            let a = inst.automaton().map_err(ctx)?;
            (decide_identity_rational(&a, budget).map_err(ctx)?, a)
        }
    };
    if let (Some(path), Certificate::Traversal(run)) = (dump_graph, &verdict.certificate) {
        let g = graph_of_run(&automaton, run).map_err(ctx)?;
        let edges: Vec<_> = g
            .edges()
            .iter()
            .map(|e| json!({"lattice": e.lattice + 1, "coord": e.coord.0, "label": e.label + 1}))
            .collect();
        fs::write(path, serde_json::to_string_pretty(&edges)? + "\n")?;
    }
    let out = if as_json { serde_json::to_string_pretty(&verdict_json(&verdict))? + "\n" } else { human(&verdict) };
    io::stdout().write_all(out.as_bytes())?;
    Ok(exit_code(verdict.kind))
}

fn check_cert(input: &str, cert: &str) -> Result<u8, InputError> {
    let inst = load_instance(input)?;
    let a = inst.automaton().map_err(|e| InputError(format!("{input}: {e}")))?;
    let (kind, certificate) =
        parse_certificate_file(&read_source(cert)?).map_err(|e| InputError(format!("{cert}: {e}")))?;
    let ok = match kind {
        Some(kind) => check_verdict(&a, &Verdict { kind, certificate, budget: BudgetReport::default() }),
        None => check_certificate(&a, &certificate),
    };
    println!("{}", if ok { "valid" } else { "invalid" });
    Ok(if ok { 0 } else { 1 })
}

fn oracle(input: &str, depth: usize, cap: usize) -> Result<u8, InputError> {
    let inst = load_instance(input)?;
    let a = inst.automaton().map_err(|e| InputError(format!("{input}: {e}")))?;
    let (value, code) = match bfs_identity(&a, depth, true, cap) {
        OracleOutcome::Found(run) => {
            (json!({"result": "found", "run": run.0.iter().map(|l| l + 1).collect::<Vec<_>>()}), 0)
        }
        OracleOutcome::NotFound => (json!({"result": "not_found", "depth": depth}), 2),
        OracleOutcome::Overflow => (json!({"result": "overflow", "cap": cap}), 2),
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(code)
}

fn examples(name: &str, output: &str) -> Result<u8, InputError> {
    let name: ExampleName = name.parse()?;
    let text = build_example_instance(name)?.to_json() + "\n";
    if output == "-" {
        io::stdout().write_all(text.as_bytes())?;
    } else {
        fs::write(output, text).map_err(|e| InputError(format!("{output}: {e}")))?;
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decide { problem, input, generators, budget, json, dump_graph } => {
            decide(problem, &input, generators, budget, json, dump_graph.as_deref())
        }
        Command::CheckCert { input, cert } => check_cert(&input, &cert),
        Command::Oracle { input, depth, cap } => oracle(&input, depth, cap),
        Command::Examples { name, output } => examples(&name, &output),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
