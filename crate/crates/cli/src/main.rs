//! `ninfty`: catalog lookups, transfer-system computations, change-of-group
//! functors and the verification suites.
//!
//! Exit codes: 0 success, 1 a check failed, 2 a budget or guard ran out,
//! 3 bad usage or input.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ninfty::catalog::{hom_by_name, GROUPS};
use ninfty::format::{
    admissible_to_json, group_table_json, hom_from_json, relation_from_json, symseq_from_json, symseq_to_json,
    transfer_to_json,
};
use ninfty::functors::{apply, FunctorKind};
use ninfty::grp::{group_by_name, Homomorphism};
use ninfty::indexing::admissible_sets_of_symseq;
use ninfty::operad::free_model;
use ninfty::rewrite::{reduce, setups, Strategy, Term};
use ninfty::transfer::{cogenerate, enumerate_all, generate, join, meet, to_dot, validate, TransferSystem, DEFAULT_BUDGET};
use ninfty::verify::{run_suite, Suite, VerifyConfig};
use ninfty::Error;

#[derive(Parser)]
#[command(name = "ninfty", version, about = "Transfer systems and N-infinity operad combinatorics on small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Transfer systems in the `{"group", "pairs"}` format.
    #[command(subcommand)]
    Ts(TsCmd),
    /// Change-of-group functors.
    #[command(subcommand)]
    Functor(FunctorCmd),
    /// Free models and admissible sets.
    #[command(subcommand)]
    Operad(OperadCmd),
    /// Term reduction.
    #[command(subcommand)]
    Rewrite(RewriteCmd),
    /// Run a verification suite and print its JSON report.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GroupCmd {
    List,
    /// Cayley table as JSON.
    Show(GroupArg),
    Subgroups(GroupArg),
}

#[derive(Args)]
struct GroupArg {
    #[arg(long)]
    group: String,
}

#[derive(Subcommand)]
enum TsCmd {
    /// Every transfer system of a group, or the Hasse diagram with `--dot`.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    Meet { a: String, b: String },
    Join { a: String, b: String },
    /// The least transfer system containing a relation.
    Generate { input: String },
    /// The largest transfer system contained in a partial order.
    Cogenerate { input: String },
    /// Checks the axioms; a violation exits with 1.
    Validate { input: String },
}

#[derive(Subcommand)]
enum FunctorCmd {
    /// Applies fL, finvL, fR or finvR. Without an input the discrete system
    /// of the source lattice is used.
    Apply {
        #[arg(long)]
        kind: String,
        /// A catalog name or a JSON file.
        #[arg(long)]
        hom: String,
        input: Option<String>,
    },
}

#[derive(Subcommand)]
enum OperadCmd {
    /// Generators of the free marked model of a transfer system.
    FreeModel { input: String },
    /// Admissible sets of a symmetric sequence up to `--window`.
    Admissible {
        input: String,
        #[arg(long)]
        window: Option<usize>,
    },
}

#[derive(Subcommand)]
enum RewriteCmd {
    /// Reduces a term and prints the normal form with its trace.
    Reduce {
        #[arg(long, default_value = "coproduct")]
        mode: String,
        term: String,
        /// Use a seeded random strategy instead of leftmost-innermost.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long)]
    hom: Vec<String>,
    #[arg(long)]
    group: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 4)]
    window: usize,
    #[arg(long, default_value_t = 500)]
    cases: usize,
    /// Rewrite setup: coproduct, coproduct-mixed or tensor.
    #[arg(long)]
    mode: Option<String>,
}

enum Outcome {
    Pass,
    Fail,
}

fn read_json(path: &str) -> Result<Value, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn read_ts(path: &str) -> Result<TransferSystem, Error> {
    validate(&relation_from_json(&read_json(path)?)?)
}

fn resolve_hom(spec: &str) -> Result<Homomorphism, Error> {
    if spec.ends_with(".json") {
        hom_from_json(&read_json(spec)?)
    } else {
        hom_by_name(spec)
    }
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Group(cmd) => match cmd {
            GroupCmd::List => {
                let list: Vec<Value> = GROUPS
                    .iter()
                    .map(|n| {
                        let g = group_by_name(n)?;
                        Ok(json!({ "name": g.name(), "order": g.order(), "subgroups": g.lattice().len() }))
                    })
                    .collect::<Result<_, Error>>()?;
                print(&Value::Array(list));
            }
            GroupCmd::Show(GroupArg { group }) => print(&group_table_json(&group_by_name(&group)?)),
            GroupCmd::Subgroups(GroupArg { group }) => {
                let g = group_by_name(&group)?;
                let list: Vec<Value> = g
                    .all_subgroups()
                    .iter()
                    .map(|h| json!({ "id": h.id(), "order": h.order(), "members": h.members() }))
                    .collect();
                print(&Value::Array(list));
            }
        },
        Command::Ts(cmd) => match cmd {
            TsCmd::Enumerate { group, dot, budget } => {
                let lattice = enumerate_all(&group_by_name(&group)?, budget)?;
                if dot {
                    print!("{}", to_dot(&lattice));
                } else {
                    print(&Value::Array(lattice.iter().map(transfer_to_json).collect()));
                }
            }
            TsCmd::Meet { a, b } => print(&transfer_to_json(&meet(&read_ts(&a)?, &read_ts(&b)?)?)),
            TsCmd::Join { a, b } => print(&transfer_to_json(&join(&read_ts(&a)?, &read_ts(&b)?)?)),
            TsCmd::Generate { input } => print(&transfer_to_json(&generate(&relation_from_json(&read_json(&input)?)?)?)),
            TsCmd::Cogenerate { input } => {
                print(&transfer_to_json(&cogenerate(&relation_from_json(&read_json(&input)?)?)?))
            }
            TsCmd::Validate { input } => {
                let r = relation_from_json(&read_json(&input)?)?;
                match validate(&r) {
                    Ok(t) => print(&json!({ "valid": true, "transfer": transfer_to_json(&t) })),
                    Err(e @ (Error::Axiom(_) | Error::NotRefining(..))) => {
                        print(&json!({ "valid": false, "violation": e.to_string() }));
                        return Ok(Outcome::Fail);
                    }
                    Err(e) => return Err(e),
                }
            }
        },
        Command::Functor(FunctorCmd::Apply { kind, hom, input }) => {
            let kind: FunctorKind = kind.parse()?;
            let f = resolve_hom(&hom)?;
            if kind == FunctorKind::ImageL && !f.is_injective() {
                eprintln!("warning: fL along a noninjective homomorphism is computed on transfer systems only; no operadic lift is implemented");
            }
            let domain = if kind.is_forward() { f.source() } else { f.target() };
            let t = match input {
                Some(path) => read_ts(&path)?,
                None => TransferSystem::discrete(domain),
            };
            if !t.group().same(domain) {
                return Err(Error::GroupMismatch);
            }
            print(&transfer_to_json(&apply(kind, &f, &t)?));
        }
        Command::Operad(cmd) => match cmd {
            OperadCmd::FreeModel { input } => print(&symseq_to_json(free_model(&read_ts(&input)?).generators())),
            OperadCmd::Admissible { input, window } => {
                let s = symseq_from_json(&read_json(&input)?)?;
                print(&admissible_to_json(&admissible_sets_of_symseq(&s, window)?));
            }
        },
        Command::Rewrite(RewriteCmd::Reduce { mode, term, seed }) => {
            let (sig, mode) = setups::by_name(&mode)?;
            let t: Term = term.parse()?;
            sig.check_term(&t)?;
            let strategy = seed.map_or(Strategy::LeftmostInnermost, Strategy::Random);
            let (nf, trace) = reduce(&sig, mode, &t, strategy)?;
            print(&json!({ "input": t, "normal_form": nf, "trace": trace }));
        }
        Command::Verify(args) => {
            let suite: Suite = args.suite.parse()?;
            let cfg = VerifyConfig {
                homs: args.hom,
                groups: args.group,
                seed: args.seed,
                budget: args.budget,
                window: args.window,
                cases: args.cases,
                mode: args.mode,
                ..VerifyConfig::default()
            };
            let report = run_suite(suite, &cfg)?;
            print(&serde_json::to_value(&report).expect("reports serialize"));
            return Ok(if report.passed { Outcome::Pass } else { Outcome::Fail });
        }
    }
    Ok(Outcome::Pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e @ (Error::BudgetExceeded(_) | Error::StepBudget(_) | Error::Guard(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
