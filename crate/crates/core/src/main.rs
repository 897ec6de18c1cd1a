//! Command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input, 2 unsupported parameter
//! (e.g. genus 2 has no presentation here), 3 semantic failure (an
//! assignment fails the cocycle condition or an adaptation precondition).

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mcg_cohomology::cocycle::{
    adapt_to_s, adapt_to_sprime, compute_h1, compute_h1_wajnryb, evaluate, generator_cocycle,
    verify_wajnryb, CocycleAssignment, CocycleError, CohomologyResult,
};
use mcg_cohomology::jsonnum;
use mcg_cohomology::presentation::{parse_presentation, parse_word, Presentation};
use mcg_cohomology::symplectic::{humphries_representation, Representation, SymplecticError};
use mcg_cohomology::wajnryb::{wajnryb_presentation, WajnrybError};

#[derive(Parser)]
#[command(
    name = "mcgcoh",
    about = "First twisted cohomology of the mapping class group acting on surface homology",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Clear the values on the collar and beta twists.
    S,
    /// Additionally clear the values on the chain twists.
    Sprime,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the generators and relators for a genus.
    Present {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute H^1; built-in surface data via --genus, or an explicit
    /// presentation and representation from files.
    H1 {
        #[arg(long, conflicts_with_all = ["presentation", "rep"])]
        genus: Option<usize>,
        /// Presentation file: first line generators, then one relator per line.
        #[arg(long, requires = "rep")]
        presentation: Option<String>,
        /// Representation file: JSON with a matrix per generator.
        #[arg(long, requires = "presentation")]
        rep: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check an assignment against every relator; exits 3 on failure.
    Verify {
        #[arg(long)]
        genus: usize,
        /// Cocycle JSON file; defaults to the built-in generating cocycle.
        #[arg(long)]
        cocycle: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a cocycle on a word in the generators.
    Eval {
        #[arg(long)]
        genus: usize,
        /// Word such as "c1 b1^-1 a2".
        #[arg(long)]
        word: String,
        /// Cocycle JSON file; defaults to the built-in generating cocycle.
        #[arg(long)]
        cocycle: Option<String>,
    },
    /// Normalize a cocycle by coboundary shifts; verifies it first.
    Adapt {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        cocycle: String,
        #[arg(long, value_enum, default_value_t = Target::Sprime)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct AppError {
    code: u8,
    msg: String,
}

impl AppError {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        AppError { code, msg: msg.into() }
    }
}

impl From<CocycleError> for AppError {
    fn from(e: CocycleError) -> Self {
        let code = match &e {
            CocycleError::UnsupportedGenus(_)
            | CocycleError::Wajnryb(WajnrybError::UnsupportedGenus(_)) => 2,
            CocycleError::NotACocycle
            | CocycleError::NotAdaptedToS
            | CocycleError::NotProportional(_) => 3,
            _ => 1,
        };
        AppError::new(code, e.to_string())
    }
}

impl From<WajnrybError> for AppError {
    fn from(e: WajnrybError) -> Self {
        let code = match &e {
            WajnrybError::UnsupportedGenus(_) => 2,
            _ => 1,
        };
        AppError::new(code, e.to_string())
    }
}

impl From<SymplecticError> for AppError {
    fn from(e: SymplecticError) -> Self {
        AppError::new(1, e.to_string())
    }
}

fn read_file(path: &str) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|e| AppError::new(1, format!("cannot read {path}: {e}")))
}

fn load_json(path: &str) -> Result<Value, AppError> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| AppError::new(1, format!("{path}: invalid JSON: {e}")))
}

fn load_cocycle(path: &str) -> Result<CocycleAssignment, AppError> {
    Ok(CocycleAssignment::from_json(&load_json(path)?)?)
}

fn cocycle_or_default(
    path: &Option<String>,
    genus: usize,
) -> Result<CocycleAssignment, AppError> {
    match path {
        Some(p) => load_cocycle(p),
        None => Ok(generator_cocycle(genus)?),
    }
}

fn print_assignment(u: &CocycleAssignment, indent: &str) {
    for (name, v) in u.names().iter().zip(u.values()) {
        println!("{indent}{name} -> {v}");
    }
}

fn h1_json(res: &CohomologyResult) -> Value {
    json!({
        "h1": {
            "rank": res.h1.rank,
            "torsion": res.h1.torsion.iter()
                .map(jsonnum::bigint_to_value)
                .collect::<Vec<_>>(),
        },
        "z1_rank": res.z1_rank,
        "b1_rank": res.b1_rank,
        "generators": res.generator_cocycles.iter()
            .map(CocycleAssignment::to_json)
            .collect::<Vec<_>>(),
    })
}

fn print_h1(res: &CohomologyResult, format: Format) {
    match format {
        Format::Json => println!("{:#}", h1_json(res)),
        Format::Text => {
            println!("H^1 = {}", res.h1);
            println!("z1_rank = {}", res.z1_rank);
            println!("b1_rank = {}", res.b1_rank);
            for (i, u) in res.generator_cocycles.iter().enumerate() {
                println!("generator {}:", i + 1);
                print_assignment(u, "  ");
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.cmd {
        Cmd::Present { genus, format } => {
            let wp = wajnryb_presentation(genus)?;
            match format {
                Format::Text => print!("{}", wp.render_text()),
                Format::Json => println!("{:#}", wp.to_json()),
            }
            Ok(())
        }
        Cmd::H1 { genus, presentation, rep, format } => {
            let res = match (genus, presentation, rep) {
                (Some(g), None, None) => compute_h1_wajnryb(g)?,
                (None, Some(p_path), Some(r_path)) => {
                    let p: Presentation = parse_presentation(&read_file(&p_path)?)
                        .map_err(|e| AppError::new(1, format!("{p_path}: {e}")))?;
                    let rep = Representation::from_json(&load_json(&r_path)?)
                        .map_err(|e| AppError::new(1, format!("{r_path}: {e}")))?;
                    compute_h1(&p, &rep)?
                }
                _ => {
                    return Err(AppError::new(
                        1,
                        "provide either --genus or both --presentation and --rep",
                    ))
                }
            };
            print_h1(&res, format);
            Ok(())
        }
        Cmd::Verify { genus, cocycle, format } => {
            let wp = wajnryb_presentation(genus)?;
            let (_, rep) = humphries_representation(genus)?;
            let u = cocycle_or_default(&cocycle, genus)?;
            let report = verify_wajnryb(&u, &wp, &rep)?;
            match format {
                Format::Json => println!("{:#}", report.to_json()),
                Format::Text => {
                    for c in &report.checks {
                        let tag = c.tag.map_or("", |t| t.as_str());
                        let status = if c.ok {
                            "ok".to_string()
                        } else {
                            format!("FAIL residue {}", c.residue)
                        };
                        println!("relator {:>2} [{tag}]: {status}", c.relator_index);
                    }
                }
            }
            if report.all_ok() {
                if format == Format::Text {
                    println!("all {} relators satisfied", report.checks.len());
                }
                Ok(())
            } else {
                Err(AppError::new(3, "cocycle condition violated"))
            }
        }
        Cmd::Eval { genus, word, cocycle } => {
            let (_, rep) = humphries_representation(genus)?;
            let u = cocycle_or_default(&cocycle, genus)?;
            let w = parse_word(&word, rep.names())
                .map_err(|e| AppError::new(1, e.to_string()))?;
            let value = evaluate(&u, &rep, &w)?;
            println!("{value}");
            Ok(())
        }
        Cmd::Adapt { genus, cocycle, target, format } => {
            let (_, rep) = humphries_representation(genus)?;
            let u = load_cocycle(&cocycle)?;
            let first = adapt_to_s(&u, &rep)?;
            let (adapted, shift) = match target {
                Target::S => (first.adapted, first.shift),
                Target::Sprime => {
                    let second = adapt_to_sprime(&first.adapted, &rep)?;
                    (second.adapted, &first.shift + &second.shift)
                }
            };
            match format {
                Format::Json => println!(
                    "{:#}",
                    json!({
                        "shift": jsonnum::vec_to_value(shift.coords()),
                        "adapted": adapted.to_json(),
                    })
                ),
                Format::Text => {
                    println!("shift = {shift}");
                    println!("adapted cocycle:");
                    print_assignment(&adapted, "  ");
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors; anything else is
            // malformed input.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
