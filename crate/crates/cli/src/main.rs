//! Command-line front end: check stability concepts at a partition, search
//! for stable partitions, optimise welfare, and export concept formulas as
//! DIMACS CNF.
//!
//! Exit codes: 0 for a positive answer, 1 for a well-formed query with a
//! negative answer (concept fails, nothing found, no entailment), 2 for
//! usage and input errors. A reader closing our stdout mid-stream ends the
//! run quietly with 0.

use std::error::Error;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hedonic::concepts::{
    check_concept, core_formula, envy_free_formula, ir_formula, nash_formula,
    nash_formula_compact, perfect_formula, strict_core_formula, Concept,
};
use hedonic::game::{BooleanHedonicGame, GameDocument};
use hedonic::logic::{free_pairs, parse_formula, Formula};
use hedonic::partitions::{enumerate_partitions, parse_partition};
use hedonic::solve::{
    compile_cnf, enumerate_models, find_pareto, greedy_core, max_welfare, p_entails, sat,
    SolveResult,
};

#[derive(Parser)]
#[command(
    name = "hedonic",
    version,
    about = "Decide stability concepts of Boolean hedonic games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    /// Enumerate all partitions and run the direct checker.
    Enum,
    /// Compile the concept's formula and enumerate its models.
    Sat,
}

#[derive(Subcommand)]
enum Command {
    /// Check concepts at a given partition of a game
    Check {
        /// Path to a game file (JSON)
        #[arg(long)]
        game: PathBuf,
        /// The partition to check, e.g. "1,2|3"
        #[arg(long)]
        partition: String,
        /// Comma-separated concept list, or "all"
        #[arg(long, default_value = "all")]
        concept: String,
    },
    /// Find partitions satisfying a concept
    Find {
        #[arg(long)]
        game: PathBuf,
        /// One concept identifier, e.g. "nash" or "strict-core"
        #[arg(long)]
        concept: String,
        /// List every matching partition (sorted) instead of the first
        #[arg(long)]
        all: bool,
        /// Search strategy; defaults to enumeration for small games
        #[arg(long, value_enum)]
        via: Option<Via>,
    },
    /// Print the maximum achievable welfare and a partition attaining it
    Welfare {
        #[arg(long)]
        game: PathBuf,
    },
    /// Print a Pareto-optimal partition
    Pareto {
        #[arg(long)]
        game: PathBuf,
    },
    /// Print a core-stable partition built by the greedy construction
    Core {
        #[arg(long)]
        game: PathBuf,
    },
    /// Export a concept formula as DIMACS CNF
    ExportDimacs {
        #[arg(long)]
        game: PathBuf,
        /// One of: perfect, ir, nash, nash-compact, envy-free, core
        #[arg(long)]
        formula: String,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether one formula entails another over all partitions
    Entails {
        /// Number of players the formulas range over
        #[arg(long)]
        n: u32,
        premise: String,
        conclusion: String,
    },
    /// Summarise a game file
    Stats {
        #[arg(long)]
        game: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if let Some(io_err) = e.downcast_ref::<io::Error>() {
                if io_err.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::from(0);
                }
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_game(path: &Path) -> Result<BooleanHedonicGame, Box<dyn Error>> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let doc: GameDocument = serde_json::from_str(&text)
        .map_err(|e| format!("{} is not a valid game file: {e}", path.display()))?;
    Ok(BooleanHedonicGame::from_document(&doc)?)
}

fn parse_concept_list(text: &str) -> Result<Vec<Concept>, Box<dyn Error>> {
    if text == "all" {
        return Ok(Concept::ALL.to_vec());
    }
    text.split(',')
        .map(|s| Ok(s.trim().parse::<Concept>()?))
        .collect()
}

fn run(cli: Cli) -> Result<u8, Box<dyn Error>> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Check {
            game,
            partition,
            concept,
        } => {
            let game = load_game(&game)?;
            let pi = parse_partition(&partition)?;
            game.check_partition(&pi)?;
            let concepts = parse_concept_list(&concept)?;
            let mut all_hold = true;
            for concept in concepts {
                let report = check_concept(&game, &pi, concept)?;
                match (report.holds, report.witness) {
                    (true, _) => writeln!(out, "{concept}: holds")?,
                    (false, Some(witness)) => writeln!(out, "{concept}: fails ({witness})")?,
                    (false, None) => writeln!(out, "{concept}: fails")?,
                }
                all_hold &= report.holds;
            }
            Ok(if all_hold { 0 } else { 1 })
        }
        Command::Find {
            game,
            concept,
            all,
            via,
        } => {
            let game = load_game(&game)?;
            let concept: Concept = concept.parse()?;
            let enumeration_only =
                matches!(concept, Concept::ParetoOptimal | Concept::WelfareOptimal);
            let via = via.unwrap_or(if enumeration_only || game.n() <= 6 {
                Via::Enum
            } else {
                Via::Sat
            });
            if via == Via::Sat && enumeration_only {
                return Err(format!(
                    "{concept} has no formula characterization; rerun with --via enum"
                )
                .into());
            }
            let mut found = match via {
                Via::Enum => {
                    let mut found = Vec::new();
                    for pi in enumerate_partitions(game.n())? {
                        if check_concept(&game, &pi, concept)?.holds {
                            found.push(pi);
                            if !all {
                                break;
                            }
                        }
                    }
                    found
                }
                Via::Sat => {
                    let doc = compile_cnf(&characterization_formula(&game, concept)?, game.n())?;
                    if all {
                        enumerate_models(&doc).collect()
                    } else {
                        match sat(&doc) {
                            SolveResult::Sat { partition, .. } => vec![partition],
                            SolveResult::Unsat => Vec::new(),
                        }
                    }
                }
            };
            if found.is_empty() {
                writeln!(out, "none")?;
                return Ok(1);
            }
            found.sort();
            for pi in found {
                writeln!(out, "{pi}")?;
            }
            Ok(0)
        }
        Command::Welfare { game } => {
            let game = load_game(&game)?;
            let (best, witness) = max_welfare(&game)?;
            writeln!(out, "{best}")?;
            writeln!(out, "{witness}")?;
            Ok(0)
        }
        Command::Pareto { game } => {
            let game = load_game(&game)?;
            writeln!(out, "{}", find_pareto(&game)?)?;
            Ok(0)
        }
        Command::Core { game } => {
            let game = load_game(&game)?;
            writeln!(out, "{}", greedy_core(&game)?)?;
            Ok(0)
        }
        Command::ExportDimacs { game, formula, out: out_path } => {
            let game = load_game(&game)?;
            let phi = export_formula(&game, &formula)?;
            let doc = compile_cnf(&phi, game.n())?;
            match out_path {
                Some(path) => fs::write(&path, doc.to_dimacs())
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => write!(out, "{}", doc.to_dimacs())?,
            }
            Ok(0)
        }
        Command::Entails {
            n,
            premise,
            conclusion,
        } => {
            let phi = parse_formula(&premise, n)?;
            let psi = parse_formula(&conclusion, n)?;
            if p_entails(&phi, &psi, n)? {
                writeln!(out, "entails")?;
                Ok(0)
            } else {
                writeln!(out, "does not entail")?;
                Ok(1)
            }
        }
        Command::Stats { game } => {
            let game = load_game(&game)?;
            writeln!(out, "players: {}", game.n())?;
            writeln!(
                out,
                "mode: {}",
                if game.is_relaxed() { "relaxed" } else { "strict" }
            )?;
            let mut total = 0;
            for i in game.players() {
                let goal = game.goal(i)?;
                let size = goal.size();
                total += size;
                writeln!(
                    out,
                    "goal {i}: size {size}, pair variables {}",
                    free_pairs(goal).len()
                )?;
            }
            writeln!(out, "total goal size: {total}")?;
            Ok(0)
        }
    }
}

/// The formula whose models are the concept's stable partitions; used by
/// `find --via sat`.
fn characterization_formula(
    game: &BooleanHedonicGame,
    concept: Concept,
) -> Result<Formula, hedonic::Error> {
    match concept {
        Concept::IndividuallyRational => ir_formula(game),
        Concept::Perfect => Ok(perfect_formula(game)),
        Concept::NashStable => {
            if game.is_relaxed() {
                nash_formula(game)
            } else {
                nash_formula_compact(game)
            }
        }
        Concept::CoreStable => core_formula(game),
        Concept::StrictCoreStable => strict_core_formula(game),
        Concept::EnvyFree => envy_free_formula(game),
        Concept::ParetoOptimal | Concept::WelfareOptimal => {
            unreachable!("rejected before formula selection")
        }
    }
}

/// Resolves the `export-dimacs --formula` identifier.
fn export_formula(game: &BooleanHedonicGame, id: &str) -> Result<Formula, Box<dyn Error>> {
    Ok(match id {
        "perfect" => perfect_formula(game),
        "ir" => ir_formula(game)?,
        "nash" => nash_formula(game)?,
        "nash-compact" => nash_formula_compact(game)?,
        "envy-free" => envy_free_formula(game)?,
        "core" => core_formula(game)?,
        other => {
            return Err(format!(
                "unknown formula `{other}`; expected one of perfect, ir, nash, nash-compact, envy-free, core"
            )
            .into())
        }
    })
}
