use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use subindep_core::format::{from_json, to_json};
use subindep_core::generation::DEFAULT_MAX_CONGRUENCE_SIZE;
use subindep_core::independence::{
    decide_congruence_independence, decide_subalgebra_independence, group_diagnostics, CongruenceOptions,
};
use subindep_core::morphisms::find_isomorphism;
use subindep_core::zoo::{self, laws, CategoryTag, Family};
use subindep_core::{suite, HomClass, Mode, Structure, SubUniverse};

mod report;

/// Seed that reproduces the rigid graph shipped with the library.
const DEFAULT_SEED: u64 = 4;

#[derive(Parser)]
#[command(name = "subindep", version, about = "Subalgebra and congruence independence for finite structures")]
struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest join on which congruence lattices are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CONGRUENCE_SIZE)]
    max_size: usize,
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Homs {
    /// Every endomorphism.
    All,
    /// Automorphisms only.
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Build a structure from a named family and write it as JSON.
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide subalgebra independence of two subuniverses.
    DecideSub {
        #[arg(short, long)]
        structure: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Homs::All)]
        homs: Homs,
        #[arg(long, default_value_t = Mode::Weak)]
        mode: Mode,
    },
    /// Decide congruence independence of two subuniverses.
    DecideCong {
        #[arg(short, long)]
        structure: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Normality diagnostics for two subgroups.
    Groups {
        #[arg(short, long)]
        structure: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Build the coproduct of two structures in a category.
    Coproduct {
        #[arg(short, long = "structure", num_args = 1, required = true)]
        structures: Vec<PathBuf>,
        #[arg(long)]
        category: CategoryTag,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for an isomorphism between two structures.
    Iso {
        #[arg(short, long = "structure", num_args = 1, required = true)]
        structures: Vec<PathBuf>,
    },
    /// Run the acceptance battery and print a pass/fail table.
    PaperSuite,
    /// Search for a rigid graph on 7 to 10 vertices.
    Rigid {
        #[arg(long, default_value_t = 10_000)]
        attempts: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// What the process reports: 0 for a positive answer, 1 for a negative one.
enum Answer {
    Yes,
    No,
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

fn read_structure(path: &Path) -> Result<Structure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_subset(s: &Structure, list: &str, flag: &str) -> Result<SubUniverse> {
    let elems = list
        .split(',')
        .map(str::trim)
        .filter(|e| !e.is_empty())
        .map(|e| e.parse::<usize>().with_context(|| format!("--{flag}: `{e}` is not an element index")))
        .collect::<Result<Vec<_>>>()?;
    if elems.is_empty() {
        bail!("--{flag}: empty subset");
    }
    for &x in &elems {
        if x >= s.size() {
            bail!("--{flag}: element {x} is out of range for a universe of size {}", s.size());
        }
    }
    SubUniverse::new(s, elems).with_context(|| format!("--{flag}"))
}

fn two(structures: &[PathBuf]) -> Result<(Structure, Structure)> {
    match structures {
        [x, y] => Ok((read_structure(x)?, read_structure(y)?)),
        _ => bail!("expected exactly two -s arguments, got {}", structures.len()),
    }
}

fn run(cli: Cli) -> Result<Answer> {
    match cli.command {
        Command::Gen { family, params, output } => {
            let (s, tag) = zoo::build(&Family::parse(&family, &params)?)?;
            write_or_print(output.as_deref(), &to_json(&s))?;
            if output.is_some() {
                eprintln!("{} ({tag}, size {})", s.name(), s.size());
            }
            Ok(Answer::Yes)
        }
        Command::DecideSub { structure, a, b, homs, mode } => {
            let s = read_structure(&structure)?;
            let (a, b) = (parse_subset(&s, &a, "a")?, parse_subset(&s, &b, "b")?);
            let class = match homs {
                Homs::All => HomClass::AllEndomorphisms,
                Homs::Auto => HomClass::AutomorphismsOnly,
            };
            let v = decide_subalgebra_independence(&s, &a, &b, class, mode)?;
            print!("{}", if cli.json { report::json(&v) } else { report::subalgebra_text(&v) });
            Ok(v.is_independent().into())
        }
        Command::DecideCong { structure, a, b } => {
            let s = read_structure(&structure)?;
            let (a, b) = (parse_subset(&s, &a, "a")?, parse_subset(&s, &b, "b")?);
            let options = CongruenceOptions { max_size: cli.max_size, ..CongruenceOptions::default() };
            let v = decide_congruence_independence(&s, &a, &b, options)?;
            print!("{}", if cli.json { report::json(&v) } else { report::congruence_text(&v) });
            Ok(v.is_independent().into())
        }
        Command::Groups { structure, a, b } => {
            let s = read_structure(&structure)?;
            laws::check_group(&s)?;
            let (a, b) = (parse_subset(&s, &a, "a")?, parse_subset(&s, &b, "b")?);
            let r = group_diagnostics(&s, &a, &b)?;
            print!("{}", if cli.json { report::json(&r) } else { report::group_text(&r) });
            Ok(Answer::Yes)
        }
        Command::Coproduct { structures, category, output } => {
            let (x, y) = two(&structures)?;
            let cop = zoo::coproduct(category, &x, &y)?;
            write_or_print(output.as_deref(), &to_json(&cop.structure))?;
            if output.is_some() {
                let facts = json!({"size": cop.structure.size(), "left": cop.left.map(), "right": cop.right.map()});
                if cli.json {
                    print!("{}", report::json(&facts));
                } else {
                    println!("size {}", cop.structure.size());
                    println!("left: {}", report::render_map(cop.left.map()));
                    println!("right: {}", report::render_map(cop.right.map()));
                }
            }
            Ok(Answer::Yes)
        }
        Command::Iso { structures } => {
            let (x, y) = two(&structures)?;
            let found = find_isomorphism(&x, &y);
            if cli.json {
                print!("{}", report::json(&json!({"isomorphic": found.is_some(), "map": found.as_ref().map(|h| h.map())})));
            } else {
                match &found {
                    Some(h) => println!("isomorphic: {}", report::render_map(h.map())),
                    None => println!("not isomorphic"),
                }
            }
            Ok(found.is_some().into())
        }
        Command::PaperSuite => {
            let outcomes = suite::run_all();
            if cli.json {
                let rows: Vec<_> = outcomes
                    .iter()
                    .map(|o| json!({"id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail}))
                    .collect();
                print!("{}", report::json(&rows));
            } else {
                for o in &outcomes {
                    println!("{o}");
                }
            }
            Ok(outcomes.iter().all(|o| o.passed).into())
        }
        Command::Rigid { attempts, output } => {
            let Some(found) = zoo::search_rigid_graph(cli.seed, 7..=10, attempts) else {
                eprintln!("no rigid graph found in {attempts} attempts");
                return Ok(Answer::No);
            };
            write_or_print(output.as_deref(), &report::json(&found))?;
            Ok(Answer::Yes)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
