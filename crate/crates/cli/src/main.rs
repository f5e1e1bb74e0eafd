use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use picard_cli::output::{render, Format};
use picard_cli::repro::{self, Status};
use picard_cli::{commands, parse_budget, registry, Exit, BUDGET_ENV, WORKERS_ENV};
use picard_core::gf::cache::CountCache;
use picard_core::{Error, Result};
use serde_json::json;

/// Picard numbers of Delsarte surfaces, point counts and Frobenius charpolys.
#[derive(Parser)]
#[command(name = "picard", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Time budget for counting checks, e.g. `60s` or `10m`.
    #[arg(long, global = true, env = BUDGET_ENV, value_parser = parse_budget)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of the Fermat surface of degree m.
    Fermat {
        m: i64,
        #[arg(long)]
        mod_p: Option<i64>,
    },
    /// Invariants of a four-monomial surface (monomial list or registered name).
    Delsarte {
        surface: String,
        #[arg(long)]
        mod_p: Option<i64>,
        /// Picard number of the reduction for every residue class.
        #[arg(long)]
        profile: bool,
    },
    /// Picard numbers attained by Delsarte quintics with only rational double points.
    Census {
        /// Writes every record as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residues mod m at which the orbit of a character becomes algebraic.
    Hset { surface: String, orbit_rep: String },
    /// Point count of a model over F_{p^k}.
    Count {
        model: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// Counts points with Frob(P) = G^J·P for the model's automorphism G.
        #[arg(long)]
        twist: Option<u64>,
    },
    /// Frobenius charpoly from a recipe file or a named model.
    Charpoly { recipe: String },
    /// Lifting order of a fixture (file, name, or `all`).
    Lift { fixture: String },
    /// Singular members of a pencil (file, name, or `all`).
    Pencil { fixture: String },
    /// Gram matrix summary of a curve configuration.
    Lattice { config: String },
    /// Runs named reproduction checks.
    Repro {
        /// Check name or criterion number.
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
        #[arg(long)]
        list: bool,
    },
    /// Lists registered surfaces, recipes and fixtures.
    Names,
}

fn init_workers() {
    if let Some(n) = std::env::var(WORKERS_ENV).ok().and_then(|s| s.parse::<usize>().ok()) {
        // a second initialization is harmless here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn dispatch(cli: &Cli) -> Result<commands::Outcome> {
    let cache = || CountCache::from_env();
    match &cli.command {
        Command::Fermat { m, mod_p } => commands::fermat(*m, *mod_p),
        Command::Delsarte { surface, mod_p, profile } => commands::delsarte(surface, *mod_p, *profile),
        Command::Census { out } => commands::census(out.as_deref()),
        Command::Hset { surface, orbit_rep } => commands::hset(surface, orbit_rep),
        Command::Count { model, p, k, twist } => {
            let m = registry::load::<commands::CountModel>(&model.to_string_lossy())
                .ok_or_else(|| Error::Invalid(format!("{}: no such file", model.display())))??;
            commands::count(&m, *p, *k, *twist, &cache()?)
        }
        Command::Charpoly { recipe } => commands::charpoly(&commands::resolve_recipe(recipe)?, &cache()?),
        Command::Lift { fixture } => commands::lift(fixture),
        Command::Pencil { fixture } => commands::pencil(fixture),
        Command::Lattice { config } => commands::lattice(&commands::resolve_lattice(config)?),
        Command::Repro { name, all, list } => {
            if *list || (name.is_none() && !all) {
                let rows = repro::checks()
                    .iter()
                    .map(|c| json!({"criterion": c.criterion, "name": c.name, "title": c.title}))
                    .collect();
                return Ok((rows, Exit::Ok));
            }
            let selected = match name {
                Some(n) => vec![repro::find(n).ok_or_else(|| {
                    registry::unknown("check", n, repro::checks().iter().map(|c| c.name.to_string()))
                })?],
                None => repro::checks(),
            };
            let reports = repro::run(&selected, &cache()?, cli.budget);
            let exit = if reports.iter().any(|r| r.status == Status::Fail) {
                Exit::Mismatch
            } else if reports.iter().any(|r| r.status == Status::Skipped) {
                Exit::Resource
            } else {
                Exit::Ok
            };
            let v = match cli.format {
                Format::Json => serde_json::to_value(&reports).expect("reports serialize"),
                Format::Table => reports
                    .iter()
                    .map(|r| json!({"criterion": r.criterion, "name": r.name, "status": r.status.to_string(), "summary": r.summary}))
                    .collect(),
            };
            Ok((v, exit))
        }
        Command::Names => Ok((
            json!({
                "surfaces": registry::SURFACES
                    .iter()
                    .map(|s| json!({"name": s.name, "monomials": s.monomials, "rho": s.rho}))
                    .collect::<Vec<_>>(),
                "charpoly_recipes": registry::CHARPOLY_RECIPES,
                "lifting_fixtures": picard_core::fixtures::lifting::all().iter().map(|f| f.name.clone()).collect::<Vec<_>>(),
                "pencils": picard_core::fixtures::pencils::all().iter().map(|f| f.name.clone()).collect::<Vec<_>>(),
            }),
            Exit::Ok,
        )),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Usage as u8 } else { 0 });
        }
    };
    init_workers();
    match dispatch(&cli) {
        Ok((v, exit)) => {
            print!("{}", render(&v, cli.format));
            if cli.format == Format::Json {
                println!();
            }
            ExitCode::from(exit as u8)
        }
        Err(e) => {
            eprintln!("picard: {e}");
            ExitCode::from(Exit::of_error(&e) as u8)
        }
    }
}
