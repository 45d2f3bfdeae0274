//! `odprof` — check, witness, map, discover, and differential-test order
//! dependencies over CSV tables.
//!
//! Exit codes encode verdicts so shell pipelines can assert them:
//! 0 — the statement holds (or the command simply succeeded);
//! 1 — the statement is violated / violations were found;
//! 2 — usage, parse, load, or bounds errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use odprof_cli::loader::{load_csv, LoadError, LoadOptions};
use odprof_cli::parse::{
    parse_canonical, parse_ocd, parse_od, render_canonical, render_list_od, NameCollector,
    ParseError,
};
use odprof_cli::report::{
    BoundsMeta, DependencyEntry, DiffSection, MissedEntry, Report, Stable, StatsSection,
    TableMeta, Volatile, WitnessSection,
};
use odprof_core::checker::{check, find_splits, find_swaps, holds_canonical, WitnessReport};
use odprof_core::discovery_list;
use odprof_core::discovery_set::{self, DiscoveryConfig, MinimalityPolicy};
use odprof_core::model::{ModelError, Table, ValueType};
use odprof_core::oracle::{enumerate_valid_list_ods, EnumerationBounds, OracleError};

#[derive(Parser)]
#[command(
    name = "odprof",
    version,
    about = "Order dependency profiler for CSV tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LoadArgs {
    /// CSV file to profile.
    file: PathBuf,
    /// Field delimiter (one ASCII character).
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// Treat the first line as data, naming columns c0, c1, ...
    #[arg(long)]
    no_header: bool,
    /// Force a column type instead of inferring it, e.g. --type bin=text.
    /// Types: integer, real, date, text. Repeatable.
    #[arg(long = "type", value_name = "NAME=TYPE")]
    types: Vec<String>,
    /// Additional accepted date pattern (chrono syntax). Repeatable;
    /// tried after the defaults %Y-%m-%d and %d/%m/%Y.
    #[arg(long = "date-format", value_name = "PATTERN")]
    date_formats: Vec<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Context-lattice discovery of canonical statements (complete).
    Set,
    /// Attribute-list traversal (fast, repeat-free, incomplete).
    List,
}

#[derive(Subcommand)]
enum Command {
    /// Check one dependency statement against a table.
    Check {
        #[command(flatten)]
        load: LoadArgs,
        /// Ordering statement, e.g. "salary -> tax".
        #[arg(long, group = "statement", required = true)]
        od: Option<String>,
        /// Compatibility statement, e.g. "bin ~ salary".
        #[arg(long, group = "statement")]
        ocd: Option<String>,
        /// Canonical statement, e.g. "{year} : [] -> bin".
        #[arg(long, group = "statement")]
        canonical: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// List the split and swap witnesses violating an ordering statement.
    Witnesses {
        #[command(flatten)]
        load: LoadArgs,
        /// Ordering statement, e.g. "position -> salary".
        #[arg(long)]
        od: String,
        /// Cap on listed witnesses (default 100; totals are never capped).
        /// The OD_PROF_LIMIT environment variable changes the default.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Translate a list statement into its canonical image set. Needs no
    /// table: names are interned in order of first appearance.
    Map {
        /// Ordering statement, e.g. "A,B -> C,D".
        #[arg(long, group = "statement", required = true)]
        od: Option<String>,
        /// Compatibility statement, e.g. "A ~ B".
        #[arg(long, group = "statement")]
        ocd: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Discover the dependencies a table satisfies.
    Discover {
        #[command(flatten)]
        load: LoadArgs,
        #[arg(long, value_enum, default_value_t = Engine::Set)]
        engine: Engine,
        /// Largest context size for the set engine (default: the arity).
        #[arg(long)]
        max_context: Option<usize>,
        /// Deepest candidate level for the list engine.
        #[arg(long, default_value_t = 4)]
        max_level: usize,
        /// Evaluate each lattice level's contexts concurrently (set engine).
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare the list engine against the exhaustive enumeration and
    /// report the valid statements it cannot reach.
    Diff {
        #[command(flatten)]
        load: LoadArgs,
        /// Maximum attribute-list length for the enumeration.
        #[arg(long, default_value_t = 2)]
        bounds: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively enumerate the valid ordering statements within bounds
    /// (brute force; the reference the fast engines are tested against).
    Oracle {
        #[command(flatten)]
        load: LoadArgs,
        /// Maximum attribute-list length per side.
        #[arg(long)]
        max_len: usize,
        /// Also enumerate sides that repeat attributes.
        #[arg(long)]
        allow_repeats: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    ListDiscovery(#[from] discovery_list::ListDiscoveryError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot serialize the report: {0}")]
    Json(#[from] serde_json::Error),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}

fn parse_type_override(raw: &str) -> Result<(String, ValueType), CliError> {
    let (name, ty) = raw.split_once('=').ok_or_else(|| {
        CliError::Usage(format!("--type expects NAME=TYPE, got {raw:?}"))
    })?;
    let ty = match ty.trim().to_ascii_lowercase().as_str() {
        "integer" | "int" => ValueType::Integer,
        "real" | "float" => ValueType::Real,
        "date" => ValueType::Date,
        "text" | "string" => ValueType::Text,
        other => {
            return Err(CliError::Usage(format!(
                "unknown type {other:?}; use integer, real, date, or text"
            )))
        }
    };
    Ok((name.trim().to_string(), ty))
}

fn load_table(args: &LoadArgs) -> Result<Table, CliError> {
    if !args.delimiter.is_ascii() {
        return Err(CliError::Usage(format!(
            "delimiter must be one ASCII character, got {:?}",
            args.delimiter
        )));
    }
    let mut overrides = BTreeMap::new();
    for raw in &args.types {
        let (name, ty) = parse_type_override(raw)?;
        overrides.insert(name, ty);
    }
    let mut opts = LoadOptions {
        delimiter: args.delimiter as u8,
        has_header: !args.no_header,
        type_overrides: overrides,
        ..LoadOptions::default()
    };
    opts.date_formats.extend(args.date_formats.iter().cloned());
    Ok(load_csv(&args.file, &opts)?)
}

fn table_namer(table: &Table) -> impl Fn(usize) -> String + '_ {
    |attribute| table.column_name(attribute).to_string()
}

fn witness_limit(explicit: Option<usize>) -> Option<usize> {
    if let Some(limit) = explicit {
        return Some(limit);
    }
    match std::env::var("OD_PROF_LIMIT") {
        Ok(value) => value.parse().ok(),
        Err(_) => Some(100),
    }
}

fn emit(report: Report) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn verdict_code(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Check {
            load,
            od,
            ocd,
            canonical,
            json,
        } => {
            let started = Instant::now();
            let table = load_table(&load)?;
            let resolve = |name: &str| table.attribute(name);
            let name = table_namer(&table);
            let (entry, rendered, holds) = if let Some(text) = od {
                let statement = parse_od(&text, resolve)?;
                statement.validate(table.arity())?;
                let holds = check(&table, &statement);
                (
                    DependencyEntry::from_list_od(&statement, &name, Some(holds), None),
                    render_list_od(&statement, &name),
                    holds,
                )
            } else if let Some(text) = ocd {
                let statement = parse_ocd(&text, resolve)?;
                statement.validate(table.arity())?;
                let holds = check(&table, &statement);
                (
                    DependencyEntry::from_list_od(&statement, &name, Some(holds), None),
                    render_list_od(&statement, &name),
                    holds,
                )
            } else if let Some(text) = canonical {
                let statement = parse_canonical(&text, resolve)?;
                statement.validate(table.arity())?;
                let holds = holds_canonical(&table, &statement);
                (
                    DependencyEntry::from_canonical(&statement, &name, Some(holds)),
                    render_canonical(&statement, &name),
                    holds,
                )
            } else {
                unreachable!("clap requires one statement");
            };
            if json {
                emit(Report {
                    stable: Stable {
                        engine: "checker".to_string(),
                        table: Some(TableMeta::of(&table)),
                        dependencies: vec![entry],
                        witnesses: None,
                        diff: None,
                        stats: None,
                    },
                    volatile: Volatile {
                        elapsed_ms: started.elapsed().as_millis(),
                    },
                })?;
            } else {
                println!("{rendered}: {}", if holds { "holds" } else { "violated" });
            }
            Ok(verdict_code(holds))
        }

        Command::Witnesses {
            load,
            od,
            limit,
            json,
        } => {
            let started = Instant::now();
            let table = load_table(&load)?;
            let statement = parse_od(&od, |name| table.attribute(name))?;
            statement.validate(table.arity())?;
            let name = table_namer(&table);
            let mut found = find_splits(&table, statement.lhs(), statement.rhs());
            found.extend(find_swaps(&table, statement.lhs(), statement.rhs()));
            let report = WitnessReport::capped(found, witness_limit(limit));
            let any = report.total() > 0;
            if json {
                emit(Report {
                    stable: Stable {
                        engine: "checker".to_string(),
                        table: Some(TableMeta::of(&table)),
                        dependencies: vec![DependencyEntry::from_list_od(
                            &statement,
                            &name,
                            Some(!any),
                            None,
                        )],
                        witnesses: Some(WitnessSection::of(&report, &name)),
                        diff: None,
                        stats: None,
                    },
                    volatile: Volatile {
                        elapsed_ms: started.elapsed().as_millis(),
                    },
                })?;
            } else {
                println!(
                    "{}: {} witness(es)",
                    render_list_od(&statement, &name),
                    report.total()
                );
                for entry in report.witnesses() {
                    match entry {
                        odprof_core::checker::Witness::Split {
                            rows,
                            agrees_on: _,
                            differs_at,
                        } => println!(
                            "split rows ({},{}) differing at {}",
                            rows.0,
                            rows.1,
                            name(*differs_at)
                        ),
                        odprof_core::checker::Witness::Swap { rows, .. } => {
                            println!("swap rows ({},{})", rows.0, rows.1)
                        }
                    }
                }
                if report.truncated() {
                    println!("... list capped at {}", report.witnesses().len());
                }
            }
            Ok(verdict_code(!any))
        }

        Command::Map { od, ocd, json } => {
            let started = Instant::now();
            let mut collector = NameCollector::new();
            let image = if let Some(text) = od {
                let statement = parse_od(&text, |n| Some(collector.intern(n)))?;
                odprof_core::deps::map_od_to_canonical(statement.lhs(), statement.rhs())
            } else if let Some(text) = ocd {
                let statement = parse_ocd(&text, |n| Some(collector.intern(n)))?;
                odprof_core::deps::map_ocd_to_canonical(statement.lhs(), statement.rhs())
            } else {
                unreachable!("clap requires one statement");
            };
            let name = |attribute: usize| collector.name(attribute).to_string();
            if json {
                emit(Report {
                    stable: Stable {
                        engine: "mapper".to_string(),
                        table: None,
                        dependencies: image
                            .iter()
                            .map(|d| DependencyEntry::from_canonical(d, &name, None))
                            .collect(),
                        witnesses: None,
                        diff: None,
                        stats: None,
                    },
                    volatile: Volatile {
                        elapsed_ms: started.elapsed().as_millis(),
                    },
                })?;
            } else {
                for d in image.iter() {
                    println!("{}", render_canonical(d, &name));
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Discover {
            load,
            engine,
            max_context,
            max_level,
            parallel,
            json,
        } => {
            let started = Instant::now();
            let table = load_table(&load)?;
            let name = table_namer(&table);
            let (dependencies, stats): (Vec<DependencyEntry>, StatsSection) = match engine {
                Engine::Set => {
                    let config = DiscoveryConfig {
                        max_context_size: max_context,
                        parallel,
                        ..DiscoveryConfig::default()
                    };
                    let run = discovery_set::discover_with_stats(
                        &table,
                        &config,
                        &MinimalityPolicy::default(),
                    );
                    (
                        run.dependencies
                            .iter()
                            .map(|d| DependencyEntry::from_canonical(d, &name, Some(true)))
                            .collect(),
                        StatsSection {
                            contexts_visited: Some(run.stats.contexts_visited),
                            contexts_skipped: Some(run.stats.contexts_skipped),
                            ..StatsSection::default()
                        },
                    )
                }
                Engine::List => {
                    let run = discovery_list::discover_with_stats(&table, max_level)?;
                    (
                        run.dependencies
                            .iter()
                            .map(|od| {
                                DependencyEntry::from_list_od(od, &name, Some(true), None)
                            })
                            .collect(),
                        StatsSection {
                            candidates_generated: Some(run.stats.candidates_generated),
                            candidates_checked: Some(run.stats.candidates_checked),
                            candidates_satisfied: Some(run.stats.candidates_satisfied),
                            ..StatsSection::default()
                        },
                    )
                }
            };
            if json {
                emit(Report {
                    stable: Stable {
                        engine: match engine {
                            Engine::Set => "set".to_string(),
                            Engine::List => "list".to_string(),
                        },
                        table: Some(TableMeta::of(&table)),
                        dependencies,
                        witnesses: None,
                        diff: None,
                        stats: Some(stats),
                    },
                    volatile: Volatile {
                        elapsed_ms: started.elapsed().as_millis(),
                    },
                })?;
            } else {
                match engine {
                    Engine::Set => {
                        let run = discovery_set::discover(
                            &table,
                            &DiscoveryConfig {
                                max_context_size: max_context,
                                parallel,
                                ..DiscoveryConfig::default()
                            },
                            &MinimalityPolicy::default(),
                        );
                        for d in run.iter() {
                            println!("{}", render_canonical(d, &name));
                        }
                    }
                    Engine::List => {
                        for od in discovery_list::discover(&table, max_level)? {
                            println!("{}", render_list_od(&od, &name));
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Diff { load, bounds, json } => {
            let started = Instant::now();
            let table = load_table(&load)?;
            let name = table_namer(&table);
            let bounds = EnumerationBounds::new(bounds, true)
                .with_max_attrs(table.arity().max(1));
            let report = discovery_list::diff_against_complete(&table, &bounds)?;
            let section = DiffSection {
                bounds: BoundsMeta {
                    max_list_len: report.bounds.max_list_len,
                    allow_repeats: report.bounds.allow_repeats,
                    max_attrs: report.bounds.max_attrs,
                },
                missed: report
                    .missed
                    .iter()
                    .map(|entry| MissedEntry {
                        od: render_list_od(&entry.od, &name),
                        canonical: entry
                            .canonical
                            .iter()
                            .map(|d| render_canonical(d, &name))
                            .collect(),
                        covered_by_set: entry.covered_by_set,
                    })
                    .collect(),
                found_by_both: report
                    .found_by_both
                    .iter()
                    .map(|od| render_list_od(od, &name))
                    .collect(),
                found_only_by_set: report
                    .found_only_by_set
                    .iter()
                    .map(|od| render_list_od(od, &name))
                    .collect(),
            };
            if json {
                emit(Report {
                    stable: Stable {
                        engine: "diff".to_string(),
                        table: Some(TableMeta::of(&table)),
                        dependencies: Vec::new(),
                        witnesses: None,
                        diff: Some(section),
                        stats: None,
                    },
                    volatile: Volatile {
                        elapsed_ms: started.elapsed().as_millis(),
                    },
                })?;
            } else {
                for entry in &section.missed {
                    let coverage = if entry.covered_by_set {
                        "covered by the set engine"
                    } else {
                        "not covered by the set engine"
                    };
                    println!(
                        "missed: {} => {} ({coverage})",
                        entry.od,
                        entry.canonical.join("; ")
                    );
                }
                for od in &section.found_by_both {
                    println!("found by both: {od}");
                }
                if section.missed.is_empty() {
                    println!("nothing missed within bounds");
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Oracle {
            load,
            max_len,
            allow_repeats,
            json,
        } => {
            let started = Instant::now();
            let table = load_table(&load)?;
            let name = table_namer(&table);
            let bounds = EnumerationBounds::new(max_len, allow_repeats)
                .with_max_attrs(table.arity().max(1));
            let valid = enumerate_valid_list_ods(&table, &bounds)?;
            if json {
                emit(Report {
                    stable: Stable {
                        engine: "oracle".to_string(),
                        table: Some(TableMeta::of(&table)),
                        dependencies: valid
                            .iter()
                            .map(|od| {
                                DependencyEntry::from_list_od(
                                    od,
                                    &name,
                                    Some(true),
                                    Some(od.is_trivial()),
                                )
                            })
                            .collect(),
                        witnesses: None,
                        diff: None,
                        stats: None,
                    },
                    volatile: Volatile {
                        elapsed_ms: started.elapsed().as_millis(),
                    },
                })?;
            } else {
                for od in &valid {
                    let suffix = if od.is_trivial() { " (trivial)" } else { "" };
                    println!("{}{suffix}", render_list_od(od, &name));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
