//! `solrep`: subgroup lattices, chief series and replacement-property
//! reports for small permutation groups.

mod check;
mod survey;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use solrep_core::analysis::{analyze, AnalysisOptions};
use solrep_core::genset::DEFAULT_BUDGET_NODES;
use solrep_core::group::{DEFAULT_MAX_DEGREE, DEFAULT_MAX_ORDER};
use solrep_core::lattice::DEFAULT_MAX_SUBGROUPS;
use solrep_core::structure::{chief_series, chief_series_randomized, hawkes_mu, m_via_chief};
use solrep_core::{enumerate_subgroups, Error, Group, GroupSpec, Limits};

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_INCONCLUSIVE: u8 = 4;
pub const EXIT_NON_SOLUBLE: u8 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "solrep",
    version,
    about = "Replacement-property analysis of small permutation groups"
)]
struct Cli {
    /// Largest group order to enumerate; `check` also skips larger catalog groups.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SUBGROUPS)]
    max_subgroups: usize,

    /// Closure budget for each generating-set search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_NODES)]
    budget_nodes: u64,

    /// Worker threads for survey and check; 0 picks the number of cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Survey table destination.
    #[arg(long, global = true)]
    tsv: Option<PathBuf>,

    /// JSON output for lattice, chief and survey.
    #[arg(long, global = true)]
    json: bool,

    /// Skip the generating-set searches; their fields become null.
    #[arg(long, global = true)]
    skip_genset: bool,

    /// Seed for randomized chief-series rebuilds.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full invariant report for one group, as JSON.
    Analyze { spec: String },
    /// One line per subgroup: id, order, normality, Moebius value, members.
    Lattice { spec: String },
    /// Chief series with complement counts (soluble groups only).
    Chief { spec: String },
    /// One table row per group; specs may contain ranges like `cyclic:2..8`.
    Survey {
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Cross-check suite over the built-in catalog.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    /// Replacement property, complemented lattice and nonzero mobius(1) agree.
    Theorem1,
    /// Strong replacement holds exactly for the classified shapes.
    Theorem2,
    /// Signed product of chief complement counts equals mobius(1).
    Hawkes,
    /// Complemented chief factors count the largest irredundant generating set.
    Archmin,
}

pub struct Settings {
    pub limits: Limits,
    pub analysis: AnalysisOptions,
    pub threads: usize,
    pub seed: u64,
}

impl Settings {
    fn from_cli(cli: &Cli) -> Self {
        Settings {
            limits: Limits {
                max_order: cli.max_order,
                max_degree: DEFAULT_MAX_DEGREE,
            },
            analysis: AnalysisOptions {
                max_subgroups: cli.max_subgroups,
                budget_nodes: cli.budget_nodes,
                skip_genset: cli.skip_genset,
            },
            threads: cli.threads,
            seed: cli.seed.unwrap_or(0),
        }
    }

    pub fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .expect("thread pool")
    }
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_cap() {
            EXIT_CAP
        } else if matches!(e, Error::NonSoluble) {
            EXIT_NON_SOLUBLE
        } else {
            EXIT_PARSE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

pub fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn build(spec: &str, settings: &Settings) -> Result<Group, Failure> {
    Ok(GroupSpec::parse(spec)?.build(&settings.limits)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let settings = Settings::from_cli(cli);
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Analyze { spec } => {
            let g = build(spec, &settings)?;
            let report = analyze(&g, &settings.analysis)?;
            emit(out, &to_json(&report))?;
            Ok(if report.statuses.any_inconclusive() {
                EXIT_INCONCLUSIVE
            } else {
                0
            })
        }
        Command::Lattice { spec } => {
            let g = build(spec, &settings)?;
            let l = enumerate_subgroups(&g, settings.analysis.max_subgroups)?;
            let text = if cli.json {
                let rows: Vec<serde_json::Value> = l
                    .ids()
                    .map(|id| {
                        serde_json::json!({
                            "id": id.0,
                            "order": l.order_of(id),
                            "normal": l.is_normal(id),
                            "mobius": l.mobius(id),
                            "members": l.subgroup(id).to_vec(),
                        })
                    })
                    .collect();
                to_json(&rows)
            } else {
                l.dump()
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Chief { spec } => {
            let g = build(spec, &settings)?;
            let l = enumerate_subgroups(&g, settings.analysis.max_subgroups)?;
            let series = match cli.seed {
                Some(seed) => chief_series_randomized(&l, seed),
                None => chief_series(&l),
            };
            let text = if cli.json {
                to_json(&serde_json::json!({
                    "name": g.name(),
                    "n": series.len(),
                    "hawkes_mu": hawkes_mu(&series)?,
                    "m_chief": m_via_chief(&series)?,
                    "factors": series.factors,
                }))
            } else {
                series.dump()?
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Survey { specs } => {
            survey::run(specs, &settings, cli.tsv.as_deref().or(out), cli.json)
        }
        Command::Check { suite } => check::run(*suite, &settings, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("solrep: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
