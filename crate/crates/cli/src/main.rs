//! Command-line surface: construct extremal families, count triangles,
//! analyze covers, evaluate bounds, run exhaustive searches and the
//! verification battery.
//!
//! Exit codes: 0 success, 1 domain error, 2 node-budget exhaustion,
//! 3 check or battery failure, 64 usage error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trifam_core::covers::{cover_graph_analysis, covering_number, minimal_covers};
use trifam_core::extremal::{construct_extremal, n_exact, prop1_bounds, ExtremalVariant};
use trifam_core::io::{family_to_json, family_to_text, read_family};
use trifam_core::propcheck::{run_battery, run_checks, BatteryConfig};
use trifam_core::search::{max_triangle_search, nonuniform_max_triangle_search, SearchOptions};
use trifam_core::triangles::count_r_triangles_with;
use trifam_core::{Block, Error, GroundSet};

use output::{print_json, Format};

#[derive(Parser)]
#[command(name = "trifam", version, about = "Exact combinatorics of intersecting families: triangles, covers, bounds, search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// One value or an inclusive range `a..b`.
#[derive(Clone, Debug)]
struct ValueRange(Vec<u32>);

impl FromStr for ValueRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((lo, hi)) = s.split_once("..") {
            let lo: u32 = lo.trim().parse().map_err(|_| format!("invalid range start `{lo}`"))?;
            let hi: u32 = hi.trim().parse().map_err(|_| format!("invalid range end `{hi}`"))?;
            if lo > hi {
                return Err(format!("empty range `{s}`"));
            }
            Ok(ValueRange((lo..=hi).collect()))
        } else {
            let v: u32 = s.trim().parse().map_err(|_| format!("invalid number `{s}`"))?;
            Ok(ValueRange(vec![v]))
        }
    }
}

impl ValueRange {
    fn single(&self, flag: &str) -> Result<u32, Error> {
        if self.0.len() == 1 {
            Ok(self.0[0])
        } else {
            Err(Error::Parse(format!("--{flag} takes a range only with --format csv")))
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Full,
    Boundary,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads (default: available parallelism; env WORKER_COUNT).
    #[arg(long)]
    workers: Option<usize>,
    /// Enumeration node budget (env NODE_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the extremal family for a given X and write it as a family file.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Comma-separated 1-based elements of X, e.g. `1,2,3`.
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Full)]
        variant: VariantArg,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Count the r-element subcollections of a family that are r-triangles.
    CountTriangles {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        r: u32,
        /// Also print each triangle, one per line, in canonical order.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Covering number with a minimum witness.
    Tau {
        #[arg(long)]
        family: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Minimal covers up to a size cap and the graph of 2-element covers.
    Covers {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_size: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exact triangle count of the extremal family with X = {1..r+1}.
    Nrk {
        #[arg(long)]
        n: ValueRange,
        #[arg(long)]
        k: ValueRange,
        #[arg(long)]
        r: ValueRange,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The bound expressions tied to the extremal triangle count.
    Bounds {
        #[arg(long)]
        n: ValueRange,
        #[arg(long)]
        k: ValueRange,
        #[arg(long)]
        r: ValueRange,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run every applicable check against a family.
    Check {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exhaustive maximizer search over maximal r-wise intersecting families.
    Search {
        #[arg(long)]
        n: ValueRange,
        #[arg(long)]
        k: ValueRange,
        #[arg(long)]
        r: ValueRange,
        /// Cap on maximizer representatives in the report.
        #[arg(long, default_value_t = 16)]
        reps: usize,
        /// Deduplicate maximizers up to relabeling (n <= 8).
        #[arg(long)]
        iso_dedup: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Non-uniform maximizer search over all nonempty subsets of [n].
    SearchNonuniform {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Seeded battery of checks over random maximal families.
    Battery {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe, like other unix filters.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(64);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExhausted { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn env_u64(name: &str) -> Result<Option<u64>, Error> {
    match std::env::var(name) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| Error::Parse(format!("invalid {name} value `{v}`"))),
        Err(_) => Ok(None),
    }
}

/// Flags beat environment variables; otherwise WORKER_COUNT and NODE_BUDGET
/// apply.
fn resolve_common(common: &CommonOpts) -> Result<(Option<usize>, u64), Error> {
    let workers = match common.workers {
        Some(w) => Some(w),
        None => env_u64("WORKER_COUNT")?.map(|w| w as usize),
    };
    let budget = match common.budget {
        Some(b) => b,
        None => env_u64("NODE_BUDGET")?.unwrap_or(trifam_core::DEFAULT_NODE_BUDGET),
    };
    Ok((workers, budget))
}

fn parse_x(input: &str) -> Result<Block, Error> {
    let elements = input
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("invalid element `{tok}` in --x")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Block::from_elements(elements)
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Construct { n, k, x, variant, out, common } => {
            let ground = GroundSet::new(n)?;
            let x = parse_x(&x)?;
            let variant = match variant {
                VariantArg::Full => ExtremalVariant::Full,
                VariantArg::Boundary => ExtremalVariant::Boundary,
            };
            let family = construct_extremal(ground, k, x, variant)?;
            let payload = match common.format {
                Format::Json => {
                    let mut s = family_to_json(&family);
                    s.push('\n');
                    s
                }
                Format::Table => family_to_text(&family)?,
                Format::Csv => {
                    return Err(Error::Parse("csv output is not defined for construct".into()))
                }
            };
            match out {
                Some(path) => std::fs::write(path, payload)?,
                None => print!("{payload}"),
            }
            Ok(0)
        }

        Command::CountTriangles { family, r, list, common } => {
            if r < 2 {
                return Err(Error::Parse("--r must be at least 2".into()));
            }
            let family = read_family(&family)?;
            let mut triangles = Vec::new();
            let count = count_r_triangles_with(&family, r, |t| {
                if list {
                    triangles.push(t.to_vec());
                }
            });
            match common.format {
                Format::Json => print_json(
                    "count-triangles",
                    &output::TriangleCount {
                        n: family.ground().n(),
                        r,
                        count: count.to_string(),
                        triangles: list.then_some(triangles),
                    },
                ),
                _ => {
                    for t in &triangles {
                        println!("{}", output::blocks_line(t));
                    }
                    println!("{count}");
                }
            }
            Ok(0)
        }

        Command::Tau { family, common } => {
            let family = read_family(&family)?;
            let cert = covering_number(&family)?;
            match common.format {
                Format::Json => print_json("tau", &cert),
                _ => {
                    println!("tau = {}", cert.tau);
                    println!("witness = {}", output::elements_line(cert.witness));
                    println!("mode = branch-and-bound");
                }
            }
            Ok(0)
        }

        Command::Covers { family, max_size, common } => {
            if max_size < 1 {
                return Err(Error::Parse("--max-size must be at least 1".into()));
            }
            let family = read_family(&family)?;
            let covers = minimal_covers(&family, max_size);
            let graph = cover_graph_analysis(&family);
            match common.format {
                Format::Json => print_json(
                    "covers",
                    &output::CoversOut { max_size, minimal_covers: covers, graph },
                ),
                _ => output::print_covers_table(max_size, &covers, &graph),
            }
            Ok(0)
        }

        Command::Nrk { n, k, r, common } => {
            if common.format == Format::Csv {
                let mut rows = Vec::new();
                for &kk in &k.0 {
                    for &rr in &r.0 {
                        for &nn in &n.0 {
                            rows.push(output::grid_row(nn, kk, rr, true, false, false)?);
                        }
                    }
                }
                output::print_csv(&rows);
                return Ok(0);
            }
            let (n, k, r) = (n.single("n")?, k.single("k")?, r.single("r")?);
            if r < 2 {
                return Err(Error::Parse("--r must be at least 2".into()));
            }
            let value = n_exact(n, k, r)?;
            match common.format {
                Format::Json => print_json(
                    "nrk",
                    &output::NrkOut { n, k, r, value: value.to_string() },
                ),
                _ => println!("n_{{{},{}}} = {}", r + 1, k, value),
            }
            Ok(0)
        }

        Command::Bounds { n, k, r, common } => {
            if common.format == Format::Csv {
                let mut rows = Vec::new();
                for &kk in &k.0 {
                    for &rr in &r.0 {
                        for &nn in &n.0 {
                            rows.push(output::grid_row(nn, kk, rr, true, true, false)?);
                        }
                    }
                }
                output::print_csv(&rows);
                return Ok(0);
            }
            let (n, k, r) = (n.single("n")?, k.single("k")?, r.single("r")?);
            if r < 2 {
                return Err(Error::Parse("--r must be at least 2".into()));
            }
            let bounds = prop1_bounds(n, k, r)?;
            match common.format {
                Format::Json => print_json("bounds", &bounds),
                _ => output::print_bounds_table(n, k, r, &bounds),
            }
            Ok(0)
        }

        Command::Check { family, r, common } => {
            if r < 2 {
                return Err(Error::Parse("--r must be at least 2".into()));
            }
            let family = read_family(&family)?;
            let checks = run_checks(&family, r);
            let failed = checks.iter().any(|c| !c.passed());
            match common.format {
                Format::Json => print_json("check", &output::CheckOut { r, checks }),
                _ => output::print_checks_table(&checks),
            }
            Ok(if failed { 3 } else { 0 })
        }

        Command::Search { n, k, r, reps, iso_dedup, common } => {
            let (workers, budget) = resolve_common(&common)?;
            let opts = SearchOptions {
                node_budget: budget,
                workers,
                max_representatives: reps,
                iso_dedup,
            };
            if common.format == Format::Csv {
                let mut rows = Vec::new();
                for &kk in &k.0 {
                    for &rr in &r.0 {
                        for &nn in &n.0 {
                            let mut row = output::grid_row(nn, kk, rr, true, true, false)?;
                            let report = max_triangle_search(nn, kk, rr, &opts)?;
                            row.max_search = Some(report.max_count.to_string());
                            row.sandwich = Some(report.all_maximizers_sandwich);
                            rows.push(row);
                        }
                    }
                }
                output::print_csv(&rows);
                return Ok(0);
            }
            let (n, k, r) = (n.single("n")?, k.single("k")?, r.single("r")?);
            if r < 2 {
                return Err(Error::Parse("--r must be at least 2".into()));
            }
            let report = max_triangle_search(n, k, r, &opts)?;
            match common.format {
                Format::Json => print_json("search", &report),
                _ => output::print_search_table(&report),
            }
            Ok(0)
        }

        Command::SearchNonuniform { n, r, common } => {
            if r < 2 {
                return Err(Error::Parse("--r must be at least 2".into()));
            }
            let (workers, budget) = resolve_common(&common)?;
            let opts = SearchOptions { node_budget: budget, workers, ..SearchOptions::default() };
            let report = nonuniform_max_triangle_search(n, r, &opts)?;
            match common.format {
                Format::Json => print_json("search-nonuniform", &report),
                Format::Csv => {
                    return Err(Error::Parse("csv output is not defined for search-nonuniform".into()))
                }
                Format::Table => output::print_search_table(&report),
            }
            Ok(0)
        }

        Command::Battery { count, seed, common } => {
            let (workers, _) = resolve_common(&common)?;
            let config = BatteryConfig::standard(count, seed);
            let report = run_battery(&config, workers)?;
            let passed = report.passed();
            match common.format {
                Format::Json => print_json("battery", &report),
                _ => output::print_battery_table(&report),
            }
            Ok(if passed { 0 } else { 3 })
        }
    }
}
