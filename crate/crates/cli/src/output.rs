//! Report rendering: versioned JSON envelopes, plain tables, and the CSV
//! grid schema `n,k,r,n_exact,incl_excl_bound,half_power_doubled,max_search,sandwich`.

use clap::ValueEnum;
use serde::Serialize;
use trifam_core::covers::CoverGraphReport;
use trifam_core::extremal::{n_exact, prop1_bounds, BoundsTriple};
use trifam_core::propcheck::{BatteryReport, CheckResult, CheckStatus};
use trifam_core::search::SearchReport;
use trifam_core::{Block, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(flatten)]
    report: &'a T,
}

/// Stable field order and no volatile fields anywhere in the reports, so
/// identical inputs produce byte-identical output.
pub fn print_json<T: Serialize>(command: &str, report: &T) {
    let envelope = Envelope { schema: 1, command, report };
    println!("{}", serde_json::to_string_pretty(&envelope).expect("report serialization"));
}

#[derive(Serialize)]
pub struct TriangleCount {
    pub n: u32,
    pub r: u32,
    pub count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangles: Option<Vec<Vec<Block>>>,
}

#[derive(Serialize)]
pub struct NrkOut {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub value: String,
}

#[derive(Serialize)]
pub struct CoversOut {
    pub max_size: u32,
    pub minimal_covers: Vec<Block>,
    pub graph: CoverGraphReport,
}

#[derive(Serialize)]
pub struct CheckOut {
    pub r: u32,
    pub checks: Vec<CheckResult>,
}

pub fn elements_line(block: Block) -> String {
    let mut parts: Vec<String> = block.elements().map(|e| e.to_string()).collect();
    if parts.is_empty() {
        parts.push("-".into());
    }
    parts.join(",")
}

pub fn blocks_line(blocks: &[Block]) -> String {
    blocks.iter().map(|b| elements_line(*b)).collect::<Vec<_>>().join(" ")
}

pub fn print_covers_table(max_size: u32, covers: &[Block], graph: &CoverGraphReport) {
    println!("minimal covers (size <= {max_size}): {}", covers.len());
    for c in covers {
        println!("  {}", elements_line(*c));
    }
    println!(
        "singleton covers: {}",
        if graph.singleton_covers.is_empty() {
            "none".to_string()
        } else {
            graph.singleton_covers.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
    );
    println!("cover graph edges: {}", graph.edges.len());
    for (x, y) in &graph.edges {
        println!("  {x},{y}");
    }
    for component in &graph.components {
        println!(
            "component: {}",
            component.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        );
    }
    println!("max degree = {}", graph.max_degree);
    println!("induced p3 = {}", graph.has_induced_p3);
    println!("all components cliques = {}", graph.all_components_cliques);
}

pub fn print_bounds_table(n: u32, k: u32, r: u32, b: &BoundsTriple) {
    println!("parameters: n={n} k={k} r={r}");
    println!("hypothesis n >= k^2 met = {}", b.hypothesis_met);
    println!("incl_excl = {}", b.incl_excl);
    println!("half_power_doubled = {}", b.half_power_doubled);
    println!("ratio = {} / {}", b.ratio_numerator, b.ratio_denominator);
}

pub fn print_checks_table(checks: &[CheckResult]) {
    for c in checks {
        let status = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "not applicable",
        };
        let mut line = format!("{}: {}", c.check.name(), status);
        if let Some(reason) = &c.reason {
            line.push_str(&format!(" ({reason})"));
        }
        if let Some(detail) = &c.detail {
            line.push_str(&format!(" ({detail})"));
        }
        println!("{line}");
    }
}

pub fn print_search_table(report: &SearchReport) {
    match report.k {
        Some(k) => println!("parameters: n={} k={k} r={}", report.n, report.r),
        None => println!("parameters: n={} r={} (non-uniform)", report.n, report.r),
    }
    println!("max_count = {}", report.max_count);
    println!("maximizers = {}", report.maximizer_total);
    println!("all_maximizers_sandwich = {}", report.all_maximizers_sandwich);
    if let Some(reference) = &report.reference_count {
        println!("reference_count = {reference}");
    }
    if let Some(classes) = report.iso_classes {
        println!("isomorphism classes = {classes}");
    }
    println!("families_enumerated = {}", report.families_enumerated);
    println!("nodes_visited = {}", report.nodes_visited);
    for family in &report.maximizers {
        println!("  {}", blocks_line(family.blocks()));
    }
}

pub fn print_battery_table(report: &BatteryReport) {
    println!("families checked: {}", report.families_checked);
    println!("checks run: {}", report.checks_run);
    for tally in &report.summary {
        println!(
            "{}: pass {}, fail {}, not applicable {}",
            tally.check.name(),
            tally.passed,
            tally.failed,
            tally.not_applicable
        );
    }
    if report.failures.is_empty() {
        println!("result: PASS");
    } else {
        println!("result: FAIL ({} failures)", report.failures.len());
        for f in &report.failures {
            println!(
                "  index {} seed {} (n={} k={} r={}): {} {}",
                f.index,
                f.seed,
                f.n,
                f.k,
                f.r,
                f.result.check.name(),
                f.result.detail.clone().unwrap_or_default()
            );
        }
    }
}

/// One CSV row of the grid schema; empty cells stay empty.
pub struct GridRow {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub n_exact: Option<String>,
    pub incl_excl: Option<String>,
    pub half_power_doubled: Option<String>,
    pub max_search: Option<String>,
    pub sandwich: Option<bool>,
}

pub fn grid_row(
    n: u32,
    k: u32,
    r: u32,
    with_exact: bool,
    with_bounds: bool,
    _with_search: bool,
) -> Result<GridRow, Error> {
    if r < 2 {
        return Err(Error::Parse("--r must be at least 2".into()));
    }
    let n_exact_value = if with_exact { n_exact(n, k, r).ok().map(|v| v.to_string()) } else { None };
    let (incl_excl, half) = if with_bounds {
        match prop1_bounds(n, k, r) {
            Ok(b) => (Some(b.incl_excl.to_string()), Some(b.half_power_doubled.to_string())),
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    Ok(GridRow {
        n,
        k,
        r,
        n_exact: n_exact_value,
        incl_excl,
        half_power_doubled: half,
        max_search: None,
        sandwich: None,
    })
}

pub fn print_csv(rows: &[GridRow]) {
    println!("n,k,r,n_exact,incl_excl_bound,half_power_doubled,max_search,sandwich");
    for row in rows {
        println!(
            "{},{},{},{},{},{},{},{}",
            row.n,
            row.k,
            row.r,
            row.n_exact.clone().unwrap_or_default(),
            row.incl_excl.clone().unwrap_or_default(),
            row.half_power_doubled.clone().unwrap_or_default(),
            row.max_search.clone().unwrap_or_default(),
            row.sandwich.map(|b| b.to_string()).unwrap_or_default()
        );
    }
}
