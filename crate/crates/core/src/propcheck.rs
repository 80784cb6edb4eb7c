//! Batched verification of the classical bounds on generated or supplied
//! families. Every check distinguishes "not applicable" from "pass" so that
//! vacuous batteries cannot masquerade as coverage, and every failure
//! carries a concrete counterexample. All bound comparisons are exact
//! integer comparisons; rational factors are cross-multiplied away.

use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::{binomial_signed, enumerate_k_subsets, BigCount};
use crate::block::Block;
use crate::covers::{covering_number, minimal_covers};
use crate::error::Result;
use crate::family::Family;
use crate::predicates::{
    extends_r_wise, is_cross_t_intersecting, is_r_wise_intersecting, is_t_intersecting,
    validate_cross_input,
};
use crate::search::random_maximal_family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CheckKind {
    #[serde(rename = "rwisetau")]
    RwiseTau,
    #[serde(rename = "tau_bound")]
    TauBound,
    #[serde(rename = "cross_bound")]
    CrossBound,
    #[serde(rename = "claim_cover")]
    ClaimCover,
    #[serde(rename = "frankl_bound")]
    FranklBound,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::RwiseTau,
        CheckKind::TauBound,
        CheckKind::CrossBound,
        CheckKind::ClaimCover,
        CheckKind::FranklBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::RwiseTau => "rwisetau",
            CheckKind::TauBound => "tau_bound",
            CheckKind::CrossBound => "cross_bound",
            CheckKind::ClaimCover => "claim_cover",
            CheckKind::FranklBound => "frankl_bound",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub status: CheckStatus,
    /// Why the hypothesis does not apply, for `NotApplicable`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Counterexample description, for `Fail`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Counterexample blocks, for `Fail`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<Block>,
}

impl CheckResult {
    fn pass(check: CheckKind) -> Self {
        CheckResult { check, status: CheckStatus::Pass, reason: None, detail: None, witness: Vec::new() }
    }

    fn not_applicable(check: CheckKind, reason: impl Into<String>) -> Self {
        CheckResult {
            check,
            status: CheckStatus::NotApplicable,
            reason: Some(reason.into()),
            detail: None,
            witness: Vec::new(),
        }
    }

    fn fail(check: CheckKind, detail: impl Into<String>, witness: Vec<Block>) -> Self {
        CheckResult { check, status: CheckStatus::Fail, reason: None, detail: Some(detail.into()), witness }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// If F is r-wise intersecting with covering number t, then F is
/// ((r-2)(t-1)+1)-intersecting.
pub fn check_rwisetau(family: &Family, r: u32) -> CheckResult {
    let kind = CheckKind::RwiseTau;
    if family.is_empty() {
        return CheckResult::not_applicable(kind, "empty family");
    }
    if !is_r_wise_intersecting(family, r) {
        return CheckResult::not_applicable(kind, format!("family is not {r}-wise intersecting"));
    }
    let cert = match covering_number(family) {
        Ok(c) => c,
        Err(e) => return CheckResult::not_applicable(kind, e.to_string()),
    };
    let t = cert.tau;
    let s = (r - 2) * (t - 1) + 1;
    if is_t_intersecting(family, s) {
        return CheckResult::pass(kind);
    }
    let blocks = family.blocks();
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            if a.intersection_size(*b) < s {
                return CheckResult::fail(
                    kind,
                    format!("tau = {t} but |{a} ∩ {b}| = {} < {s}", a.intersection_size(*b)),
                    vec![*a, *b],
                );
            }
        }
    }
    unreachable!("is_t_intersecting returned false, so a violating pair exists")
}

/// If F is an intersecting k-uniform family with covering number at least t,
/// then |F| <= k^t * C(n-t, k-t).
pub fn check_tau_bound(family: &Family, t: u32) -> CheckResult {
    let kind = CheckKind::TauBound;
    assert!(t >= 1, "tau bound needs t >= 1");
    let Some(k) = family.uniform_k() else {
        return CheckResult::not_applicable(kind, "family is empty or not uniform");
    };
    if !is_r_wise_intersecting(family, 2) {
        return CheckResult::not_applicable(kind, "family is not intersecting");
    }
    let cert = match covering_number(family) {
        Ok(c) => c,
        Err(e) => return CheckResult::not_applicable(kind, e.to_string()),
    };
    if cert.tau < t {
        return CheckResult::not_applicable(kind, format!("covering number {} < t = {t}", cert.tau));
    }
    let n = family.ground().n();
    let bound = BigCount::from(k as u64).pow(t)
        * binomial_signed(n as i64 - t as i64, k as i64 - t as i64);
    if BigCount::from(family.len() as u64) <= bound {
        CheckResult::pass(kind)
    } else {
        CheckResult::fail(kind, format!("|F| = {} > k^t * C(n-t, k-t) = {bound}", family.len()), Vec::new())
    }
}

/// If cross-t-intersecting k-uniform families all have covering number at
/// least 2, then t * |F_i| <= k * C(k, t) * C(n-t-1, k-t-1) for each i.
pub fn check_cross_bound(families: &[&Family], t: u32) -> CheckResult {
    let kind = CheckKind::CrossBound;
    assert!(t >= 1, "cross bound needs t >= 1");
    let n = match validate_cross_input(families) {
        Ok(g) => g.n(),
        Err(e) => return CheckResult::not_applicable(kind, e.to_string()),
    };
    let Some(k) = families[0].uniform_k() else {
        return CheckResult::not_applicable(kind, "families must be uniform");
    };
    if families.iter().any(|f| f.uniform_k() != Some(k)) {
        return CheckResult::not_applicable(kind, "families must share one uniformity");
    }
    match is_cross_t_intersecting(families, t) {
        Ok(true) => {}
        Ok(false) => {
            return CheckResult::not_applicable(kind, format!("families are not cross-{t}-intersecting"))
        }
        Err(e) => return CheckResult::not_applicable(kind, e.to_string()),
    }
    for (i, f) in families.iter().enumerate() {
        match covering_number(f) {
            Ok(cert) if cert.tau >= 2 => {}
            Ok(cert) => {
                return CheckResult::not_applicable(kind, format!("tau(F_{i}) = {} < 2", cert.tau))
            }
            Err(e) => return CheckResult::not_applicable(kind, e.to_string()),
        }
    }
    // t * |F_i| <= k * C(k, t) * C(n-t-1, k-t-1), cross-multiplied, exact.
    let rhs = BigCount::from(k as u64)
        * binomial_signed(k as i64, t as i64)
        * binomial_signed(n as i64 - t as i64 - 1, k as i64 - t as i64 - 1);
    for (i, f) in families.iter().enumerate() {
        let lhs = BigCount::from(t as u64) * BigCount::from(f.len() as u64);
        if lhs > rhs {
            return CheckResult::fail(
                kind,
                format!("t * |F_{i}| = {lhs} > k * C(k,t) * C(n-t-1, k-t-1) = {rhs}"),
                Vec::new(),
            );
        }
    }
    CheckResult::pass(kind)
}

/// For a maximal intersecting family over n >= 2k, any two covers meet.
/// Checked on the minimal covers of size at most 2; every cover contains a
/// minimal one, so a disjoint pair of covers yields a disjoint minimal pair.
pub fn check_claim_cover(family: &Family) -> CheckResult {
    let kind = CheckKind::ClaimCover;
    let Some(k) = family.uniform_k() else {
        return CheckResult::not_applicable(kind, "family is empty or not uniform");
    };
    let n = family.ground().n();
    if n < 2 * k {
        return CheckResult::not_applicable(kind, format!("n = {n} < 2k = {}", 2 * k));
    }
    if !is_r_wise_intersecting(family, 2) {
        return CheckResult::not_applicable(kind, "family is not intersecting");
    }
    let mut maximal = true;
    let _ = enumerate_k_subsets(family.ground(), k, |b| {
        if maximal && !family.contains(b) && extends_r_wise(family.blocks(), b, 2) {
            maximal = false;
        }
    });
    if !maximal {
        return CheckResult::not_applicable(kind, "family is not maximal intersecting");
    }
    let covers = minimal_covers(family, 2);
    for (i, a) in covers.iter().enumerate() {
        for b in &covers[i + 1..] {
            if a.is_disjoint(*b) {
                return CheckResult::fail(kind, format!("disjoint covers {a} and {b}"), vec![*a, *b]);
            }
        }
    }
    CheckResult::pass(kind)
}

/// The size of an r-wise intersecting k-uniform family over [n] is at most
/// C(n-1, k-1) whenever (r-1) * n >= r * k.
pub fn check_frankl_bound(family: &Family, r: u32) -> CheckResult {
    let kind = CheckKind::FranklBound;
    let Some(k) = family.uniform_k() else {
        return CheckResult::not_applicable(kind, "family is empty or not uniform");
    };
    let n = family.ground().n();
    if u64::from(r - 1) * u64::from(n) < u64::from(r) * u64::from(k) {
        return CheckResult::not_applicable(kind, format!("(r-1)n = {} < rk = {}", (r - 1) * n, r * k));
    }
    if !is_r_wise_intersecting(family, r) {
        return CheckResult::not_applicable(kind, format!("family is not {r}-wise intersecting"));
    }
    let bound = binomial_signed(n as i64 - 1, k as i64 - 1);
    if BigCount::from(family.len() as u64) <= bound {
        CheckResult::pass(kind)
    } else {
        CheckResult::fail(kind, format!("|F| = {} > C(n-1, k-1) = {bound}", family.len()), Vec::new())
    }
}

/// Largest t for which the families are cross-t-intersecting: the minimum,
/// over all transversals (with repetition across identical inputs handled by
/// the product itself), of the intersection size. Zero means not even
/// cross-1-intersecting.
pub fn max_cross_t(families: &[&Family]) -> Result<u32> {
    let ground = validate_cross_input(families)?;

    fn rec(families: &[&Family], idx: usize, inter: u128, best: &mut u32) {
        if *best == 0 {
            return;
        }
        if idx == families.len() {
            *best = (*best).min(inter.count_ones());
            return;
        }
        for b in families[idx].blocks() {
            rec(families, idx + 1, inter & b.bits(), best);
        }
    }

    let mut best = u32::MAX;
    rec(families, 0, ground.full_block().bits(), &mut best);
    Ok(best)
}

/// The standard battery run against one family: every check, with the
/// strongest applicable parameters derived from the family itself.
pub fn run_checks(family: &Family, r: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(check_rwisetau(family, r));
    let tau = covering_number(family).map(|c| c.tau).unwrap_or(0);
    out.push(if tau >= 1 {
        check_tau_bound(family, tau)
    } else {
        CheckResult::not_applicable(CheckKind::TauBound, "covering number undefined")
    });
    for copies in [2usize, 3] {
        let identical: Vec<&Family> = std::iter::repeat_n(family, copies).collect();
        let t = max_cross_t(&identical).unwrap_or(0);
        out.push(if t >= 1 {
            check_cross_bound(&identical, t)
        } else {
            CheckResult::not_applicable(
                CheckKind::CrossBound,
                format!("{copies} identical copies are not even cross-1-intersecting"),
            )
        });
    }
    out.push(check_claim_cover(family));
    out.push(check_frankl_bound(family, r));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryConfig {
    pub count: usize,
    pub base_seed: u64,
    /// (n, k, r) cells; family i uses cell i mod grid.len() and seed
    /// base_seed + i.
    pub grid: Vec<(u32, u32, u32)>,
}

impl BatteryConfig {
    pub fn standard(count: usize, base_seed: u64) -> Self {
        let mut grid = Vec::new();
        for n in 6..=9 {
            for k in [2, 3] {
                for r in [2, 3] {
                    grid.push((n, k, r));
                }
            }
        }
        BatteryConfig { count, base_seed, grid }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryFailure {
    pub index: usize,
    pub seed: u64,
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub family: Family,
    pub result: CheckResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckTally {
    pub check: CheckKind,
    pub passed: u64,
    pub failed: u64,
    pub not_applicable: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub config: BatteryConfig,
    pub families_checked: u64,
    pub checks_run: u64,
    pub summary: Vec<CheckTally>,
    pub failures: Vec<BatteryFailure>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.families_checked > 0
    }
}

type SeededFamily = (usize, u64, (u32, u32, u32), Family);

/// Runs the battery: seeded random maximal families over the grid, every
/// check on each, plus a cross check between consecutive families of the
/// same cell. Families are processed in parallel and merged in seed order,
/// so the report is deterministic for a given config.
pub fn run_battery(config: &BatteryConfig, workers: Option<usize>) -> Result<BatteryReport> {
    assert!(!config.grid.is_empty(), "battery needs a nonempty grid");
    let cells = config.grid.len();
    let families: Vec<SeededFamily> = (0..config.count)
        .map(|i| {
            let cell = config.grid[i % cells];
            let seed = config.base_seed + i as u64;
            let family = random_maximal_family(cell.0, cell.1, cell.2, seed)?;
            Ok((i, seed, cell, family))
        })
        .collect::<Result<Vec<_>>>()?;

    let run = || -> Vec<(usize, Vec<CheckResult>)> {
        families
            .par_iter()
            .map(|(i, _, cell, family)| {
                let mut results = run_checks(family, cell.2);
                // Cross shape with a different family from the same cell.
                if *i >= cells {
                    let (_, _, prev_cell, prev) = &families[i - cells];
                    debug_assert_eq!(prev_cell, cell);
                    let pair = [prev, family];
                    let t = max_cross_t(&pair).unwrap_or(0);
                    results.push(if t >= 1 {
                        check_cross_bound(&pair, t)
                    } else {
                        CheckResult::not_applicable(
                            CheckKind::CrossBound,
                            "pair is not even cross-1-intersecting",
                        )
                    });
                }
                (*i, results)
            })
            .collect()
    };
    let mut outcomes = match workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| crate::error::Error::TooLarge(e.to_string()))?;
            pool.install(run)
        }
        None => run(),
    };
    outcomes.sort_by_key(|(i, _)| *i);

    let mut summary: Vec<CheckTally> = CheckKind::ALL
        .iter()
        .map(|&check| CheckTally { check, passed: 0, failed: 0, not_applicable: 0 })
        .collect();
    let mut failures = Vec::new();
    let mut checks_run = 0u64;
    for (i, results) in &outcomes {
        let (_, seed, (n, k, r), family) = &families[*i];
        for result in results {
            checks_run += 1;
            let tally = summary.iter_mut().find(|t| t.check == result.check).unwrap();
            match result.status {
                CheckStatus::Pass => tally.passed += 1,
                CheckStatus::NotApplicable => tally.not_applicable += 1,
                CheckStatus::Fail => {
                    tally.failed += 1;
                    failures.push(BatteryFailure {
                        index: *i,
                        seed: *seed,
                        n: *n,
                        k: *k,
                        r: *r,
                        family: family.clone(),
                        result: result.clone(),
                    });
                }
            }
        }
    }

    Ok(BatteryReport {
        config: config.clone(),
        families_checked: families.len() as u64,
        checks_run,
        summary,
        failures,
    })
}
