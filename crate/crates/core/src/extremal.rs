//! The extremal constructions: all k-sets meeting a fixed X in at least
//! (boundary: exactly) |X|-1 elements, the exact count of their
//! (|X|)-triangles, the truncated inclusion-exclusion lower bound with its
//! companion expressions, and the sandwich classifier for equality cases.

use num_traits::Pow;
use serde::Serialize;

use crate::binom::{binomial_signed, enumerate_k_subsets, BigCount};
use crate::block::{Block, GroundSet};
use crate::covers::cover_graph_analysis;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::triangles::count_r_triangles;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalVariant {
    /// All k-blocks meeting X in at least |X|-1 elements.
    Full,
    /// Only the k-blocks meeting X in exactly |X|-1 elements.
    Boundary,
}

/// The three bound expressions tied to the exact triangle count of the
/// extremal family, kept as exact integers. The intended comparisons are
///
/// * `incl_excl <= n_exact(n, k, r)`,
/// * `2 * n_exact(n, k, r) >= half_power_doubled`, and
/// * `half_power_doubled * ratio_denominator >= 2 * ratio_numerator`,
///
/// all meaningful under the hypothesis `n >= k^2`. Outside it the values are
/// still computed but `hypothesis_met` is false and nothing is claimed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsTriple {
    /// Truncated inclusion-exclusion lower bound
    /// `C(n-r-1, k-r)^(r+1) - (n-r-1) * C(n-r-2, k-r-1)^(r+1)`, clamped at 0.
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub incl_excl: BigCount,
    /// `C(n-r-1, k-r)^(r+1)`; compared doubled to avoid the 1/2 factor.
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub half_power_doubled: BigCount,
    /// `(n-1)^(r+1)`.
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub ratio_numerator: BigCount,
    /// `2 * k^(r+1)`.
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub ratio_denominator: BigCount,
    pub hypothesis_met: bool,
}

/// Builds the extremal family for a given X. Requires `|X| >= 2`,
/// `k >= |X| - 1` (below that the family is empty and never used) and
/// X inside the ground set.
pub fn construct_extremal(
    ground: GroundSet,
    k: u32,
    x: Block,
    variant: ExtremalVariant,
) -> Result<Family> {
    if !ground.contains(x) {
        let offender = x.difference(ground.full_block()).elements().next().unwrap_or(0);
        return Err(Error::ElementOutOfRange(offender, ground.n()));
    }
    let xs = x.card();
    if xs < 2 || k + 1 < xs {
        return Err(Error::ExtremalParams { x: xs, k });
    }
    let mut blocks = Vec::new();
    enumerate_k_subsets(ground, k, |b| {
        let meet = b.intersection_size(x);
        let keep = match variant {
            ExtremalVariant::Full => meet >= xs - 1,
            ExtremalVariant::Boundary => meet == xs - 1,
        };
        if keep {
            blocks.push(b);
        }
    })?;
    Family::new(ground, blocks)
}

/// Non-uniform counterpart: every nonempty subset of the ground set meeting
/// `x` in at least `|x| - 1` elements.
pub fn nonuniform_extremal(ground: GroundSet, x: Block) -> Result<Family> {
    if ground.n() > 24 {
        return Err(Error::TooLarge(format!(
            "subset enumeration over 2^{} blocks",
            ground.n()
        )));
    }
    if !ground.contains(x) || x.card() < 2 {
        return Err(Error::ExtremalParams { x: x.card(), k: 0 });
    }
    let xs = x.card();
    let full = ground.full_block().bits();
    let blocks: Vec<Block> = (1..=full)
        .map(Block::from_bits)
        .filter(|b| b.intersection_size(x) >= xs - 1)
        .collect();
    Family::new(ground, blocks)
}

/// Exact number of (r+1)-triangles in the extremal family with
/// `X = {1, ..., r+1}`. The value is independent of the choice of X by
/// permutation symmetry of the construction.
pub fn n_exact(n: u32, k: u32, r: u32) -> Result<BigCount> {
    assert!(r >= 2, "triangle parameter r must be at least 2");
    let ground = GroundSet::new(n)?;
    if r + 1 > n {
        return Err(Error::SubsetSize { k: r + 1, n });
    }
    let x = Block::from_elements(1..=r + 1)?;
    let family = construct_extremal(ground, k, x, ExtremalVariant::Full)?;
    Ok(count_r_triangles(&family, r + 1))
}

/// Evaluates the three bound expressions exactly. Parameters need
/// `2 <= r <= k`; the `n >= k^2` hypothesis is only recorded, not enforced,
/// so boundary cases outside it can still be inspected.
pub fn prop1_bounds(n: u32, k: u32, r: u32) -> Result<BoundsTriple> {
    assert!(r >= 2, "bound expressions need r >= 2");
    if k < r {
        return Err(Error::ExtremalParams { x: r + 1, k });
    }
    GroundSet::new(n)?;
    let (n_i, k_i, r_i) = (n as i64, k as i64, r as i64);
    let exp = r + 1;
    let a = binomial_signed(n_i - r_i - 1, k_i - r_i).pow(exp);
    let b = binomial_signed(n_i - r_i - 2, k_i - r_i - 1).pow(exp);
    let outside = BigCount::from((n_i - r_i - 1).max(0) as u64);
    let subtrahend = outside * b;
    // A lower bound on a count that comes out negative carries no
    // information; clamp to zero to stay in unsigned territory.
    let incl_excl = if a >= subtrahend { &a - &subtrahend } else { BigCount::from(0u32) };
    Ok(BoundsTriple {
        incl_excl,
        half_power_doubled: a,
        ratio_numerator: BigCount::from((n - 1) as u64).pow(exp),
        ratio_denominator: BigCount::from(2u32) * BigCount::from(k as u64).pow(exp),
        hypothesis_met: n >= k * k,
    })
}

fn sandwich_holds(family: &Family, k: u32, x: Block) -> bool {
    let xs = x.card();
    if family.blocks().iter().any(|b| b.intersection_size(x) < xs - 1) {
        return false;
    }
    let boundary = construct_extremal(family.ground(), k, x, ExtremalVariant::Boundary)
        .expect("parameters validated by caller");
    boundary.is_subfamily_of(family)
}

/// Finds an (r+1)-subset X with boundary ⊆ F ⊆ full, if one exists.
///
/// The vertex set of an (r+1)-clique component of the cover graph is tried
/// first: when the 2-covers form such a clique, every block must meet it in
/// all but at most one element, which is exactly the upper inclusion. Falls
/// back to scanning all (r+1)-subsets in canonical order.
pub fn classify_sandwich(family: &Family, r: u32) -> Option<Block> {
    assert!(r >= 2);
    let k = family.uniform_k()?;
    let n = family.ground().n();
    if k < r || r + 1 > n {
        return None;
    }

    let report = cover_graph_analysis(family);
    for component in &report.components {
        if component.len() == (r + 1) as usize {
            let edges_within = report
                .edges
                .iter()
                .filter(|(a, b)| component.contains(a) && component.contains(b))
                .count();
            let size = component.len();
            if edges_within == size * (size - 1) / 2 {
                let x = Block::from_elements(component.iter().copied()).ok()?;
                if sandwich_holds(family, k, x) {
                    return Some(x);
                }
            }
        }
    }

    let mut found = None;
    let _ = enumerate_k_subsets(family.ground(), r + 1, |x| {
        if found.is_none() && sandwich_holds(family, k, x) {
            found = Some(x);
        }
    });
    found
}

/// Non-uniform sandwich test: blocks of any size, compared against the
/// non-uniform extremal pair for each candidate X.
pub fn classify_sandwich_nonuniform(family: &Family, r: u32) -> Option<Block> {
    assert!(r >= 2);
    let ground = family.ground();
    let n = ground.n();
    if family.is_empty() || r + 1 > n || n > 24 {
        return None;
    }
    let mut found = None;
    let _ = enumerate_k_subsets(ground, r + 1, |x| {
        if found.is_some() {
            return;
        }
        let xs = x.card();
        if family.blocks().iter().any(|b| b.intersection_size(x) < xs - 1) {
            return;
        }
        // The boundary layer: each set omitting exactly one element of X,
        // padded arbitrarily outside X.
        let outside = ground.full_block().difference(x);
        let outside_elems = outside.to_vec();
        for missing in x.elements() {
            let base = x.difference(Block::from_elements([missing]).unwrap());
            for mask in 0u64..(1u64 << outside_elems.len()) {
                let mut s = base;
                for (i, &e) in outside_elems.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s = s.union(Block::from_elements([e]).unwrap());
                    }
                }
                if !family.contains(s) {
                    return;
                }
            }
        }
        found = Some(x);
    });
    found
}
