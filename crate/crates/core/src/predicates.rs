//! Intersection-property predicates: r-wise intersecting, t-intersecting,
//! cross-t-intersecting, and subset degrees.

use crate::binom::{enumerate_k_subsets, BigCount};
use crate::block::{Block, GroundSet};
use crate::error::{Error, Result};
use crate::family::Family;

/// Maximum degree over `m`-subsets of the ground set, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub m: u32,
    /// Number of blocks containing the witness; `D_0 = |F|`.
    pub degree: BigCount,
    /// Canonically first `m`-subset attaining the maximum.
    pub witness: Block,
}

/// Bitwise intersection of all blocks. The intersection of an empty list is
/// the full ground set, the usual convention for intersections over an empty
/// index set.
pub fn common_intersection(ground: GroundSet, blocks: &[Block]) -> Block {
    blocks.iter().fold(ground.full_block(), |acc, b| acc.intersection(*b))
}

/// True when every r members share a common element.
///
/// The defining quantifier ranges over members with repetition; repetition
/// adds nothing because intersections only shrink as blocks are added, so it
/// suffices to test subcollections of exactly `min(r, |F|)` distinct blocks.
/// The empty family passes vacuously; a single block passes iff it is
/// nonempty. A prefix whose running intersection is already empty witnesses a
/// violation immediately.
pub fn is_r_wise_intersecting(family: &Family, r: u32) -> bool {
    assert!(r >= 2, "r-wise intersection requires r >= 2");
    let blocks = family.blocks();
    if blocks.is_empty() {
        return true;
    }
    let m = (r as usize).min(blocks.len());
    subcollections_all_meet(blocks, family.ground().full_block().bits(), m)
}

fn subcollections_all_meet(blocks: &[Block], ambient: u128, m: usize) -> bool {
    fn rec(blocks: &[Block], from: usize, left: usize, inter: u128) -> bool {
        if inter == 0 {
            // Any completion of this prefix keeps an empty intersection.
            return false;
        }
        if left == 0 {
            return true;
        }
        for i in from..=blocks.len() - left {
            if !rec(blocks, i + 1, left - 1, inter & blocks[i].bits()) {
                return false;
            }
        }
        true
    }
    rec(blocks, 0, m, ambient)
}

/// True when every two distinct blocks meet in at least `t` elements.
/// Families with at most one block pass vacuously.
pub fn is_t_intersecting(family: &Family, t: u32) -> bool {
    assert!(t >= 1, "t-intersection requires t >= 1");
    let blocks = family.blocks();
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            if a.intersection_size(*b) < t {
                return false;
            }
        }
    }
    true
}

/// True when every transversal (one block from each family) has a common
/// intersection of at least `t` elements. Transversal enumeration prunes as
/// soon as a prefix intersection drops below `t`; monotone shrinkage makes
/// any completion of such a prefix a violation.
pub fn is_cross_t_intersecting(families: &[&Family], t: u32) -> Result<bool> {
    assert!(t >= 1, "cross-t-intersection requires t >= 1");
    let ground = validate_cross_input(families)?;

    fn rec(families: &[&Family], idx: usize, inter: u128, t: u32) -> bool {
        if inter.count_ones() < t {
            return false;
        }
        if idx == families.len() {
            return true;
        }
        for b in families[idx].blocks() {
            if !rec(families, idx + 1, inter & b.bits(), t) {
                return false;
            }
        }
        true
    }

    Ok(rec(families, 0, ground.full_block().bits(), t))
}

pub(crate) fn validate_cross_input(families: &[&Family]) -> Result<GroundSet> {
    let first = families.first().ok_or(Error::EmptyFamily)?;
    let ground = first.ground();
    for f in families {
        if f.ground() != ground {
            return Err(Error::GroundSetMismatch);
        }
        if f.is_empty() {
            return Err(Error::EmptyFamily);
        }
    }
    Ok(ground)
}

/// `D_m`: the maximum, over all `m`-subsets `S` of the ground set, of the
/// number of blocks containing `S`, together with the canonically first
/// witness attaining it. `D_0 = |F|` with the empty witness.
pub fn max_degree(family: &Family, m: u32) -> Result<DegreeProfile> {
    let mut best: u64 = 0;
    let mut witness = Block::EMPTY;
    let mut first = true;
    enumerate_k_subsets(family.ground(), m, |s| {
        let d = family.blocks().iter().filter(|b| s.is_subset_of(**b)).count() as u64;
        if first || d > best {
            best = d;
            witness = s;
            first = false;
        }
    })?;
    Ok(DegreeProfile { m, degree: BigCount::from(best), witness })
}

/// True when `candidate` can join `included` without breaking the r-wise
/// intersecting property; `included` is assumed r-wise intersecting already,
/// so only subcollections through the candidate need checking.
pub fn extends_r_wise(included: &[Block], candidate: Block, r: u32) -> bool {
    assert!(r >= 2);
    !meets_empty_with(included, candidate.bits(), r - 1)
}

/// Whether at most `cap` blocks of `base` can drive `target` to an empty
/// intersection. Blocks that do not shrink the running intersection are
/// skipped: a minimal witness, scanned in index order, shrinks at every step.
pub(crate) fn meets_empty_with(base: &[Block], target: u128, cap: u32) -> bool {
    fn rec(base: &[Block], from: usize, left: u32, acc: u128) -> bool {
        for i in from..base.len() {
            let next = acc & base[i].bits();
            if next == acc {
                continue;
            }
            if next == 0 {
                return true;
            }
            if left > 1 && rec(base, i + 1, left - 1, next) {
                return true;
            }
        }
        false
    }
    if target == 0 {
        return true;
    }
    if cap == 0 {
        return false;
    }
    rec(base, 0, cap, target)
}
