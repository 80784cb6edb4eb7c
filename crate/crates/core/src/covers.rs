//! Covering numbers with certificates, minimal-cover enumeration, and the
//! graph of 2-element covers with its structural flags.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;

use crate::block::Block;
use crate::error::{Error, Result};
use crate::family::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverSearchMode {
    Exhaustive,
    BranchAndBound,
}

/// Exact covering number together with a minimum witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    pub tau: u32,
    /// Lexicographically least minimum cover (by ascending element list).
    pub witness: Block,
    pub mode: CoverSearchMode,
}

/// The graph on the ground set whose edges are the 2-element covers, plus
/// all 1-element covers. Vertices are restricted to elements appearing in
/// some block; isolated vertices are implicit. Every flag is recomputable
/// from `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverGraphReport {
    pub singleton_covers: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
    /// Connected components with at least one edge, each sorted ascending,
    /// listed by smallest member.
    pub components: Vec<Vec<u32>>,
    pub has_induced_p3: bool,
    pub max_degree: u32,
    pub all_components_cliques: bool,
    /// Sizes of the components that are cliques, in component order.
    pub clique_sizes: Vec<u32>,
}

/// True when `s` meets every block of `f`; vacuously true for an empty family.
pub fn is_cover(s: Block, family: &Family) -> bool {
    family.blocks().iter().all(|b| !s.is_disjoint(*b))
}

fn validate_coverable(family: &Family) -> Result<()> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.blocks().iter().any(|b| b.is_empty()) {
        return Err(Error::EmptyBlock);
    }
    Ok(())
}

/// Greedy cover: repeatedly take the element hitting the most uncovered
/// blocks (smallest element on ties). Gives the branch-and-bound its
/// starting upper bound.
fn greedy_cover(family: &Family) -> Vec<u32> {
    let mut remaining: Vec<Block> = family.blocks().to_vec();
    let mut cover = Vec::new();
    while !remaining.is_empty() {
        let support = remaining.iter().fold(Block::EMPTY, |acc, b| acc.union(*b));
        let best = support
            .elements()
            .max_by_key(|&x| {
                (
                    remaining.iter().filter(|b| b.contains_element(x)).count(),
                    std::cmp::Reverse(x),
                )
            })
            .expect("nonempty blocks have nonempty support");
        cover.push(best);
        remaining.retain(|b| !b.contains_element(best));
    }
    cover.sort_unstable();
    cover
}

fn branch_and_bound(family: &Family, chosen_mask: u128, depth: usize, best: &mut usize) {
    // Fail-first: branch on the uncovered block with the fewest elements,
    // canonically least on ties.
    let uncovered = family
        .blocks()
        .iter()
        .filter(|b| b.bits() & chosen_mask == 0)
        .min_by_key(|b| (b.card(), b.bits()));
    let block = match uncovered {
        None => {
            *best = depth;
            return;
        }
        Some(b) => *b,
    };
    if depth + 1 >= *best {
        return;
    }
    for x in block.elements() {
        branch_and_bound(family, chosen_mask | 1u128 << (x - 1), depth + 1, best);
    }
}

/// First cover among the size-`s` subsets of the support, scanned in
/// lexicographic order of ascending element lists. Minimum covers never use
/// elements outside the support, so the scan is complete.
fn lex_least_cover(family: &Family, s: u32) -> Option<Block> {
    let support = family.support().to_vec();
    support
        .iter()
        .copied()
        .combinations(s as usize)
        .map(|c| Block::from_elements(c).expect("support elements are in range"))
        .find(|c| is_cover(*c, family))
}

/// Exact covering number by branch and bound, with the depth bounded by a
/// greedy cover. Errors on an empty family or any empty block, where no
/// finite cover exists.
pub fn covering_number(family: &Family) -> Result<CoverCertificate> {
    validate_coverable(family)?;
    let mut best = greedy_cover(family).len();
    branch_and_bound(family, 0, 0, &mut best);
    let tau = best as u32;
    let witness = lex_least_cover(family, tau).expect("a cover of size tau exists");
    Ok(CoverCertificate { tau, witness, mode: CoverSearchMode::BranchAndBound })
}

/// Covering number by plain exhaustive enumeration over subsets of the
/// support by increasing size. Same certificate as [`covering_number`];
/// the two routes cross-check each other.
pub fn covering_number_exhaustive(family: &Family) -> Result<CoverCertificate> {
    validate_coverable(family)?;
    let support = family.support();
    for s in 1..=support.card() {
        if let Some(witness) = lex_least_cover(family, s) {
            return Ok(CoverCertificate { tau: s, witness, mode: CoverSearchMode::Exhaustive });
        }
    }
    unreachable!("the full support is always a cover")
}

/// All inclusion-minimal covers of size at most `max_size`, in canonical
/// (ascending bit-vector) order, found by direct exhaustive enumeration.
/// The up-closure of these is exactly the set of all covers of that size,
/// since every superset of a cover is a cover. For an empty family the
/// unique minimal cover is the empty set.
pub fn minimal_covers(family: &Family, max_size: u32) -> Vec<Block> {
    assert!(max_size >= 1, "max_size must be at least 1");
    if family.is_empty() {
        return vec![Block::EMPTY];
    }
    let support = family.support().to_vec();
    let mut out = Vec::new();
    for s in 1..=(max_size as usize).min(support.len()) {
        for combo in support.iter().copied().combinations(s) {
            let c = Block::from_elements(combo).expect("support elements are in range");
            if !is_cover(c, family) {
                continue;
            }
            let minimal = c.elements().all(|x| {
                !is_cover(c.difference(Block::from_elements([x]).unwrap()), family)
            });
            if minimal {
                out.push(c);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Builds the cover graph: all 1- and 2-element covers over the support,
/// connected components, induced-P3 presence, maximum degree, and whether
/// every component is a clique.
pub fn cover_graph_analysis(family: &Family) -> CoverGraphReport {
    let support = family.support().to_vec();
    let singleton_covers: Vec<u32> = support
        .iter()
        .copied()
        .filter(|&x| is_cover(Block::from_elements([x]).unwrap(), family))
        .collect();

    let mut edges = Vec::new();
    let mut adjacency: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for (i, &x) in support.iter().enumerate() {
        for &y in &support[i + 1..] {
            if is_cover(Block::from_elements([x, y]).unwrap(), family) {
                edges.push((x, y));
                adjacency.entry(x).or_default().insert(y);
                adjacency.entry(y).or_default().insert(x);
            }
        }
    }

    let mut components: Vec<Vec<u32>> = Vec::new();
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    for &v in adjacency.keys() {
        if seen.contains(&v) {
            continue;
        }
        let mut stack = vec![v];
        let mut component = BTreeSet::new();
        while let Some(u) = stack.pop() {
            if !component.insert(u) {
                continue;
            }
            seen.insert(u);
            stack.extend(adjacency[&u].iter().copied());
        }
        components.push(component.into_iter().collect());
    }

    let max_degree = adjacency.values().map(|ns| ns.len() as u32).max().unwrap_or(0);

    // An induced path on 3 vertices: two neighbors of a common center that
    // are themselves non-adjacent.
    let mut has_induced_p3 = false;
    'outer: for neighbors in adjacency.values() {
        let ns: Vec<u32> = neighbors.iter().copied().collect();
        for (i, &x) in ns.iter().enumerate() {
            for &y in &ns[i + 1..] {
                if !adjacency[&x].contains(&y) {
                    has_induced_p3 = true;
                    break 'outer;
                }
            }
        }
    }

    let mut clique_sizes = Vec::new();
    let mut all_components_cliques = true;
    for component in &components {
        let size = component.len();
        let is_clique = component
            .iter()
            .all(|v| adjacency[v].len() == size - 1);
        if is_clique {
            clique_sizes.push(size as u32);
        } else {
            all_components_cliques = false;
        }
    }

    CoverGraphReport {
        singleton_covers,
        edges,
        components,
        has_induced_p3,
        max_degree,
        all_components_cliques,
        clique_sizes,
    }
}
