//! Exhaustive enumeration of inclusion-maximal r-wise intersecting families
//! and the triangle-count maximizer search built on it, plus a seeded greedy
//! generator of random maximal families.
//!
//! The r-wise property is hereditary, so maximal families are enumerated by
//! a binary include/exclude backtracker over blocks in canonical order. A
//! block conflicting with the included set is dropped for good (conflicts
//! persist under supersets). A block excluded by choice must eventually be
//! conflicted; the branch is pruned when not even the union of all remaining
//! candidates could conflict it. Every maximal family corresponds to exactly
//! one decision path, so none is visited twice.

use std::sync::atomic::{AtomicU64, Ordering};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::{k_subsets, BigCount};
use crate::block::{Block, GroundSet};
use crate::error::{Error, Result};
use crate::extremal::{classify_sandwich, classify_sandwich_nonuniform, nonuniform_extremal};
use crate::family::Family;
use crate::predicates::{extends_r_wise, meets_empty_with};
use crate::triangles::{count_r_triangles, count_r_triangles_with};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_MAX_REPRESENTATIVES: usize = 16;

/// Number of enumeration subtrees carved off the root for the parallel
/// phase. Fixed, so reports do not depend on the worker count.
const FRONTIER_TARGET: usize = 64;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Hard cap on enumeration tree nodes; exceeding it is an explicit
    /// error, never a silent truncation.
    pub node_budget: u64,
    /// Worker threads for the search phase; `None` uses the current pool.
    pub workers: Option<usize>,
    /// Cap on maximizer representatives kept in the report.
    pub max_representatives: usize,
    /// Deduplicate maximizers up to ground-set relabeling (n <= 8 only).
    pub iso_dedup: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            workers: None,
            max_representatives: DEFAULT_MAX_REPRESENTATIVES,
            iso_dedup: false,
        }
    }
}

/// Outcome of a maximizer search. All numeric fields are exact and
/// independent of the worker count.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub r: u32,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub max_count: BigCount,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub maximizer_total: BigCount,
    /// Capped list of maximizers in canonical family order.
    pub maximizers: Vec<Family>,
    pub all_maximizers_sandwich: bool,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub families_enumerated: BigCount,
    pub nodes_visited: u64,
    pub node_budget: u64,
    /// Triangle count of the non-uniform extremal family, for the
    /// exploratory comparison in non-uniform mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(serialize_with = "crate::serde_util::opt_big_as_string")]
    pub reference_count: Option<BigCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso_classes: Option<u64>,
}

struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    fn tick(&self) -> Result<()> {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.limit {
            Err(Error::BudgetExhausted { budget: self.limit, visited: used })
        } else {
            Ok(())
        }
    }

    fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

/// Partial enumeration state. `active` holds undecided blocks that are
/// individually addable to `included`; `standby` holds blocks excluded by
/// choice that are still addable and therefore must be conflicted before a
/// leaf can count as maximal.
#[derive(Clone)]
struct State {
    included: Vec<u32>,
    included_blocks: Vec<Block>,
    active: Vec<u32>,
    standby: Vec<u32>,
}

enum Node {
    /// No undecided blocks left.
    Terminal(State),
    Open(State),
}

fn node_of(state: State) -> Node {
    if state.active.is_empty() {
        Node::Terminal(state)
    } else {
        Node::Open(state)
    }
}

struct Ctx<'a> {
    blocks: &'a [Block],
    ground: GroundSet,
    r: u32,
    budget: &'a Budget,
}

impl Ctx<'_> {
    fn root_state(&self) -> State {
        State {
            included: Vec::new(),
            included_blocks: Vec::new(),
            active: (0..self.blocks.len() as u32).collect(),
            standby: Vec::new(),
        }
    }

    fn family_of(&self, state: &State) -> Family {
        Family::new(self.ground, state.included_blocks.clone()).expect("blocks already validated")
    }

    /// Include the leading active block. Blocks that now conflict are
    /// dropped from both `active` and `standby`; only subcollections through
    /// the new block need testing, which costs at most r-2 further blocks
    /// on top of the shared target.
    fn child_include(&self, state: &State) -> State {
        let b_idx = state.active[0];
        let b = self.blocks[b_idx as usize];
        let cap = self.r - 2;
        let keep = |&p: &u32| -> bool {
            let target = b.bits() & self.blocks[p as usize].bits();
            !meets_empty_with(&state.included_blocks, target, cap)
        };
        let active: Vec<u32> = state.active[1..].iter().filter(|p| keep(p)).copied().collect();
        let standby: Vec<u32> = state.standby.iter().filter(|p| keep(p)).copied().collect();
        let mut included = state.included.clone();
        included.push(b_idx);
        let mut included_blocks = state.included_blocks.clone();
        included_blocks.push(b);
        State { included, included_blocks, active, standby }
    }

    /// Whether excluding the leading active block can still lead to a
    /// maximal family: some subcollection of everything that may yet be
    /// included has to conflict it.
    fn exclude_viable(&self, state: &State) -> bool {
        let b = self.blocks[state.active[0] as usize];
        let mut pool = state.included_blocks.clone();
        pool.extend(state.active[1..].iter().map(|&i| self.blocks[i as usize]));
        meets_empty_with(&pool, b.bits(), self.r - 1)
    }

    fn child_exclude(&self, state: State) -> State {
        let State { included, included_blocks, active, mut standby } = state;
        standby.push(active[0]);
        State { included, included_blocks, active: active[1..].to_vec(), standby }
    }

    /// Depth-first enumeration; emits maximal families in canonical
    /// (lexicographic) family order.
    fn dfs(&self, state: State, out: &mut dyn FnMut(&State)) -> Result<()> {
        self.budget.tick()?;
        if state.active.is_empty() {
            if state.standby.is_empty() {
                out(&state);
            }
            return Ok(());
        }
        self.dfs(self.child_include(&state), out)?;
        if self.exclude_viable(&state) {
            self.dfs(self.child_exclude(state), out)?;
        }
        Ok(())
    }

    /// Breadth-first split of the top of the tree into a fixed number of
    /// subtrees, preserving DFS order. Node accounting matches `dfs`
    /// exactly: a state is ticked when expanded here or entered there.
    fn expand_frontier(&self, root: State) -> Result<Vec<Node>> {
        let mut frontier = vec![node_of(root)];
        loop {
            let open = frontier.iter().filter(|n| matches!(n, Node::Open(_))).count();
            if open == 0 || open >= FRONTIER_TARGET {
                return Ok(frontier);
            }
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for node in frontier {
                match node {
                    Node::Terminal(state) => next.push(Node::Terminal(state)),
                    Node::Open(state) => {
                        self.budget.tick()?;
                        next.push(node_of(self.child_include(&state)));
                        if self.exclude_viable(&state) {
                            next.push(node_of(self.child_exclude(state)));
                        }
                    }
                }
            }
            frontier = next;
        }
    }
}

/// Visits every inclusion-maximal r-wise intersecting k-uniform family over
/// `[n]` exactly once, in canonical family order, and returns how many were
/// visited.
pub fn enumerate_maximal_families(
    n: u32,
    k: u32,
    r: u32,
    opts: &SearchOptions,
    mut visit: impl FnMut(&Family),
) -> Result<BigCount> {
    assert!(r >= 2, "r-wise intersection requires r >= 2");
    let ground = GroundSet::new(n)?;
    if k == 0 || k > n {
        return Err(Error::SubsetSize { k, n });
    }
    let blocks = k_subsets(ground, k)?;
    let budget = Budget::new(opts.node_budget);
    let ctx = Ctx { blocks: &blocks, ground, r, budget: &budget };
    let mut count: u64 = 0;
    ctx.dfs(ctx.root_state(), &mut |state| {
        count += 1;
        visit(&ctx.family_of(state));
    })?;
    Ok(BigCount::from(count))
}

/// Per-subtree search accumulator; merged left to right in frontier order,
/// so the outcome is independent of scheduling.
struct Partial {
    families: u64,
    best: Option<BigCount>,
    total: u64,
    reps: Vec<Family>,
    all_sandwich: bool,
    rep_cap: usize,
}

impl Partial {
    fn new(rep_cap: usize) -> Self {
        Partial { families: 0, best: None, total: 0, reps: Vec::new(), all_sandwich: true, rep_cap }
    }

    fn absorb(&mut self, family: Family, triangle_size: u32, classify: &(impl Fn(&Family) -> bool + ?Sized)) {
        self.families += 1;
        let count = count_r_triangles_with(&family, triangle_size, |_| {});
        let replace = match &self.best {
            None => true,
            Some(best) => match count.cmp(best) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => return,
                std::cmp::Ordering::Equal => {
                    self.total += 1;
                    self.all_sandwich &= classify(&family);
                    if self.reps.len() < self.rep_cap {
                        self.reps.push(family);
                    }
                    return;
                }
            },
        };
        if replace {
            self.best = Some(count);
            self.total = 1;
            self.all_sandwich = classify(&family);
            self.reps.clear();
            if self.rep_cap > 0 {
                self.reps.push(family);
            }
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.families += other.families;
        match (&self.best, &other.best) {
            (_, None) => self,
            (None, Some(_)) => {
                self.best = other.best;
                self.total = other.total;
                self.reps = other.reps;
                self.all_sandwich = other.all_sandwich;
                self
            }
            (Some(a), Some(b)) => match a.cmp(b) {
                std::cmp::Ordering::Greater => self,
                std::cmp::Ordering::Less => {
                    self.best = other.best;
                    self.total = other.total;
                    self.reps = other.reps;
                    self.all_sandwich = other.all_sandwich;
                    self
                }
                std::cmp::Ordering::Equal => {
                    self.total += other.total;
                    self.all_sandwich &= other.all_sandwich;
                    for fam in other.reps {
                        if self.reps.len() >= self.rep_cap {
                            break;
                        }
                        self.reps.push(fam);
                    }
                    self
                }
            },
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_search<C>(
    ground: GroundSet,
    blocks: Vec<Block>,
    n: u32,
    k: Option<u32>,
    r: u32,
    opts: &SearchOptions,
    classify: C,
    reference_count: Option<BigCount>,
) -> Result<SearchReport>
where
    C: Fn(&Family) -> bool + Sync,
{
    if opts.iso_dedup && ground.n() > 8 {
        return Err(Error::TooLarge("isomorphism dedup relabels over n! permutations, n <= 8 only".into()));
    }
    let rep_cap = if opts.iso_dedup { usize::MAX } else { opts.max_representatives };
    let triangle_size = r + 1;
    let budget = Budget::new(opts.node_budget);
    let ctx = Ctx { blocks: &blocks, ground, r, budget: &budget };
    let frontier = ctx.expand_frontier(ctx.root_state())?;

    let process = |node: &Node| -> Result<Partial> {
        let mut partial = Partial::new(rep_cap);
        match node {
            Node::Terminal(state) => {
                ctx.budget.tick()?;
                if state.standby.is_empty() {
                    partial.absorb(ctx.family_of(state), triangle_size, &classify);
                }
            }
            Node::Open(state) => {
                ctx.dfs(state.clone(), &mut |s| {
                    partial.absorb(ctx.family_of(s), triangle_size, &classify);
                })?;
            }
        }
        Ok(partial)
    };

    let partials: Vec<Partial> = match opts.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::TooLarge(e.to_string()))?;
            pool.install(|| frontier.par_iter().map(process).collect::<Result<Vec<_>>>())?
        }
        None => frontier.par_iter().map(process).collect::<Result<Vec<_>>>()?,
    };
    let merged = partials.into_iter().fold(Partial::new(rep_cap), Partial::merge);

    let (maximizers, iso_classes) = if opts.iso_dedup {
        let mut classes = std::collections::BTreeSet::new();
        for fam in &merged.reps {
            classes.insert(canonical_form(fam)?);
        }
        let count = classes.len() as u64;
        (classes.into_iter().take(opts.max_representatives).collect(), Some(count))
    } else {
        (merged.reps, None)
    };

    Ok(SearchReport {
        n,
        k,
        r,
        max_count: merged.best.unwrap_or_else(|| BigCount::from(0u32)),
        maximizer_total: BigCount::from(merged.total),
        maximizers,
        all_maximizers_sandwich: merged.all_sandwich,
        families_enumerated: BigCount::from(merged.families),
        nodes_visited: budget.used(),
        node_budget: opts.node_budget,
        reference_count,
        iso_classes,
    })
}

/// Maximum number of (r+1)-triangles over all maximal r-wise intersecting
/// k-uniform families, with representatives and the sandwich flag.
/// Restricting to maximal families is sound: the triangle count is monotone
/// under adding blocks inside the hereditary r-wise system.
pub fn max_triangle_search(n: u32, k: u32, r: u32, opts: &SearchOptions) -> Result<SearchReport> {
    assert!(r >= 2, "r-wise intersection requires r >= 2");
    let ground = GroundSet::new(n)?;
    if k == 0 || k > n {
        return Err(Error::SubsetSize { k, n });
    }
    let blocks = k_subsets(ground, k)?;
    run_search(ground, blocks, n, Some(k), r, opts, |f| classify_sandwich(f, r).is_some(), None)
}

/// Non-uniform variant over all nonempty subsets of `[n]`. The empty set is
/// excluded (it breaks every intersection); the full set is allowed. The
/// report carries the triangle count of the non-uniform extremal family as
/// the exploratory reference value.
pub fn nonuniform_max_triangle_search(n: u32, r: u32, opts: &SearchOptions) -> Result<SearchReport> {
    assert!(r >= 2, "r-wise intersection requires r >= 2");
    let ground = GroundSet::new(n)?;
    if n > 20 {
        return Err(Error::TooLarge(format!("2^{n} candidate blocks")));
    }
    if r + 1 > n {
        return Err(Error::SubsetSize { k: r + 1, n });
    }
    let blocks: Vec<Block> = (1..=ground.full_block().bits()).map(Block::from_bits).collect();
    let x = Block::from_elements(1..=r + 1)?;
    let reference = count_r_triangles(&nonuniform_extremal(ground, x)?, r + 1);
    run_search(ground, blocks, n, None, r, opts, |f| classify_sandwich_nonuniform(f, r).is_some(), Some(reference))
}

/// Seeded random maximal family: shuffle all k-subsets, then greedily add
/// every block that keeps the family r-wise intersecting. The result is
/// maximal because conflicts persist: a block rejected against a prefix
/// stays in conflict with the final family. Same seed, same family.
pub fn random_maximal_family(n: u32, k: u32, r: u32, seed: u64) -> Result<Family> {
    assert!(r >= 2, "r-wise intersection requires r >= 2");
    let ground = GroundSet::new(n)?;
    if k == 0 || k > n {
        return Err(Error::SubsetSize { k, n });
    }
    let mut blocks = k_subsets(ground, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    blocks.shuffle(&mut rng);
    let mut included: Vec<Block> = Vec::new();
    for b in blocks {
        if extends_r_wise(&included, b, r) {
            included.push(b);
        }
    }
    Family::new(ground, included)
}

/// Lexicographically least relabeling of the family over all ground-set
/// permutations; two families get the same form iff they are isomorphic.
/// Brute force over n! permutations, so n <= 8.
pub fn canonical_form(family: &Family) -> Result<Family> {
    let n = family.ground().n();
    if n > 8 {
        return Err(Error::TooLarge("canonical form relabels over n! permutations, n <= 8 only".into()));
    }
    let mut best: Option<Vec<Block>> = None;
    for perm in (1..=n).permutations(n as usize) {
        let mut relabeled: Vec<Block> = family
            .blocks()
            .iter()
            .map(|b| {
                let mut bits = 0u128;
                for e in b.elements() {
                    bits |= 1u128 << (perm[(e - 1) as usize] - 1);
                }
                Block::from_bits(bits)
            })
            .collect();
        relabeled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
    }
    Family::new(family.ground(), best.unwrap_or_default())
}
