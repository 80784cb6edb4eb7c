//! Recognition and exact counting of r-triangles: collections of r distinct
//! blocks whose every (r-1)-subcollection has a nonempty common intersection
//! while the full intersection is empty. For r = 2 this degenerates, by the
//! same definition read literally, to a disjoint pair of nonempty blocks.

use rayon::prelude::*;

use crate::binom::BigCount;
use crate::block::Block;
use crate::error::{Error, Result};
use crate::family::Family;

/// Tests the defining property via the r leave-one-out intersections,
/// assembled from prefix and suffix intersection tables in O(r) bit ops.
/// Blocks must be distinct: a family is a set of sets, so repetition is
/// rejected rather than silently collapsed.
pub fn is_r_triangle(blocks: &[Block]) -> Result<bool> {
    let r = blocks.len();
    assert!(r >= 2, "a triangle has at least 2 blocks");
    let mut sorted: Vec<u128> = blocks.iter().map(|b| b.bits()).collect();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateBlocks);
    }

    let mut prefix = vec![u128::MAX; r + 1];
    for i in 0..r {
        prefix[i + 1] = prefix[i] & blocks[i].bits();
    }
    let mut suffix = vec![u128::MAX; r + 1];
    for i in (0..r).rev() {
        suffix[i] = suffix[i + 1] & blocks[i].bits();
    }
    let leave_one_out_nonempty = (0..r).all(|i| prefix[i] & suffix[i + 1] != 0);
    Ok(leave_one_out_nonempty && prefix[r] == 0)
}

type Visitor<'v> = Option<&'v mut dyn FnMut(&[Block])>;

/// Enumeration kernel. Walks index combinations in canonical order and keeps
/// one leave-one-out intersection per chosen block, updated incrementally:
/// pushing block b maps row d to row d+1 by ANDing b into every entry and
/// appending the previous full intersection. A prefix of size at most r-1
/// with an empty running intersection sits inside an (r-1)-subcollection of
/// every completion, so the subtree is pruned.
struct Walk<'a> {
    blocks: &'a [Block],
    r: usize,
    /// Flattened (r+1) x r matrix; row d holds d leave-one-out intersections.
    loo: Vec<u128>,
    /// Running full intersection per depth.
    full: Vec<u128>,
    chosen: Vec<usize>,
    count: u128,
}

impl<'a> Walk<'a> {
    fn new(blocks: &'a [Block], r: usize, ambient: u128) -> Self {
        let mut full = vec![0u128; r + 1];
        full[0] = ambient;
        Walk { blocks, r, loo: vec![0u128; (r + 1) * r], full, chosen: Vec::with_capacity(r), count: 0 }
    }

    fn descend(&mut self, from: usize, depth: usize, visit: &mut Visitor<'_>) {
        let r = self.r;
        let need = r - depth;
        for i in from..=self.blocks.len() - need {
            let b = self.blocks[i].bits();
            for j in 0..depth {
                self.loo[(depth + 1) * r + j] = self.loo[depth * r + j] & b;
            }
            self.loo[(depth + 1) * r + depth] = self.full[depth];
            let full = self.full[depth] & b;
            self.full[depth + 1] = full;
            if depth + 1 == r {
                if full == 0 && (0..r).all(|j| self.loo[r * r + j] != 0) {
                    self.count += 1;
                    if let Some(v) = visit.as_mut() {
                        let mut triangle: Vec<Block> =
                            self.chosen.iter().map(|&c| self.blocks[c]).collect();
                        triangle.push(self.blocks[i]);
                        v(&triangle);
                    }
                }
            } else if full != 0 {
                self.chosen.push(i);
                self.descend(i + 1, depth + 1, visit);
                self.chosen.pop();
            }
        }
    }
}

fn count_from_first(blocks: &[Block], r: usize, ambient: u128, first: usize) -> u128 {
    let mut walk = Walk::new(blocks, r, ambient);
    // Seed depth 1 with the first chosen block; r >= 2 so this is never a leaf.
    walk.loo[r] = walk.full[0];
    walk.full[1] = walk.full[0] & blocks[first].bits();
    if walk.full[1] == 0 {
        return 0;
    }
    walk.chosen.push(first);
    walk.descend(first + 1, 1, &mut None);
    walk.count
}

/// Exact number of r-element subcollections forming an r-triangle. Counting
/// is split on the first chosen index across the current thread pool for
/// larger families; partial counts are merged by exact addition, so the
/// result does not depend on the worker count. Returns 0 when `|F| < r`.
pub fn count_r_triangles(family: &Family, r: u32) -> BigCount {
    assert!(r >= 2, "triangle size must be at least 2");
    let r = r as usize;
    let blocks = family.blocks();
    if blocks.len() < r {
        return BigCount::from(0u32);
    }
    let ambient = family.ground().full_block().bits();
    let firsts = 0..=(blocks.len() - r);
    let total: u128 = if blocks.len() >= 64 {
        firsts
            .into_par_iter()
            .map(|i| count_from_first(blocks, r, ambient, i))
            .sum()
    } else {
        firsts.map(|i| count_from_first(blocks, r, ambient, i)).sum()
    };
    BigCount::from(total)
}

/// Sequential variant reporting each triangle exactly once, in canonical
/// order of index tuples. Returns the same count as [`count_r_triangles`].
pub fn count_r_triangles_with(
    family: &Family,
    r: u32,
    mut visit: impl FnMut(&[Block]),
) -> BigCount {
    assert!(r >= 2, "triangle size must be at least 2");
    let r = r as usize;
    let blocks = family.blocks();
    if blocks.len() < r {
        return BigCount::from(0u32);
    }
    let mut walk = Walk::new(blocks, r, family.ground().full_block().bits());
    let mut cb: &mut dyn FnMut(&[Block]) = &mut visit;
    let mut visit_opt = Some(&mut cb as &mut dyn FnMut(&[Block]));
    walk.descend(0, 0, &mut visit_opt);
    BigCount::from(walk.count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binom::k_subsets;
    use crate::block::GroundSet;
    use crate::predicates::is_r_wise_intersecting;

    fn fam(n: u32, blocks: &[&[u32]]) -> Family {
        let ground = GroundSet::new(n).unwrap();
        let blocks = blocks.iter().map(|b| Block::from_elements(b.iter().copied()).unwrap()).collect();
        Family::new(ground, blocks).unwrap()
    }

    fn blocks_of(lists: &[&[u32]]) -> Vec<Block> {
        lists.iter().map(|b| Block::from_elements(b.iter().copied()).unwrap()).collect()
    }

    #[test]
    fn is_r_triangle_examples() {
        assert!(is_r_triangle(&blocks_of(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])).unwrap());
        assert!(is_r_triangle(&blocks_of(&[&[1, 2], &[1, 3], &[2, 3]])).unwrap());
        assert!(!is_r_triangle(&blocks_of(&[&[1, 2], &[1, 3], &[1, 4]])).unwrap());
        // r = 2: a disjoint pair of nonempty blocks.
        assert!(is_r_triangle(&blocks_of(&[&[1, 2], &[3, 4]])).unwrap());
        assert!(!is_r_triangle(&blocks_of(&[&[1, 2], &[1, 3]])).unwrap());
    }

    #[test]
    fn is_r_triangle_rejects_duplicates() {
        let blocks = blocks_of(&[&[1, 2], &[1, 2], &[2, 3]]);
        assert!(matches!(is_r_triangle(&blocks), Err(Error::DuplicateBlocks)));
    }

    #[test]
    fn count_examples() {
        let triangle = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(count_r_triangles(&triangle, 3), BigCount::from(1u32));
        let star = fam(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert_eq!(count_r_triangles(&star, 3), BigCount::from(0u32));
        assert_eq!(count_r_triangles(&star, 4), BigCount::from(0u32));
    }

    #[test]
    fn visitor_reports_each_triangle_once_in_order() {
        let f = fam(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        let mut seen = Vec::new();
        let count = count_r_triangles_with(&f, 3, |t| {
            seen.push(t.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
        });
        assert_eq!(BigCount::from(seen.len() as u64), count);
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), seen.len(), "no duplicates");
        assert_eq!(sorted, seen, "canonical order");
        // C([4],2) has exactly the 4 triangles on 3 points.
        assert_eq!(count, BigCount::from(4u32));
    }

    // Independent oracle: test every r-subcollection directly.
    fn naive_count(family: &Family, r: usize) -> u64 {
        use itertools::Itertools;
        family
            .blocks()
            .iter()
            .copied()
            .combinations(r)
            .filter(|c| is_r_triangle(c).unwrap())
            .count() as u64
    }

    #[test]
    fn pruned_count_matches_oracle_on_extremal_family() {
        let ground = GroundSet::new(7).unwrap();
        let x = Block::from_elements([1, 2, 3]).unwrap();
        let blocks: Vec<Block> = k_subsets(ground, 3)
            .unwrap()
            .into_iter()
            .filter(|b| b.intersection_size(x) >= 2)
            .collect();
        let family = Family::new(ground, blocks).unwrap();
        assert_eq!(count_r_triangles(&family, 3), BigCount::from(naive_count(&family, 3)));
    }

    #[test]
    fn delta_free_characterization_exhaustive() {
        // r-wise intersecting iff no m-triangle for any 2 <= m <= r, checked
        // over every family of 2-subsets of [5].
        let ground = GroundSet::new(5).unwrap();
        let pairs = k_subsets(ground, 2).unwrap();
        for mask in 0u32..(1 << pairs.len()) {
            let blocks: Vec<Block> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, b)| *b).collect();
            let family = Family::new(ground, blocks).unwrap();
            for r in 2..=4u32 {
                let free = (2..=r).all(|m| count_r_triangles(&family, m) == BigCount::from(0u32));
                assert_eq!(is_r_wise_intersecting(&family, r), free, "mask={mask} r={r}");
            }
        }
    }

    #[test]
    fn count_monotone_under_supersets() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(5..=9);
            let ground = GroundSet::new(n).unwrap();
            let mut all = k_subsets(ground, 3).unwrap();
            all.shuffle(&mut rng);
            let big = rng.gen_range(4..=all.len().min(14));
            let small = rng.gen_range(2..=big);
            let sup = Family::new(ground, all[..big].to_vec()).unwrap();
            let sub = Family::new(ground, all[..small].to_vec()).unwrap();
            for r in 2..=4 {
                assert!(count_r_triangles(&sub, r) <= count_r_triangles(&sup, r));
            }
        }
    }

    #[test]
    fn parallel_count_is_bit_exact() {
        let ground = GroundSet::new(10).unwrap();
        let x = Block::from_elements([1, 2, 3]).unwrap();
        let blocks: Vec<Block> = k_subsets(ground, 3)
            .unwrap()
            .into_iter()
            .filter(|b| b.intersection_size(x) >= 2)
            .collect();
        let family = Family::new(ground, blocks).unwrap();
        let sequential = count_r_triangles_with(&family, 3, |_| {});
        for workers in [1usize, 4] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().unwrap();
            let parallel = pool.install(|| count_r_triangles(&family, 3));
            assert_eq!(parallel, sequential);
        }
    }
}
