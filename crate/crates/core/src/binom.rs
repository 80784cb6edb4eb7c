use num_traits::{One, Zero};

use crate::block::{Block, GroundSet};
use crate::error::{Error, Result};

/// Exact nonnegative count. Every count, bound and comparison in this crate
/// is an exact integer; nothing is ever rounded or saturated.
pub type BigCount = num_bigint::BigUint;

/// Exact binomial coefficient. `binomial(n, k) = 0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        // Multiply before dividing: the running product of i+1 consecutive
        // integers is divisible by (i+1)!, so each division is exact.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial over signed inputs: zero whenever `k < 0`, `n < 0` or `k > n`.
/// Keeps truncated inclusion-exclusion expressions total at boundary
/// parameters such as `C(0, -1)`.
pub fn binomial_signed(n: i64, k: i64) -> BigCount {
    if n < 0 || k < 0 || k > n {
        BigCount::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

/// Visits every `k`-subset of the ground set exactly once, in ascending
/// bit-vector value (canonical) order, and returns how many were visited,
/// which equals `binomial(n, k)`.
///
/// Visitors must be re-entrant if a caller partitions the enumeration by
/// prefix across threads.
pub fn enumerate_k_subsets(ground: GroundSet, k: u32, mut visit: impl FnMut(Block)) -> Result<BigCount> {
    let n = ground.n();
    if k > n {
        return Err(Error::SubsetSize { k, n });
    }
    if k == 0 {
        visit(Block::EMPTY);
        return Ok(BigCount::one());
    }
    let limit = ground.full_block().bits();
    let mut v: u128 = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    let mut count: u64 = 0;
    loop {
        visit(Block::from_bits(v));
        count += 1;
        // Gosper's hack, division-free: next bit pattern with the same weight.
        let c = v & v.wrapping_neg();
        let r = match v.checked_add(c) {
            Some(r) => r,
            None => break,
        };
        let next = r | ((v ^ r) >> (c.trailing_zeros() + 2));
        if next > limit {
            break;
        }
        v = next;
    }
    Ok(BigCount::from(count))
}

/// Collects all `k`-subsets in canonical order.
pub fn k_subsets(ground: GroundSet, k: u32) -> Result<Vec<Block>> {
    let mut out = Vec::new();
    enumerate_k_subsets(ground, k, |b| out.push(b))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(6, 1), BigCount::from(6u32));
        assert_eq!(binomial(5, 7), BigCount::zero());
        assert_eq!(binomial(0, 0), BigCount::one());
        assert_eq!(binomial(12, 12), BigCount::one());
    }

    // Independent oracle: a Pascal triangle built by addition only.
    fn pascal(rows: usize) -> Vec<Vec<BigCount>> {
        let mut t: Vec<Vec<BigCount>> = vec![vec![BigCount::one()]];
        for n in 1..rows {
            let prev = &t[n - 1];
            let mut row = vec![BigCount::one()];
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigCount::one());
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_matches_pascal_oracle() {
        let t = pascal(41);
        for n in 0..=30u64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), t[n as usize][k as usize], "C({n},{k})");
            }
        }
        // Frozen value, cross-checked against the addition-only oracle.
        assert_eq!(t[40][20], BigCount::from(137_846_528_820u64));
        assert_eq!(binomial(40, 20), BigCount::from(137_846_528_820u64));
    }

    #[test]
    fn pascal_identity_exhaustive_to_30() {
        for n in 1..=30u64 {
            for k in 1..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn binomial_signed_conventions() {
        assert_eq!(binomial_signed(0, -1), BigCount::zero());
        assert_eq!(binomial_signed(-1, 0), BigCount::zero());
        assert_eq!(binomial_signed(1, 0), BigCount::one());
        assert_eq!(binomial_signed(6, 2), BigCount::from(15u32));
    }

    #[test]
    fn enumerate_small_ground_truth() {
        let g4 = GroundSet::new(4).unwrap();
        let mut seen = Vec::new();
        let count = enumerate_k_subsets(g4, 2, |b| seen.push(b.to_vec())).unwrap();
        assert_eq!(count, BigCount::from(6u32));
        assert_eq!(
            seen,
            vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]
        );

        let g3 = GroundSet::new(3).unwrap();
        let mut seen = Vec::new();
        let count = enumerate_k_subsets(g3, 3, |b| seen.push(b.to_vec())).unwrap();
        assert_eq!(count, BigCount::one());
        assert_eq!(seen, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn enumerate_count_matches_binomial_to_16() {
        for n in 1..=16u32 {
            let ground = GroundSet::new(n).unwrap();
            for k in 0..=n {
                let mut visited = 0u64;
                let count = enumerate_k_subsets(ground, k, |_| visited += 1).unwrap();
                assert_eq!(count, BigCount::from(visited));
                assert_eq!(count, binomial(n as u64, k as u64), "n={n} k={k}");
            }
        }
        assert_eq!(
            enumerate_k_subsets(GroundSet::new(10).unwrap(), 4, |_| {}).unwrap(),
            BigCount::from(210u32)
        );
    }

    #[test]
    fn enumerate_rejects_oversized_k() {
        let g = GroundSet::new(4).unwrap();
        assert!(matches!(enumerate_k_subsets(g, 5, |_| {}), Err(Error::SubsetSize { k: 5, n: 4 })));
    }

    #[test]
    fn enumerate_full_width() {
        let g = GroundSet::new(128).unwrap();
        let count = enumerate_k_subsets(g, 128, |b| assert_eq!(b.card(), 128)).unwrap();
        assert_eq!(count, BigCount::one());
        let count = enumerate_k_subsets(g, 127, |_| {}).unwrap();
        assert_eq!(count, BigCount::from(128u32));
    }
}
