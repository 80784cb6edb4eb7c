use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Widest supported ground set: two machine words of bits.
pub const MAX_WIDTH: u32 = 128;

/// The ground set `[n] = {1, 2, ..., n}`.
///
/// Elements are 1-based everywhere in the public API and in file formats;
/// internally element `i` lives at bit position `i - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_WIDTH {
            return Err(Error::GroundSetSize(n));
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// The block containing every element of the ground set.
    pub fn full_block(self) -> Block {
        if self.n == MAX_WIDTH {
            Block(u128::MAX)
        } else {
            Block((1u128 << self.n) - 1)
        }
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        1..=self.n
    }

    /// Whether all set bits of `b` lie inside this ground set.
    pub fn contains(self, b: Block) -> bool {
        b.0 & !self.full_block().0 == 0
    }
}

/// A subset of the ground set stored as a fixed-width bit vector.
///
/// `Ord` compares the raw bit-vector value; that ordering is the canonical
/// block order used for families, enumeration and deterministic output.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block(u128);

impl Block {
    pub const EMPTY: Block = Block(0);

    pub fn from_bits(bits: u128) -> Block {
        Block(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// Builds a block from 1-based elements. Duplicates are harmless.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Block> {
        let mut bits = 0u128;
        for e in elements {
            if e == 0 || e > MAX_WIDTH {
                return Err(Error::ElementOutOfRange(e, MAX_WIDTH));
            }
            bits |= 1u128 << (e - 1);
        }
        Ok(Block(bits))
    }

    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains_element(self, e: u32) -> bool {
        (1..=MAX_WIDTH).contains(&e) && (self.0 >> (e - 1)) & 1 == 1
    }

    pub fn intersection(self, other: Block) -> Block {
        Block(self.0 & other.0)
    }

    pub fn union(self, other: Block) -> Block {
        Block(self.0 | other.0)
    }

    pub fn difference(self, other: Block) -> Block {
        Block(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Block) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Block) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection_size(self, other: Block) -> u32 {
        (self.0 & other.0).count_ones()
    }

    /// 1-based elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.elements().collect()
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Block {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}
