use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::block::{Block, GroundSet};
use crate::error::{Error, Result};

/// An ordered, deduplicated collection of blocks over a shared ground set.
///
/// Blocks are kept strictly sorted by bit-vector value. That order is the
/// canonical one: construction canonicalizes, so canonicalization is
/// idempotent, duplicates collapse, and equal families compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    ground: GroundSet,
    blocks: Vec<Block>,
}

impl Family {
    /// Canonicalizing constructor: validates width, sorts, deduplicates.
    pub fn new(ground: GroundSet, mut blocks: Vec<Block>) -> Result<Family> {
        for &b in &blocks {
            if !ground.contains(b) {
                let offender = b.difference(ground.full_block()).elements().next().unwrap_or(0);
                return Err(Error::ElementOutOfRange(offender, ground.n()));
            }
        }
        blocks.sort_unstable();
        blocks.dedup();
        Ok(Family { ground, blocks })
    }

    /// Like [`Family::new`] but additionally requires every block to have
    /// exactly `k` elements.
    pub fn new_uniform(ground: GroundSet, k: u32, blocks: Vec<Block>) -> Result<Family> {
        let family = Family::new(ground, blocks)?;
        if family.blocks.iter().any(|b| b.card() != k) {
            return Err(Error::NotUniform(k));
        }
        Ok(family)
    }

    pub fn empty(ground: GroundSet) -> Family {
        Family { ground, blocks: Vec::new() }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains(&self, b: Block) -> bool {
        self.blocks.binary_search(&b).is_ok()
    }

    /// `Some(k)` when the family is nonempty and every block has `k` elements.
    pub fn uniform_k(&self) -> Option<u32> {
        let k = self.blocks.first()?.card();
        self.blocks.iter().all(|b| b.card() == k).then_some(k)
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.ground == other.ground && self.blocks.iter().all(|b| other.contains(*b))
    }

    /// Union of all blocks: the elements that actually appear somewhere.
    pub fn support(&self) -> Block {
        self.blocks.iter().fold(Block::EMPTY, |acc, b| acc.union(*b))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Family", 2)?;
        s.serialize_field("n", &self.ground.n())?;
        s.serialize_field("blocks", &self.blocks)?;
        s.end()
    }
}
