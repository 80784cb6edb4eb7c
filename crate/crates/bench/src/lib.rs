//! Shared fixtures for the benchmark targets.

use trifam_core::extremal::{construct_extremal, ExtremalVariant};
use trifam_core::{Block, Family, GroundSet};

/// The extremal family for X = {1..xs} over [n], the standard bench input.
pub fn extremal_fixture(n: u32, k: u32, xs: u32) -> Family {
    let ground = GroundSet::new(n).expect("valid ground set");
    let x = Block::from_elements(1..=xs).expect("valid X");
    construct_extremal(ground, k, x, ExtremalVariant::Full).expect("valid parameters")
}
