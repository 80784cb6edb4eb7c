//! Exact combinatorics of intersecting set families over small ground sets:
//! bitset blocks, exact big-integer counting, triangle recognition and
//! counting, covering numbers with certificates, the extremal constructions,
//! exhaustive search over maximal families, and a falsification battery for
//! the classical bounds.
//!
//! Everything is exact: counts and bounds are arbitrary-precision integers
//! and every comparison is integral. All types are immutable values after
//! construction and safe to share across threads.

pub mod binom;
pub mod block;
pub mod covers;
pub mod error;
pub mod extremal;
pub mod family;
pub mod io;
pub mod predicates;
pub mod propcheck;
pub mod search;
mod serde_util;
pub mod triangles;

pub use binom::{binomial, binomial_signed, enumerate_k_subsets, k_subsets, BigCount};
pub use block::{Block, GroundSet, MAX_WIDTH};
pub use covers::{CoverCertificate, CoverGraphReport, CoverSearchMode};
pub use error::{Error, Result};
pub use extremal::{BoundsTriple, ExtremalVariant};
pub use family::Family;
pub use predicates::DegreeProfile;
pub use propcheck::{BatteryConfig, BatteryReport, CheckKind, CheckResult, CheckStatus};
pub use search::{SearchOptions, SearchReport, DEFAULT_NODE_BUDGET};
