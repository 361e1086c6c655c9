//! Symmetric designs, almost difference sets and their developments.
//!
//! Points are always `0..v` (or `0..n`), blocks are sorted ascending and,
//! for symmetric designs, the block list is sorted lexicographically.
//! Developments keep translate order: block `r` is `D + r`.

mod almost;
mod file;
mod symmetric;

pub use almost::{
    classify_ads, complement_ads, develop, diff_function, ruzsa_ads, AlmostDifferenceSet,
    Classification, Development,
};
pub use file::{AdsFile, DesignFile};
pub use symmetric::{
    projective_plane, verify_symmetric_design, DesignParams, Invariant, SymmetricDesign,
    Violation, Witness,
};
