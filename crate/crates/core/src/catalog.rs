//! Named groups used by sweeps and fixtures.

use std::sync::Arc;

use crate::error::Result;
use crate::group::{build_group, FiniteGroup, GroupSpec};

/// Abelian groups of order at most 16, as products of cyclic factors.
pub const ABELIAN: &[&str] = &[
    "C1",
    "C2",
    "C3",
    "C4",
    "C5",
    "C6",
    "C7",
    "C8",
    "C9",
    "C10",
    "C11",
    "C12",
    "C13",
    "C14",
    "C15",
    "C16",
    "C2xC2",
    "C2xC4",
    "C2xC6",
    "C2xC8",
    "C4xC4",
    "C3xC3",
    "C2xC2xC2",
    "C2xC2xC4",
    "C2xC2xC2xC2",
];

/// Non-abelian groups of order at most 16 that the builders cover.
pub const NON_ABELIAN: &[&str] = &["S3", "D4", "Q8", "D5", "D6", "D7", "D8", "C2xD4", "C2xQ8"];

pub fn spec_names() -> impl Iterator<Item = &'static str> {
    ABELIAN.iter().chain(NON_ABELIAN).copied()
}

/// Every catalog group, abelian ones first.
pub fn catalog() -> Result<Vec<Arc<FiniteGroup>>> {
    spec_names().map(|s| build_group(&GroupSpec::parse(s)?)).collect()
}
