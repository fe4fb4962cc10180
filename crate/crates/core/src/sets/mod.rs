//! Independent sets, multisets of them, and support sets.

mod enumerate;
mod family;
mod multiset;
mod support;

pub use enumerate::{covering_subfamilies, independent_sets, maximal_independent_sets, MAX_FAMILY};
pub use family::{FamilyDump, MultiFamily, SetFamily};
pub use multiset::{multisets, Multisets, Reductions};
pub use support::{support_set, SupportEntry, SupportSet};
