//! Brute-force checkers for the support-set lemmas, used as property tests
//! and as validity oracles for (V, W) structures.

mod checks;
mod conditions;
mod suite;
mod witness;

pub use checks::{support_equivalence_check, zero_error_check, zero_error_sides, SupportReport, ZeroErrorSides};
pub use conditions::{condition_equivalence, ConditionMismatch, ConditionReport};
pub use suite::{law_suite, SuiteReport, WitnessTally};
pub use witness::{random_witness, ChainFlags, JointWitness, WitnessKind, CHAIN_TOL, MAX_WITNESS_SIZE};
