use rayon::prelude::*;
use serde::Serialize;

use super::checks::{support_equivalence_check, zero_error_sides};
use super::conditions::{condition_equivalence, ConditionReport};
use super::witness::{random_witness, WitnessKind};
use crate::error::{Error, Result};
use crate::model::ProblemSpec;

/// Outcome counts over one batch of seeded witnesses.
#[derive(Debug, Clone, Default, Serialize)]
pub struct WitnessTally {
    pub witnesses: usize,
    /// Witnesses where both zero-error sides agree.
    pub zero_error_agree: usize,
    pub zero_error_true: usize,
    /// Support-set reports with every evaluated claim passing.
    pub support_passed: usize,
    pub abstained: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub first_seed: u64,
    pub seeds: usize,
    pub admissible: WitnessTally,
    pub arbitrary: WitnessTally,
    /// `None` when the covering subfamilies exceed the budget.
    pub conditions: Option<ConditionReport>,
    pub conditions_skipped: Option<String>,
    pub passed: bool,
}

fn tally(spec: &ProblemSpec, kind: WitnessKind, first_seed: u64, seeds: usize) -> Result<WitnessTally> {
    let rows: Vec<(bool, bool, Result<bool>, Option<String>)> = (first_seed..first_seed + seeds as u64)
        .into_par_iter()
        .map(|seed| {
            let w = random_witness(spec, kind, seed)?;
            let sides = zero_error_sides(&w, spec);
            let agree = sides.entropy_side == sides.pairwise_side;
            let (support, failure) = match support_equivalence_check(&w, spec) {
                Ok(r) => (Ok(r.abstained), None),
                Err(e @ Error::EquivalenceViolation(_)) => (Ok(false), Some(format!("seed {seed}: {e}"))),
                Err(e) => (Err(e), None),
            };
            Ok((agree, sides.entropy_side, support, failure))
        })
        .collect::<Result<_>>()?;
    let mut t = WitnessTally {
        witnesses: seeds,
        ..WitnessTally::default()
    };
    for (seed, (agree, ze, support, failure)) in (first_seed..).zip(rows) {
        t.zero_error_agree += agree as usize;
        t.zero_error_true += ze as usize;
        if !agree {
            t.failures.push(format!("seed {seed}: zero-error sides disagree"));
        }
        if kind == WitnessKind::Admissible && !ze {
            t.failures.push(format!("seed {seed}: admissible witness does not determine f"));
        }
        match failure {
            Some(f) => t.failures.push(f),
            None => {
                t.support_passed += 1;
                t.abstained += support? as usize;
            }
        }
    }
    Ok(t)
}

/// Runs the zero-error and support-set checks on admissible and arbitrary
/// witnesses seeded `first_seed .. first_seed + seeds`, plus the
/// condition-order equivalence.
pub fn law_suite(spec: &ProblemSpec, first_seed: u64, seeds: usize, subfamily_budget: usize) -> Result<SuiteReport> {
    let admissible = tally(spec, WitnessKind::Admissible, first_seed, seeds)?;
    let arbitrary = tally(spec, WitnessKind::Arbitrary, first_seed, seeds)?;
    let (conditions, conditions_skipped) = match condition_equivalence(spec, subfamily_budget) {
        Ok(r) => (Some(r), None),
        Err(e @ (Error::BudgetExceeded { .. } | Error::Size { .. })) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let passed = admissible.failures.is_empty()
        && arbitrary.failures.is_empty()
        && conditions.as_ref().is_none_or(|c| c.holds());
    Ok(SuiteReport {
        first_seed,
        seeds,
        admissible,
        arbitrary,
        conditions,
        conditions_skipped,
        passed,
    })
}
