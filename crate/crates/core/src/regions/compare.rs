use serde::Serialize;

use super::inner::RegionConfig;
use super::RateRegion;
use crate::error::Result;

/// Support-function gap above which an inclusion counts as strict.
pub const STRICT_GAP: f64 = 1e-3;

/// `n` unit directions (cos θ, sin θ) with θ evenly spaced over [0, π/2].
pub fn direction_fan(n: usize) -> Vec<[f64; 2]> {
    let n = n.max(2);
    (0..n)
        .map(|i| {
            let t = std::f64::consts::FRAC_PI_2 * i as f64 / (n - 1) as f64;
            [t.cos(), t.sin()]
        })
        .collect()
}

/// Support-function comparison of two regions.
#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub a_subset_b: bool,
    pub b_subset_a: bool,
    /// Largest |h_A − h_B| over the fan.
    pub max_gap: f64,
    /// Direction attaining `max_gap`.
    pub witness: [f64; 2],
    /// Largest h_A − h_B: how far A sits inside B.
    pub a_above_b: f64,
    /// Largest h_B − h_A.
    pub b_above_a: f64,
    pub directions: usize,
    pub tol: f64,
}

/// Compares support functions over `directions` directions. A ⊆ B at
/// tolerance `tol` when h_A ≥ h_B − tol everywhere on the fan.
pub fn region_compare(a: &RateRegion, b: &RateRegion, directions: usize, tol: f64) -> CompareReport {
    let fan = direction_fan(directions);
    let mut report = CompareReport {
        a_subset_b: true,
        b_subset_a: true,
        max_gap: 0.0,
        witness: fan[0],
        a_above_b: f64::NEG_INFINITY,
        b_above_a: f64::NEG_INFINITY,
        directions: fan.len(),
        tol,
    };
    for d in fan {
        let diff = a.support(d[0], d[1]) - b.support(d[0], d[1]);
        report.a_above_b = report.a_above_b.max(diff);
        report.b_above_a = report.b_above_a.max(-diff);
        if diff.abs() > report.max_gap {
            report.max_gap = diff.abs();
            report.witness = d;
        }
        if diff < -tol {
            report.a_subset_b = false;
        }
        if diff > tol {
            report.b_subset_a = false;
        }
    }
    report
}

/// Outcome of a strict-inclusion check, run once and again with the
/// solver budget doubled.
#[derive(Debug, Clone, Serialize)]
pub struct StrictnessReport {
    pub first: CompareReport,
    pub confirmation: Option<CompareReport>,
    /// The smaller region is inside the larger one with a gap above
    /// `STRICT_GAP` in both runs.
    pub strict: bool,
}

fn strict_once(r: &CompareReport) -> bool {
    r.a_subset_b && r.a_above_b > STRICT_GAP
}

/// `compute` returns (smaller, larger) for a given configuration. The
/// inclusion is declared strict only if the gap survives a rerun with
/// doubled restarts and iterations.
pub fn confirm_strict_inclusion<F>(mut compute: F, config: &RegionConfig, directions: usize, tol: f64) -> Result<StrictnessReport>
where
    F: FnMut(&RegionConfig) -> Result<(RateRegion, RateRegion)>,
{
    let (small, large) = compute(config)?;
    let first = region_compare(&small, &large, directions, tol);
    if !strict_once(&first) {
        return Ok(StrictnessReport {
            first,
            confirmation: None,
            strict: false,
        });
    }
    let (small, large) = compute(&config.doubled())?;
    let second = region_compare(&small, &large, directions, tol);
    let strict = strict_once(&second);
    Ok(StrictnessReport {
        first,
        confirmation: Some(second),
        strict,
    })
}
