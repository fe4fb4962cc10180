//! Rate regions as unions of constraint triples.

mod compare;
mod exact;
mod inner;

pub use compare::{confirm_strict_inclusion, direction_fan, region_compare, CompareReport, StrictnessReport, STRICT_GAP};
pub use exact::{
    independent_sources_region, korner_marton_region, outer_bound_region, partially_invertible_region, slepian_wolf_region,
};
pub use inner::{default_lambdas, inner_bound_region, scalarized_minimum, InnerMode, RegionConfig, ScalarizedMinimum};

use serde::Serialize;

use crate::entropy::{ChannelDump, RateTriple};

/// The channels and supports that produced a triple.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub candidate_id: usize,
    pub lambda: f64,
    pub v_family: Vec<Vec<String>>,
    pub w_family: Vec<Vec<String>>,
    pub v_channel: ChannelDump,
    pub w_channel: ChannelDump,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionTriple {
    #[serde(flatten)]
    pub triple: RateTriple,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Best point found in one sweep direction (1, λ).
#[derive(Debug, Clone, Serialize)]
pub struct SweepSample {
    pub lambda: f64,
    /// min R_X + λ·R_Y found.
    pub value: f64,
    pub rx: f64,
    pub ry: f64,
    pub candidate_id: usize,
}

/// Run settings recorded with a region.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RegionMeta {
    pub mode: String,
    pub lambdas: usize,
    pub restarts: usize,
    pub seed: u64,
    pub candidates: usize,
    pub converged: bool,
}

/// An upward-closed set of rate pairs: the union over `triples` of
/// {R_X ≥ a, R_Y ≥ b, R_X + R_Y ≥ s}.
#[derive(Debug, Clone, Serialize)]
pub struct RateRegion {
    /// "inner bound", "outer bound" or "rate region".
    pub kind: String,
    pub name: String,
    pub triples: Vec<RegionTriple>,
    /// Lower boundary, R_Y nonincreasing in R_X. The first point sits
    /// under a vertical ray, the last starts a horizontal one.
    pub polyline: Vec<[f64; 2]>,
    pub samples: Vec<SweepSample>,
    pub meta: RegionMeta,
}

impl RateRegion {
    /// Region from bare triples; dominated triples are dropped.
    pub fn from_triples(kind: &str, name: &str, triples: Vec<RegionTriple>, meta: RegionMeta) -> Self {
        let triples = prune(triples);
        let polyline = staircase(&triples.iter().map(|t| t.triple).collect::<Vec<_>>());
        RateRegion {
            kind: kind.into(),
            name: name.into(),
            triples,
            polyline,
            samples: Vec::new(),
            meta,
        }
    }

    /// min alpha·R_X + beta·R_Y over the region.
    pub fn support(&self, alpha: f64, beta: f64) -> f64 {
        self.triples
            .iter()
            .map(|t| t.triple.support(alpha, beta))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, rx: f64, ry: f64, tol: f64) -> bool {
        self.triples.iter().any(|t| t.triple.contains(rx, ry, tol))
    }

    /// Exchanges the roles of R_X and R_Y.
    pub(crate) fn mirrored(mut self) -> Self {
        for t in &mut self.triples {
            std::mem::swap(&mut t.triple.a, &mut t.triple.b);
        }
        self.polyline = staircase(&self.triples.iter().map(|t| t.triple).collect::<Vec<_>>());
        for s in &mut self.samples {
            std::mem::swap(&mut s.rx, &mut s.ry);
            s.lambda = 1.0 / s.lambda;
            s.value = s.rx + s.lambda * s.ry;
        }
        self.samples.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        self
    }
}

fn dominates(p: &RateTriple, q: &RateTriple) -> bool {
    p.a <= q.a && p.b <= q.b && p.s <= q.s
}

/// Drops triples whose region lies inside another's; keeps the first of
/// equal triples.
fn prune(triples: Vec<RegionTriple>) -> Vec<RegionTriple> {
    let mut keep: Vec<RegionTriple> = Vec::new();
    for t in triples {
        if keep.iter().any(|k| dominates(&k.triple, &t.triple)) {
            continue;
        }
        keep.retain(|k| !dominates(&t.triple, &k.triple));
        keep.push(t);
    }
    keep
}

/// Lower boundary of a union of triples: φ(r) = min over triples with
/// a ≤ r of max(b, s − r).
pub fn staircase(triples: &[RateTriple]) -> Vec<[f64; 2]> {
    if triples.is_empty() {
        return Vec::new();
    }
    let phi = |r: f64, strict: bool| {
        triples
            .iter()
            .filter(|t| if strict { t.a < r } else { t.a <= r })
            .map(|t| t.b.max(t.s - r))
            .fold(f64::INFINITY, f64::min)
    };
    let mut xs: Vec<f64> = triples.iter().map(|t| t.a).collect();
    for t in triples {
        for u in triples {
            xs.push(t.s - u.b);
        }
    }
    let start = triples.iter().map(|t| t.a).fold(f64::INFINITY, f64::min);
    xs.retain(|x| *x >= start);
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for &x in &xs {
        let left = phi(x, true);
        if left.is_finite() {
            pts.push([x, left]);
        }
        pts.push([x, phi(x, false)]);
    }
    // drop repeated and collinear interior points
    let mut out: Vec<[f64; 2]> = Vec::new();
    for p in pts {
        if out.last().is_some_and(|q| (q[0] - p[0]).abs() <= 1e-15 && (q[1] - p[1]).abs() <= 1e-15) {
            continue;
        }
        if out.len() >= 2 {
            let [a, b] = [out[out.len() - 2], out[out.len() - 1]];
            let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
            if cross.abs() <= 1e-13 {
                out.pop();
            }
        }
        out.push(p);
    }
    // the horizontal tail is implied by the last point
    while out.len() >= 2 && (out[out.len() - 1][1] - out[out.len() - 2][1]).abs() <= 1e-15 {
        out.pop();
    }
    out
}
