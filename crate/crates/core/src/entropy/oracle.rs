//! Exhaustive grid search over channels, used to validate the solver.

use serde::Serialize;

use super::triple::{triple_of, RateTriple};
use crate::error::{Error, Result};
use crate::graphs::VertexSet;
use crate::model::{binary_entropy, conditional_mutual_information, Pmf, ProblemSpec, Role, RoleSet};

/// Largest grid the oracle will walk.
pub const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleObjective {
    /// I(V; target | given) with V a channel on `target` (X or Y).
    Entropy { target: Role, given: RoleSet },
    /// min R_X + λ·R_Y over the rate triple of (V over X, W over Y).
    Scalarized { lambda: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    /// Best value on the grid, in bits.
    pub value: f64,
    /// Upper bound on (grid best − true minimum), from continuity of
    /// entropy in total variation.
    pub gap_bound: f64,
    pub points: usize,
    pub argmin_v: Vec<f64>,
    pub argmin_w: Vec<f64>,
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All compositions of `steps` into `parts` nonnegative parts.
fn compositions(steps: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![steps]];
    }
    let mut out = Vec::new();
    for first in 0..=steps {
        for mut rest in compositions(steps - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Grid rows for one channel: per source symbol, the list of possible rows.
fn row_grids(n_source: usize, masks: &[VertexSet], steps: usize) -> Vec<Vec<Vec<f64>>> {
    let nm = masks.len();
    (0..n_source)
        .map(|s| {
            let allowed: Vec<usize> = (0..nm).filter(|m| masks[*m].contains(s)).collect();
            compositions(steps, allowed.len())
                .into_iter()
                .map(|c| {
                    let mut row = vec![0.0; nm];
                    for (k, m) in allowed.iter().enumerate() {
                        row[*m] = c[k] as f64 / steps as f64;
                    }
                    row
                })
                .collect()
        })
        .collect()
}

fn grid_size(n_source: usize, masks: &[VertexSet], steps: usize) -> usize {
    (0..n_source)
        .map(|s| {
            let m = masks.iter().filter(|mask| mask.contains(s)).count();
            binomial(steps + m - 1, m - 1)
        })
        .fold(1usize, |a, b| a.saturating_mul(b))
}

fn widest_row(n_source: usize, masks: &[VertexSet]) -> usize {
    (0..n_source)
        .map(|s| masks.iter().filter(|m| m.contains(s)).count())
        .max()
        .unwrap_or(1)
}

/// Fannes–Audenaert bound for one entropy term over an alphabet of `n`
/// letters at total-variation distance `t`.
fn continuity(t: f64, n: usize) -> f64 {
    if n <= 1 || t <= 0.0 {
        return 0.0;
    }
    t * ((n - 1) as f64).log2() + binary_entropy(t.min(0.5))
}

/// Iterates the mixed-radix product of per-row choices.
fn for_each_point(grids: &[Vec<Vec<f64>>], mut visit: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; grids.len()];
    loop {
        visit(&idx);
        let mut k = grids.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < grids[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn flatten(grids: &[Vec<Vec<f64>>], idx: &[usize]) -> Vec<f64> {
    idx.iter().enumerate().flat_map(|(s, i)| grids[s][*i].iter().copied()).collect()
}

/// Minimum of `objective` over channels whose rows lie on the grid with
/// `resolution` steps per axis. `vmasks` are the V masks (over the entropy
/// target, or over X); `wmasks` (over Y) are used by the scalarized
/// objective only.
pub fn grid_oracle(
    spec: &ProblemSpec,
    objective: OracleObjective,
    vmasks: &[VertexSet],
    wmasks: &[VertexSet],
    resolution: usize,
) -> Result<OracleResult> {
    if resolution == 0 {
        return Err(Error::Schema("grid resolution must be positive".into()));
    }
    match objective {
        OracleObjective::Entropy { target, given } => entropy_oracle(spec, target, given, vmasks, resolution),
        OracleObjective::Scalarized { lambda } => scalarized_oracle(spec, lambda, vmasks, wmasks, resolution),
    }
}

fn check_masks(n: usize, masks: &[VertexSet], what: &str) -> Result<()> {
    let covered = masks.iter().fold(VertexSet::new(), |a, m| a.union(m));
    if covered != VertexSet::full(n) {
        return Err(Error::Mask(format!("{what} masks do not cover the source alphabet")));
    }
    Ok(())
}

fn entropy_oracle(spec: &ProblemSpec, target: Role, given: RoleSet, masks: &[VertexSet], steps: usize) -> Result<OracleResult> {
    let n = spec.size(target)?;
    if given.contains(target) || given.contains(Role::V) || given.contains(Role::W) {
        return Err(Error::Role(format!("cannot condition {target} on {given}")));
    }
    check_masks(n, masks, "V")?;
    let points = grid_size(n, masks, steps);
    if points > MAX_GRID_POINTS {
        return Err(Error::Size {
            what: "oracle grid".into(),
            size: points,
            limit: MAX_GRID_POINTS,
        });
    }
    let grids = row_grids(n, masks, steps);
    let nm = masks.len();
    let base = spec.joint();
    let mut best = (f64::INFINITY, Vec::new());
    for_each_point(&grids, |idx| {
        let q = flatten(&grids, idx);
        let joint = Pmf::from_fn(
            vec![Role::V, Role::X, Role::Y, Role::Z],
            vec![nm, spec.nx(), spec.ny(), spec.nz()],
            |i| {
                let s = if target == Role::X { i[1] } else { i[2] };
                base.get(&i[1..]) * q[s * nm + i[0]]
            },
        )
        .expect("product of pmfs");
        let v = conditional_mutual_information(&joint, RoleSet::of(&[Role::V]), RoleSet::of(&[target]), given)
            .expect("disjoint roles");
        if v < best.0 {
            best = (v, q);
        }
    });
    let t = (widest_row(n, masks) as f64 / (2.0 * steps as f64)).min(1.0);
    // I(V;S|T) = H(V,T) + H(S,T) − H(V,S,T) − H(T); two terms move
    let n_given: usize = given.iter().map(|r| spec.size(r).unwrap_or(1)).product();
    let gap = continuity(t, nm * n_given) + continuity(t, nm * n * n_given);
    Ok(OracleResult {
        value: best.0,
        gap_bound: gap,
        points,
        argmin_v: best.1,
        argmin_w: Vec::new(),
    })
}

fn scalarized_oracle(spec: &ProblemSpec, lambda: f64, vmasks: &[VertexSet], wmasks: &[VertexSet], steps: usize) -> Result<OracleResult> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Schema(format!("λ must be positive and finite, got {lambda}")));
    }
    check_masks(spec.nx(), vmasks, "V")?;
    check_masks(spec.ny(), wmasks, "W")?;
    let points = grid_size(spec.nx(), vmasks, steps).saturating_mul(grid_size(spec.ny(), wmasks, steps));
    if points > MAX_GRID_POINTS {
        return Err(Error::Size {
            what: "oracle grid".into(),
            size: points,
            limit: MAX_GRID_POINTS,
        });
    }
    let vg = row_grids(spec.nx(), vmasks, steps);
    let wg = row_grids(spec.ny(), wmasks, steps);
    let (nv, nw) = (vmasks.len(), wmasks.len());
    let mut best = (f64::INFINITY, Vec::new(), Vec::new());
    for_each_point(&vg, |vi| {
        let q = flatten(&vg, vi);
        for_each_point(&wg, |wi| {
            let r = flatten(&wg, wi);
            let joint = Pmf::from_fn(
                vec![Role::V, Role::X, Role::Y, Role::W, Role::Z],
                vec![nv, spec.nx(), spec.ny(), nw, spec.nz()],
                |i| spec.p(i[1], i[2], i[4]) * q[i[1] * nv + i[0]] * r[i[2] * nw + i[3]],
            )
            .expect("product of pmfs");
            let t: RateTriple = triple_of(&joint).expect("roles present");
            let v = t.support(1.0, lambda);
            if v < best.0 {
                best = (v, q.clone(), r);
            }
        });
    });
    let width = widest_row(spec.nx(), vmasks) + widest_row(spec.ny(), wmasks);
    let t = (width as f64 / (2.0 * steps as f64)).min(1.0);
    // each branch of the support value is a combination of 8 entropies
    // with unit coefficients scaled by 1 or λ
    let full = nv * spec.nx() * spec.ny() * nw * spec.nz();
    let gap = 4.0 * (1.0 + lambda) * continuity(t, full);
    Ok(OracleResult {
        value: best.0,
        gap_bound: gap,
        points,
        argmin_v: best.1,
        argmin_w: best.2,
    })
}
