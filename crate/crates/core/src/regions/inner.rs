use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{RateRegion, RegionMeta, RegionTriple, SweepSample, Witness};
use crate::entropy::objective::{Objective, Terms, AX_V, AX_W, AX_X, AX_Y, AX_Z};
use crate::entropy::solver::{multistart, Free, SolverConfig, Start};
use crate::entropy::{rate_triple, Channel, ChannelDump, RateTriple};
use crate::error::{Error, Result};
use crate::graphs::{build_char_graph, generalized_graph_from_masks, CharGraph, VertexSet, DEFAULT_VERTEX_CAP};
use crate::model::{ProblemSpec, Role, RoleSet};
use crate::sets::{covering_subfamilies, independent_sets, maximal_independent_sets, multisets, Reductions, SetFamily};

/// Which message supports the inner bound searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InnerMode {
    /// Values of V and W are maximal independent sets.
    Maximal,
    /// Values are independent sets.
    All,
    /// Multisets of independent sets with total counts `kv` and `kw`;
    /// `None` means |X| + 1 and |Y| + 1.
    Multiset { kv: Option<usize>, kw: Option<usize> },
}

impl fmt::Display for InnerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerMode::Maximal => f.write_str("maximal"),
            InnerMode::All => f.write_str("all"),
            InnerMode::Multiset { kv, kw } => {
                let show = |k: &Option<usize>| k.map_or("default".to_string(), |k| k.to_string());
                write!(f, "multiset:{},{}", show(kv), show(kw))
            }
        }
    }
}

impl FromStr for InnerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Schema(format!("inner mode must be maximal, all, multiset or multiset:KV[,KW] (K a count or `default`), got '{s}'"));
        match s.trim() {
            "maximal" => Ok(InnerMode::Maximal),
            "all" => Ok(InnerMode::All),
            "multiset" => Ok(InnerMode::Multiset { kv: None, kw: None }),
            other => {
                let rest = other.strip_prefix("multiset:").ok_or_else(bad)?;
                // "default" stands for the alphabet size plus one
                let ks: Vec<Option<usize>> = rest
                    .split(',')
                    .map(|k| match k.trim() {
                        "default" => Some(None),
                        k => k.parse::<usize>().ok().filter(|k| *k >= 1).map(Some),
                    })
                    .collect::<Option<_>>()
                    .ok_or_else(bad)?;
                match ks.as_slice() {
                    [k] => Ok(InnerMode::Multiset { kv: *k, kw: *k }),
                    [kv, kw] => Ok(InnerMode::Multiset { kv: *kv, kw: *kw }),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// Sweep directions, solver budget and candidate budget for region
/// computations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionConfig {
    pub lambdas: Vec<f64>,
    pub solver: SolverConfig,
    /// Most (V, W) support pairs a region computation will try.
    pub candidate_budget: usize,
    /// Vertex cap for the joint graph G_{X,Y|Z} used by the outer bound.
    pub vertex_cap: usize,
}

impl Default for RegionConfig {
    fn default() -> Self {
        RegionConfig {
            lambdas: default_lambdas(),
            solver: SolverConfig::default(),
            candidate_budget: 256,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

impl RegionConfig {
    pub fn doubled(&self) -> Self {
        RegionConfig {
            solver: self.solver.doubled(),
            ..self.clone()
        }
    }
}

/// 64 log-spaced values from 1/32 to 32, plus 1.
pub fn default_lambdas() -> Vec<f64> {
    let mut l: Vec<f64> = (0..64).map(|i| 2f64.powf(-5.0 + 10.0 * i as f64 / 63.0)).collect();
    l.push(1.0);
    l.sort_by(f64::total_cmp);
    l
}

fn check_lambdas(lambdas: &[f64]) -> Result<()> {
    if lambdas.is_empty() {
        return Err(Error::Schema("the λ grid is empty".into()));
    }
    if let Some(l) = lambdas.iter().find(|l| !(**l > 0.0) || !l.is_finite()) {
        return Err(Error::Schema(format!("λ values must be positive and finite, got {l}")));
    }
    Ok(())
}

/// Scalarized objective min R_X + λ R_Y at the better corner of the rate
/// triple: (a, s − a) for λ ≤ 1, (s − b, b) above.
pub(crate) fn scalarized_terms(lambda: f64) -> Terms {
    if lambda <= 1.0 {
        Terms::default()
            .mi(AX_V, AX_X, AX_W | AX_Z, 1.0)
            .mi(AX_Y, AX_W, AX_Z, lambda)
    } else {
        Terms::default()
            .mi(AX_V, AX_X, AX_Z, 1.0)
            .mi(AX_Y, AX_W, AX_V | AX_Z, lambda)
    }
}

/// Best channel pair found for one direction.
pub(crate) struct SweepPoint {
    pub lambda: f64,
    pub triple: RateTriple,
    pub value: f64,
    pub v: Channel,
    pub w: Channel,
    pub converged: bool,
}

/// Minimizes the scalarized objective for every λ over channels with the
/// given masks. `frozen_v` pins the V channel. Each direction after the
/// first also starts from the previous direction's optimum.
pub(crate) fn sweep_pair(
    spec: &ProblemSpec,
    vmasks: &[VertexSet],
    wmasks: &[VertexSet],
    frozen_v: Option<&Channel>,
    lambdas: &[f64],
    solver: &SolverConfig,
) -> Result<Vec<SweepPoint>> {
    let base = spec.joint();
    let dims = [spec.nx(), spec.ny(), spec.nz()];
    let free = Free { v: frozen_v.is_none(), w: true };
    let fixed = Start {
        q: frozen_v.map(|c| c.weights().to_vec()).unwrap_or_default(),
        r: Vec::new(),
    };
    let mut out: Vec<SweepPoint> = Vec::with_capacity(lambdas.len());
    let mut warm: Option<Start> = None;
    for &lambda in lambdas {
        let obj = Objective::new(dims, base.data(), vmasks, wmasks, scalarized_terms(lambda));
        let extra = warm.take().into_iter().collect();
        let multi = multistart(&obj, vmasks, wmasks, free, &fixed, extra, solver);
        let v = Channel::from_rows(Role::X, spec.nx(), vmasks.to_vec(), multi.best.q.clone());
        let w = Channel::from_rows(Role::Y, spec.ny(), wmasks.to_vec(), multi.best.r.clone());
        let triple = rate_triple(spec, &v, &w)?;
        warm = Some(Start {
            q: multi.best.q.clone(),
            r: multi.best.r.clone(),
        });
        out.push(SweepPoint {
            lambda,
            value: triple.support(1.0, lambda),
            triple,
            v,
            w,
            converged: multi.all_converged,
        });
    }
    Ok(out)
}

/// Best point found for one direction and one fixed pair of supports.
#[derive(Debug, Clone, Serialize)]
pub struct ScalarizedMinimum {
    pub lambda: f64,
    /// min R_X + λ R_Y over the triple region of the best channels, in bits.
    pub value: f64,
    pub triple: RateTriple,
    pub v_channel: ChannelDump,
    pub w_channel: ChannelDump,
    pub converged: bool,
}

/// Minimizes R_X + λ R_Y over channels p(v|x), p(w|y) whose message
/// supports are `vmasks` and `wmasks`.
pub fn scalarized_minimum(
    spec: &ProblemSpec,
    vmasks: &[VertexSet],
    wmasks: &[VertexSet],
    lambda: f64,
    solver: &SolverConfig,
) -> Result<ScalarizedMinimum> {
    check_lambdas(&[lambda])?;
    for (masks, n, what) in [(vmasks, spec.nx(), "V"), (wmasks, spec.ny(), "W")] {
        let covered = masks.iter().fold(VertexSet::new(), |a, m| a.union(m));
        if covered != VertexSet::full(n) {
            return Err(Error::Mask(format!("{what} masks do not cover the source alphabet")));
        }
    }
    let p = sweep_pair(spec, vmasks, wmasks, None, &[lambda], solver)?
        .pop()
        .expect("one direction");
    Ok(ScalarizedMinimum {
        lambda,
        value: p.value,
        triple: p.triple,
        v_channel: p.v.dump(),
        w_channel: p.w.dump(),
        converged: p.converged,
    })
}

fn budget_error(what: &str, budget: usize) -> Error {
    Error::BudgetExceeded {
        what: what.into(),
        budget,
    }
}

/// V supports to try, each with the graph G_{Y|V,Z} it induces.
fn v_candidates(spec: &ProblemSpec, mode: InnerMode, budget: usize) -> Result<Vec<(Vec<VertexSet>, CharGraph)>> {
    let gx = build_char_graph(spec, Role::X, RoleSet::of(&[Role::Y, Role::Z]))?;
    let all_x = VertexSet::full(spec.nx());
    let base: SetFamily = match mode {
        InnerMode::Maximal => maximal_independent_sets(&gx)?,
        _ => independent_sets(&gx)?,
    };
    if let InnerMode::Multiset { kv, .. } = mode {
        let k = kv.unwrap_or(spec.nx() + 1);
        let mut out = Vec::new();
        for m in multisets(&base, k, &all_x, Reductions::default()) {
            let masks = m.expand();
            let g = generalized_graph_from_masks(spec, Role::X, &masks)?;
            out.push((masks, g));
            if out.len() > budget {
                return Err(budget_error("V multiset candidates", budget));
            }
        }
        return Ok(out);
    }
    // The induced graph depends only on which sets occur. For each
    // reachable graph keep every base set that leaves it unchanged.
    let subfamilies = covering_subfamilies(base.sets(), &all_x, 1 << 16)?;
    let mut seen: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut out = Vec::new();
    for pick in subfamilies {
        let masks: Vec<VertexSet> = pick.iter().map(|i| base.sets()[*i].clone()).collect();
        let g = generalized_graph_from_masks(spec, Role::X, &masks)?;
        let edges = g.edges();
        if seen.contains(&edges) {
            continue;
        }
        seen.push(edges.clone());
        let mut full = Vec::new();
        for s in base.sets() {
            let mut trial = masks.clone();
            trial.push(s.clone());
            if generalized_graph_from_masks(spec, Role::X, &trial)?.edges() == edges {
                full.push(s.clone());
            }
        }
        out.push((full, g));
        if out.len() > budget {
            return Err(budget_error("V support candidates", budget));
        }
    }
    Ok(out)
}

fn w_candidates(spec: &ProblemSpec, gy: &CharGraph, mode: InnerMode, budget: usize) -> Result<Vec<Vec<VertexSet>>> {
    let all_y = VertexSet::full(spec.ny());
    Ok(match mode {
        InnerMode::Maximal => vec![maximal_independent_sets(gy)?.sets().to_vec()],
        InnerMode::All => vec![independent_sets(gy)?.sets().to_vec()],
        InnerMode::Multiset { kw, .. } => {
            let k = kw.unwrap_or(spec.ny() + 1);
            let gamma = independent_sets(gy)?;
            let mut out = Vec::new();
            for m in multisets(&gamma, k, &all_y, Reductions::default()) {
                out.push(m.expand());
                if out.len() > budget {
                    return Err(budget_error("W multiset candidates", budget));
                }
            }
            out
        }
    })
}

fn label_sets(labels: &[String], masks: &[VertexSet]) -> Vec<Vec<String>> {
    masks
        .iter()
        .map(|m| m.iter().map(|i| labels[i].clone()).collect())
        .collect()
}

/// Assembles a region from per-candidate sweeps (indexed by candidate id).
pub(crate) fn assemble(
    spec: &ProblemSpec,
    kind: &str,
    name: &str,
    sweeps: Vec<(usize, Vec<SweepPoint>)>,
    lambdas: &[f64],
    meta: RegionMeta,
) -> RateRegion {
    let mut triples = Vec::new();
    let mut samples: Vec<Option<SweepSample>> = vec![None; lambdas.len()];
    let mut converged = true;
    for (id, points) in &sweeps {
        for (k, p) in points.iter().enumerate() {
            converged &= p.converged;
            let (rx, ry) = if p.lambda <= 1.0 {
                (p.triple.a, p.triple.b.max(p.triple.s - p.triple.a))
            } else {
                (p.triple.a.max(p.triple.s - p.triple.b), p.triple.b)
            };
            if samples[k].as_ref().is_none_or(|s| p.value < s.value) {
                samples[k] = Some(SweepSample {
                    lambda: p.lambda,
                    value: p.value,
                    rx,
                    ry,
                    candidate_id: *id,
                });
            }
            triples.push(RegionTriple {
                triple: p.triple,
                witness: Some(Witness {
                    candidate_id: *id,
                    lambda: p.lambda,
                    v_family: label_sets(spec.x_labels(), p.v.masks()),
                    w_family: label_sets(spec.y_labels(), p.w.masks()),
                    v_channel: p.v.dump(),
                    w_channel: p.w.dump(),
                }),
            });
        }
    }
    let mut region = RateRegion::from_triples(kind, name, triples, RegionMeta { converged, ..meta });
    region.samples = samples.into_iter().flatten().collect();
    region
}

/// Inner bound: the union over admissible (V, W) supports of the triples
/// (I(V;X|W,Z), I(Y;W|V,Z), I(V;X|Z) + I(Y;W|V,Z)), traced by minimizing
/// R_X + λ R_Y for each λ in the grid.
///
/// V's values are independent sets of G_{X|Y,Z}; W's values are
/// independent sets of the graph G_{Y|V,Z} that V's support induces.
pub fn inner_bound_region(spec: &ProblemSpec, mode: InnerMode, config: &RegionConfig) -> Result<RateRegion> {
    check_lambdas(&config.lambdas)?;
    let budget = config.candidate_budget;
    let mut pairs: Vec<(Vec<VertexSet>, Vec<VertexSet>)> = Vec::new();
    for (vmasks, gy) in v_candidates(spec, mode, budget)? {
        for wmasks in w_candidates(spec, &gy, mode, budget)? {
            pairs.push((vmasks.clone(), wmasks));
            if pairs.len() > budget {
                return Err(budget_error("(V, W) support pairs", budget));
            }
        }
    }
    let sweeps: Vec<(usize, Vec<SweepPoint>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(id, (vm, wm))| sweep_pair(spec, vm, wm, None, &config.lambdas, &config.solver).map(|s| (id, s)))
        .collect::<Result<_>>()?;
    let meta = RegionMeta {
        mode: mode.to_string(),
        lambdas: config.lambdas.len(),
        restarts: config.solver.restarts,
        seed: config.solver.seed,
        candidates: pairs.len(),
        converged: true,
    };
    Ok(assemble(
        spec,
        "inner bound",
        &format!("inner bound ({mode})"),
        sweeps,
        &config.lambdas,
        meta,
    ))
}
