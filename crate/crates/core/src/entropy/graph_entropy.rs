use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::objective::{Objective, Terms, AX_V, AX_X, AX_Y};
use super::solver::{multistart, Free, SolverConfig, Start};
use super::Channel;
use crate::error::{Error, Result};
use crate::graphs::{build_char_graph_with_cap, build_joint_char_graph_with_cap, CharGraph, VertexSet, DEFAULT_VERTEX_CAP};
use crate::model::{ProblemSpec, Role, RoleSet};
use crate::sets::{independent_sets, maximal_independent_sets, multisets, Reductions};

/// Which message supports the entropy minimization ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyMode {
    /// One message value per maximal independent set.
    Maximal,
    /// One message value per independent set.
    All,
    /// Every multiset of independent sets of total count K.
    Multiset(usize),
}

impl fmt::Display for FamilyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyMode::Maximal => f.write_str("maximal"),
            FamilyMode::All => f.write_str("all"),
            FamilyMode::Multiset(k) => write!(f, "multiset:{k}"),
        }
    }
}

impl FromStr for FamilyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "maximal" => Ok(FamilyMode::Maximal),
            "all" => Ok(FamilyMode::All),
            other => match other.strip_prefix("multiset:").map(|k| k.parse::<usize>()) {
                Some(Ok(k)) if k >= 1 => Ok(FamilyMode::Multiset(k)),
                _ => Err(Error::Schema(format!(
                    "family mode must be maximal, all or multiset:K with K ≥ 1, got '{other}'"
                ))),
            },
        }
    }
}

/// Most candidate families a multiset-mode solve will try.
pub const MAX_CANDIDATES: usize = 10_000;

#[derive(Debug, Clone, Serialize)]
pub struct RestartStats {
    pub count: usize,
    pub best_index: usize,
    pub min: f64,
    pub max: f64,
}

/// Result of a graph-entropy minimization.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    /// Minimum in bits.
    pub value: f64,
    /// Minimizing p(v|s) as row lists; vertices follow `vertices`.
    pub channel: Vec<Vec<f64>>,
    /// Support of each message value, as vertex labels.
    pub family: Vec<Vec<String>>,
    pub vertices: Vec<String>,
    pub iterations: usize,
    pub converged: bool,
    /// Frank-Wolfe gap at the returned channel, in bits. The objective is
    /// convex in the channel, so this bounds the distance to the minimum
    /// for the chosen family.
    pub gap: f64,
    pub restarts: RestartStats,
    /// Candidate families tried.
    pub candidates: usize,
    pub mode: String,
}

impl SolveReport {
    /// Turns an unconverged report into an error.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                iterations: self.iterations,
                best: self.value,
            })
        }
    }
}

/// H_G(target | given) for the characteristic graph G_{target|given}:
/// the least I(V; target | given) over channels whose message supports are
/// the families selected by `mode`.
pub fn conditional_graph_entropy(
    spec: &ProblemSpec,
    target: Role,
    given: RoleSet,
    mode: FamilyMode,
    config: &SolverConfig,
) -> Result<SolveReport> {
    let graph = build_char_graph_with_cap(spec, target, given, DEFAULT_VERTEX_CAP)?;
    let dims = [spec.nx(), spec.ny(), spec.nz()];
    let axis = |r: Role| match r {
        Role::X => 0,
        Role::Y => 1,
        _ => 2,
    };
    let t_axis = axis(target);
    let g_axes: Vec<usize> = given.iter().map(axis).collect();
    let ns = dims[t_axis];
    let nt: usize = g_axes.iter().map(|a| dims[*a]).product();
    let mut p = vec![0.0; ns * nt];
    for x in 0..dims[0] {
        for y in 0..dims[1] {
            for z in 0..dims[2] {
                let idx = [x, y, z];
                let t = g_axes.iter().fold(0, |acc, a| acc * dims[*a] + idx[*a]);
                p[idx[t_axis] * nt + t] += spec.p(x, y, z);
            }
        }
    }
    graph_entropy(&graph, &p, ns, nt, mode, config)
}

/// H_G(X,Y | Z) for the joint characteristic graph G_{X,Y|Z}.
pub fn joint_graph_entropy(spec: &ProblemSpec, mode: FamilyMode, config: &SolverConfig) -> Result<SolveReport> {
    joint_graph_entropy_with_cap(spec, mode, config, DEFAULT_VERTEX_CAP)
}

pub fn joint_graph_entropy_with_cap(
    spec: &ProblemSpec,
    mode: FamilyMode,
    config: &SolverConfig,
    vertex_cap: usize,
) -> Result<SolveReport> {
    let graph = build_joint_char_graph_with_cap(spec, vertex_cap)?;
    let (nx, ny, nz) = (spec.nx(), spec.ny(), spec.nz());
    let mut p = vec![0.0; nx * ny * nz];
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                p[(x * ny + y) * nz + z] = spec.p(x, y, z);
            }
        }
    }
    graph_entropy(&graph, &p, nx * ny, nz, mode, config)
}

/// Candidate message supports for `mode`, each a list of masks.
pub(crate) fn candidate_families(graph: &CharGraph, mode: FamilyMode) -> Result<Vec<Vec<VertexSet>>> {
    let all = VertexSet::full(graph.n());
    Ok(match mode {
        FamilyMode::Maximal => vec![maximal_independent_sets(graph)?.sets().to_vec()],
        FamilyMode::All => vec![independent_sets(graph)?.sets().to_vec()],
        FamilyMode::Multiset(k) => {
            let gamma = independent_sets(graph)?;
            let mut out = Vec::new();
            for m in multisets(&gamma, k, &all, Reductions::default()) {
                out.push(m.expand());
                if out.len() > MAX_CANDIDATES {
                    return Err(Error::BudgetExceeded {
                        what: format!("{mode} candidate families"),
                        budget: MAX_CANDIDATES,
                    });
                }
            }
            out
        }
    })
}

/// Minimizes I(V;S|T) for the joint `p` (indexed s·nt + t) over channels
/// p(v|s) whose masks come from the independent sets of `graph` (on S).
fn graph_entropy(graph: &CharGraph, p: &[f64], ns: usize, nt: usize, mode: FamilyMode, config: &SolverConfig) -> Result<SolveReport> {
    let families = candidate_families(graph, mode)?;
    if families.is_empty() {
        return Err(Error::Hypothesis(format!("no {mode} family covers the vertex set")));
    }
    let terms = Terms::default().mi(AX_V, AX_X, AX_Y, 1.0);
    let wmask = [VertexSet::full(nt)];
    let mut best: Option<(f64, usize, super::solver::Multi)> = None;
    for (i, fam) in families.iter().enumerate() {
        let obj = Objective::new([ns, nt, 1], p, fam, &wmask, terms.clone());
        let fixed = Start { q: Vec::new(), r: vec![1.0; nt] };
        let multi = multistart(&obj, fam, &wmask, Free { v: true, w: false }, &fixed, Vec::new(), config);
        if best.as_ref().is_none_or(|(v, _, _)| multi.best.value < *v) {
            best = Some((multi.best.value, i, multi));
        }
    }
    let (_, i, multi) = best.expect("at least one family");
    let masks = families[i].clone();
    let channel = Channel::from_rows(Role::X, ns, masks.clone(), multi.best.q.clone());
    let values = &multi.values;
    let ln2 = std::f64::consts::LN_2;
    let value = (multi.best.value / ln2).max(0.0);
    Ok(SolveReport {
        value,
        channel: (0..ns).map(|s| channel.row(s).to_vec()).collect(),
        family: masks
            .iter()
            .map(|m| m.iter().map(|v| graph.labels()[v].clone()).collect())
            .collect(),
        vertices: graph.labels().to_vec(),
        iterations: multi.best.iterations,
        converged: multi.all_converged,
        gap: multi.best.gap / ln2,
        restarts: RestartStats {
            count: values.len(),
            best_index: multi.best_index,
            min: values.iter().copied().fold(f64::INFINITY, f64::min) / ln2,
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max) / ln2,
        },
        candidates: families.len(),
        mode: mode.to_string(),
    })
}
