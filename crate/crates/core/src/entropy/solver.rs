//! Block exponentiated-gradient descent over products of masked simplices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::objective::{Objective, Workspace};
use super::Channel;
use crate::graphs::VertexSet;
use crate::model::Role;

/// Solver budget and tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Random starts per problem.
    pub restarts: usize,
    pub max_iter: usize,
    /// Relative objective change that counts as converged.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 32,
            max_iter: 100_000,
            tol: 1e-9,
            seed: 0,
        }
    }
}

impl SolverConfig {
    /// Same settings with twice the restarts and iterations.
    pub fn doubled(&self) -> Self {
        SolverConfig {
            restarts: self.restarts * 2,
            max_iter: self.max_iter * 2,
            ..*self
        }
    }
}

/// Smallest weight given to an allowed entry at initialization.
pub(crate) const INIT_FLOOR: f64 = 1e-6;
const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-14;
const MAX_STEP: f64 = 1e8;
/// Iterations over which the objective change is averaged.
const WINDOW: usize = 10;

/// Which channels the solver may move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Free {
    pub v: bool,
    pub w: bool,
}

pub(crate) struct Start {
    pub q: Vec<f64>,
    pub r: Vec<f64>,
}

#[derive(Debug, Clone)]
pub(crate) struct Run {
    pub value: f64,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Frank–Wolfe gap at the final point (nats); bounds the suboptimality
    /// when the objective is convex.
    pub gap: f64,
}

struct Block<'a> {
    allowed: &'a [Vec<usize>],
    weight: &'a [f64],
    width: usize,
}

/// One exponentiated-gradient move with row-normalized gradient and step
/// `eta`; returns ⟨g, new − old⟩.
fn eg_move(b: &Block, cur: &[f64], g: &[f64], eta: f64, out: &mut [f64]) -> f64 {
    out.copy_from_slice(cur);
    let mut dir = 0.0;
    for (s, allowed) in b.allowed.iter().enumerate() {
        let ps = b.weight[s];
        if ps <= 0.0 || allowed.len() < 2 {
            continue;
        }
        let row = s * b.width;
        let min = allowed.iter().map(|m| g[row + m] / ps).fold(f64::INFINITY, f64::min);
        let mut sum = 0.0;
        for &m in allowed {
            let w = (cur[row + m] * (-eta * (g[row + m] / ps - min)).exp()).max(1e-250);
            out[row + m] = w;
            sum += w;
        }
        for &m in allowed {
            out[row + m] /= sum;
            dir += g[row + m] * (out[row + m] - cur[row + m]);
        }
    }
    dir
}

/// Frank–Wolfe gap of one block: Σ_s [⟨g_s, cur_s⟩ − min_allowed g_s].
fn fw_gap(b: &Block, cur: &[f64], g: &[f64]) -> f64 {
    let mut gap = 0.0;
    for (s, allowed) in b.allowed.iter().enumerate() {
        if b.weight[s] <= 0.0 || allowed.len() < 2 {
            continue;
        }
        let row = s * b.width;
        let dot: f64 = allowed.iter().map(|m| g[row + m] * cur[row + m]).sum();
        let min = allowed.iter().map(|m| g[row + m]).fold(f64::INFINITY, f64::min);
        gap += dot - min;
    }
    gap
}

/// Line-searched move on one block; returns true if the point changed.
#[allow(clippy::too_many_arguments)]
fn step_block(
    obj: &Objective,
    block: &Block,
    is_v: bool,
    cur: &mut [f64],
    other: &[f64],
    g: &[f64],
    eta: &mut f64,
    f: &mut f64,
    ws: &mut Workspace,
    trial_ws: &mut Workspace,
    trial: &mut [f64],
) -> bool {
    loop {
        let dir = eg_move(block, cur, g, *eta, trial);
        if dir > -1e-300 {
            return false;
        }
        let ft = if is_v {
            obj.eval(trial, other, trial_ws)
        } else {
            obj.eval(other, trial, trial_ws)
        };
        if ft <= *f + ARMIJO * dir {
            cur.copy_from_slice(trial);
            std::mem::swap(ws, trial_ws);
            *f = ft;
            *eta = (*eta * 2.0).min(MAX_STEP);
            return true;
        }
        *eta *= 0.5;
        if *eta < MIN_STEP {
            *eta = MIN_STEP;
            return false;
        }
    }
}

pub(crate) fn descend(obj: &Objective, free: Free, start: Start, max_iter: usize, tol: f64) -> Run {
    let [_, _, _, nv, nw] = obj.dims();
    let Start { mut q, mut r } = start;
    let mut ws = obj.workspace();
    let mut trial_ws = obj.workspace();
    let mut gq = vec![0.0; q.len()];
    let mut gr = vec![0.0; r.len()];
    let mut tq = vec![0.0; q.len()];
    let mut tr = vec![0.0; r.len()];
    let (mut eta_v, mut eta_w) = (1.0f64, 1.0f64);
    let mut f = obj.eval(&q, &r, &mut ws);
    let vb = Block { allowed: obj.allowed_v(), weight: obj.px(), width: nv };
    let wb = Block { allowed: obj.allowed_w(), weight: obj.py(), width: nw };

    let mut iterations = 0;
    let mut converged = false;
    // objective values at the ends of the last WINDOW iterations
    let mut history = std::collections::VecDeque::with_capacity(WINDOW + 1);
    history.push_back(f);
    while iterations < max_iter {
        iterations += 1;
        let mut moved = false;
        if free.v {
            obj.gradient(&q, &r, &mut ws, &mut gq, &mut gr);
            moved |= step_block(obj, &vb, true, &mut q, &r, &gq, &mut eta_v, &mut f, &mut ws, &mut trial_ws, &mut tq);
            if !moved {
                // gradient() overwrote the marginals with their logs
                f = obj.eval(&q, &r, &mut ws);
            }
        }
        if free.w {
            obj.gradient(&q, &r, &mut ws, &mut gq, &mut gr);
            let m = step_block(obj, &wb, false, &mut r, &q, &gr, &mut eta_w, &mut f, &mut ws, &mut trial_ws, &mut tr);
            if !m {
                f = obj.eval(&q, &r, &mut ws);
            }
            moved |= m;
        }
        history.push_back(f);
        if history.len() > WINDOW + 1 {
            history.pop_front();
        }
        let span = history.len() - 1;
        let change = (history[0] - f).abs() / span as f64;
        if change <= tol * f.abs().max(1.0) && (span == WINDOW || !moved) {
            converged = true;
            break;
        }
        if !moved {
            // no descent at any step size: stationary
            converged = true;
            break;
        }
    }
    let value = obj.eval(&q, &r, &mut ws);
    obj.gradient(&q, &r, &mut ws, &mut gq, &mut gr);
    let gap = if free.v { fw_gap(&vb, &q, &gq) } else { 0.0 } + if free.w { fw_gap(&wb, &r, &gr) } else { 0.0 };
    Run {
        value,
        q,
        r,
        iterations,
        converged,
        gap,
    }
}

/// Initial point: Dirichlet(1) rows over each mask, floored, from a stream
/// determined by `(seed, index)`.
pub(crate) fn random_start(
    obj: &Objective,
    vmasks: &[VertexSet],
    wmasks: &[VertexSet],
    free: Free,
    fixed: &Start,
    seed: u64,
    index: usize,
) -> Start {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let [nx, ny, ..] = obj.dims();
    let q = if free.v {
        Channel::random(Role::X, nx, vmasks.to_vec(), INIT_FLOOR, &mut rng)
            .expect("masks validated by caller")
            .weights()
            .to_vec()
    } else {
        fixed.q.clone()
    };
    let r = if free.w {
        Channel::random(Role::Y, ny, wmasks.to_vec(), INIT_FLOOR, &mut rng)
            .expect("masks validated by caller")
            .weights()
            .to_vec()
    } else {
        fixed.r.clone()
    };
    Start { q, r }
}

/// Outcome of a multistart solve.
#[derive(Debug, Clone)]
pub(crate) struct Multi {
    pub best: Run,
    pub best_index: usize,
    pub values: Vec<f64>,
    pub all_converged: bool,
}

/// Runs `config.restarts` independent descents (plus any `extra` starts,
/// which come first) and keeps the lowest value; ties go to the lower index.
pub(crate) fn multistart(
    obj: &Objective,
    vmasks: &[VertexSet],
    wmasks: &[VertexSet],
    free: Free,
    fixed: &Start,
    extra: Vec<Start>,
    config: &SolverConfig,
) -> Multi {
    let n_extra = extra.len();
    let restarts = if free.v || free.w { config.restarts.max(1) } else { 1 };
    let mut starts: Vec<Option<Start>> = extra.into_iter().map(Some).collect();
    starts.extend((0..restarts).map(|_| None));
    let runs: Vec<Run> = starts
        .into_par_iter()
        .enumerate()
        .map(|(i, s)| {
            let start = s.unwrap_or_else(|| random_start(obj, vmasks, wmasks, free, fixed, config.seed, i - n_extra));
            descend(obj, free, start, config.max_iter, config.tol)
        })
        .collect();
    let mut best_index = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.value < runs[best_index].value {
            best_index = i;
        }
    }
    Multi {
        values: runs.iter().map(|r| r.value).collect(),
        all_converged: runs.iter().all(|r| r.converged),
        best: runs[best_index].clone(),
        best_index,
    }
}
