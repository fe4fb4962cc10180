use super::inner::{assemble, sweep_pair, RegionConfig};
use super::{RateRegion, RegionMeta, RegionTriple};
use crate::entropy::{conditional_graph_entropy, joint_graph_entropy_with_cap, Channel, FamilyMode, RateTriple};
use crate::error::{Error, Result};
use crate::graphs::{build_char_graph, VertexSet};
use crate::model::{check_conditional_independence, check_partially_invertible, ProblemSpec, Role, RoleSet};
use crate::sets::{independent_sets, multisets, Reductions};

fn bare(triple: RateTriple) -> Vec<RegionTriple> {
    vec![RegionTriple { triple, witness: None }]
}

fn closed_form_meta(mode: &str) -> RegionMeta {
    RegionMeta {
        mode: mode.into(),
        candidates: 1,
        converged: true,
        ..RegionMeta::default()
    }
}

fn solver_meta(mode: &str, config: &RegionConfig, converged: bool) -> RegionMeta {
    RegionMeta {
        mode: mode.into(),
        lambdas: 0,
        restarts: config.solver.restarts,
        seed: config.solver.seed,
        candidates: 1,
        converged,
    }
}

fn yz() -> RoleSet {
    RoleSet::of(&[Role::Y, Role::Z])
}

fn xz() -> RoleSet {
    RoleSet::of(&[Role::X, Role::Z])
}

/// Outer bound: R_X ≥ H_G(X|Y,Z), R_Y ≥ H_G(Y|X,Z), R_X + R_Y ≥ H_G(X,Y|Z).
///
/// Graph entropies are minimized over maximal independent sets. Moving a
/// message onto a maximal superset of its support is a function of the
/// message, so it cannot raise the mutual information.
pub fn outer_bound_region(spec: &ProblemSpec, config: &RegionConfig) -> Result<RateRegion> {
    let hx = conditional_graph_entropy(spec, Role::X, yz(), FamilyMode::Maximal, &config.solver)?;
    let hy = conditional_graph_entropy(spec, Role::Y, xz(), FamilyMode::Maximal, &config.solver)?;
    let hxy = joint_graph_entropy_with_cap(spec, FamilyMode::Maximal, &config.solver, config.vertex_cap)?;
    let converged = hx.converged && hy.converged && hxy.converged;
    let triple = RateTriple {
        a: hx.value,
        b: hy.value,
        s: hxy.value,
    };
    Ok(RateRegion::from_triples(
        "outer bound",
        "outer bound",
        bare(triple),
        solver_meta("graph entropies", config, converged),
    ))
}

/// Exact region for sources independent given Z: the rectangle
/// R_X ≥ H_G(X|Y,Z), R_Y ≥ H_G(Y|X,Z).
pub fn independent_sources_region(spec: &ProblemSpec, config: &RegionConfig) -> Result<RateRegion> {
    if !check_conditional_independence(spec) {
        return Err(Error::Hypothesis("X and Y are not independent given Z".into()));
    }
    let hx = conditional_graph_entropy(spec, Role::X, yz(), FamilyMode::Maximal, &config.solver)?;
    let hy = conditional_graph_entropy(spec, Role::Y, xz(), FamilyMode::Maximal, &config.solver)?;
    let triple = RateTriple {
        a: hx.value,
        b: hy.value,
        s: hx.value + hy.value,
    };
    Ok(RateRegion::from_triples(
        "rate region",
        "independent sources",
        bare(triple),
        solver_meta("graph entropies", config, hx.converged && hy.converged),
    ))
}

/// Exact region when one source is determined by (f, Z): the union over
/// W-multisets of size `k` (default |Y|+1 for the other source) of
/// (H(X|W,Z), I(Y;W|X,Z), H(X|Z) + I(Y;W|X,Z)). For `wrt = Y` the roles
/// are exchanged.
pub fn partially_invertible_region(
    spec: &ProblemSpec,
    wrt: Role,
    k: Option<usize>,
    config: &RegionConfig,
) -> Result<RateRegion> {
    if !check_partially_invertible(spec, wrt)? {
        return Err(Error::Hypothesis(format!(
            "{wrt} is not a function of (f, Z)"
        )));
    }
    match wrt {
        Role::X => partially_invertible_x(spec, k, config),
        Role::Y => Ok(partially_invertible_x(&spec.swapped(), k, config)?.mirrored()),
        other => Err(Error::Role(format!("partial invertibility is defined for X or Y, got {other}"))),
    }
}

fn partially_invertible_x(spec: &ProblemSpec, k: Option<usize>, config: &RegionConfig) -> Result<RateRegion> {
    let k = k.unwrap_or(spec.ny() + 1);
    let gy = build_char_graph(spec, Role::Y, xz())?;
    let gamma = independent_sets(&gy)?;
    let identity = Channel::identity(Role::X, spec.nx());
    let vmasks = identity.masks().to_vec();
    let mut families: Vec<Vec<VertexSet>> = Vec::new();
    for m in multisets(&gamma, k, &VertexSet::full(spec.ny()), Reductions::default()) {
        families.push(m.expand());
        if families.len() > config.candidate_budget {
            return Err(Error::BudgetExceeded {
                what: "W multiset candidates".into(),
                budget: config.candidate_budget,
            });
        }
    }
    let sweeps = families
        .iter()
        .enumerate()
        .map(|(id, wm)| sweep_pair(spec, &vmasks, wm, Some(&identity), &config.lambdas, &config.solver).map(|s| (id, s)))
        .collect::<Result<Vec<_>>>()?;
    let meta = RegionMeta {
        mode: format!("multiset:{k}"),
        lambdas: config.lambdas.len(),
        restarts: config.solver.restarts,
        seed: config.solver.seed,
        candidates: families.len(),
        converged: true,
    };
    Ok(assemble(
        spec,
        "rate region",
        "partially invertible",
        sweeps,
        &config.lambdas,
        meta,
    ))
}

/// Lossless reproduction of both sources:
/// (H(X|Y,Z), H(Y|X,Z), H(X,Y|Z)).
pub fn slepian_wolf_region(spec: &ProblemSpec) -> Result<RateRegion> {
    let j = spec.joint();
    let x = RoleSet::of(&[Role::X]);
    let y = RoleSet::of(&[Role::Y]);
    let z = RoleSet::of(&[Role::Z]);
    let triple = RateTriple {
        a: j.conditional_entropy(x, y.union(z))?,
        b: j.conditional_entropy(y, x.union(z))?,
        s: j.conditional_entropy(x.union(y), z)?,
    };
    Ok(RateRegion::from_triples(
        "rate region",
        "Slepian-Wolf",
        bare(triple),
        closed_form_meta("closed form"),
    ))
}

/// Region for the mod-2 sum of symmetric binary sources with no side
/// information: R_X ≥ H(X⊕Y), R_Y ≥ H(X⊕Y).
pub fn korner_marton_region(spec: &ProblemSpec) -> Result<RateRegion> {
    let fail = |why: &str| Err(Error::Hypothesis(why.into()));
    if spec.nx() != 2 || spec.ny() != 2 {
        return fail("sources must both be binary");
    }
    if spec.nz() != 1 {
        return fail("Z must be constant");
    }
    let f = |x, y| spec.f(x, y, 0);
    if f(0, 0) != f(1, 1) || f(0, 1) != f(1, 0) || f(0, 0) == f(0, 1) {
        return fail("f must be the mod-2 sum");
    }
    let p = |x, y| spec.p(x, y, 0);
    if (p(0, 0) - p(1, 1)).abs() > 1e-12 || (p(0, 1) - p(1, 0)).abs() > 1e-12 {
        return fail("the source distribution must be symmetric");
    }
    let h = crate::model::binary_entropy(p(0, 0) + p(1, 1));
    let triple = RateTriple { a: h, b: h, s: 2.0 * h };
    Ok(RateRegion::from_triples(
        "rate region",
        "Korner-Marton",
        bare(triple),
        closed_form_meta("closed form"),
    ))
}
