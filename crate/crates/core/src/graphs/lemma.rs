use serde::Serialize;

use super::{build_char_graph, generalized_graph_from_masks, VertexSet};
use crate::error::Result;
use crate::model::{check_conditional_independence, ProblemSpec, Role, RoleSet};
use crate::sets::{covering_subfamilies, independent_sets};

/// The three sufficient conditions under which replacing X by an
/// independent-set message leaves the graph of Y unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma1Hypotheses {
    /// p(x,y,z) > 0 everywhere.
    pub full_support: bool,
    /// G_{X|Y,Z} is complete, so its independent sets are singletons.
    pub complete_graph: bool,
    /// X and Y independent given Z.
    pub cond_independent: bool,
}

impl Lemma1Hypotheses {
    pub fn any(&self) -> bool {
        self.full_support || self.complete_graph || self.cond_independent
    }
}

pub fn lemma1_hypotheses(spec: &ProblemSpec) -> Result<Lemma1Hypotheses> {
    let full_support = (0..spec.nx())
        .all(|x| (0..spec.ny()).all(|y| (0..spec.nz()).all(|z| spec.p(x, y, z) > 0.0)));
    let gx = build_char_graph(spec, Role::X, RoleSet::of(&[Role::Y, Role::Z]))?;
    Ok(Lemma1Hypotheses {
        full_support,
        complete_graph: gx.is_complete(),
        cond_independent: check_conditional_independence(spec),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Candidate {
    /// Distinct members of the V membership, as label lists.
    pub family: Vec<Vec<String>>,
    pub equal: bool,
    /// Edges of G_{Y|V,Z} absent from G_{Y|X,Z}.
    pub extra_edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Report {
    pub hypotheses: Lemma1Hypotheses,
    pub candidates: Vec<Lemma1Candidate>,
    pub all_equal: bool,
    /// False only if some hypothesis holds yet some candidate differs.
    pub consistent: bool,
}

/// Compares G_{Y|V,Z} with G_{Y|X,Z} for every V membership drawn from
/// Γ(G_{X|Y,Z}) that covers X.
///
/// Edges depend only on which sets occur, not on multiplicities or
/// channel weights, so covering subfamilies exhaust all multisets.
pub fn verify_lemma1_conclusion(spec: &ProblemSpec, budget: usize) -> Result<Lemma1Report> {
    let hypotheses = lemma1_hypotheses(spec)?;
    let gx = build_char_graph(spec, Role::X, RoleSet::of(&[Role::Y, Role::Z]))?;
    let gy = build_char_graph(spec, Role::Y, RoleSet::of(&[Role::X, Role::Z]))?;
    let gamma = independent_sets(&gx)?;
    let subfamilies = covering_subfamilies(gamma.sets(), &VertexSet::full(spec.nx()), budget)?;
    let mut candidates = Vec::with_capacity(subfamilies.len());
    for pick in subfamilies {
        let masks: Vec<VertexSet> = pick.iter().map(|i| gamma.sets()[*i].clone()).collect();
        let gv = generalized_graph_from_masks(spec, Role::X, &masks)?;
        let extra: Vec<[String; 2]> = gv
            .edges_not_in(&gy)
            .into_iter()
            .map(|(a, b)| [gv.labels()[a].clone(), gv.labels()[b].clone()])
            .collect();
        candidates.push(Lemma1Candidate {
            family: masks
                .iter()
                .map(|m| m.iter().map(|i| spec.x_labels()[i].clone()).collect())
                .collect(),
            equal: extra.is_empty() && gy.edges_subset_of(&gv),
            extra_edges: extra,
        });
    }
    let all_equal = candidates.iter().all(|c| c.equal);
    Ok(Lemma1Report {
        hypotheses,
        candidates,
        all_equal,
        consistent: all_equal || !hypotheses.any(),
    })
}
