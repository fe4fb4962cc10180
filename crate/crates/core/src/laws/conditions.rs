use serde::Serialize;

use crate::error::Result;
use crate::graphs::{build_char_graph, generalized_graph_from_masks, VertexSet};
use crate::model::{ProblemSpec, Role, RoleSet};
use crate::sets::{covering_subfamilies, independent_sets};

/// A support pair accepted by one validation order and rejected by the
/// other.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionMismatch {
    pub v_family: Vec<Vec<String>>,
    pub w_family: Vec<Vec<String>>,
    pub v_first: bool,
    pub w_first: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub v_families: usize,
    pub w_families: usize,
    pub pairs: usize,
    pub accepted_v_first: usize,
    pub accepted_w_first: usize,
    pub mismatches: Vec<ConditionMismatch>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn labelled(labels: &[String], sets: &[VertexSet]) -> Vec<Vec<String>> {
    sets.iter().map(|s| s.iter().map(|i| labels[i].clone()).collect()).collect()
}

/// Validates every pair of covering supports in both orders:
/// V-first (V in Γ(G_{X|Y,Z}), W in Γ(G_{Y|V,Z})) and
/// W-first (W in Γ(G_{Y|X,Z}), V in Γ(G_{X|W,Z})).
///
/// Both orders only ever accept subfamilies of Γ(G_{X|Y,Z}) and
/// Γ(G_{Y|X,Z}), so pairs are drawn from those. `budget` caps the number
/// of covering subfamilies per side.
pub fn condition_equivalence(spec: &ProblemSpec, budget: usize) -> Result<ConditionReport> {
    let gx = build_char_graph(spec, Role::X, RoleSet::of(&[Role::Y, Role::Z]))?;
    let gy = build_char_graph(spec, Role::Y, RoleSet::of(&[Role::X, Role::Z]))?;
    let gamma_x = independent_sets(&gx)?;
    let gamma_y = independent_sets(&gy)?;
    let pick = |fam: &[VertexSet], idx: Vec<usize>| idx.into_iter().map(|i| fam[i].clone()).collect::<Vec<_>>();
    let vs: Vec<Vec<VertexSet>> = covering_subfamilies(gamma_x.sets(), &VertexSet::full(spec.nx()), budget)?
        .into_iter()
        .map(|i| pick(gamma_x.sets(), i))
        .collect();
    let ws: Vec<Vec<VertexSet>> = covering_subfamilies(gamma_y.sets(), &VertexSet::full(spec.ny()), budget)?
        .into_iter()
        .map(|i| pick(gamma_y.sets(), i))
        .collect();

    let by_v = vs
        .iter()
        .map(|v| generalized_graph_from_masks(spec, Role::X, v))
        .collect::<Result<Vec<_>>>()?;
    let by_w = ws
        .iter()
        .map(|w| generalized_graph_from_masks(spec, Role::Y, w))
        .collect::<Result<Vec<_>>>()?;

    let mut report = ConditionReport {
        v_families: vs.len(),
        w_families: ws.len(),
        pairs: vs.len() * ws.len(),
        accepted_v_first: 0,
        accepted_w_first: 0,
        mismatches: Vec::new(),
    };
    for (v, gyv) in vs.iter().zip(&by_v) {
        for (w, gxw) in ws.iter().zip(&by_w) {
            let v_first = w.iter().all(|s| gyv.is_independent(s));
            let w_first = v.iter().all(|s| gxw.is_independent(s));
            report.accepted_v_first += v_first as usize;
            report.accepted_w_first += w_first as usize;
            if v_first != w_first {
                report.mismatches.push(ConditionMismatch {
                    v_family: labelled(spec.x_labels(), v),
                    w_family: labelled(spec.y_labels(), w),
                    v_first,
                    w_first,
                });
            }
        }
    }
    Ok(report)
}
