use serde::Serialize;

use super::witness::{ChainFlags, JointWitness};
use crate::error::{Error, Result};
use crate::graphs::{build_char_graph, generalized_graph_from_masks, VertexSet};
use crate::model::{Pmf, ProblemSpec, Role, RoleSet};
use crate::sets::support_set;

/// H(f(X,Y,Z) | V,W,Z) at most this many bits counts as zero.
const ZERO_TOL: f64 = 1e-12;

/// Both sides of the zero-error equivalence.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroErrorSides {
    /// H(f(X,Y,Z) | V,W,Z) in bits.
    pub conditional_entropy: f64,
    pub entropy_side: bool,
    /// Every pair of positive-probability points sharing (v, w, z) has
    /// the same function value.
    pub pairwise_side: bool,
}

fn f_given_vwz(w: &JointWitness, spec: &ProblemSpec) -> (f64, bool) {
    let j = w.joint();
    let d = j.dims();
    let (nv, nx, ny, nw, nz) = (d[0], d[1], d[2], d[3], d[4]);
    let nf = spec.f_labels().len();
    let mut mass = vec![0.0; nv * nw * nz * nf];
    let mut seen: Vec<Option<usize>> = vec![None; nv * nw * nz];
    let mut pairwise = true;
    let data = j.data();
    let mut i = 0;
    for v in 0..nv {
        for x in 0..nx {
            for y in 0..ny {
                for wv in 0..nw {
                    for z in 0..nz {
                        let p = data[i];
                        i += 1;
                        if p <= 0.0 {
                            continue;
                        }
                        let f = spec.f(x, y, z);
                        let cell = (v * nw + wv) * nz + z;
                        mass[cell * nf + f] += p;
                        match seen[cell] {
                            Some(g) if g != f => pairwise = false,
                            _ => seen[cell] = Some(f),
                        }
                    }
                }
            }
        }
    }
    let mut h = 0.0;
    for cell in mass.chunks(nf) {
        let total: f64 = cell.iter().sum();
        for &m in cell.iter().filter(|m| **m > 0.0) {
            h += m * (total / m).log2();
        }
    }
    (h, pairwise)
}

/// Evaluates H(f|V,W,Z) = 0 and the pairwise condition separately.
pub fn zero_error_sides(w: &JointWitness, spec: &ProblemSpec) -> ZeroErrorSides {
    let (h, pairwise) = f_given_vwz(w, spec);
    ZeroErrorSides {
        conditional_entropy: h,
        entropy_side: h <= ZERO_TOL,
        pairwise_side: pairwise,
    }
}

/// True iff f(X,Y,Z) is a function of (V, W, Z). Both characterizations
/// are evaluated; disagreement is an error.
pub fn zero_error_check(w: &JointWitness, spec: &ProblemSpec) -> Result<bool> {
    let s = zero_error_sides(w, spec);
    if s.entropy_side != s.pairwise_side {
        return Err(Error::EquivalenceViolation(format!(
            "H(f|V,W,Z) = {:e} bits but the pairwise condition says {}",
            s.conditional_entropy, s.pairwise_side
        )));
    }
    Ok(s.entropy_side)
}

/// Sub-claims of the support-set equivalence for one witness.
#[derive(Debug, Clone, Serialize)]
pub struct SupportReport {
    pub chains: ChainFlags,
    /// Chains re-measured after relabelling V and W by their support sets.
    pub relabeled_chains: ChainFlags,
    pub zero_error: bool,
    /// S_X(V) ∈ M(Γ(G_{X|Y,Z})) and S_Y(W) ∈ M(Γ(G_{Y|S_X(V),Z})).
    pub memberships: bool,
    /// f agrees on every positive pair drawn from S_X(v) × S_Y(w).
    pub support_pairwise: bool,
    /// X ∈ S_X(V) and Y ∈ S_Y(W).
    pub claim_a: bool,
    /// Chains are unchanged by the relabelling.
    pub claim_b: bool,
    /// Zero error iff the support pairwise condition; only under the chains.
    pub claim_c: Option<bool>,
    /// Memberships iff the support pairwise condition; only under the chains.
    pub claim_d: Option<bool>,
    /// Zero error and chains imply memberships and relabelled chains.
    pub forward: Option<bool>,
    /// Memberships and relabelled chains imply zero error and chains.
    pub backward: Option<bool>,
    /// The chains fail, so claims c and d and both directions are skipped.
    pub abstained: bool,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.claim_a
            && self.claim_b
            && [self.claim_c, self.claim_d, self.forward, self.backward]
                .iter()
                .all(|c| c.unwrap_or(true))
    }
}

/// Joint with the message axes restricted to positive-probability values.
/// Each value keeps its identity, so this is the (value, support set)
/// relabelling.
fn relabeled(joint: &Pmf, keep_v: &[usize], keep_w: &[usize]) -> Result<Pmf> {
    let d = joint.dims();
    let dims = vec![keep_v.len(), d[1], d[2], keep_w.len(), d[4]];
    Pmf::from_fn(joint.roles().to_vec(), dims, |i| {
        joint.get(&[keep_v[i[0]], i[1], i[2], keep_w[i[3]], i[4]])
    })
}

fn support_pairwise(spec: &ProblemSpec, sx: &[VertexSet], sy: &[VertexSet]) -> bool {
    for a in sx {
        for b in sy {
            for z in 0..spec.nz() {
                let mut value = None;
                for x in a.iter() {
                    for y in b.iter() {
                        if spec.p(x, y, z) <= 0.0 {
                            continue;
                        }
                        let f = spec.f(x, y, z);
                        if value.is_some_and(|g| g != f) {
                            return false;
                        }
                        value = Some(f);
                    }
                }
            }
        }
    }
    true
}

fn memberships(spec: &ProblemSpec, sx: &[VertexSet], sy: &[VertexSet]) -> Result<bool> {
    let gx = build_char_graph(spec, Role::X, RoleSet::of(&[Role::Y, Role::Z]))?;
    if !sx.iter().all(|s| gx.is_independent(s)) {
        return Ok(false);
    }
    let gv = match generalized_graph_from_masks(spec, Role::X, sx) {
        Ok(g) => g,
        Err(Error::InconsistentFTilde { .. } | Error::MembershipViolation(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(sy.iter().all(|s| gv.is_independent(s)))
}

/// Checks the equivalence between zero-error recovery with the Markov
/// chains and the support-set memberships, claim by claim. A failed claim
/// is an `EquivalenceViolation`; a witness whose chains fail gets a report
/// with `abstained` set.
pub fn support_equivalence_check(w: &JointWitness, spec: &ProblemSpec) -> Result<SupportReport> {
    let j = w.joint();
    let sv = support_set(&j.marginal(RoleSet::of(&[Role::V, Role::X]))?)?;
    let sw = support_set(&j.marginal(RoleSet::of(&[Role::Y, Role::W]))?)?;
    let sx = sv.subsets();
    let sy = sw.subsets();

    let cover = |sets: &[VertexSet], n: usize| sets.iter().fold(VertexSet::new(), |a, s| a.union(s)) == VertexSet::full(n);
    let claim_a = cover(&sx, spec.nx()) && cover(&sy, spec.ny());

    let keep_v: Vec<usize> = sv.entries.iter().map(|e| e.index).collect();
    let keep_w: Vec<usize> = sw.entries.iter().map(|e| e.index).collect();
    let relabeled_chains = ChainFlags::measure(&relabeled(j, &keep_v, &keep_w)?)?;
    let chains = w.chains();
    let claim_b = chains == relabeled_chains;

    let zero_error = zero_error_check(w, spec)?;
    let memberships = memberships(spec, &sx, &sy)?;
    let pairwise = support_pairwise(spec, &sx, &sy);

    let abstained = !chains.both();
    let under_chains = |b: bool| if abstained { None } else { Some(b) };
    let report = SupportReport {
        chains,
        relabeled_chains,
        zero_error,
        memberships,
        support_pairwise: pairwise,
        claim_a,
        claim_b,
        claim_c: under_chains(zero_error == pairwise),
        claim_d: under_chains(memberships == pairwise),
        forward: under_chains(!zero_error || (memberships && relabeled_chains.both())),
        backward: under_chains(!(memberships && relabeled_chains.both()) || zero_error),
        abstained,
    };
    if !report.passed() {
        return Err(Error::EquivalenceViolation(format!("support-set equivalence fails: {report:?}")));
    }
    Ok(report)
}
