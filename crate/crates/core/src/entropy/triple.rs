use serde::{Deserialize, Serialize};

use super::Channel;
use crate::error::{Error, Result};
use crate::graphs::{build_char_graph, generalized_graph_from_masks};
use crate::model::{conditional_mutual_information, Pmf, ProblemSpec, Role, RoleSet};

/// Constraint triple {R_X ≥ a, R_Y ≥ b, R_X + R_Y ≥ s}, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateTriple {
    pub a: f64,
    pub b: f64,
    pub s: f64,
}

impl RateTriple {
    /// min R_X·alpha + R_Y·beta over the triple's region, for alpha, beta ≥ 0.
    pub fn support(&self, alpha: f64, beta: f64) -> f64 {
        let c1 = alpha * self.a + beta * self.b.max(self.s - self.a);
        let c2 = alpha * self.a.max(self.s - self.b) + beta * self.b;
        c1.min(c2)
    }

    /// True iff (rx, ry) satisfies all three constraints within `tol`.
    pub fn contains(&self, rx: f64, ry: f64, tol: f64) -> bool {
        rx >= self.a - tol && ry >= self.b - tol && rx + ry >= self.s - tol
    }
}

fn check_source(ch: &Channel, role: Role, n: usize) -> Result<()> {
    if ch.source() != role || ch.n_source() != n {
        return Err(Error::Mask(format!(
            "channel must act on {role} with {n} symbols, got {} with {}",
            ch.source(),
            ch.n_source()
        )));
    }
    Ok(())
}

/// The coupling p(x,y,z)·p(v|x)·p(w|y) with axes (V, X, Y, W, Z).
pub fn coupling(spec: &ProblemSpec, chan_v: &Channel, chan_w: &Channel) -> Result<Pmf> {
    check_source(chan_v, Role::X, spec.nx())?;
    check_source(chan_w, Role::Y, spec.ny())?;
    Pmf::from_fn(
        vec![Role::V, Role::X, Role::Y, Role::W, Role::Z],
        vec![chan_v.n_messages(), spec.nx(), spec.ny(), chan_w.n_messages(), spec.nz()],
        |i| spec.p(i[1], i[2], i[4]) * chan_v.get(i[1], i[0]) * chan_w.get(i[2], i[3]),
    )
}

/// (I(V;X|W,Z), I(Y;W|V,Z), I(V;X|Z) + I(Y;W|V,Z)) for admissible channels:
/// V's masks independent in G_{X|Y,Z} and W's masks independent in the
/// generalized graph G_{Y|V,Z} that V's masks induce.
pub fn rate_triple(spec: &ProblemSpec, chan_v: &Channel, chan_w: &Channel) -> Result<RateTriple> {
    check_source(chan_v, Role::X, spec.nx())?;
    check_source(chan_w, Role::Y, spec.ny())?;
    let gx = build_char_graph(spec, Role::X, RoleSet::of(&[Role::Y, Role::Z]))?;
    if let Some(m) = chan_v.masks().iter().position(|m| !gx.is_independent(m)) {
        return Err(Error::Mask(format!("V mask {m} is not independent in G_{{X|Y,Z}}")));
    }
    let gv = generalized_graph_from_masks(spec, Role::X, chan_v.masks())?;
    if let Some(m) = chan_w.masks().iter().position(|m| !gv.is_independent(m)) {
        return Err(Error::Mask(format!("W mask {m} is not independent in G_{{Y|V,Z}}")));
    }
    triple_of(&coupling(spec, chan_v, chan_w)?)
}

/// The triple evaluated on a (V,X,Y,W,Z) joint, without admissibility
/// checks.
pub fn triple_of(joint: &Pmf) -> Result<RateTriple> {
    let r = |roles: &[Role]| RoleSet::of(roles);
    let a = conditional_mutual_information(joint, r(&[Role::V]), r(&[Role::X]), r(&[Role::W, Role::Z]))?;
    let b = conditional_mutual_information(joint, r(&[Role::Y]), r(&[Role::W]), r(&[Role::V, Role::Z]))?;
    let vx = conditional_mutual_information(joint, r(&[Role::V]), r(&[Role::X]), r(&[Role::Z]))?;
    Ok(RateTriple { a, b, s: vx + b })
}
