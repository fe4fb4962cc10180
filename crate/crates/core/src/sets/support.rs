use crate::error::{Error, Result};
use crate::graphs::VertexSet;
use crate::model::{Pmf, Role};

/// One message value relabelled by its index and the source symbols it can
/// co-occur with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportEntry {
    pub index: usize,
    pub subset: VertexSet,
}

/// The support-set relabelling of a message variable coupled with a source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub message: Role,
    pub source: Role,
    pub entries: Vec<SupportEntry>,
    /// Message values of zero probability; they have empty support.
    pub dropped: Vec<usize>,
}

impl SupportSet {
    /// One subset per retained message value, repeats kept.
    pub fn subsets(&self) -> Vec<VertexSet> {
        self.entries.iter().map(|e| e.subset.clone()).collect()
    }
}

/// Relabels the message axis of a two-role joint (message V or W, source
/// X or Y) by `(index, {s : p(m, s) > 0})`.
pub fn support_set(joint: &Pmf) -> Result<SupportSet> {
    let roles = joint.roles();
    if roles.len() != 2 {
        return Err(Error::Role(format!("support sets need a two-role joint, got {}", joint.role_set())));
    }
    let is_msg = |r: Role| matches!(r, Role::V | Role::W);
    let (m_axis, message, source) = match (is_msg(roles[0]), is_msg(roles[1])) {
        (true, false) => (0, roles[0], roles[1]),
        (false, true) => (1, roles[1], roles[0]),
        _ => {
            return Err(Error::Role(format!(
                "exactly one of {} must be a message role (V or W)",
                joint.role_set()
            )))
        }
    };
    let dims = joint.dims();
    let (nm, ns) = (dims[m_axis], dims[1 - m_axis]);
    let mut entries = Vec::new();
    let mut dropped = Vec::new();
    for m in 0..nm {
        let subset: VertexSet = (0..ns)
            .filter(|s| {
                let idx = if m_axis == 0 { [m, *s] } else { [*s, m] };
                joint.get(&idx) > 0.0
            })
            .collect();
        if subset.is_empty() {
            dropped.push(m);
        } else {
            entries.push(SupportEntry { index: m, subset });
        }
    }
    Ok(SupportSet {
        message,
        source,
        entries,
        dropped,
    })
}
