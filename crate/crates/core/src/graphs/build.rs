use super::{CharGraph, VertexSet, DEFAULT_VERTEX_CAP};
use crate::entropy::Channel;
use crate::error::{Error, Result};
use crate::model::{ProblemSpec, Role, RoleSet};
use crate::sets::MultiFamily;

fn role_axis(role: Role) -> Result<usize> {
    match role {
        Role::X => Ok(0),
        Role::Y => Ok(1),
        Role::Z => Ok(2),
        other => Err(Error::Role(format!("{other} is not a source role"))),
    }
}

fn check_cap(what: String, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::Size { what, size, limit });
    }
    Ok(())
}

/// G_{target|given}: vertices of `target` are adjacent iff some assignment
/// of the `given` roles is jointly possible with both and f can differ.
///
/// Source roles outside `given ∪ {target}` are completed existentially: each
/// endpoint may pair with any completion of positive probability.
pub fn build_char_graph(spec: &ProblemSpec, target: Role, given: RoleSet) -> Result<CharGraph> {
    build_char_graph_with_cap(spec, target, given, DEFAULT_VERTEX_CAP)
}

pub fn build_char_graph_with_cap(
    spec: &ProblemSpec,
    target: Role,
    given: RoleSet,
    vertex_cap: usize,
) -> Result<CharGraph> {
    let t_axis = role_axis(target)?;
    if given.contains(target) {
        return Err(Error::Role(format!("target {target} appears in the given set {given}")));
    }
    let sources = RoleSet::of(&[Role::X, Role::Y, Role::Z]);
    if !given.is_subset(sources) {
        return Err(Error::Role(format!("given set {given} contains non-source roles")));
    }
    let dims = [spec.nx(), spec.ny(), spec.nz()];
    let n = dims[t_axis];
    check_cap(format!("graph on {target}"), n, vertex_cap)?;

    let given_axes: Vec<usize> = given.iter().map(|r| role_axis(r).expect("checked")).collect();
    let n_given: usize = given_axes.iter().map(|a| dims[*a]).product();
    // f values reachable from (target symbol, given assignment)
    let mut reach: Vec<Vec<usize>> = vec![Vec::new(); n * n_given];
    for x in 0..dims[0] {
        for y in 0..dims[1] {
            for z in 0..dims[2] {
                if spec.p(x, y, z) <= 0.0 {
                    continue;
                }
                let idx = [x, y, z];
                let g = given_axes.iter().fold(0, |acc, a| acc * dims[*a] + idx[*a]);
                let cell = &mut reach[idx[t_axis] * n_given + g];
                let v = spec.f(x, y, z);
                if !cell.contains(&v) {
                    cell.push(v);
                }
            }
        }
    }

    let mut graph = CharGraph::empty(
        spec.labels(target)?.to_vec(),
        format!("{target}|{given}"),
        vertex_cap,
    );
    for a in 0..n {
        for b in a + 1..n {
            let differ = (0..n_given).any(|g| {
                let (ra, rb) = (&reach[a * n_given + g], &reach[b * n_given + g]);
                !ra.is_empty() && !rb.is_empty() && !(ra.len() == 1 && rb.len() == 1 && ra[0] == rb[0])
            });
            if differ {
                graph.add_edge(a, b);
            }
        }
    }
    Ok(graph)
}

/// G_{X,Y|Z} on the product alphabet; vertex (x,y) has index x·|Y| + y.
pub fn build_joint_char_graph(spec: &ProblemSpec) -> Result<CharGraph> {
    build_joint_char_graph_with_cap(spec, DEFAULT_VERTEX_CAP)
}

pub fn build_joint_char_graph_with_cap(spec: &ProblemSpec, vertex_cap: usize) -> Result<CharGraph> {
    let (nx, ny, nz) = (spec.nx(), spec.ny(), spec.nz());
    check_cap("product alphabet X×Y".into(), nx * ny, vertex_cap)?;
    let labels = (0..nx)
        .flat_map(|x| (0..ny).map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", spec.x_labels()[x], spec.y_labels()[y]))
        .collect();
    let mut graph = CharGraph::empty(labels, "X,Y|Z".into(), vertex_cap);
    for z in 0..nz {
        let live: Vec<(usize, usize)> = (0..nx * ny)
            .filter(|k| spec.p(k / ny, k % ny, z) > 0.0)
            .map(|k| (k, spec.f(k / ny, k % ny, z)))
            .collect();
        for (i, &(a, fa)) in live.iter().enumerate() {
            for &(b, fb) in &live[i + 1..] {
                if fa != fb {
                    graph.add_edge(a, b);
                }
            }
        }
    }
    Ok(graph)
}

/// Generalized graph for a message variable whose values carry the given
/// masks over the `side` source (X or Y). The result lives on the other
/// source: G_{Y|V,Z} for side X, G_{X|W,Z} for side Y.
///
/// A symbol belongs to a message value exactly when the mask says so; the
/// numeric channel weights play no part.
pub fn generalized_graph_from_masks(spec: &ProblemSpec, side: Role, masks: &[VertexSet]) -> Result<CharGraph> {
    let (other, n_side) = match side {
        Role::X => (Role::Y, spec.nx()),
        Role::Y => (Role::X, spec.ny()),
        r => return Err(Error::Role(format!("messages are defined over X or Y, not {r}"))),
    };
    let all = VertexSet::full(n_side);
    let mut covered = VertexSet::new();
    for (i, m) in masks.iter().enumerate() {
        if m.is_empty() {
            return Err(Error::MembershipViolation(format!("message value {i} has an empty mask")));
        }
        if !m.is_subset(&all) {
            return Err(Error::MembershipViolation(format!(
                "message value {i} names symbols outside the {side} alphabet"
            )));
        }
        covered = covered.union(m);
    }
    if covered != all {
        let missing: Vec<&str> = all
            .difference(&covered)
            .iter()
            .map(|s| spec.labels(side).expect("source role")[s].as_str())
            .collect();
        return Err(Error::MembershipViolation(format!(
            "{side} symbols {missing:?} lie in no message value"
        )));
    }

    let n_other = spec.size(other)?;
    let nz = spec.nz();
    let at = |s: usize, o: usize, z: usize| match side {
        Role::X => (spec.p(s, o, z), spec.f(s, o, z)),
        _ => (spec.p(o, s, z), spec.f(o, s, z)),
    };
    let mut graph = CharGraph::empty(
        spec.labels(other)?.to_vec(),
        format!("{other}|{},Z", if side == Role::X { "V" } else { "W" }),
        DEFAULT_VERTEX_CAP.max(n_other),
    );
    // distinct masks give identical rows; scan each once
    let mut distinct: Vec<(usize, &VertexSet)> = masks.iter().enumerate().collect();
    distinct.sort_by(|a, b| a.1.cmp(b.1));
    distinct.dedup_by(|a, b| a.1 == b.1);
    distinct.sort_by_key(|(i, _)| *i);

    let mut ftilde: Vec<Option<usize>> = vec![None; n_other];
    for &(v, mask) in &distinct {
        for z in 0..nz {
            for (o, slot) in ftilde.iter_mut().enumerate() {
                *slot = None;
                for s in mask.iter() {
                    let (p, f) = at(s, o, z);
                    if p <= 0.0 {
                        continue;
                    }
                    match *slot {
                        Some(prev) if prev != f => {
                            return Err(Error::InconsistentFTilde {
                                v,
                                other: spec.labels(other)?[o].clone(),
                                z: spec.z_labels()[z].clone(),
                            })
                        }
                        _ => *slot = Some(f),
                    }
                }
            }
            for a in 0..n_other {
                for b in a + 1..n_other {
                    if let (Some(fa), Some(fb)) = (ftilde[a], ftilde[b]) {
                        if fa != fb {
                            graph.add_edge(a, b);
                        }
                    }
                }
            }
        }
    }
    Ok(graph)
}

/// Generalized graph induced by a channel whose masks are exactly the
/// expanded `membership` family.
pub fn build_generalized_graph(spec: &ProblemSpec, membership: &MultiFamily, channel: &Channel) -> Result<CharGraph> {
    let expected = membership.expand();
    if channel.masks() != expected.as_slice() {
        return Err(Error::MembershipViolation(
            "channel masks differ from the membership family".into(),
        ));
    }
    generalized_graph_from_masks(spec, channel.source(), channel.masks())
}
