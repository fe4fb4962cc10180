use crate::error::{Error, Result};
use crate::graphs::{CharGraph, VertexSet};

use super::SetFamily;

/// Largest family the enumerators will materialize.
pub const MAX_FAMILY: usize = 1 << 20;

fn check_graph(g: &CharGraph) -> Result<()> {
    if g.n() > g.vertex_cap() {
        return Err(Error::Size {
            what: format!("graph {}", g.provenance()),
            size: g.n(),
            limit: g.vertex_cap(),
        });
    }
    Ok(())
}

fn too_many(g: &CharGraph) -> Error {
    Error::Size {
        what: format!("independent-set family of {}", g.provenance()),
        size: MAX_FAMILY + 1,
        limit: MAX_FAMILY,
    }
}

/// Γ(G): every nonempty independent set, in canonical order.
pub fn independent_sets(g: &CharGraph) -> Result<SetFamily> {
    check_graph(g)?;
    let n = g.n();
    let mut out = Vec::new();
    // stack of (current set, allowed extensions)
    let mut stack = vec![(VertexSet::new(), VertexSet::full(n))];
    while let Some((cur, cand)) = stack.pop() {
        for v in cand.iter() {
            let mut next = cur.clone();
            next.insert(v);
            let rest: VertexSet = cand.iter().filter(|u| *u > v).collect();
            let rest = rest.difference(g.neighbors(v));
            out.push(next.clone());
            if out.len() > MAX_FAMILY {
                return Err(too_many(g));
            }
            if !rest.is_empty() {
                stack.push((next, rest));
            }
        }
    }
    Ok(SetFamily::new(g.labels().to_vec(), out))
}

/// Γ*(G): the maximal independent sets, found as maximal cliques of the
/// complement graph with pivoting.
pub fn maximal_independent_sets(g: &CharGraph) -> Result<SetFamily> {
    check_graph(g)?;
    let n = g.n();
    let all = VertexSet::full(n);
    let co: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut s = all.difference(g.neighbors(v));
            s.remove(v);
            s
        })
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(VertexSet::new(), all, VertexSet::new())];
    while let Some((r, mut p, mut x)) = stack.pop() {
        if p.is_empty() {
            if x.is_empty() && !r.is_empty() {
                out.push(r);
                if out.len() > MAX_FAMILY {
                    return Err(too_many(g));
                }
            }
            continue;
        }
        let pivot = p
            .union(&x)
            .iter()
            .max_by_key(|u| p.intersection(&co[*u]).len())
            .expect("p is nonempty");
        for v in p.difference(&co[pivot]).iter() {
            let mut r2 = r.clone();
            r2.insert(v);
            stack.push((r2, p.intersection(&co[v]), x.intersection(&co[v])));
            p.remove(v);
            x.insert(v);
        }
    }
    Ok(SetFamily::new(g.labels().to_vec(), out))
}

/// Index lists of the subfamilies of `sets` whose union contains `cover`,
/// in lexicographic order of index lists. Fails once more than `budget`
/// subfamilies qualify.
pub fn covering_subfamilies(sets: &[VertexSet], cover: &VertexSet, budget: usize) -> Result<Vec<Vec<usize>>> {
    // suffix unions let a branch stop once it can no longer cover
    let mut suffix = vec![VertexSet::new(); sets.len() + 1];
    for i in (0..sets.len()).rev() {
        suffix[i] = suffix[i + 1].union(&sets[i]);
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        i: usize,
        sets: &[VertexSet],
        suffix: &[VertexSet],
        need: &VertexSet,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<()> {
        if need.is_empty() && !chosen.is_empty() {
            out.push(chosen.clone());
            if out.len() > budget {
                return Err(Error::BudgetExceeded {
                    what: "covering subfamily enumeration".into(),
                    budget,
                });
            }
        }
        if !need.is_subset(&suffix[i]) {
            return Ok(());
        }
        for j in i..sets.len() {
            if !need.is_subset(&suffix[j]) {
                break;
            }
            chosen.push(j);
            rec(j + 1, sets, suffix, &need.difference(&sets[j]), chosen, out, budget)?;
            chosen.pop();
        }
        Ok(())
    }
    rec(0, sets, &suffix, cover, &mut chosen, &mut out, budget)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn path_graph_families() {
        // 1-3, 1-4, 2-4 on {1,2,3,4}
        let g = CharGraph::from_edges(labels(4), [(0, 2), (0, 3), (1, 3)], "t").unwrap();
        assert_eq!(
            independent_sets(&g).unwrap().to_string(),
            "{ {1},{2},{3},{4},{1,2},{2,3},{3,4} }"
        );
        assert_eq!(maximal_independent_sets(&g).unwrap().to_string(), "{ {1,2},{2,3},{3,4} }");
    }

    #[test]
    fn edgeless_and_complete() {
        let e = CharGraph::from_edges(labels(4), [], "e").unwrap();
        assert_eq!(independent_sets(&e).unwrap().len(), 15);
        assert_eq!(maximal_independent_sets(&e).unwrap().len(), 1);
        let k = CharGraph::from_edges(labels(3), [(0, 1), (0, 2), (1, 2)], "k").unwrap();
        assert_eq!(independent_sets(&k).unwrap().to_string(), "{ {1},{2},{3} }");
        assert_eq!(maximal_independent_sets(&k).unwrap().to_string(), "{ {1},{2},{3} }");
    }

    #[test]
    fn covering_subfamilies_of_a_chain() {
        let sets: Vec<VertexSet> = vec![[0, 1].into_iter().collect(), [1, 2].into_iter().collect(), VertexSet::singleton(2)];
        let c = covering_subfamilies(&sets, &VertexSet::full(3), 100).unwrap();
        assert_eq!(c, vec![vec![0, 1], vec![0, 1, 2], vec![0, 2]]);
        assert!(matches!(
            covering_subfamilies(&sets, &VertexSet::full(3), 2),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
