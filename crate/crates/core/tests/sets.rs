mod common;

use common::{family, family_of, labels};
use fncomp::fixtures::fixture;
use fncomp::graphs::{build_char_graph, CharGraph, VertexSet};
use fncomp::model::{Pmf, Role, RoleSet};
use fncomp::sets::*;

fn gamma(g: &CharGraph) -> common::Family {
    family_of(independent_sets(g).unwrap().label_sets())
}

fn gamma_star(g: &CharGraph) -> common::Family {
    family_of(maximal_independent_sets(g).unwrap().label_sets())
}

/// Every nonempty subset with no internal edge, by exhaustive scan.
fn brute_independent(g: &CharGraph) -> Vec<VertexSet> {
    (1u64..(1 << g.n()))
        .map(VertexSet::from_bits)
        .filter(|s| g.is_independent(s))
        .collect()
}

fn brute_maximal(g: &CharGraph) -> Vec<VertexSet> {
    let all = brute_independent(g);
    all.iter()
        .filter(|s| !all.iter().any(|t| s.is_proper_subset(t)))
        .cloned()
        .collect()
}

#[test]
fn ex1_families() {
    let spec = fixture("ex1").unwrap();
    let gx = build_char_graph(&spec, Role::X, RoleSet::of(&[Role::Y, Role::Z])).unwrap();
    let gy = build_char_graph(&spec, Role::Y, RoleSet::of(&[Role::X, Role::Z])).unwrap();
    let want = family(&[&["1"], &["2"], &["3"], &["4"], &["1", "2"], &["2", "3"], &["3", "4"]]);
    assert_eq!(gamma(&gx), want);
    assert_eq!(gamma(&gy), want);
    let want = family(&[&["1", "2"], &["2", "3"], &["3", "4"]]);
    assert_eq!(gamma_star(&gx), want);
    assert_eq!(gamma_star(&gy), want);
}

#[test]
fn edgeless_and_complete_graphs() {
    let empty = CharGraph::from_edges(labels(0..5), [], "empty").unwrap();
    assert_eq!(independent_sets(&empty).unwrap().len(), 31);
    assert_eq!(maximal_independent_sets(&empty).unwrap().len(), 1);
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let complete = CharGraph::from_edges(labels(0..5), pairs, "complete").unwrap();
    let fam = independent_sets(&complete).unwrap();
    assert_eq!(fam.len(), 5);
    assert!(fam.iter().all(|s| s.len() == 1));
    assert_eq!(maximal_independent_sets(&complete).unwrap().len(), 5);
}

#[test]
fn ex3_families_match_exhaustive_scan() {
    let spec = fixture("ex3").unwrap();
    for (target, given) in [(Role::X, [Role::Y, Role::Z]), (Role::Y, [Role::X, Role::Z])] {
        let g = build_char_graph(&spec, target, RoleSet::of(&given)).unwrap();
        let fam = independent_sets(&g).unwrap();
        let mut want = brute_independent(&g);
        want.sort();
        let mut got = fam.sets().to_vec();
        got.sort();
        assert_eq!(got, want);
        let mut want = brute_maximal(&g);
        want.sort();
        let mut got = maximal_independent_sets(&g).unwrap().sets().to_vec();
        got.sort();
        assert_eq!(got, want);
    }
}

#[test]
fn ex4_family_and_reduced_multisets() {
    let spec = fixture("ex4").unwrap();
    let gy = build_char_graph(&spec, Role::Y, RoleSet::of(&[Role::X, Role::Z])).unwrap();
    let fam = independent_sets(&gy).unwrap();
    assert_eq!(family_of(fam.label_sets()), family(&[&["0"], &["1"], &["2"], &["0", "2"]]));
    let out: Vec<String> = multisets(&fam, 4, &VertexSet::full(3), Reductions::all())
        .map(|m| m.to_string())
        .collect();
    assert_eq!(out, vec!["{ {1},{0,2},{0,2},{0,2} }"]);
}

#[test]
fn default_reductions_keep_every_distinct_padded_support() {
    // with dominated pruning off the enumeration still covers the
    // one-multiset result of the fully reduced run
    let f = SetFamily::new(labels(0..3), vec![[0].into_iter().collect(), [1].into_iter().collect(), [2].into_iter().collect(), [0, 2].into_iter().collect()]);
    let all: Vec<String> = multisets(&f, 4, &VertexSet::full(3), Reductions::default())
        .map(|m| m.to_string())
        .collect();
    assert!(all.contains(&"{ {1},{0,2},{0,2},{0,2} }".to_string()));
    assert!(all.iter().all(|m| m.matches('{').count() == 5));
    let unique: std::collections::BTreeSet<_> = all.iter().collect();
    assert_eq!(unique.len(), all.len());
}

#[test]
fn multisets_of_single_member_and_uncoverable() {
    let f = SetFamily::new(labels(["a"]), vec![VertexSet::singleton(0)]);
    let out: Vec<String> = multisets(&f, 2, &VertexSet::full(1), Reductions::default())
        .map(|m| m.to_string())
        .collect();
    assert_eq!(out, vec!["{ {a},{a} }"]);
    let f = SetFamily::new(labels(["a", "b"]), vec![VertexSet::singleton(0)]);
    assert_eq!(multisets(&f, 2, &VertexSet::full(2), Reductions::default()).count(), 0);
}

#[test]
fn multisets_carry_total_count() {
    let f = SetFamily::new(labels(0..3), vec![VertexSet::full(2), VertexSet::singleton(2)]);
    for m in multisets(&f, 3, &VertexSet::full(3), Reductions::default()) {
        assert_eq!(m.total(), 3);
        assert!(m.support().is_subset(&VertexSet::full(3)));
    }
}

#[test]
fn covering_subfamilies_cover() {
    let sets: Vec<VertexSet> = vec![VertexSet::from_bits(0b011), VertexSet::from_bits(0b110), VertexSet::from_bits(0b100)];
    let subs = covering_subfamilies(&sets, &VertexSet::full(3), 100).unwrap();
    assert_eq!(subs, vec![vec![0, 1], vec![0, 1, 2], vec![0, 2]]);
    assert!(covering_subfamilies(&sets, &VertexSet::full(3), 2).is_err());
}

#[test]
fn identity_coupling_gives_singletons() {
    let joint = Pmf::from_fn(vec![Role::V, Role::X], vec![3, 3], |i| if i[0] == i[1] { 1.0 / 3.0 } else { 0.0 }).unwrap();
    let s = support_set(&joint).unwrap();
    assert_eq!(s.message, Role::V);
    assert_eq!(s.source, Role::X);
    let idx: Vec<usize> = s.entries.iter().map(|e| e.index).collect();
    assert_eq!(idx, vec![0, 1, 2]);
    assert_eq!(s.subsets(), (0..3).map(VertexSet::singleton).collect::<Vec<_>>());
    assert!(s.dropped.is_empty());
}

#[test]
fn repeated_rows_keep_distinct_indices() {
    // W values 0 and 1 both see {0,1}; value 2 never occurs
    let data = [0.1, 0.2, 0.3, 0.4, 0.0, 0.0];
    let joint = Pmf::new(vec![Role::W, Role::Y], vec![3, 2], data.to_vec()).unwrap();
    let s = support_set(&joint).unwrap();
    assert_eq!(s.entries.len(), 2);
    assert_eq!(s.entries[0].subset, s.entries[1].subset);
    assert_ne!(s.entries[0].index, s.entries[1].index);
    assert_eq!(s.dropped, vec![2]);
}

#[test]
fn support_set_needs_one_message_axis() {
    let joint = Pmf::new(vec![Role::X, Role::Y], vec![1, 1], vec![1.0]).unwrap();
    assert!(support_set(&joint).is_err());
}
