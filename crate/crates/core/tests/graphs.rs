mod common;

use common::{edge_set, family, family_of, masks, xy_problem};
use fncomp::entropy::Channel;
use fncomp::fixtures::fixture;
use fncomp::graphs::*;
use fncomp::model::{Role, RoleSet};
use fncomp::sets::{independent_sets, MultiFamily};
use fncomp::Error;

fn yz() -> RoleSet {
    RoleSet::of(&[Role::Y, Role::Z])
}

fn edges(g: &CharGraph) -> std::collections::BTreeSet<(String, String)> {
    edge_set(&g.dump().edges)
}

fn pairs(list: &[(&str, &str)]) -> std::collections::BTreeSet<(String, String)> {
    list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn ex1_graph_of_x_given_y() {
    let g = build_char_graph(&fixture("ex1").unwrap(), Role::X, RoleSet::of(&[Role::Y])).unwrap();
    assert_eq!(edges(&g), pairs(&[("1", "3"), ("1", "4"), ("2", "4")]));
    assert_eq!(g.provenance(), "X|Y");
}

#[test]
fn constant_function_gives_edgeless_graphs() {
    let spec = fixture("const").unwrap();
    assert_eq!(build_char_graph(&spec, Role::X, yz()).unwrap().edge_count(), 0);
    assert_eq!(build_joint_char_graph(&spec).unwrap().edge_count(), 0);
}

#[test]
fn xor_graph_is_complete() {
    let g = build_char_graph(&fixture("ex2").unwrap(), Role::X, yz()).unwrap();
    assert!(g.is_complete());
}

#[test]
fn xor_joint_graph_is_bipartite_by_parity() {
    let g = build_joint_char_graph(&fixture("ex2").unwrap()).unwrap();
    let want = pairs(&[
        ("(0,0)", "(0,1)"),
        ("(0,0)", "(1,0)"),
        ("(0,1)", "(1,1)"),
        ("(1,0)", "(1,1)"),
    ]);
    assert_eq!(edges(&g), want);
}

#[test]
fn invertible_joint_graph_is_complete() {
    let g = build_joint_char_graph(&fixture("inv").unwrap()).unwrap();
    assert!(g.is_complete());
}

#[test]
fn joint_graph_respects_vertex_cap() {
    let spec = fixture("ex4").unwrap();
    assert!(matches!(build_joint_char_graph_with_cap(&spec, 8), Err(Error::Size { .. })));
    assert_eq!(build_joint_char_graph_with_cap(&spec, 9).unwrap().n(), 9);
}

#[test]
fn target_in_given_is_a_role_error() {
    let spec = fixture("ex1").unwrap();
    assert!(matches!(build_char_graph(&spec, Role::X, RoleSet::of(&[Role::X])), Err(Error::Role(_))));
    assert!(matches!(build_char_graph(&spec, Role::V, yz()), Err(Error::Role(_))));
}

fn ex1_generalized(sets: &[&[&str]]) -> CharGraph {
    let spec = fixture("ex1").unwrap();
    let membership = MultiFamily::from_sets(spec.x_labels().to_vec(), masks(spec.x_labels(), sets));
    let channel = Channel::uniform(Role::X, spec.nx(), membership.expand()).unwrap();
    build_generalized_graph(&spec, &membership, &channel).unwrap()
}

#[test]
fn ex1_first_generalized_graph() {
    let g = ex1_generalized(&[&["1"], &["2"], &["3"], &["4"], &["1", "2"]]);
    let gamma = family_of(independent_sets(&g).unwrap().label_sets());
    assert_eq!(gamma, family(&[&["1"], &["2"], &["3"], &["4"], &["2", "3"], &["3", "4"]]));
}

#[test]
fn ex1_second_generalized_graph() {
    let g = ex1_generalized(&[&["2"], &["4"], &["1", "2"], &["2", "3"]]);
    let gamma = family_of(independent_sets(&g).unwrap().label_sets());
    assert_eq!(gamma, family(&[&["1"], &["2"], &["3"], &["4"], &["3", "4"]]));
}

#[test]
fn singleton_messages_reproduce_the_conditional_graph() {
    for name in ["ex1", "ex3", "ex4", "inv"] {
        let spec = fixture(name).unwrap();
        let singletons: Vec<VertexSet> = (0..spec.nx()).map(VertexSet::singleton).collect();
        let gv = generalized_graph_from_masks(&spec, Role::X, &singletons).unwrap();
        let gy = build_char_graph(&spec, Role::Y, RoleSet::of(&[Role::X, Role::Z])).unwrap();
        assert_eq!(gv.edges(), gy.edges(), "{name}");
    }
}

#[test]
fn dependent_set_makes_f_tilde_multivalued() {
    let spec = fixture("ex1").unwrap();
    let bad = masks(spec.x_labels(), &[&["1", "3"], &["2"], &["4"]]);
    assert!(matches!(
        generalized_graph_from_masks(&spec, Role::X, &bad),
        Err(Error::InconsistentFTilde { .. })
    ));
}

#[test]
fn uncovered_or_mismatched_membership_is_rejected() {
    let spec = fixture("ex1").unwrap();
    let partial = masks(spec.x_labels(), &[&["1", "2"], &["3"]]);
    assert!(matches!(
        generalized_graph_from_masks(&spec, Role::X, &partial),
        Err(Error::MembershipViolation(_))
    ));
    let membership = MultiFamily::from_sets(spec.x_labels().to_vec(), masks(spec.x_labels(), &[&["1", "2"], &["3", "4"]]));
    let other = Channel::identity(Role::X, 4);
    assert!(build_generalized_graph(&spec, &membership, &other).is_err());
}

#[test]
fn lemma1_hypotheses_on_examples() {
    let h = |n: &str| lemma1_hypotheses(&fixture(n).unwrap()).unwrap();
    let ex3 = h("ex3");
    assert_eq!((ex3.full_support, ex3.complete_graph, ex3.cond_independent), (false, false, true));
    let ex2 = h("ex2");
    assert_eq!((ex2.full_support, ex2.complete_graph, ex2.cond_independent), (true, true, false));
    let ex1 = h("ex1");
    assert_eq!((ex1.full_support, ex1.complete_graph, ex1.cond_independent), (false, false, false));
}

#[test]
fn lemma1_conclusion_holds_under_its_hypotheses() {
    for name in ["ex2", "ex3"] {
        let report = verify_lemma1_conclusion(&fixture(name).unwrap(), 1 << 16).unwrap();
        assert!(report.all_equal && report.consistent, "{name}");
    }
}

#[test]
fn lemma1_conclusion_fails_on_ex1() {
    let report = verify_lemma1_conclusion(&fixture("ex1").unwrap(), 1 << 16).unwrap();
    assert!(!report.all_equal && report.consistent);
    let target = family(&[&["1"], &["2"], &["3"], &["4"], &["1", "2"]]);
    let c = report
        .candidates
        .iter()
        .find(|c| family_of(c.family.clone()) == target)
        .expect("candidate enumerated");
    assert!(!c.equal);
    assert!(!c.extra_edges.is_empty());
}

#[test]
fn lemma1_budget_is_enforced() {
    assert!(matches!(
        verify_lemma1_conclusion(&fixture("ex1").unwrap(), 3),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn product_source_graph_matches_unconditioned_rule() {
    // p > 0 everywhere: x ~ x' iff f differs for some y
    let spec = xy_problem(3, 2, vec![0.1, 0.2, 0.15, 0.15, 0.3, 0.1], vec![0, 0, 0, 1, 1, 1], 2);
    let g = build_char_graph(&spec, Role::X, yz()).unwrap();
    assert_eq!(edges(&g), pairs(&[("0", "1"), ("0", "2"), ("1", "2")]));
    let g = build_char_graph(&spec, Role::Y, RoleSet::of(&[Role::X, Role::Z])).unwrap();
    assert_eq!(edges(&g), pairs(&[("0", "1")]));
}

#[test]
fn ex3_neighbouring_symbols_are_confusable() {
    // x = 0 and x = 1 both occur with z = 1, and y = 1 separates them
    let spec = fixture("ex3").unwrap();
    let g = build_char_graph(&spec, Role::X, yz()).unwrap();
    assert!(g.has_edge(0, 1));
    assert!(!g.is_independent(&VertexSet::from_bits(0b10011)));
}
