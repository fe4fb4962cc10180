mod common;

use common::xy_problem;
use fncomp::fixtures::fixture;
use fncomp::model::{binary_entropy, mutual_information, Role, RoleSet};
use fncomp::entropy::{conditional_graph_entropy, FamilyMode};
use fncomp::regions::*;
use fncomp::Error;

fn r(roles: &[Role]) -> RoleSet {
    RoleSet::of(roles)
}

fn quick() -> RegionConfig {
    RegionConfig {
        lambdas: vec![0.25, 0.5, 1.0, 2.0, 4.0],
        ..RegionConfig::default()
    }
}

fn assert_polyline_monotone(region: &RateRegion) {
    for w in region.polyline.windows(2) {
        assert!(w[1][0] >= w[0][0] - 1e-12 && w[1][1] <= w[0][1] + 1e-12, "{:?}", region.polyline);
    }
}

#[test]
fn xor_inner_bound_is_slepian_wolf() {
    let spec = fixture("ex2").unwrap();
    let inner = inner_bound_region(&spec, InnerMode::All, &RegionConfig::default()).unwrap();
    let sw = slepian_wolf_region(&spec).unwrap();
    let h = binary_entropy(0.75);
    let t = sw.triples[0].triple;
    assert!((t.a - h).abs() < 1e-12 && (t.b - h).abs() < 1e-12 && (t.s - 1.0 - h).abs() < 1e-12);
    let cmp = region_compare(&inner, &sw, 257, 1e-4);
    assert!(cmp.a_subset_b && cmp.b_subset_a, "gap {}", cmp.max_gap);
    assert!(inner.contains(h, 1.0, 1e-4) && inner.contains(1.0, h, 1e-4));
    assert!(!inner.contains(h - 1e-3, 1.0, 0.0));
    assert!(inner.meta.converged);
    assert_polyline_monotone(&inner);
}

#[test]
fn slepian_wolf_sits_strictly_inside_korner_marton() {
    let spec = fixture("ex2").unwrap();
    let sw = slepian_wolf_region(&spec).unwrap();
    let km = korner_marton_region(&spec).unwrap();
    let cmp = region_compare(&sw, &km, 257, 1e-6);
    assert!(cmp.a_subset_b && !cmp.b_subset_a);
    let mi = mutual_information(&spec.joint(), r(&[Role::X]), r(&[Role::Y])).unwrap();
    let sum_gap = sw.support(1.0, 1.0) - km.support(1.0, 1.0);
    assert!((sum_gap - mi).abs() < 1e-12);
    assert!(sum_gap > 0.18);
}

#[test]
fn korner_marton_preconditions() {
    assert!(matches!(korner_marton_region(&fixture("ex1").unwrap()), Err(Error::Hypothesis(_))));
    assert!(matches!(korner_marton_region(&fixture("const").unwrap()), Err(Error::Hypothesis(_))));
}

#[test]
fn product_sources_give_rectangular_slepian_wolf_region() {
    let spec = xy_problem(2, 2, vec![0.12, 0.28, 0.18, 0.42], vec![0, 1, 2, 3], 4);
    let t = slepian_wolf_region(&spec).unwrap().triples[0].triple;
    assert!((t.s - t.a - t.b).abs() < 1e-12);
}

#[test]
fn constant_function_needs_no_rate() {
    let spec = fixture("const").unwrap();
    let inner = inner_bound_region(&spec, InnerMode::Maximal, &quick()).unwrap();
    assert!(inner.contains(0.0, 0.0, 1e-9));
    let outer = outer_bound_region(&spec, &quick()).unwrap();
    assert!(outer.contains(0.0, 0.0, 1e-9));
}

#[test]
fn invertible_outer_bound_is_slepian_wolf() {
    let spec = fixture("inv").unwrap();
    let outer = outer_bound_region(&spec, &quick()).unwrap();
    let sw = slepian_wolf_region(&spec).unwrap();
    let (o, s) = (outer.triples[0].triple, sw.triples[0].triple);
    assert!((o.a - s.a).abs() < 1e-6 && (o.b - s.b).abs() < 1e-6 && (o.s - s.s).abs() < 1e-6, "{o:?} {s:?}");
    assert_eq!(outer.kind, "outer bound");
}

#[test]
fn xor_outer_bound_uses_parity_graph() {
    let spec = fixture("ex2").unwrap();
    let t = outer_bound_region(&spec, &quick()).unwrap().triples[0].triple;
    let h = binary_entropy(0.75);
    let p = spec.joint();
    assert!((t.a - p.conditional_entropy(r(&[Role::X]), r(&[Role::Y])).unwrap()).abs() < 1e-6);
    assert!((t.b - p.conditional_entropy(r(&[Role::Y]), r(&[Role::X])).unwrap()).abs() < 1e-6);
    // the only admissible message is the parity itself
    assert!((t.s - h).abs() < 1e-6, "{t:?}");
}

#[test]
fn independent_sources_region_needs_independence() {
    let res = independent_sources_region(&fixture("ex2").unwrap(), &quick());
    assert!(matches!(res, Err(Error::Hypothesis(_))));
}

#[test]
fn ex3_rectangle_matches_outer_bound() {
    let spec = fixture("ex3").unwrap();
    let ind = independent_sources_region(&spec, &quick()).unwrap();
    let outer = outer_bound_region(&spec, &quick()).unwrap();
    let (i, o) = (ind.triples[0].triple, outer.triples[0].triple);
    assert!((i.a - o.a).abs() < 2e-2 && (i.b - o.b).abs() < 2e-2);
    assert!((i.s - i.a - i.b).abs() < 1e-12);
    assert_eq!(ind.kind, "rate region");
}

#[test]
fn constant_second_source_leaves_one_threshold() {
    // Y takes one value: the rectangle collapses to R_X ≥ H_G(X|Z)
    let spec = xy_problem(3, 1, vec![0.2, 0.3, 0.5], vec![0, 1, 1], 2);
    let ind = independent_sources_region(&spec, &quick()).unwrap();
    let t = ind.triples[0].triple;
    let hxz = conditional_graph_entropy(&spec, Role::X, r(&[Role::Z]), FamilyMode::Maximal, &quick().solver).unwrap();
    assert!((t.a - hxz.value).abs() < 1e-9);
    assert!(t.b.abs() < 1e-12);
}

#[test]
fn partially_invertible_hypothesis_is_checked() {
    let spec = fixture("ex3").unwrap();
    assert!(matches!(
        partially_invertible_region(&spec, Role::X, None, &quick()),
        Err(Error::Hypothesis(_))
    ));
    assert!(matches!(
        partially_invertible_region(&fixture("inv").unwrap(), Role::Z, None, &quick()),
        Err(Error::Role(_))
    ));
}

#[test]
fn invertible_function_gives_slepian_wolf_from_both_sides() {
    let spec = fixture("inv").unwrap();
    let sw = slepian_wolf_region(&spec).unwrap();
    for wrt in [Role::X, Role::Y] {
        let pi = partially_invertible_region(&spec, wrt, None, &RegionConfig::default()).unwrap();
        let cmp = region_compare(&pi, &sw, 257, 1e-6);
        assert!(cmp.a_subset_b && cmp.b_subset_a, "{wrt}: {}", cmp.max_gap);
        assert_eq!(pi.kind, "rate region");
    }
}

#[test]
fn identity_message_corner_lies_in_partially_invertible_region() {
    let spec = fixture("ex4").unwrap();
    let pi = partially_invertible_region(&spec, Role::X, None, &quick()).unwrap();
    let p = spec.joint();
    let hx_yz = p.conditional_entropy(r(&[Role::X]), r(&[Role::Y, Role::Z])).unwrap();
    let hxy = p.conditional_entropy(r(&[Role::X, Role::Y]), r(&[Role::Z])).unwrap();
    assert!(pi.contains(hx_yz, hxy - hx_yz, 1e-6));
    // no message can tell the decoder more about X than Y does
    assert!(pi.support(1.0, 0.0) >= hx_yz - 1e-9);
}

#[test]
fn ex4_partially_invertible_matches_multiset_inner_bound() {
    let spec = fixture("ex4").unwrap();
    let cfg = RegionConfig::default();
    let pi = partially_invertible_region(&spec, Role::X, None, &cfg).unwrap();
    let inner = inner_bound_region(&spec, InnerMode::Multiset { kv: None, kw: None }, &cfg).unwrap();
    let cmp = region_compare(&pi, &inner, 257, 1e-3);
    assert!(cmp.a_subset_b && cmp.b_subset_a, "gap {}", cmp.max_gap);
}

#[test]
fn ex4_family_modes_nest() {
    let spec = fixture("ex4").unwrap();
    let cfg = RegionConfig::default();
    let max = inner_bound_region(&spec, InnerMode::Maximal, &cfg).unwrap();
    let all = inner_bound_region(&spec, InnerMode::All, &cfg).unwrap();
    let ms = inner_bound_region(&spec, InnerMode::Multiset { kv: None, kw: None }, &cfg).unwrap();
    let c1 = region_compare(&max, &all, 257, 1e-6);
    assert!(c1.a_subset_b && !c1.b_subset_a, "{c1:?}");
    let c2 = region_compare(&all, &ms, 257, 1e-6);
    assert!(c2.a_subset_b, "{c2:?}");
    for region in [&max, &all, &ms] {
        assert_polyline_monotone(region);
        assert!(region.triples.iter().all(|t| t.witness.is_some()));
        assert_eq!(region.samples.len(), cfg.lambdas.len());
    }
}

#[test]
fn inner_regions_stay_inside_outer_bound() {
    for name in ["ex2", "ex3", "ex4", "inv", "const"] {
        let spec = fixture(name).unwrap();
        let inner = inner_bound_region(&spec, InnerMode::Maximal, &quick()).unwrap();
        let outer = outer_bound_region(&spec, &quick()).unwrap();
        let cmp = region_compare(&inner, &outer, 129, 1e-3);
        assert!(cmp.a_subset_b, "{name}: {cmp:?}");
    }
}

#[test]
fn identical_regions_compare_equal() {
    let sw = slepian_wolf_region(&fixture("ex4").unwrap()).unwrap();
    let cmp = region_compare(&sw, &sw, 33, 0.0);
    assert!(cmp.a_subset_b && cmp.b_subset_a);
    assert_eq!(cmp.max_gap, 0.0);
}

#[test]
fn multiset_search_on_ex1_exceeds_candidate_budget() {
    let res = inner_bound_region(&fixture("ex1").unwrap(), InnerMode::Multiset { kv: None, kw: None }, &quick());
    assert!(matches!(res, Err(Error::BudgetExceeded { .. })));
}

#[test]
fn lambda_grid_is_validated() {
    let spec = fixture("ex2").unwrap();
    let cfg = RegionConfig { lambdas: vec![1.0, -2.0], ..RegionConfig::default() };
    assert!(matches!(inner_bound_region(&spec, InnerMode::All, &cfg), Err(Error::Schema(_))));
    let grid = default_lambdas();
    assert_eq!(grid.len(), 65);
    assert!((grid[0] - 1.0 / 32.0).abs() < 1e-12 && (grid[64] - 32.0).abs() < 1e-12);
    assert!(grid.contains(&1.0));
}

#[test]
fn inner_mode_round_trips() {
    for s in ["maximal", "all", "multiset:default,default", "multiset:4,5"] {
        assert_eq!(s.parse::<InnerMode>().unwrap().to_string(), s);
    }
    assert_eq!("multiset:3".parse::<InnerMode>().unwrap(), InnerMode::Multiset { kv: Some(3), kw: Some(3) });
}

#[test]
fn staircase_of_single_triple() {
    let t = fncomp::entropy::RateTriple { a: 1.0, b: 0.5, s: 2.0 };
    assert_eq!(staircase(&[t]), vec![[1.0, 1.0], [1.5, 0.5]]);
}
