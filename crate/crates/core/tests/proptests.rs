mod common;

use common::labels;
use fncomp::entropy::{
    conditional_graph_entropy, coupling, rate_triple, triple_of, Channel, FamilyMode, RateTriple, SolverConfig,
};
use fncomp::graphs::{build_char_graph, generalized_graph_from_masks, CharGraph, VertexSet};
use fncomp::model::{conditional_mutual_information, mutual_information, Pmf, ProblemSpec, Role, RoleSet};
use fncomp::regions::staircase;
use fncomp::sets::{independent_sets, maximal_independent_sets, multisets, support_set, Reductions, SetFamily};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn r(roles: &[Role]) -> RoleSet {
    RoleSet::of(roles)
}

/// Random problem: weights in 0..4 (so some cells vanish), f in 0..3.
fn problem() -> impl Strategy<Value = ProblemSpec> {
    (2usize..=4, 2usize..=4, 1usize..=2)
        .prop_flat_map(|(nx, ny, nz)| {
            let n = nx * ny * nz;
            (
                Just((nx, ny, nz)),
                prop::collection::vec(0u32..4, n),
                prop::collection::vec(0usize..3, n),
            )
        })
        .prop_filter_map("some mass", |((nx, ny, nz), w, f)| {
            let total: u32 = w.iter().sum();
            if total == 0 {
                return None;
            }
            let p = w.iter().map(|v| *v as f64 / total as f64).collect();
            ProblemSpec::from_tables(labels(0..nx), labels(0..ny), labels(0..nz), labels(0..3), p, f).ok()
        })
}

fn graph(max_n: usize) -> impl Strategy<Value = CharGraph> {
    (1usize..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let m = pairs.len();
        prop::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e);
            CharGraph::from_edges(labels(0..n), edges, "random").unwrap()
        })
    })
}

fn random_cover(rng: &mut ChaCha8Rng, fam: &SetFamily, n: usize) -> Vec<VertexSet> {
    use rand::Rng;
    let mut out: Vec<VertexSet> = fam.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
    let covered = out.iter().fold(VertexSet::new(), |a, s| a.union(s));
    out.extend(VertexSet::full(n).difference(&covered).iter().map(VertexSet::singleton));
    out
}

fn admissible_channels(spec: &ProblemSpec, seed: u64) -> (Channel, Channel) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gx = build_char_graph(spec, Role::X, r(&[Role::Y, Role::Z])).unwrap();
    let vm = random_cover(&mut rng, &independent_sets(&gx).unwrap(), spec.nx());
    let gv = generalized_graph_from_masks(spec, Role::X, &vm).unwrap();
    let wm = random_cover(&mut rng, &independent_sets(&gv).unwrap(), spec.ny());
    let v = Channel::random(Role::X, spec.nx(), vm, 1e-3, &mut rng).unwrap();
    let w = Channel::random(Role::Y, spec.ny(), wm, 1e-3, &mut rng).unwrap();
    (v, w)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #[test]
    fn mutual_information_chain_rule(spec in problem()) {
        let p = spec.joint();
        let (x, y, z) = (r(&[Role::X]), r(&[Role::Y]), r(&[Role::Z]));
        let lhs = mutual_information(&p, x, y.union(z)).unwrap();
        let rhs = mutual_information(&p, x, z).unwrap() + conditional_mutual_information(&p, x, y, z).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn generalized_graph_contains_conditional_graph(spec in problem(), seed in any::<u64>()) {
        let (v, _) = admissible_channels(&spec, seed);
        let gy = build_char_graph(&spec, Role::Y, r(&[Role::X, Role::Z])).unwrap();
        let gv = generalized_graph_from_masks(&spec, Role::X, v.masks()).unwrap();
        prop_assert!(gy.edges_subset_of(&gv));
    }

    #[test]
    fn singleton_messages_give_the_conditional_graph(spec in problem()) {
        let singles: Vec<VertexSet> = (0..spec.nx()).map(VertexSet::singleton).collect();
        let gv = generalized_graph_from_masks(&spec, Role::X, &singles).unwrap();
        let gy = build_char_graph(&spec, Role::Y, r(&[Role::X, Role::Z])).unwrap();
        prop_assert_eq!(gv.edges(), gy.edges());
    }

    #[test]
    fn relabelling_x_permutes_the_graph(spec in problem(), shift in 1usize..4) {
        let (nx, ny, nz) = (spec.nx(), spec.ny(), spec.nz());
        let perm: Vec<usize> = (0..nx).map(|i| (i + shift) % nx).collect();
        let mut p = vec![0.0; nx * ny * nz];
        let mut f = vec![0; nx * ny * nz];
        for x in 0..nx {
            for y in 0..ny {
                for z in 0..nz {
                    let i = (perm[x] * ny + y) * nz + z;
                    p[i] = spec.p(x, y, z);
                    f[i] = spec.f(x, y, z);
                }
            }
        }
        let xl: Vec<String> = (0..nx).map(|i| spec.x_labels()[perm.iter().position(|q| *q == i).unwrap()].clone()).collect();
        let moved = ProblemSpec::from_tables(xl, spec.y_labels().to_vec(), spec.z_labels().to_vec(), spec.f_labels().to_vec(), p, f).unwrap();
        let given = r(&[Role::Y, Role::Z]);
        let a = build_char_graph(&spec, Role::X, given).unwrap();
        let b = build_char_graph(&moved, Role::X, given).unwrap();
        let ea = common::edge_set(&a.dump().edges);
        let eb = common::edge_set(&b.dump().edges);
        prop_assert_eq!(ea, eb);
    }

    #[test]
    fn maximal_sets_match_exhaustive_scan(g in graph(12)) {
        let n = g.n();
        let all: Vec<VertexSet> = (1u64..(1 << n)).map(VertexSet::from_bits).filter(|s| g.is_independent(s)).collect();
        let mut want: Vec<VertexSet> = all.iter().filter(|s| !all.iter().any(|t| s.is_proper_subset(t))).cloned().collect();
        want.sort();
        let mut got = maximal_independent_sets(&g).unwrap().sets().to_vec();
        got.sort();
        prop_assert_eq!(&got, &want);
        let fam = independent_sets(&g).unwrap();
        prop_assert_eq!(fam.len(), all.len());
        for s in fam.iter() {
            prop_assert!(g.is_independent(s));
            prop_assert!(got.iter().any(|m| s.is_subset(m)));
        }
    }

    #[test]
    fn unreduced_multiset_count(n in 1usize..=5, k in 1usize..=5) {
        let fam = SetFamily::new(labels(0..n), (0..n).map(VertexSet::singleton).collect());
        let count = multisets(&fam, k, &VertexSet::new(), Reductions::none()).count();
        prop_assert_eq!(count, binomial(n + k - 1, k));
    }

    #[test]
    fn identity_coupling_relabels_to_singletons(weights in prop::collection::vec(1u32..10, 1..6)) {
        let n = weights.len();
        let total: u32 = weights.iter().sum();
        let joint = Pmf::from_fn(vec![Role::V, Role::X], vec![n, n], |i| {
            if i[0] == i[1] { weights[i[1]] as f64 / total as f64 } else { 0.0 }
        }).unwrap();
        let s = support_set(&joint).unwrap();
        prop_assert_eq!(s.subsets(), (0..n).map(VertexSet::singleton).collect::<Vec<_>>());
        prop_assert_eq!(s.entries.iter().map(|e| e.index).collect::<Vec<_>>(), (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn rate_triple_identities(spec in problem(), seed in any::<u64>()) {
        let (v, w) = admissible_channels(&spec, seed);
        let t = rate_triple(&spec, &v, &w).unwrap();
        let joint = coupling(&spec, &v, &w).unwrap();
        let vw = conditional_mutual_information(&joint, r(&[Role::V]), r(&[Role::W]), r(&[Role::Z])).unwrap();
        prop_assert!(t.s >= t.a.max(t.b) - 1e-9);
        prop_assert!((t.s - (t.a + t.b + vw)).abs() < 1e-9);
        let again = triple_of(&joint).unwrap();
        prop_assert_eq!(t, again);
    }

    #[test]
    fn staircase_is_monotone(raw in prop::collection::vec((0.0f64..2.0, 0.0f64..2.0, 0.0f64..2.0), 1..6)) {
        let triples: Vec<RateTriple> = raw.iter().map(|(a, b, e)| RateTriple { a: *a, b: *b, s: a.max(*b) + e }).collect();
        let line = staircase(&triples);
        for w in line.windows(2) {
            prop_assert!(w[1][0] >= w[0][0] - 1e-12);
            prop_assert!(w[1][1] <= w[0][1] + 1e-12);
        }
        for p in &line {
            prop_assert!(triples.iter().any(|t| t.contains(p[0], p[1], 1e-9)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn restarts_agree_and_modes_are_monotone(spec in problem(), seed in any::<u64>()) {
        let given = r(&[Role::Y, Role::Z]);
        let values: Vec<f64> = (0..8)
            .map(|i| {
                let cfg = SolverConfig { restarts: 1, seed: seed.wrapping_add(i), ..SolverConfig::default() };
                conditional_graph_entropy(&spec, Role::X, given, FamilyMode::Maximal, &cfg).unwrap().value
            })
            .collect();
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(hi - lo < 1e-6, "{:?}", values);
        let cfg = SolverConfig::default();
        let max = conditional_graph_entropy(&spec, Role::X, given, FamilyMode::Maximal, &cfg).unwrap().value;
        let all = conditional_graph_entropy(&spec, Role::X, given, FamilyMode::All, &cfg).unwrap().value;
        prop_assert!(all <= max + 1e-6);
        prop_assert!((all - max).abs() < 1e-4);
    }
}
