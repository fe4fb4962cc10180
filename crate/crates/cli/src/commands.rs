use std::str::FromStr;

use fncomp::entropy::{
    conditional_graph_entropy, grid_oracle, joint_graph_entropy_with_cap, FamilyMode, OracleObjective, SolverConfig,
    MAX_CANDIDATES,
};
use fncomp::fixtures::{fixture, FIXTURE_NAMES};
use fncomp::graphs::{
    build_char_graph_with_cap, build_joint_char_graph_with_cap, generalized_graph_from_masks, lemma1_hypotheses,
    VertexSet, DEFAULT_VERTEX_CAP,
};
use fncomp::laws::law_suite;
use fncomp::model::{check_conditional_independence, check_partially_invertible, load_problem_file, ProblemSpec, Role, RoleSet};
use fncomp::regions::{
    confirm_strict_inclusion, default_lambdas, independent_sources_region, inner_bound_region, korner_marton_region,
    outer_bound_region, partially_invertible_region, region_compare, slepian_wolf_region, InnerMode, RateRegion,
    RegionConfig,
};
use fncomp::sets::{independent_sets, maximal_independent_sets, multisets, Reductions};
use fncomp::{Error, Result};
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, Command, GlobalArgs, Source};
use crate::output::{Meta, Report};

struct Problem {
    spec: ProblemSpec,
    name: String,
}

fn load(source: &Source) -> Result<Problem> {
    match (&source.problem, &source.fixture) {
        (Some(path), _) => Ok(Problem {
            spec: load_problem_file(path)?,
            name: path.display().to_string(),
        }),
        (None, Some(name)) => Ok(Problem {
            spec: fixture(name)?,
            name: format!("fixture:{name}"),
        }),
        (None, None) => Err(Error::Schema("give --problem or --fixture".into())),
    }
}

fn vertex_cap(global: &GlobalArgs) -> usize {
    global.vertex_cap.unwrap_or(DEFAULT_VERTEX_CAP)
}

fn solver_config(global: &GlobalArgs) -> SolverConfig {
    let mut c = SolverConfig {
        seed: global.seed,
        ..SolverConfig::default()
    };
    if let Some(r) = global.restarts {
        c.restarts = r;
    }
    c
}

pub fn parse_lambdas(spec: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| Error::Schema(format!("bad --lambdas '{spec}': {why}"));
    let spec = spec.trim();
    if spec == "default" {
        return Ok(default_lambdas());
    }
    if let Some(rest) = spec.strip_prefix("log:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [lo, hi, n] = parts.as_slice() else {
            return Err(bad("expected log:LO:HI:N"));
        };
        let lo: f64 = lo.parse().map_err(|_| bad("LO is not a number"))?;
        let hi: f64 = hi.parse().map_err(|_| bad("HI is not a number"))?;
        let n: usize = n.parse().map_err(|_| bad("N is not a count"))?;
        if !(lo > 0.0 && hi >= lo && n >= 1) {
            return Err(bad("need 0 < LO ≤ HI and N ≥ 1"));
        }
        if n == 1 {
            return Ok(vec![lo]);
        }
        let step = (hi / lo).ln() / (n - 1) as f64;
        return Ok((0..n).map(|i| lo * (step * i as f64).exp()).collect());
    }
    let mut out = Vec::new();
    for part in spec.split(',') {
        let l: f64 = part.trim().parse().map_err(|_| bad("not a number list"))?;
        if !(l > 0.0 && l.is_finite()) {
            return Err(bad("λ values must be positive"));
        }
        out.push(l);
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    Ok(out)
}

fn region_config(global: &GlobalArgs) -> Result<RegionConfig> {
    Ok(RegionConfig {
        lambdas: match &global.lambdas {
            Some(s) => parse_lambdas(s)?,
            None => default_lambdas(),
        },
        solver: solver_config(global),
        vertex_cap: vertex_cap(global),
        ..RegionConfig::default()
    })
}

fn meta(global: &GlobalArgs, command: &str, problem: &str, solver: Option<&SolverConfig>, lambdas: Option<&[f64]>) -> Meta {
    Meta {
        tool: "fncomp",
        version: env!("CARGO_PKG_VERSION"),
        command: command.into(),
        problem: problem.into(),
        seed: global.seed,
        restarts: solver.map(|s| s.restarts),
        max_iter: solver.map(|s| s.max_iter),
        tol: solver.map(|s| s.tol),
        lambdas: lambdas.map(|l| l.to_vec()),
        vertex_cap: vertex_cap(global),
    }
}

fn source_role(s: &str) -> Result<Role> {
    match Role::from_str(s)? {
        r @ (Role::X | Role::Y) => Ok(r),
        r => Err(Error::Role(format!("target must be X or Y, got {r}"))),
    }
}

/// Conditioning set; defaults to the other source and Z.
fn given_roles(target: Role, given: &Option<String>) -> Result<RoleSet> {
    match given {
        Some(g) => RoleSet::parse(g),
        None => Ok(RoleSet::of(&[if target == Role::X { Role::Y } else { Role::X }, Role::Z])),
    }
}

/// `0,1;2` → one mask per `;`-separated group of labels.
fn parse_masks(spec: &ProblemSpec, side: Role, text: &str) -> Result<Vec<VertexSet>> {
    let labels = spec.labels(side)?;
    text.split(';')
        .map(|group| {
            group
                .split(',')
                .map(|l| {
                    let l = l.trim();
                    labels
                        .iter()
                        .position(|s| s == l)
                        .ok_or_else(|| Error::MembershipViolation(format!("'{l}' is not a symbol of {side}")))
                })
                .collect::<Result<VertexSet>>()
        })
        .collect()
}

fn converged(region: RateRegion) -> Result<RateRegion> {
    if region.meta.converged {
        Ok(region)
    } else {
        Err(Error::NonConvergence {
            iterations: 0,
            best: f64::NAN,
        })
    }
}

/// `inner[:MODE]`, `outer`, `independent`, `pi[:X|Y[:K]]`, `sw`, `km`.
fn region_by_name(spec: &ProblemSpec, name: &str, config: &RegionConfig) -> Result<(String, RateRegion)> {
    let (head, rest) = name.split_once(':').unwrap_or((name, ""));
    let region = match head {
        "inner" => {
            let mode = if rest.is_empty() { InnerMode::All } else { rest.parse()? };
            inner_bound_region(spec, mode, config)?
        }
        "outer" => outer_bound_region(spec, config)?,
        "independent" => independent_sources_region(spec, config)?,
        "pi" => {
            let (wrt, k) = rest.split_once(':').unwrap_or((rest, ""));
            let wrt = if wrt.is_empty() { Role::X } else { source_role(wrt)? };
            let k = if k.is_empty() {
                None
            } else {
                Some(k.parse().map_err(|_| Error::Schema(format!("bad multiset count in '{name}'")))?)
            };
            partially_invertible_region(spec, wrt, k, config)?
        }
        "sw" => slepian_wolf_region(spec)?,
        "km" => korner_marton_region(spec)?,
        other => return Err(Error::Schema(format!("unknown region kind '{other}'"))),
    };
    let label = if head == "inner" { region.meta.mode.clone() } else { name.to_string() };
    Ok((label, converged(region)?))
}

#[derive(Serialize)]
struct Validation<'a> {
    description: Option<&'a str>,
    alphabets: serde_json::Value,
    support: usize,
    warnings: &'a [String],
    conditionally_independent: bool,
    partially_invertible_x: bool,
    partially_invertible_y: bool,
    lemma1_hypotheses: fncomp::graphs::Lemma1Hypotheses,
}

pub fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Validate(src) => {
            let p = load(src)?;
            let s = &p.spec;
            let support = (0..s.nx())
                .flat_map(|x| (0..s.ny()).flat_map(move |y| (0..s.nz()).map(move |z| (x, y, z))))
                .filter(|(x, y, z)| s.p(*x, *y, *z) > 0.0)
                .count();
            let body = Validation {
                description: s.description(),
                alphabets: json!({ "X": s.x_labels(), "Y": s.y_labels(), "Z": s.z_labels(), "F": s.f_labels() }),
                support,
                warnings: s.warnings(),
                conditionally_independent: check_conditional_independence(s),
                partially_invertible_x: check_partially_invertible(s, Role::X)?,
                partially_invertible_y: check_partially_invertible(s, Role::Y)?,
                lemma1_hypotheses: lemma1_hypotheses(s)?,
            };
            Report::new(meta(g, "validate", &p.name, None, None), &body)
        }
        Command::Graph(a) => {
            let p = load(&a.source)?;
            let graph = if a.joint {
                build_joint_char_graph_with_cap(&p.spec, vertex_cap(g))?
            } else {
                let target = source_role(&a.target)?;
                match &a.masks {
                    Some(m) => generalized_graph_from_masks(&p.spec, target, &parse_masks(&p.spec, target, m)?)?,
                    None => build_char_graph_with_cap(&p.spec, target, given_roles(target, &a.given)?, vertex_cap(g))?,
                }
            };
            Report::new(meta(g, "graph", &p.name, None, None), &graph.dump())
        }
        Command::Sets(a) => {
            let p = load(&a.source)?;
            let target = source_role(&a.target)?;
            let graph = build_char_graph_with_cap(&p.spec, target, given_roles(target, &a.given)?, vertex_cap(g))?;
            let gamma = independent_sets(&graph)?;
            let maximal = maximal_independent_sets(&graph)?;
            let mut body = json!({
                "graph": graph.provenance(),
                "vertices": graph.labels(),
            });
            if !a.maximal {
                body["independent_sets"] = json!(gamma.label_sets());
            }
            if !a.all {
                body["maximal_independent_sets"] = json!(maximal.label_sets());
            }
            if let Some(k) = a.multiset {
                let reductions = parse_reductions(&a.reductions)?;
                let mut families = Vec::new();
                for m in multisets(&gamma, k, &VertexSet::full(graph.n()), reductions) {
                    families.push(m.label_sets());
                    if families.len() > MAX_CANDIDATES {
                        return Err(Error::BudgetExceeded {
                            what: format!("multisets of count {k}"),
                            budget: MAX_CANDIDATES,
                        });
                    }
                }
                body["multisets"] = json!({ "k": k, "reductions": reductions, "count": families.len(), "families": families });
            }
            Report::new(meta(g, "sets", &p.name, None, None), &body)
        }
        Command::Entropy(a) => {
            let p = load(&a.source)?;
            let config = solver_config(g);
            let mode: FamilyMode = a.mode.parse()?;
            let report = if a.joint {
                joint_graph_entropy_with_cap(&p.spec, mode, &config, vertex_cap(g))?
            } else {
                let target = source_role(&a.target)?;
                conditional_graph_entropy(&p.spec, target, given_roles(target, &a.given)?, mode, &config)?
            }
            .require_converged()?;
            let mut body = serde_json::to_value(&report).map_err(|e| Error::Schema(e.to_string()))?;
            if let Some(res) = a.oracle {
                let target = source_role(&a.target)?;
                let given = given_roles(target, &a.given)?;
                let graph = build_char_graph_with_cap(&p.spec, target, given, vertex_cap(g))?;
                let masks = maximal_independent_sets(&graph)?.sets().to_vec();
                let oracle = grid_oracle(&p.spec, OracleObjective::Entropy { target, given }, &masks, &[], res)?;
                body["oracle"] = serde_json::to_value(&oracle).map_err(|e| Error::Schema(e.to_string()))?;
            }
            Report::new(meta(g, "entropy", &p.name, Some(&config), None), &body)
        }
        Command::Inner(a) => {
            let p = load(&a.source)?;
            let config = region_config(g)?;
            let (label, region) = region_by_name(&p.spec, &format!("inner:{}", a.mode), &config)?;
            Ok(Report::new(meta(g, "inner", &p.name, Some(&config.solver), Some(&config.lambdas)), &region)?
                .with_regions(vec![(label, region)]))
        }
        Command::Outer(src) => {
            let p = load(src)?;
            let config = region_config(g)?;
            let (label, region) = region_by_name(&p.spec, "outer", &config)?;
            Ok(Report::new(meta(g, "outer", &p.name, Some(&config.solver), None), &region)?
                .with_regions(vec![(label, region)]))
        }
        Command::Region(a) => {
            let p = load(&a.source)?;
            let config = region_config(g)?;
            let k = &a.kind;
            let name = if k.inner {
                format!("inner:{}", a.mode)
            } else if k.outer {
                "outer".into()
            } else if k.independent {
                "independent".into()
            } else if k.pi {
                match a.k {
                    Some(n) => format!("pi:{}:{n}", a.wrt),
                    None => format!("pi:{}", a.wrt),
                }
            } else if k.sw {
                "sw".into()
            } else {
                "km".into()
            };
            let (label, region) = region_by_name(&p.spec, &name, &config)?;
            let swept = k.inner || k.pi;
            let m = meta(g, "region", &p.name, Some(&config.solver), swept.then_some(config.lambdas.as_slice()));
            Ok(Report::new(m, &region)?.with_regions(vec![(label, region)]))
        }
        Command::Compare(a) => {
            let p = load(&a.source)?;
            let config = region_config(g)?;
            let (la, ra) = region_by_name(&p.spec, &a.a, &config)?;
            let (lb, rb) = region_by_name(&p.spec, &a.b, &config)?;
            let report = region_compare(&ra, &rb, a.directions, a.tol);
            let strictness = if a.confirm {
                Some(confirm_strict_inclusion(
                    |c| Ok((region_by_name(&p.spec, &a.a, c)?.1, region_by_name(&p.spec, &a.b, c)?.1)),
                    &config,
                    a.directions,
                    a.tol,
                )?)
            } else {
                None
            };
            let body = json!({
                "a": a.a,
                "b": a.b,
                "comparison": report,
                "strictness": strictness,
                "regions": [ra, rb],
            });
            Ok(Report::new(meta(g, "compare", &p.name, Some(&config.solver), Some(&config.lambdas)), &body)?
                .with_regions(vec![(la, ra), (lb, rb)]))
        }
        Command::Laws(a) => {
            let p = load(&a.source)?;
            let suite = law_suite(&p.spec, g.seed, a.seeds, a.subfamily_budget)?;
            let failed = !suite.passed;
            let mut report = Report::new(meta(g, "laws", &p.name, None, None), &suite)?;
            if failed {
                report.failure = Some(Error::EquivalenceViolation("some law checks failed; see the report".into()));
            }
            Ok(report)
        }
        Command::Fixture(a) => {
            if a.list {
                return Report::bare(&FIXTURE_NAMES);
            }
            let name = a
                .name
                .as_deref()
                .ok_or_else(|| Error::Schema("give a fixture name or --list".into()))?;
            Report::bare(&fixture(name)?.to_document())
        }
    }
}

fn parse_reductions(text: &str) -> Result<Reductions> {
    let mut r = Reductions::none();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "none" => {}
            "cover" => r.cover = true,
            "merge" => r.merge_singletons = true,
            "prune" => r.prune_dominated = true,
            other => return Err(Error::Schema(format!("unknown reduction '{other}'"))),
        }
    }
    Ok(r)
}
