#![allow(dead_code)]

use std::collections::BTreeSet;

use fncomp::graphs::VertexSet;
use fncomp::model::ProblemSpec;

pub type Family = BTreeSet<BTreeSet<String>>;

/// Order-free view of a family given as label lists.
pub fn family(sets: &[&[&str]]) -> Family {
    sets.iter().map(|s| s.iter().map(|l| l.to_string()).collect()).collect()
}

pub fn family_of(labels: Vec<Vec<String>>) -> Family {
    labels.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Masks from label lists over `alphabet`.
pub fn masks(alphabet: &[String], sets: &[&[&str]]) -> Vec<VertexSet> {
    sets.iter()
        .map(|s| s.iter().map(|l| alphabet.iter().position(|a| a == l).expect("known label")).collect())
        .collect()
}

pub fn labels<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|i| i.to_string()).collect()
}

/// Constant-Z problem from a row-major p(x,y) table and f(x,y) indices.
pub fn xy_problem(nx: usize, ny: usize, p: Vec<f64>, f: Vec<usize>, nf: usize) -> ProblemSpec {
    ProblemSpec::from_tables(labels(0..nx), labels(0..ny), labels(["*"]), labels(0..nf), p, f).expect("valid tables")
}

pub fn edge_set(edges: &[[String; 2]]) -> BTreeSet<(String, String)> {
    edges
        .iter()
        .map(|[a, b]| if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) })
        .collect()
}
