//! Conditional and generalized characteristic graphs.

mod bitset;
mod build;
mod lemma;

pub use bitset::VertexSet;
pub use build::{
    build_char_graph, build_char_graph_with_cap, build_generalized_graph, build_joint_char_graph,
    build_joint_char_graph_with_cap, generalized_graph_from_masks,
};
pub use lemma::{lemma1_hypotheses, verify_lemma1_conclusion, Lemma1Candidate, Lemma1Hypotheses, Lemma1Report};

use serde::Serialize;

/// Default vertex limit: one adjacency word per vertex.
pub const DEFAULT_VERTEX_CAP: usize = 64;

/// An undirected, loop-free graph on a labelled vertex alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharGraph {
    labels: Vec<String>,
    adj: Vec<VertexSet>,
    provenance: String,
    vertex_cap: usize,
}

/// Serializable view of a graph.
#[derive(Debug, Clone, Serialize)]
pub struct GraphDump {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub provenance: String,
}

impl CharGraph {
    /// Builds a graph from an edge list. Self-loops are rejected.
    pub fn from_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        provenance: impl Into<String>,
    ) -> crate::Result<Self> {
        let n = labels.len();
        let mut g = CharGraph {
            labels,
            adj: vec![VertexSet::new(); n],
            provenance: provenance.into(),
            vertex_cap: DEFAULT_VERTEX_CAP.max(n),
        };
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(crate::Error::Schema(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if a == b {
                return Err(crate::Error::Schema(format!("self-loop at vertex {a}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub(crate) fn empty(labels: Vec<String>, provenance: String, vertex_cap: usize) -> Self {
        let n = labels.len();
        CharGraph {
            labels,
            adj: vec![VertexSet::new(); n],
            provenance,
            vertex_cap,
        }
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn vertex_cap(&self) -> usize {
        self.vertex_cap
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Edges as (smaller, larger) index pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| self.adj[a].iter().filter(move |b| *b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// True iff no two members of `set` are adjacent.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| !self.adj[v].intersects(set))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n() * self.n().saturating_sub(1)
    }

    /// E(self) ⊆ E(other), on the same vertex alphabet.
    pub fn edges_subset_of(&self, other: &CharGraph) -> bool {
        self.n() == other.n() && self.adj.iter().zip(&other.adj).all(|(a, b)| a.is_subset(b))
    }

    /// Edges of `self` missing from `other`.
    pub fn edges_not_in(&self, other: &CharGraph) -> Vec<(usize, usize)> {
        self.edges().into_iter().filter(|(a, b)| !other.has_edge(*a, *b)).collect()
    }

    pub fn dump(&self) -> GraphDump {
        GraphDump {
            vertices: self.labels.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(a, b)| [self.labels[a].clone(), self.labels[b].clone()])
                .collect(),
            provenance: self.provenance.clone(),
        }
    }
}
