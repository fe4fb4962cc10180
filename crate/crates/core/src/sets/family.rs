use std::fmt;

use serde::Serialize;

use crate::graphs::VertexSet;

fn fmt_set(labels: &[String], s: &VertexSet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let names: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
    write!(f, "{{{}}}", names.join(","))
}

fn fmt_list<'a>(labels: &[String], sets: impl Iterator<Item = &'a VertexSet>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("{ ")?;
    for (k, s) in sets.enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        fmt_set(labels, s, f)?;
    }
    f.write_str(" }")
}

/// A duplicate-free family of vertex subsets in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    labels: Vec<String>,
    sets: Vec<VertexSet>,
}

impl SetFamily {
    /// Sorts and deduplicates `sets`; `labels` names the vertices.
    pub fn new(labels: Vec<String>, mut sets: Vec<VertexSet>) -> Self {
        sets.sort();
        sets.dedup();
        SetFamily { labels, sets }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.sets.iter()
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.sets.binary_search(s).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> VertexSet {
        self.sets.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
    }

    /// Members as lists of vertex labels.
    pub fn label_sets(&self) -> Vec<Vec<String>> {
        self.sets.iter().map(|s| s.iter().map(|i| self.labels[i].clone()).collect()).collect()
    }

    /// The members not strictly contained in another member.
    pub fn undominated(&self) -> SetFamily {
        let sets = self
            .sets
            .iter()
            .filter(|s| !self.sets.iter().any(|t| s.is_proper_subset(t)))
            .cloned()
            .collect();
        SetFamily::new(self.labels.clone(), sets)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(&self.labels, self.sets.iter(), f)
    }
}

/// A multiset of vertex subsets: canonical distinct entries with
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiFamily {
    labels: Vec<String>,
    entries: Vec<(VertexSet, usize)>,
}

impl MultiFamily {
    /// Collects `sets` (repetitions allowed) into canonical form.
    pub fn from_sets(labels: Vec<String>, mut sets: Vec<VertexSet>) -> Self {
        sets.sort();
        let mut entries: Vec<(VertexSet, usize)> = Vec::new();
        for s in sets {
            match entries.last_mut() {
                Some((last, m)) if *last == s => *m += 1,
                _ => entries.push((s, 1)),
            }
        }
        MultiFamily { labels, entries }
    }

    /// Every member of `family` once.
    pub fn from_family(family: &SetFamily) -> Self {
        MultiFamily::from_sets(family.labels.clone(), family.sets.clone())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[(VertexSet, usize)] {
        &self.entries
    }

    /// Σ multiplicities.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// One set per unit of multiplicity, in canonical order.
    pub fn expand(&self) -> Vec<VertexSet> {
        self.entries
            .iter()
            .flat_map(|(s, m)| std::iter::repeat_n(s.clone(), *m))
            .collect()
    }

    pub fn distinct(&self) -> Vec<VertexSet> {
        self.entries.iter().map(|(s, _)| s.clone()).collect()
    }

    pub fn support(&self) -> VertexSet {
        self.entries.iter().fold(VertexSet::new(), |acc, (s, _)| acc.union(s))
    }

    pub fn label_sets(&self) -> Vec<Vec<String>> {
        self.expand()
            .iter()
            .map(|s| s.iter().map(|i| self.labels[i].clone()).collect())
            .collect()
    }
}

impl fmt::Display for MultiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(&self.labels, self.expand().iter(), f)
    }
}

/// Serializable form of a family: member sets as label lists.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyDump {
    pub vertices: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

impl From<&SetFamily> for FamilyDump {
    fn from(f: &SetFamily) -> Self {
        FamilyDump {
            vertices: f.labels.clone(),
            sets: f.label_sets(),
        }
    }
}

impl From<&MultiFamily> for FamilyDump {
    fn from(f: &MultiFamily) -> Self {
        FamilyDump {
            vertices: f.labels.clone(),
            sets: f.label_sets(),
        }
    }
}
