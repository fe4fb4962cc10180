use serde::{Deserialize, Serialize};

use crate::graphs::VertexSet;

use super::{MultiFamily, SetFamily};

/// Pruning rules applied while enumerating multisets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reductions {
    /// Keep only multisets whose union contains the cover alphabet.
    pub cover: bool,
    /// A singleton {x} appears at most once among the weighted values.
    /// Shorter multisets are then padded to the requested count with copies
    /// of their last element, which carry zero weight.
    pub merge_singletons: bool,
    /// Drop family members strictly contained in another member first.
    pub prune_dominated: bool,
}

impl Reductions {
    pub const fn none() -> Self {
        Reductions {
            cover: false,
            merge_singletons: false,
            prune_dominated: false,
        }
    }

    pub const fn all() -> Self {
        Reductions {
            cover: true,
            merge_singletons: true,
            prune_dominated: true,
        }
    }
}

impl Default for Reductions {
    fn default() -> Self {
        Reductions {
            cover: true,
            merge_singletons: true,
            prune_dominated: false,
        }
    }
}

/// Streams multisets of exactly `k` members drawn from `family`.
///
/// Without reductions this is every multiset of size `k`, in lexicographic
/// order of member indices. With `merge_singletons`, each emitted multiset
/// is a shorter one whose last member occurs once, padded to `k`; each
/// padded result appears exactly once.
pub fn multisets(family: &SetFamily, k: usize, cover: &VertexSet, reductions: Reductions) -> Multisets {
    let base = if reductions.prune_dominated {
        family.undominated()
    } else {
        family.clone()
    };
    let min_len = if reductions.merge_singletons { 1 } else { k };
    Multisets {
        singleton: base.sets().iter().map(|s| s.len() == 1).collect(),
        sets: base.sets().to_vec(),
        labels: base.labels().to_vec(),
        cover: reductions.cover.then(|| cover.clone()),
        merge: reductions.merge_singletons,
        k,
        len: min_len,
        idx: Vec::new(),
        started: false,
    }
}

pub struct Multisets {
    sets: Vec<VertexSet>,
    singleton: Vec<bool>,
    labels: Vec<String>,
    cover: Option<VertexSet>,
    merge: bool,
    k: usize,
    len: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Multisets {
    /// Advances `idx` to the next nondecreasing sequence of the current
    /// length, moving on to longer lengths when exhausted.
    fn step(&mut self) -> bool {
        let n = self.sets.len();
        if n == 0 || self.k == 0 {
            return false;
        }
        if !self.started {
            self.started = true;
            self.idx = vec![0; self.len];
            return self.len <= self.k;
        }
        let mut i = self.idx.len();
        while i > 0 {
            i -= 1;
            if self.idx[i] + 1 < n {
                let v = self.idx[i] + 1;
                for slot in &mut self.idx[i..] {
                    *slot = v;
                }
                return true;
            }
        }
        self.len += 1;
        if self.len > self.k {
            return false;
        }
        self.idx = vec![0; self.len];
        true
    }

    fn admissible(&self) -> bool {
        if self.merge {
            let repeated_singleton = self
                .idx
                .windows(2)
                .any(|w| w[0] == w[1] && self.singleton[w[0]]);
            if repeated_singleton {
                return false;
            }
            let m = self.idx.len();
            if m >= 2 && self.idx[m - 1] == self.idx[m - 2] {
                return false;
            }
        }
        match &self.cover {
            Some(c) => {
                let u = self.idx.iter().fold(VertexSet::new(), |acc, i| acc.union(&self.sets[*i]));
                c.is_subset(&u)
            }
            None => true,
        }
    }
}

impl Iterator for Multisets {
    type Item = MultiFamily;

    fn next(&mut self) -> Option<MultiFamily> {
        while self.step() {
            if self.admissible() {
                let mut members: Vec<VertexSet> = self.idx.iter().map(|i| self.sets[*i].clone()).collect();
                let last = members.last().expect("nonempty").clone();
                members.resize(self.k, last);
                return Some(MultiFamily::from_sets(self.labels.clone(), members));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(labels: &[&str], sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(
            labels.iter().map(|s| s.to_string()).collect(),
            sets.iter().map(|s| s.iter().copied().collect()).collect(),
        )
    }

    #[test]
    fn reduced_enumeration_keeps_one_multiset() {
        let f = fam(&["0", "1", "2"], &[&[0], &[1], &[2], &[0, 2]]);
        let out: Vec<String> = multisets(&f, 4, &VertexSet::full(3), Reductions::all())
            .map(|m| m.to_string())
            .collect();
        assert_eq!(out, vec!["{ {1},{0,2},{0,2},{0,2} }"]);
    }

    #[test]
    fn single_member_repeats() {
        let f = fam(&["a"], &[&[0]]);
        let out: Vec<String> = multisets(&f, 2, &VertexSet::full(1), Reductions::default())
            .map(|m| m.to_string())
            .collect();
        assert_eq!(out, vec!["{ {a},{a} }"]);
    }

    #[test]
    fn uncoverable_alphabet_gives_nothing() {
        let f = fam(&["a", "b"], &[&[0]]);
        assert_eq!(multisets(&f, 3, &VertexSet::full(2), Reductions::default()).count(), 0);
    }

    #[test]
    fn unreduced_count_is_the_multiset_coefficient() {
        let f = fam(&["a", "b", "c", "d"], &[&[0], &[1], &[2], &[3]]);
        // C(4+3-1, 3) = 20
        assert_eq!(multisets(&f, 3, &VertexSet::new(), Reductions::none()).count(), 20);
    }

    #[test]
    fn every_output_has_total_k() {
        let f = fam(&["0", "1", "2"], &[&[0], &[1], &[2], &[0, 2]]);
        for m in multisets(&f, 4, &VertexSet::full(3), Reductions::default()) {
            assert_eq!(m.total(), 4);
        }
    }
}
