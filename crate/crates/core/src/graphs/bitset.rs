use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A set of vertex indices. One machine word covers 64 vertices; larger
/// alphabets spill into extra words.
///
/// Storage is normalized (no trailing zero words), so equality and hashing
/// are structural. Sets order by size first, then by their bit pattern read
/// as an integer.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: SmallVec<[u64; 1]>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet::default()
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(i);
        s
    }

    /// The set {0, 1, ..., n-1}.
    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new();
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_bits(bits: u64) -> Self {
        let mut s = VertexSet { words: SmallVec::from_slice(&[bits]) };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if let Some(word) = self.words.get_mut(i / 64) {
            *word &= !(1 << (i % 64));
            self.normalize();
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Lowest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|k| self.words.get(k).copied().unwrap_or(0) | other.words.get(k).copied().unwrap_or(0))
            .collect();
        VertexSet { words }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = VertexSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.normalize();
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = VertexSet {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(k, a)| a & !other.words.get(k).copied().unwrap_or(0))
                .collect(),
        };
        s.normalize();
        s
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(k, a)| a & !other.words.get(k).copied().unwrap_or(0) == 0)
    }

    /// Strict inclusion.
    pub fn is_proper_subset(&self, other: &VertexSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then(self.words.len().cmp(&other.words.len()))
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spills_past_one_word() {
        let s: VertexSet = [3, 64, 130].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(130) && !s.contains(129));
        assert_eq!(s.to_vec(), vec![3, 64, 130]);
        let mut t = s.clone();
        t.remove(130);
        t.remove(64);
        assert_eq!(t, VertexSet::singleton(3));
    }

    #[test]
    fn canonical_order_is_size_then_bits() {
        let mut v: Vec<VertexSet> = vec![
            [2, 3].into_iter().collect(),
            VertexSet::singleton(3),
            [0, 1].into_iter().collect(),
            VertexSet::singleton(0),
            [1, 2].into_iter().collect(),
        ];
        v.sort();
        let out: Vec<Vec<usize>> = v.iter().map(|s| s.to_vec()).collect();
        assert_eq!(out, vec![vec![0], vec![3], vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn set_algebra() {
        let a: VertexSet = [0, 1, 2].into_iter().collect();
        let b: VertexSet = [1, 70].into_iter().collect();
        assert_eq!(a.intersection(&b), VertexSet::singleton(1));
        assert_eq!(a.difference(&b).to_vec(), vec![0, 2]);
        assert_eq!(a.union(&b).len(), 4);
        assert!(VertexSet::singleton(1).is_proper_subset(&a));
        assert!(!a.is_proper_subset(&a));
        assert!(!b.is_subset(&a));
    }
}
