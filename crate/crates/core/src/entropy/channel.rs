use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::VertexSet;
use crate::model::Role;

/// A conditional pmf p(m|s) from a source alphabet onto message values,
/// each message value carrying a mask of the source symbols it may follow.
///
/// Rows (one per source symbol) sum to one; entries outside the mask are
/// exactly zero; every source symbol lies in some mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    source: Role,
    n_source: usize,
    masks: Vec<VertexSet>,
    q: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChannelDump {
    pub source: String,
    /// Mask of each message value as source-symbol indices.
    pub masks: Vec<Vec<usize>>,
    /// Row-major p(m|s), one row per source symbol.
    pub rows: Vec<Vec<f64>>,
}

fn check_masks(n_source: usize, masks: &[VertexSet]) -> Result<()> {
    if masks.is_empty() {
        return Err(Error::Mask("channel has no message values".into()));
    }
    let all = VertexSet::full(n_source);
    let mut covered = VertexSet::new();
    for (m, mask) in masks.iter().enumerate() {
        if !mask.is_subset(&all) {
            return Err(Error::Mask(format!("mask {m} names symbols outside the source alphabet")));
        }
        covered = covered.union(mask);
    }
    if covered != all {
        return Err(Error::Mask(format!(
            "source symbols {:?} lie in no mask",
            all.difference(&covered).to_vec()
        )));
    }
    Ok(())
}

impl Channel {
    /// Validates `q` (row-major, `n_source` rows of `masks.len()` entries).
    pub fn new(source: Role, n_source: usize, masks: Vec<VertexSet>, q: Vec<f64>) -> Result<Self> {
        check_masks(n_source, &masks)?;
        let nm = masks.len();
        if q.len() != n_source * nm {
            return Err(Error::Mask(format!("expected {} channel entries, got {}", n_source * nm, q.len())));
        }
        for s in 0..n_source {
            let row = &q[s * nm..(s + 1) * nm];
            for (m, &w) in row.iter().enumerate() {
                if !(w >= 0.0) || !w.is_finite() {
                    return Err(Error::Mask(format!("invalid weight {w} at ({s}, {m})")));
                }
                if w != 0.0 && !masks[m].contains(s) {
                    return Err(Error::Mask(format!("weight on masked-out entry ({s}, {m})")));
                }
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::Mask(format!("row {s} sums to {sum}")));
            }
        }
        Ok(Channel {
            source,
            n_source,
            masks,
            q,
        })
    }

    /// Equal weight on every allowed message value.
    pub fn uniform(source: Role, n_source: usize, masks: Vec<VertexSet>) -> Result<Self> {
        check_masks(n_source, &masks)?;
        let nm = masks.len();
        let mut q = vec![0.0; n_source * nm];
        for s in 0..n_source {
            let k = masks.iter().filter(|m| m.contains(s)).count() as f64;
            for (m, mask) in masks.iter().enumerate() {
                if mask.contains(s) {
                    q[s * nm + m] = 1.0 / k;
                }
            }
        }
        Ok(Channel {
            source,
            n_source,
            masks,
            q,
        })
    }

    /// The message equals the source symbol.
    pub fn identity(source: Role, n_source: usize) -> Self {
        let masks = (0..n_source).map(VertexSet::singleton).collect();
        let mut q = vec![0.0; n_source * n_source];
        for s in 0..n_source {
            q[s * n_source + s] = 1.0;
        }
        Channel {
            source,
            n_source,
            masks,
            q,
        }
    }

    /// Rows drawn from a flat Dirichlet over each row's allowed entries,
    /// floored at `floor` before renormalizing.
    pub fn random<R: Rng + ?Sized>(source: Role, n_source: usize, masks: Vec<VertexSet>, floor: f64, rng: &mut R) -> Result<Self> {
        check_masks(n_source, &masks)?;
        let gamma = Gamma::<f64>::new(1.0, 1.0).expect("valid shape");
        let nm = masks.len();
        let mut q = vec![0.0; n_source * nm];
        for s in 0..n_source {
            let row = &mut q[s * nm..(s + 1) * nm];
            for (m, mask) in masks.iter().enumerate() {
                if mask.contains(s) {
                    row[m] = gamma.sample(rng).max(floor);
                }
            }
            let sum: f64 = row.iter().sum();
            row.iter_mut().for_each(|w| *w /= sum);
        }
        Ok(Channel {
            source,
            n_source,
            masks,
            q,
        })
    }

    /// Builds from raw rows, renormalizing each row and zeroing masked-out
    /// entries. Used by the solvers, whose iterates drift by rounding.
    pub(crate) fn from_rows(source: Role, n_source: usize, masks: Vec<VertexSet>, mut q: Vec<f64>) -> Self {
        let nm = masks.len();
        for s in 0..n_source {
            let row = &mut q[s * nm..(s + 1) * nm];
            for (m, w) in row.iter_mut().enumerate() {
                if !masks[m].contains(s) {
                    *w = 0.0;
                }
            }
            let sum: f64 = row.iter().sum();
            row.iter_mut().for_each(|w| *w /= sum);
        }
        Channel {
            source,
            n_source,
            masks,
            q,
        }
    }

    pub fn source(&self) -> Role {
        self.source
    }

    pub fn n_source(&self) -> usize {
        self.n_source
    }

    pub fn n_messages(&self) -> usize {
        self.masks.len()
    }

    pub fn masks(&self) -> &[VertexSet] {
        &self.masks
    }

    #[inline]
    pub fn get(&self, s: usize, m: usize) -> f64 {
        self.q[s * self.masks.len() + m]
    }

    pub fn row(&self, s: usize) -> &[f64] {
        let nm = self.masks.len();
        &self.q[s * nm..(s + 1) * nm]
    }

    pub fn weights(&self) -> &[f64] {
        &self.q
    }

    pub fn dump(&self) -> ChannelDump {
        ChannelDump {
            source: self.source.to_string(),
            masks: self.masks.iter().map(|m| m.to_vec()).collect(),
            rows: (0..self.n_source).map(|s| self.row(s).to_vec()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uncovered_symbol_is_a_mask_error() {
        let masks = vec![VertexSet::singleton(0)];
        assert!(matches!(Channel::uniform(Role::X, 2, masks), Err(Error::Mask(_))));
    }

    #[test]
    fn weight_outside_mask_rejected() {
        let masks = vec![VertexSet::singleton(0), VertexSet::singleton(1)];
        assert!(Channel::new(Role::X, 2, masks.clone(), vec![1.0, 0.0, 0.0, 1.0]).is_ok());
        assert!(matches!(
            Channel::new(Role::X, 2, masks, vec![0.5, 0.5, 0.0, 1.0]),
            Err(Error::Mask(_))
        ));
    }

    #[test]
    fn random_rows_respect_masks() {
        let masks: Vec<VertexSet> = vec![[0, 1].into_iter().collect(), [1, 2].into_iter().collect(), VertexSet::singleton(2)];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = Channel::random(Role::Y, 3, masks.clone(), 1e-6, &mut rng).unwrap();
        let again = Channel::new(Role::Y, 3, masks, c.weights().to_vec());
        assert!(again.is_ok());
        assert_eq!(c.get(0, 1), 0.0);
    }
}
