//! Compactness of `σ_φ` and the separated sequence that rules it out on
//! infinite index sets.
//!
//! For distinct `α_i`, `α_j` with nonempty finite fibers of sizes `c_i`, `c_j`,
//! the images of `½δ^{α_i}` and `½δ^{α_j}` have disjoint supports, so their
//! squared distance is exactly `(c_i + c_j)/4 ≥ 1/2`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::index_domain::{fiber_report, BoundVerdict, FiberCard, Index, IndexMap};
use crate::sparse_vec::{real, unit_vector, SparseVector};

/// Upper limit for window growth in [`witness_sequence`].
pub const DEFAULT_WINDOW_CAP: u64 = 1 << 24;

pub fn is_compact(map: &IndexMap) -> bool {
    map.domain().is_finite()
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSequence {
    /// Strictly increasing indices with nonempty finite fibers.
    pub indices: Vec<Index>,
    pub fiber_sizes: Vec<u64>,
    /// `½ δ^{α_i}`, each of norm ½.
    pub vectors: Vec<SparseVector>,
}

impl WitnessSequence {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `‖σ_φ(v_i) − σ_φ(v_j)‖² = (c_i + c_j) / 4` for `i ≠ j`.
    pub fn separation_sq(&self, i: usize, j: usize) -> Ratio<u64> {
        assert_ne!(i, j, "separation is defined for distinct members");
        Ratio::new(self.fiber_sizes[i] + self.fiber_sizes[j], 4)
    }

    /// Minimum of [`Self::separation_sq`] over all pairs: the two smallest fibers.
    pub fn min_separation_sq(&self) -> Ratio<u64> {
        let mut sizes = self.fiber_sizes.clone();
        sizes.sort_unstable();
        Ratio::new(sizes[0] + sizes[1], 4)
    }

    pub fn min_separation(&self) -> f64 {
        let r = self.min_separation_sq();
        (*r.numer() as f64 / *r.denom() as f64).sqrt()
    }

    /// Every pair is at distance at least `√2/2`.
    pub fn is_separated(&self) -> bool {
        self.min_separation_sq() >= Ratio::new(1, 2)
    }
}

pub fn witness_sequence(map: &IndexMap, count: usize, window: u64) -> Result<WitnessSequence> {
    witness_sequence_capped(map, count, window, DEFAULT_WINDOW_CAP)
}

/// The first `count` indices (smallest first) with nonempty fibers, searched
/// on `1..=window` and doubling the window up to `cap`.
pub fn witness_sequence_capped(map: &IndexMap, count: usize, window: u64, cap: u64) -> Result<WitnessSequence> {
    if is_compact(map) {
        return Err(Error::Unsupported("σ_φ is compact on a finite index set".into()));
    }
    if count < 2 {
        return Err(Error::Unsupported("a witness sequence needs at least two members".into()));
    }
    let report = fiber_report(map, window.max(1))?;
    if report.verdict == BoundVerdict::CertifiedUnbounded {
        return Err(Error::Unsupported(format!(
            "{}: fibers are unbounded, σ_φ is not an operator on ℓ²",
            map.name()
        )));
    }

    let mut indices = Vec::with_capacity(count);
    let mut fiber_sizes = Vec::with_capacity(count);
    let mut limit = window.clamp(1, cap.max(1));
    let mut next = 1;
    loop {
        while next <= limit && indices.len() < count {
            match map.fiber_card_unchecked(next) {
                FiberCard::Finite(0) => {}
                FiberCard::Finite(c) => {
                    indices.push(next);
                    fiber_sizes.push(c);
                }
                FiberCard::Infinite => {
                    return Err(Error::Unsupported(format!("fiber of {next} is infinite")));
                }
            }
            next += 1;
        }
        if indices.len() == count {
            break;
        }
        if limit >= cap {
            return Err(Error::SearchExhausted { found: indices.len(), needed: count, cap });
        }
        limit = limit.saturating_mul(2).min(cap);
    }

    let vectors = indices
        .iter()
        .map(|&a| unit_vector(map.domain(), a).map(|e| e.scale(real(0.5))))
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessSequence { indices, fiber_sizes, vectors })
}
