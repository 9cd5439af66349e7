//! Oracle-agreement sweeps over many maps.
//!
//! Each map is checked independently, so sweeps split the index range across
//! threads when the `parallel` feature is on. Results are gathered in index
//! order either way, so the output does not depend on the execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dense_oracle::{map_at, map_count, to_dense, EXHAUSTIVE_CAP};
use crate::error::{Error, Result};
use crate::gen_shift::{apply, classify, operator_norm, OperatorNorm};
use crate::index_domain::{make_finite_map, Index, IndexMap, IndexSet};
use crate::sparse_vec::unit_vector;

/// Absolute tolerance between the oracle norm and `√(max fiber size)`.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Largest `n` accepted by random sweeps.
pub const RANDOM_CAP: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential without the `parallel` feature.
    #[default]
    Parallel,
}

/// Runs `f` on `0..total` and keeps the `Some` results in index order.
pub fn filter_map_range<T, F>(total: u64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..total).into_par_iter().filter_map(f).collect(),
        _ => (0..total).filter_map(f).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub images: Vec<Index>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SweepSummary {
    pub maps_checked: u64,
    pub disagreements: Vec<Disagreement>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares every structural verdict for a finite map against the dense oracle.
pub fn check_map(map: &IndexMap, seed: u64) -> std::result::Result<(), String> {
    let images = map.images().ok_or("oracle checks need a finite domain")?;
    let n = images.len() as u64;
    let domain = map.domain();
    let dense = to_dense(map).map_err(|e| e.to_string())?;

    for theta in 1..=n {
        let e = unit_vector(domain, theta).map_err(|e| e.to_string())?;
        let dense_in: Vec<Complex64> = (1..=n).map(|k| e.get(k)).collect();
        let via_apply = apply(map, &e).map_err(|e| e.to_string())?;
        let via_dense = dense.mul_vec(&dense_in);
        if (1..=n).any(|k| via_apply.get(k) != via_dense[k as usize - 1]) {
            return Err(format!("apply disagrees with the matrix on e_{theta}"));
        }
    }
    let cards: Vec<u64> = (1..=n).map(|a| map.fiber_card_unchecked(a).finite().unwrap_or(u64::MAX)).collect();
    if dense.column_sums() != cards {
        return Err("column sums differ from fiber sizes".into());
    }

    let oracle_norm = dense.spectral_norm_seeded(seed).map_err(|e| e.to_string())?;
    match operator_norm(map).map_err(|e| e.to_string())? {
        OperatorNorm::Exact(v) if (v - oracle_norm).abs() <= NORM_TOLERANCE => {}
        other => return Err(format!("operator norm {other:?} vs oracle {oracle_norm}")),
    }

    let sc = dense.structural_check();
    let report = classify(map, 1, 1).map_err(|e| e.to_string())?;
    let pairs = [
        ("sigma_injective", report.sigma_injective.known(), sc.injective),
        ("sigma_surjective", report.sigma_surjective.known(), sc.surjective),
        ("isometry", report.isometry.known(), sc.unitary),
    ];
    for (what, structural, oracle) in pairs {
        if structural != Some(oracle) {
            return Err(format!("{what}: classify {structural:?} vs oracle {oracle}"));
        }
    }

    let mut sorted = images.to_vec();
    sorted.sort_unstable();
    let bijective = sorted.iter().copied().eq(1..=n);
    if sc.unitary != bijective {
        return Err(format!("unitary {} but bijective {bijective}", sc.unitary));
    }
    Ok(())
}

fn disagreement(map: &IndexMap, seed: u64) -> Option<Disagreement> {
    check_map(map, seed)
        .err()
        .map(|reason| Disagreement { images: map.images().unwrap_or_default().to_vec(), reason })
}

/// All `nⁿ` maps on `Finite(n)`.
pub fn exhaustive_agreement(n: u64, seed: u64, exec: Execution) -> Result<SweepSummary> {
    if n < 2 {
        return Err(Error::IndexSetTooSmall(n));
    }
    if n > EXHAUSTIVE_CAP {
        return Err(Error::Unsupported(format!("exhaustive sweeps are capped at n = {EXHAUSTIVE_CAP}")));
    }
    let total = map_count(n);
    let disagreements = filter_map_range(total, exec, |rank| {
        let map = map_at(n, rank).expect("rank below nⁿ");
        disagreement(&map, seed)
    });
    Ok(SweepSummary { maps_checked: total, disagreements })
}

/// The `i`-th random image table of a sweep; independent of thread scheduling.
pub fn random_images(n: u64, seed: u64, i: u64) -> Vec<Index> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    (0..n).map(|_| rng.random_range(1..=n)).collect()
}

/// `count` uniformly random maps on `Finite(n)`.
pub fn random_agreement(n: u64, count: u64, seed: u64, exec: Execution) -> Result<SweepSummary> {
    IndexSet::finite(n)?;
    if n > RANDOM_CAP {
        return Err(Error::Unsupported(format!("random sweeps are capped at n = {RANDOM_CAP}")));
    }
    let disagreements = filter_map_range(count, exec, |i| {
        let map = make_finite_map(random_images(n, seed, i), n).expect("images in range");
        disagreement(&map, seed)
    });
    Ok(SweepSummary { maps_checked: count, disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive_sweeps_agree() {
        for n in 2..=4 {
            let s = exhaustive_agreement(n, 1, Execution::Parallel).unwrap();
            assert_eq!(s.maps_checked, n.pow(n as u32));
            assert!(s.passed(), "{:?}", s.disagreements.first());
        }
    }

    #[test]
    fn execution_modes_match() {
        let a = random_agreement(9, 200, 3, Execution::Sequential).unwrap();
        let b = random_agreement(9, 200, 3, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        let ranks = filter_map_range(100, Execution::Parallel, |i| (i % 7 == 0).then_some(i));
        assert_eq!(ranks, (0..100).filter(|i| i % 7 == 0).collect::<Vec<_>>());
    }

    #[test]
    fn random_images_are_reproducible() {
        assert_eq!(random_images(12, 42, 5), random_images(12, 42, 5));
        assert_ne!(random_images(12, 42, 5), random_images(12, 42, 6));
        assert!(random_images(12, 42, 0).iter().all(|&v| (1..=12).contains(&v)));
    }

    #[test]
    fn size_caps() {
        assert!(exhaustive_agreement(8, 0, Execution::Sequential).is_err());
        assert!(exhaustive_agreement(1, 0, Execution::Sequential).is_err());
        assert!(random_agreement(1, 1, 0, Execution::Sequential).is_err());
    }

    #[test]
    fn check_map_rejects_symbolic() {
        let m = IndexMap::builtin(crate::index_domain::Builtin::Successor);
        assert!(check_map(&m, 0).is_err());
    }
}
