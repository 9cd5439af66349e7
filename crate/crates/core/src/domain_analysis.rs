//! The natural domain `𝒟 = {z ∈ ℓ² : σ_φ(z) ∈ ℓ²}` and the finite-fiber set `M`.
//!
//! For finitely supported `z`, membership in `𝒟` reduces to every support
//! index having a finite fiber. `𝒟` is closed exactly when the finite fibers
//! are uniformly bounded, in which case it equals `ℓ²(M)`.

use crate::error::{Error, Result};
use crate::gen_shift::{Verdict, DEFAULT_WINDOW};
use crate::index_domain::{FiberCard, Index, IndexMap, IndexSet};
use crate::sparse_vec::{real, SparseVector};

/// Scan limit for record searches on countable domains.
pub const DEFAULT_SCAN_CAP: u64 = 1 << 24;

/// Length of the record witness attached to a `NotClosed` verdict.
pub const CLOSEDNESS_WITNESS_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MSet {
    Exact(Vec<Index>),
    /// Window members with finite fibers. `excluded`, when the rule certifies
    /// it, is the complete list of indices with infinite fiber, so that
    /// `M = domain ∖ excluded` exactly.
    Windowed { members: Vec<Index>, window: u64, excluded: Option<Vec<Index>> },
}

impl MSet {
    pub fn members(&self) -> &[Index] {
        match self {
            MSet::Exact(m) => m,
            MSet::Windowed { members, .. } => members,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closedness {
    /// Fibers over `M` are bounded by `bound`.
    Closed { bound: u64 },
    /// `(α_k, card φ⁻¹(α_k))` with strictly increasing cardinalities.
    NotClosed { witness: Vec<(Index, u64)> },
    WindowOnly { observed: u64, window: u64 },
}

impl Closedness {
    pub fn verdict(&self) -> Verdict {
        match self {
            Closedness::Closed { .. } => Verdict::True,
            Closedness::NotClosed { .. } => Verdict::False,
            Closedness::WindowOnly { observed, window } => {
                Verdict::WindowOnly(format!("finite fibers at most {observed} on 1..={window}"))
            }
        }
    }

    pub fn uniform_bound(&self) -> Option<FiberCard> {
        match self {
            Closedness::Closed { bound } => Some(FiberCard::Finite(*bound)),
            Closedness::NotClosed { .. } => Some(FiberCard::Infinite),
            Closedness::WindowOnly { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainReport {
    pub m: MSet,
    pub closedness: Closedness,
    pub closed: Verdict,
    /// `None` when only a window was inspected.
    pub uniform_bound_on_m: Option<FiberCard>,
    /// `𝒟 = {x ∈ ℓ² : x vanishes off M}`.
    pub characterization_holds: Verdict,
    /// Continuity of `σ_φ` restricted to `𝒟`, equivalent to closedness.
    pub continuous_on_domain: Verdict,
}

/// `σ_φ(z) ∈ ℓ²` for finitely supported `z`.
pub fn in_domain(map: &IndexMap, z: &SparseVector) -> Result<bool> {
    if map.domain() != z.domain() {
        return Err(Error::DomainMismatch { left: map.domain(), right: z.domain() });
    }
    Ok(z.support().all(|theta| map.fiber_card_unchecked(theta).is_finite()))
}

pub fn m_set(map: &IndexMap, window: u64) -> MSet {
    let finite = |limit: u64| -> Vec<Index> {
        (1..=limit).filter(|&a| map.fiber_card_unchecked(a).is_finite()).collect()
    };
    match map.domain() {
        IndexSet::Finite(n) => MSet::Exact(finite(n)),
        IndexSet::Countable => {
            let window = window.max(1);
            MSet::Windowed { members: finite(window), window, excluded: map.certificate().infinite_fibers }
        }
    }
}

/// Indices of strictly increasing finite fiber size, chosen greedily by
/// smallest index. The first record has size at least 1.
pub fn record_sequence(map: &IndexMap, count: usize, scan_cap: u64) -> Result<Vec<(Index, u64)>> {
    let limit = map.domain().size().map_or(scan_cap, |n| n.min(scan_cap));
    let mut records = Vec::with_capacity(count);
    let mut best = 0u64;
    for alpha in 1..=limit {
        if records.len() == count {
            break;
        }
        if let FiberCard::Finite(c) = map.fiber_card_unchecked(alpha) {
            if c > best {
                best = c;
                records.push((alpha, c));
            }
        }
    }
    if records.len() < count {
        return Err(Error::SearchExhausted { found: records.len(), needed: count, cap: limit });
    }
    Ok(records)
}

pub fn domain_closed(map: &IndexMap) -> Result<Closedness> {
    domain_closed_within(map, DEFAULT_WINDOW)
}

/// Whether fibers over `M` are uniformly bounded. `window` only matters for
/// rules that certify neither outcome.
pub fn domain_closed_within(map: &IndexMap, window: u64) -> Result<Closedness> {
    if let Some(n) = map.domain().size() {
        let bound = (1..=n).filter_map(|a| map.fiber_card_unchecked(a).finite()).max().unwrap_or(0);
        return Ok(Closedness::Closed { bound });
    }
    let cert = map.certificate();
    if let Some(bound) = cert.bound_on_finite_fibers {
        return Ok(Closedness::Closed { bound });
    }
    if cert.unbounded_on_finite_fibers {
        let witness = record_sequence(map, CLOSEDNESS_WITNESS_LEN, DEFAULT_SCAN_CAP)?;
        return Ok(Closedness::NotClosed { witness });
    }
    if let Some(bound) = map.rule().and_then(|r| r.declared_bound()) {
        return Ok(Closedness::Closed { bound });
    }
    let window = window.max(1);
    let observed = (1..=window).filter_map(|a| map.fiber_card_unchecked(a).finite()).max().unwrap_or(0);
    Ok(Closedness::WindowOnly { observed, window })
}

pub fn domain_report(map: &IndexMap, window: u64) -> Result<DomainReport> {
    let closedness = domain_closed_within(map, window)?;
    let closed = closedness.verdict();
    Ok(DomainReport {
        m: m_set(map, window),
        uniform_bound_on_m: closedness.uniform_bound(),
        characterization_holds: closed.clone(),
        continuous_on_domain: closed.clone(),
        closed,
        closedness,
    })
}

/// Neumaier-compensated sum.
fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// A finitely supported truncation `x_K = Σ_{k≤K} (1/k) δ^{α_k}` of the
/// unboundedness counterexample.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceWitness {
    pub indices: Vec<Index>,
    /// `n_k = card φ⁻¹(α_k)`, strictly increasing.
    pub fiber_sizes: Vec<u64>,
    pub vector: SparseVector,
    pub vector_norm_sq: f64,
    /// `Σ_{k≤K} n_k / k²`, which equals `‖σ_φ(x_K)‖²`.
    pub image_norm_sq_lower_bound: f64,
}

impl DivergenceWitness {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `n_k ≥ k` for every `k`, checked in integers. Together with
    /// `x_{α_k} = 1/k` this gives `‖σ_φ(x_K)‖² ≥ H_K`.
    pub fn certifies_harmonic_bound(&self) -> bool {
        self.fiber_sizes.iter().enumerate().all(|(i, &n)| n > i as u64)
            && self.fiber_sizes.windows(2).all(|w| w[0] < w[1])
    }
}

pub fn divergence_witness(map: &IndexMap, k: usize) -> Result<DivergenceWitness> {
    divergence_witness_capped(map, k, DEFAULT_SCAN_CAP)
}

pub fn divergence_witness_capped(map: &IndexMap, k: usize, scan_cap: u64) -> Result<DivergenceWitness> {
    if k == 0 {
        return Err(Error::Unsupported("truncation length K must be at least 1".into()));
    }
    if map.domain().is_finite() {
        return Err(Error::Unsupported("fibers of a finite domain are bounded".into()));
    }
    let cert = map.certificate();
    if let Some(b) = cert.bound_on_finite_fibers {
        return Err(Error::Unsupported(format!("{}: finite fibers are bounded by {b}", map.name())));
    }
    if let Some(b) = map.rule().and_then(|r| r.declared_bound()) {
        return Err(Error::Unsupported(format!("{}: declared bound {b}", map.name())));
    }
    let records = record_sequence(map, k, scan_cap)?;
    let (indices, fiber_sizes): (Vec<Index>, Vec<u64>) = records.into_iter().unzip();
    let vector = SparseVector::from_entries(
        map.domain(),
        indices.iter().enumerate().map(|(i, &a)| (a, real(1.0 / (i + 1) as f64))),
    )?;
    let image_norm_sq_lower_bound = compensated_sum(fiber_sizes.iter().enumerate().map(|(i, &n)| {
        let k = (i + 1) as f64;
        n as f64 / (k * k)
    }));
    Ok(DivergenceWitness {
        vector_norm_sq: vector.norm_sq(),
        indices,
        fiber_sizes,
        vector,
        image_norm_sq_lower_bound,
    })
}
