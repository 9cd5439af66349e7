//! Generalized shift operators `σ_φ(x)_α = x_{φ(α)}` on `ℓ²(τ)`.
//!
//! The crate represents index sets and self-maps with exact fiber queries
//! ([`index_domain`]), finitely supported vectors ([`sparse_vec`]), and the
//! operator itself ([`gen_shift`]): application, operator norm,
//! injectivity/surjectivity/isometry classification and preimage solving.
//! [`domain_analysis`] covers the natural domain `𝒟` and its closedness, and
//! [`compact_witness`] the compactness question. [`dense_oracle`] is an
//! independent matrix realization used to cross-check all of the above, and
//! [`sweep`] runs those cross-checks over many maps in parallel.

pub mod cli;
pub mod compact_witness;
pub mod dense_oracle;
pub mod domain_analysis;
pub mod error;
pub mod gen_shift;
pub mod index_domain;
pub mod sparse_vec;
pub mod sweep;

pub use error::{Error, Result};
pub use gen_shift::{apply, apply_norm_sq, classify, operator_norm, solve, ClassificationReport, OperatorNorm, Verdict};
pub use index_domain::{fiber_report, make_finite_map, Builtin, FiberCard, Index, IndexMap, IndexSet};
pub use sparse_vec::{unit_vector, Scalar, SparseVector};
