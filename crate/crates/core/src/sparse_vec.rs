//! Finitely supported vectors in `ℓ²(τ)`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_domain::{Index, IndexSet};

pub type Scalar = Complex64;

pub fn real(v: f64) -> Scalar {
    Complex64::new(v, 0.0)
}

/// A finitely supported vector. Stored entries are never exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    domain: IndexSet,
    entries: BTreeMap<Index, Scalar>,
}

impl SparseVector {
    pub fn zero(domain: IndexSet) -> Self {
        SparseVector { domain, entries: BTreeMap::new() }
    }

    /// Builds a vector from `(index, value)` pairs. Zero values are dropped;
    /// repeated indices are rejected.
    pub fn from_entries(
        domain: IndexSet,
        entries: impl IntoIterator<Item = (Index, Scalar)>,
    ) -> Result<Self> {
        let mut v = Self::zero(domain);
        for (i, value) in entries {
            domain.check(i)?;
            if v.entries.contains_key(&i) {
                return Err(Error::DuplicateEntry(i));
            }
            v.set_unchecked(i, value);
        }
        Ok(v)
    }

    pub fn domain(&self) -> IndexSet {
        self.domain
    }

    pub fn get(&self, i: Index) -> Scalar {
        self.entries.get(&i).copied().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = Index> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Index, Scalar)> + '_ {
        self.entries.iter().map(|(&i, &v)| (i, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn set_unchecked(&mut self, i: Index, value: Scalar) {
        if value == Scalar::default() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, value);
        }
    }

    fn same_domain(&self, other: &SparseVector) -> Result<()> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch { left: self.domain, right: other.domain })
        }
    }

    pub fn add(&self, other: &SparseVector) -> Result<SparseVector> {
        self.same_domain(other)?;
        let mut out = self.clone();
        for (i, v) in other.iter() {
            out.set_unchecked(i, out.get(i) + v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseVector) -> Result<SparseVector> {
        self.add(&other.scale(real(-1.0)))
    }

    pub fn scale(&self, c: Scalar) -> SparseVector {
        let mut out = Self::zero(self.domain);
        for (i, v) in self.iter() {
            out.set_unchecked(i, c * v);
        }
        out
    }

    /// `Σ x_α · conj(y_α)`.
    pub fn inner(&self, other: &SparseVector) -> Result<Scalar> {
        self.same_domain(other)?;
        let (small, large, conj_small) = if self.nnz() <= other.nnz() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        Ok(small
            .iter()
            .filter_map(|(i, a)| large.entries.get(&i).map(|&b| if conj_small { b * a.conj() } else { a * b.conj() }))
            .sum())
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.values().map(|v| v.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

/// The unit vector `δ^θ`.
pub fn unit_vector(domain: IndexSet, theta: Index) -> Result<SparseVector> {
    SparseVector::from_entries(domain, [(theta, real(1.0))])
}

/// One entry of the vector file format.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub i: Index,
    pub re: f64,
    pub im: f64,
}

impl SparseVector {
    pub fn to_entries(&self) -> Vec<Entry> {
        self.iter().map(|(i, v)| Entry { i, re: v.re, im: v.im }).collect()
    }

    pub fn from_file_entries(domain: IndexSet, entries: &[Entry]) -> Result<Self> {
        Self::from_entries(domain, entries.iter().map(|e| (e.i, Complex64::new(e.re, e.im))))
    }
}

/// Parses the JSON vector format `[{"i":1,"re":1.0,"im":0.0}, …]`.
pub fn parse_vector(domain: IndexSet, json: &str) -> Result<SparseVector> {
    let entries: Vec<Entry> = serde_json::from_str(json)?;
    SparseVector::from_file_entries(domain, &entries)
}
