//! Brute-force matrix realization of `σ_φ` on `Finite(n)`.
//!
//! Row `α` of the matrix has a single 1 in column `φ(α)`, so that
//! `(A x)_α = x_{φ(α)}`. Nothing here consults fibers: norms come from power
//! iteration on `AᵀA` and injectivity/surjectivity from exact integer rank.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index_domain::{make_finite_map, Index, IndexMap};

/// Seed for the power-iteration start vector when none is given.
pub const DEFAULT_SEED: u64 = 0x6765_6e73_6869_6674;

pub const POWER_TOLERANCE: f64 = 1e-12;
pub const POWER_MAX_ITERATIONS: usize = 10_000;

/// Largest `n` accepted by [`exhaustive_maps`] (7⁷ = 823543 maps).
pub const EXHAUSTIVE_CAP: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseOperator {
    n: usize,
    entries: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralCheck {
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    pub unitary: bool,
}

pub fn to_dense(map: &IndexMap) -> Result<DenseOperator> {
    let images = map
        .images()
        .ok_or_else(|| Error::Unsupported("dense realization needs a finite domain".into()))?;
    let n = images.len();
    let mut entries = vec![0u8; n * n];
    for (row, &img) in images.iter().enumerate() {
        entries[row * n + img as usize - 1] = 1;
    }
    Ok(DenseOperator { n, entries })
}

impl DenseOperator {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.n + col]
    }

    fn row(&self, row: usize) -> &[u8] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.n).map(|c| (0..self.n).map(|r| self.get(r, c) as u64).sum()).collect()
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|r| self.row(r).iter().zip(x).filter(|(&a, _)| a != 0).map(|(_, &v)| v).sum())
            .collect()
    }

    fn mul_real(&self, x: &[f64], out: &mut [f64]) {
        for (r, o) in out.iter_mut().enumerate() {
            *o = self.row(r).iter().zip(x).map(|(&a, &v)| a as f64 * v).sum();
        }
    }

    fn mul_transpose_real(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (r, &xr) in x.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o += a as f64 * xr;
            }
        }
    }

    pub fn spectral_norm(&self) -> Result<f64> {
        self.spectral_norm_seeded(DEFAULT_SEED)
    }

    /// Largest singular value by power iteration on `AᵀA` from a seeded
    /// random positive start.
    pub fn spectral_norm_seeded(&self, seed: u64) -> Result<f64> {
        let n = self.n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
        normalize(&mut v);
        let mut av = vec![0.0; n];
        let mut w = vec![0.0; n];
        let mut lambda_prev = f64::NAN;
        let mut residual = f64::INFINITY;
        for _ in 0..POWER_MAX_ITERATIONS {
            self.mul_real(&v, &mut av);
            self.mul_transpose_real(&av, &mut w);
            // Rayleigh quotient of AᵀA at unit v
            let lambda: f64 = av.iter().map(|a| a * a).sum();
            residual = w.iter().zip(&v).map(|(wi, vi)| (wi - lambda * vi).powi(2)).sum::<f64>().sqrt();
            if lambda == 0.0 {
                return Ok(0.0);
            }
            if (lambda - lambda_prev).abs() <= POWER_TOLERANCE * lambda {
                return Ok(lambda.sqrt());
            }
            lambda_prev = lambda;
            v.copy_from_slice(&w);
            normalize(&mut v);
        }
        Err(Error::NoConvergence { iterations: POWER_MAX_ITERATIONS, residual })
    }

    /// Rank by fraction-free (Bareiss) elimination over the integers.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m: Vec<Vec<i128>> = (0..n).map(|r| self.row(r).iter().map(|&a| a as i128).collect()).collect();
        let mut rank = 0;
        let mut prev_pivot: i128 = 1;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let (top, below) = m.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let pivot = pivot_row[col];
            for row in below {
                let factor = row[col];
                for (a, &b) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                    let num = pivot * *a - factor * b;
                    debug_assert_eq!(num % prev_pivot, 0);
                    *a = num / prev_pivot;
                }
                row[col] = 0;
            }
            prev_pivot = pivot;
            rank += 1;
        }
        rank
    }

    pub fn structural_check(&self) -> StructuralCheck {
        let rank = self.rank();
        let n = self.n;
        let unitary = (0..n).all(|i| {
            (0..n).all(|j| {
                let dot: u64 = (0..n).map(|r| self.get(r, i) as u64 * self.get(r, j) as u64).sum();
                dot == u64::from(i == j)
            })
        });
        StructuralCheck { rank, injective: rank == n, surjective: rank == n, unitary }
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

pub fn structural_check(a: &DenseOperator) -> StructuralCheck {
    a.structural_check()
}

pub fn spectral_norm(a: &DenseOperator) -> Result<f64> {
    a.spectral_norm()
}

fn check_exhaustive_size(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::IndexSetTooSmall(n));
    }
    if n > EXHAUSTIVE_CAP {
        return Err(Error::Unsupported(format!("exhaustive enumeration is capped at n = {EXHAUSTIVE_CAP}")));
    }
    Ok(())
}

/// Number of maps on `Finite(n)`.
pub fn map_count(n: u64) -> u64 {
    n.pow(n as u32)
}

/// The `rank`-th image table on `Finite(n)` in lexicographic order.
pub fn map_at(n: u64, mut rank: u64) -> Result<IndexMap> {
    let mut images = vec![0 as Index; n as usize];
    for slot in images.iter_mut().rev() {
        *slot = rank % n + 1;
        rank /= n;
    }
    make_finite_map(images, n)
}

/// Every self-map of `Finite(n)`, image tables in lexicographic order.
pub fn exhaustive_maps(n: u64) -> Result<ExhaustiveMaps> {
    check_exhaustive_size(n)?;
    Ok(ExhaustiveMaps { n, next: Some(vec![1; n as usize]) })
}

#[derive(Debug, Clone)]
pub struct ExhaustiveMaps {
    n: u64,
    next: Option<Vec<Index>>,
}

impl Iterator for ExhaustiveMaps {
    type Item = IndexMap;

    fn next(&mut self) -> Option<IndexMap> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // odometer, last position fastest
        let mut pos = succ.len();
        while pos > 0 {
            pos -= 1;
            if succ[pos] < self.n {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 1;
        }
        Some(make_finite_map(current, self.n).expect("odometer stays in range"))
    }
}
