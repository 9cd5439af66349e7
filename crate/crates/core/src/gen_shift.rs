//! The generalized shift `σ_φ: (x_α) ↦ (x_{φ(α)})`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::index_domain::{fiber_report, BoundVerdict, Extended, FiberCard, Index, IndexMap};
use crate::sparse_vec::SparseVector;

/// Window used when a caller does not pick one.
pub const DEFAULT_WINDOW: u64 = 64;

/// Cap on the collision search used to name a witness pair.
const COLLISION_SEARCH_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    WindowOnly(String),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(&self) -> bool {
        *self == Verdict::True
    }

    pub fn is_false(&self) -> bool {
        *self == Verdict::False
    }

    /// The exact answer, if one is known.
    pub fn known(&self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::WindowOnly(_) => None,
        }
    }

    pub fn and(&self, other: &Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            (Verdict::WindowOnly(a), Verdict::WindowOnly(b)) => Verdict::WindowOnly(format!("{a}; {b}")),
            (Verdict::WindowOnly(a), _) | (_, Verdict::WindowOnly(a)) => Verdict::WindowOnly(a.clone()),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => f.write_str("true"),
            Verdict::False => f.write_str("false"),
            Verdict::WindowOnly(why) => write!(f, "window-only ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorNorm {
    Exact(f64),
    Infinite,
    /// `lower_bound` is `√(max fiber size)` over the inspected window.
    WindowOnly { lower_bound: f64, window: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub maps_into_l2: Verdict,
    pub operator_norm: OperatorNorm,
    pub sigma_injective: Verdict,
    pub sigma_surjective: Verdict,
    pub isometry: Verdict,
    pub compact: Verdict,
}

fn check_domains(map: &IndexMap, x: &SparseVector) -> Result<()> {
    if map.domain() == x.domain() {
        Ok(())
    } else {
        Err(Error::DomainMismatch { left: map.domain(), right: x.domain() })
    }
}

/// `σ_φ(x)`, with `y_β = x_{φ(β)}`.
///
/// Fails with [`Error::NotInL2`] naming the smallest `θ ∈ supp(x)` whose
/// fiber is infinite.
pub fn apply(map: &IndexMap, x: &SparseVector) -> Result<SparseVector> {
    check_domains(map, x)?;
    let mut out = SparseVector::zero(map.domain());
    for (theta, value) in x.iter() {
        let card = map.for_each_in_fiber(theta, |beta| out.set_unchecked(beta, value));
        if card == FiberCard::Infinite {
            return Err(Error::NotInL2 { index: theta });
        }
    }
    Ok(out)
}

/// `‖σ_φ(x)‖² = Σ card(φ⁻¹(α)) · |x_α|²` evaluated from fiber sizes alone.
pub fn apply_norm_sq(map: &IndexMap, x: &SparseVector) -> Result<Extended> {
    check_domains(map, x)?;
    Ok(x
        .iter()
        .map(|(theta, v)| map.fiber_card_unchecked(theta).weigh(v.norm_sqr()))
        .fold(Extended::Finite(0.0), |acc, t| acc + t))
}

pub fn operator_norm(map: &IndexMap) -> Result<OperatorNorm> {
    operator_norm_within(map, DEFAULT_WINDOW)
}

/// `√(sup card φ⁻¹(α))`, from the fiber report over `window`.
pub fn operator_norm_within(map: &IndexMap, window: u64) -> Result<OperatorNorm> {
    let report = fiber_report(map, window)?;
    Ok(match report.verdict {
        BoundVerdict::Certified(n) => OperatorNorm::Exact((n as f64).sqrt()),
        BoundVerdict::CertifiedUnbounded => OperatorNorm::Infinite,
        BoundVerdict::WindowOnly { observed, window } => {
            OperatorNorm::WindowOnly { lower_bound: (observed as f64).sqrt(), window }
        }
    })
}

/// Searches `1..=limit` for two indices with the same image.
fn find_collision(map: &IndexMap, limit: u64) -> Option<(Index, Index, Index)> {
    let mut seen: HashMap<Index, Index> = HashMap::new();
    for beta in 1..=limit {
        let alpha = map.eval_unchecked(beta);
        if let Some(&first) = seen.get(&alpha) {
            return Some((first, beta, alpha));
        }
        seen.insert(alpha, beta);
    }
    None
}

/// Whether `φ` is one-to-one. Exact on finite domains and for rules that
/// certify it; otherwise a collision in `1..=window` settles it.
pub fn phi_injective(map: &IndexMap, window: u64) -> Verdict {
    if let Some(b) = map.certificate().injective {
        return Verdict::from_bool(b);
    }
    let limit = map.domain().size().map_or(window, |n| n.min(window));
    if find_collision(map, limit).is_some() {
        return Verdict::False;
    }
    Verdict::WindowOnly(format!("no collision among 1..={limit}"))
}

/// Whether `φ` is onto. An empty fiber in `1..=window` settles it negatively.
pub fn phi_surjective(map: &IndexMap, window: u64) -> Verdict {
    if let Some(b) = map.certificate().surjective {
        return Verdict::from_bool(b);
    }
    let limit = map.domain().size().map_or(window, |n| n.min(window));
    if (1..=limit).any(|a| map.fiber_card_unchecked(a) == FiberCard::Finite(0)) {
        return Verdict::False;
    }
    Verdict::WindowOnly(format!("every fiber over 1..={limit} is nonempty"))
}

pub fn classify(map: &IndexMap, injectivity_window: u64, surjectivity_window: u64) -> Result<ClassificationReport> {
    let injectivity_window = injectivity_window.max(1);
    let surjectivity_window = surjectivity_window.max(1);
    let report = fiber_report(map, injectivity_window.max(surjectivity_window))?;
    let (maps_into_l2, operator_norm) = match report.verdict {
        BoundVerdict::Certified(n) => (Verdict::True, OperatorNorm::Exact((n as f64).sqrt())),
        BoundVerdict::CertifiedUnbounded => (Verdict::False, OperatorNorm::Infinite),
        BoundVerdict::WindowOnly { observed, window } => (
            Verdict::WindowOnly(format!("fiber sizes at most {observed} on 1..={window}")),
            OperatorNorm::WindowOnly { lower_bound: (observed as f64).sqrt(), window },
        ),
    };
    let phi_inj = phi_injective(map, injectivity_window);
    let phi_surj = phi_surjective(map, surjectivity_window);
    Ok(ClassificationReport {
        maps_into_l2,
        operator_norm,
        isometry: phi_inj.and(&phi_surj),
        sigma_injective: phi_surj,
        sigma_surjective: phi_inj,
        compact: Verdict::from_bool(map.domain().is_finite()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Accept injectivity that is only checked on a window.
    pub allow_window_only: bool,
    pub window: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { allow_window_only: false, window: DEFAULT_WINDOW }
    }
}

pub fn solve(map: &IndexMap, y: &SparseVector) -> Result<SparseVector> {
    solve_with(map, y, SolveOptions::default())
}

/// The preimage `x` of `y` under `σ_φ` for injective `φ`: `x_{φ(β)} = y_β`,
/// zero off the range of `φ`.
pub fn solve_with(map: &IndexMap, y: &SparseVector, options: SolveOptions) -> Result<SparseVector> {
    check_domains(map, y)?;
    match phi_injective(map, options.window) {
        Verdict::True => {}
        Verdict::False => {
            let limit = map.domain().size().unwrap_or(COLLISION_SEARCH_CAP);
            return Err(match find_collision(map, limit) {
                Some((first, second, image)) => Error::NotInjective { first, second, image },
                None => Error::Unsupported(format!("{} is certified non-injective", map.name())),
            });
        }
        Verdict::WindowOnly(why) if !options.allow_window_only => {
            return Err(Error::WindowOnlyRefused(why));
        }
        Verdict::WindowOnly(_) => {}
    }
    let mut x = SparseVector::zero(map.domain());
    for (beta, v) in y.iter() {
        x.set_unchecked(map.eval_unchecked(beta), v);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_complex::Complex64;

    use super::*;
    use crate::index_domain::{Builtin, Fiber, IndexSet, SymbolicRule};
    use crate::sparse_vec::{real, unit_vector};

    /// Dense `y_β = x_{φ(β)}` over a finite table, independent of fibers.
    fn dense_apply(images: &[Index], x: &SparseVector) -> Vec<Complex64> {
        images.iter().map(|&img| x.get(img)).collect()
    }

    #[test]
    fn apply_examples() {
        let id = IndexMap::identity(3).unwrap();
        let x = SparseVector::from_entries(IndexSet::Finite(3), [(1, real(1.0)), (2, Complex64::new(0.0, 2.0))])
            .unwrap();
        assert_eq!(apply(&id, &x).unwrap(), x);

        let succ = IndexMap::builtin(Builtin::Successor);
        assert!(apply(&succ, &unit_vector(IndexSet::Countable, 1).unwrap()).unwrap().is_zero());

        let constant = IndexMap::constant(4, 1).unwrap();
        let e1 = unit_vector(IndexSet::Finite(4), 1).unwrap();
        let y = apply(&constant, &e1).unwrap();
        let dense = dense_apply(constant.images().unwrap(), &e1);
        assert_eq!(dense, vec![real(1.0); 4]);
        assert_eq!((1..=4).map(|b| y.get(b)).collect::<Vec<_>>(), dense);
        assert_eq!(y.norm(), 2.0);
    }

    #[test]
    fn apply_reports_first_infinite_fiber() {
        let map = IndexMap::builtin(Builtin::OddCollapse);
        let x = SparseVector::from_entries(IndexSet::Countable, [(3, real(1.0)), (1, real(2.0))]).unwrap();
        assert_eq!(apply(&map, &x).unwrap_err(), Error::NotInL2 { index: 1 });
        assert_eq!(apply_norm_sq(&map, &x).unwrap(), Extended::Infinite);
        let e2 = unit_vector(IndexSet::Countable, 2).unwrap();
        assert_eq!(apply(&map, &e2).unwrap().support().collect::<Vec<_>>(), vec![2]);

        let wrong = unit_vector(IndexSet::Finite(3), 1).unwrap();
        assert!(matches!(apply(&map, &wrong), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn norm_sq_examples() {
        let id = IndexMap::identity(3).unwrap();
        let x = SparseVector::from_entries(IndexSet::Finite(3), [(1, real(3.0)), (3, Complex64::new(0.0, 4.0))])
            .unwrap();
        assert_eq!(apply_norm_sq(&id, &x).unwrap(), Extended::Finite(x.norm_sq()));

        let clamp = IndexMap::clamp_pred(10).unwrap();
        let e1 = unit_vector(IndexSet::Finite(10), 1).unwrap();
        assert_eq!(apply_norm_sq(&clamp, &e1).unwrap(), Extended::Finite(2.0));

        let tri = IndexMap::builtin(Builtin::Triangular);
        for k in [1u64, 2, 7, 100] {
            let ek = unit_vector(IndexSet::Countable, k).unwrap();
            assert_eq!(apply_norm_sq(&tri, &ek).unwrap(), Extended::Finite(k as f64));
            assert_eq!(apply(&tri, &ek).unwrap().norm_sq(), k as f64);
        }
    }

    #[test]
    fn operator_norm_examples() {
        assert_eq!(operator_norm(&IndexMap::identity(5).unwrap()).unwrap(), OperatorNorm::Exact(1.0));
        assert_eq!(operator_norm(&IndexMap::constant(4, 1).unwrap()).unwrap(), OperatorNorm::Exact(2.0));
        assert_eq!(
            operator_norm(&IndexMap::builtin(Builtin::Block(3))).unwrap(),
            OperatorNorm::Exact(3f64.sqrt())
        );
        // Finite(9) truncation of the block rule has the same norm
        let trunc = IndexMap::finite((1..=9).map(|k| Builtin::Block(3).eval(k)).collect()).unwrap();
        assert_eq!(operator_norm(&trunc).unwrap(), OperatorNorm::Exact(3f64.sqrt()));
        assert_eq!(operator_norm(&IndexMap::builtin(Builtin::Triangular)).unwrap(), OperatorNorm::Infinite);
    }

    #[test]
    fn classify_examples() {
        let r = classify(&IndexMap::cycle(3).unwrap(), 1, 1).unwrap();
        assert_eq!(r.maps_into_l2, Verdict::True);
        assert_eq!(r.operator_norm, OperatorNorm::Exact(1.0));
        assert!(r.sigma_injective.is_true() && r.sigma_surjective.is_true());
        assert!(r.isometry.is_true() && r.compact.is_true());

        let r = classify(&IndexMap::builtin(Builtin::Doubling), 16, 16).unwrap();
        assert_eq!(r.sigma_surjective, Verdict::True);
        assert_eq!(r.sigma_injective, Verdict::False);
        assert_eq!(r.isometry, Verdict::False);
        assert_eq!(r.compact, Verdict::False);

        let r = classify(&IndexMap::constant(4, 1).unwrap(), 1, 1).unwrap();
        assert_eq!(r.sigma_surjective, Verdict::False);
        assert_eq!(r.sigma_injective, Verdict::False);
        assert_eq!(r.operator_norm, OperatorNorm::Exact(2.0));
    }

    #[derive(Debug)]
    struct Swap;

    impl SymbolicRule for Swap {
        fn name(&self) -> String {
            "swap".into()
        }
        fn eval(&self, k: Index) -> Index {
            if k % 2 == 1 {
                k + 1
            } else {
                k - 1
            }
        }
        fn fiber(&self, a: Index) -> Fiber {
            Fiber::Finite(vec![self.eval(a)])
        }
    }

    #[derive(Debug)]
    struct Halve;

    impl SymbolicRule for Halve {
        fn name(&self) -> String {
            "halve".into()
        }
        fn eval(&self, k: Index) -> Index {
            k.div_ceil(2)
        }
        fn fiber(&self, a: Index) -> Fiber {
            Fiber::Finite(vec![2 * a - 1, 2 * a])
        }
    }

    #[test]
    fn uncertified_rules_get_window_verdicts() {
        let swap = IndexMap::symbolic(Arc::new(Swap));
        let r = classify(&swap, 32, 32).unwrap();
        assert!(matches!(r.sigma_injective, Verdict::WindowOnly(_)));
        assert!(matches!(r.sigma_surjective, Verdict::WindowOnly(_)));
        assert!(matches!(r.isometry, Verdict::WindowOnly(_)));
        assert!(matches!(r.maps_into_l2, Verdict::WindowOnly(_)));
        assert_eq!(r.operator_norm, OperatorNorm::WindowOnly { lower_bound: 1.0, window: 32 });

        // collisions on the window are exact evidence
        let halve = IndexMap::symbolic(Arc::new(Halve));
        let r = classify(&halve, 8, 8).unwrap();
        assert_eq!(r.sigma_surjective, Verdict::False);
        assert_eq!(r.isometry, Verdict::False);
    }

    #[test]
    fn solve_examples() {
        let id = IndexMap::identity(4).unwrap();
        let y = SparseVector::from_entries(IndexSet::Finite(4), [(2, real(5.0))]).unwrap();
        assert_eq!(solve(&id, &y).unwrap(), y);

        let dbl = IndexMap::builtin(Builtin::Doubling);
        let y = SparseVector::from_entries(IndexSet::Countable, [(3, Complex64::new(1.0, 1.0))]).unwrap();
        let x = solve(&dbl, &y).unwrap();
        assert_eq!(x.iter().collect::<Vec<_>>(), vec![(6, Complex64::new(1.0, 1.0))]);
        assert_eq!(apply(&dbl, &x).unwrap(), y);

        let cyc = IndexMap::cycle(5).unwrap();
        let e1 = unit_vector(IndexSet::Finite(5), 1).unwrap();
        let x = solve(&cyc, &e1).unwrap();
        assert_eq!(x, unit_vector(IndexSet::Finite(5), 2).unwrap());
        assert_eq!(apply(&cyc, &x).unwrap(), e1);
    }

    #[test]
    fn solve_errors() {
        let m = IndexMap::finite(vec![1, 1, 3]).unwrap();
        let y = unit_vector(IndexSet::Finite(3), 1).unwrap();
        assert_eq!(solve(&m, &y).unwrap_err(), Error::NotInjective { first: 1, second: 2, image: 1 });

        let tri = IndexMap::builtin(Builtin::Triangular);
        let y = unit_vector(IndexSet::Countable, 1).unwrap();
        assert_eq!(solve(&tri, &y).unwrap_err(), Error::NotInjective { first: 2, second: 3, image: 2 });

        let swap = IndexMap::symbolic(Arc::new(Swap));
        assert!(matches!(solve(&swap, &y), Err(Error::WindowOnlyRefused(_))));
        let opts = SolveOptions { allow_window_only: true, window: 16 };
        let x = solve_with(&swap, &y, opts).unwrap();
        assert_eq!(apply(&swap, &x).unwrap(), y);
    }
}
