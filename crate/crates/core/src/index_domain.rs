//! Index sets `τ` and total self-maps `φ: τ → τ` with exact fiber queries.
//!
//! Two kinds of index set are supported: a finite set `{1, …, n}` with
//! `n ≥ 2`, and the countable set `{1, 2, 3, …}`. Maps on a finite set are
//! image tables; maps on the countable set are [`SymbolicRule`]s that must
//! enumerate every fiber exactly.
//!
//! Indices are 1-based throughout.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Index = u64;

/// Cap on fiber enumeration during integrity spot checks.
const SPOT_CHECK_ENUMERATION_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexSet {
    Finite(u64),
    Countable,
}

impl IndexSet {
    pub fn finite(size: u64) -> Result<Self> {
        if size < 2 {
            return Err(Error::IndexSetTooSmall(size));
        }
        Ok(IndexSet::Finite(size))
    }

    pub fn contains(&self, index: Index) -> bool {
        match *self {
            IndexSet::Finite(n) => (1..=n).contains(&index),
            IndexSet::Countable => index >= 1,
        }
    }

    pub fn check(&self, index: Index) -> Result<()> {
        if self.contains(index) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { index, domain: *self })
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, IndexSet::Finite(_))
    }

    pub fn size(&self) -> Option<u64> {
        match *self {
            IndexSet::Finite(n) => Some(n),
            IndexSet::Countable => None,
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSet::Finite(n) => write!(f, "Finite({n})"),
            IndexSet::Countable => f.write_str("Countable"),
        }
    }
}

/// Cardinality of a fiber, with every infinite cardinal collapsed to `Infinite`.
///
/// The derived ordering puts every finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberCard {
    Finite(u64),
    Infinite,
}

impl FiberCard {
    pub fn is_finite(&self) -> bool {
        matches!(self, FiberCard::Finite(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match *self {
            FiberCard::Finite(c) => Some(c),
            FiberCard::Infinite => None,
        }
    }

    /// `card · |x|²` with the convention `0·∞ = ∞·0 = 0`.
    pub fn weigh(&self, magnitude_sq: f64) -> Extended {
        match *self {
            FiberCard::Finite(c) => Extended::Finite(c as f64 * magnitude_sq),
            FiberCard::Infinite if magnitude_sq == 0.0 => Extended::Finite(0.0),
            FiberCard::Infinite => Extended::Infinite,
        }
    }
}

impl fmt::Display for FiberCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberCard::Finite(c) => write!(f, "{c}"),
            FiberCard::Infinite => f.write_str("infinite"),
        }
    }
}

/// A non-negative extended real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }
}

impl std::ops::Add for Extended {
    type Output = Extended;

    fn add(self, rhs: Extended) -> Extended {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

/// The exact preimage `φ⁻¹(α)`. Finite fibers are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fiber {
    Finite(Vec<Index>),
    Infinite,
}

impl Fiber {
    pub fn card(&self) -> FiberCard {
        match self {
            Fiber::Finite(v) => FiberCard::Finite(v.len() as u64),
            Fiber::Infinite => FiberCard::Infinite,
        }
    }

    pub fn members(&self) -> Option<&[Index]> {
        match self {
            Fiber::Finite(v) => Some(v),
            Fiber::Infinite => None,
        }
    }
}

/// Facts a rule proves about itself. `None` means "not proved"; analyses fall
/// back to window checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleCertificate {
    pub injective: Option<bool>,
    pub surjective: Option<bool>,
    /// Fiber cardinalities have no finite upper bound (possibly because
    /// some fiber is infinite).
    pub unbounded: bool,
    /// Uniform bound on the cardinalities of the finite fibers.
    pub bound_on_finite_fibers: Option<u64>,
    /// The finite fibers alone already have unbounded cardinalities.
    pub unbounded_on_finite_fibers: bool,
    /// Complete, sorted list of indices whose fiber is infinite.
    pub infinite_fibers: Option<Vec<Index>>,
}

/// A total self-map of the countable index set `{1, 2, …}` with an exact
/// fiber oracle.
///
/// Implementations must satisfy `β ∈ fiber(α) ⇔ eval(β) = α` and must only
/// return `Fiber::Infinite` for fibers that really are infinite.
/// `declared_bound`, when present, is the exact supremum of fiber sizes.
pub trait SymbolicRule: fmt::Debug + Send + Sync {
    fn name(&self) -> String;

    fn eval(&self, k: Index) -> Index;

    fn fiber(&self, alpha: Index) -> Fiber;

    fn fiber_card(&self, alpha: Index) -> FiberCard {
        self.fiber(alpha).card()
    }

    fn declared_bound(&self) -> Option<u64> {
        None
    }

    fn certificate(&self) -> RuleCertificate {
        RuleCertificate::default()
    }
}

/// Symbolic rules shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `k ↦ k + 1`.
    Successor,
    /// `1 ↦ 1`, `k ↦ k − 1`.
    ClampPred,
    /// The `k`-th consecutive block of length `b` maps to `k`.
    Block(u64),
    /// The `k`-th consecutive block of length `k` maps to `k`.
    Triangular,
    /// `k ↦ 2k`.
    Doubling,
    /// Odd `k ↦ 1`, even `k ↦ k/2 + 1`; the fiber of 1 is infinite.
    OddCollapse,
}

fn triangular_number(k: u64) -> u128 {
    let k = k as u128;
    k * (k + 1) / 2
}

fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

impl SymbolicRule for Builtin {
    fn name(&self) -> String {
        match self {
            Builtin::Successor => "successor".into(),
            Builtin::ClampPred => "clamp_pred".into(),
            Builtin::Block(b) => format!("block({b})"),
            Builtin::Triangular => "triangular".into(),
            Builtin::Doubling => "doubling".into(),
            Builtin::OddCollapse => "odd_collapse".into(),
        }
    }

    fn eval(&self, k: Index) -> Index {
        debug_assert!(k >= 1);
        match *self {
            Builtin::Successor => k.checked_add(1).expect("index overflow"),
            Builtin::ClampPred => k.saturating_sub(1).max(1),
            Builtin::Block(b) => (k - 1) / b + 1,
            Builtin::Triangular => {
                // smallest j with T(j) >= k
                let k128 = k as u128;
                let mut j = ((isqrt(8 * k128 + 1) - 1) / 2) as u64;
                while triangular_number(j) < k128 {
                    j += 1;
                }
                while j > 1 && triangular_number(j - 1) >= k128 {
                    j -= 1;
                }
                j
            }
            Builtin::Doubling => k.checked_mul(2).expect("index overflow"),
            Builtin::OddCollapse => {
                if k % 2 == 1 {
                    1
                } else {
                    k / 2 + 1
                }
            }
        }
    }

    fn fiber(&self, alpha: Index) -> Fiber {
        match *self {
            Builtin::Successor => Fiber::Finite(if alpha >= 2 { vec![alpha - 1] } else { vec![] }),
            Builtin::ClampPred => Fiber::Finite(if alpha == 1 {
                vec![1, 2]
            } else {
                vec![alpha + 1]
            }),
            Builtin::Block(b) => Fiber::Finite(((alpha - 1) * b + 1..=alpha * b).collect()),
            Builtin::Triangular => {
                let start = (triangular_number(alpha - 1) + 1) as u64;
                let end = triangular_number(alpha) as u64;
                Fiber::Finite((start..=end).collect())
            }
            Builtin::Doubling => Fiber::Finite(if alpha.is_multiple_of(2) { vec![alpha / 2] } else { vec![] }),
            Builtin::OddCollapse => {
                if alpha == 1 {
                    Fiber::Infinite
                } else {
                    Fiber::Finite(vec![2 * (alpha - 1)])
                }
            }
        }
    }

    fn fiber_card(&self, alpha: Index) -> FiberCard {
        match *self {
            Builtin::Successor => FiberCard::Finite((alpha >= 2) as u64),
            Builtin::ClampPred => FiberCard::Finite(if alpha == 1 { 2 } else { 1 }),
            Builtin::Block(b) => FiberCard::Finite(b),
            Builtin::Triangular => FiberCard::Finite(alpha),
            Builtin::Doubling => FiberCard::Finite(alpha.is_multiple_of(2) as u64),
            Builtin::OddCollapse if alpha == 1 => FiberCard::Infinite,
            Builtin::OddCollapse => FiberCard::Finite(1),
        }
    }

    fn declared_bound(&self) -> Option<u64> {
        match *self {
            Builtin::Successor | Builtin::Doubling => Some(1),
            Builtin::ClampPred => Some(2),
            Builtin::Block(b) => Some(b),
            Builtin::Triangular | Builtin::OddCollapse => None,
        }
    }

    fn certificate(&self) -> RuleCertificate {
        let bounded = |injective, surjective, bound| RuleCertificate {
            injective: Some(injective),
            surjective: Some(surjective),
            unbounded: false,
            bound_on_finite_fibers: Some(bound),
            unbounded_on_finite_fibers: false,
            infinite_fibers: Some(vec![]),
        };
        match *self {
            Builtin::Successor => bounded(true, false, 1),
            Builtin::ClampPred => bounded(false, true, 2),
            Builtin::Block(b) => bounded(b == 1, true, b),
            Builtin::Doubling => bounded(true, false, 1),
            Builtin::Triangular => RuleCertificate {
                injective: Some(false),
                surjective: Some(true),
                unbounded: true,
                bound_on_finite_fibers: None,
                unbounded_on_finite_fibers: true,
                infinite_fibers: Some(vec![]),
            },
            Builtin::OddCollapse => RuleCertificate {
                injective: Some(false),
                surjective: Some(true),
                unbounded: true,
                bound_on_finite_fibers: Some(1),
                unbounded_on_finite_fibers: false,
                infinite_fibers: Some(vec![1]),
            },
        }
    }
}

/// Image table on `{1, …, n}` with precomputed fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Table {
    images: Vec<Index>,
    // fibers of α are members[offsets[α-1]..offsets[α]]
    offsets: Vec<usize>,
    members: Vec<Index>,
}

impl Table {
    fn new(images: Vec<Index>) -> Self {
        let n = images.len();
        let mut offsets = vec![0usize; n + 1];
        for &img in &images {
            offsets[img as usize] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut members = vec![0; n];
        for (pos, &img) in images.iter().enumerate() {
            let slot = &mut cursor[img as usize - 1];
            members[*slot] = pos as Index + 1;
            *slot += 1;
        }
        Table { images, offsets, members }
    }

    fn fiber(&self, alpha: Index) -> &[Index] {
        let a = alpha as usize;
        &self.members[self.offsets[a - 1]..self.offsets[a]]
    }
}

#[derive(Debug, Clone)]
enum Rule {
    Table(Table),
    Symbolic(Arc<dyn SymbolicRule>),
}

/// A total self-map `φ` of an index set.
#[derive(Debug, Clone)]
pub struct IndexMap {
    domain: IndexSet,
    rule: Rule,
}

/// Builds the map `k ↦ images[k-1]` on `Finite(n)`.
pub fn make_finite_map(images: Vec<Index>, n: u64) -> Result<IndexMap> {
    let domain = IndexSet::finite(n)?;
    if images.len() as u64 != n {
        return Err(Error::LengthMismatch { len: images.len(), size: n });
    }
    if let Some((pos, &value)) = images.iter().enumerate().find(|(_, &v)| !domain.contains(v)) {
        return Err(Error::ImageOutOfRange { position: pos as Index + 1, value, size: n });
    }
    Ok(IndexMap { domain, rule: Rule::Table(Table::new(images)) })
}

impl IndexMap {
    pub fn finite(images: Vec<Index>) -> Result<Self> {
        let n = images.len() as u64;
        make_finite_map(images, n)
    }

    pub fn identity(n: u64) -> Result<Self> {
        make_finite_map((1..=n).collect(), n)
    }

    pub fn constant(n: u64, value: Index) -> Result<Self> {
        make_finite_map(vec![value; n as usize], n)
    }

    /// `k ↦ k + 1 (mod n)`, 1-based.
    pub fn cycle(n: u64) -> Result<Self> {
        make_finite_map((1..=n).map(|k| k % n + 1).collect(), n)
    }

    /// `1 ↦ 1`, `k ↦ k − 1` on `Finite(n)`.
    pub fn clamp_pred(n: u64) -> Result<Self> {
        make_finite_map((1..=n).map(|k| k.saturating_sub(1).max(1)).collect(), n)
    }

    pub fn symbolic(rule: Arc<dyn SymbolicRule>) -> Self {
        IndexMap { domain: IndexSet::Countable, rule: Rule::Symbolic(rule) }
    }

    pub fn builtin(rule: Builtin) -> Self {
        Self::symbolic(Arc::new(rule))
    }

    pub fn domain(&self) -> IndexSet {
        self.domain
    }

    /// The image table when the domain is finite.
    pub fn images(&self) -> Option<&[Index]> {
        match &self.rule {
            Rule::Table(t) => Some(&t.images),
            Rule::Symbolic(_) => None,
        }
    }

    pub fn rule(&self) -> Option<&Arc<dyn SymbolicRule>> {
        match &self.rule {
            Rule::Table(_) => None,
            Rule::Symbolic(r) => Some(r),
        }
    }

    pub fn name(&self) -> String {
        match &self.rule {
            Rule::Table(t) => format!("table{:?}", t.images),
            Rule::Symbolic(r) => r.name(),
        }
    }

    pub fn eval(&self, k: Index) -> Result<Index> {
        self.domain.check(k)?;
        Ok(self.eval_unchecked(k))
    }

    pub(crate) fn eval_unchecked(&self, k: Index) -> Index {
        match &self.rule {
            Rule::Table(t) => t.images[k as usize - 1],
            Rule::Symbolic(r) => r.eval(k),
        }
    }

    pub fn fiber(&self, alpha: Index) -> Result<Fiber> {
        self.domain.check(alpha)?;
        Ok(match &self.rule {
            Rule::Table(t) => Fiber::Finite(t.fiber(alpha).to_vec()),
            Rule::Symbolic(r) => r.fiber(alpha),
        })
    }

    pub fn fiber_card(&self, alpha: Index) -> Result<FiberCard> {
        self.domain.check(alpha)?;
        Ok(self.fiber_card_unchecked(alpha))
    }

    pub(crate) fn fiber_card_unchecked(&self, alpha: Index) -> FiberCard {
        match &self.rule {
            Rule::Table(t) => FiberCard::Finite(t.fiber(alpha).len() as u64),
            Rule::Symbolic(r) => r.fiber_card(alpha),
        }
    }

    /// Calls `f` with every member of a finite fiber, without allocating for tables.
    pub(crate) fn for_each_in_fiber(&self, alpha: Index, mut f: impl FnMut(Index)) -> FiberCard {
        match &self.rule {
            Rule::Table(t) => {
                let members = t.fiber(alpha);
                members.iter().copied().for_each(f);
                FiberCard::Finite(members.len() as u64)
            }
            Rule::Symbolic(r) => match r.fiber(alpha) {
                Fiber::Finite(v) => {
                    let card = FiberCard::Finite(v.len() as u64);
                    v.into_iter().for_each(&mut f);
                    card
                }
                Fiber::Infinite => FiberCard::Infinite,
            },
        }
    }

    /// Exact certificate: full knowledge for tables, the rule's own claims otherwise.
    pub fn certificate(&self) -> RuleCertificate {
        match &self.rule {
            Rule::Table(t) => {
                let n = t.images.len() as u64;
                let max = (1..=n).map(|a| t.fiber(a).len() as u64).max().unwrap_or(0);
                let injective = max <= 1;
                RuleCertificate {
                    injective: Some(injective),
                    // square table: injective ⇔ surjective
                    surjective: Some(injective),
                    unbounded: false,
                    bound_on_finite_fibers: Some(max),
                    unbounded_on_finite_fibers: false,
                    infinite_fibers: Some(vec![]),
                }
            }
            Rule::Symbolic(r) => r.certificate(),
        }
    }

    /// `α ↦ self(inner(α))`. Finite domains only.
    pub fn compose(&self, inner: &IndexMap) -> Result<IndexMap> {
        if self.domain != inner.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: inner.domain });
        }
        let Some(n) = self.domain.size() else {
            return Err(Error::Unsupported("composition of symbolic rules".into()));
        };
        let images = (1..=n).map(|k| self.eval_unchecked(inner.eval_unchecked(k))).collect();
        make_finite_map(images, n)
    }

    /// Checks fiber soundness on `1..=window`: `β ∈ fiber(eval(β))` and every
    /// enumerated fiber member maps back to its index.
    pub fn spot_check(&self, window: u64) -> Result<()> {
        let limit = self.domain.size().map_or(window, |n| n.min(window));
        for beta in 1..=limit {
            let alpha = self.eval_unchecked(beta);
            if !self.domain.contains(alpha) {
                return Err(Error::Integrity(format!(
                    "{}: eval({beta}) = {alpha} leaves the domain",
                    self.name()
                )));
            }
            let card = self.fiber_card_unchecked(alpha);
            if card.finite().is_some_and(|c| c <= SPOT_CHECK_ENUMERATION_CAP) {
                let fiber = self.fiber(alpha)?;
                let members = fiber.members().unwrap_or(&[]);
                if members.binary_search(&beta).is_err() {
                    return Err(Error::Integrity(format!(
                        "{}: {beta} missing from fiber({alpha})",
                        self.name()
                    )));
                }
            } else if card == FiberCard::Finite(0) {
                return Err(Error::Integrity(format!(
                    "{}: fiber({alpha}) reported empty but contains {beta}",
                    self.name()
                )));
            }
        }
        for alpha in 1..=limit {
            let card = self.fiber_card_unchecked(alpha);
            if card.finite().is_some_and(|c| c > SPOT_CHECK_ENUMERATION_CAP) {
                continue;
            }
            let fiber = self.fiber(alpha)?;
            if fiber.card() != card {
                return Err(Error::Integrity(format!(
                    "{}: fiber({alpha}) has {} members but fiber_card reports {card}",
                    self.name(),
                    fiber.card()
                )));
            }
            if let Some(members) = fiber.members() {
                if let Some(&beta) = members.iter().find(|&&b| self.eval_unchecked(b) != alpha) {
                    return Err(Error::Integrity(format!(
                        "{}: {beta} listed in fiber({alpha}) but maps elsewhere",
                        self.name()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The preimage of `alpha` under `map`.
pub fn fiber(map: &IndexMap, alpha: Index) -> Result<Fiber> {
    map.fiber(alpha)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundVerdict {
    /// The supremum of fiber sizes is exactly this finite value.
    Certified(u64),
    CertifiedUnbounded,
    /// Only the window was inspected; `observed` is its maximum fiber size.
    WindowOnly { observed: u64, window: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub cardinalities: Vec<(Index, FiberCard)>,
    /// Maximum of `cardinalities`.
    pub sup: FiberCard,
    pub verdict: BoundVerdict,
    /// Sampled indices whose fiber is finite.
    pub m_set: Vec<Index>,
}

impl FiberReport {
    pub fn is_bounded(&self) -> Option<bool> {
        match self.verdict {
            BoundVerdict::Certified(_) => Some(true),
            BoundVerdict::CertifiedUnbounded => Some(false),
            BoundVerdict::WindowOnly { .. } => None,
        }
    }
}

/// Fiber cardinalities, their supremum and a boundedness verdict.
///
/// Finite domains are scanned completely and `window` is ignored.
pub fn fiber_report(map: &IndexMap, window: u64) -> Result<FiberReport> {
    if window == 0 {
        return Err(Error::Unsupported("window must be at least 1".into()));
    }
    let limit = map.domain().size().unwrap_or(window);
    let cardinalities: Vec<(Index, FiberCard)> =
        (1..=limit).map(|a| (a, map.fiber_card_unchecked(a))).collect();
    let sup = cardinalities.iter().map(|&(_, c)| c).max().unwrap_or(FiberCard::Finite(0));
    let m_set = cardinalities.iter().filter(|(_, c)| c.is_finite()).map(|&(a, _)| a).collect();

    let verdict = match map.domain() {
        IndexSet::Finite(_) => BoundVerdict::Certified(sup.finite().unwrap_or(0)),
        IndexSet::Countable => {
            map.spot_check(window)?;
            let cert = map.certificate();
            let declared = map.rule().and_then(|r| r.declared_bound());
            match declared {
                Some(bound) => {
                    if cert.unbounded {
                        return Err(Error::Integrity(format!(
                            "{}: declares bound {bound} but certifies unbounded fibers",
                            map.name()
                        )));
                    }
                    if sup > FiberCard::Finite(bound) {
                        return Err(Error::Integrity(format!(
                            "{}: declared bound {bound} but window contains a fiber of size {sup}",
                            map.name()
                        )));
                    }
                    BoundVerdict::Certified(bound)
                }
                None if cert.unbounded || sup == FiberCard::Infinite => {
                    BoundVerdict::CertifiedUnbounded
                }
                None => BoundVerdict::WindowOnly { observed: sup.finite().unwrap_or(0), window },
            }
        }
    };
    Ok(FiberReport { cardinalities, sup, verdict, m_set })
}

/// JSON map file: `{"kind":"finite","images":[…]}` or
/// `{"kind":"symbolic","name":"block","param":3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapSpec {
    Finite {
        images: Vec<Index>,
    },
    Symbolic {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param: Option<u64>,
    },
}

impl MapSpec {
    pub fn build(&self) -> Result<IndexMap> {
        match self {
            MapSpec::Finite { images } => IndexMap::finite(images.clone()),
            MapSpec::Symbolic { name, param } => {
                let no_param = |rule: Builtin| match param {
                    None => Ok(rule),
                    Some(_) => Err(Error::Parse(format!("rule {name} takes no param"))),
                };
                let rule = match name.as_str() {
                    "successor" => no_param(Builtin::Successor)?,
                    "clamp_pred" => no_param(Builtin::ClampPred)?,
                    "triangular" => no_param(Builtin::Triangular)?,
                    "doubling" => no_param(Builtin::Doubling)?,
                    "odd_collapse" => no_param(Builtin::OddCollapse)?,
                    "block" => match param {
                        Some(b) if *b >= 1 => Builtin::Block(*b),
                        _ => return Err(Error::Parse("block needs a param b >= 1".into())),
                    },
                    other => return Err(Error::Parse(format!("unknown symbolic rule {other:?}"))),
                };
                Ok(IndexMap::builtin(rule))
            }
        }
    }

    pub fn from_builtin(rule: Builtin) -> Self {
        let (name, param) = match rule {
            Builtin::Successor => ("successor", None),
            Builtin::ClampPred => ("clamp_pred", None),
            Builtin::Block(b) => ("block", Some(b)),
            Builtin::Triangular => ("triangular", None),
            Builtin::Doubling => ("doubling", None),
            Builtin::OddCollapse => ("odd_collapse", None),
        };
        MapSpec::Symbolic { name: name.into(), param }
    }
}

pub fn parse_map(json: &str) -> Result<IndexMap> {
    serde_json::from_str::<MapSpec>(json)?.build()
}
