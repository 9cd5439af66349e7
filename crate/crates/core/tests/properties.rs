use num_complex::Complex64;
use proptest::prelude::*;

use genshift::dense_oracle::{map_at, map_count, to_dense};
use genshift::domain_analysis::{in_domain, m_set};
use genshift::gen_shift::{apply, apply_norm_sq, classify, operator_norm, solve, OperatorNorm};
use genshift::index_domain::{Builtin, Extended, FiberCard, Index, IndexMap, IndexSet};
use genshift::sparse_vec::{unit_vector, SparseVector};
use genshift::sweep::{exhaustive_agreement, random_agreement, Execution};
use genshift::Error;

fn table(max_n: u64) -> impl Strategy<Value = Vec<Index>> {
    (2..=max_n).prop_flat_map(|n| prop::collection::vec(1..=n, n as usize))
}

fn scalar() -> impl Strategy<Value = Complex64> {
    (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn vector_on(domain: IndexSet, max_index: u64) -> impl Strategy<Value = SparseVector> {
    prop::collection::btree_map(1..=max_index, scalar(), 0..12)
        .prop_map(move |m| SparseVector::from_entries(domain, m).unwrap())
}

fn map_and_vector(max_n: u64) -> impl Strategy<Value = (IndexMap, SparseVector)> {
    table(max_n).prop_flat_map(|images| {
        let n = images.len() as u64;
        let map = IndexMap::finite(images).unwrap();
        vector_on(map.domain(), n).prop_map(move |x| (map.clone(), x))
    })
}

fn bounded_rule() -> impl Strategy<Value = IndexMap> {
    prop_oneof![
        Just(Builtin::Successor),
        Just(Builtin::ClampPred),
        Just(Builtin::Doubling),
        (1..6u64).prop_map(Builtin::Block),
    ]
    .prop_map(IndexMap::builtin)
}

/// `σx` computed by evaluating the rule pointwise on `1..=limit`.
fn brute_apply(map: &IndexMap, x: &SparseVector, limit: Index) -> Vec<(Index, Complex64)> {
    (1..=limit)
        .map(|b| (b, x.get(map.eval(b).unwrap())))
        .filter(|(_, v)| *v != Complex64::new(0.0, 0.0))
        .collect()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn norm_identity_finite((map, x) in map_and_vector(12)) {
        let lhs = apply(&map, &x).unwrap().norm_sq();
        let Extended::Finite(rhs) = apply_norm_sq(&map, &x).unwrap() else { panic!() };
        prop_assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn countable_rules_match_pointwise_evaluation(map in bounded_rule(), x in vector_on(IndexSet::Countable, 40)) {
        let y = apply(&map, &x).unwrap();
        // every rule here sends β to an index ≥ β/6, so nothing lands past 6·40
        let expected = brute_apply(&map, &x, 240);
        prop_assert_eq!(y.iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn linearity((map, x) in map_and_vector(10), seed in 0..1000u64, a in scalar(), b in scalar()) {
        let n = map.domain().size().unwrap();
        let y = SparseVector::from_entries(map.domain(), (1..=n).filter(|k| (seed >> k) & 1 == 1).map(|k| (k, Complex64::new(k as f64, -1.0)))).unwrap();
        let lhs = apply(&map, &x.scale(a).add(&y.scale(b)).unwrap()).unwrap();
        let rhs = apply(&map, &x).unwrap().scale(a).add(&apply(&map, &y).unwrap().scale(b)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn norm_is_attained_on_a_unit_vector(images in table(12)) {
        let map = IndexMap::finite(images).unwrap();
        let OperatorNorm::Exact(norm) = operator_norm(&map).unwrap() else { panic!() };
        let n = map.domain().size().unwrap();
        let best = (1..=n)
            .map(|t| apply(&map, &unit_vector(map.domain(), t).unwrap()).unwrap().norm())
            .fold(0.0, f64::max);
        prop_assert_eq!(best, norm);
    }

    #[test]
    fn bounded_by_operator_norm((map, x) in map_and_vector(12)) {
        let OperatorNorm::Exact(norm) = operator_norm(&map).unwrap() else { panic!() };
        prop_assert!(apply(&map, &x).unwrap().norm() <= norm * x.norm() * (1.0 + 1e-12));
    }

    #[test]
    fn composition_is_contravariant(phi in table(8), seed in any::<u64>()) {
        let n = phi.len() as u64;
        let psi: Vec<Index> = (0..n).map(|k| (seed.rotate_left(k as u32 * 7) % n) + 1).collect();
        let phi = IndexMap::finite(phi).unwrap();
        let psi = IndexMap::finite(psi).unwrap();
        let x = SparseVector::from_entries(phi.domain(), (1..=n).map(|k| (k, Complex64::new(k as f64, 0.5)))).unwrap();
        // σ_φ ∘ σ_ψ = σ_{ψ∘φ}
        let lhs = apply(&phi, &apply(&psi, &x).unwrap()).unwrap();
        let rhs = apply(&psi.compose(&phi).unwrap(), &x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solve_round_trip(perm in (2..=12usize).prop_flat_map(|n| Just((1..=n as u64).collect::<Vec<_>>()).prop_shuffle()), y in vector_on(IndexSet::Countable, 12)) {
        let map = IndexMap::finite(perm).unwrap();
        let n = map.domain().size().unwrap();
        let y = SparseVector::from_entries(map.domain(), y.iter().filter(|(i, _)| *i <= n)).unwrap();
        let x = solve(&map, &y).unwrap();
        prop_assert_eq!(apply(&map, &x).unwrap(), y.clone());
        prop_assert!(close(x.norm(), y.norm(), 1e-12));
    }

    #[test]
    fn solve_on_countable_injective(rule in prop_oneof![Just(Builtin::Successor), Just(Builtin::Doubling), Just(Builtin::Block(1))], y in vector_on(IndexSet::Countable, 60)) {
        let map = IndexMap::builtin(rule);
        let x = solve(&map, &y).unwrap();
        prop_assert_eq!(apply(&map, &x).unwrap(), y.clone());
        prop_assert!(close(x.norm(), y.norm(), 1e-12));
    }

    #[test]
    fn fibers_partition_the_domain(images in table(12)) {
        let map = IndexMap::finite(images.clone()).unwrap();
        let n = images.len() as u64;
        let mut seen = vec![0u32; n as usize];
        for a in 1..=n {
            let fiber = map.fiber(a).unwrap();
            for &b in fiber.members().unwrap() {
                prop_assert_eq!(images[b as usize - 1], a);
                seen[b as usize - 1] += 1;
            }
            prop_assert_eq!(map.fiber_card(a).unwrap(), FiberCard::Finite(fiber.members().unwrap().len() as u64));
        }
        prop_assert!(seen.iter().all(|&s| s == 1));
    }

    #[test]
    fn window_agrees_with_full_scan_on_symbolic_rules(rule in bounded_rule(), a in 1..500u64) {
        let brute = (1..=3000u64).filter(|&b| rule.eval(b).unwrap() == a).count() as u64;
        prop_assert_eq!(rule.fiber_card(a).unwrap(), FiberCard::Finite(brute));
    }

    #[test]
    fn domain_is_a_subspace(x in vector_on(IndexSet::Countable, 30), y in vector_on(IndexSet::Countable, 30), c in scalar()) {
        let map = IndexMap::builtin(Builtin::OddCollapse);
        let both = in_domain(&map, &x).unwrap() && in_domain(&map, &y).unwrap();
        if both {
            prop_assert!(in_domain(&map, &x.add(&y.scale(c)).unwrap()).unwrap());
        }
    }

    #[test]
    fn in_domain_matches_apply(x in vector_on(IndexSet::Countable, 30)) {
        let map = IndexMap::builtin(Builtin::OddCollapse);
        let ok = in_domain(&map, &x).unwrap();
        prop_assert_eq!(ok, apply(&map, &x).is_ok());
        prop_assert_eq!(ok, x.get(1) == Complex64::new(0.0, 0.0));
        if !ok {
            let not_in_l2 = matches!(apply(&map, &x), Err(Error::NotInL2 { index: 1 }));
            prop_assert!(not_in_l2);
        }
    }
}

#[test]
fn classify_matches_oracle_exhaustively() {
    for n in 2..=6 {
        let s = exhaustive_agreement(n, 7, Execution::Parallel).unwrap();
        assert_eq!(s.maps_checked, map_count(n));
        assert!(s.passed(), "n = {n}: {:?}", s.disagreements.first());
    }
}

#[test]
fn oracle_norm_on_random_maps() {
    for n in [7, 9, 12] {
        let s = random_agreement(n, 300, 11, Execution::Parallel).unwrap();
        assert!(s.passed(), "n = {n}: {:?}", s.disagreements.first());
    }
}

#[test]
fn rank_matches_image_size() {
    for r in 0..map_count(5) {
        let map = map_at(5, r).unwrap();
        let mut distinct = map.images().unwrap().to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(to_dense(&map).unwrap().rank(), distinct.len());
    }
}

#[test]
fn classify_countable_builtins() {
    let succ = classify(&IndexMap::builtin(Builtin::Successor), 64, 64).unwrap();
    assert!(succ.sigma_surjective.is_true());
    assert!(succ.sigma_injective.is_false());
    assert!(succ.isometry.is_false());
    let block = classify(&IndexMap::builtin(Builtin::Block(1)), 64, 64).unwrap();
    assert!(block.isometry.is_true());
    let tri = classify(&IndexMap::builtin(Builtin::Triangular), 64, 64).unwrap();
    assert_eq!(tri.operator_norm, OperatorNorm::Infinite);
    assert!(tri.maps_into_l2.is_false());
}

#[test]
fn m_set_of_odd_collapse_excludes_one() {
    let m = m_set(&IndexMap::builtin(Builtin::OddCollapse), 16);
    assert!(!m.members().contains(&1));
    assert!(m.members().contains(&2));
}
