//! Structural properties of finite groupoids: reduction identity,
//! invariant-set counting, principality of products, and symmetry of
//! the isomorphism search.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use weylkit_core::groupoid::FiniteGroupoid;
use weylkit_core::iso::find_isomorphism;
use weylkit_core::sample;

fn fixtures() -> Vec<FiniteGroupoid> {
    let mut out = vec![
        FiniteGroupoid::full_relation(1),
        FiniteGroupoid::full_relation(2),
        FiniteGroupoid::full_relation(3),
        FiniteGroupoid::trivial(2),
        FiniteGroupoid::trivial(3),
        FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]]).unwrap(),
        FiniteGroupoid::full_relation(2).disjoint_union(&FiniteGroupoid::full_relation(2)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..8 {
        out.push(sample::random_equivalence(5, &mut rng));
    }
    out
}

#[test]
fn reduction_to_everything_is_identity() {
    for g in fixtures() {
        let all: BTreeSet<usize> = (0..g.unit_count()).collect();
        assert_eq!(g.reduction(&all).unwrap(), g);
    }
}

#[test]
fn orbits_refine_invariant_subsets_and_count_matches() {
    for g in fixtures() {
        let orbits = g.orbits();
        let subsets = g.invariant_subsets();
        assert_eq!(subsets.len(), 1 << orbits.len());
        for s in &subsets {
            assert!(g.is_invariant(s));
            for block in &orbits {
                let hits = block.iter().filter(|u| s.contains(u)).count();
                assert!(hits == 0 || hits == block.len());
            }
        }
    }
}

#[test]
fn products_of_principal_fixtures_are_principal() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..6 {
        let a = sample::random_equivalence(3, &mut rng);
        let b = sample::random_equivalence(3, &mut rng);
        let p = a.product(&b);
        assert!(p.validate().is_valid());
        let report = p.isotropy_report();
        assert!(report.is_principal);
        assert!(report.is_effective);
    }
}

#[test]
fn effective_iff_principal_on_all_fixtures() {
    for g in fixtures() {
        let report = g.isotropy_report();
        assert_eq!(report.is_principal, report.is_effective);
    }
}

#[test]
fn isomorphism_search_is_symmetric_and_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let a = sample::random_equivalence(4, &mut rng).shared();
        let b = sample::random_equivalence(4, &mut rng).shared();
        let fwd = find_isomorphism(&a, &b, 64).unwrap();
        let back = find_isomorphism(&b, &a, 64).unwrap();
        assert_eq!(fwd.is_some(), back.is_some());
        if let (Some(f), Some(g)) = (fwd, back) {
            // the two arrow maps compose to a bijection on arrows of a
            let mut seen = vec![false; a.arrow_count()];
            for arrow in 0..a.arrow_count() {
                let round = g.arrow_map[f.arrow_map[arrow]];
                assert!(!seen[round]);
                seen[round] = true;
            }
        }
    }
}

#[test]
fn product_with_point_is_isomorphic_to_factor() {
    let g3 = FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
        .unwrap()
        .shared();
    let t1 = FiniteGroupoid::trivial(1);
    let p = g3.product(&t1).shared();
    assert!(find_isomorphism(&p, &g3, 64).unwrap().is_some());
}

#[test]
fn swap_action_groupoid_matches_pair_groupoid() {
    // the free transitive Z/2 action on two points gives R2
    let units = vec!["0".to_string(), "1".to_string()];
    let arrows = vec![
        weylkit_core::Arrow {
            id: "(0|e)".into(),
            source: 0,
            target: 0,
        },
        weylkit_core::Arrow {
            id: "(0|g)".into(),
            source: 0,
            target: 1,
        },
        weylkit_core::Arrow {
            id: "(1|e)".into(),
            source: 1,
            target: 1,
        },
        weylkit_core::Arrow {
            id: "(1|g)".into(),
            source: 1,
            target: 0,
        },
    ];
    // (x|a) . (y|b) defined when x = y + b, giving (y | a + b)
    let idx = |x: usize, a: usize| x * 2 + a;
    let mut compose = vec![None; 16];
    for y in 0..2 {
        for b in 0..2 {
            let x = (y + b) % 2;
            for a in 0..2 {
                compose[idx(x, a) * 4 + idx(y, b)] = Some(idx(y, (a + b) % 2));
            }
        }
    }
    let inverse = vec![idx(0, 0), idx(1, 1), idx(1, 0), idx(0, 1)];
    let action =
        FiniteGroupoid::from_parts(units, arrows, vec![idx(0, 0), idx(1, 0)], compose, inverse)
            .unwrap()
            .shared();
    assert!(action.validate().is_valid());
    let r2 = FiniteGroupoid::full_relation(2).shared();
    let iso = find_isomorphism(&action, &r2, 64).unwrap();
    assert!(iso.is_some());
}
