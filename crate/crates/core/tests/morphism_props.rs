//! Generated-morphism suites: every generated morphism is monomial and
//! satisfies the full partial-morphism construction; lift tables obey
//! the L-laws exactly; the compression fixture is rejected at (N).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylkit_core::morphism::{check_injective, compression_fixture, validate_morphism};
use weylkit_core::partial::{check_partial_morphism_theorem, partial_morphism};
use weylkit_core::sample::generated_morphisms;

#[test]
fn generated_morphisms_are_monomial_and_valid() {
    for m in generated_morphisms(24, 41) {
        assert!(m.is_monomial());
        let report = validate_morphism(&m);
        assert!(report.is_morphism(), "failures: {:?}", report.failures());
        assert!(report.diag_iso);
        assert!(check_injective(&m));
    }
}

#[test]
fn partial_morphism_theorem_on_generated_morphisms() {
    for (i, m) in generated_morphisms(32, 42).iter().enumerate() {
        let report = check_partial_morphism_theorem(m).unwrap();
        assert!(report.all_pass(), "morphism {i}: {report:?}");
    }
}

#[test]
fn lift_tables_satisfy_the_l_laws() {
    for m in generated_morphisms(12, 43) {
        let data = partial_morphism(&m).unwrap();
        for (tgt, src) in data.lifts.entries.values() {
            // Phi(L(n)) = n exactly
            assert_eq!(&m.apply(src).unwrap(), tgt);
            // Phi(L(n)* L(n)) = n* n
            assert_eq!(
                m.apply(&src.adjoint().convolve(src).unwrap()).unwrap(),
                tgt.adjoint().convolve(tgt).unwrap()
            );
        }
    }
}

#[test]
fn compression_fixture_is_rejected_at_n() {
    let c = compression_fixture(2).unwrap();
    let report = validate_morphism(&c);
    assert!(report.d_flag);
    assert!(report.e_flag);
    assert!(!report.n_flag());
    assert_eq!(report.failures().last(), Some(&"(N)"));
    assert!(partial_morphism(&c).is_err());
}

#[test]
fn tensor_of_monomials_is_monomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let morphisms = generated_morphisms(8, 45);
    for _ in 0..6 {
        let a = &morphisms[rng.gen_range(0..morphisms.len())];
        let b = &morphisms[rng.gen_range(0..morphisms.len())];
        if a.source().groupoid().arrow_count() * b.source().groupoid().arrow_count() > 64 {
            continue;
        }
        let t = weylkit_core::tensor::tensor_morphism(a, b).unwrap();
        assert!(t.is_monomial());
        assert!(validate_morphism(&t).is_morphism());
    }
}
