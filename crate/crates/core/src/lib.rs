//! weylkit-core: finite-model verification for etale-groupoid diagonal
//! pairs, their Weyl groupoids, morphisms, and the surrounding category
//! structure — all in exact Gaussian-rational arithmetic.
//!
//! The library is organized around finite discrete groupoids
//! ([`groupoid`]), their exact *-algebras ([`algebra`]), diagonal pairs
//! with germ and reconstruction machinery ([`pair`]), quotients by
//! invariant sets ([`quotient`]), diagonal-preserving morphisms and the
//! induced partial groupoid morphisms ([`morphism`], [`partial`]), and
//! the categories these assemble into ([`category`], [`tensor`]).

pub mod algebra;
pub mod category;
pub mod comparison;
pub mod error;
pub mod groupoid;
pub mod iso;
pub mod linalg;
pub mod morphism;
pub mod pair;
pub mod partial;
pub mod quotient;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod tensor;

pub use error::Error;
pub use groupoid::{Arrow, FiniteGroupoid, GroupoidMap};
pub use scalar::GaussianRational;

#[cfg(test)]
mod concurrency {
    // every value type is immutable after construction and all
    // operations are pure, so sharing across threads must hold at the
    // type level
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::FiniteGroupoid>();
        assert_send_sync::<crate::GroupoidMap>();
        assert_send_sync::<crate::GaussianRational>();
        assert_send_sync::<crate::algebra::AlgebraElement>();
        assert_send_sync::<crate::pair::DiagonalPair>();
        assert_send_sync::<crate::morphism::PairMorphism>();
        assert_send_sync::<crate::category::PartialTriple>();
    }
}
