//! The exact *-algebra of a finite groupoid: finitely supported
//! functions from arrows to Gaussian rationals under convolution.
//! Coefficient storage is dense (fixtures stay under a few dozen
//! arrows), so every operation is a direct loop over arrows.

use crate::error::Error;
use crate::groupoid::FiniteGroupoid;
use crate::scalar::GaussianRational;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// An element of the groupoid *-algebra: one Gaussian-rational
/// coefficient per arrow.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    groupoid: Arc<FiniteGroupoid>,
    coeffs: Vec<GaussianRational>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|a| format!("({})*d_{}", self.coeffs[a], self.groupoid.arrow(a).id))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl AlgebraElement {
    pub fn zero(groupoid: &Arc<FiniteGroupoid>) -> Self {
        AlgebraElement {
            groupoid: groupoid.clone(),
            coeffs: vec![GaussianRational::zero(); groupoid.arrow_count()],
        }
    }

    /// The multiplicative unit: the sum of all unit-arrow indicators.
    pub fn one(groupoid: &Arc<FiniteGroupoid>) -> Self {
        let mut el = Self::zero(groupoid);
        for u in 0..groupoid.unit_count() {
            el.coeffs[groupoid.unit_arrow(u)] = GaussianRational::one();
        }
        el
    }

    /// Indicator of a single arrow.
    pub fn delta(groupoid: &Arc<FiniteGroupoid>, arrow: usize) -> Self {
        let mut el = Self::zero(groupoid);
        el.coeffs[arrow] = GaussianRational::one();
        el
    }

    /// Indicator of a unit's identity arrow.
    pub fn unit_indicator(groupoid: &Arc<FiniteGroupoid>, unit: usize) -> Self {
        Self::delta(groupoid, groupoid.unit_arrow(unit))
    }

    /// Indicator of an arrow set (typically a bisection).
    pub fn indicator(groupoid: &Arc<FiniteGroupoid>, arrows: &BTreeSet<usize>) -> Self {
        let mut el = Self::zero(groupoid);
        for &a in arrows {
            el.coeffs[a] = GaussianRational::one();
        }
        el
    }

    /// Indicator of a validated bisection: always a normalizer of the
    /// canonical diagonal.
    pub fn bisection_indicator(
        groupoid: &Arc<FiniteGroupoid>,
        bisection: &crate::groupoid::Bisection,
    ) -> Self {
        Self::indicator(groupoid, bisection.arrows())
    }

    /// Indicator of a set of units (a diagonal 0/1 projection).
    pub fn projection(groupoid: &Arc<FiniteGroupoid>, units: &BTreeSet<usize>) -> Self {
        let mut el = Self::zero(groupoid);
        for &u in units {
            el.coeffs[groupoid.unit_arrow(u)] = GaussianRational::one();
        }
        el
    }

    pub fn from_coeffs(
        groupoid: &Arc<FiniteGroupoid>,
        coeffs: Vec<GaussianRational>,
    ) -> Result<Self, Error> {
        if coeffs.len() != groupoid.arrow_count() {
            return Err(Error::Malformed(
                "coefficient vector length differs from arrow count".into(),
            ));
        }
        Ok(AlgebraElement {
            groupoid: groupoid.clone(),
            coeffs,
        })
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn coeff(&self, arrow: usize) -> &GaussianRational {
        &self.coeffs[arrow]
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, arrow: usize, value: GaussianRational) {
        self.coeffs[arrow] = value;
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&a| !self.coeffs[a].is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_zero)
    }

    /// Whether the support lies in the diagonal (unit arrows only).
    pub fn is_diagonal(&self) -> bool {
        self.support()
            .into_iter()
            .all(|a| self.groupoid.is_unit_arrow(a))
    }

    /// Whether this is a 0/1-valued diagonal idempotent.
    pub fn is_projection(&self) -> bool {
        self.is_diagonal() && self.support().iter().all(|&a| self.coeffs[a].is_one())
    }

    fn check_same(&self, other: &AlgebraElement) -> Result<(), Error> {
        if Arc::ptr_eq(&self.groupoid, &other.groupoid) || self.groupoid == other.groupoid {
            Ok(())
        } else {
            Err(Error::GroupoidMismatch)
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(AlgebraElement {
            groupoid: self.groupoid.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(AlgebraElement {
            groupoid: self.groupoid.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, factor: &GaussianRational) -> AlgebraElement {
        AlgebraElement {
            groupoid: self.groupoid.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Convolution product: `(f*g)(c) = sum over b.a = c of f(b) g(a)`.
    pub fn convolve(&self, other: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.check_same(other)?;
        let mut out = AlgebraElement::zero(&self.groupoid);
        for b in self.support() {
            for a in other.support() {
                if let Some(c) = self.groupoid.compose(b, a) {
                    let term = &self.coeffs[b] * &other.coeffs[a];
                    out.coeffs[c] += &term;
                }
            }
        }
        Ok(out)
    }

    /// Involution: `f*(c) = conj(f(c^{-1}))`.
    pub fn adjoint(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.groupoid);
        for a in 0..self.coeffs.len() {
            out.coeffs[a] = self.coeffs[self.groupoid.inverse(a)].conj();
        }
        out
    }

    /// The canonical conditional expectation onto the diagonal:
    /// restriction of coefficients to unit arrows.
    pub fn expectation(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.groupoid);
        for u in 0..self.groupoid.unit_count() {
            let e = self.groupoid.unit_arrow(u);
            out.coeffs[e] = self.coeffs[e].clone();
        }
        out
    }
}

/// A closed two-sided ideal, represented by its invariant unit set and
/// the arrows it supports. Lossless for principal models because every
/// ideal is generated by its diagonal part.
#[derive(Clone, Debug)]
pub struct IdealData {
    pub invariant_units: BTreeSet<usize>,
    pub support_arrows: BTreeSet<usize>,
}

/// The ideal attached to an invariant unit set: all arrows with both
/// endpoints inside it.
pub fn ideal_from_invariant(
    groupoid: &Arc<FiniteGroupoid>,
    units: &BTreeSet<usize>,
) -> Result<IdealData, Error> {
    if !groupoid.is_invariant(units) {
        return Err(Error::NotInvariant(format!("{units:?}")));
    }
    let support_arrows = (0..groupoid.arrow_count())
        .filter(|&a| units.contains(&groupoid.source(a)) && units.contains(&groupoid.target(a)))
        .collect();
    Ok(IdealData {
        invariant_units: units.clone(),
        support_arrows,
    })
}

/// The quotient of a groupoid algebra by the ideal of an invariant set:
/// restriction of coefficients to the complementary reduction.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub reduced: Arc<FiniteGroupoid>,
    /// original arrow index -> surviving arrow index
    arrow_map: Vec<Option<usize>>,
    source: Arc<FiniteGroupoid>,
}

impl QuotientAlgebra {
    pub fn new(groupoid: &Arc<FiniteGroupoid>, killed: &BTreeSet<usize>) -> Result<Self, Error> {
        if !groupoid.is_invariant(killed) {
            return Err(Error::NotInvariant(format!("{killed:?}")));
        }
        let keep: BTreeSet<usize> = (0..groupoid.unit_count())
            .filter(|u| !killed.contains(u))
            .collect();
        let reduced = groupoid.reduction(&keep)?.shared();
        let arrow_map = (0..groupoid.arrow_count())
            .map(|a| reduced.arrow_index(&groupoid.arrow(a).id))
            .collect();
        Ok(QuotientAlgebra {
            reduced,
            arrow_map,
            source: groupoid.clone(),
        })
    }

    /// Image of an original arrow, when it survives the reduction.
    pub fn arrow_image(&self, arrow: usize) -> Option<usize> {
        self.arrow_map[arrow]
    }

    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement, Error> {
        if f.groupoid() != &self.source {
            return Err(Error::GroupoidMismatch);
        }
        let mut out = AlgebraElement::zero(&self.reduced);
        for (a, img) in self.arrow_map.iter().enumerate() {
            if let Some(i) = img {
                out.set_coeff(*i, f.coeff(a).clone());
            }
        }
        Ok(out)
    }
}

/// Kronecker product into the algebra of the product groupoid:
/// coefficient `f(a) g(b)` at the product arrow `(a, b)`.
pub fn kronecker(
    f: &AlgebraElement,
    g: &AlgebraElement,
    product: &Arc<FiniteGroupoid>,
) -> Result<AlgebraElement, Error> {
    let m2 = g.groupoid().arrow_count();
    if product.arrow_count() != f.groupoid().arrow_count() * m2 {
        return Err(Error::GroupoidMismatch);
    }
    let mut out = AlgebraElement::zero(product);
    for a in f.support() {
        for b in g.support() {
            out.set_coeff(a * m2 + b, f.coeff(a) * g.coeff(b));
        }
    }
    Ok(out)
}

/// A tracial state, stored as nonnegative weights on the orbit blocks.
#[derive(Clone, Debug)]
pub struct Trace {
    /// parallel to `FiniteGroupoid::orbits()`; weights sum to 1
    pub weights: Vec<BigRational>,
}

/// One extreme trace per orbit of a principal groupoid: the normalized
/// diagonal sum over that orbit.
pub fn extreme_traces(groupoid: &FiniteGroupoid) -> Result<Vec<Trace>, Error> {
    if !groupoid.is_principal() {
        return Err(Error::NotPrincipal);
    }
    let k = groupoid.orbits().len();
    Ok((0..k)
        .map(|i| {
            let mut weights = vec![BigRational::zero(); k];
            weights[i] = BigRational::from_integer(1.into());
            Trace { weights }
        })
        .collect())
}

/// Evaluates a trace: `tau(f) = sum_O w_O / |O| * sum_{u in O} f(e_u)`.
pub fn evaluate_trace(trace: &Trace, f: &AlgebraElement) -> GaussianRational {
    let orbits = f.groupoid().orbits();
    assert_eq!(orbits.len(), trace.weights.len(), "trace/orbit mismatch");
    let mut acc = GaussianRational::zero();
    for (block, w) in orbits.iter().zip(&trace.weights) {
        if w.is_zero() {
            continue;
        }
        let scale = GaussianRational::new(
            w / BigRational::from_integer((block.len() as i64).into()),
            BigRational::zero(),
        );
        for &u in block {
            let term = &scale * f.coeff(f.groupoid().unit_arrow(u));
            acc += &term;
        }
    }
    acc
}
