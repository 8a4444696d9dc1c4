//! Diagonal pairs over finite groupoids: the canonical abelian
//! subalgebra spanned by unit-arrow indicators, its conditional
//! expectation, normalizer detection, germ relations and the Weyl
//! groupoid reconstruction.
//!
//! Two germ relations coexist. The alpha-level (Weyl) relation
//! identifies normalizer germs whose induced partial unit maps agree at
//! the point; it drives reconstruction. The strict relation also
//! compares the scalar the normalizer carries on the supporting arrow
//! (two normalizers are strictly germ-equal at `x` iff `n d = m d` for
//! some diagonal `d` with `d(x) != 0`), and distinguishes scalar
//! multiples. Keeping both makes their divergence a test, not a bug.

use crate::algebra::AlgebraElement;
use crate::error::Error;
use crate::groupoid::{FiniteGroupoid, GroupoidMap};
use crate::linalg::{Matrix, SpanTracker};
use crate::sample;
use crate::scalar::GaussianRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Cap on lazily enumerated bisections in span computations.
pub const BISECTION_CAP: usize = 1 << 12;

/// Validation flags of a diagonal pair, computed once at construction.
#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub abelian: bool,
    pub masa: bool,
    pub regular: bool,
    pub uep: bool,
    pub faithful: bool,
}

impl PairReport {
    pub fn all(&self) -> bool {
        self.abelian && self.masa && self.regular && self.uep && self.faithful
    }
}

/// A groupoid together with its canonical diagonal (the span of
/// unit-arrow indicators), the restriction expectation, and cached
/// validation flags.
#[derive(Clone)]
pub struct DiagonalPair {
    groupoid: Arc<FiniteGroupoid>,
    report: PairReport,
}

impl PartialEq for DiagonalPair {
    fn eq(&self, other: &Self) -> bool {
        self.groupoid == other.groupoid
    }
}
impl Eq for DiagonalPair {}

impl std::fmt::Debug for DiagonalPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DiagonalPair over {:?}", self.groupoid)
    }
}

/// A normalizer's induced partial bijection of the unit space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialUnitMap {
    pub domain: BTreeSet<usize>,
    pub map: BTreeMap<usize, usize>,
}

/// Canonical form of a Weyl germ: the unique supporting arrow of the
/// normalizer at the germ's base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Germ {
    pub unit: usize,
    pub arrow: usize,
}

/// Canonical form of a strict germ: supporting arrow plus the scalar
/// the normalizer carries there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictGerm {
    pub arrow: usize,
    pub scalar: GaussianRational,
}

/// Output of the Weyl reconstruction: the germ groupoid, the canonical
/// comparison map onto the underlying groupoid (an isomorphism for
/// principal inputs) and one monomial witness normalizer per germ.
#[derive(Clone, Debug)]
pub struct WeylGroupoidResult {
    pub groupoid: Arc<FiniteGroupoid>,
    pub canonical: GroupoidMap,
    pub witnesses: Vec<AlgebraElement>,
}

impl DiagonalPair {
    /// Builds the pair over a valid groupoid and computes all
    /// validation flags. Errors when the groupoid itself is invalid;
    /// non-principal groupoids are accepted (their flags record the
    /// failure).
    pub fn new(groupoid: Arc<FiniteGroupoid>) -> Result<Self, Error> {
        let validation = groupoid.validate();
        if !validation.is_valid() {
            return Err(Error::InvalidGroupoid(format!(
                "{:?}",
                validation.violations
            )));
        }
        let report = Self::compute_report(&groupoid);
        Ok(DiagonalPair { groupoid, report })
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn report(&self) -> &PairReport {
        &self.report
    }

    /// The cached validation report; all flags hold iff the pair is a
    /// genuine diagonal pair.
    pub fn validate(&self) -> &PairReport {
        &self.report
    }

    pub fn is_principal(&self) -> bool {
        self.groupoid.is_principal()
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::one(&self.groupoid)
    }

    pub fn delta(&self, arrow: usize) -> AlgebraElement {
        AlgebraElement::delta(&self.groupoid, arrow)
    }

    pub fn unit_indicator(&self, unit: usize) -> AlgebraElement {
        AlgebraElement::unit_indicator(&self.groupoid, unit)
    }

    pub fn expectation(&self, f: &AlgebraElement) -> AlgebraElement {
        f.expectation()
    }

    fn compute_report(g: &Arc<FiniteGroupoid>) -> PairReport {
        let abelian = Self::check_abelian(g);
        let masa = Self::check_masa(g);
        let regular = Self::check_regular(g);
        let uep = Self::check_uep(g);
        let faithful = Self::check_faithful(g);
        PairReport {
            abelian,
            masa,
            regular,
            uep,
            faithful,
        }
    }

    fn check_abelian(g: &Arc<FiniteGroupoid>) -> bool {
        for u in 0..g.unit_count() {
            for v in 0..g.unit_count() {
                let du = AlgebraElement::unit_indicator(g, u);
                let dv = AlgebraElement::unit_indicator(g, v);
                if du.convolve(&dv).unwrap() != dv.convolve(&du).unwrap() {
                    return false;
                }
            }
        }
        true
    }

    /// Maximal abelianness via an exact commutant solve: the kernel of
    /// `f -> ([f, d_u])_u` must consist of diagonal elements only.
    /// All-zero constraint rows are dropped; they do not change the
    /// kernel.
    fn check_masa(g: &Arc<FiniteGroupoid>) -> bool {
        let n = g.arrow_count();
        let mut rows = Vec::new();
        for u in 0..g.unit_count() {
            let e = g.unit_arrow(u);
            // row per output arrow c: coefficient of f(a) in (f d_u - d_u f)(c)
            for c in 0..n {
                let mut row = vec![GaussianRational::zero(); n];
                let mut nonzero = false;
                for a in 0..n {
                    let mut coeff = GaussianRational::zero();
                    if g.compose(a, e) == Some(c) {
                        coeff = coeff + GaussianRational::one();
                    }
                    if g.compose(e, a) == Some(c) {
                        coeff = coeff - GaussianRational::one();
                    }
                    if !coeff.is_zero() {
                        nonzero = true;
                    }
                    row[a] = coeff;
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            // no constraints at all: the commutant is everything, so the
            // diagonal is maximal abelian only if it is everything
            return (0..n).all(|a| g.is_unit_arrow(a));
        }
        let kernel = Matrix::from_rows(rows).kernel_basis();
        kernel.iter().all(|v| {
            v.iter()
                .enumerate()
                .all(|(a, c)| c.is_zero() || g.is_unit_arrow(a))
        })
    }

    /// Regularity as an exact span computation: indicators of bisections
    /// must span the whole algebra. Singleton bisections are fed first
    /// (the enumeration cap must not starve high-index arrows), then the
    /// capped enumeration; the scan stops as soon as the span is full.
    fn check_regular(g: &Arc<FiniteGroupoid>) -> bool {
        let n = g.arrow_count();
        if n == 0 {
            return true;
        }
        let mut tracker = SpanTracker::new(n);
        for a in 0..n {
            tracker.insert(AlgebraElement::delta(g, a).coeffs().to_vec());
            if tracker.is_full() {
                return true;
            }
        }
        let (bisections, complete) = g.bisections_capped(BISECTION_CAP);
        for s in &bisections {
            let el = AlgebraElement::indicator(g, s);
            tracker.insert(el.coeffs().to_vec());
            if tracker.is_full() {
                return true;
            }
        }
        // span cannot grow further once enumeration was complete
        complete && tracker.is_full()
    }

    /// UEP via corner one-dimensionality: each compressed space
    /// `d_u A d_u` must be spanned by the unit indicator alone.
    fn check_uep(g: &Arc<FiniteGroupoid>) -> bool {
        for u in 0..g.unit_count() {
            let du = AlgebraElement::unit_indicator(g, u);
            let mut tracker = SpanTracker::new(g.arrow_count());
            for a in 0..g.arrow_count() {
                let corner = du
                    .convolve(&AlgebraElement::delta(g, a))
                    .unwrap()
                    .convolve(&du)
                    .unwrap();
                if !corner.is_zero() {
                    tracker.insert(corner.coeffs().to_vec());
                }
            }
            if tracker.rank() != 1 {
                return false;
            }
        }
        true
    }

    /// Faithfulness of the expectation: `E(f* f) = 0` forces `f = 0`.
    /// Checked on every basis element and on seeded random elements.
    fn check_faithful(g: &Arc<FiniteGroupoid>) -> bool {
        for a in 0..g.arrow_count() {
            let f = AlgebraElement::delta(g, a);
            let e = f.adjoint().convolve(&f).unwrap().expectation();
            if e.is_zero() {
                return false;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x1057);
        for _ in 0..16 {
            let f = sample::random_element(g, &mut rng);
            let e = f.adjoint().convolve(&f).unwrap().expectation();
            if e.is_zero() != f.is_zero() {
                return false;
            }
        }
        true
    }

    /// Whether `f` normalizes the diagonal: `f d_u f*` and `f* d_u f`
    /// stay diagonal for every unit.
    pub fn is_normalizer(&self, f: &AlgebraElement) -> bool {
        let adj = f.adjoint();
        for u in 0..self.groupoid.unit_count() {
            let du = self.unit_indicator(u);
            let fwd = f.convolve(&du).unwrap().convolve(&adj).unwrap();
            let back = adj.convolve(&du).unwrap().convolve(f).unwrap();
            if !fwd.is_diagonal() || !back.is_diagonal() {
                return false;
            }
        }
        true
    }

    /// The partial unit bijection of a normalizer: defined where
    /// `n* n` does not vanish on the diagonal, sending a unit to the
    /// target of the unique supporting arrow based there.
    pub fn alpha(&self, n: &AlgebraElement) -> Result<PartialUnitMap, Error> {
        if !self.is_normalizer(n) {
            return Err(Error::NotNormalizer);
        }
        let nn = n.adjoint().convolve(n).unwrap();
        let mut domain = BTreeSet::new();
        let mut map = BTreeMap::new();
        for u in 0..self.groupoid.unit_count() {
            if nn.coeff(self.groupoid.unit_arrow(u)).is_zero() {
                continue;
            }
            domain.insert(u);
            let mut targets: Vec<usize> = n
                .support()
                .into_iter()
                .filter(|&a| self.groupoid.source(a) == u)
                .map(|a| self.groupoid.target(a))
                .collect();
            targets.dedup();
            debug_assert_eq!(targets.len(), 1, "normalizer support is a bisection");
            map.insert(u, targets[0]);
        }
        let image: BTreeSet<usize> = map.values().cloned().collect();
        debug_assert_eq!(image.len(), map.len(), "alpha is injective on its domain");
        Ok(PartialUnitMap { domain, map })
    }

    /// The supporting arrow of a normalizer at a unit of its domain.
    pub fn germ_of(&self, n: &AlgebraElement, x: usize) -> Result<Germ, Error> {
        let alpha = self.alpha(n)?;
        if !alpha.domain.contains(&x) {
            return Err(Error::UnitOutsideDomain(
                self.groupoid.unit_id(x).to_string(),
            ));
        }
        let arrow = n
            .support()
            .into_iter()
            .find(|&a| self.groupoid.source(a) == x)
            .expect("domain membership guarantees a supporting arrow");
        Ok(Germ { unit: x, arrow })
    }

    /// Strict germ: supporting arrow together with its scalar.
    pub fn strict_germ_of(&self, n: &AlgebraElement, x: usize) -> Result<StrictGerm, Error> {
        let germ = self.germ_of(n, x)?;
        Ok(StrictGerm {
            arrow: germ.arrow,
            scalar: n.coeff(germ.arrow).clone(),
        })
    }

    /// Alpha-level germ equality at `x`: the two induced partial maps
    /// agree there.
    pub fn germ_equal_weyl(
        &self,
        n: &AlgebraElement,
        m: &AlgebraElement,
        x: usize,
    ) -> Result<bool, Error> {
        let gn = self.germ_of(n, x)?;
        let gm = self.germ_of(m, x)?;
        Ok(self.groupoid.target(gn.arrow) == self.groupoid.target(gm.arrow))
    }

    /// Column oracle for strict germ equality at `x`: the coefficients
    /// of `n` and `m` agree on every arrow based at `x`.
    pub fn strict_germ_oracle(
        &self,
        n: &AlgebraElement,
        m: &AlgebraElement,
        x: usize,
    ) -> Result<bool, Error> {
        self.germ_of(n, x)?;
        self.germ_of(m, x)?;
        Ok((0..self.groupoid.arrow_count())
            .filter(|&a| self.groupoid.source(a) == x)
            .all(|a| n.coeff(a) == m.coeff(a)))
    }

    /// Witness search for strict germ equality: does some diagonal `d`
    /// with `d(x) != 0` satisfy `n d = m d`? The unit indicator of `x`
    /// is always tried, followed by `samples` random diagonals not
    /// vanishing at `x`.
    pub fn strict_germ_witness_search(
        &self,
        n: &AlgebraElement,
        m: &AlgebraElement,
        x: usize,
        samples: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<bool, Error> {
        self.germ_of(n, x)?;
        self.germ_of(m, x)?;
        let mut candidates = vec![self.unit_indicator(x)];
        for _ in 0..samples {
            candidates.push(sample::random_diagonal_nonzero_at(&self.groupoid, x, rng));
        }
        for d in &candidates {
            debug_assert!(!d.coeff(self.groupoid.unit_arrow(x)).is_zero());
            if n.convolve(d).unwrap() == m.convolve(d).unwrap() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Strict germ equality at `x`, decided by the column oracle and
    /// cross-checked against the witness search.
    pub fn germ_equal_strict(
        &self,
        n: &AlgebraElement,
        m: &AlgebraElement,
        x: usize,
    ) -> Result<bool, Error> {
        let oracle = self.strict_germ_oracle(n, m, x)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e5d);
        let witness = self.strict_germ_witness_search(n, m, x, 8, &mut rng)?;
        assert_eq!(
            oracle, witness,
            "column oracle and witness search must agree"
        );
        Ok(oracle)
    }

    /// Strict germ multiplication through the algebra: convolve scaled
    /// witnesses and read the germ of the product off the composite's
    /// base unit. `None` when the germs are not composable.
    pub fn strict_multiply(
        &self,
        left: &StrictGerm,
        right: &StrictGerm,
    ) -> Result<Option<StrictGerm>, Error> {
        if left.scalar.is_zero() || right.scalar.is_zero() {
            return Err(Error::Malformed(
                "strict germ scalar must be nonzero".into(),
            ));
        }
        let ln = self.delta(left.arrow).scale(&left.scalar);
        let rn = self.delta(right.arrow).scale(&right.scalar);
        let prod = ln.convolve(&rn)?;
        if prod.is_zero() {
            return Ok(None);
        }
        let base = self.groupoid.source(right.arrow);
        Ok(Some(self.strict_germ_of(&prod, base)?))
    }

    /// Reconstructs the Weyl groupoid from germs of monomial witness
    /// normalizers, computing composition and inversion through the
    /// algebra, and returns it with the canonical comparison map.
    ///
    /// Requires every validation flag and principality; the germ-per-
    /// arrow canonical form needs unique supporting arrows.
    pub fn weyl_groupoid(&self) -> Result<WeylGroupoidResult, Error> {
        if !self.report.all() {
            return Err(Error::InvalidPair(format!("{:?}", self.report)));
        }
        if !self.is_principal() {
            return Err(Error::NotPrincipal);
        }
        let g = &self.groupoid;
        let n = g.arrow_count();
        let witnesses: Vec<AlgebraElement> = (0..n).map(|a| self.delta(a)).collect();
        // one germ per arrow, based at the arrow's source
        let germs: Vec<Germ> = (0..n)
            .map(|a| Germ {
                unit: g.source(a),
                arrow: a,
            })
            .collect();
        let locate = |el: &AlgebraElement, unit: usize| -> Result<usize, Error> {
            let germ = self.germ_of(el, unit)?;
            Ok(germ.arrow)
        };
        let mut compose = vec![None; n * n];
        for (bi, gb) in germs.iter().enumerate() {
            for (ai, ga) in germs.iter().enumerate() {
                let prod = witnesses[gb.arrow].convolve(&witnesses[ga.arrow])?;
                if prod.is_zero() {
                    continue;
                }
                compose[bi * n + ai] = Some(locate(&prod, ga.unit)?);
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for germ in &germs {
            let adj = witnesses[germ.arrow].adjoint();
            let image_unit = g.target(germ.arrow);
            inverse.push(locate(&adj, image_unit)?);
        }
        let unit_arrows: Vec<usize> = (0..g.unit_count())
            .map(|u| locate(&self.unit_indicator(u), u))
            .collect::<Result<_, _>>()?;
        let arrows: Vec<crate::groupoid::Arrow> = germs
            .iter()
            .map(|germ| crate::groupoid::Arrow {
                id: g.arrow(germ.arrow).id.clone(),
                source: germ.unit,
                target: g.target(germ.arrow),
            })
            .collect();
        let weyl =
            FiniteGroupoid::from_parts(g.units().to_vec(), arrows, unit_arrows, compose, inverse)?;
        let validation = weyl.validate();
        if !validation.is_valid() {
            return Err(Error::InvalidGroupoid(format!(
                "reconstructed germ groupoid broke an axiom: {:?}",
                validation.violations
            )));
        }
        let weyl = weyl.shared();
        let canonical = GroupoidMap {
            domain: weyl.clone(),
            codomain: g.clone(),
            unit_map: (0..g.unit_count()).collect(),
            arrow_map: germs.iter().map(|germ| germ.arrow).collect(),
        };
        if !canonical.is_isomorphism() {
            return Err(Error::InvalidPair(
                "canonical germ map is not an isomorphism".into(),
            ));
        }
        Ok(WeylGroupoidResult {
            groupoid: weyl,
            canonical,
            witnesses,
        })
    }
}

/// The strict germ system of a pair: classes are (arrow, nonzero
/// scalar) pairs multiplying componentwise, and forgetting the scalar
/// retracts onto the Weyl groupoid. At finite scale this witnesses the
/// triviality of the extension the scalars generate.
pub struct StrictGermSystem {
    pair: DiagonalPair,
    pub weyl: WeylGroupoidResult,
}

impl DiagonalPair {
    pub fn strict_germ_system(&self) -> Result<StrictGermSystem, Error> {
        Ok(StrictGermSystem {
            pair: self.clone(),
            weyl: self.weyl_groupoid()?,
        })
    }
}

impl StrictGermSystem {
    /// Componentwise multiplication, computed through the algebra.
    pub fn multiply(
        &self,
        left: &StrictGerm,
        right: &StrictGerm,
    ) -> Result<Option<StrictGerm>, Error> {
        self.pair.strict_multiply(left, right)
    }

    /// Forgetting the scalar lands in the Weyl germ groupoid.
    pub fn forget(&self, germ: &StrictGerm) -> usize {
        germ.arrow
    }

    /// Verifies on the witness family that multiplication is
    /// componentwise and that scalar-forgetting is a retraction onto
    /// the reconstructed groupoid.
    pub fn check(&self, scalars: &[GaussianRational]) -> Result<bool, Error> {
        let g = self.pair.groupoid();
        for a in 0..g.arrow_count() {
            for b in 0..g.arrow_count() {
                for la in scalars {
                    for lb in scalars {
                        if la.is_zero() || lb.is_zero() {
                            continue;
                        }
                        let left = StrictGerm {
                            arrow: b,
                            scalar: lb.clone(),
                        };
                        let right = StrictGerm {
                            arrow: a,
                            scalar: la.clone(),
                        };
                        let prod = self.multiply(&left, &right)?;
                        match g.compose(b, a) {
                            None => {
                                if prod.is_some() {
                                    return Ok(false);
                                }
                            }
                            Some(c) => {
                                let Some(prod) = prod else { return Ok(false) };
                                if prod.arrow != c || prod.scalar != lb * la {
                                    return Ok(false);
                                }
                                // forgetting the scalar matches the Weyl
                                // composition through the canonical map
                                let wc = self.weyl.groupoid.compose(b, a);
                                if wc.map(|w| self.weyl.canonical.arrow_map[w]) != Some(c) {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Convenience constructor mirroring the operation name used
/// throughout: the canonical pair over a groupoid.
pub fn make_pair(groupoid: Arc<FiniteGroupoid>) -> Result<DiagonalPair, Error> {
    DiagonalPair::new(groupoid)
}
