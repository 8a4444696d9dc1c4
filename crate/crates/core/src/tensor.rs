//! Tensor products of diagonal pairs over product groupoids, tensor
//! products of morphisms, and the symmetric monoidal coherence checks
//! (pentagon, triangle, hexagon, symmetry involution).

use crate::algebra::{kronecker, AlgebraElement};
use crate::error::Error;
use crate::groupoid::{FiniteGroupoid, GroupoidMap};
use crate::iso::find_isomorphism;
use crate::morphism::{build_morphism, validate_morphism, MorphismSpec, PairMorphism};
use crate::pair::DiagonalPair;
use crate::report::{LawReport, Report};
use std::sync::Arc;

/// The tensor pair of two diagonal pairs: the canonical pair over the
/// product groupoid.
#[derive(Clone, Debug)]
pub struct TensorPair {
    pub pair: DiagonalPair,
    pub left: DiagonalPair,
    pub right: DiagonalPair,
}

pub fn tensor_pair(left: &DiagonalPair, right: &DiagonalPair) -> Result<TensorPair, Error> {
    let product = left.groupoid().product(right.groupoid()).shared();
    Ok(TensorPair {
        pair: DiagonalPair::new(product)?,
        left: left.clone(),
        right: right.clone(),
    })
}

impl TensorPair {
    /// Kronecker product of elements of the two factors.
    pub fn kron(&self, f: &AlgebraElement, g: &AlgebraElement) -> Result<AlgebraElement, Error> {
        kronecker(f, g, self.pair.groupoid())
    }

    /// The product expectation agrees with the tensor of the factor
    /// expectations on all monomials, and is faithful.
    pub fn check_expectation(&self) -> Report {
        let mut report = Report::new("tensor-expectation");
        let g1 = self.left.groupoid();
        let g2 = self.right.groupoid();
        let mut matches = true;
        for a in 0..g1.arrow_count() {
            for b in 0..g2.arrow_count() {
                let mono = self
                    .kron(&self.left.delta(a), &self.right.delta(b))
                    .unwrap();
                let lhs = mono.expectation();
                let rhs = self
                    .kron(
                        &self.left.delta(a).expectation(),
                        &self.right.delta(b).expectation(),
                    )
                    .unwrap();
                if lhs != rhs {
                    matches = false;
                }
            }
        }
        report.push(LawReport::named(
            "expectation-kronecker",
            "product expectation equals the tensor of expectations on monomials",
            matches,
        ));
        report.push(LawReport::named(
            "expectation-faithful",
            "tensor expectation is faithful",
            self.pair.report().faithful,
        ));
        report
    }

    /// The Weyl groupoid of the tensor pair against the product of the
    /// factor Weyl groupoids: structural equality of the reconstruction
    /// plus an explicit isomorphism search.
    pub fn check_weyl_product(&self, iso_cap: usize) -> Result<Report, Error> {
        let mut report = Report::new("tensor-weyl");
        let weyl_tensor = self.pair.weyl_groupoid()?;
        let weyl_left = self.left.weyl_groupoid()?;
        let weyl_right = self.right.weyl_groupoid()?;
        let product = weyl_left.groupoid.product(&weyl_right.groupoid).shared();
        let structural = *weyl_tensor.groupoid == *product;
        report.push(LawReport::named(
            "weyl-product-structural",
            "reconstructed tensor Weyl groupoid equals the product of reconstructions",
            structural,
        ));
        let iso = find_isomorphism(&weyl_tensor.groupoid, &product, iso_cap)?;
        report.push(LawReport::named(
            "weyl-product-isomorphic",
            "isomorphism search certifies the identification",
            iso.is_some(),
        ));
        Ok(report)
    }
}

/// Componentwise tensor of two morphisms between the tensor pairs.
pub fn tensor_morphism(left: &PairMorphism, right: &PairMorphism) -> Result<PairMorphism, Error> {
    let source = tensor_pair(left.source(), right.source())?;
    let target = tensor_pair(left.target(), right.target())?;
    let m2 = right.source().groupoid().arrow_count();
    let mut images = Vec::with_capacity(source.pair.groupoid().arrow_count());
    for a in 0..left.source().groupoid().arrow_count() {
        for b in 0..m2 {
            images.push(target.kron(left.basis_image(a), right.basis_image(b))?);
        }
    }
    PairMorphism::new(source.pair, target.pair, images)
}

/// The unit object of the monoidal structure: the pair over the
/// one-unit trivial groupoid.
pub fn unit_object() -> DiagonalPair {
    DiagonalPair::new(FiniteGroupoid::trivial(1).shared()).expect("trivial groupoid is valid")
}

fn iso_morphism(map: GroupoidMap) -> Result<PairMorphism, Error> {
    build_morphism(&MorphismSpec::Isomorphism { map })
}

/// The associator `(G1 x G2) x G3 -> G1 x (G2 x G3)` as a groupoid
/// isomorphism. The flattened arrow indexing is identical on both
/// sides, so the tables are identities; only the labels differ.
pub fn associator_map(
    g1: &Arc<FiniteGroupoid>,
    g2: &Arc<FiniteGroupoid>,
    g3: &Arc<FiniteGroupoid>,
) -> GroupoidMap {
    let left = g1.product(g2).product(g3).shared();
    let right = g1.product(&g2.product(g3)).shared();
    GroupoidMap {
        unit_map: (0..left.unit_count()).collect(),
        arrow_map: (0..left.arrow_count()).collect(),
        domain: left,
        codomain: right,
    }
}

/// Left unitor `T1 x G -> G`.
pub fn left_unitor_map(g: &Arc<FiniteGroupoid>) -> GroupoidMap {
    let one = FiniteGroupoid::trivial(1).shared();
    let domain = one.product(g).shared();
    GroupoidMap {
        unit_map: (0..g.unit_count()).collect(),
        arrow_map: (0..g.arrow_count()).collect(),
        domain,
        codomain: g.clone(),
    }
}

/// Right unitor `G x T1 -> G`.
pub fn right_unitor_map(g: &Arc<FiniteGroupoid>) -> GroupoidMap {
    let one = FiniteGroupoid::trivial(1).shared();
    let domain = g.product(&one).shared();
    GroupoidMap {
        unit_map: (0..g.unit_count()).collect(),
        arrow_map: (0..g.arrow_count()).collect(),
        domain,
        codomain: g.clone(),
    }
}

/// Symmetry `G1 x G2 -> G2 x G1`.
pub fn symmetry_map(g1: &Arc<FiniteGroupoid>, g2: &Arc<FiniteGroupoid>) -> GroupoidMap {
    let domain = g1.product(g2).shared();
    let codomain = g2.product(g1).shared();
    let n1 = g1.unit_count();
    let n2 = g2.unit_count();
    let m1 = g1.arrow_count();
    let m2 = g2.arrow_count();
    let mut unit_map = vec![0; n1 * n2];
    for u in 0..n1 {
        for v in 0..n2 {
            unit_map[u * n2 + v] = v * n1 + u;
        }
    }
    let mut arrow_map = vec![0; m1 * m2];
    for a in 0..m1 {
        for b in 0..m2 {
            arrow_map[a * m2 + b] = b * m1 + a;
        }
    }
    GroupoidMap {
        domain,
        codomain,
        unit_map,
        arrow_map,
    }
}

/// Symmetric monoidal coherence on a triple of pairs: the structural
/// maps validate as morphisms, the pentagon (with a fourth factor),
/// triangle and hexagon composites agree on every basis element, the
/// symmetry squares to the identity, and composites of valid morphisms
/// stay valid (closure of the category under composition).
pub fn check_monoidal(
    p1: &DiagonalPair,
    p2: &DiagonalPair,
    p3: &DiagonalPair,
    p4: &DiagonalPair,
) -> Result<Report, Error> {
    let mut report = Report::new("monoidal");
    let (g1, g2, g3, g4) = (
        p1.groupoid().clone(),
        p2.groupoid().clone(),
        p3.groupoid().clone(),
        p4.groupoid().clone(),
    );

    // structural maps validate as pair morphisms
    let assoc = iso_morphism(associator_map(&g1, &g2, &g3))?;
    let lu = iso_morphism(left_unitor_map(&g1))?;
    let ru = iso_morphism(right_unitor_map(&g1))?;
    let sym = iso_morphism(symmetry_map(&g1, &g2))?;
    for (name, m) in [
        ("associator", &assoc),
        ("left-unitor", &lu),
        ("right-unitor", &ru),
        ("symmetry", &sym),
    ] {
        let r = validate_morphism(m);
        report.push(LawReport::named(
            &format!("structural-{name}"),
            "structural map is a morphism with diagonal isomorphism",
            r.is_morphism() && r.diag_iso,
        ));
    }

    // pentagon on four factors
    let id = |p: &DiagonalPair| PairMorphism::identity(p);
    let a123 = iso_morphism(associator_map(&g1, &g2, &g3))?;
    let g23 = g2.product(&g3).shared();
    let g12 = g1.product(&g2).shared();
    let a1_23_4 = iso_morphism(associator_map(&g1, &g23, &g4))?;
    let a12_3_4 = iso_morphism(associator_map(&g12, &g3, &g4))?;
    let g34 = g3.product(&g4).shared();
    let a1_2_34 = iso_morphism(associator_map(&g1, &g2, &g34))?;
    let a234 = iso_morphism(associator_map(&g2, &g3, &g4))?;
    // route one: a_{1,2,34} . a_{12,3,4}
    let route1 = PairMorphism::compose(&a1_2_34, &a12_3_4)?;
    // route two: (id1 x a_{2,3,4}) . a_{1,23,4} . (a_{1,2,3} x id4)
    let left_leg = tensor_morphism(&a123, &id(p4))?;
    let right_leg = tensor_morphism(&id(p1), &a234)?;
    let route2 = PairMorphism::compose(&right_leg, &PairMorphism::compose(&a1_23_4, &left_leg)?)?;
    report.push(LawReport::named(
        "pentagon",
        "the two re-association routes agree on every basis element",
        route1 == route2,
    ));

    // triangle: (id1 x lu_2) . a_{1,T1,2} = ru_1 x id2
    let one = unit_object();
    let a1_t_2 = iso_morphism(associator_map(&g1, one.groupoid(), &g2))?;
    let lu2 = iso_morphism(left_unitor_map(&g2))?;
    let ru1 = iso_morphism(right_unitor_map(&g1))?;
    let tri_left = PairMorphism::compose(&tensor_morphism(&id(p1), &lu2)?, &a1_t_2)?;
    let tri_right = tensor_morphism(&ru1, &id(p2))?;
    report.push(LawReport::named(
        "triangle",
        "unitor and associator composites agree",
        tri_left == tri_right,
    ));

    // hexagon: a_{2,3,1} . s_{1,23} . a_{1,2,3} = (id2 x s_{1,3}) . a_{2,1,3} . (s_{1,2} x id3)
    let s1_23 = iso_morphism(symmetry_map(&g1, &g23))?;
    let a231 = iso_morphism(associator_map(&g2, &g3, &g1))?;
    let hex_left = PairMorphism::compose(&a231, &PairMorphism::compose(&s1_23, &a123)?)?;
    let s12 = iso_morphism(symmetry_map(&g1, &g2))?;
    let a213 = iso_morphism(associator_map(&g2, &g1, &g3))?;
    let s13 = iso_morphism(symmetry_map(&g1, &g3))?;
    let hex_right = PairMorphism::compose(
        &tensor_morphism(&id(p2), &s13)?,
        &PairMorphism::compose(&a213, &tensor_morphism(&s12, &id(p3))?)?,
    )?;
    report.push(LawReport::named(
        "hexagon",
        "the symmetry braids compatibly with the associator",
        hex_left == hex_right,
    ));

    // symmetry twice is the identity
    let s21 = iso_morphism(symmetry_map(&g2, &g1))?;
    let twice = PairMorphism::compose(&s21, &sym)?;
    let tensor12 = tensor_pair(p1, p2)?;
    report.push(LawReport::named(
        "symmetry-involution",
        "symmetry composed with its swap is the identity",
        twice == PairMorphism::identity(&tensor12.pair),
    ));

    // category closure: composites of valid morphisms stay valid
    let closure = validate_morphism(&route1).is_morphism()
        && validate_morphism(&hex_left).is_morphism()
        && validate_morphism(&twice).is_morphism();
    report.push(LawReport::named(
        "composition-closure",
        "composites of (D)(E)(N) morphisms satisfy (D)(E)(N)",
        closure,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::make_pair;

    fn pair_of(g: FiniteGroupoid) -> DiagonalPair {
        make_pair(g.shared()).unwrap()
    }

    #[test]
    fn tensor_of_pair_groupoids() {
        let r2 = pair_of(FiniteGroupoid::full_relation(2));
        let tensor = tensor_pair(&r2, &r2).unwrap();
        assert!(tensor.pair.report().all());
        assert!(tensor.check_expectation().all_pass());
        let weyl = tensor.check_weyl_product(usize::MAX).unwrap();
        assert!(weyl.all_pass(), "{weyl:?}");
        // R2 x R2 is isomorphic to the full relation on 4 points
        let r4 = FiniteGroupoid::full_relation(4).shared();
        assert!(find_isomorphism(tensor.pair.groupoid(), &r4, usize::MAX)
            .unwrap()
            .is_some());
    }

    #[test]
    fn unit_object_is_neutral() {
        let g3 = pair_of(FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]]).unwrap());
        let one = unit_object();
        let tensor = tensor_pair(&g3, &one).unwrap();
        assert!(
            find_isomorphism(tensor.pair.groupoid(), g3.groupoid(), usize::MAX)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn kron_of_swaps_squares_to_identity() {
        let r2 = pair_of(FiniteGroupoid::full_relation(2));
        let g = r2.groupoid();
        let swap = r2
            .delta(g.arrow_index("(0,1)").unwrap())
            .add(&r2.delta(g.arrow_index("(1,0)").unwrap()))
            .unwrap();
        let tensor = tensor_pair(&r2, &r2).unwrap();
        let s = tensor.kron(&swap, &swap).unwrap();
        let squared = s.convolve(&s).unwrap();
        assert_eq!(squared, AlgebraElement::one(tensor.pair.groupoid()));
    }

    #[test]
    fn tensor_of_embeddings_is_monomial_morphism() {
        let t2 = FiniteGroupoid::trivial(2).shared();
        let r2 = FiniteGroupoid::full_relation(2).shared();
        let em = build_morphism(&MorphismSpec::Embedding {
            sub: t2.clone(),
            ambient: r2.clone(),
        })
        .unwrap();
        let tensored = tensor_morphism(&em, &em).unwrap();
        assert!(tensored.is_monomial());
        assert!(validate_morphism(&tensored).is_morphism());
    }
}
