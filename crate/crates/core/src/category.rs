//! The category of groupoids with partial morphisms: triples of an
//! open subgroupoid domain, an injective functor, and a unit bijection.
//! Composition pulls the second domain back through the first functor.
//! On top of it, the contravariant Weyl functor (pairs to groupoids,
//! diagonal-isomorphism morphisms to triples) and the poset functor of
//! invariant open sets.

use crate::error::Error;
use crate::groupoid::FiniteGroupoid;
use crate::morphism::{validate_morphism, PairMorphism};
use crate::pair::DiagonalPair;
use crate::partial::partial_morphism;
use crate::quotient::quotient_pair;
use crate::report::{LawReport, Report};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// A partial morphism of groupoids `(K, rho, h)` from `domain` to
/// `codomain`: `K` is a wide subgroupoid of the domain given by its
/// arrow set, `rho` maps it injectively into the codomain, and `h` is a
/// unit bijection agreeing with `rho` on unit arrows.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialTriple {
    pub domain: Arc<FiniteGroupoid>,
    pub codomain: Arc<FiniteGroupoid>,
    pub k: BTreeSet<usize>,
    pub rho: BTreeMap<usize, usize>,
    pub h: Vec<usize>,
}

impl std::fmt::Debug for PartialTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PartialTriple({:?} -> {:?}, |K| = {})",
            self.domain,
            self.codomain,
            self.k.len()
        )
    }
}

impl PartialTriple {
    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        PartialTriple {
            domain: g.clone(),
            codomain: g.clone(),
            k: (0..g.arrow_count()).collect(),
            rho: (0..g.arrow_count()).map(|a| (a, a)).collect(),
            h: (0..g.unit_count()).collect(),
        }
    }

    /// Violated triple invariants, empty when the triple is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let d = &self.domain;
        let c = &self.codomain;
        if self.h.len() != d.unit_count() {
            out.push("h has the wrong length".into());
            return out;
        }
        {
            let image: BTreeSet<usize> = self.h.iter().cloned().collect();
            if image.len() != self.h.len() || self.h.iter().any(|&u| u >= c.unit_count()) {
                out.push("h is not a unit bijection".into());
            }
        }
        for u in 0..d.unit_count() {
            if !self.k.contains(&d.unit_arrow(u)) {
                out.push(format!("K misses the unit arrow of {}", d.unit_id(u)));
            }
        }
        for &a in &self.k {
            if !self.k.contains(&d.inverse(a)) {
                out.push(format!(
                    "K is not closed under inverse at {}",
                    d.arrow(a).id
                ));
            }
            for &b in &self.k {
                if let Some(p) = d.compose(b, a) {
                    if !self.k.contains(&p) {
                        out.push(format!(
                            "K is not closed under composition at {} . {}",
                            d.arrow(b).id,
                            d.arrow(a).id
                        ));
                    }
                }
            }
        }
        if self.rho.len() != self.k.len() || !self.k.iter().all(|a| self.rho.contains_key(a)) {
            out.push("rho is not defined exactly on K".into());
            return out;
        }
        {
            let image: BTreeSet<usize> = self.rho.values().cloned().collect();
            if image.len() != self.rho.len() {
                out.push("rho is not injective".into());
            }
        }
        for (&a, &img) in &self.rho {
            if img >= c.arrow_count() {
                out.push("rho image out of range".into());
                continue;
            }
            if c.source(img) != self.h[d.source(a)] || c.target(img) != self.h[d.target(a)] {
                out.push(format!("rho moves endpoints of {}", d.arrow(a).id));
            }
            if self.rho.get(&d.inverse(a)) != Some(&c.inverse(img)) {
                out.push(format!("rho breaks inversion at {}", d.arrow(a).id));
            }
        }
        for (&b, &ib) in &self.rho {
            for (&a, &ia) in &self.rho {
                if let Some(p) = self.domain.compose(b, a) {
                    let img = c.compose(ib, ia);
                    if img.is_none() || self.rho.get(&p) != img.as_ref() {
                        out.push(format!(
                            "rho breaks composition at {} . {}",
                            d.arrow(b).id,
                            d.arrow(a).id
                        ));
                    }
                }
            }
        }
        for u in 0..d.unit_count() {
            if self.rho.get(&d.unit_arrow(u)) != Some(&c.unit_arrow(self.h[u])) {
                out.push(format!("rho differs from h at unit {}", d.unit_id(u)));
            }
        }
        out
    }

    /// Composition: `second . first`, with domain
    /// `first^{-1}(K_2 meet image of K_1)`.
    pub fn compose(second: &PartialTriple, first: &PartialTriple) -> Result<PartialTriple, Error> {
        if first.codomain != second.domain {
            return Err(Error::GroupoidMismatch);
        }
        let k: BTreeSet<usize> = first
            .k
            .iter()
            .cloned()
            .filter(|a| second.k.contains(&first.rho[a]))
            .collect();
        let rho: BTreeMap<usize, usize> =
            k.iter().map(|&a| (a, second.rho[&first.rho[&a]])).collect();
        let h: Vec<usize> = first.h.iter().map(|&u| second.h[u]).collect();
        Ok(PartialTriple {
            domain: first.domain.clone(),
            codomain: second.codomain.clone(),
            k,
            rho,
            h,
        })
    }

    /// Whether `self` and `candidate` are mutually inverse. When they
    /// are, the domain is everything and `rho` is a bijection, which is
    /// asserted.
    pub fn is_partial_isomorphism(&self, candidate: &PartialTriple) -> bool {
        let Ok(back) = PartialTriple::compose(candidate, self) else {
            return false;
        };
        let Ok(forth) = PartialTriple::compose(self, candidate) else {
            return false;
        };
        let ok = back == PartialTriple::identity(&self.domain)
            && forth == PartialTriple::identity(&self.codomain);
        if ok {
            assert_eq!(self.k.len(), self.domain.arrow_count(), "K must be full");
            assert_eq!(
                self.rho.values().collect::<BTreeSet<_>>().len(),
                self.codomain.arrow_count(),
                "rho must be bijective"
            );
        }
        ok
    }
}

/// Grpd_part axioms on explicit samples: associativity of every
/// composable triple chain and the two identity laws.
pub fn check_category_axioms(chains: &[(PartialTriple, PartialTriple, PartialTriple)]) -> Report {
    let mut report = Report::new("grpdpart-axioms");
    for (i, (t3, t2, t1)) in chains.iter().enumerate() {
        let fixture = format!("chain {i}");
        let left = PartialTriple::compose(t3, &PartialTriple::compose(t2, t1).unwrap()).unwrap();
        let right = PartialTriple::compose(&PartialTriple::compose(t3, t2).unwrap(), t1).unwrap();
        report.push(LawReport::named("associativity", &fixture, left == right));
        let id_dom = PartialTriple::identity(&t1.domain);
        let id_cod = PartialTriple::identity(&t1.codomain);
        let left_id = PartialTriple::compose(&id_cod, t1).unwrap();
        let right_id = PartialTriple::compose(t1, &id_dom).unwrap();
        report.push(LawReport::named(
            "identity-laws",
            &fixture,
            left_id == *t1 && right_id == *t1,
        ));
    }
    report
}

/// The Weyl functor on objects: the reconstructed germ groupoid.
pub fn weyl_object(pair: &DiagonalPair) -> Result<Arc<FiniteGroupoid>, Error> {
    Ok(pair.weyl_groupoid()?.groupoid)
}

/// The Weyl functor on morphisms: the induced partial triple, running
/// contravariantly from the target's Weyl groupoid to the source's.
pub fn weyl_morphism(m: &PairMorphism) -> Result<PartialTriple, Error> {
    let data = partial_morphism(m)?;
    Ok(PartialTriple {
        domain: data.target_weyl.groupoid.clone(),
        codomain: data.source_weyl.groupoid.clone(),
        k: data.h_arrows.clone(),
        rho: data.rho.clone(),
        h: data.h.clone(),
    })
}

/// Contravariant functoriality on a composable pair: the triple of the
/// composite equals the reversed composition of the triples.
pub fn check_functoriality(phi: &PairMorphism, psi: &PairMorphism) -> Result<Report, Error> {
    let mut report = Report::new("weyl-functoriality");
    let composite = PairMorphism::compose(psi, phi)?;
    let w_composite = weyl_morphism(&composite)?;
    let w_phi = weyl_morphism(phi)?;
    let w_psi = weyl_morphism(psi)?;
    let chained = PartialTriple::compose(&w_phi, &w_psi)?;
    report.push(LawReport::named(
        "contravariance",
        "W(psi . phi) = W(phi) . W(psi)",
        w_composite == chained,
    ));
    let triple_valid = w_composite.validate().is_empty() && chained.validate().is_empty();
    report.push(LawReport::named(
        "triples-valid",
        "both sides are valid partial triples",
        triple_valid,
    ));
    Ok(report)
}

/// The poset functor of invariant sets: objects are quotient pairs of
/// proper invariant subsets, arrows are the connecting quotient
/// morphisms. The full unit set is excluded so every object keeps a
/// unit.
pub struct PosetFunctor {
    pub base: DiagonalPair,
    pub objects: BTreeMap<BTreeSet<usize>, DiagonalPair>,
}

pub fn poset_functor(pair: &DiagonalPair) -> Result<PosetFunctor, Error> {
    let mut objects = BTreeMap::new();
    for u in pair.groupoid().invariant_subsets() {
        if u.len() == pair.groupoid().unit_count() && !u.is_empty() {
            continue;
        }
        let q = quotient_pair(pair, &u)?;
        objects.insert(u, q.pair);
    }
    Ok(PosetFunctor {
        base: pair.clone(),
        objects,
    })
}

impl PosetFunctor {
    /// The connecting morphism from the object of `u` to the object of
    /// `v`, for `u` a subset of `v`: kill what remains of `v` in the
    /// reduction by `u`.
    pub fn connecting(
        &self,
        u: &BTreeSet<usize>,
        v: &BTreeSet<usize>,
    ) -> Result<PairMorphism, Error> {
        if !u.is_subset(v) {
            return Err(Error::Malformed("connecting map needs u inside v".into()));
        }
        let source = self
            .objects
            .get(u)
            .ok_or_else(|| Error::Malformed("u is not an object".into()))?;
        let base = self.base.groupoid();
        let survivor = source.groupoid();
        // reindex v \ u into the reduced unit space
        let killed: BTreeSet<usize> = v
            .difference(u)
            .map(|&w| {
                survivor
                    .unit_index(base.unit_id(w))
                    .expect("units outside u survive the reduction by u")
            })
            .collect();
        Ok(quotient_pair(source, &killed)?.map)
    }

    /// Functor laws over every chain `u` in `v` in `w` of objects:
    /// connecting maps compose exactly, identities are identities, and
    /// each arrow validates as a morphism.
    pub fn check(&self) -> Result<Report, Error> {
        let mut report = Report::new("poset-functor");
        let sets: Vec<&BTreeSet<usize>> = self.objects.keys().collect();
        for &u in &sets {
            let id = self.connecting(u, u)?;
            report.push(LawReport::named(
                "identity",
                &format!("U = {u:?}"),
                id == PairMorphism::identity(&self.objects[u]),
            ));
        }
        for &u in &sets {
            for &v in &sets {
                if !u.is_subset(v) {
                    continue;
                }
                let uv = self.connecting(u, v)?;
                report.push(LawReport::named(
                    "arrow-is-morphism",
                    &format!("{u:?} in {v:?}"),
                    validate_morphism(&uv).is_morphism(),
                ));
                for &w in &sets {
                    if !v.is_subset(w) {
                        continue;
                    }
                    let vw = self.connecting(v, w)?;
                    let uw = self.connecting(u, w)?;
                    let composed = PairMorphism::compose(&vw, &uv)?;
                    report.push(LawReport::named(
                        "chain-coherence",
                        &format!("{u:?} in {v:?} in {w:?}"),
                        composed == uw,
                    ));
                }
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::{build_morphism, MorphismSpec};
    use crate::pair::make_pair;

    fn embed(sub: &Arc<FiniteGroupoid>, ambient: &Arc<FiniteGroupoid>) -> PairMorphism {
        build_morphism(&MorphismSpec::Embedding {
            sub: sub.clone(),
            ambient: ambient.clone(),
        })
        .unwrap()
    }

    #[test]
    fn identity_triple_is_valid_and_neutral() {
        let g = FiniteGroupoid::full_relation(2).shared();
        let id = PartialTriple::identity(&g);
        assert!(id.validate().is_empty());
        let both = PartialTriple::compose(&id, &id).unwrap();
        assert_eq!(both, id);
        assert!(id.is_partial_isomorphism(&id));
    }

    #[test]
    fn weyl_functor_on_identity() {
        let p = make_pair(FiniteGroupoid::full_relation(2).shared()).unwrap();
        let id = PairMorphism::identity(&p);
        let triple = weyl_morphism(&id).unwrap();
        assert!(triple.validate().is_empty());
        assert_eq!(triple, PartialTriple::identity(&triple.domain.clone()));
    }

    #[test]
    fn functoriality_on_nested_embeddings() {
        let t3 = FiniteGroupoid::trivial(3).shared();
        let g3 = FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
            .unwrap()
            .shared();
        let r3 = FiniteGroupoid::full_relation(3).shared();
        let phi = embed(&t3, &g3);
        let psi = embed(&g3, &r3);
        let report = check_functoriality(&phi, &psi).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn embeddings_are_not_invertible() {
        let t2 = FiniteGroupoid::trivial(2).shared();
        let r2 = FiniteGroupoid::full_relation(2).shared();
        let em = embed(&t2, &r2);
        let triple = weyl_morphism(&em).unwrap();
        // a proper-K triple can never be invertible: try every triple
        // back and fail
        assert!(triple.k.len() < triple.domain.arrow_count());
        let id_back = PartialTriple::identity(&triple.codomain);
        assert!(!triple.is_partial_isomorphism(&id_back));
    }

    #[test]
    fn poset_functor_on_two_orbits() {
        let g3 = FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
            .unwrap()
            .shared();
        let pair = make_pair(g3).unwrap();
        let q = poset_functor(&pair).unwrap();
        // invariant sets: {}, {2}, {0,1}; the full set is excluded
        assert_eq!(q.objects.len(), 3);
        let report = q.check().unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn category_axioms_on_triples_from_embeddings() {
        let t3 = FiniteGroupoid::trivial(3).shared();
        let g3 = FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
            .unwrap()
            .shared();
        let r3 = FiniteGroupoid::full_relation(3).shared();
        let w1 = weyl_morphism(&embed(&g3, &r3)).unwrap();
        let w2 = weyl_morphism(&embed(&t3, &g3)).unwrap();
        let w3 = PartialTriple::identity(&w2.codomain);
        let report = check_category_axioms(&[(w3, w2, w1)]);
        assert!(report.all_pass(), "{report:?}");
    }
}
