//! Quotients of diagonal pairs by invariant unit sets, the geometric
//! ideal correspondence, and the transfer of expectation faithfulness
//! and UEP along the quotient map and its extension-by-zero section.

use crate::algebra::{ideal_from_invariant, AlgebraElement, QuotientAlgebra};
use crate::error::Error;
use crate::linalg::SpanTracker;
use crate::morphism::{validate_morphism, PairMorphism};
use crate::pair::{DiagonalPair, BISECTION_CAP};
use crate::report::{LawReport, Report};
use crate::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// The quotient pair of an invariant unit set, with the quotient map as
/// a morphism and the verdicts on the induced expectation.
#[derive(Clone, Debug)]
pub struct QuotientPairResult {
    pub killed: BTreeSet<usize>,
    pub pair: DiagonalPair,
    pub map: PairMorphism,
    pub report: Report,
}

/// Builds the quotient pair over the reduction to the complement of
/// `killed`, together with the quotient morphism. Checks that the
/// induced expectation formula is well defined and faithful, that the
/// diagonal kernel is exactly the indicators in `killed`, and that the
/// map satisfies the (D)/(E)/(N) morphism conditions.
pub fn quotient_pair(
    pair: &DiagonalPair,
    killed: &BTreeSet<usize>,
) -> Result<QuotientPairResult, Error> {
    let g = pair.groupoid();
    if !g.is_invariant(killed) {
        return Err(Error::NotInvariant(format!("{killed:?}")));
    }
    if killed.len() == g.unit_count() && g.unit_count() > 0 {
        return Err(Error::EmptyQuotient);
    }
    let algebra = QuotientAlgebra::new(g, killed)?;
    let quotient = DiagonalPair::new(algebra.reduced.clone())?;
    let images = (0..g.arrow_count())
        .map(|a| match algebra.arrow_image(a) {
            Some(i) => quotient.delta(i),
            None => AlgebraElement::zero(&algebra.reduced),
        })
        .collect();
    let map = PairMorphism::new(pair.clone(), quotient.clone(), images)?;

    let mut report = Report::new("quotient-pair");
    // induced expectation is well defined: killed basis arrows have
    // q(E(d_a)) = 0, so q(E(a)) depends only on q(a)
    let well_defined = (0..g.arrow_count())
        .filter(|&a| algebra.arrow_image(a).is_none())
        .all(|a| map.apply(&pair.delta(a).expectation()).unwrap().is_zero());
    report.push(LawReport::named(
        "expectation-well-defined",
        "ker q maps into ker (q . E)",
        well_defined,
    ));
    // the induced formula agrees with the canonical expectation of the
    // quotient pair on the whole basis
    let intertwines = (0..g.arrow_count()).all(|a| {
        let lhs = map.apply(&pair.delta(a).expectation()).unwrap();
        let rhs = map.apply(&pair.delta(a)).unwrap().expectation();
        lhs == rhs
    });
    report.push(LawReport::named(
        "expectation-intertwines",
        "q . E_A = E_B . q on the basis",
        intertwines,
    ));
    // diagonal kernel is exactly the indicators inside the killed set
    let diag_kernel_exact = (0..g.unit_count()).all(|u| {
        let killed_unit = killed.contains(&u);
        let image = map.apply(&pair.unit_indicator(u)).unwrap();
        image.is_zero() == killed_unit
    });
    report.push(LawReport::named(
        "diagonal-kernel",
        "ker q meets the diagonal exactly in the killed indicators",
        diag_kernel_exact,
    ));
    // the diagonal maps onto the diagonal of the reduction
    let diag_onto = (0..quotient.groupoid().unit_count()).all(|v| {
        let down = quotient.unit_indicator(v);
        g.unit_index(quotient.groupoid().unit_id(v))
            .map(|u| map.apply(&pair.unit_indicator(u)).unwrap() == down)
            .unwrap_or(false)
    });
    report.push(LawReport::named(
        "diagonal-onto",
        "q maps the diagonal onto the diagonal of the reduction",
        diag_onto,
    ));
    report.push(LawReport::named(
        "quotient-pair-valid",
        "quotient pair passes its validation flags",
        quotient.report().all(),
    ));
    report.push(LawReport::named(
        "quotient-expectation-faithful",
        "induced expectation is faithful",
        quotient.report().faithful,
    ));
    let morphism_report = validate_morphism(&map);
    report.push(LawReport::named(
        "quotient-morphism",
        "quotient map satisfies (D), (E), (N)",
        morphism_report.is_morphism(),
    ));
    Ok(QuotientPairResult {
        killed: killed.clone(),
        pair: quotient,
        map,
        report,
    })
}

/// The three equivalent geometric-ideal conditions for an invariant
/// set, plus the canonical germ correspondence and normalizer lifting:
///
/// 1. the reduction to the complement is principal;
/// 2. the quotient pair validates as a diagonal pair;
/// 3. the ideal is generated by its diagonal part;
/// 4. the germ map identifies the quotient Weyl groupoid with the
///    reduction, and strict germ equality transfers both ways;
/// 5. images of normalizers normalize, and monomial normalizers of the
///    quotient lift to normalizers.
pub fn check_geom_ideals(
    pair: &DiagonalPair,
    killed: &BTreeSet<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<Report, Error> {
    let g = pair.groupoid();
    if !g.is_invariant(killed) {
        return Err(Error::NotInvariant(format!("{killed:?}")));
    }
    let mut report = Report::new("geom-ideals");
    let keep: BTreeSet<usize> = (0..g.unit_count())
        .filter(|u| !killed.contains(u))
        .collect();
    let reduction = g.reduction(&keep)?.shared();
    report.push(LawReport::named(
        "reduction-principal",
        "reduction to the complement is principal",
        reduction.is_principal(),
    ));

    let quotient = quotient_pair(pair, killed)?;
    report.push(LawReport::named(
        "quotient-diagonal-pair",
        "quotient pair validates",
        quotient.pair.report().all(),
    ));

    // the two-sided ideal generated by the killed unit indicators has
    // the same span as the ideal of all arrows over the killed set
    let ideal = ideal_from_invariant(g, killed)?;
    let dim = g.arrow_count();
    let mut generated = SpanTracker::new(dim);
    for &u in killed {
        generated.insert(pair.unit_indicator(u).coeffs().to_vec());
    }
    // close under left/right multiplication by basis arrows
    let mut frontier: Vec<AlgebraElement> =
        killed.iter().map(|&u| pair.unit_indicator(u)).collect();
    while let Some(el) = frontier.pop() {
        for a in 0..dim {
            for candidate in [pair.delta(a).convolve(&el)?, el.convolve(&pair.delta(a))?] {
                if candidate.is_zero() {
                    continue;
                }
                if generated.insert(candidate.coeffs().to_vec()) {
                    frontier.push(candidate);
                }
            }
        }
    }
    let span_matches = generated.rank() == ideal.support_arrows.len()
        && ideal
            .support_arrows
            .iter()
            .all(|&a| generated.contains(pair.delta(a).coeffs()));
    report.push(LawReport::named(
        "ideal-generated-by-diagonal",
        "ideal span equals the span generated by its diagonal part",
        span_matches,
    ));

    // canonical germ map: quotient Weyl groupoid vs the reduction
    let weyl = quotient.pair.weyl_groupoid()?;
    let germ_map_ok = {
        let w = &weyl.groupoid;
        w.arrow_count() == reduction.arrow_count()
            && (0..w.arrow_count()).all(|a| {
                reduction
                    .arrow_index(&w.arrow(a).id)
                    .map(|r| {
                        reduction.source(r) == w.source(a) && reduction.target(r) == w.target(a)
                    })
                    .unwrap_or(false)
            })
            && crate::iso::find_isomorphism(w, &reduction, usize::MAX)
                .ok()
                .flatten()
                .is_some()
    };
    report.push(LawReport::named(
        "quotient-weyl-is-reduction",
        "canonical germ map identifies quotient Weyl groupoid with the reduction",
        germ_map_ok,
    ));

    // strict germ equality transfers along q in both directions, on
    // random normalizer pairs arranged to share a germ base point
    let mut germ_transfer = true;
    if !keep.is_empty() {
        for _ in 0..12 {
            let n1 = sample::random_normalizer(g, rng);
            let mut n2 = if rng.gen_bool(0.5) {
                n1.clone()
            } else {
                sample::random_normalizer(g, rng)
            };
            if rng.gen_bool(0.3) {
                n2 = n2.scale(&sample::random_nonzero_scalar(rng));
            }
            let alpha1 = pair.alpha(&n1)?;
            let alpha2 = pair.alpha(&n2)?;
            let common: Vec<usize> = alpha1
                .domain
                .intersection(&alpha2.domain)
                .filter(|u| keep.contains(u))
                .cloned()
                .collect();
            let Some(&x) = common.first() else { continue };
            let upstairs = pair.germ_equal_strict(&n1, &n2, x)?;
            let q1 = quotient.map.apply(&n1)?;
            let q2 = quotient.map.apply(&n2)?;
            let x_down = quotient
                .pair
                .groupoid()
                .unit_index(g.unit_id(x))
                .expect("surviving units keep their ids");
            let downstairs = quotient.pair.germ_equal_strict(&q1, &q2, x_down)?;
            if upstairs != downstairs {
                germ_transfer = false;
                break;
            }
        }
    }
    report.push(LawReport::named(
        "germ-correspondence",
        "strict germ equality transfers along the quotient both ways",
        germ_transfer,
    ));

    // images of normalizers normalize the quotient diagonal
    let (bisections, _) = g.bisections_capped(BISECTION_CAP);
    let images_normalize = bisections.iter().all(|s| {
        let img = quotient
            .map
            .apply(&AlgebraElement::indicator(g, s))
            .unwrap();
        quotient.pair.is_normalizer(&img)
    });
    report.push(LawReport::named(
        "normalizer-images",
        "images of normalizers normalize the quotient diagonal",
        images_normalize,
    ));

    // monomial normalizers of the quotient lift: the indicator of the
    // same bisection upstairs is a normalizer mapping onto it
    let (down_bisections, _) = quotient.pair.groupoid().bisections_capped(BISECTION_CAP);
    let lifts_ok = down_bisections.iter().all(|s| {
        let down = AlgebraElement::indicator(quotient.pair.groupoid(), s);
        let up_arrows: Option<BTreeSet<usize>> = s
            .iter()
            .map(|&a| g.arrow_index(&quotient.pair.groupoid().arrow(a).id))
            .collect();
        let Some(up_arrows) = up_arrows else {
            return false;
        };
        let up = AlgebraElement::indicator(g, &up_arrows);
        pair.is_normalizer(&up) && quotient.map.apply(&up).unwrap() == down
    });
    report.push(LawReport::named(
        "normalizer-lifting",
        "monomial normalizers of the quotient lift to normalizers",
        lifts_ok,
    ));

    // the three conditions must agree
    let c1 = report.status("reduction-principal");
    let c2 = report.status("quotient-diagonal-pair");
    let c3 = report.status("ideal-generated-by-diagonal");
    report.push(LawReport::named(
        "conditions-equivalent",
        "the three geometric-ideal conditions agree",
        c1 == c2 && c2 == c3,
    ));
    Ok(report)
}

/// Transfer of faithfulness and UEP along the quotient map and its
/// extension-by-zero section: the section is a *-homomorphism splitting
/// the quotient and intertwining the expectations, which forces the
/// induced expectation to be faithful; the quotient diagonal keeps the
/// UEP via one-dimensional corners.
pub fn check_transfer_properties(
    pair: &DiagonalPair,
    killed: &BTreeSet<usize>,
) -> Result<Report, Error> {
    let g = pair.groupoid();
    let quotient = quotient_pair(pair, killed)?;
    let down = quotient.pair.groupoid().clone();
    let mut report = Report::new("transfer");

    // extension-by-zero section, matched by arrow id
    let section = |f: &AlgebraElement| -> AlgebraElement {
        let mut out = AlgebraElement::zero(g);
        for a in f.support() {
            let up = g
                .arrow_index(&down.arrow(a).id)
                .expect("reduction arrows come from the ambient groupoid");
            out.set_coeff(up, f.coeff(a).clone());
        }
        out
    };

    let surjective = (0..down.arrow_count()).all(|a| {
        let b = AlgebraElement::delta(&down, a);
        quotient.map.apply(&section(&b)).unwrap() == b
    });
    report.push(LawReport::named(
        "section-splits",
        "quotient composed with the section is the identity",
        surjective,
    ));

    let mut section_hom = true;
    for b in 0..down.arrow_count() {
        let sb = section(&AlgebraElement::delta(&down, b));
        if sb.adjoint() != section(&AlgebraElement::delta(&down, b).adjoint()) {
            section_hom = false;
            break;
        }
        for a in 0..down.arrow_count() {
            let prod = AlgebraElement::delta(&down, b)
                .convolve(&AlgebraElement::delta(&down, a))
                .unwrap();
            let lhs = section(&prod);
            let rhs = sb
                .convolve(&section(&AlgebraElement::delta(&down, a)))
                .unwrap();
            if lhs != rhs {
                section_hom = false;
                break;
            }
        }
        if !section_hom {
            break;
        }
    }
    report.push(LawReport::named(
        "section-star-hom",
        "the section is a *-homomorphism",
        section_hom,
    ));

    let intertwines = (0..down.arrow_count()).all(|a| {
        let b = AlgebraElement::delta(&down, a);
        section(&b).expectation() == section(&b.expectation())
    });
    report.push(LawReport::named(
        "section-intertwines",
        "E_A composed with the section equals the section of E_B",
        intertwines,
    ));

    report.push(LawReport::named(
        "faithfulness-transferred",
        "induced expectation downstairs is faithful",
        quotient.pair.report().faithful,
    ));
    report.push(LawReport::named(
        "uep-transferred",
        "quotient diagonal keeps the unique extension property",
        quotient.pair.report().uep,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteGroupoid;
    use crate::pair::make_pair;
    use rand::SeedableRng;

    fn g3_pair() -> DiagonalPair {
        make_pair(
            FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
                .unwrap()
                .shared(),
        )
        .unwrap()
    }

    #[test]
    fn quotient_kills_the_invariant_set() {
        let p = g3_pair();
        let q = quotient_pair(&p, &[2].into_iter().collect()).unwrap();
        assert!(q.report.all_pass(), "{:?}", q.report);
        assert_eq!(q.pair.groupoid().unit_count(), 2);
        assert!(q.map.apply(&p.unit_indicator(2)).unwrap().is_zero());
    }

    #[test]
    fn empty_set_gives_an_isomorphic_copy() {
        let p = g3_pair();
        let q = quotient_pair(&p, &BTreeSet::new()).unwrap();
        assert!(q.report.all_pass());
        assert_eq!(q.pair.groupoid().arrow_count(), p.groupoid().arrow_count());
        assert!(crate::morphism::check_injective(&q.map));
    }

    #[test]
    fn quotient_by_everything_is_rejected() {
        let p = g3_pair();
        let all: BTreeSet<usize> = (0..3).collect();
        assert!(matches!(quotient_pair(&p, &all), Err(Error::EmptyQuotient)));
    }

    #[test]
    fn non_invariant_sets_are_rejected() {
        let p = g3_pair();
        assert!(matches!(
            quotient_pair(&p, &[0].into_iter().collect()),
            Err(Error::NotInvariant(_))
        ));
    }

    #[test]
    fn geom_ideals_on_g3() {
        let p = g3_pair();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for killed in p.groupoid().invariant_subsets() {
            if killed.len() == p.groupoid().unit_count() {
                continue;
            }
            let report = check_geom_ideals(&p, &killed, &mut rng).unwrap();
            assert!(report.all_pass(), "killed {killed:?}: {report:?}");
        }
    }

    #[test]
    fn transfer_on_g3() {
        let p = g3_pair();
        let report = check_transfer_properties(&p, &[2].into_iter().collect()).unwrap();
        assert!(report.all_pass(), "{report:?}");
        let degenerate = check_transfer_properties(&p, &BTreeSet::new()).unwrap();
        assert!(degenerate.all_pass());
    }
}
