//! Command implementations. Every command returns its rendered output
//! together with a pass/fail verdict; input problems surface as
//! [`CliError`] and map to exit code 2 in `main`.

use crate::document::{unit_set, GraphDocument, GroupoidDocument, MorphismDocument};
use crate::dot;
use crate::graph::{graph_quotient_check, Graph};
use crate::CliError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::BTreeSet;
use weylkit_core::category::{poset_functor, weyl_morphism, PartialTriple};
use weylkit_core::comparison::check_dynamical_comparison_with_quotients;
use weylkit_core::iso::find_isomorphism;
use weylkit_core::morphism::{validate_morphism, MorphismSpec};
use weylkit_core::pair::DiagonalPair;
use weylkit_core::partial::check_partial_morphism_theorem;
use weylkit_core::quotient::{check_geom_ideals, check_transfer_properties, quotient_pair};
use weylkit_core::report::{LawReport, Report};
use weylkit_core::tensor::tensor_pair;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

pub struct Outcome {
    pub rendered: String,
    pub all_pass: bool,
}

fn render_reports(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let value = serde_json::to_value(reports).expect("reports serialize");
            format!(
                "{}\n",
                serde_json::to_string_pretty(&value).expect("value prints")
            )
        }
        _ => reports.iter().map(Report::render_text).collect::<String>(),
    }
}

fn outcome(reports: Vec<Report>, format: Format) -> Outcome {
    Outcome {
        all_pass: reports.iter().all(Report::all_pass),
        rendered: render_reports(&reports, format),
    }
}

fn pair_from(doc: &GroupoidDocument) -> Result<DiagonalPair, CliError> {
    let g = doc.to_groupoid()?;
    DiagonalPair::new(g).map_err(|e| CliError::Input(e.to_string()))
}

/// `validate`: groupoid axioms, the topological note, isotropy/orbit
/// summary, and the diagonal-pair flags.
pub fn validate(doc: &GroupoidDocument, format: Format) -> Result<Outcome, CliError> {
    let g = doc.to_groupoid()?;
    let validation = g.validate();
    let mut report = Report::new("validate");
    report.push(LawReport::named(
        "groupoid-axioms",
        &format!(
            "{} units, {} arrows; {}",
            g.unit_count(),
            g.arrow_count(),
            validation.note
        ),
        validation.is_valid(),
    ));
    for v in &validation.violations {
        report.push(LawReport::with_counterexample(
            "axiom-violation",
            "groupoid axioms",
            format!("{v:?}"),
        ));
    }
    if validation.is_valid() {
        let iso = g.isotropy_report();
        report.push(LawReport::named(
            "principal",
            &format!("effective = {}", iso.is_effective),
            iso.is_principal,
        ));
        let orbits = g.orbits();
        report.push(LawReport::named(
            "orbits",
            &format!(
                "{} orbit(s), {} invariant subset(s)",
                orbits.len(),
                g.invariant_subsets().len()
            ),
            true,
        ));
        let pair = DiagonalPair::new(g.clone()).map_err(|e| CliError::Input(e.to_string()))?;
        let flags = pair.report();
        report.push(LawReport::named(
            "diagonal-pair",
            &format!(
                "abelian={} masa={} regular={} uep={} faithful={}",
                flags.abelian, flags.masa, flags.regular, flags.uep, flags.faithful
            ),
            flags.all(),
        ));
    }
    Ok(outcome(vec![report], format))
}

/// `weyl`: reconstructs the Weyl groupoid and prints the germ table
/// with the canonical identification. A pair that fails its validation
/// flags is a failed law, not an input error.
pub fn weyl(doc: &GroupoidDocument, format: Format) -> Result<Outcome, CliError> {
    let pair = pair_from(doc)?;
    if !pair.report().all() || !pair.is_principal() {
        let mut report = Report::new("weyl");
        report.push(LawReport::with_counterexample(
            "reconstruction",
            "pair validation",
            format!("{:?}, principal = {}", pair.report(), pair.is_principal()),
        ));
        return Ok(outcome(vec![report], format));
    }
    let weyl = pair
        .weyl_groupoid()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let mut report = Report::new("weyl");
    report.push(LawReport::named(
        "reconstruction",
        &format!(
            "{} germs over {} units",
            weyl.groupoid.arrow_count(),
            weyl.groupoid.unit_count()
        ),
        weyl.canonical.is_isomorphism(),
    ));
    let rendered = match format {
        Format::Json => {
            let germs: Vec<_> = (0..weyl.groupoid.arrow_count())
                .map(|a| {
                    json!({
                        "germ": weyl.groupoid.arrow(a).id,
                        "source": weyl.groupoid.unit_id(weyl.groupoid.source(a)),
                        "target": weyl.groupoid.unit_id(weyl.groupoid.target(a)),
                        "canonical_arrow": pair.groupoid().arrow(weyl.canonical.arrow_map[a]).id,
                        "witness": format!("{:?}", weyl.witnesses[a]),
                    })
                })
                .collect();
            let value = json!({
                "report": serde_json::to_value(&report).expect("report serializes"),
                "germs": germs,
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&value).expect("value prints")
            )
        }
        Format::Dot => dot::render_weyl(&weyl, "weyl"),
        Format::Text => {
            let mut out = report.render_text();
            for a in 0..weyl.groupoid.arrow_count() {
                out.push_str(&format!(
                    "  germ {} : {} -> {}  (canonical arrow {}, witness {:?})\n",
                    weyl.groupoid.arrow(a).id,
                    weyl.groupoid.unit_id(weyl.groupoid.source(a)),
                    weyl.groupoid.unit_id(weyl.groupoid.target(a)),
                    pair.groupoid().arrow(weyl.canonical.arrow_map[a]).id,
                    weyl.witnesses[a],
                ))
            }
            out
        }
    };
    Ok(Outcome {
        rendered,
        all_pass: report.all_pass(),
    })
}

/// `ideals`: lists invariant subsets with their diagonal intersections
/// and runs the geometric-ideal checks for each.
pub fn ideals(doc: &GroupoidDocument, seed: u64, format: Format) -> Result<Outcome, CliError> {
    let pair = pair_from(doc)?;
    let g = pair.groupoid().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::with_seed("ideals", seed);
    let subsets = g.invariant_subsets();
    report.push(LawReport::named(
        "ideal-count",
        &format!(
            "{} invariant subsets = 2^{} orbits",
            subsets.len(),
            g.orbits().len()
        ),
        subsets.len() == 1 << g.orbits().len(),
    ));
    for u in &subsets {
        let ideal = weylkit_core::algebra::ideal_from_invariant(&g, u)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let names: Vec<&str> = u.iter().map(|&x| g.unit_id(x)).collect();
        let diagonal: Vec<&str> = ideal
            .support_arrows
            .iter()
            .filter(|&&a| g.is_unit_arrow(a))
            .map(|&a| g.arrow(a).id.as_str())
            .collect();
        report.push(LawReport::named(
            "invariant-set",
            &format!(
                "U = {{{}}}: {} support arrows, diagonal intersection {{{}}}",
                names.join(","),
                ideal.support_arrows.len(),
                diagonal.join(",")
            ),
            true,
        ));
    }
    let mut reports = vec![report];
    for u in &subsets {
        if u.len() == g.unit_count() && !u.is_empty() {
            continue;
        }
        let names: Vec<&str> = u.iter().map(|&x| g.unit_id(x)).collect();
        let mut sub =
            check_geom_ideals(&pair, u, &mut rng).map_err(|e| CliError::Input(e.to_string()))?;
        for check in sub.checks.iter_mut() {
            check.fixture = format!("U = {{{}}}: {}", names.join(","), check.fixture);
        }
        reports.push(sub);
    }
    Ok(outcome(reports, format))
}

/// `quotient --set U`: builds the quotient pair, prints its document,
/// and verifies the quotient and transfer properties.
pub fn quotient(
    doc: &GroupoidDocument,
    set: &[String],
    format: Format,
) -> Result<(Outcome, GroupoidDocument), CliError> {
    let pair = pair_from(doc)?;
    let killed = unit_set(pair.groupoid(), set)?;
    let result = quotient_pair(&pair, &killed).map_err(|e| CliError::Input(e.to_string()))?;
    let transfer =
        check_transfer_properties(&pair, &killed).map_err(|e| CliError::Input(e.to_string()))?;
    let quotient_doc = GroupoidDocument::from_groupoid(result.pair.groupoid());
    let out = outcome(vec![result.report, transfer], format);
    Ok((out, quotient_doc))
}

/// `morphism-check`: validates the morphism conditions; when the
/// diagonal restriction is an isomorphism, also verifies the partial
/// morphism construction. Failed conditions are named.
pub fn morphism_check(doc: &MorphismDocument, format: Format) -> Result<Outcome, CliError> {
    let m = doc.to_morphism()?;
    let verdict = validate_morphism(&m);
    let mut report = Report::new("morphism-check");
    report.push(LawReport::named(
        "star-homomorphism",
        "multiplicative, star-preserving, unital on the basis",
        verdict.star_hom && verdict.unital,
    ));
    report.push(LawReport::named(
        "condition-D",
        "diagonal maps into diagonal",
        verdict.d_flag,
    ));
    report.push(LawReport::named(
        "condition-E",
        "expectations intertwine",
        verdict.e_flag,
    ));
    match verdict.n_flag() {
        true => report.push(LawReport::named(
            "condition-N",
            "normalizers map to normalizers, dying only inside the diagonal-kernel ideal",
            true,
        )),
        false => report.push(LawReport::with_counterexample(
            "condition-N",
            "normalizer containment or injectivity",
            "condition (N) fails".into(),
        )),
    }
    report.push(LawReport::named(
        "diagonal-isomorphism",
        "diagonal restriction permutes unit indicators",
        verdict.diag_iso,
    ));
    let mut reports = vec![report];
    if verdict.is_morphism() && verdict.diag_iso {
        let theorem =
            check_partial_morphism_theorem(&m).map_err(|e| CliError::Input(e.to_string()))?;
        reports.push(theorem);
    }
    // diag_iso is informative, not a law: embeddings of proper unit
    // spaces and quotients legitimately lack it
    let all_pass = verdict.is_morphism() && reports[1..].iter().all(Report::all_pass);
    let rendered = render_reports(&reports, format);
    Ok(Outcome { rendered, all_pass })
}

/// `functor-check`: the poset functor of invariant sets, Grpd_part
/// axioms on derived triples, and contravariant functoriality of the
/// Weyl functor on an embedding chain. Poset chains grow with the cube
/// of `2^orbits`, so inputs are capped at four orbits.
pub fn functor_check(doc: &GroupoidDocument, format: Format) -> Result<Outcome, CliError> {
    let pair = pair_from(doc)?;
    let orbit_count = pair.groupoid().orbits().len();
    if orbit_count > 4 {
        return Err(CliError::Input(format!(
            "functor-check enumerates all poset chains and is capped at 4 orbits; \
             this groupoid has {orbit_count}"
        )));
    }
    let mut reports = Vec::new();
    let q = poset_functor(&pair).map_err(|e| CliError::Input(e.to_string()))?;
    reports.push(q.check().map_err(|e| CliError::Input(e.to_string()))?);

    // derived triples: the identity and the trivial-subgroupoid
    // embedding, chained through Grpd_part
    let g = pair.groupoid().clone();
    if g.is_principal() {
        let trivial = weylkit_core::groupoid::FiniteGroupoid::from_partition(
            g.unit_count(),
            &(0..g.unit_count()).map(|u| vec![u]).collect::<Vec<_>>(),
        )
        .map_err(|e| CliError::Input(e.to_string()))?
        .shared();
        // rename units so the embedding matches by id
        let sub = if trivial.units() == g.units() {
            trivial
        } else {
            let related: BTreeSet<(usize, usize)> = (0..g.unit_count()).map(|u| (u, u)).collect();
            weylkit_core::groupoid::FiniteGroupoid::from_relation(g.units().to_vec(), &related)
                .map_err(|e| CliError::Input(e.to_string()))?
                .shared()
        };
        let em = weylkit_core::morphism::build_morphism(&MorphismSpec::Embedding {
            sub,
            ambient: g.clone(),
        })
        .map_err(|e| CliError::Input(e.to_string()))?;
        let triple = weyl_morphism(&em).map_err(|e| CliError::Input(e.to_string()))?;
        let id = PartialTriple::identity(&triple.domain);
        let chain = (
            PartialTriple::identity(&triple.codomain),
            triple.clone(),
            id,
        );
        reports.push(weylkit_core::category::check_category_axioms(&[chain]));
        let idm = weylkit_core::morphism::PairMorphism::identity(&pair);
        reports.push(
            weylkit_core::category::check_functoriality(&em, &idm)
                .map_err(|e| CliError::Input(e.to_string()))?,
        );
    }
    Ok(outcome(reports, format))
}

/// `tensor`: the tensor pair of two documents, with the expectation and
/// Weyl-product checks, plus the exploratory (non-gating) monoidality
/// comparison of the Weyl functor.
pub fn tensor(
    left: &GroupoidDocument,
    right: &GroupoidDocument,
    cap: usize,
    format: Format,
) -> Result<(Outcome, GroupoidDocument), CliError> {
    let p1 = pair_from(left)?;
    let p2 = pair_from(right)?;
    let t = tensor_pair(&p1, &p2).map_err(|e| CliError::Input(e.to_string()))?;
    let mut reports = vec![t.check_expectation()];
    reports.push(
        t.check_weyl_product(cap)
            .map_err(|e| CliError::Input(e.to_string()))?,
    );
    // whether W is monoidal as a functor is open; report the finite
    // observation without gating on it
    let mut exploratory = Report::new("exploratory-weyl-monoidality");
    let observed = reports[1].status("weyl-product-isomorphic");
    exploratory.push(LawReport::named(
        "observation",
        &format!(
            "W(P1 (x) P2) and W(P1) x W(P2) are isomorphic on this fixture: {observed} \
             (informative only; no pass/fail contract)"
        ),
        true,
    ));
    reports.push(exploratory);
    let doc = GroupoidDocument::from_groupoid(t.pair.groupoid());
    Ok((outcome(reports, format), doc))
}

/// `compare`: isomorphism oracle on two documents and on their Weyl
/// groupoids. The verdict is printed; absence of an isomorphism is not
/// a failed law.
pub fn compare(
    left: &GroupoidDocument,
    right: &GroupoidDocument,
    cap: usize,
    format: Format,
) -> Result<Outcome, CliError> {
    let g1 = left.to_groupoid()?;
    let g2 = right.to_groupoid()?;
    let direct = find_isomorphism(&g1, &g2, cap).map_err(|e| CliError::Input(e.to_string()))?;
    let mut report = Report::new("compare");
    report.push(LawReport::named(
        "groupoids-isomorphic",
        &format!("verdict: {}", direct.is_some()),
        true,
    ));
    let p1 = DiagonalPair::new(g1).map_err(|e| CliError::Input(e.to_string()))?;
    let p2 = DiagonalPair::new(g2).map_err(|e| CliError::Input(e.to_string()))?;
    if p1.report().all() && p2.report().all() && p1.is_principal() && p2.is_principal() {
        let w1 = p1
            .weyl_groupoid()
            .map_err(|e| CliError::Input(e.to_string()))?;
        let w2 = p2
            .weyl_groupoid()
            .map_err(|e| CliError::Input(e.to_string()))?;
        let weyl_iso = find_isomorphism(&w1.groupoid, &w2.groupoid, cap)
            .map_err(|e| CliError::Input(e.to_string()))?;
        report.push(LawReport::named(
            "weyl-groupoids-isomorphic",
            &format!("verdict: {}", weyl_iso.is_some()),
            true,
        ));
        report.push(LawReport::named(
            "oracle-consistency",
            "a groupoid isomorphism forces a Weyl isomorphism",
            !(direct.is_some() && weyl_iso.is_none()),
        ));
    }
    Ok(outcome(vec![report], format))
}

/// `dot`: deterministic graph rendering of the groupoid or its Weyl
/// groupoid.
pub fn render_dot(doc: &GroupoidDocument, weyl: bool) -> Result<Outcome, CliError> {
    let g = doc.to_groupoid()?;
    let rendered = if weyl {
        let pair = DiagonalPair::new(g).map_err(|e| CliError::Input(e.to_string()))?;
        let w = pair
            .weyl_groupoid()
            .map_err(|e| CliError::Input(e.to_string()))?;
        dot::render_weyl(&w, "weyl")
    } else {
        dot::render_groupoid(&g, "groupoid")
    };
    Ok(Outcome {
        rendered,
        all_pass: true,
    })
}

/// `graph-check`: the hereditary-saturated quotient correspondence.
pub fn graph_check(
    doc: &GraphDocument,
    set: &[String],
    cap: usize,
    format: Format,
) -> Result<Outcome, CliError> {
    let graph = Graph::from_document(doc)?;
    let vertex_set: BTreeSet<usize> = set
        .iter()
        .map(|n| {
            graph
                .vertices
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| CliError::Input(format!("unknown vertex {n:?}")))
        })
        .collect::<Result<_, _>>()?;
    let report = graph_quotient_check(&graph, &vertex_set, cap)?;
    Ok(outcome(vec![report], format))
}

/// `comparison`: exhaustive dynamical comparison on the pair and all
/// its quotients.
pub fn comparison(doc: &GroupoidDocument, format: Format) -> Result<Outcome, CliError> {
    let pair = pair_from(doc)?;
    let report = check_dynamical_comparison_with_quotients(&pair)
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(outcome(vec![report], format))
}
