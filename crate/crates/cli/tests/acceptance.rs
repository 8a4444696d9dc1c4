//! Acceptance gate: one test per criterion, exact arithmetic
//! throughout, one pass/fail line printed per criterion. Run with
//! `cargo test -p weylkit-cli --test acceptance` (add `-- --nocapture`
//! to see the lines as they print).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;
use weylkit_cli::document::{ArrowDocument, GraphDocument, GroupoidDocument};
use weylkit_cli::generate::cyclic_transformation;
use weylkit_cli::graph::{graph_quotient_check, Graph};
use weylkit_core::algebra::AlgebraElement;
use weylkit_core::category::{
    check_category_axioms, check_functoriality, poset_functor, weyl_morphism, PartialTriple,
};
use weylkit_core::comparison::check_dynamical_comparison_with_quotients;
use weylkit_core::groupoid::FiniteGroupoid;
use weylkit_core::iso::find_isomorphism;
use weylkit_core::morphism::{
    build_morphism, check_injective, compression_fixture, validate_morphism, MorphismSpec,
    PairMorphism,
};
use weylkit_core::pair::{make_pair, DiagonalPair};
use weylkit_core::partial::check_partial_morphism_theorem;
use weylkit_core::quotient::{check_geom_ideals, check_transfer_properties, quotient_pair};
use weylkit_core::report::{LawReport, Report};
use weylkit_core::sample;
use weylkit_core::tensor::{check_monoidal, tensor_pair};

fn conclude(number: u32, name: &str, report: &Report) {
    let verdict = if report.all_pass() { "PASS" } else { "FAIL" };
    println!(
        "acceptance {number:02} {name}: {verdict} ({} checks)",
        report.checks.len()
    );
    if !report.all_pass() {
        for failure in report.failures() {
            eprintln!("  failed: {} ({})", failure.law, failure.fixture);
        }
        panic!("criterion {number} failed:\n{report:?}");
    }
}

/// The principal fixtures of criterion 1: full relations, trivial
/// groupoids, disjoint unions, cyclic transformation groupoids,
/// acyclic-graph groupoids, and twenty-five seeded random equivalence
/// relations, all with at most five units.
fn principal_fixtures() -> Vec<(String, Arc<FiniteGroupoid>)> {
    let mut out: Vec<(String, Arc<FiniteGroupoid>)> = Vec::new();
    for n in 1..=5 {
        out.push((format!("R{n}"), FiniteGroupoid::full_relation(n).shared()));
        out.push((format!("T{n}"), FiniteGroupoid::trivial(n).shared()));
    }
    out.push((
        "R2+T1".into(),
        FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
            .unwrap()
            .shared(),
    ));
    out.push((
        "R2+R2".into(),
        FiniteGroupoid::full_relation(2)
            .disjoint_union(&FiniteGroupoid::full_relation(2))
            .shared(),
    ));
    out.push((
        "R3+T2".into(),
        FiniteGroupoid::full_relation(3)
            .disjoint_union(&FiniteGroupoid::trivial(2))
            .shared(),
    ));
    for m in 2..=5 {
        out.push((format!("Z{m}-action"), cyclic_transformation(m).unwrap()));
    }
    out.push((
        "two-sink-graph".into(),
        two_sink_graph().path_groupoid().unwrap(),
    ));
    out.push(("chain-graph".into(), chain_graph().path_groupoid().unwrap()));
    for seed in 0..25 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        out.push((
            format!("random-{seed}"),
            sample::random_equivalence(5, &mut rng).shared(),
        ));
    }
    out
}

fn two_sink_graph() -> Graph {
    Graph {
        vertices: vec!["v".into(), "w1".into(), "w2".into()],
        edges: vec![("e1".into(), 0, 1), ("e2".into(), 0, 2)],
    }
}

fn chain_graph() -> Graph {
    Graph {
        vertices: vec!["a".into(), "b".into(), "c".into()],
        edges: vec![("e".into(), 0, 1), ("f".into(), 1, 2)],
    }
}

fn pair_of(g: &Arc<FiniteGroupoid>) -> DiagonalPair {
    make_pair(g.clone()).unwrap()
}

#[test]
fn criterion_01_reconstruction_roundtrip() {
    let mut report = Report::new("reconstruction-roundtrip");
    for (name, g) in principal_fixtures() {
        let pair = pair_of(&g);
        let ok = pair.report().all()
            && pair
                .weyl_groupoid()
                .map(|w| w.canonical.is_isomorphism() && *w.groupoid == *g)
                .unwrap_or(false);
        report.push(LawReport::named("weyl-roundtrip", &name, ok));
    }
    conclude(1, "reconstruction roundtrip", &report);
}

#[test]
fn criterion_02_germ_criterion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x02);
    let fixtures = [
        FiniteGroupoid::full_relation(2).shared(),
        FiniteGroupoid::full_relation(3).shared(),
        FiniteGroupoid::from_partition(4, &[vec![0, 1, 2], vec![3]])
            .unwrap()
            .shared(),
        FiniteGroupoid::from_partition(5, &[vec![0, 1], vec![2, 3, 4]])
            .unwrap()
            .shared(),
    ];
    let pairs: Vec<DiagonalPair> = fixtures.iter().map(pair_of).collect();
    let mut instances = 0;
    let mut agreements = 0;
    while instances < 200 {
        let p = &pairs[rng.gen_range(0..pairs.len())];
        let g = p.groupoid();
        let n = sample::random_normalizer(g, &mut rng);
        let m = match rng.gen_range(0..3) {
            0 => sample::random_normalizer(g, &mut rng),
            1 => n.scale(&sample::random_nonzero_scalar(&mut rng)),
            _ => n.clone(),
        };
        let dom_n = p.alpha(&n).unwrap().domain;
        let dom_m = p.alpha(&m).unwrap().domain;
        let Some(&x) = dom_n.intersection(&dom_m).next() else {
            continue;
        };
        instances += 1;
        let oracle = p.strict_germ_oracle(&n, &m, x).unwrap();
        let delta_witness = {
            let d = AlgebraElement::unit_indicator(g, x);
            n.convolve(&d).unwrap() == m.convolve(&d).unwrap()
        };
        let search = p
            .strict_germ_witness_search(&n, &m, x, 20, &mut rng)
            .unwrap();
        if oracle == delta_witness && oracle == search {
            agreements += 1;
        }
    }
    let mut report = Report::with_seed("germ-criterion", 0x02);
    report.push(LawReport::named(
        "oracle-witness-agreement",
        &format!("{agreements}/{instances} random normalizer instances"),
        agreements == instances,
    ));
    conclude(2, "germ criterion", &report);
}

#[test]
fn criterion_03_normalizer_characterization() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x03);
    let mut report = Report::with_seed("normalizer-characterization", 0x03);
    for (name, g) in [
        ("R2", FiniteGroupoid::full_relation(2)),
        ("R3", FiniteGroupoid::full_relation(3)),
        (
            "G3",
            FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]]).unwrap(),
        ),
    ] {
        let shared = g.shared();
        let p = pair_of(&shared);
        let arrows = shared.arrow_count();
        let mut ok = true;
        for mask in 0u32..(1 << arrows) {
            let support: BTreeSet<usize> = (0..arrows).filter(|a| mask & (1 << a) != 0).collect();
            let mut f = AlgebraElement::zero(&shared);
            for &a in &support {
                f.set_coeff(a, sample::random_nonzero_scalar(&mut rng));
            }
            if p.is_normalizer(&f) != shared.is_bisection(&support) {
                ok = false;
            }
        }
        report.push(LawReport::named(
            "normalizer-iff-bisection",
            &format!("{name}: {} supports", 1u32 << arrows),
            ok,
        ));
    }
    conclude(3, "normalizer characterization", &report);
}

fn quotient_fixtures() -> Vec<(String, DiagonalPair)> {
    let mut out = Vec::new();
    for (name, g) in [
        ("R3", FiniteGroupoid::full_relation(3).shared()),
        ("T3", FiniteGroupoid::trivial(3).shared()),
        (
            "G3",
            FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
                .unwrap()
                .shared(),
        ),
        (
            "R2+R2",
            FiniteGroupoid::full_relation(2)
                .disjoint_union(&FiniteGroupoid::full_relation(2))
                .shared(),
        ),
        (
            "R2+T1+T1",
            FiniteGroupoid::full_relation(2)
                .disjoint_union(&FiniteGroupoid::trivial(1))
                .disjoint_union(&FiniteGroupoid::trivial(1))
                .shared(),
        ),
    ] {
        out.push((name.to_string(), pair_of(&g)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x40);
    for i in 0..3 {
        out.push((
            format!("random-{i}"),
            pair_of(&sample::random_equivalence(5, &mut rng).shared()),
        ));
    }
    out
}

#[test]
fn criterion_04_ideal_geometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x04);
    let mut report = Report::with_seed("ideal-geometry", 0x04);
    for (name, pair) in quotient_fixtures() {
        let g = pair.groupoid().clone();
        let subsets = g.invariant_subsets();
        report.push(LawReport::named(
            "ideal-count",
            &format!("{name}: {} = 2^{}", subsets.len(), g.orbits().len()),
            subsets.len() == 1 << g.orbits().len(),
        ));
        for killed in subsets {
            // I meets the diagonal exactly in the indicators over U
            let ideal = weylkit_core::algebra::ideal_from_invariant(&g, &killed).unwrap();
            let diag: BTreeSet<usize> = ideal
                .support_arrows
                .iter()
                .cloned()
                .filter(|&a| g.is_unit_arrow(a))
                .collect();
            let expected: BTreeSet<usize> = killed.iter().map(|&u| g.unit_arrow(u)).collect();
            report.push(LawReport::named(
                "diagonal-intersection",
                &format!("{name}, U = {killed:?}"),
                diag == expected,
            ));
            if killed.len() == g.unit_count() {
                continue;
            }
            let geom = check_geom_ideals(&pair, &killed, &mut rng).unwrap();
            report.push(LawReport::named(
                "geom-ideals",
                &format!("{name}, U = {killed:?}"),
                geom.all_pass(),
            ));
        }
    }
    conclude(4, "ideal geometry", &report);
}

#[test]
fn criterion_05_quotient_transfer() {
    let mut report = Report::new("quotient-transfer");
    for (name, pair) in quotient_fixtures() {
        let g = pair.groupoid().clone();
        for killed in g.invariant_subsets() {
            if killed.len() == g.unit_count() {
                continue;
            }
            let q = quotient_pair(&pair, &killed).unwrap();
            let transfer = check_transfer_properties(&pair, &killed).unwrap();
            report.push(LawReport::named(
                "quotient-and-transfer",
                &format!("{name}, U = {killed:?}"),
                q.report.all_pass() && q.pair.report().all() && transfer.all_pass(),
            ));
            if killed.is_empty() {
                report.push(LawReport::named(
                    "empty-set-isomorphism",
                    &name,
                    check_injective(&q.map),
                ));
            }
        }
    }
    conclude(
        5,
        "quotient pair validity and expectation transfer",
        &report,
    );
}

#[test]
fn criterion_06_partial_morphism_theorem() {
    let mut report = Report::with_seed("partial-morphism", 0x06);
    let morphisms = sample::generated_morphisms(32, 0x06);
    for (i, m) in morphisms.iter().enumerate() {
        let kind = if m.source() == m.target() {
            "identity/automorphism"
        } else {
            "embedding/iso/tensor"
        };
        let ok = check_partial_morphism_theorem(m)
            .map(|r| r.all_pass())
            .unwrap_or(false);
        report.push(LawReport::named(
            "partial-morphism-theorem",
            &format!("generated morphism {i} ({kind})"),
            ok,
        ));
    }
    let compression = compression_fixture(2).unwrap();
    let verdict = validate_morphism(&compression);
    report.push(LawReport::named(
        "compression-rejected-at-N",
        "matrix pair onto its diagonal",
        verdict.d_flag && verdict.e_flag && !verdict.n_flag(),
    ));
    conclude(6, "partial morphism theorem", &report);
}

#[test]
fn criterion_07_category_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x07);
    let mut report = Report::with_seed("category-laws", 0x07);

    // Grpd_part associativity and identities on 50 random chains
    let mut chains = Vec::new();
    while chains.len() < 50 {
        let n = 2 + (chains.len() % 3);
        let p1 = sample::random_partition(n, &mut rng);
        let p2 = sample::random_partition(n, &mut rng);
        let p3 = sample::random_partition(n, &mut rng);
        let p4 = sample::random_partition(n, &mut rng);
        let t1 = sample::random_partial_triple(n, &p1, &p2, &mut rng);
        let t2 = sample::random_partial_triple(n, &p2, &p3, &mut rng);
        let t3 = sample::random_partial_triple(n, &p3, &p4, &mut rng);
        chains.push((t3, t2, t1));
    }
    let axioms = check_category_axioms(&chains);
    report.push(LawReport::named(
        "grpdpart-axioms",
        "50 random composable chains",
        axioms.all_pass(),
    ));

    // isomorphism characterization
    let blocks = vec![vec![0, 1], vec![2]];
    let perm = vec![2, 0, 1];
    let iso = sample::permutation_isomorphism(&blocks, &perm);
    let fwd = PartialTriple {
        k: (0..iso.domain.arrow_count()).collect(),
        rho: iso.arrow_map.iter().cloned().enumerate().collect(),
        h: iso.unit_map.clone(),
        domain: iso.domain.clone(),
        codomain: iso.codomain.clone(),
    };
    let inv = iso.inverted();
    let back = PartialTriple {
        k: (0..inv.domain.arrow_count()).collect(),
        rho: inv.arrow_map.iter().cloned().enumerate().collect(),
        h: inv.unit_map.clone(),
        domain: inv.domain.clone(),
        codomain: inv.codomain.clone(),
    };
    report.push(LawReport::named(
        "isomorphism-characterization",
        "invertible triple has full domain and bijective rho",
        fwd.is_partial_isomorphism(&back),
    ));

    // C_amp closure under composition
    let morphisms = sample::generated_morphisms(20, 0x71);
    let mut closures = 0;
    for a in &morphisms {
        for b in &morphisms {
            if a.target() == b.source() && closures < 12 {
                let composite = PairMorphism::compose(b, a).unwrap();
                closures += 1;
                report.push(LawReport::named(
                    "camp-closure",
                    &format!("composite {closures}"),
                    validate_morphism(&composite).is_morphism(),
                ));
            }
        }
    }
    assert!(closures >= 4, "need composable morphisms in the family");

    // contravariant functoriality on 20 chains
    for i in 0..20 {
        let n = 2 + (i % 3);
        let coarse = sample::random_partition(n, &mut rng);
        let mid = sample::random_refinement(&coarse, &mut rng);
        let fine = sample::random_refinement(&mid, &mut rng);
        let ambient = FiniteGroupoid::from_partition(n, &coarse).unwrap().shared();
        let middle = FiniteGroupoid::from_partition(n, &mid).unwrap().shared();
        let small = FiniteGroupoid::from_partition(n, &fine).unwrap().shared();
        let phi = build_morphism(&MorphismSpec::Embedding {
            sub: small,
            ambient: middle.clone(),
        })
        .unwrap();
        let psi = build_morphism(&MorphismSpec::Embedding {
            sub: middle,
            ambient,
        })
        .unwrap();
        let functorial = check_functoriality(&phi, &psi).unwrap();
        report.push(LawReport::named(
            "weyl-contravariance",
            &format!("embedding chain {i}"),
            functorial.all_pass(),
        ));
    }

    // poset functor coherence on fixtures with up to three orbits
    for (name, g) in [
        (
            "G3",
            FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]]).unwrap(),
        ),
        (
            "R2+R2",
            FiniteGroupoid::full_relation(2).disjoint_union(&FiniteGroupoid::full_relation(2)),
        ),
        ("T3", FiniteGroupoid::trivial(3)),
        (
            "R2+T1+T1",
            FiniteGroupoid::from_partition(4, &[vec![0, 1], vec![2], vec![3]]).unwrap(),
        ),
        ("R2", FiniteGroupoid::full_relation(2)),
    ] {
        let q = poset_functor(&pair_of(&g.shared())).unwrap();
        let coherent = q.check().unwrap();
        report.push(LawReport::named("poset-functor", name, coherent.all_pass()));
    }
    conclude(7, "category laws", &report);
}

#[test]
fn criterion_08_tensor_products() {
    let mut report = Report::new("tensor-products");
    let factors = [
        ("R2", FiniteGroupoid::full_relation(2).shared()),
        ("T2", FiniteGroupoid::trivial(2).shared()),
        (
            "G3",
            FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
                .unwrap()
                .shared(),
        ),
        ("R3", FiniteGroupoid::full_relation(3).shared()),
        ("T1", FiniteGroupoid::trivial(1).shared()),
        (
            "R2+R2",
            FiniteGroupoid::full_relation(2)
                .disjoint_union(&FiniteGroupoid::full_relation(2))
                .shared(),
        ),
    ];
    for (n1, g1) in &factors {
        for (n2, g2) in &factors {
            if g1.arrow_count() * g2.arrow_count() > 64 {
                continue;
            }
            let t = tensor_pair(&pair_of(g1), &pair_of(g2)).unwrap();
            let expectation = t.check_expectation();
            let weyl = t.check_weyl_product(usize::MAX).unwrap();
            report.push(LawReport::named(
                "tensor-pair",
                &format!("{n1} (x) {n2}"),
                expectation.all_pass() && weyl.all_pass(),
            ));
        }
    }
    let r2 = pair_of(&factors[0].1);
    let t2 = pair_of(&factors[1].1);
    let g3 = pair_of(&factors[2].1);
    let coherence = check_monoidal(&r2, &t2, &g3, &t2).unwrap();
    report.push(LawReport::named(
        "monoidal-coherence",
        "pentagon, triangle, hexagon on (R2, T2, G3)",
        coherence.all_pass(),
    ));
    conclude(8, "tensor products", &report);
}

#[test]
fn criterion_09_dynamical_comparison() {
    let mut report = Report::new("dynamical-comparison");
    let mut fixtures: Vec<(String, Arc<FiniteGroupoid>)> = Vec::new();
    for n in 1..=6 {
        fixtures.push((format!("R{n}"), FiniteGroupoid::full_relation(n).shared()));
        fixtures.push((format!("T{n}"), FiniteGroupoid::trivial(n).shared()));
    }
    fixtures.push((
        "G3".into(),
        FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
            .unwrap()
            .shared(),
    ));
    fixtures.push((
        "R2+R2".into(),
        FiniteGroupoid::full_relation(2)
            .disjoint_union(&FiniteGroupoid::full_relation(2))
            .shared(),
    ));
    fixtures.push((
        "R3+T2".into(),
        FiniteGroupoid::full_relation(3)
            .disjoint_union(&FiniteGroupoid::trivial(2))
            .shared(),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(0x09);
    for i in 0..4 {
        fixtures.push((
            format!("random-{i}"),
            sample::random_equivalence(6, &mut rng).shared(),
        ));
    }
    for (name, g) in fixtures {
        let outcome = check_dynamical_comparison_with_quotients(&pair_of(&g)).unwrap();
        report.push(LawReport::named(
            "comparison-with-quotients",
            &name,
            outcome.all_pass(),
        ));
    }
    conclude(9, "dynamical comparison", &report);
}

#[test]
fn criterion_10_faithfulness() {
    let mut report = Report::new("faithfulness");
    // pair isomorphism => invertible Weyl triple, constructively
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    for i in 0..6 {
        let n = 2 + (i % 3);
        let blocks = sample::random_partition(n, &mut rng);
        let perm = sample::random_permutation(n, &mut rng);
        let iso = sample::permutation_isomorphism(&blocks, &perm);
        let phi = build_morphism(&MorphismSpec::Isomorphism { map: iso.clone() }).unwrap();
        let back = build_morphism(&MorphismSpec::Isomorphism {
            map: iso.inverted(),
        })
        .unwrap();
        let t_phi = weyl_morphism(&phi).unwrap();
        let t_back = weyl_morphism(&back).unwrap();
        report.push(LawReport::named(
            "pair-iso-gives-weyl-iso",
            &format!("permutation isomorphism {i}"),
            t_phi.is_partial_isomorphism(&t_back),
        ));
    }
    // groupoid isomorphism found by search => pair isomorphism; the
    // second instance crosses table representations (a group action
    // groupoid against a relation groupoid)
    for (name, a, b) in [
        (
            "relabelled partitions",
            FiniteGroupoid::from_partition(4, &[vec![0, 3], vec![1, 2]])
                .unwrap()
                .shared(),
            FiniteGroupoid::from_partition(4, &[vec![0, 1], vec![2, 3]])
                .unwrap()
                .shared(),
        ),
        (
            "cyclic action vs full relation",
            cyclic_transformation(3).unwrap(),
            FiniteGroupoid::full_relation(3).shared(),
        ),
    ] {
        let found = find_isomorphism(&a, &b, 64).unwrap().unwrap();
        let phi = build_morphism(&MorphismSpec::Isomorphism { map: found }).unwrap();
        let verdict = validate_morphism(&phi);
        report.push(LawReport::named(
            "groupoid-iso-gives-pair-iso",
            name,
            verdict.is_morphism() && verdict.diag_iso && check_injective(&phi),
        ));
    }
    // Weyl non-isomorphism certifies pair non-isomorphism
    for (name, g1, g2) in [
        (
            "R2 vs T4",
            FiniteGroupoid::full_relation(2).shared(),
            FiniteGroupoid::trivial(4).shared(),
        ),
        (
            "R3 vs R2+T1",
            FiniteGroupoid::full_relation(3).shared(),
            FiniteGroupoid::from_partition(3, &[vec![0, 1], vec![2]])
                .unwrap()
                .shared(),
        ),
    ] {
        let w1 = pair_of(&g1).weyl_groupoid().unwrap().groupoid;
        let w2 = pair_of(&g2).weyl_groupoid().unwrap().groupoid;
        report.push(LawReport::named(
            "weyl-distinguishes",
            name,
            find_isomorphism(&w1, &w2, 64).unwrap().is_none(),
        ));
    }
    conclude(10, "faithfulness suite", &report);
}

/// Seeded random DAG on up to five vertices, edges running upward only.
fn random_dag(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=5);
    let vertices: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let mut edges = Vec::new();
    for s in 0..n {
        for t in (s + 1)..n {
            if rng.gen_bool(0.45) {
                edges.push((format!("e{s}_{t}"), s, t));
            }
        }
    }
    Graph { vertices, edges }
}

/// A hereditary saturated set: close a random sink selection downward
/// (nothing to add: sinks emit no edges) and then saturate upward.
fn hereditary_saturated(graph: &Graph, seed: u64) -> BTreeSet<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set: BTreeSet<usize> = graph
        .sinks()
        .into_iter()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    loop {
        let mut grew = false;
        for v in 0..graph.vertices.len() {
            if set.contains(&v) {
                continue;
            }
            let succ: Vec<usize> = graph
                .edges
                .iter()
                .filter(|&&(_, s, _)| s == v)
                .map(|&(_, _, t)| t)
                .collect();
            if !succ.is_empty() && succ.iter().all(|w| set.contains(w)) {
                set.insert(v);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    set
}

#[test]
fn criterion_11_graph_and_crossed_product_examples() {
    let mut report = Report::new("graph-and-crossed-products");
    let two_sink = two_sink_graph();
    let w1: BTreeSet<usize> = [1].into_iter().collect();
    report.push(LawReport::named(
        "two-sink-fixture",
        "deleting one sink leaves the other pair block",
        graph_quotient_check(&two_sink, &w1, 256)
            .unwrap()
            .all_pass(),
    ));
    for seed in 0..5 {
        let dag = random_dag(seed + 0x11);
        let set = hereditary_saturated(&dag, seed + 0x60);
        assert!(dag.is_hereditary(&set) && dag.is_saturated(&set));
        let outcome = graph_quotient_check(&dag, &set, 512).unwrap();
        report.push(LawReport::named(
            "seeded-dag",
            &format!(
                "seed {seed}: {} vertices, {} edges, |H| = {}",
                dag.vertices.len(),
                dag.edges.len(),
                set.len()
            ),
            outcome.all_pass(),
        ));
    }
    for m in 1..=6 {
        let action = cyclic_transformation(m).unwrap();
        let full = FiniteGroupoid::full_relation(m).shared();
        report.push(LawReport::named(
            "crossed-product",
            &format!("Z/{m} action vs R{m}"),
            find_isomorphism(&action, &full, 128).unwrap().is_some(),
        ));
    }
    conclude(11, "graph and crossed-product examples", &report);
}

#[test]
fn criterion_12_cli_surface() {
    let mut report = Report::new("cli-surface");
    // serialization round-trip on all principal fixtures plus a
    // table-carrying one
    for (name, g) in principal_fixtures() {
        let doc = GroupoidDocument::from_groupoid(&g);
        let text = doc.serialize();
        let reparsed = GroupoidDocument::parse(&text).unwrap();
        report.push(LawReport::named(
            "roundtrip",
            &name,
            reparsed.serialize() == text && *reparsed.to_groupoid().unwrap() == *g,
        ));
    }
    let graph_doc = GraphDocument {
        schema: weylkit_cli::document::GRAPH_SCHEMA.into(),
        vertices: vec!["v".into(), "w1".into(), "w2".into()],
        edges: vec![
            ArrowDocument {
                id: "e1".into(),
                src: "v".into(),
                dst: "w1".into(),
            },
            ArrowDocument {
                id: "e2".into(),
                src: "v".into(),
                dst: "w2".into(),
            },
        ],
    };
    let graph_text = graph_doc.serialize();
    report.push(LawReport::named(
        "graph-roundtrip",
        "two-sink graph document",
        GraphDocument::parse(&graph_text).unwrap().serialize() == graph_text,
    ));

    // exit-code contract and DOT byte-stability through the binary
    let bin = env!("CARGO_BIN_EXE_weylkit");
    let dir = std::env::temp_dir().join("weylkit-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(
        &good,
        GroupoidDocument::from_groupoid(&FiniteGroupoid::full_relation(2)).serialize(),
    )
    .unwrap();
    let run = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args)
            .output()
            .expect("binary runs")
    };
    let ok = run(&["validate", "-i", good.to_str().unwrap()]);
    report.push(LawReport::named(
        "exit-0-on-pass",
        "validate on a lawful document",
        ok.status.code() == Some(0),
    ));
    // a broken inverse makes a law fail: exit 1
    let bad = dir.join("bad.json");
    let mut bad_doc = GroupoidDocument::from_groupoid(&FiniteGroupoid::full_relation(2));
    let mut inverse: std::collections::BTreeMap<String, String> = [
        ("(0,0)", "(0,0)"),
        ("(0,1)", "(0,1)"),
        ("(1,0)", "(0,1)"),
        ("(1,1)", "(1,1)"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    bad_doc.inverse = Some(std::mem::take(&mut inverse));
    std::fs::write(&bad, bad_doc.serialize()).unwrap();
    let failed = run(&["validate", "-i", bad.to_str().unwrap()]);
    report.push(LawReport::named(
        "exit-1-on-failed-law",
        "validate on a broken inverse table",
        failed.status.code() == Some(1),
    ));
    let malformed = dir.join("malformed.json");
    std::fs::write(&malformed, "{ not json").unwrap();
    let err = run(&["validate", "-i", malformed.to_str().unwrap()]);
    report.push(LawReport::named(
        "exit-2-on-input-error",
        "validate on malformed JSON",
        err.status.code() == Some(2),
    ));
    // the compression fixture exits 1 and names condition (N)
    let compression = dir.join("compression.json");
    let comp_doc = serde_json::json!({
        "schema": "weylkit-morphism/1",
        "kind": "images",
        "source": serde_json::from_str::<serde_json::Value>(
            &GroupoidDocument::from_groupoid(&FiniteGroupoid::full_relation(2)).serialize()
        ).unwrap(),
        "target": serde_json::from_str::<serde_json::Value>(
            &GroupoidDocument::from_groupoid(&FiniteGroupoid::trivial(2)).serialize()
        ).unwrap(),
        "images": [
            {"arrow": "(0,0)", "element": [{"arrow": "(0,0)", "re": [1, 1], "im": [0, 1]}]},
            {"arrow": "(1,1)", "element": [{"arrow": "(1,1)", "re": [1, 1], "im": [0, 1]}]}
        ]
    });
    std::fs::write(&compression, format!("{comp_doc}")).unwrap();
    let rejected = run(&["morphism-check", "-i", compression.to_str().unwrap()]);
    let stdout = String::from_utf8_lossy(&rejected.stdout).to_string();
    report.push(LawReport::named(
        "compression-exit-1-naming-N",
        "morphism-check on the matrix-to-diagonal compression",
        rejected.status.code() == Some(1) && stdout.contains("condition-N"),
    ));
    // DOT output byte-stable under a fixed seed
    let seeded = dir.join("seeded.json");
    let gen = run(&[
        "generate",
        "random_equivalence",
        "-n",
        "5",
        "--seed",
        "12",
        "-o",
        seeded.to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let dot1 = run(&["dot", "-i", seeded.to_str().unwrap(), "--weyl"]);
    let dot2 = run(&["dot", "-i", seeded.to_str().unwrap(), "--weyl"]);
    report.push(LawReport::named(
        "dot-byte-stable",
        "weyl rendering of a seeded fixture, two runs",
        dot1.status.code() == Some(0) && dot1.stdout == dot2.stdout && !dot1.stdout.is_empty(),
    ));
    conclude(12, "cli interface", &report);
}
