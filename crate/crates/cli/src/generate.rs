//! Groupoid generators: full relations, trivial groupoids, cyclic
//! transformation groupoids, boundary-path groupoids of acyclic graphs,
//! disjoint unions, products, and seeded random equivalence relations.

use crate::document::{GraphDocument, GroupoidDocument};
use crate::graph::Graph;
use crate::CliError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use weylkit_core::groupoid::{Arrow, FiniteGroupoid};
use weylkit_core::sample;

/// The transformation groupoid of the cyclic group acting on itself by
/// translation: arrows `(x | k)` from `x` to `x + k mod m`, composed by
/// adding the group elements. Free and transitive, so isomorphic to the
/// full relation on `m` points.
pub fn cyclic_transformation(m: usize) -> Result<Arc<FiniteGroupoid>, CliError> {
    if m == 0 {
        return Err(CliError::Input("cyclic transformation needs m >= 1".into()));
    }
    let units: Vec<String> = (0..m).map(|x| x.to_string()).collect();
    let mut arrows = Vec::with_capacity(m * m);
    for x in 0..m {
        for k in 0..m {
            arrows.push(Arrow {
                id: format!("({x}|{k})"),
                source: x,
                target: (x + k) % m,
            });
        }
    }
    let index = |x: usize, k: usize| x * m + k;
    let n = arrows.len();
    let mut compose = vec![None; n * n];
    for x in 0..m {
        for k in 0..m {
            // (y | l) . (x | k) needs y = x + k and lands at (x | k + l)
            let y = (x + k) % m;
            for l in 0..m {
                compose[index(y, l) * n + index(x, k)] = Some(index(x, (k + l) % m));
            }
        }
    }
    let unit_arrows: Vec<usize> = (0..m).map(|x| index(x, 0)).collect();
    let inverse: Vec<usize> = (0..m)
        .flat_map(|x| (0..m).map(move |k| ((x + k) % m, (m - k) % m)))
        .map(|(y, l)| index(y, l))
        .collect();
    let g = FiniteGroupoid::from_parts(units, arrows, unit_arrows, compose, inverse)
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(g.shared())
}

/// What to generate, with its parameters.
pub enum GeneratorKind {
    FullRelation(usize),
    Trivial(usize),
    CyclicTransformation(usize),
    AcyclicGraph(GraphDocument),
    DisjointUnion(GroupoidDocument, GroupoidDocument),
    Product(GroupoidDocument, GroupoidDocument),
    RandomEquivalence { units: usize, seed: u64 },
}

pub fn generate(kind: &GeneratorKind) -> Result<GroupoidDocument, CliError> {
    let g: Arc<FiniteGroupoid> = match kind {
        GeneratorKind::FullRelation(n) => FiniteGroupoid::full_relation(*n).shared(),
        GeneratorKind::Trivial(n) => FiniteGroupoid::trivial(*n).shared(),
        GeneratorKind::CyclicTransformation(m) => cyclic_transformation(*m)?,
        GeneratorKind::AcyclicGraph(doc) => Graph::from_document(doc)?.path_groupoid()?,
        GeneratorKind::DisjointUnion(a, b) => a
            .to_groupoid()?
            .disjoint_union(b.to_groupoid()?.as_ref())
            .shared(),
        GeneratorKind::Product(a, b) => {
            a.to_groupoid()?.product(b.to_groupoid()?.as_ref()).shared()
        }
        GeneratorKind::RandomEquivalence { units, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            sample::random_equivalence(*units, &mut rng).shared()
        }
    };
    let report = g.validate();
    if !report.is_valid() {
        return Err(CliError::Input(format!(
            "generator produced an invalid groupoid: {:?}",
            report.violations
        )));
    }
    Ok(GroupoidDocument::from_groupoid(&g))
}
