//! Seeded random fixtures: scalars, algebra elements, diagonals,
//! normalizers, projections and equivalence-relation groupoids. Every
//! caller passes its own `ChaCha8Rng`, so reports can record the seed
//! and reproduce counterexamples.

use crate::algebra::AlgebraElement;
use crate::groupoid::FiniteGroupoid;
use crate::scalar::GaussianRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

/// A small random Gaussian rational; zero is possible.
pub fn random_scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::from_parts(
        rng.gen_range(-3..=3),
        rng.gen_range(1..=3),
        rng.gen_range(-3..=3),
        rng.gen_range(1..=3),
    )
}

/// A small random nonzero Gaussian rational.
pub fn random_nonzero_scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let z = random_scalar(rng);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Element with independent random coefficients on every arrow.
pub fn random_element(g: &Arc<FiniteGroupoid>, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let mut el = AlgebraElement::zero(g);
    for a in 0..g.arrow_count() {
        el.set_coeff(a, random_scalar(rng));
    }
    el
}

/// Random diagonal element.
pub fn random_diagonal(g: &Arc<FiniteGroupoid>, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let mut el = AlgebraElement::zero(g);
    for u in 0..g.unit_count() {
        el.set_coeff(g.unit_arrow(u), random_scalar(rng));
    }
    el
}

/// Random diagonal element guaranteed not to vanish at `unit`.
pub fn random_diagonal_nonzero_at(
    g: &Arc<FiniteGroupoid>,
    unit: usize,
    rng: &mut ChaCha8Rng,
) -> AlgebraElement {
    let mut el = random_diagonal(g, rng);
    el.set_coeff(g.unit_arrow(unit), random_nonzero_scalar(rng));
    el
}

/// A uniformly chosen random bisection, built by a random greedy scan.
pub fn random_bisection(g: &FiniteGroupoid, rng: &mut ChaCha8Rng) -> BTreeSet<usize> {
    let mut order: Vec<usize> = (0..g.arrow_count()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut sources = BTreeSet::new();
    let mut targets = BTreeSet::new();
    let mut chosen = BTreeSet::new();
    for a in order {
        if rng.gen_bool(0.5) && !sources.contains(&g.source(a)) && !targets.contains(&g.target(a)) {
            sources.insert(g.source(a));
            targets.insert(g.target(a));
            chosen.insert(a);
        }
    }
    chosen
}

/// A random normalizer: a nonempty random bisection with random nonzero
/// coefficients.
pub fn random_normalizer(g: &Arc<FiniteGroupoid>, rng: &mut ChaCha8Rng) -> AlgebraElement {
    loop {
        let bis = random_bisection(g, rng);
        if bis.is_empty() {
            continue;
        }
        let mut el = AlgebraElement::zero(g);
        for &a in &bis {
            el.set_coeff(a, random_nonzero_scalar(rng));
        }
        return el;
    }
}

/// A random diagonal 0/1 projection (possibly zero or the unit).
pub fn random_projection(g: &Arc<FiniteGroupoid>, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let units: BTreeSet<usize> = (0..g.unit_count()).filter(|_| rng.gen_bool(0.5)).collect();
    AlgebraElement::projection(g, &units)
}

/// Seeded random equivalence relation on `n` units: each unit joins an
/// existing block or opens a new one.
pub fn random_equivalence(n: usize, rng: &mut ChaCha8Rng) -> FiniteGroupoid {
    FiniteGroupoid::from_partition(n, &random_partition(n, rng))
        .expect("blocks partition the units")
}

/// A random partition of `0..n`.
pub fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if blocks.is_empty() || rng.gen_bool(0.4) {
            blocks.push(vec![u]);
        } else {
            let b = rng.gen_range(0..blocks.len());
            blocks[b].push(u);
        }
    }
    blocks
}

/// A random refinement: every block may split in two.
pub fn random_refinement(blocks: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for block in blocks {
        if block.len() >= 2 && rng.gen_bool(0.5) {
            let cut = rng.gen_range(1..block.len());
            out.push(block[..cut].to_vec());
            out.push(block[cut..].to_vec());
        } else {
            out.push(block.clone());
        }
    }
    out
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// A groupoid isomorphism from a unit permutation of a partition
/// groupoid onto the relabelled partition groupoid.
pub fn permutation_isomorphism(
    blocks: &[Vec<usize>],
    perm: &[usize],
) -> crate::groupoid::GroupoidMap {
    let n = perm.len();
    let domain = FiniteGroupoid::from_partition(n, blocks)
        .expect("blocks partition the units")
        .shared();
    let image_blocks: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut mapped: Vec<usize> = b.iter().map(|&u| perm[u]).collect();
            mapped.sort_unstable();
            mapped
        })
        .collect();
    let codomain = FiniteGroupoid::from_partition(n, &image_blocks)
        .expect("permuted blocks partition the units")
        .shared();
    let arrow_map: Vec<usize> = (0..domain.arrow_count())
        .map(|a| {
            codomain
                .arrow_between(perm[domain.source(a)], perm[domain.target(a)])
                .expect("permutations preserve the relation")
        })
        .collect();
    crate::groupoid::GroupoidMap {
        domain,
        codomain,
        unit_map: perm.to_vec(),
        arrow_map,
    }
}

/// A seeded family of diagonal-isomorphism morphisms: identities,
/// subgroupoid embeddings from partition refinements, isomorphisms from
/// unit permutations, and tensor products of earlier entries with small
/// identities.
pub fn generated_morphisms(count: usize, seed: u64) -> Vec<crate::morphism::PairMorphism> {
    use crate::morphism::{build_morphism, MorphismSpec, PairMorphism};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=4);
        let blocks = random_partition(n, &mut rng);
        let ambient = FiniteGroupoid::from_partition(n, &blocks)
            .expect("blocks partition the units")
            .shared();
        match rng.gen_range(0..4) {
            0 => {
                let pair = crate::pair::make_pair(ambient).expect("partition groupoids validate");
                out.push(PairMorphism::identity(&pair));
            }
            1 => {
                let refined = random_refinement(&blocks, &mut rng);
                let sub = FiniteGroupoid::from_partition(n, &refined)
                    .expect("refinements partition the units")
                    .shared();
                out.push(
                    build_morphism(&MorphismSpec::Embedding { sub, ambient })
                        .expect("refinement embeddings build"),
                );
            }
            2 => {
                let perm = random_permutation(n, &mut rng);
                let map = permutation_isomorphism(&blocks, &perm);
                out.push(
                    build_morphism(&MorphismSpec::Isomorphism { map })
                        .expect("permutation isomorphisms build"),
                );
            }
            _ => {
                if let Some(prev) = out.last() {
                    if prev.source().groupoid().arrow_count()
                        * prev.target().groupoid().arrow_count()
                        <= 36
                    {
                        let small =
                            crate::pair::make_pair(FiniteGroupoid::full_relation(2).shared())
                                .expect("pair groupoids validate");
                        let id = PairMorphism::identity(&small);
                        out.push(
                            crate::tensor::tensor_morphism(prev, &id)
                                .expect("tensor of generated morphisms builds"),
                        );
                    }
                }
            }
        }
    }
    out
}

/// A random partial triple between two partition groupoids on the same
/// units: the domain of definition is the largest subgroupoid that a
/// random unit permutation carries into the target relation.
pub fn random_partial_triple(
    n: usize,
    source_blocks: &[Vec<usize>],
    target_blocks: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
) -> crate::category::PartialTriple {
    let domain = FiniteGroupoid::from_partition(n, source_blocks)
        .expect("blocks partition the units")
        .shared();
    let codomain = FiniteGroupoid::from_partition(n, target_blocks)
        .expect("blocks partition the units")
        .shared();
    let h = random_permutation(n, rng);
    let mut k = BTreeSet::new();
    let mut rho = std::collections::BTreeMap::new();
    for a in 0..domain.arrow_count() {
        let (s, t) = (domain.source(a), domain.target(a));
        if let Some(img) = codomain.arrow_between(h[s], h[t]) {
            k.insert(a);
            rho.insert(a, img);
        }
    }
    crate::category::PartialTriple {
        domain,
        codomain,
        k,
        rho,
        h,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_equivalences_are_valid_and_principal() {
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_equivalence(5, &mut rng);
            assert!(g.validate().is_valid());
            assert!(g.is_principal());
        }
    }

    #[test]
    fn random_bisections_are_bisections() {
        let g = FiniteGroupoid::full_relation(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let b = random_bisection(&g, &mut rng);
            assert!(g.is_bisection(&b));
        }
    }

    #[test]
    fn generation_is_deterministic_under_seed() {
        let a = random_equivalence(5, &mut ChaCha8Rng::seed_from_u64(42));
        let b = random_equivalence(5, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);
    }
}
