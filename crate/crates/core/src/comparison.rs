//! Dynamical comparison: subordination of diagonal projections by
//! normalizers, decided orbitwise, and the exhaustive projection-pair
//! check that strict trace ordering forces subordination. Strictness on
//! the extreme traces decides strictness for all traces, because strict
//! inequalities survive convex combination.

use crate::algebra::{evaluate_trace, extreme_traces, AlgebraElement};
use crate::error::Error;
use crate::pair::DiagonalPair;
use crate::quotient::quotient_pair;
use crate::report::{LawReport, Report};
use std::collections::BTreeSet;

/// Cap on the unit count for exhaustive projection enumeration.
pub const PROJECTION_ENUM_CAP: usize = 8;

fn projection_units(p: &AlgebraElement) -> Result<BTreeSet<usize>, Error> {
    if !p.is_projection() {
        return Err(Error::NotProjection);
    }
    Ok(p.support()
        .into_iter()
        .map(|a| p.groupoid().source(a))
        .collect())
}

/// Searches for a normalizer `n` with `n* n = p` and `n n* <= q`: a
/// bisection indicator whose source set is `supp(p)` and whose target
/// set embeds into `supp(q)` orbit by orbit. Present exactly when no
/// orbit carries more of `p` than of `q`. Matching is by sorted order,
/// so the witness is deterministic.
pub fn subordinate(
    pair: &DiagonalPair,
    p: &AlgebraElement,
    q: &AlgebraElement,
) -> Result<Option<AlgebraElement>, Error> {
    let p_units = projection_units(p)?;
    let q_units = projection_units(q)?;
    let g = pair.groupoid();
    let orbit_of = g.orbit_of();
    let orbit_count = g.orbits().len();
    let mut matched = BTreeSet::new();
    for orbit in 0..orbit_count {
        let sources: Vec<usize> = p_units
            .iter()
            .cloned()
            .filter(|&u| orbit_of[u] == orbit)
            .collect();
        let targets: Vec<usize> = q_units
            .iter()
            .cloned()
            .filter(|&u| orbit_of[u] == orbit)
            .collect();
        if sources.len() > targets.len() {
            return Ok(None);
        }
        for (s, t) in sources.iter().zip(targets.iter()) {
            let arrow = g
                .arrow_between(*s, *t)
                .expect("units of one orbit are joined by an arrow");
            matched.insert(arrow);
        }
    }
    // orbitwise matching against disjoint source/target lists keeps
    // both endpoint maps injective, so the set validates as a bisection
    let bisection = g
        .bisection(matched)
        .expect("matched arrows form a bisection");
    let witness = AlgebraElement::bisection_indicator(g, &bisection);
    debug_assert!(pair.is_normalizer(&witness));
    debug_assert_eq!(witness.adjoint().convolve(&witness).unwrap(), *p);
    // n n* <= q: the range projection is supported inside supp(q)
    debug_assert!(witness
        .convolve(&witness.adjoint())
        .unwrap()
        .support()
        .iter()
        .all(|a| q_units.contains(&g.source(*a))));
    Ok(Some(witness))
}

/// Exhaustive dynamical-comparison check: over all pairs of diagonal
/// projections, whenever every extreme trace strictly orders them, a
/// subordinating normalizer must exist. Requires a principal pair and
/// at most [`PROJECTION_ENUM_CAP`] units.
pub fn check_dynamical_comparison(pair: &DiagonalPair) -> Result<Report, Error> {
    let g = pair.groupoid();
    let n = g.unit_count();
    if n > PROJECTION_ENUM_CAP {
        return Err(Error::CapExceeded(format!(
            "{n} units exceed the projection enumeration cap {PROJECTION_ENUM_CAP}"
        )));
    }
    let traces = extreme_traces(g)?;
    let mut report = Report::new("dynamical-comparison");
    let mut checked = 0usize;
    let mut ordered = 0usize;
    let mut ok = true;
    let mut counterexample = None;
    for p_mask in 0u32..(1 << n) {
        let p_units: BTreeSet<usize> = (0..n).filter(|u| p_mask & (1 << u) != 0).collect();
        let p = AlgebraElement::projection(g, &p_units);
        for q_mask in 0u32..(1 << n) {
            let q_units: BTreeSet<usize> = (0..n).filter(|u| q_mask & (1 << u) != 0).collect();
            let q = AlgebraElement::projection(g, &q_units);
            checked += 1;
            let strict = traces.iter().all(|t| {
                let tp = evaluate_trace(t, &p);
                let tq = evaluate_trace(t, &q);
                tp.re < tq.re
            });
            if !strict {
                continue;
            }
            ordered += 1;
            if subordinate(pair, &p, &q)?.is_none() {
                ok = false;
                counterexample = Some(format!("p = {p_units:?}, q = {q_units:?}"));
            }
        }
    }
    let fixture = format!("{checked} projection pairs, {ordered} strictly ordered");
    report.push(match counterexample {
        None => LawReport::named("dynamical-comparison", &fixture, ok),
        Some(ce) => LawReport::with_counterexample("dynamical-comparison", &fixture, ce),
    });
    Ok(report)
}

/// Runs the comparison check on the pair and on all its proper
/// quotients, since reductions inherit dynamical comparison.
pub fn check_dynamical_comparison_with_quotients(pair: &DiagonalPair) -> Result<Report, Error> {
    let mut report = check_dynamical_comparison(pair)?;
    for killed in pair.groupoid().invariant_subsets() {
        if killed.is_empty() || killed.len() == pair.groupoid().unit_count() {
            continue;
        }
        let quotient = quotient_pair(pair, &killed)?;
        let sub = check_dynamical_comparison(&quotient.pair)?;
        for mut check in sub.checks {
            check.fixture = format!("quotient by {killed:?}: {}", check.fixture);
            report.push(check);
        }
    }
    Ok(report)
}
