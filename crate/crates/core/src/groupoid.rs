//! Finite discrete groupoids: a finite unit set, a finite arrow set with
//! source and target maps, a partial composition table and a total
//! inversion map. All topological structure (etale, ample, Hausdorff,
//! second countable) degenerates for finite discrete models and is
//! reported as automatic rather than computed.

use crate::error::Error;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// One arrow of a finite groupoid. Ids are opaque strings; pair
/// groupoids canonically use `(target,source)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite discrete groupoid. Immutable after construction; all
/// operations are pure, so values are safe to share across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    units: Vec<String>,
    arrows: Vec<Arrow>,
    unit_arrows: Vec<usize>,
    /// `compose[beta * arrows.len() + alpha]` is the arrow `beta . alpha`
    /// when defined (left factor applied after right factor).
    compose: Vec<Option<usize>>,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroupoid({} units, {} arrows)",
            self.units.len(),
            self.arrows.len()
        )
    }
}

/// A groupoid axiom violated by a candidate structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    /// compose defined off the fibered domain, or undefined on it
    ComposeDomain {
        left: String,
        right: String,
    },
    /// source/target of a composite disagree with the factors
    ComposeEndpoints {
        left: String,
        right: String,
    },
    Associativity {
        outer: String,
        middle: String,
        inner: String,
    },
    IdentityEndpoints {
        unit: String,
    },
    IdentityLaw {
        unit: String,
        arrow: String,
    },
    InverseInvolution {
        arrow: String,
    },
    InverseLaw {
        arrow: String,
    },
}

/// Outcome of [`FiniteGroupoid::validate`]. The topological predicates
/// hold by construction for finite discrete models; the note records
/// that they were not computed.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
    pub etale: bool,
    pub ample: bool,
    pub hausdorff: bool,
    pub second_countable: bool,
    pub note: &'static str,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-unit isotropy arrows together with the principality verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct IsotropyReport {
    /// unit id -> ids of arrows with source = target = that unit
    pub isotropy: BTreeMap<String, Vec<String>>,
    pub is_principal: bool,
    /// coincides with `is_principal` for finite discrete groupoids
    pub is_effective: bool,
}

impl FiniteGroupoid {
    /// General constructor. Checks only shape (index ranges, id
    /// uniqueness, table sizes); algebraic laws are the business of
    /// [`validate`](Self::validate), so deliberately broken structures
    /// can be built for negative tests.
    pub fn from_parts(
        units: Vec<String>,
        arrows: Vec<Arrow>,
        unit_arrows: Vec<usize>,
        compose: Vec<Option<usize>>,
        inverse: Vec<usize>,
    ) -> Result<Self, Error> {
        let n = arrows.len();
        if unit_arrows.len() != units.len() {
            return Err(Error::Malformed("unit arrow table has wrong length".into()));
        }
        if compose.len() != n * n {
            return Err(Error::Malformed("composition table has wrong size".into()));
        }
        if inverse.len() != n {
            return Err(Error::Malformed("inverse table has wrong length".into()));
        }
        let mut unit_ids = BTreeSet::new();
        for u in &units {
            if !unit_ids.insert(u.clone()) {
                return Err(Error::Malformed(format!("duplicate unit id {u:?}")));
            }
        }
        let mut arrow_ids = BTreeSet::new();
        for a in &arrows {
            if !arrow_ids.insert(a.id.clone()) {
                return Err(Error::Malformed(format!("duplicate arrow id {:?}", a.id)));
            }
            if a.source >= units.len() || a.target >= units.len() {
                return Err(Error::Malformed(format!(
                    "arrow {:?} has out-of-range endpoint",
                    a.id
                )));
            }
        }
        for &e in &unit_arrows {
            if e >= n {
                return Err(Error::Malformed("unit arrow index out of range".into()));
            }
        }
        for c in compose.iter().flatten() {
            if *c >= n {
                return Err(Error::Malformed("composition result out of range".into()));
            }
        }
        for &i in &inverse {
            if i >= n {
                return Err(Error::Malformed("inverse index out of range".into()));
            }
        }
        Ok(FiniteGroupoid {
            units,
            arrows,
            unit_arrows,
            compose,
            inverse,
        })
    }

    /// Principal groupoid of an equivalence relation, given as the set
    /// of related ordered pairs. Arrows are ordered and labelled by
    /// `(target,source)`. Errors unless the pair set is reflexive,
    /// symmetric and transitive.
    pub fn from_relation(
        units: Vec<String>,
        related: &BTreeSet<(usize, usize)>,
    ) -> Result<Self, Error> {
        let n = units.len();
        for &(t, s) in related {
            if t >= n || s >= n {
                return Err(Error::Malformed("relation pair out of range".into()));
            }
        }
        for u in 0..n {
            if !related.contains(&(u, u)) {
                return Err(Error::Malformed("relation is not reflexive".into()));
            }
        }
        for &(t, s) in related {
            if !related.contains(&(s, t)) {
                return Err(Error::Malformed("relation is not symmetric".into()));
            }
        }
        for &(t, s) in related {
            for &(t2, s2) in related {
                if s2 == t && !related.contains(&(t2, s)) {
                    return Err(Error::Malformed("relation is not transitive".into()));
                }
            }
        }
        // (t,s) sorted: index lookup by ordered pair
        let pairs: Vec<(usize, usize)> = related.iter().cloned().collect();
        let index: BTreeMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let arrows: Vec<Arrow> = pairs
            .iter()
            .map(|&(t, s)| Arrow {
                id: format!("({},{})", units[t], units[s]),
                source: s,
                target: t,
            })
            .collect();
        let unit_arrows: Vec<usize> = (0..n).map(|u| index[&(u, u)]).collect();
        let m = arrows.len();
        let mut compose = vec![None; m * m];
        for (b, &(tb, sb)) in pairs.iter().enumerate() {
            for (a, &(ta, sa)) in pairs.iter().enumerate() {
                if sb == ta {
                    compose[b * m + a] = Some(index[&(tb, sa)]);
                }
            }
        }
        let inverse: Vec<usize> = pairs.iter().map(|&(t, s)| index[&(s, t)]).collect();
        Ok(FiniteGroupoid {
            units,
            arrows,
            unit_arrows,
            compose,
            inverse,
        })
    }

    /// Principal groupoid with one full-relation block per partition
    /// class. Unit ids are `0..n` as decimal strings.
    pub fn from_partition(n: usize, blocks: &[Vec<usize>]) -> Result<Self, Error> {
        let mut seen = vec![false; n];
        let mut related = BTreeSet::new();
        for block in blocks {
            for &u in block {
                if u >= n || seen[u] {
                    return Err(Error::Malformed("blocks do not partition the units".into()));
                }
                seen[u] = true;
            }
            for &u in block {
                for &v in block {
                    related.insert((u, v));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Malformed("blocks do not partition the units".into()));
        }
        let units = (0..n).map(|u| u.to_string()).collect();
        Self::from_relation(units, &related)
    }

    /// Full pair groupoid on `n` units: one arrow for every ordered pair.
    pub fn full_relation(n: usize) -> Self {
        Self::from_partition(n, &[(0..n).collect()]).expect("full relation is a partition")
    }

    /// Units-only groupoid on `n` units.
    pub fn trivial(n: usize) -> Self {
        let blocks: Vec<Vec<usize>> = (0..n).map(|u| vec![u]).collect();
        Self::from_partition(n, &blocks).expect("singletons partition the units")
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, index: usize) -> &Arrow {
        &self.arrows[index]
    }

    pub fn unit_id(&self, unit: usize) -> &str {
        &self.units[unit]
    }

    pub fn unit_index(&self, id: &str) -> Option<usize> {
        self.units.iter().position(|u| u == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn source(&self, arrow: usize) -> usize {
        self.arrows[arrow].source
    }

    pub fn target(&self, arrow: usize) -> usize {
        self.arrows[arrow].target
    }

    pub fn unit_arrow(&self, unit: usize) -> usize {
        self.unit_arrows[unit]
    }

    pub fn is_unit_arrow(&self, arrow: usize) -> bool {
        self.unit_arrows.contains(&arrow)
    }

    /// `beta . alpha` when `source(beta) = target(alpha)`.
    pub fn compose(&self, beta: usize, alpha: usize) -> Option<usize> {
        self.compose[beta * self.arrows.len() + alpha]
    }

    pub fn inverse(&self, arrow: usize) -> usize {
        self.inverse[arrow]
    }

    /// The unique arrow `source -> target` of a principal groupoid, if any.
    pub fn arrow_between(&self, source: usize, target: usize) -> Option<usize> {
        self.arrows
            .iter()
            .position(|a| a.source == source && a.target == target)
    }

    /// Checks every groupoid axiom and returns the violations found.
    /// Empty report means the structure is a groupoid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.arrows.len();
        for b in 0..n {
            for a in 0..n {
                let fibered = self.arrows[b].source == self.arrows[a].target;
                match self.compose(b, a) {
                    Some(c) => {
                        if !fibered {
                            violations.push(AxiomViolation::ComposeDomain {
                                left: self.arrows[b].id.clone(),
                                right: self.arrows[a].id.clone(),
                            });
                        } else if self.arrows[c].source != self.arrows[a].source
                            || self.arrows[c].target != self.arrows[b].target
                        {
                            violations.push(AxiomViolation::ComposeEndpoints {
                                left: self.arrows[b].id.clone(),
                                right: self.arrows[a].id.clone(),
                            });
                        }
                    }
                    None => {
                        if fibered {
                            violations.push(AxiomViolation::ComposeDomain {
                                left: self.arrows[b].id.clone(),
                                right: self.arrows[a].id.clone(),
                            });
                        }
                    }
                }
            }
        }
        for c in 0..n {
            for b in 0..n {
                if self.compose(c, b).is_none() {
                    continue;
                }
                for a in 0..n {
                    if self.compose(b, a).is_none() {
                        continue;
                    }
                    let left = self.compose(c, b).and_then(|cb| self.compose(cb, a));
                    let right = self.compose(b, a).and_then(|ba| self.compose(c, ba));
                    if left != right || left.is_none() {
                        violations.push(AxiomViolation::Associativity {
                            outer: self.arrows[c].id.clone(),
                            middle: self.arrows[b].id.clone(),
                            inner: self.arrows[a].id.clone(),
                        });
                    }
                }
            }
        }
        for (u, &e) in self.unit_arrows.iter().enumerate() {
            if self.arrows[e].source != u || self.arrows[e].target != u {
                violations.push(AxiomViolation::IdentityEndpoints {
                    unit: self.units[u].clone(),
                });
                continue;
            }
            for a in 0..n {
                if self.arrows[a].source == u && self.compose(a, e) != Some(a) {
                    violations.push(AxiomViolation::IdentityLaw {
                        unit: self.units[u].clone(),
                        arrow: self.arrows[a].id.clone(),
                    });
                }
                if self.arrows[a].target == u && self.compose(e, a) != Some(a) {
                    violations.push(AxiomViolation::IdentityLaw {
                        unit: self.units[u].clone(),
                        arrow: self.arrows[a].id.clone(),
                    });
                }
            }
        }
        for a in 0..n {
            let inv = self.inverse[a];
            if self.inverse[inv] != a {
                violations.push(AxiomViolation::InverseInvolution {
                    arrow: self.arrows[a].id.clone(),
                });
            }
            let t = self.arrows[a].target;
            let s = self.arrows[a].source;
            let right = self.compose(a, inv);
            let left = self.compose(inv, a);
            if right != Some(self.unit_arrows[t]) || left != Some(self.unit_arrows[s]) {
                violations.push(AxiomViolation::InverseLaw {
                    arrow: self.arrows[a].id.clone(),
                });
            }
        }
        ValidationReport {
            violations,
            etale: true,
            ample: true,
            hausdorff: true,
            second_countable: true,
            note: "topological predicates are automatic for finite discrete groupoids",
        }
    }

    /// Isotropy arrows per unit, with the principality verdict. For a
    /// finite discrete groupoid, effective and principal coincide.
    pub fn isotropy_report(&self) -> IsotropyReport {
        let mut isotropy = BTreeMap::new();
        let mut principal = true;
        for (u, id) in self.units.iter().enumerate() {
            let arrows: Vec<String> = self
                .arrows
                .iter()
                .filter(|a| a.source == u && a.target == u)
                .map(|a| a.id.clone())
                .collect();
            if arrows.len() != 1 {
                principal = false;
            }
            isotropy.insert(id.clone(), arrows);
        }
        IsotropyReport {
            isotropy,
            is_principal: principal,
            is_effective: principal,
        }
    }

    pub fn is_principal(&self) -> bool {
        self.isotropy_report().is_principal
    }

    /// Partition of the unit set into orbits: `u` and `v` share a block
    /// iff an arrow `u -> v` exists. Blocks are sorted by least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.units.len();
        let mut repr: Vec<usize> = (0..n).collect();
        fn find(repr: &mut Vec<usize>, u: usize) -> usize {
            if repr[u] != u {
                let root = find(repr, repr[u]);
                repr[u] = root;
            }
            repr[u]
        }
        for a in &self.arrows {
            let rs = find(&mut repr, a.source);
            let rt = find(&mut repr, a.target);
            if rs != rt {
                let lo = rs.min(rt);
                let hi = rs.max(rt);
                repr[hi] = lo;
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for u in 0..n {
            let root = find(&mut repr, u);
            blocks.entry(root).or_default().push(u);
        }
        blocks.into_values().collect()
    }

    /// Orbit index of each unit, parallel to [`orbits`](Self::orbits).
    pub fn orbit_of(&self) -> Vec<usize> {
        let blocks = self.orbits();
        let mut of = vec![0; self.units.len()];
        for (i, block) in blocks.iter().enumerate() {
            for &u in block {
                of[u] = i;
            }
        }
        of
    }

    /// All invariant unit subsets (unions of orbits), as sorted unit
    /// index sets, ordered by (cardinality, content). There are exactly
    /// `2^(number of orbits)` of them.
    pub fn invariant_subsets(&self) -> Vec<BTreeSet<usize>> {
        let blocks = self.orbits();
        let k = blocks.len();
        assert!(k < usize::BITS as usize, "too many orbits");
        let mut subsets = Vec::with_capacity(1 << k);
        for mask in 0u64..(1u64 << k) {
            let mut s = BTreeSet::new();
            for (i, block) in blocks.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    s.extend(block.iter().cloned());
                }
            }
            subsets.push(s);
        }
        subsets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        subsets
    }

    pub fn is_invariant(&self, subset: &BTreeSet<usize>) -> bool {
        self.arrows.iter().all(|a| {
            let s_in = subset.contains(&a.source);
            let t_in = subset.contains(&a.target);
            s_in == t_in
        })
    }

    /// Restriction to the arrows with both endpoints in `keep`. The
    /// subset need not be invariant; callers check invariance when a
    /// result needs it. Arrow and unit ids survive unchanged.
    pub fn reduction(&self, keep: &BTreeSet<usize>) -> Result<FiniteGroupoid, Error> {
        for &u in keep {
            if u >= self.units.len() {
                return Err(Error::UnknownUnit(u.to_string()));
            }
        }
        let unit_keep: Vec<usize> = (0..self.units.len()).filter(|u| keep.contains(u)).collect();
        let unit_new: BTreeMap<usize, usize> = unit_keep
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let arrow_keep: Vec<usize> = (0..self.arrows.len())
            .filter(|&a| {
                keep.contains(&self.arrows[a].source) && keep.contains(&self.arrows[a].target)
            })
            .collect();
        let arrow_new: BTreeMap<usize, usize> = arrow_keep
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let units: Vec<String> = unit_keep.iter().map(|&u| self.units[u].clone()).collect();
        let arrows: Vec<Arrow> = arrow_keep
            .iter()
            .map(|&a| Arrow {
                id: self.arrows[a].id.clone(),
                source: unit_new[&self.arrows[a].source],
                target: unit_new[&self.arrows[a].target],
            })
            .collect();
        let unit_arrows: Vec<usize> = unit_keep
            .iter()
            .map(|&u| arrow_new[&self.unit_arrows[u]])
            .collect();
        let m = arrow_keep.len();
        let mut compose = vec![None; m * m];
        for (bi, &b) in arrow_keep.iter().enumerate() {
            for (ai, &a) in arrow_keep.iter().enumerate() {
                if let Some(c) = self.compose(b, a) {
                    // both endpoints of the factors lie in keep, so the
                    // composite does too
                    compose[bi * m + ai] = Some(arrow_new[&c]);
                }
            }
        }
        let inverse: Vec<usize> = arrow_keep
            .iter()
            .map(|&a| arrow_new[&self.inverse[a]])
            .collect();
        FiniteGroupoid::from_parts(units, arrows, unit_arrows, compose, inverse)
    }

    /// Tagged disjoint union; unit and arrow ids get `0:`/`1:` prefixes.
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let mut units: Vec<String> = self.units.iter().map(|u| format!("0:{u}")).collect();
        units.extend(other.units.iter().map(|u| format!("1:{u}")));
        let n1 = self.units.len();
        let a1 = self.arrows.len();
        let mut arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| Arrow {
                id: format!("0:{}", a.id),
                source: a.source,
                target: a.target,
            })
            .collect();
        arrows.extend(other.arrows.iter().map(|a| Arrow {
            id: format!("1:{}", a.id),
            source: a.source + n1,
            target: a.target + n1,
        }));
        let mut unit_arrows: Vec<usize> = self.unit_arrows.clone();
        unit_arrows.extend(other.unit_arrows.iter().map(|&e| e + a1));
        let m = arrows.len();
        let mut compose = vec![None; m * m];
        for b in 0..a1 {
            for a in 0..a1 {
                compose[b * m + a] = self.compose(b, a);
            }
        }
        for b in 0..other.arrows.len() {
            for a in 0..other.arrows.len() {
                compose[(b + a1) * m + (a + a1)] = other.compose(b, a).map(|c| c + a1);
            }
        }
        let mut inverse: Vec<usize> = self.inverse.clone();
        inverse.extend(other.inverse.iter().map(|&i| i + a1));
        FiniteGroupoid {
            units,
            arrows,
            unit_arrows,
            compose,
            inverse,
        }
    }

    /// Product groupoid: unit pairs, arrow pairs, componentwise
    /// structure. Arrow `(i, j)` sits at index `i * other.arrow_count() + j`.
    pub fn product(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let n2 = other.units.len();
        let m2 = other.arrows.len();
        let mut units = Vec::with_capacity(self.units.len() * n2);
        for u in &self.units {
            for v in &other.units {
                units.push(format!("({u},{v})"));
            }
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() * m2);
        for a in &self.arrows {
            for b in &other.arrows {
                arrows.push(Arrow {
                    id: format!("({},{})", a.id, b.id),
                    source: a.source * n2 + b.source,
                    target: a.target * n2 + b.target,
                });
            }
        }
        let mut unit_arrows = Vec::with_capacity(units.len());
        for &e1 in &self.unit_arrows {
            for &e2 in &other.unit_arrows {
                unit_arrows.push(e1 * m2 + e2);
            }
        }
        let m = arrows.len();
        let mut compose = vec![None; m * m];
        for b1 in 0..self.arrows.len() {
            for b2 in 0..m2 {
                for a1 in 0..self.arrows.len() {
                    for a2 in 0..m2 {
                        if let (Some(c1), Some(c2)) = (self.compose(b1, a1), other.compose(b2, a2))
                        {
                            compose[(b1 * m2 + b2) * m + (a1 * m2 + a2)] = Some(c1 * m2 + c2);
                        }
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(m);
        for a in 0..self.arrows.len() {
            for b in 0..m2 {
                inverse.push(self.inverse[a] * m2 + other.inverse[b]);
            }
        }
        FiniteGroupoid {
            units,
            arrows,
            unit_arrows,
            compose,
            inverse,
        }
    }

    /// Validated bisection constructor; see [`Bisection`].
    pub fn bisection(&self, arrow_set: BTreeSet<usize>) -> Result<Bisection, Error> {
        if !self.is_bisection(&arrow_set) {
            return Err(Error::Malformed(
                "source or target collide on the arrow set".into(),
            ));
        }
        Ok(Bisection { arrow_set })
    }

    /// True iff source and target are both injective on `arrow_set`.
    pub fn is_bisection(&self, arrow_set: &BTreeSet<usize>) -> bool {
        let mut sources = BTreeSet::new();
        let mut targets = BTreeSet::new();
        for &a in arrow_set {
            if a >= self.arrows.len() {
                return false;
            }
            if !sources.insert(self.arrows[a].source) || !targets.insert(self.arrows[a].target) {
                return false;
            }
        }
        true
    }

    /// Enumerates bisections in lexicographic order of their sorted
    /// arrow index sets, starting with the empty set. Stops after `cap`
    /// bisections, returning `None` to signal truncation.
    pub fn bisections_capped(&self, cap: usize) -> (Vec<BTreeSet<usize>>, bool) {
        let n = self.arrows.len();
        let mut out: Vec<BTreeSet<usize>> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut complete = true;

        fn extend(
            g: &FiniteGroupoid,
            n: usize,
            start: usize,
            stack: &mut Vec<usize>,
            out: &mut Vec<BTreeSet<usize>>,
            cap: usize,
            complete: &mut bool,
        ) {
            if out.len() >= cap {
                *complete = false;
                return;
            }
            out.push(stack.iter().cloned().collect());
            for a in start..n {
                let ok = stack.iter().all(|&b| {
                    g.arrows[a].source != g.arrows[b].source
                        && g.arrows[a].target != g.arrows[b].target
                });
                if ok {
                    stack.push(a);
                    extend(g, n, a + 1, stack, out, cap, complete);
                    stack.pop();
                    if !*complete && out.len() >= cap {
                        return;
                    }
                }
            }
        }
        extend(self, n, 0, &mut stack, &mut out, cap, &mut complete);
        (out, complete)
    }

    pub fn shared(self) -> Arc<FiniteGroupoid> {
        Arc::new(self)
    }
}

/// An arrow set on which source and target are both injective: the
/// geometric form of a normalizer's support. Built through
/// [`FiniteGroupoid::bisection`], which checks the injectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisection {
    arrow_set: BTreeSet<usize>,
}

impl Bisection {
    pub fn arrows(&self) -> &BTreeSet<usize> {
        &self.arrow_set
    }

    pub fn sources<'a>(&'a self, g: &'a FiniteGroupoid) -> impl Iterator<Item = usize> + 'a {
        self.arrow_set.iter().map(|&a| g.source(a))
    }

    pub fn targets<'a>(&'a self, g: &'a FiniteGroupoid) -> impl Iterator<Item = usize> + 'a {
        self.arrow_set.iter().map(|&a| g.target(a))
    }
}

/// A map of groupoids given by explicit unit and arrow tables.
#[derive(Clone, Debug)]
pub struct GroupoidMap {
    pub domain: Arc<FiniteGroupoid>,
    pub codomain: Arc<FiniteGroupoid>,
    pub unit_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl GroupoidMap {
    /// Checks that the tables define a homomorphism: sources, targets,
    /// identities, composition and inversion are all preserved.
    pub fn is_homomorphism(&self) -> bool {
        let d = &self.domain;
        let c = &self.codomain;
        if self.unit_map.len() != d.unit_count() || self.arrow_map.len() != d.arrow_count() {
            return false;
        }
        if self.unit_map.iter().any(|&u| u >= c.unit_count())
            || self.arrow_map.iter().any(|&a| a >= c.arrow_count())
        {
            return false;
        }
        for (a, arr) in d.arrows().iter().enumerate() {
            let img = self.arrow_map[a];
            if c.source(img) != self.unit_map[arr.source]
                || c.target(img) != self.unit_map[arr.target]
            {
                return false;
            }
            if self.arrow_map[d.inverse(a)] != c.inverse(img) {
                return false;
            }
        }
        for u in 0..d.unit_count() {
            if self.arrow_map[d.unit_arrow(u)] != c.unit_arrow(self.unit_map[u]) {
                return false;
            }
        }
        for b in 0..d.arrow_count() {
            for a in 0..d.arrow_count() {
                match d.compose(b, a) {
                    Some(ba) => {
                        let img = c.compose(self.arrow_map[b], self.arrow_map[a]);
                        if img != Some(self.arrow_map[ba]) {
                            return false;
                        }
                    }
                    None => {
                        // sources and targets are preserved, so the images
                        // are non-composable as well; nothing to check
                    }
                }
            }
        }
        true
    }

    pub fn is_isomorphism(&self) -> bool {
        if !self.is_homomorphism() {
            return false;
        }
        let mut seen_units = vec![false; self.codomain.unit_count()];
        for &u in &self.unit_map {
            if seen_units[u] {
                return false;
            }
            seen_units[u] = true;
        }
        let mut seen_arrows = vec![false; self.codomain.arrow_count()];
        for &a in &self.arrow_map {
            if seen_arrows[a] {
                return false;
            }
            seen_arrows[a] = true;
        }
        seen_units.iter().all(|&s| s) && seen_arrows.iter().all(|&s| s)
    }

    /// The inverse of an isomorphism.
    pub fn inverted(&self) -> GroupoidMap {
        let mut unit_map = vec![0; self.codomain.unit_count()];
        for (u, &img) in self.unit_map.iter().enumerate() {
            unit_map[img] = u;
        }
        let mut arrow_map = vec![0; self.codomain.arrow_count()];
        for (a, &img) in self.arrow_map.iter().enumerate() {
            arrow_map[img] = a;
        }
        GroupoidMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            unit_map,
            arrow_map,
        }
    }
}
