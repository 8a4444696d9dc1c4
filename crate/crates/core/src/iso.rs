//! Brute-force groupoid isomorphism search: lexicographic backtracking
//! over unit bijections, pruned on orbit-size and isotropy multisets,
//! then fiberwise arrow matching. Deterministic under the fixed unit
//! ordering, so results are stable enough for golden tests.

use crate::error::Error;
use crate::groupoid::{FiniteGroupoid, GroupoidMap};
use std::sync::Arc;

/// Default cap on the combined arrow count of the two inputs.
pub const DEFAULT_ISO_CAP: usize = 64;

struct Search {
    g1: Arc<FiniteGroupoid>,
    g2: Arc<FiniteGroupoid>,
    orbit1: Vec<usize>,
    orbit2: Vec<usize>,
    orbit_sizes1: Vec<usize>,
    orbit_sizes2: Vec<usize>,
}

impl Search {
    fn unit_profile(
        g: &FiniteGroupoid,
        orbit_sizes: &[usize],
        orbit: &[usize],
        u: usize,
    ) -> (usize, usize, usize, usize) {
        let iso = g
            .arrows()
            .iter()
            .filter(|a| a.source == u && a.target == u)
            .count();
        let out = g.arrows().iter().filter(|a| a.source == u).count();
        let into = g.arrows().iter().filter(|a| a.target == u).count();
        (orbit_sizes[orbit[u]], iso, out, into)
    }

    fn run(&self) -> Option<GroupoidMap> {
        let n = self.g1.unit_count();
        let mut unit_map = vec![usize::MAX; n];
        let mut used = vec![false; self.g2.unit_count()];
        self.assign_units(0, &mut unit_map, &mut used)
    }

    fn assign_units(
        &self,
        u: usize,
        unit_map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Option<GroupoidMap> {
        if u == self.g1.unit_count() {
            return self.match_arrows(unit_map);
        }
        let p1 = Self::unit_profile(&self.g1, &self.orbit_sizes1, &self.orbit1, u);
        for v in 0..self.g2.unit_count() {
            if used[v] {
                continue;
            }
            if Self::unit_profile(&self.g2, &self.orbit_sizes2, &self.orbit2, v) != p1 {
                continue;
            }
            // all previously assigned units must agree about relatedness
            let consistent = (0..u).all(|w| {
                let fiber1 = self
                    .g1
                    .arrows()
                    .iter()
                    .filter(|a| a.source == w && a.target == u)
                    .count();
                let fiber2 = self
                    .g2
                    .arrows()
                    .iter()
                    .filter(|a| a.source == unit_map[w] && a.target == v)
                    .count();
                let back1 = self
                    .g1
                    .arrows()
                    .iter()
                    .filter(|a| a.source == u && a.target == w)
                    .count();
                let back2 = self
                    .g2
                    .arrows()
                    .iter()
                    .filter(|a| a.source == v && a.target == unit_map[w])
                    .count();
                fiber1 == fiber2 && back1 == back2
            });
            if !consistent {
                continue;
            }
            unit_map[u] = v;
            used[v] = true;
            if let Some(found) = self.assign_units(u + 1, unit_map, used) {
                return Some(found);
            }
            unit_map[u] = usize::MAX;
            used[v] = false;
        }
        None
    }

    fn match_arrows(&self, unit_map: &[usize]) -> Option<GroupoidMap> {
        let m = self.g1.arrow_count();
        let mut arrow_map = vec![usize::MAX; m];
        let mut used = vec![false; self.g2.arrow_count()];
        self.assign_arrows(0, unit_map, &mut arrow_map, &mut used)
    }

    fn assign_arrows(
        &self,
        a: usize,
        unit_map: &[usize],
        arrow_map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Option<GroupoidMap> {
        if a == self.g1.arrow_count() {
            let candidate = GroupoidMap {
                domain: self.g1.clone(),
                codomain: self.g2.clone(),
                unit_map: unit_map.to_vec(),
                arrow_map: arrow_map.clone(),
            };
            return if candidate.is_isomorphism() {
                Some(candidate)
            } else {
                None
            };
        }
        let src = unit_map[self.g1.source(a)];
        let dst = unit_map[self.g1.target(a)];
        for b in 0..self.g2.arrow_count() {
            if used[b] || self.g2.source(b) != src || self.g2.target(b) != dst {
                continue;
            }
            // composition with already-assigned arrows must be preserved
            let consistent = (0..a).all(|c| {
                check_pair(&self.g1, &self.g2, arrow_map, a, b, c, arrow_map[c])
                    && check_pair(&self.g1, &self.g2, arrow_map, c, arrow_map[c], a, b)
            }) && check_pair(&self.g1, &self.g2, arrow_map, a, b, a, b);
            if !consistent {
                continue;
            }
            arrow_map[a] = b;
            used[b] = true;
            if let Some(found) = self.assign_arrows(a + 1, unit_map, arrow_map, used) {
                return Some(found);
            }
            arrow_map[a] = usize::MAX;
            used[b] = false;
        }
        None
    }
}

fn check_pair(
    g1: &FiniteGroupoid,
    g2: &FiniteGroupoid,
    arrow_map: &[usize],
    left1: usize,
    left2: usize,
    right1: usize,
    right2: usize,
) -> bool {
    match g1.compose(left1, right1) {
        None => g2.compose(left2, right2).is_none(),
        Some(c1) => {
            let img = arrow_map.get(c1).copied().unwrap_or(usize::MAX);
            match g2.compose(left2, right2) {
                None => false,
                // composite not assigned yet: defer the check
                Some(c2) => img == usize::MAX || img == c2,
            }
        }
    }
}

/// Searches for a structure-preserving bijection between two valid
/// groupoids. Returns `None` when none exists. Errors when the combined
/// arrow count exceeds `cap`.
pub fn find_isomorphism(
    g1: &Arc<FiniteGroupoid>,
    g2: &Arc<FiniteGroupoid>,
    cap: usize,
) -> Result<Option<GroupoidMap>, Error> {
    let total = g1.arrow_count() + g2.arrow_count();
    if total > cap {
        return Err(Error::CapExceeded(format!(
            "combined arrow count {total} exceeds isomorphism cap {cap}"
        )));
    }
    if g1.unit_count() != g2.unit_count() || g1.arrow_count() != g2.arrow_count() {
        return Ok(None);
    }
    let orbits1 = g1.orbits();
    let orbits2 = g2.orbits();
    let sizes1: Vec<usize> = orbits1.iter().map(Vec::len).collect();
    let sizes2: Vec<usize> = orbits2.iter().map(Vec::len).collect();
    {
        let mut s1 = sizes1.clone();
        let mut s2 = sizes2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return Ok(None);
        }
    }
    let mut iso1: Vec<usize> = (0..g1.unit_count())
        .map(|u| {
            g1.arrows()
                .iter()
                .filter(|a| a.source == u && a.target == u)
                .count()
        })
        .collect();
    let mut iso2: Vec<usize> = (0..g2.unit_count())
        .map(|u| {
            g2.arrows()
                .iter()
                .filter(|a| a.source == u && a.target == u)
                .count()
        })
        .collect();
    iso1.sort_unstable();
    iso2.sort_unstable();
    if iso1 != iso2 {
        return Ok(None);
    }
    let search = Search {
        g1: g1.clone(),
        g2: g2.clone(),
        orbit1: g1.orbit_of(),
        orbit2: g2.orbit_of(),
        orbit_sizes1: sizes1,
        orbit_sizes2: sizes2,
    };
    Ok(search.run())
}
