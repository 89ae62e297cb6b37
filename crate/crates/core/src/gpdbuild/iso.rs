use std::sync::Arc;

use serde::Serialize;

use super::{FinTopGroupoid, GpdError, GroupoidMorphism};

/// Backtracking nodes allowed before the search gives up.
const NODE_BUDGET: usize = 1_000_000;
const UNSET: usize = usize::MAX;

/// Result of an isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoOutcome {
    pub isomorphic: bool,
    /// An isomorphism, arrow by arrow, when one was found or confirmed.
    pub certificate: Option<Vec<usize>>,
    /// Why the groupoids are not isomorphic, or why the candidate fails.
    pub witness: Option<String>,
}

impl IsoOutcome {
    fn no(witness: String) -> Self {
        IsoOutcome { isomorphic: false, certificate: None, witness: Some(witness) }
    }
}

/// Checks whether `candidate` (or, without one, some bijection) is an
/// isomorphism of topological groupoids: a bijective homomorphism that is
/// continuous with continuous inverse. Without a candidate the search
/// requires `|arrows| <= search_cap`.
pub fn groupoid_iso_check(
    g: &Arc<FinTopGroupoid>,
    h: &Arc<FinTopGroupoid>,
    candidate: Option<&[usize]>,
    search_cap: usize,
) -> Result<IsoOutcome, GpdError> {
    if let Some(f) = candidate {
        return Ok(check_candidate(g, h, f));
    }
    if let Some(w) = invariant_mismatch(g, h) {
        return Ok(IsoOutcome::no(w));
    }
    if g.len() > search_cap {
        return Err(GpdError::SearchCapExceeded(search_cap));
    }
    let mut search = Search::new(g, h);
    match search.run()? {
        true => {
            let f = search.fwd.clone();
            let checked = check_candidate(g, h, &f);
            debug_assert!(checked.isomorphic);
            Ok(checked)
        }
        false => Ok(IsoOutcome::no("no structure-preserving bijection exists".into())),
    }
}

fn check_candidate(g: &Arc<FinTopGroupoid>, h: &Arc<FinTopGroupoid>, f: &[usize]) -> IsoOutcome {
    let morphism = match GroupoidMorphism::new(g.clone(), h.clone(), f.to_vec()) {
        Ok(m) => m,
        Err(e) => return IsoOutcome::no(e.to_string()),
    };
    let Some(inverse) = morphism.inverse() else {
        return IsoOutcome::no("candidate is not a bijection".into());
    };
    if let Some(w) = morphism.homomorphism_witness() {
        return IsoOutcome::no(w);
    }
    if !morphism.is_continuous() {
        return IsoOutcome::no("candidate is not continuous".into());
    }
    if !inverse.is_continuous() {
        return IsoOutcome::no("inverse of candidate is not continuous".into());
    }
    IsoOutcome { isomorphic: true, certificate: Some(f.to_vec()), witness: None }
}

type Signature = (bool, usize, usize, usize, usize);

fn signatures(g: &FinTopGroupoid) -> Vec<Signature> {
    let down = g.topology().down_sets();
    let source_count = |u: usize| (0..g.len()).filter(|&a| g.source(a) == u).count();
    (0..g.len())
        .map(|a| {
            (
                g.is_unit(a),
                g.topology().up(a).count_ones(..),
                down[a].count_ones(..),
                g.range_fibre(g.range(a)).len(),
                source_count(g.source(a)),
            )
        })
        .collect()
}

fn invariant_mismatch(g: &FinTopGroupoid, h: &FinTopGroupoid) -> Option<String> {
    if g.len() != h.len() {
        return Some(format!("arrow counts differ: {} vs {}", g.len(), h.len()));
    }
    if g.units().len() != h.units().len() {
        return Some(format!("unit counts differ: {} vs {}", g.units().len(), h.units().len()));
    }
    if g.composable_count() != h.composable_count() {
        return Some("numbers of composable pairs differ".into());
    }
    let mut a = signatures(g);
    let mut b = signatures(h);
    a.sort_unstable();
    b.sort_unstable();
    (a != b).then(|| "arrow signatures (unit, up/down degree, fibre sizes) differ".into())
}

struct Search<'a> {
    g: &'a FinTopGroupoid,
    h: &'a FinTopGroupoid,
    sig_g: Vec<Signature>,
    sig_h: Vec<Signature>,
    source_fibres_g: Vec<Vec<usize>>,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    trail: Vec<usize>,
    nodes: usize,
}

impl<'a> Search<'a> {
    fn new(g: &'a FinTopGroupoid, h: &'a FinTopGroupoid) -> Self {
        let mut source_fibres_g = vec![Vec::new(); g.len()];
        for a in 0..g.len() {
            source_fibres_g[g.source(a)].push(a);
        }
        Search {
            g,
            h,
            sig_g: signatures(g),
            sig_h: signatures(h),
            source_fibres_g,
            fwd: vec![UNSET; g.len()],
            bwd: vec![UNSET; h.len()],
            trail: Vec::new(),
            nodes: 0,
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().expect("nonempty");
            self.bwd[self.fwd[a]] = UNSET;
            self.fwd[a] = UNSET;
        }
    }

    /// Assigns `a -> b` and everything it forces; false on conflict.
    fn assign(&mut self, a: usize, b: usize) -> bool {
        let (g, h) = (self.g, self.h);
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            if self.fwd[a] == b {
                continue;
            }
            if self.fwd[a] != UNSET || self.bwd[b] != UNSET || self.sig_g[a] != self.sig_h[b] {
                return false;
            }
            let gt = g.topology();
            let ht = h.topology();
            for &c in &self.trail {
                let d = self.fwd[c];
                if gt.leq(a, c) != ht.leq(b, d) || gt.leq(c, a) != ht.leq(d, b) {
                    return false;
                }
            }
            self.fwd[a] = b;
            self.bwd[b] = a;
            self.trail.push(a);
            queue.push((g.range(a), h.range(b)));
            queue.push((g.source(a), h.source(b)));
            queue.push((g.inverse(a), h.inverse(b)));
            for &e in g.range_fibre(g.source(a)) {
                if self.fwd[e] != UNSET {
                    match h.mul(b, self.fwd[e]) {
                        Some(p) => queue.push((g.mul(a, e).expect("composable"), p)),
                        None => return false,
                    }
                }
            }
            for &e in &self.source_fibres_g[g.range(a)] {
                if self.fwd[e] != UNSET {
                    match h.mul(self.fwd[e], b) {
                        Some(p) => queue.push((g.mul(e, a).expect("composable"), p)),
                        None => return false,
                    }
                }
            }
        }
        true
    }

    fn run(&mut self) -> Result<bool, GpdError> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(GpdError::SearchCapExceeded(NODE_BUDGET));
        }
        let next = self
            .g
            .units()
            .iter()
            .copied()
            .find(|&u| self.fwd[u] == UNSET)
            .or_else(|| (0..self.g.len()).find(|&a| self.fwd[a] == UNSET));
        let Some(a) = next else {
            return Ok(true);
        };
        let candidates: Vec<usize> = if self.g.is_unit(a) {
            self.h.units().iter().copied().filter(|&u| self.bwd[u] == UNSET).collect()
        } else {
            let (r, s) = (self.fwd[self.g.range(a)], self.fwd[self.g.source(a)]);
            self.h
                .range_fibre(r)
                .iter()
                .copied()
                .filter(|&b| self.h.source(b) == s && self.bwd[b] == UNSET)
                .collect()
        };
        for b in candidates {
            let mark = self.trail.len();
            if self.assign(a, b) && self.run()? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::FinSpace;
    use crate::gpdbuild::{trivial_pair_groupoid, transformation_groupoid};
    use crate::pi1core::FiniteGroupTable;

    fn pair(x: &FinSpace) -> Arc<FinTopGroupoid> {
        Arc::new(trivial_pair_groupoid(x))
    }

    #[test]
    fn identity_is_iso() {
        let x = FinSpace::from_relations(&["a", "b"], &[("a", "b")], true).unwrap();
        let g = pair(&x);
        let id: Vec<usize> = (0..g.len()).collect();
        assert!(groupoid_iso_check(&g, &g, Some(&id), 100).unwrap().isomorphic);
        assert!(groupoid_iso_check(&g, &g, None, 100).unwrap().isomorphic);
    }

    #[test]
    fn search_finds_renaming() {
        let x = FinSpace::from_relations(&["a", "b"], &[("a", "b")], true).unwrap();
        let y = FinSpace::from_relations(&["p", "q"], &[("q", "p")], true).unwrap();
        let out = groupoid_iso_check(&pair(&x), &pair(&y), None, 100).unwrap();
        assert!(out.isomorphic);
        assert!(out.certificate.is_some());
    }

    #[test]
    fn topology_distinguishes() {
        let chain = FinSpace::from_relations(&["a", "b"], &[("a", "b")], true).unwrap();
        let discrete = FinSpace::discrete(&["a", "b"]).unwrap();
        let out = groupoid_iso_check(&pair(&chain), &pair(&discrete), None, 100).unwrap();
        assert!(!out.isomorphic);
    }

    #[test]
    fn algebra_distinguishes_same_counts() {
        // 4 arrows and 2 units each: Z/2 isotropy at both points vs one orbit
        let two = FinSpace::discrete(&["a", "b"]).unwrap();
        let trivial_action = transformation_groupoid(&two, &FiniteGroupTable::cyclic(2), &[vec![0, 0], vec![1, 1]]).unwrap();
        let swap = transformation_groupoid(&two, &FiniteGroupTable::cyclic(2), &[vec![0, 1], vec![1, 0]]).unwrap();
        let out = groupoid_iso_check(&Arc::new(trivial_action), &Arc::new(swap), None, 100).unwrap();
        assert!(!out.isomorphic);
    }

    #[test]
    fn bad_candidate() {
        let x = FinSpace::discrete(&["a", "b"]).unwrap();
        let g = pair(&x);
        let out = groupoid_iso_check(&g, &g, Some(&[0, 0, 0, 0]), 100).unwrap();
        assert!(!out.isomorphic);
        assert_eq!(out.witness.as_deref(), Some("candidate is not a bijection"));
    }

    #[test]
    fn cap_enforced() {
        let x = FinSpace::discrete(&["a", "b", "c"]).unwrap();
        let g = pair(&x);
        assert!(matches!(groupoid_iso_check(&g, &g, None, 4), Err(GpdError::SearchCapExceeded(4))));
    }
}
