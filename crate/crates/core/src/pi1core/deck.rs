use serde::Serialize;

use crate::finspace::{is_hausdorff, quotient_space};

use super::UniversalCover;

const PROPER_JUSTIFICATION: &str = "the deck group is finite and discrete, so for compact K, L the set \
     of group elements moving K into L is finite, hence compact";

/// Properties of the deck action of π₁ on the universal cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeckActionReport {
    /// Every stabilizer is trivial.
    pub free: bool,
    /// Every point has an open `U` with `γU ∩ U = ∅` for `γ ≠ e`.
    pub covering_space_action: bool,
    /// Points in different orbits have neighbourhoods `V`, `W` with
    /// `γV ∩ W = ∅` for every `γ`.
    pub hausdorff_criterion: bool,
    pub base_hausdorff: bool,
    /// The orbit space is the base, as preorders.
    pub quotient_is_base: bool,
    pub proper: bool,
    pub proper_justification: String,
}

impl DeckActionReport {
    /// The Hausdorff criterion agrees with the Hausdorffness of the orbit
    /// space, which is the base.
    pub fn consistent(&self) -> bool {
        self.quotient_is_base && self.hausdorff_criterion == self.base_hausdorff
    }
}

/// Checks the action axioms exhaustively. Every neighbourhood of a point
/// contains its minimal open, so testing minimal opens is exact.
pub fn deck_action_report(c: &UniversalCover) -> DeckActionReport {
    let total = c.total();
    let n = c.degree();
    let points = total.len();
    let free = (0..points).all(|p| (1..n).all(|h| c.act(p, h) != p));
    let translate = |p: usize, h: usize| {
        let mut s = total.empty_set();
        for q in total.up(p).ones() {
            s.insert(c.act(q, h));
        }
        s
    };
    let covering_space_action =
        (0..points).all(|p| (1..n).all(|h| translate(p, h).is_disjoint(total.up(p))));
    let orbit = |p: usize| c.split(p).0;
    let mut hausdorff_criterion = true;
    'outer: for p in 0..points {
        for q in 0..points {
            if orbit(p) == orbit(q) {
                continue;
            }
            if (0..n).any(|h| !translate(p, h).is_disjoint(total.up(q))) {
                hausdorff_criterion = false;
                break 'outer;
            }
        }
    }
    let base = c.base();
    let orbits: Vec<Vec<usize>> = (0..base.len()).map(|x| c.fiber(x)).collect();
    let quotient = quotient_space(total, &orbits).expect("fibers partition the cover");
    let identity: Vec<usize> = (0..base.len()).collect();
    DeckActionReport {
        free,
        covering_space_action,
        hausdorff_criterion,
        base_hausdorff: is_hausdorff(base),
        quotient_is_base: quotient.space.is_homeomorphism(base, &identity),
        proper: true,
        proper_justification: PROPER_JUSTIFICATION.to_string(),
    }
}
