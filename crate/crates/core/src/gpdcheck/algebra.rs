use crate::gpdbuild::FinTopGroupoid;

use super::CheckReport;

/// Groupoid laws, checked on every arrow, composable pair and composable
/// triple.
pub fn check_algebraic_axioms(g: &FinTopGroupoid) -> CheckReport {
    let mut report = CheckReport::new();
    let name = |a: usize| g.name(a).to_string();
    for &u in g.units() {
        if g.range(u) != u || g.source(u) != u || g.inverse(u) != u {
            report.fail(format!("unit {} is not its own range, source and inverse", name(u)));
        }
    }
    for a in 0..g.len() {
        let inv = g.inverse(a);
        if g.inverse(inv) != a {
            report.fail(format!("inverse is not an involution at {}", name(a)));
        }
        if g.range(inv) != g.source(a) || g.source(inv) != g.range(a) {
            report.fail(format!("inverse of {} has the wrong range or source", name(a)));
        }
        if g.mul(inv, a) != Some(g.source(a)) {
            report.fail(format!("s({0}) != {0}⁻¹·{0}", name(a)));
        }
        if g.mul(a, inv) != Some(g.range(a)) {
            report.fail(format!("r({0}) != {0}·{0}⁻¹", name(a)));
        }
        if g.mul(g.range(a), a) != Some(a) || g.mul(a, g.source(a)) != Some(a) {
            report.fail(format!("unit laws fail at {}", name(a)));
        }
    }
    let mut pairs = 0usize;
    let mut triples = 0usize;
    for (a, b, ab) in g.composable_pairs() {
        pairs += 1;
        if g.range(ab) != g.range(a) || g.source(ab) != g.source(b) {
            report.fail(format!("{}·{} has the wrong range or source", name(a), name(b)));
            continue;
        }
        for &c in g.range_fibre(g.source(b)) {
            triples += 1;
            let left = g.mul(ab, c);
            let right = g.mul(b, c).and_then(|bc| g.mul(a, bc));
            if left.is_none() || left != right {
                report.fail(format!("associativity fails at ({}, {}, {})", name(a), name(b), name(c)));
            }
        }
    }
    report.fact("arrows", g.len());
    report.fact("units", g.units().len());
    report.fact("composable_pairs", pairs);
    report.fact("triples_checked", triples);
    report
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finspace::FinSpace;
    use crate::gpdbuild::trivial_pair_groupoid;

    #[test]
    fn pair_groupoid_passes() {
        let x = FinSpace::from_relations(&["a", "b"], &[("a", "b")], true).unwrap();
        let r = check_algebraic_axioms(&trivial_pair_groupoid(&x));
        assert!(r.pass);
        // pairs: 2 points, 4 arrows, each with 2 composable partners
        assert_eq!(r.facts["composable_pairs"], 8);
        assert_eq!(r.facts["triples_checked"], 16);
    }

    #[test]
    fn broken_multiplication_is_caught() {
        let x = Arc::new(FinSpace::discrete(&["a", "b"]).unwrap());
        let pair = trivial_pair_groupoid(&x);
        let bad = FinTopGroupoid::assemble(
            pair.names().to_vec(),
            &(0..4).map(|a| pair.is_unit(a)).collect::<Vec<_>>(),
            (0..4).map(|a| pair.range(a)).collect(),
            (0..4).map(|a| pair.source(a)).collect(),
            (0..4).map(|a| pair.inverse(a)).collect(),
            |g, h| if g == 1 && h == 2 { 3 } else { pair.mul(g, h).unwrap() },
            pair.topology().clone(),
            "test",
        )
        .unwrap();
        let r = check_algebraic_axioms(&bad);
        assert!(!r.pass);
        assert!(r.witness.is_some());
    }
}
