use fixedbitset::FixedBitSet;

use crate::finspace::{product_space, FinSpace};
use crate::gpdbuild::FinTopGroupoid;

use super::CheckReport;

/// Tests whether `f`, restricted to `domain` with the subspace topology,
/// is a local homeomorphism onto `target ⊆ y`. Minimal opens of the
/// subspace are the smallest neighbourhoods, so testing them is exact.
pub(crate) fn local_homeo_witness(
    g: &FinTopGroupoid,
    domain: &[usize],
    f: impl Fn(usize) -> usize,
    y: &FinSpace,
    target: &FixedBitSet,
) -> Option<String> {
    let t = g.topology();
    let mut inside = t.empty_set();
    for &a in domain {
        inside.insert(a);
    }
    let mut image = y.empty_set();
    for &a in domain {
        image.insert(f(a));
        let mut nbhd = t.up(a).clone();
        nbhd.intersect_with(&inside);
        let members: Vec<usize> = nbhd.ones().collect();
        let mut img = y.empty_set();
        for &b in &members {
            if img.put(f(b)) {
                return Some(format!("not injective on the minimal open of {}", g.name(a)));
            }
        }
        if !y.is_open(&img) {
            return Some(format!("image of the minimal open of {} is not open", g.name(a)));
        }
        for &b in &members {
            for &c in &members {
                if t.leq(b, c) != y.leq(f(b), f(c)) {
                    return Some(format!("not a homeomorphism on the minimal open of {}", g.name(a)));
                }
            }
        }
    }
    (image != *target).then(|| "image differs from the expected target".to_string())
}

fn unit_pos(g: &FinTopGroupoid, a: usize) -> usize {
    g.unit_position(a).expect("unit")
}

/// Unit positions in the orbit of `u`.
fn orbit(g: &FinTopGroupoid, u: usize) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(g.units().len());
    for a in 0..g.len() {
        if g.source(a) == u {
            set.insert(unit_pos(g, g.range(a)));
        }
    }
    set
}

/// Continuity of multiplication, inversion, range and source, and
/// openness of range and source onto the unit space.
pub fn check_topological(g: &FinTopGroupoid) -> CheckReport {
    let mut report = CheckReport::new();
    let t = g.topology();

    // multiplication on the composable pairs with the subspace topology of
    // G × G: monotone iff continuous
    let mut mult_witness = None;
    'pairs: for (a, b, ab) in g.composable_pairs() {
        for a2 in t.up(a).ones() {
            for b2 in t.up(b).ones() {
                if let Some(p) = g.mul(a2, b2) {
                    if !t.leq(ab, p) {
                        mult_witness = Some(format!(
                            "({}, {}) <= ({}, {}) but products are not comparable",
                            g.name(a),
                            g.name(b),
                            g.name(a2),
                            g.name(b2)
                        ));
                        break 'pairs;
                    }
                }
            }
        }
    }
    report.property("multiplication_continuous", mult_witness.is_none(), true, mult_witness);
    let inverse = g.inverse_map();
    report.property("inversion_continuous", inverse.is_continuous(), true, None);
    report.property("range_continuous", g.range_map().is_continuous(), true, None);
    report.property("source_continuous", g.source_map().is_continuous(), true, None);

    let units = g.unit_space();
    let open_onto_units = |f: &dyn Fn(usize) -> usize| {
        (0..g.len()).find(|&a| {
            let mut img = units.empty_set();
            for b in t.up(a).ones() {
                img.insert(unit_pos(g, f(b)));
            }
            !units.is_open(&img)
        })
    };
    let r_bad = open_onto_units(&|a| g.range(a));
    let s_bad = open_onto_units(&|a| g.source(a));
    report.property(
        "range_open",
        r_bad.is_none(),
        true,
        r_bad.map(|a| format!("range image of the minimal open of {} is not open", g.name(a))),
    );
    report.property(
        "source_open",
        s_bad.is_none(),
        true,
        s_bad.map(|a| format!("source image of the minimal open of {} is not open", g.name(a))),
    );
    report
}

/// Local triviality (for each unit `u`, `s: G^u -> G⁽⁰⁾` and equivalently
/// `r: G_u -> G⁽⁰⁾` are local homeomorphisms onto the orbit of `u`) and
/// the étale property (`r: G -> G⁽⁰⁾` is a local homeomorphism). When
/// `expect_etale` is given, the report passes only if it matches.
pub fn check_local_trivial_etale(g: &FinTopGroupoid, expect_etale: Option<bool>) -> CheckReport {
    let mut report = CheckReport::new();
    let units = g.unit_space();
    let mut by_source = None;
    let mut by_range = None;
    for &u in g.units() {
        let target = orbit(g, u);
        if by_source.is_none() {
            by_source = local_homeo_witness(g, g.range_fibre(u), |a| unit_pos(g, g.source(a)), &units, &target)
                .map(|w| format!("s on the range fibre of {}: {w}", g.name(u)));
        }
        if by_range.is_none() {
            by_range = local_homeo_witness(g, &g.source_fibre(u), |a| unit_pos(g, g.range(a)), &units, &target)
                .map(|w| format!("r on the source fibre of {}: {w}", g.name(u)));
        }
    }
    report.fact("locally_trivial_by_range", by_range.is_none());
    let locally_trivial = by_source.is_none();
    report.property("locally_trivial", locally_trivial, true, by_source.clone());
    if locally_trivial != by_range.is_none() {
        report.fail("the source and range formulations of local triviality disagree");
    }

    let all: Vec<usize> = (0..g.len()).collect();
    let full = {
        let mut s = units.empty_set();
        s.insert_range(..);
        s
    };
    let etale_witness = local_homeo_witness(g, &all, |a| unit_pos(g, g.range(a)), &units, &full);
    let etale = etale_witness.is_none();
    report.fact("etale", etale);
    if let Some(w) = &etale_witness {
        report.fact("etale_witness", format!("r: {w}"));
    }
    let source_etale = local_homeo_witness(g, &all, |a| unit_pos(g, g.source(a)), &units, &full).is_none();
    if source_etale != etale {
        report.fail("range and source disagree on the étale property");
    }
    if let Some(expected) = expect_etale {
        report.fact("etale_expected", expected);
        if etale != expected {
            report.fail(format!("étale is {etale}, expected {expected}"));
        }
    }
    report
}

/// `r × s: G -> G⁽⁰⁾ × G⁽⁰⁾` is a local homeomorphism onto the union of
/// `C × C` over orbits `C`.
pub fn check_r_times_s(g: &FinTopGroupoid) -> CheckReport {
    let mut report = CheckReport::new();
    let units = g.unit_space();
    let k = units.len();
    let square = product_space(&units, &units);
    let f = |a: usize| unit_pos(g, g.range(a)) * k + unit_pos(g, g.source(a));
    let mut target = square.empty_set();
    for &u in g.units() {
        let c = orbit(g, u);
        for i in c.ones() {
            for j in c.ones() {
                target.insert(i * k + j);
            }
        }
    }
    let all: Vec<usize> = (0..g.len()).collect();
    let witness = local_homeo_witness(g, &all, f, &square, &target);
    report.property("local_homeomorphism", witness.is_none(), true, witness.clone());
    let mut seen = square.empty_set();
    let injective = (0..g.len()).all(|a| !seen.put(f(a)));
    report.fact("injective", injective);
    report.fact("global_homeomorphism", injective && witness.is_none());
    report.fact("max_fibre", {
        let mut counts = vec![0usize; square.len()];
        for a in 0..g.len() {
            counts[f(a)] += 1;
        }
        counts.into_iter().max().unwrap_or(0)
    });
    report
}
