use std::sync::Arc;

use crate::gpdbuild::{
    arrow_of_pair, arrow_representative, disjoint_union, groupoid_iso_check, trivial_pair_groupoid,
    FinTopGroupoid, FundamentalGroupoid, GpdError,
};
use crate::pi1core::UniversalCover;

use super::CheckReport;

/// The three subspace identifications of a quotient groupoid built from
/// `c`: units with the base, range fibres with the cover (intertwining
/// source and projection), isotropy with the discrete deck group.
pub fn check_subspace_identifications(g: &FinTopGroupoid, c: &UniversalCover) -> Result<CheckReport, GpdError> {
    let recorded = match g.provenance() {
        Some(p) if p.cover_id == c.id() => p.isotropy_discrete,
        _ => return Err(GpdError::MismatchedProvenance),
    };
    let mut report = CheckReport::new();
    let base = c.base();
    let total = c.total();
    let group = c.group();
    let t = g.topology();

    // units ≅ base via [(x, e), (x, e)] ↦ x
    let units = g.unit_space();
    let unit_to_point: Vec<usize> = g.units().iter().map(|&u| c.split(arrow_representative(c, u).0).0).collect();
    let units_ok = units.is_homeomorphism(base, &unit_to_point);
    report.property(
        "units_homeomorphic_to_base",
        units_ok,
        true,
        Some("unit space is not order isomorphic to the base".into()),
    );

    // range fibre over (z, e) ≅ cover via ỹ ↦ [(z, e), ỹ]
    let mut fibres_ok = true;
    let mut fibre_witness = None;
    for z in 0..base.len() {
        let zt = c.point(z, 0);
        let map: Vec<usize> = (0..total.len()).map(|q| arrow_of_pair(c, zt, q)).collect();
        let u = g.range(map[zt]);
        let fibre = g.range_fibre(u);
        let mut sorted = map.clone();
        sorted.sort_unstable();
        let bijective = sorted == fibre;
        let homeo = bijective
            && (0..total.len()).all(|a| (0..total.len()).all(|b| total.leq(a, b) == t.leq(map[a], map[b])));
        let intertwines = (0..total.len()).all(|q| {
            let s = g.source(map[q]);
            unit_to_point[g.unit_position(s).expect("unit")] == c.split(q).0
        });
        if !(bijective && homeo && intertwines) {
            fibres_ok = false;
            fibre_witness.get_or_insert_with(|| format!("range fibre over {}", base.name(z)));
        }
    }
    report.property("fibres_homeomorphic_to_cover", fibres_ok, true, fibre_witness);
    report.fact("fibre_size", total.len());

    // isotropy at (z, e) ≅ deck group via k ↦ [(z, e), (z, k⁻¹)], discrete
    let mut discrete = true;
    let mut iso_ok = true;
    for z in 0..base.len() {
        let zt = c.point(z, 0);
        let phi: Vec<usize> = (0..group.order()).map(|k| arrow_of_pair(c, zt, c.point(z, group.inv(k)))).collect();
        let u = g.range(phi[0]);
        let mut iso = g.isotropy(u);
        iso.sort_unstable();
        let mut image = phi.clone();
        image.sort_unstable();
        if image != iso {
            iso_ok = false;
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if g.mul(phi[a], phi[b]) != Some(phi[group.mul(a, b)]) {
                    iso_ok = false;
                }
                if a != b && t.leq(phi[a], phi[b]) {
                    discrete = false;
                }
            }
        }
    }
    report.property("isotropy_isomorphic_to_deck_group", iso_ok, true, None);
    report.property("isotropy_discrete", discrete, true, None);
    report.fact("isotropy_order", group.order());
    if discrete != recorded {
        report.fail("isotropy discreteness differs from the record made at construction");
    }
    Ok(report)
}

/// For a space whose components are simply connected, `r × s` onto the
/// pair groupoid (of each component, united) is an isomorphism of
/// topological groupoids.
pub fn simply_connected_iso(fg: &FundamentalGroupoid) -> Result<CheckReport, GpdError> {
    if let Some(c) = fg.components.iter().find(|c| c.cover.degree() > 1) {
        return Err(GpdError::NotSimplyConnected(c.cover.degree()));
    }
    let pairs: Vec<FinTopGroupoid> = fg.components.iter().map(|c| trivial_pair_groupoid(&c.space)).collect();
    let refs: Vec<&FinTopGroupoid> = pairs.iter().collect();
    let target = Arc::new(disjoint_union(&refs)?);
    let g = &fg.groupoid;
    let mut phi = vec![0; g.len()];
    let mut offset = 0;
    for comp in &fg.components {
        let m = comp.points.len();
        for a in 0..comp.groupoid.len() {
            let (p, q) = arrow_representative(&comp.cover, a);
            let (x, y) = (comp.cover.split(p).0, comp.cover.split(q).0);
            phi[comp.offset + a] = offset + x * m + y;
        }
        offset += m * m;
    }
    let outcome = groupoid_iso_check(g, &target, Some(&phi), g.len())?;
    let mut report = CheckReport::new();
    report.fact("arrows", g.len());
    report.property("isomorphism", outcome.isomorphic, true, outcome.witness);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::FinSpace;
    use crate::gpdbuild::quotient_groupoid;
    use crate::pi1core::universal_cover;

    #[test]
    fn point_identifications() {
        let x = Arc::new(FinSpace::discrete(&["a"]).unwrap());
        let c = universal_cover(&x, "a", 10).unwrap();
        let g = quotient_groupoid(&c).unwrap();
        assert!(check_subspace_identifications(&g, &c).unwrap().pass);
    }

    #[test]
    fn chain_is_pair_groupoid() {
        let x = Arc::new(FinSpace::from_relations(&["a", "b"], &[("a", "b")], true).unwrap());
        let fg = FundamentalGroupoid::build(x, 10, None).unwrap();
        let r = simply_connected_iso(&fg).unwrap();
        assert!(r.pass, "{:?}", r.witness);
    }

    #[test]
    fn disconnected_simply_connected() {
        let x = Arc::new(FinSpace::from_relations(&["p"], &[("a", "b")], true).unwrap());
        let fg = FundamentalGroupoid::build(x, 10, None).unwrap();
        assert!(simply_connected_iso(&fg).unwrap().pass);
    }
}
