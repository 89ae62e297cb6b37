mod common;

use std::sync::Arc;

use common::*;
use fundgpd::finspace::order_complex;
use fundgpd::gpdbuild::{
    groupoid_iso_check, quotient_groupoid, topologies_equal, trivial_pair_groupoid, uc_topology,
    FundamentalGroupoid,
};
use fundgpd::gpdcheck::*;
use fundgpd::homology::homology1;
use fundgpd::pi1core::{deck_action_report, fundamental_group, universal_cover, Pi1Error};

#[test]
fn rp2_full_pipeline() {
    let x = rp2();
    assert_eq!(x.len(), 31);
    let c = universal_cover(&x, "1", 10_000).unwrap();
    assert_eq!(c.total().len(), 62);
    let g = quotient_groupoid(&c).unwrap();
    assert_eq!(g.len(), 1922);

    let uc = uc_topology(&g, &c).unwrap();
    let cmp = topologies_equal(&g, &uc);
    assert!(cmp.equal && cmp.projection_open, "{:?}", cmp.witness);
    // every N(a) has |↑x̃|·|↑ỹ| arrows
    for a in 0..g.len() {
        let (p, q) = fundgpd::gpdbuild::arrow_representative(&c, a);
        let expected = c.total().up(p).count_ones(..) * c.total().up(q).count_ones(..);
        assert_eq!(uc.basic_sets[a].count_ones(..), expected);
    }

    assert!(check_algebraic_axioms(&g).pass);
    let top = check_topological(&g);
    assert!(top.pass, "{:?}", top.witness);
    let lt = check_local_trivial_etale(&g, Some(false));
    assert!(lt.pass, "{:?}", lt.witness);
    assert_eq!(lt.flag("locally_trivial"), Some(true));
    assert_eq!(lt.flag("etale"), Some(false));

    let ids = check_subspace_identifications(&g, &c).unwrap();
    assert!(ids.pass, "{:?}", ids.witness);
    assert_eq!(ids.facts["fibre_size"], 62);
    assert_eq!(ids.facts["isotropy_order"], 2);

    let rs = check_r_times_s(&g);
    assert!(rs.pass);
    assert_eq!(rs.flag("injective"), Some(false));
    assert_eq!(rs.facts["max_fibre"], 2);

    let ps = point_set_report(&g, &c);
    assert!(ps.pass);
    assert_eq!(ps.facts["base"]["locally_compact"], false);
    assert_eq!(ps.facts["cover"]["locally_compact"], false);
    assert_eq!(ps.facts["groupoid"]["locally_compact"], false);

    let deck = deck_action_report(&c);
    assert!(deck.free && deck.covering_space_action && deck.proper);
    assert!(!deck.hausdorff_criterion && deck.consistent());

    let pair = Arc::new(trivial_pair_groupoid(&x));
    let out = groupoid_iso_check(&Arc::new(g), &pair, None, 5000).unwrap();
    assert!(!out.isomorphic);
    assert_eq!(out.witness.as_deref(), Some("arrow counts differ: 1922 vs 961"));
}

#[test]
fn rp2_group_matches_homology() {
    let x = rp2();
    let g = fundamental_group(&x, "1", 10_000).unwrap();
    let h = homology1(&order_complex(&x).unwrap());
    assert!(g.is_abelian());
    assert_eq!(Some(g.abelianization_order() as u64), h.order());
    assert_eq!(h.order(), Some(2));
}

#[test]
fn pseudocircle_is_infinite() {
    let x = pseudocircle();
    assert_eq!(fundamental_group(&x, "a", 10_000), Err(Pi1Error::Exceeded(10_000)));
    let h = homology1(&order_complex(&x).unwrap());
    assert_eq!((h.rank, h.torsion.len()), (1, 0));
}

#[test]
fn simply_connected_models() {
    for (x, arrows) in [(point(), 1), (chain(), 4), (s2(), 36)] {
        let fg = FundamentalGroupoid::build(x, 10_000, None).unwrap();
        assert_eq!(fg.groupoid.len(), arrows);
        let r = simply_connected_iso(&fg).unwrap();
        assert!(r.pass, "{:?}", r.witness);
        let c = &fg.components[0];
        let ids = check_subspace_identifications(&c.groupoid, &c.cover).unwrap();
        assert!(ids.pass);
        assert_eq!(ids.facts["isotropy_order"], 1);
        let uc = uc_topology(&c.groupoid, &c.cover).unwrap();
        assert!(topologies_equal(&c.groupoid, &uc).equal);
    }
}

#[test]
fn search_confirms_chain_iso_without_candidate() {
    let fg = FundamentalGroupoid::build(chain(), 100, None).unwrap();
    let pair = Arc::new(trivial_pair_groupoid(&chain()));
    let out = groupoid_iso_check(&fg.groupoid, &pair, None, 100).unwrap();
    assert!(out.isomorphic);
}

#[test]
fn rp2_is_not_simply_connected() {
    let fg = FundamentalGroupoid::build(rp2(), 10_000, None).unwrap();
    assert!(matches!(
        simply_connected_iso(&fg),
        Err(fundgpd::gpdbuild::GpdError::NotSimplyConnected(2))
    ));
}

#[test]
fn point_groupoid_is_etale() {
    let fg = FundamentalGroupoid::build(point(), 10, None).unwrap();
    let r = check_local_trivial_etale(&fg.groupoid, Some(true));
    assert!(r.pass);
    assert!(check_r_times_s(&fg.groupoid).pass);
    assert!(check_topological(&fg.groupoid).pass);
}
