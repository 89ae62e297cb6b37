mod common;

use std::sync::Arc;

use common::*;
use fundgpd::circlemodel::{class_compose, class_inverse, rat, CircleGroupPoint, CirclePathClass};
use fundgpd::finspace::{is_hausdorff, product_projections, product_space, quotient_space, SpaceMap};
use fundgpd::gpdbuild::{induced_morphism, topologies_equal, uc_topology, FundamentalGroupoid, GpdError};
use fundgpd::gpdcheck::*;
use fundgpd::pi1core::Pi1Error;
use proptest::prelude::*;

fn space_strategy(max: usize) -> impl Strategy<Value = Arc<fundgpd::finspace::FinSpace>> {
    (1..=max).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |e| dag(n, &e)))
}

fn groupoid_of(x: Arc<fundgpd::finspace::FinSpace>) -> Option<FundamentalGroupoid> {
    match FundamentalGroupoid::build(x, 2000, None) {
        Ok(fg) => Some(fg),
        Err(GpdError::Pi1(Pi1Error::Exceeded(_))) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_space_invariants(x in space_strategy(7), seed in any::<u64>(), labels in proptest::collection::vec(0usize..3, 7)) {
        for p in 0..x.len() {
            prop_assert!(x.is_open(x.up(p)));
        }
        // both continuity criteria are evaluated inside is_continuous
        let f = SpaceMap::new(x.clone(), x.clone(), random_monotone(&x, &x, seed)).unwrap();
        prop_assert!(f.is_continuous());
        let arbitrary: Vec<usize> = (0..x.len()).map(|p| labels[p] % x.len()).collect();
        let _ = SpaceMap::new(x.clone(), x.clone(), arbitrary).unwrap().is_continuous();

        let prod = Arc::new(product_space(&x, &x));
        let (a, b) = product_projections(&x, &x, &prod);
        prop_assert!(a.is_continuous() && a.is_open_map() && b.is_continuous() && b.is_open_map());

        let discrete = (0..x.len()).all(|p| x.up(p).count_ones(..) == 1);
        prop_assert_eq!(is_hausdorff(&x), discrete);

        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); 3];
        for p in 0..x.len() {
            classes[labels[p]].push(p);
        }
        classes.retain(|c| !c.is_empty());
        let q = quotient_space(&x, &classes).unwrap();
        prop_assert!(q.projection.is_continuous());
        if q.projection_open {
            prop_assert_eq!(q.relation_closed, q.hausdorff);
        }
    }

    #[test]
    fn groupoid_invariants(x in space_strategy(6)) {
        let Some(fg) = groupoid_of(x.clone()) else { return Ok(()) };
        let g = &fg.groupoid;
        prop_assert!(check_algebraic_axioms(g).pass);
        prop_assert!(check_topological(g).pass);
        let lt = check_local_trivial_etale(g, None);
        prop_assert!(lt.pass && lt.flag("locally_trivial") == Some(true));
        prop_assert_eq!(is_hausdorff(g.topology()), is_hausdorff(&x));
        let mut total = 0;
        for c in &fg.components {
            let m = c.points.len();
            prop_assert_eq!(c.groupoid.len(), m * m * c.cover.degree());
            total += c.groupoid.len();
            let uc = uc_topology(&c.groupoid, &c.cover).unwrap();
            let cmp = topologies_equal(&c.groupoid, &uc);
            prop_assert!(cmp.equal && cmp.projection_open);
            prop_assert!(check_subspace_identifications(&c.groupoid, &c.cover).unwrap().pass);
        }
        prop_assert_eq!(g.len(), total);
    }

    #[test]
    fn functoriality(x in space_strategy(5), y in space_strategy(5), z in space_strategy(5), s1 in any::<u64>(), s2 in any::<u64>()) {
        let (Some(gx), Some(gy), Some(gz)) = (groupoid_of(x.clone()), groupoid_of(y.clone()), groupoid_of(z.clone())) else {
            return Ok(());
        };
        let f = SpaceMap::new(x.clone(), y.clone(), random_monotone(&x, &y, s1)).unwrap();
        let g = SpaceMap::new(y.clone(), z.clone(), random_monotone(&y, &z, s2)).unwrap();
        let fs = induced_morphism(&f, &gx, &gy).unwrap();
        let gs = induced_morphism(&g, &gy, &gz).unwrap();
        let gfs = induced_morphism(&f.then(&g).unwrap(), &gx, &gz).unwrap();
        prop_assert_eq!(&gfs.assignment, &fs.then(&gs).assignment);
        let id = induced_morphism(&SpaceMap::identity(x.clone()), &gx, &gx).unwrap();
        prop_assert_eq!(id.assignment, (0..gx.groupoid.len()).collect::<Vec<_>>());
    }

    #[test]
    fn circle_class_laws(s in -50i64..50, d1 in -200i64..200, d2 in -200i64..200, den in 1i64..30) {
        let a = CirclePathClass::new(CircleGroupPoint::ratio(s, den), rat(d1, den));
        let b = CirclePathClass::new(a.end(), rat(d2, den));
        let ab = class_compose(&b, &a).unwrap();
        prop_assert_eq!(&ab.disp, &(rat(d1, den) + rat(d2, den)));
        prop_assert_eq!(class_compose(&a, &class_inverse(&a)).unwrap(), CirclePathClass::unit(a.end()));
        prop_assert_eq!(class_inverse(&class_inverse(&a)), a.clone());
        let loop_at_start = CirclePathClass::new(a.start.clone(), rat(d1, 1));
        prop_assert_eq!(loop_at_start.end(), a.start);
    }
}
