use serde::Serialize;

use super::space::FinSpace;

/// Hausdorff: distinct points have disjoint minimal opens.
pub fn is_hausdorff(x: &FinSpace) -> bool {
    hausdorff_witness(x).is_none()
}

pub fn hausdorff_witness(x: &FinSpace) -> Option<(usize, usize)> {
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            if !x.up(a).is_disjoint(x.up(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Every point has a quasicompact Hausdorff neighbourhood. Subspaces of
/// Hausdorff spaces are Hausdorff and every neighbourhood of `x` contains
/// `↑x`, so it suffices that each minimal open is a Hausdorff subspace.
/// Since `x` lies below everything in `↑x`, this degenerates to: every
/// minimal open is a singleton.
pub fn is_locally_compact(x: &FinSpace) -> bool {
    (0..x.len()).all(|p| {
        let members: Vec<usize> = x.up(p).ones().collect();
        members.iter().all(|&a| members.iter().all(|&b| a == b || !x.leq(a, b)))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesesCertificate {
    pub locally_path_connected: bool,
    pub semilocally_simply_connected: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub points: usize,
    pub hausdorff: bool,
    pub t0: bool,
    pub locally_compact: bool,
    pub second_countable: bool,
    pub paracompact: bool,
    pub path_components: usize,
    pub hypotheses_certificate: HypothesesCertificate,
}

/// Point-set summary of a finite space.
pub fn space_report(x: &FinSpace) -> SpaceReport {
    let hausdorff = is_hausdorff(x);
    // ↑x has least element x, so it is contractible: path connected and
    // relatively inessential at once.
    let certified = (0..x.len()).all(|p| x.up(p).contains(p) && x.up(p).ones().all(|q| x.leq(p, q)));
    SpaceReport {
        points: x.len(),
        hausdorff,
        t0: x.is_t0(),
        locally_compact: is_locally_compact(x),
        second_countable: true,
        paracompact: hausdorff,
        path_components: x.path_components().len(),
        hypotheses_certificate: HypothesesCertificate {
            locally_path_connected: certified,
            semilocally_simply_connected: certified,
            witness: "every minimal open has its defining point as least element, hence is contractible; \
                      minimal opens are open path connected relatively inessential neighbourhoods"
                .to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports() {
        let d = FinSpace::discrete(&["a", "b", "c"]).unwrap();
        let r = space_report(&d);
        assert!(r.hausdorff && r.locally_compact && r.paracompact);
        assert_eq!(r.path_components, 3);

        let c = FinSpace::from_relations::<&str>(&[], &[("a", "b")], true).unwrap();
        let r = space_report(&c);
        assert!(!r.hausdorff && !r.locally_compact);
        assert_eq!(r.path_components, 1);
        assert_eq!(hausdorff_witness(&c), Some((0, 1)));

        let p = FinSpace::from_relations::<&str>(&[], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")], true).unwrap();
        let r = space_report(&p);
        assert!(!r.hausdorff && r.t0);
        assert_eq!(r.path_components, 1);
        assert!(r.hypotheses_certificate.locally_path_connected);
        assert!(r.hypotheses_certificate.semilocally_simply_connected);
    }

    #[test]
    fn hausdorff_iff_discrete_on_t0() {
        let x = FinSpace::from_relations::<&str>(&[], &[("a", "b"), ("b", "a")], false).unwrap();
        assert!(!is_hausdorff(&x));
        assert!(!x.is_t0());
    }
}
