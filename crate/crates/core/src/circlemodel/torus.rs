//! The torus `S¹ × S¹` as a product of two circle models.

use super::sampling::{point, rational, rng, IdentityCheck, VerificationReport};
use super::transf::{j_inverse, j_map, TransfArrow};
use super::{class_compose, class_inverse, CircleError, CircleGroupPoint, CirclePathClass};

pub type TorusPoint = (CircleGroupPoint, CircleGroupPoint);
pub type TorusClass = (CirclePathClass, CirclePathClass);
pub type TorusArrow = (TransfArrow, TransfArrow);

pub fn compose(a: &TorusClass, b: &TorusClass) -> Result<TorusClass, CircleError> {
    Ok((class_compose(&a.0, &b.0)?, class_compose(&a.1, &b.1)?))
}

pub fn inverse(a: &TorusClass) -> TorusClass {
    (class_inverse(&a.0), class_inverse(&a.1))
}

pub fn mul(a: &TorusArrow, b: &TorusArrow) -> Option<TorusArrow> {
    Some((a.0.mul(&b.0)?, a.1.mul(&b.1)?))
}

pub fn range(a: &TorusArrow) -> TorusPoint {
    (a.0.range(), a.1.range())
}

pub fn j(a: &TorusArrow) -> (TorusClass, TorusPoint) {
    let ((c0, g0), (c1, g1)) = (j_map(&a.0), j_map(&a.1));
    ((c0, c1), (g0, g1))
}

pub fn j_inv(c: &TorusClass) -> TorusArrow {
    (j_inverse(&c.0), j_inverse(&c.1))
}

/// The transformation-groupoid theorem for `ℝ² ⋉ T²` on sampled
/// composable pairs.
pub fn verify_torus_theorem(samples: usize, seed: u64) -> VerificationReport {
    let mut rng = rng(seed);
    let mut hom = IdentityCheck::new("torus_homomorphism");
    let mut inv = IdentityCheck::new("torus_inverses_preserved");
    let mut round = IdentityCheck::new("torus_bijective");
    for _ in 0..samples {
        let second: TorusArrow = (
            TransfArrow::new(rational(&mut rng, 3), point(&mut rng)),
            TransfArrow::new(rational(&mut rng, 3), point(&mut rng)),
        );
        let (h0, h1) = range(&second);
        let first: TorusArrow = (TransfArrow::new(rational(&mut rng, 3), h0), TransfArrow::new(rational(&mut rng, 3), h1));
        let product = mul(&first, &second).expect("composable by construction");
        let composed = compose(&j(&first).0, &j(&second).0);
        hom.record(composed.as_ref() == Ok(&j(&product).0), || format!("{:?}", (&first, &second)));
        let finv = (first.0.inverse(), first.1.inverse());
        inv.record(j(&finv).0 == inverse(&j(&first).0), || format!("{first:?}"));
        round.record(j_inv(&j(&first).0) == first, || format!("{first:?}"));
    }
    VerificationReport { seed, samples, checks: vec![hom, inv, round] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circlemodel::rat;

    #[test]
    fn torus_theorem_holds() {
        assert!(verify_torus_theorem(300, 1).pass());
    }

    #[test]
    fn components_compose_independently() {
        let a = (
            CirclePathClass::new(CircleGroupPoint::ratio(1, 2), rat(1, 3)),
            CirclePathClass::new(CircleGroupPoint::zero(), rat(2, 1)),
        );
        let b = (
            CirclePathClass::new(CircleGroupPoint::ratio(1, 4), rat(1, 4)),
            CirclePathClass::new(CircleGroupPoint::ratio(1, 2), rat(1, 2)),
        );
        let ab = compose(&a, &b).unwrap();
        assert_eq!(ab.0.disp, rat(7, 12));
        assert_eq!(ab.1.disp, rat(5, 2));
        // a loop in one factor only: the isotropy of T² is ℤ²
        let loop0 = (
            CirclePathClass::new(CircleGroupPoint::zero(), rat(1, 1)),
            CirclePathClass::unit(CircleGroupPoint::zero()),
        );
        assert!(compose(&loop0, &b).is_err());
        assert_eq!(compose(&loop0, &inverse(&loop0)).unwrap().0.disp, rat(0, 1));
    }
}
