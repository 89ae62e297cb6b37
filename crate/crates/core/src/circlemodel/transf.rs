use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::sampling::{class, point, rational, rng, IdentityCheck, VerificationReport};
use super::{class_compose, class_inverse, covering_map, CircleGroupPoint, CirclePathClass};

/// An arrow `([γ], g)` of the transformation groupoid `H ⋉_p S¹`, with
/// `[γ] ∈ H ≅ ℝ` given by its lift.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransfArrow {
    pub lift: BigRational,
    pub g: CircleGroupPoint,
}

impl TransfArrow {
    pub fn new(lift: BigRational, g: CircleGroupPoint) -> Self {
        TransfArrow { lift, g }
    }

    pub fn unit(g: CircleGroupPoint) -> Self {
        TransfArrow { lift: BigRational::zero(), g }
    }

    pub fn source(&self) -> CircleGroupPoint {
        self.g.clone()
    }

    pub fn range(&self) -> CircleGroupPoint {
        &covering_map(&self.lift) + &self.g
    }

    /// `(η, h)(γ, g) = (η + γ, g)`, defined when `h = p(γ) + g`.
    pub fn mul(&self, other: &TransfArrow) -> Option<TransfArrow> {
        (self.g == other.range()).then(|| TransfArrow { lift: &self.lift + &other.lift, g: other.g.clone() })
    }

    pub fn inverse(&self) -> TransfArrow {
        TransfArrow { lift: -&self.lift, g: self.range() }
    }
}

impl fmt::Display for TransfArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lift, self.g)
    }
}

/// `J([γ], g) = ([γ·g], g)`: the class of the translated path together
/// with its start.
pub fn j_map(t: &TransfArrow) -> (CirclePathClass, CircleGroupPoint) {
    (CirclePathClass::new(t.g.clone(), t.lift.clone()), t.g.clone())
}

/// `J⁻¹([γ], g) = ([γ·g⁻¹], g)`.
pub fn j_inverse(c: &CirclePathClass) -> TransfArrow {
    TransfArrow { lift: c.disp.clone(), g: c.start.clone() }
}

/// Samples composable pairs of `H ⋉_p S¹` and checks that `J` preserves
/// products, units, inverses, range and source, and is bijective on the
/// sampled arrows and classes.
pub fn verify_transformation_theorem(samples: usize, seed: u64) -> VerificationReport {
    let mut rng = rng(seed);
    let mut hom = IdentityCheck::new("homomorphism");
    let mut units = IdentityCheck::new("units_preserved");
    let mut inverses = IdentityCheck::new("inverses_preserved");
    let mut ends = IdentityCheck::new("range_and_source_preserved");
    let mut bij = IdentityCheck::new("bijective");
    let mut images: HashMap<CirclePathClass, TransfArrow> = HashMap::new();
    for _ in 0..samples {
        let second = TransfArrow::new(rational(&mut rng, 3), point(&mut rng));
        let first = TransfArrow::new(rational(&mut rng, 3), second.range());
        let product = first.mul(&second).expect("composable by construction");
        let (jp, _) = j_map(&product);
        let composed = class_compose(&j_map(&first).0, &j_map(&second).0);
        hom.record(composed.as_ref() == Ok(&jp), || format!("{first} * {second}"));

        let u = TransfArrow::unit(point(&mut rng));
        let (ju, g) = j_map(&u);
        units.record(ju == CirclePathClass::unit(u.g.clone()) && g == u.g, || format!("unit {u}"));

        let (jf, g) = j_map(&first);
        inverses.record(j_map(&first.inverse()).0 == class_inverse(&jf), || format!("{first}"));
        ends.record(jf.start == first.source() && jf.end() == first.range() && g == jf.start, || {
            format!("{first}")
        });

        let c = class(&mut rng);
        let round_trips = j_inverse(&jf) == first && j_map(&j_inverse(&c)).0 == c;
        let injective = match images.insert(jf.clone(), first.clone()) {
            Some(prev) => prev == first,
            None => true,
        };
        bij.record(round_trips && injective, || format!("{first} / {c}"));
    }
    VerificationReport { seed, samples, checks: vec![hom, units, inverses, ends, bij] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circlemodel::rat;

    #[test]
    fn j_examples() {
        let g = CircleGroupPoint::ratio(1, 4);
        assert_eq!(j_map(&TransfArrow::unit(g.clone())).0, CirclePathClass::unit(g.clone()));
        let (c, h) = j_map(&TransfArrow::new(rat(3, 2), g.clone()));
        assert_eq!(c, CirclePathClass::new(g.clone(), rat(3, 2)));
        assert_eq!(h, g);
    }

    #[test]
    fn product_example() {
        let second = TransfArrow::new(rat(1, 2), CircleGroupPoint::ratio(1, 3));
        let first = TransfArrow::new(rat(1, 1), second.range());
        assert_eq!(first.g, CircleGroupPoint::ratio(5, 6));
        let p = first.mul(&second).unwrap();
        let expected = CirclePathClass::new(CircleGroupPoint::ratio(1, 3), rat(3, 2));
        assert_eq!(j_map(&p).0, expected);
        assert_eq!(class_compose(&j_map(&first).0, &j_map(&second).0).unwrap(), expected);
    }

    #[test]
    fn non_composable_pairs_rejected() {
        let a = TransfArrow::new(rat(1, 2), CircleGroupPoint::zero());
        assert!(a.mul(&a).is_none());
        assert_eq!(a.mul(&a.inverse()).unwrap(), TransfArrow::unit(a.range()));
    }

    #[test]
    fn sampled_theorem_holds() {
        let r = verify_transformation_theorem(500, 3);
        assert!(r.pass(), "{:?}", r.checks);
    }
}
