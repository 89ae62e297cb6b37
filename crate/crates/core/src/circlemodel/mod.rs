//! Exact rational model of the circle group `S¹ = ℝ/ℤ`, its fundamental
//! groupoid, and the transformation groupoid `ℝ ⋉_p S¹`.
//!
//! A homotopy class of paths in `S¹` is determined by its start and the
//! displacement of any lift, so classes are stored as `(start, disp)`.

mod basis;
mod sampling;
pub mod torus;
mod transf;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

pub use basis::{
    cover_membership, j_basis_image, uc_arc_membership, verify_basis_images, Arc, BasisImage, JImage,
};
pub use sampling::{verify_translation_lemmas, IdentityCheck, VerificationReport};
pub use transf::{j_inverse, j_map, verify_transformation_theorem, TransfArrow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircleError {
    #[error("{0} cannot follow {1}: endpoints differ")]
    NotComposable(String, String),
    #[error("malformed basic set: {0}")]
    MalformedBasic(String),
    #[error("arc length must lie strictly between 0 and 1, got {0}")]
    InvalidArc(String),
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Fractional part, in `[0, 1)`.
pub(crate) fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// A point of `S¹ = ℝ/ℤ`, stored as its representative in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleGroupPoint(BigRational);

impl CircleGroupPoint {
    /// Reduces any rational mod 1.
    pub fn new(x: BigRational) -> Self {
        CircleGroupPoint(frac(&x))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::new(rat(n, d))
    }

    pub fn zero() -> Self {
        CircleGroupPoint(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl Add for &CircleGroupPoint {
    type Output = CircleGroupPoint;
    fn add(self, rhs: &CircleGroupPoint) -> CircleGroupPoint {
        CircleGroupPoint::new(&self.0 + &rhs.0)
    }
}

impl Sub for &CircleGroupPoint {
    type Output = CircleGroupPoint;
    fn sub(self, rhs: &CircleGroupPoint) -> CircleGroupPoint {
        CircleGroupPoint::new(&self.0 - &rhs.0)
    }
}

impl Neg for &CircleGroupPoint {
    type Output = CircleGroupPoint;
    fn neg(self) -> CircleGroupPoint {
        CircleGroupPoint::new(-&self.0)
    }
}

impl fmt::Display for CircleGroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for CircleGroupPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Homotopy class of a path in `S¹`. The end point is derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CirclePathClass {
    pub start: CircleGroupPoint,
    pub disp: BigRational,
}

impl CirclePathClass {
    pub fn new(start: CircleGroupPoint, disp: BigRational) -> Self {
        CirclePathClass { start, disp }
    }

    /// The class of the constant path at `x`.
    pub fn unit(x: CircleGroupPoint) -> Self {
        CirclePathClass { start: x, disp: BigRational::zero() }
    }

    pub fn end(&self) -> CircleGroupPoint {
        CircleGroupPoint::new(self.start.value() + &self.disp)
    }

    pub fn is_unit(&self) -> bool {
        self.disp.is_zero()
    }

    /// Whether the class is a loop, i.e. has integer displacement.
    pub fn is_loop(&self) -> bool {
        self.disp.is_integer()
    }

    /// Winding number of a loop.
    pub fn winding(&self) -> Option<BigInt> {
        self.is_loop().then(|| self.disp.to_integer())
    }
}

impl fmt::Display for CirclePathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(start {}, disp {})", self.start, self.disp)
    }
}

/// `a ∘ b`: first `b`, then `a`.
pub fn class_compose(a: &CirclePathClass, b: &CirclePathClass) -> Result<CirclePathClass, CircleError> {
    if b.end() != a.start {
        return Err(CircleError::NotComposable(a.to_string(), b.to_string()));
    }
    Ok(CirclePathClass { start: b.start.clone(), disp: &a.disp + &b.disp })
}

pub fn class_inverse(a: &CirclePathClass) -> CirclePathClass {
    CirclePathClass { start: a.end(), disp: -&a.disp }
}

/// The translate `γ·g`, `t ↦ γ(t) + g`.
pub fn class_translate(a: &CirclePathClass, g: &CircleGroupPoint) -> CirclePathClass {
    CirclePathClass { start: &a.start + g, disp: a.disp.clone() }
}

/// The pointwise product `γ ⊗ η`, `t ↦ γ(t) + η(t)`.
pub fn class_pointwise_product(a: &CirclePathClass, b: &CirclePathClass) -> CirclePathClass {
    CirclePathClass { start: &a.start + &b.start, disp: &a.disp + &b.disp }
}

/// The covering homomorphism `p: ℝ -> S¹`.
pub fn covering_map(r: &BigRational) -> CircleGroupPoint {
    CircleGroupPoint::new(r.clone())
}

/// The element of `H` (classes starting at 0) with lift displacement `r`.
pub fn cover_element(r: BigRational) -> CirclePathClass {
    CirclePathClass { start: CircleGroupPoint::zero(), disp: r }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(s: (i64, i64), d: (i64, i64)) -> CirclePathClass {
        CirclePathClass::new(CircleGroupPoint::ratio(s.0, s.1), rat(d.0, d.1))
    }

    #[test]
    fn points_reduce_mod_one() {
        assert_eq!(CircleGroupPoint::ratio(7, 4), CircleGroupPoint::ratio(3, 4));
        assert_eq!(CircleGroupPoint::ratio(-1, 4), CircleGroupPoint::ratio(3, 4));
        assert_eq!(CircleGroupPoint::ratio(1, 1), CircleGroupPoint::zero());
        assert_eq!(&CircleGroupPoint::ratio(3, 4) + &CircleGroupPoint::ratio(1, 2), CircleGroupPoint::ratio(1, 4));
    }

    #[test]
    fn compose_units_and_additivity() {
        assert_eq!(class_compose(&class((0, 1), (1, 1)), &class((0, 1), (0, 1))).unwrap(), class((0, 1), (1, 1)));
        assert_eq!(class_compose(&class((1, 2), (1, 2)), &class((0, 1), (1, 2))).unwrap(), class((0, 1), (1, 1)));
        assert!(matches!(
            class_compose(&class((1, 3), (1, 2)), &class((0, 1), (1, 2))),
            Err(CircleError::NotComposable(..))
        ));
    }

    #[test]
    fn inverse_law() {
        let a = class((1, 5), (7, 3));
        let back = class_compose(&a, &class_inverse(&a)).unwrap();
        assert_eq!(back, CirclePathClass::unit(a.end()));
        let fwd = class_compose(&class_inverse(&a), &a).unwrap();
        assert_eq!(fwd, CirclePathClass::unit(a.start.clone()));
    }

    #[test]
    fn translate_and_product() {
        let a = class((1, 5), (7, 3));
        assert_eq!(class_translate(&a, &CircleGroupPoint::zero()), a);
        let zero = CirclePathClass::unit(CircleGroupPoint::zero());
        assert_eq!(class_pointwise_product(&a, &zero), a);
        let b = class((2, 3), (-1, 2));
        assert_eq!(class_pointwise_product(&a, &b), class_pointwise_product(&b, &a));
    }

    #[test]
    fn isotropy_is_the_integers() {
        let base = CircleGroupPoint::zero();
        for d in [rat(0, 1), rat(3, 1), rat(-2, 1), rat(1, 2), rat(5, 3)] {
            let c = CirclePathClass::new(base.clone(), d.clone());
            assert_eq!(c.end() == base, d.is_integer());
            assert_eq!(c.winding().is_some(), d.is_integer());
        }
    }
}
