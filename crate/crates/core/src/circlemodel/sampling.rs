use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    class_compose, class_pointwise_product, class_translate, covering_map, cover_element, CircleGroupPoint,
    CirclePathClass,
};

const MAX_DEN: i64 = 64;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with denominator at most 64 in `[-span, span]`. Small
/// denominators make endpoint coincidences likely.
pub(crate) fn rational(rng: &mut ChaCha8Rng, span: i64) -> BigRational {
    let d = rng.gen_range(1..=MAX_DEN);
    let n = rng.gen_range(-span * d..=span * d);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A rational in `[lo, hi]` with denominator at most `den`.
pub(crate) fn rational_between(rng: &mut ChaCha8Rng, lo: &BigRational, hi: &BigRational, den: i64) -> BigRational {
    let t = BigRational::new(BigInt::from(rng.gen_range(0..=den)), BigInt::from(den));
    lo + (hi - lo) * t
}

pub(crate) fn point(rng: &mut ChaCha8Rng) -> CircleGroupPoint {
    CircleGroupPoint::new(rational(rng, 1))
}

pub(crate) fn class(rng: &mut ChaCha8Rng) -> CirclePathClass {
    CirclePathClass::new(point(rng), rational(rng, 3))
}

/// Pass count and first counterexample for one sampled identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub samples: usize,
    pub passed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl IdentityCheck {
    pub(crate) fn new(name: &str) -> Self {
        IdentityCheck { name: name.into(), samples: 0, passed: 0, counterexample: None }
    }

    pub(crate) fn record(&mut self, holds: bool, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if holds {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    pub fn pass(&self) -> bool {
        self.samples > 0 && self.passed == self.samples
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<IdentityCheck>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(IdentityCheck::pass)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// The joint-of-translated-path identity `[(η·γ(1) ⊔ γ)·g] = [(η⊗γ)·g]`
/// for `η, γ` starting at 0, and the two translation identities
/// `[η⊗γ]·g = [η]⊗[γ·g]` and `[δ⊔θ]·g = [δ·g]⊔[θ·g]`, on `samples`
/// random rational tuples.
pub fn verify_translation_lemmas(samples: usize, seed: u64) -> VerificationReport {
    let mut rng = rng(seed);
    let mut joint = IdentityCheck::new("joint_of_translated_path");
    let mut eq1 = IdentityCheck::new("product_with_translate");
    let mut eq2 = IdentityCheck::new("concatenation_with_translate");
    for _ in 0..samples {
        let eta = cover_element(rational(&mut rng, 3));
        let gamma = cover_element(rational(&mut rng, 3));
        let g = point(&mut rng);
        let (lhs, rhs) = joint_sides(&eta, &gamma, &g);
        joint.record(lhs.as_ref() == Some(&rhs), || format!("eta {eta}, gamma {gamma}, g {g}"));

        let (a, b) = (class(&mut rng), class(&mut rng));
        let l = class_translate(&class_pointwise_product(&a, &b), &g);
        let r = class_pointwise_product(&a, &class_translate(&b, &g));
        eq1.record(l == r, || format!("eta {a}, gamma {b}, g {g}"));

        let theta = class(&mut rng);
        let delta = CirclePathClass::new(theta.end(), rational(&mut rng, 3));
        let l = class_compose(&delta, &theta).map(|c| class_translate(&c, &g));
        let r = class_compose(&class_translate(&delta, &g), &class_translate(&theta, &g));
        eq2.record(l.is_ok() && l == r, || format!("delta {delta}, theta {theta}, g {g}"));
    }
    VerificationReport { seed, samples, checks: vec![joint, eq1, eq2] }
}

/// Both sides of the joint-of-translated-path identity; the left side is
/// `None` if the concatenation is undefined.
pub(crate) fn joint_sides(
    eta: &CirclePathClass,
    gamma: &CirclePathClass,
    g: &CircleGroupPoint,
) -> (Option<CirclePathClass>, CirclePathClass) {
    let shifted = class_translate(eta, &covering_map(&gamma.disp));
    let lhs = class_compose(&shifted, gamma).ok().map(|c| class_translate(&c, g));
    let rhs = class_translate(&class_pointwise_product(eta, gamma), g);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circlemodel::rat;

    #[test]
    fn joint_example() {
        let (l, r) = joint_sides(&cover_element(rat(1, 1)), &cover_element(rat(1, 2)), &CircleGroupPoint::ratio(1, 3));
        let expected = CirclePathClass::new(CircleGroupPoint::ratio(1, 3), rat(3, 2));
        assert_eq!(l, Some(expected.clone()));
        assert_eq!(r, expected);
    }

    #[test]
    fn concatenation_equals_product_from_identity() {
        // γ from 0, η from γ(1): [η ⊔ γ] = [η ⊗ γ] after moving η back to 0
        let gamma = cover_element(rat(2, 5));
        let eta = CirclePathClass::new(gamma.end(), rat(-3, 4));
        let concat = class_compose(&eta, &gamma).unwrap();
        let eta0 = class_translate(&eta, &-&gamma.end());
        assert_eq!(concat, class_pointwise_product(&eta0, &gamma));
    }

    #[test]
    fn sampled_identities_hold() {
        let r = verify_translation_lemmas(500, 7);
        assert!(r.pass(), "{:?}", r.checks);
        assert!(r.checks.iter().all(|c| c.samples == 500));
    }

    #[test]
    fn one_sample_suffices() {
        assert!(verify_translation_lemmas(1, 0).pass());
    }

    #[test]
    fn failures_are_recorded() {
        let mut c = IdentityCheck::new("x");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        assert!(!c.pass());
        assert_eq!((c.samples, c.passed), (3, 1));
        assert_eq!(c.counterexample.as_deref(), Some("first"));
    }
}
