use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::sampling::{point, rational, rational_between, rng, IdentityCheck, VerificationReport};
use super::transf::{j_inverse, j_map, TransfArrow};
use super::{cover_element, covering_map, frac, rat, CircleError, CircleGroupPoint, CirclePathClass};

fn ser_rat<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// The open arc `{anchor + t : 0 < t < length}` of `S¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub anchor: CircleGroupPoint,
    #[serde(serialize_with = "ser_rat")]
    pub length: BigRational,
}

impl Arc {
    pub fn new(anchor: CircleGroupPoint, length: BigRational) -> Result<Self, CircleError> {
        if length <= BigRational::zero() || length >= BigRational::one() {
            return Err(CircleError::InvalidArc(length.to_string()));
        }
        Ok(Arc { anchor, length })
    }

    pub fn centered(center: &CircleGroupPoint, length: BigRational) -> Result<Self, CircleError> {
        let half = &length / BigRational::from_integer(2.into());
        Arc::new(CircleGroupPoint::new(center.value() - half), length)
    }

    /// Position of `p` inside the arc, measured from the anchor.
    pub fn offset(&self, p: &CircleGroupPoint) -> Option<BigRational> {
        let t = frac(&(p.value() - self.anchor.value()));
        (t > BigRational::zero() && t < self.length).then_some(t)
    }

    pub fn contains(&self, p: &CircleGroupPoint) -> bool {
        self.offset(p).is_some()
    }

    /// The point at offset `t` from the anchor.
    pub fn at(&self, t: &BigRational) -> CircleGroupPoint {
        CircleGroupPoint::new(self.anchor.value() + t)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arc({} + (0, {}))", self.anchor, self.length)
    }
}

fn offset_or(arc: &Arc, p: &CircleGroupPoint, what: &str) -> Result<BigRational, CircleError> {
    arc.offset(p).ok_or_else(|| CircleError::MalformedBasic(format!("{what} {p} is not in {arc}")))
}

/// Membership of `c` in `N([α], U, V)`: classes `[ε_U ⊔ α ⊔ ε_V]` with
/// `ε_V` a path in `V` ending at `α`'s start and `ε_U` a path in `U`
/// starting at `α`'s end. Paths inside an arc are determined up to
/// homotopy by their endpoints.
pub fn uc_arc_membership(c: &CirclePathClass, alpha: &CirclePathClass, u: &Arc, v: &Arc) -> Result<bool, CircleError> {
    let a_start = offset_or(v, &alpha.start, "start")?;
    let a_end = offset_or(u, &alpha.end(), "end")?;
    let (Some(c_start), Some(c_end)) = (v.offset(&c.start), u.offset(&c.end())) else {
        return Ok(false);
    };
    let delta_v = a_start - c_start;
    let delta_u = c_end - a_end;
    Ok(c.disp == &alpha.disp + delta_v + delta_u)
}

/// Membership of `r ∈ H ≅ ℝ` in `N([α], U) ⊆ H`, for `α` starting at 0.
pub fn cover_membership(r: &BigRational, alpha: &CirclePathClass, u: &Arc) -> Result<bool, CircleError> {
    if !alpha.start.value().is_zero() {
        return Err(CircleError::MalformedBasic(format!("{alpha} does not start at 0")));
    }
    let a_end = offset_or(u, &alpha.end(), "end")?;
    Ok(match u.offset(&covering_map(r)) {
        Some(t) => *r == &alpha.disp + t - a_end,
        None => false,
    })
}

/// Exact image `J(N([α], U) × V)`: classes starting in `V` whose
/// displacement lies in the open interval `(disp_low, disp_high)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JImage {
    pub start: Arc,
    #[serde(serialize_with = "ser_rat")]
    pub disp_low: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub disp_high: BigRational,
}

impl JImage {
    pub fn contains(&self, c: &CirclePathClass) -> bool {
        self.start.contains(&c.start) && c.disp > self.disp_low && c.disp < self.disp_high
    }
}

/// Result of [`j_basis_image`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisImage {
    pub image: JImage,
    pub samples: usize,
    pub agreements: usize,
    pub open_points_checked: usize,
    pub open: bool,
    /// Whether the image coincided with `N([α], U, V)` on every sample;
    /// `None` when `V` misses 0 and that set is undefined.
    pub equals_claimed_basic_set: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl BasisImage {
    pub fn pass(&self) -> bool {
        self.open && self.agreements == self.samples && self.witness.is_none()
    }
}

/// A basic neighbourhood `N([c], U', V')` of `c` contained in `region`,
/// found by testing the corners of its closure; the region and the
/// neighbourhood are convex in lifted coordinates. `margin` bounds the
/// distance from `c` to the region's boundary in those coordinates.
fn basic_nbhd_inside(
    c: &CirclePathClass,
    margin: &BigRational,
    region: impl Fn(&CirclePathClass) -> bool,
) -> Result<bool, CircleError> {
    let eps = margin / BigRational::from_integer(3.into());
    let width = &eps + &eps;
    let u = Arc::centered(&c.end(), width.clone())?;
    let v = Arc::centered(&c.start, width)?;
    if !uc_arc_membership(c, c, &u, &v)? {
        return Ok(false);
    }
    for (sigma, tau) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let s = &eps * BigRational::from_integer(sigma.into());
        let t = &eps * BigRational::from_integer(tau.into());
        let corner = CirclePathClass::new(CircleGroupPoint::new(c.start.value() + &s), &c.disp + t - s);
        if !region(&corner) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A product neighbourhood `N([β], U'') × V''` of `t` contained in
/// `region ⊆ H × S¹`, found by the corner test.
fn product_nbhd_inside(
    t: &TransfArrow,
    margin: &BigRational,
    region: impl Fn(&TransfArrow) -> bool,
) -> Result<bool, CircleError> {
    let eps = margin / BigRational::from_integer(3.into());
    let width = &eps + &eps;
    let beta = cover_element(t.lift.clone());
    let u = Arc::centered(&beta.end(), width.clone())?;
    if !cover_membership(&t.lift, &beta, &u)? {
        return Ok(false);
    }
    for (sigma, tau) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let s = &eps * BigRational::from_integer(sigma.into());
        let r = &eps * BigRational::from_integer(tau.into());
        let corner = TransfArrow::new(&t.lift + r, CircleGroupPoint::new(t.g.value() + s));
        if !region(&corner) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn min_of(xs: [BigRational; 4]) -> BigRational {
    xs.into_iter().min().expect("nonempty")
}

/// Computes `J(N([α], U) × V)` exactly and checks it on `samples` points:
/// membership of `(r, g)` in the box agrees with membership of `J(r, g)`
/// in the image, membership of a class in the image agrees with
/// membership of its preimage in the box, and every sampled image point
/// has a basic neighbourhood inside the image. Also compares the image
/// with the basic set `N([α], U, V)`.
pub fn j_basis_image(
    alpha: &CirclePathClass,
    u: &Arc,
    v: &Arc,
    samples: usize,
    seed: u64,
) -> Result<BasisImage, CircleError> {
    let a_end = offset_or(u, &alpha.end(), "end")?;
    if !alpha.start.value().is_zero() {
        return Err(CircleError::MalformedBasic(format!("{alpha} does not start at 0")));
    }
    let disp_low = &alpha.disp - a_end;
    let image = JImage { start: v.clone(), disp_high: &disp_low + &u.length, disp_low };
    let claimed_defined = v.contains(&alpha.start);
    let mut out = BasisImage {
        image,
        samples: 0,
        agreements: 0,
        open_points_checked: 0,
        open: true,
        equals_claimed_basic_set: claimed_defined.then_some(true),
        claimed_counterexample: None,
        witness: None,
    };
    let mut rng = rng(seed);
    for _ in 0..samples {
        let inside = sample_image_point(&mut rng, &out.image);
        let nearby = sample_near(&mut rng, &out.image);
        for c in [inside, nearby] {
            out.samples += 1;
            let t = j_inverse(&c);
            let in_box = v.contains(&t.g) && cover_membership(&t.lift, alpha, u)?;
            let in_image = out.image.contains(&c);
            let forward = out.image.contains(&j_map(&t).0);
            if in_box == in_image && in_image == forward {
                out.agreements += 1;
            } else if out.witness.is_none() {
                out.witness = Some(format!("membership disagrees at {c}"));
            }
            if claimed_defined && uc_arc_membership(&c, alpha, u, v)? != in_image {
                out.equals_claimed_basic_set = Some(false);
                out.claimed_counterexample.get_or_insert_with(|| {
                    format!("{c}: in the image {in_image}, in N([α], U, V) {}", !in_image)
                });
            }
            if in_image {
                out.open_points_checked += 1;
                let x = v.offset(&c.start).expect("inside");
                let margin = min_of([
                    x.clone(),
                    &v.length - &x,
                    &c.disp - &out.image.disp_low,
                    &out.image.disp_high - &c.disp,
                ]);
                let img = out.image.clone();
                if !basic_nbhd_inside(&c, &margin, |d| img.contains(d))? {
                    out.open = false;
                    out.witness.get_or_insert_with(|| format!("no basic neighbourhood of {c} inside the image"));
                }
            }
        }
    }
    Ok(out)
}

fn interior_fraction(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.gen_range(1..1000), 1000)
}

fn sample_image_point(rng: &mut ChaCha8Rng, img: &JImage) -> CirclePathClass {
    let x = &img.start.length * interior_fraction(rng);
    let d = &img.disp_low + (&img.disp_high - &img.disp_low) * interior_fraction(rng);
    CirclePathClass::new(img.start.at(&x), d)
}

/// A class near the image, possibly outside it, possibly off by a loop.
fn sample_near(rng: &mut ChaCha8Rng, img: &JImage) -> CirclePathClass {
    let pad = &img.start.length / BigRational::from_integer(2.into());
    let x = rational_between(rng, &-&pad, &(&img.start.length + &pad), 997);
    let width = &img.disp_high - &img.disp_low;
    let lo = &img.disp_low - &width;
    let hi = &img.disp_high + &width;
    let loops = BigRational::from_integer(rng.gen_range(-1..=1).into());
    CirclePathClass::new(img.start.at(&x), rational_between(rng, &lo, &hi, 991) + loops)
}

fn random_arc_around(rng: &mut ChaCha8Rng, p: &CircleGroupPoint) -> Arc {
    let length = rat(rng.gen_range(1..1000), 1000);
    let before = &length * interior_fraction(rng);
    Arc::new(CircleGroupPoint::new(p.value() - before), length).expect("length in (0, 1)")
}

/// Samples random boxes `N([α], U) × V` and random basic sets
/// `N([β], U, V)` and checks that `J` maps the former onto open sets with
/// exact membership agreement, and that `J⁻¹` maps the latter onto open
/// sets of `H × S¹`.
pub fn verify_basis_images(samples: usize, seed: u64) -> VerificationReport {
    let mut rng = rng(seed);
    let mut forward = IdentityCheck::new("box_image_open");
    let mut backward = IdentityCheck::new("basic_set_preimage_open");
    for i in 0..samples {
        let alpha = cover_element(rational(&mut rng, 3));
        let u = random_arc_around(&mut rng, &alpha.end());
        let centre = point(&mut rng);
        let v = random_arc_around(&mut rng, &centre);
        let ok = j_basis_image(&alpha, &u, &v, 1, seed.wrapping_add(i as u64)).map(|b| b.pass());
        forward.record(ok == Ok(true), || format!("alpha {alpha}, U {u}, V {v}"));

        let beta = CirclePathClass::new(point(&mut rng), rational(&mut rng, 3));
        let u = random_arc_around(&mut rng, &beta.end());
        let v = random_arc_around(&mut rng, &beta.start);
        let ok = preimage_open_at_sample(&mut rng, &beta, &u, &v);
        backward.record(ok == Ok(true), || format!("beta {beta}, U {u}, V {v}"));
    }
    VerificationReport { seed, samples, checks: vec![forward, backward] }
}

fn preimage_open_at_sample(
    rng: &mut ChaCha8Rng,
    beta: &CirclePathClass,
    u: &Arc,
    v: &Arc,
) -> Result<bool, CircleError> {
    let x = &v.length * interior_fraction(rng);
    let y = &u.length * interior_fraction(rng);
    let b_start = offset_or(v, &beta.start, "start")?;
    let b_end = offset_or(u, &beta.end(), "end")?;
    let c = CirclePathClass::new(v.at(&x), &beta.disp + (b_start - &x) + (&y - b_end));
    if !uc_arc_membership(&c, beta, u, v)? {
        return Ok(false);
    }
    let t = j_inverse(&c);
    let margin = min_of([x.clone(), &v.length - &x, y.clone(), &u.length - &y]);
    product_nbhd_inside(&t, &margin, |s| uc_arc_membership(&j_map(s).0, beta, u, v).unwrap_or(false))
}
