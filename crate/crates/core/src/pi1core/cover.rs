use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::finspace::{FinSpace, SpaceMap};

use super::{component_model, todd_coxeter, EdgePathPresentation, FiniteGroupTable, Pi1Error};

static NEXT_COVER_ID: AtomicU64 = AtomicU64::new(1);

/// The universal cover of a path connected finite space with finite π₁.
///
/// Points are pairs `(x, g)` stored at index `x * |π₁| + g` and named
/// `x@g`. For `x <= y` in the base, `(x, g) <= (y, ε(x, y)⁻¹ g)` where
/// `ε(x, y)` is the group element carried by the edge `x -> y` of the
/// order complex. The deck group acts on the right: `(x, g)·h = (x, gh)`.
#[derive(Debug, Clone)]
pub struct UniversalCover {
    id: u64,
    base: Arc<FinSpace>,
    base_point: usize,
    total: Arc<FinSpace>,
    projection: SpaceMap,
    group: FiniteGroupTable,
    presentation: EdgePathPresentation,
    vertex_of: Vec<usize>,
}

impl UniversalCover {
    /// Identity used to match groupoids with the cover they were built from.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn base(&self) -> &Arc<FinSpace> {
        &self.base
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    pub fn total(&self) -> &Arc<FinSpace> {
        &self.total
    }

    pub fn projection(&self) -> &SpaceMap {
        &self.projection
    }

    /// π₁ of the base, acting as the deck group.
    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn presentation(&self) -> &EdgePathPresentation {
        &self.presentation
    }

    pub fn degree(&self) -> usize {
        self.group.order()
    }

    pub fn point(&self, x: usize, g: usize) -> usize {
        x * self.degree() + g
    }

    /// `(x, g)` of a cover point.
    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.degree(), p % self.degree())
    }

    /// Deck transformation `p·h`.
    pub fn act(&self, p: usize, h: usize) -> usize {
        let (x, g) = self.split(p);
        self.point(x, self.group.mul(g, h))
    }

    pub fn fiber(&self, x: usize) -> Vec<usize> {
        (0..self.degree()).map(|g| self.point(x, g)).collect()
    }

    /// Group element carried by `x <= y`. Panics if `x </= y`.
    pub fn epsilon(&self, x: usize, y: usize) -> usize {
        assert!(self.base.leq(x, y), "{} </= {}", self.base.name(x), self.base.name(y));
        let (u, v) = (self.vertex_of[x], self.vertex_of[y]);
        if u == v {
            return self.group.identity();
        }
        self.presentation
            .edge_letter(u, v)
            .map_or(self.group.identity(), |l| self.group.letter(l))
    }

    /// Lift of the step `x -> y` between comparable points starting at
    /// `(x, g)`; returns the group coordinate over `y`.
    pub fn lift_step(&self, x: usize, g: usize, y: usize) -> usize {
        if self.base.leq(x, y) {
            self.group.mul(self.group.inv(self.epsilon(x, y)), g)
        } else {
            self.group.mul(self.epsilon(y, x), g)
        }
    }

    /// Lift of a path of successively comparable base points starting at
    /// `(path[0], g)`; returns the end point in the cover.
    pub fn lift_path(&self, path: &[usize], g: usize) -> usize {
        let mut cur = g;
        for w in path.windows(2) {
            cur = self.lift_step(w[0], cur, w[1]);
        }
        self.point(*path.last().expect("nonempty path"), cur)
    }

    fn verify(&self) -> Result<(), Pi1Error> {
        let n = self.degree();
        if !self.projection.is_continuous() {
            return Err(Pi1Error::LiftInconsistency("projection is not continuous".into()));
        }
        for p in 0..self.total.len() {
            let (x, _) = self.split(p);
            let members: Vec<usize> = self.total.up(p).ones().collect();
            let mut image = self.base.empty_set();
            for &q in &members {
                image.insert(self.split(q).0);
            }
            if image != *self.base.up(x) || members.len() != image.count_ones(..) {
                return Err(Pi1Error::LiftInconsistency(format!(
                    "minimal open of {} is not mapped bijectively onto that of {}",
                    self.total.name(p),
                    self.base.name(x)
                )));
            }
            for &a in &members {
                for &b in &members {
                    if self.base.leq(self.split(a).0, self.split(b).0) != self.total.leq(a, b) {
                        return Err(Pi1Error::LiftInconsistency(format!(
                            "order not reflected over minimal open of {}",
                            self.total.name(p)
                        )));
                    }
                }
            }
        }
        for h in 1..n {
            for p in 0..self.total.len() {
                if self.act(p, h) == p {
                    return Err(Pi1Error::LiftInconsistency("deck action is not free".into()));
                }
                let mut image = self.total.empty_set();
                for q in self.total.up(p).ones() {
                    image.insert(self.act(q, h));
                }
                if image != *self.total.up(self.act(p, h)) {
                    return Err(Pi1Error::LiftInconsistency(format!(
                        "deck transformation {h} is not a homeomorphism"
                    )));
                }
            }
        }
        if self.total.path_components().len() != 1 {
            return Err(Pi1Error::LiftInconsistency("cover is not connected".into()));
        }
        Ok(())
    }
}

/// Builds and verifies the universal cover of a path connected space.
pub fn universal_cover(x: &Arc<FinSpace>, base: &str, max_cosets: usize) -> Result<UniversalCover, Pi1Error> {
    if x.path_components().len() != 1 {
        return Err(Pi1Error::NotPathConnected);
    }
    let model = component_model(x, base)?;
    let group = todd_coxeter(model.presentation.presentation(), max_cosets)?;
    let n = group.order();
    let m = x.len();
    let mut cover = UniversalCover {
        id: NEXT_COVER_ID.fetch_add(1, Ordering::Relaxed),
        base: x.clone(),
        base_point: x.index_of(base).expect("checked by component_model"),
        total: Arc::new(FinSpace::discrete::<&str>(&[]).expect("empty space")),
        projection: SpaceMap::identity(x.clone()),
        group,
        presentation: model.presentation,
        vertex_of: model.vertex_of,
    };
    let names: Vec<String> = (0..m * n)
        .map(|p| format!("{}@{}", x.name(p / n), p % n))
        .collect();
    let mut up = vec![FixedBitSet::with_capacity(m * n); m * n];
    for a in 0..m {
        for b in x.up(a).ones() {
            let t = cover.group.inv(cover.epsilon(a, b));
            for g in 0..n {
                up[a * n + g].insert(b * n + cover.group.mul(t, g));
            }
        }
    }
    let total = Arc::new(
        FinSpace::from_up_sets(names, up).map_err(|e| Pi1Error::LiftInconsistency(e.to_string()))?,
    );
    let assignment = (0..m * n).map(|p| p / n).collect();
    cover.projection = SpaceMap::new(total.clone(), x.clone(), assignment)?;
    cover.total = total;
    cover.verify()?;
    Ok(cover)
}
