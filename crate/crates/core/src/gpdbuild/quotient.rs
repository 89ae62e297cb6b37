use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::finspace::{product_space, quotient_with_names, FinSpace, FinSpaceError};
use crate::pi1core::{universal_cover, UniversalCover};

use super::groupoid::{disjoint_union, Provenance};
use super::{FinTopGroupoid, GpdError};

/// Arrow of the quotient groupoid containing the pair `(p, q)` of cover
/// points. Arrows are indexed `(x * |X| + y) * |π₁| + k`, the orbit of
/// `((x, e), (y, k))`.
pub fn arrow_of_pair(c: &UniversalCover, p: usize, q: usize) -> usize {
    let m = c.base().len();
    let (x, g) = c.split(p);
    let (y, h) = c.split(q);
    let k = c.group().mul(h, c.group().inv(g));
    (x * m + y) * c.degree() + k
}

/// Canonical representative `((x, e), (y, k))` of an arrow, as cover points.
pub fn arrow_representative(c: &UniversalCover, a: usize) -> (usize, usize) {
    let (m, n) = (c.base().len(), c.degree());
    let (k, xy) = (a % n, a / n);
    (c.point(xy / m, 0), c.point(xy % m, k))
}

/// `(X̃ × X̃) / π₁` for the diagonal deck action, with the quotient of the
/// product topology.
pub fn quotient_groupoid(c: &UniversalCover) -> Result<FinTopGroupoid, GpdError> {
    let base = c.base();
    let total = c.total();
    let (m, n, big) = (base.len(), c.degree(), total.len());
    let group = c.group();
    let arrows = m * m * n;

    // orbit enumeration over all pairs, cross-checked against the count
    let mut orbit_sizes = vec![0usize; arrows];
    for p in 0..big {
        for q in 0..big {
            orbit_sizes[arrow_of_pair(c, p, q)] += 1;
        }
    }
    if orbit_sizes.iter().any(|&s| s != n) {
        return Err(GpdError::Malformed("diagonal deck orbits are not all of size |π₁|".into()));
    }

    let names: Vec<String> = (0..arrows)
        .map(|a| {
            let (p, q) = arrow_representative(c, a);
            format!("[{},{}]", total.name(p), total.name(q))
        })
        .collect();
    let product = Arc::new(product_space(total, total));
    let classes: Vec<Vec<usize>> = (0..arrows)
        .map(|a| {
            let (p, q) = arrow_representative(c, a);
            (0..n).map(|h| c.act(p, h) * big + c.act(q, h)).collect()
        })
        .collect();
    let quotient = quotient_with_names(&product, &classes, names.clone())?;
    debug_assert!((0..arrows).all(|a| quotient.projection.apply(classes[a][0]) == a));

    let unit = |x: usize| (x * m + x) * n;
    let is_unit: Vec<bool> = (0..arrows).map(|a| a % n == 0 && (a / n) / m == (a / n) % m).collect();
    let range = (0..arrows).map(|a| unit((a / n) / m)).collect();
    let source = (0..arrows).map(|a| unit((a / n) % m)).collect();
    let inverse = (0..arrows)
        .map(|a| {
            let (xy, k) = (a / n, a % n);
            ((xy % m) * m + xy / m) * n + group.inv(k)
        })
        .collect();
    let topology = quotient.space.clone();
    let isotropy_discrete = (0..m).all(|x| {
        let iso: Vec<usize> = (0..n).map(|k| unit(x) + k).collect();
        iso.iter().all(|&a| iso.iter().all(|&b| a == b || !topology.leq(a, b)))
    });
    let g = FinTopGroupoid::assemble(
        names,
        &is_unit,
        range,
        source,
        inverse,
        |g, h| {
            let (x, k1) = ((g / n) / m, g % n);
            let (w, k2) = ((h / n) % m, h % n);
            (x * m + w) * n + group.mul(k2, k1)
        },
        topology,
        "quotient of the product of minimal opens of the universal cover",
    )?;
    Ok(g.with_provenance(Provenance { cover_id: c.id(), isotropy_discrete }))
}

/// The UC topology on the arrows of a quotient groupoid, generated by the
/// sets `N(a) = {[x̃', ỹ'] : x̃' ∈ ↑x̃, ỹ' ∈ ↑ỹ}` for `a = [x̃, ỹ]`.
#[derive(Debug, Clone)]
pub struct UcTopology {
    pub space: Arc<FinSpace>,
    /// `N(a)` for every arrow `a`.
    pub basic_sets: Vec<FixedBitSet>,
    /// `|N(a)| = |↑x̃|·|↑ỹ|` for every arrow.
    pub parametrization_bijective: bool,
    /// Distinct sets `N(a, ↑u, ↑v)` examined.
    pub general_sets_checked: usize,
    /// Every `N(a, ↑u, ↑v)` is open in the generated topology.
    pub general_sets_open: bool,
    /// `N(a, U', V') ⊆ N(a, U, V)` whenever `U' ⊆ U` and `V' ⊆ V`.
    pub containments_hold: bool,
    pub witness: Option<String>,
}

fn neighbourhood(c: &UniversalCover, arrows: usize, p: usize, q: usize) -> FixedBitSet {
    let total = c.total();
    let mut set = FixedBitSet::with_capacity(arrows);
    for p2 in total.up(p).ones() {
        for q2 in total.up(q).ones() {
            set.insert(arrow_of_pair(c, p2, q2));
        }
    }
    set
}

fn check_provenance(g: &FinTopGroupoid, c: &UniversalCover) -> Result<(), GpdError> {
    match g.provenance() {
        Some(p) if p.cover_id == c.id() => Ok(()),
        _ => Err(GpdError::MismatchedProvenance),
    }
}

pub fn uc_topology(g: &FinTopGroupoid, c: &UniversalCover) -> Result<UcTopology, GpdError> {
    check_provenance(g, c)?;
    let total = c.total();
    let base = c.base();
    let arrows = g.len();
    let mut witness = None;
    let mut parametrization_bijective = true;
    let basic_sets: Vec<FixedBitSet> = (0..arrows)
        .map(|a| {
            let (p, q) = arrow_representative(c, a);
            let set = neighbourhood(c, arrows, p, q);
            if set.count_ones(..) != total.up(p).count_ones(..) * total.up(q).count_ones(..) {
                parametrization_bijective = false;
                witness.get_or_insert_with(|| format!("N({}) is not parametrized bijectively", g.name(a)));
            }
            set
        })
        .collect();
    let mut up: Vec<FixedBitSet> = (0..arrows)
        .map(|_| {
            let mut s = FixedBitSet::with_capacity(arrows);
            s.insert_range(..);
            s
        })
        .collect();
    for set in &basic_sets {
        for b in set.ones() {
            up[b].intersect_with(set);
        }
    }
    let space = Arc::new(FinSpace::from_up_sets(g.names().to_vec(), up)?);

    let mut general_sets_open = true;
    let mut containments_hold = true;
    let mut seen = HashSet::new();
    for a in 0..arrows {
        let (p, q) = arrow_representative(c, a);
        let (x, y) = (c.split(p).0, c.split(q).0);
        let below = |z: usize| (0..base.len()).filter(move |&u| base.leq(u, z));
        // lifts of basic opens ↑u ∋ x and ↑v ∋ y through p and q
        let lifts: Vec<((usize, usize), FixedBitSet)> = below(x)
            .flat_map(|u| below(y).map(move |v| (u, v)))
            .map(|(u, v)| {
                let lu = c.point(u, c.lift_step(x, c.split(p).1, u));
                let lv = c.point(v, c.lift_step(y, c.split(q).1, v));
                ((lu, lv), neighbourhood(c, arrows, lu, lv))
            })
            .collect();
        for ((lu, lv), set) in &lifts {
            if !total.leq(*lu, p) || !total.leq(*lv, q) {
                return Err(GpdError::Malformed("lift of a basic open misses the arrow".into()));
            }
            if seen.insert(arrow_of_pair(c, *lu, *lv)) && !space.is_open(set) {
                general_sets_open = false;
                witness.get_or_insert_with(|| format!("N({}, U, V) is not open", g.name(a)));
            }
            if !basic_sets[a].is_subset(set) {
                containments_hold = false;
                witness.get_or_insert_with(|| format!("N({}) is not inside N({}, U, V)", g.name(a), g.name(a)));
            }
        }
        for ((lu, lv), set) in &lifts {
            for ((lu2, lv2), set2) in &lifts {
                if total.leq(*lu, *lu2) && total.leq(*lv, *lv2) && !set2.is_subset(set) {
                    containments_hold = false;
                    witness.get_or_insert_with(|| format!("basic sets at {} are not nested", g.name(a)));
                }
            }
        }
    }
    Ok(UcTopology {
        space,
        basic_sets,
        parametrization_bijective,
        general_sets_checked: seen.len(),
        general_sets_open,
        containments_hold,
        witness,
    })
}

/// Comparison of the quotient topology with the UC topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyComparison {
    pub equal: bool,
    /// The projection `X̃ × X̃ -> G` is an open map.
    pub projection_open: bool,
    pub witness: Option<String>,
}

/// The image of the minimal open of `(p, q)` under the quotient
/// projection is `N([p, q])`, so the projection is open iff every basic
/// set is open in the quotient topology.
pub fn topologies_equal(g: &FinTopGroupoid, uc: &UcTopology) -> TopologyComparison {
    let t = g.topology();
    let mismatch = (0..g.len()).find(|&a| t.up(a) != uc.space.up(a));
    let closed = (0..g.len()).find(|&a| !t.is_open(&uc.basic_sets[a]));
    let witness = mismatch
        .map(|a| format!("minimal opens of {} differ", g.name(a)))
        .or_else(|| closed.map(|a| format!("image of the minimal open over {} is not open", g.name(a))));
    TopologyComparison {
        equal: mismatch.is_none() && uc.space.names() == t.names(),
        projection_open: closed.is_none(),
        witness,
    }
}

/// One path component of a space with its cover and quotient groupoid.
#[derive(Debug, Clone)]
pub struct ComponentGroupoid {
    /// Points of the component, as indices of the whole space.
    pub points: Vec<usize>,
    /// Basepoint, as an index of the whole space.
    pub basepoint: usize,
    pub space: Arc<FinSpace>,
    pub cover: UniversalCover,
    pub groupoid: FinTopGroupoid,
    /// Index of this component's first arrow in the union.
    pub offset: usize,
}

/// `Π₁(X)` with the UC topology, built per path component.
#[derive(Debug, Clone)]
pub struct FundamentalGroupoid {
    pub space: Arc<FinSpace>,
    pub components: Vec<ComponentGroupoid>,
    pub groupoid: Arc<FinTopGroupoid>,
    unit_point: Vec<usize>,
}

impl FundamentalGroupoid {
    /// Builds every component; `basepoint` chooses the basepoint of its own
    /// component, the others use their least point.
    pub fn build(x: Arc<FinSpace>, max_cosets: usize, basepoint: Option<&str>) -> Result<Self, GpdError> {
        let chosen = basepoint
            .map(|b| x.index_of(b).ok_or_else(|| FinSpaceError::UnknownPoint(b.to_string())))
            .transpose()?;
        let mut components = Vec::new();
        let mut offset = 0;
        for points in x.path_components() {
            let base = chosen.filter(|b| points.contains(b)).unwrap_or(points[0]);
            let space = Arc::new(x.subspace(&points));
            let cover = universal_cover(&space, x.name(base), max_cosets)?;
            let groupoid = quotient_groupoid(&cover)?;
            let len = groupoid.len();
            components.push(ComponentGroupoid { points, basepoint: base, space, cover, groupoid, offset });
            offset += len;
        }
        let parts: Vec<&FinTopGroupoid> = components.iter().map(|c| &c.groupoid).collect();
        let groupoid = Arc::new(disjoint_union(&parts)?);
        let mut unit_point = Vec::new();
        for comp in &components {
            for &u in comp.groupoid.units() {
                let (p, _) = arrow_representative(&comp.cover, u);
                unit_point.push(comp.points[comp.cover.split(p).0]);
            }
        }
        Ok(FundamentalGroupoid { space: x, components, groupoid, unit_point })
    }

    /// Point of `X` for each unit, in unit order.
    pub fn unit_points(&self) -> &[usize] {
        &self.unit_point
    }

    /// The unit arrow of a point of `X`.
    pub fn unit_of_point(&self, x: usize) -> usize {
        let pos = self.unit_point.iter().position(|&p| p == x).expect("every point has a unit");
        self.groupoid.units()[pos]
    }

    /// Component holding arrow `a` of the union, and `a`'s local index.
    pub fn locate(&self, a: usize) -> (&ComponentGroupoid, usize) {
        let comp = self
            .components
            .iter()
            .rev()
            .find(|c| c.offset <= a)
            .expect("arrow in range");
        (comp, a - comp.offset)
    }

    pub fn component_of_point(&self, x: usize) -> &ComponentGroupoid {
        self.components.iter().find(|c| c.points.contains(&x)).expect("point in a component")
    }

    /// Arrow `[(x, e), (y, k)]` of the union, for points of `X` in one component.
    pub fn arrow(&self, x: usize, y: usize, k: usize) -> Option<usize> {
        let comp = self.component_of_point(x);
        let lx = comp.points.iter().position(|&p| p == x)?;
        let ly = comp.points.iter().position(|&p| p == y)?;
        let (m, n) = (comp.points.len(), comp.cover.degree());
        (k < n).then(|| comp.offset + (lx * m + ly) * n + k)
    }
}
