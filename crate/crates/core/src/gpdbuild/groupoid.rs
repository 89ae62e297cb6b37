use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::finspace::{FinSpace, SpaceMap};

use super::GpdError;

/// Where a groupoid came from, when it was built from a universal cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub cover_id: u64,
    /// Isotropy groups carry the discrete subspace topology, as recorded
    /// during construction.
    pub isotropy_discrete: bool,
}

/// A finite groupoid with a finite topology on its arrows.
///
/// Units are arrows. `range` and `source` map each arrow to a unit arrow;
/// the product `γη` is stored for every composable pair
/// (`source(γ) = range(η)`).
#[derive(Debug, Clone)]
pub struct FinTopGroupoid {
    names: Vec<String>,
    units: Vec<usize>,
    unit_pos: Vec<Option<usize>>,
    range: Vec<usize>,
    source: Vec<usize>,
    inverse: Vec<usize>,
    range_fibre: Vec<Vec<usize>>,
    fibre_pos: Vec<usize>,
    products: Vec<Vec<usize>>,
    topology: Arc<FinSpace>,
    basis: String,
    provenance: Option<Provenance>,
}

impl FinTopGroupoid {
    /// Assembles a groupoid from its structure maps. `mult(γ, η)` is
    /// called once for each composable pair. Only the shape is validated
    /// here; the groupoid laws are checked by `gpdcheck`.
    pub fn assemble(
        names: Vec<String>,
        is_unit: &[bool],
        range: Vec<usize>,
        source: Vec<usize>,
        inverse: Vec<usize>,
        mut mult: impl FnMut(usize, usize) -> usize,
        topology: Arc<FinSpace>,
        basis: impl Into<String>,
    ) -> Result<Self, GpdError> {
        let n = names.len();
        if [is_unit.len(), range.len(), source.len(), inverse.len(), topology.len()]
            .iter()
            .any(|&l| l != n)
        {
            return Err(GpdError::Malformed("structure tables have inconsistent lengths".into()));
        }
        if topology.names() != names.as_slice() {
            return Err(GpdError::Malformed("topology is not over the arrow set".into()));
        }
        let units: Vec<usize> = (0..n).filter(|&a| is_unit[a]).collect();
        let mut unit_pos = vec![None; n];
        for (i, &u) in units.iter().enumerate() {
            unit_pos[u] = Some(i);
        }
        for a in 0..n {
            for (what, t) in [("range", range[a]), ("source", source[a]), ("inverse", inverse[a])] {
                if t >= n {
                    return Err(GpdError::Malformed(format!("{what} of {} out of bounds", names[a])));
                }
            }
            if !is_unit[range[a]] || !is_unit[source[a]] {
                return Err(GpdError::Malformed(format!("range or source of {} is not a unit", names[a])));
            }
        }
        let mut range_fibre = vec![Vec::new(); units.len()];
        let mut fibre_pos = vec![0; n];
        for a in 0..n {
            let fibre = &mut range_fibre[unit_pos[range[a]].expect("unit")];
            fibre_pos[a] = fibre.len();
            fibre.push(a);
        }
        let mut products = Vec::with_capacity(n);
        for g in 0..n {
            let fibre = &range_fibre[unit_pos[source[g]].expect("unit")];
            let mut row = Vec::with_capacity(fibre.len());
            for &h in fibre {
                let p = mult(g, h);
                if p >= n {
                    return Err(GpdError::Malformed(format!(
                        "product {}·{} out of bounds",
                        names[g], names[h]
                    )));
                }
                row.push(p);
            }
            products.push(row);
        }
        Ok(FinTopGroupoid {
            names,
            units,
            unit_pos,
            range,
            source,
            inverse,
            range_fibre,
            fibre_pos,
            products,
            topology,
            basis: basis.into(),
            provenance: None,
        })
    }

    pub(crate) fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.topology.index_of(name)
    }

    /// Unit arrows in increasing order.
    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.unit_pos[a].is_some()
    }

    /// Position of a unit arrow in [`units`](Self::units).
    pub fn unit_position(&self, a: usize) -> Option<usize> {
        self.unit_pos[a]
    }

    pub fn range(&self, a: usize) -> usize {
        self.range[a]
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `G^u`: arrows with range `u`.
    pub fn range_fibre(&self, u: usize) -> &[usize] {
        &self.range_fibre[self.unit_pos[u].expect("not a unit")]
    }

    /// `G_u`: arrows with source `u`.
    pub fn source_fibre(&self, u: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.source[a] == u).collect()
    }

    /// `G_u^u`.
    pub fn isotropy(&self, u: usize) -> Vec<usize> {
        self.range_fibre(u).iter().copied().filter(|&a| self.source[a] == u).collect()
    }

    pub fn composable(&self, g: usize, h: usize) -> bool {
        self.source[g] == self.range[h]
    }

    pub fn mul(&self, g: usize, h: usize) -> Option<usize> {
        self.composable(g, h).then(|| self.products[g][self.fibre_pos[h]])
    }

    /// Every composable pair `(γ, η)` together with `γη`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.len()).flat_map(move |g| {
            self.range_fibre(self.source[g])
                .iter()
                .zip(&self.products[g])
                .map(move |(&h, &p)| (g, h, p))
        })
    }

    pub fn composable_count(&self) -> usize {
        self.products.iter().map(Vec::len).sum()
    }

    pub fn topology(&self) -> &Arc<FinSpace> {
        &self.topology
    }

    /// Description of the basis that generated the topology.
    pub fn basis(&self) -> &str {
        &self.basis
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// The unit space with its subspace topology.
    pub fn unit_space(&self) -> FinSpace {
        self.topology.subspace(&self.units)
    }

    /// `r` or `s` as a map from arrows to arrows.
    pub fn range_map(&self) -> SpaceMap {
        SpaceMap::new(self.topology.clone(), self.topology.clone(), self.range.clone())
            .expect("range is total")
    }

    pub fn source_map(&self) -> SpaceMap {
        SpaceMap::new(self.topology.clone(), self.topology.clone(), self.source.clone())
            .expect("source is total")
    }

    pub fn inverse_map(&self) -> SpaceMap {
        SpaceMap::new(self.topology.clone(), self.topology.clone(), self.inverse.clone())
            .expect("inverse is total")
    }

    /// Structural equality, ignoring basis description and provenance.
    pub fn same_structure(&self, other: &FinTopGroupoid) -> bool {
        self.names == other.names
            && self.units == other.units
            && self.range == other.range
            && self.source == other.source
            && self.inverse == other.inverse
            && self.products == other.products
            && self.topology.up_sets() == other.topology.up_sets()
    }
}

/// Disjoint union; arrows of later parts are shifted past earlier ones.
/// Arrow names must be distinct across parts.
pub fn disjoint_union(parts: &[&FinTopGroupoid]) -> Result<FinTopGroupoid, GpdError> {
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    let total: usize = parts.iter().map(|g| g.len()).sum();
    let mut names = Vec::with_capacity(total);
    let mut is_unit = Vec::with_capacity(total);
    let mut range = Vec::with_capacity(total);
    let mut source = Vec::with_capacity(total);
    let mut inverse = Vec::with_capacity(total);
    let mut up = Vec::with_capacity(total);
    let mut offsets = Vec::with_capacity(parts.len());
    let mut part_of = Vec::with_capacity(total);
    let mut offset = 0;
    for (i, g) in parts.iter().enumerate() {
        offsets.push(offset);
        for a in 0..g.len() {
            names.push(g.names[a].clone());
            is_unit.push(g.is_unit(a));
            range.push(g.range[a] + offset);
            source.push(g.source[a] + offset);
            inverse.push(g.inverse[a] + offset);
            let mut row = FixedBitSet::with_capacity(total);
            for b in g.topology.up(a).ones() {
                row.insert(b + offset);
            }
            up.push(row);
            part_of.push(i);
        }
        offset += g.len();
    }
    let topology = Arc::new(FinSpace::from_up_sets(names.clone(), up)?);
    let basis = parts.iter().map(|g| g.basis.as_str()).collect::<Vec<_>>().join("; ");
    FinTopGroupoid::assemble(
        names,
        &is_unit,
        range,
        source,
        inverse,
        |g, h| {
            let i = part_of[g];
            let o = offsets[i];
            parts[i].mul(g - o, h - o).expect("composable within a part") + o
        },
        topology,
        format!("disjoint union of: {basis}"),
    )
}

/// A map of arrows between two groupoids.
#[derive(Debug, Clone)]
pub struct GroupoidMorphism {
    pub source: Arc<FinTopGroupoid>,
    pub target: Arc<FinTopGroupoid>,
    pub assignment: Vec<usize>,
}

impl GroupoidMorphism {
    pub fn new(
        source: Arc<FinTopGroupoid>,
        target: Arc<FinTopGroupoid>,
        assignment: Vec<usize>,
    ) -> Result<Self, GpdError> {
        if assignment.len() != source.len() || assignment.iter().any(|&b| b >= target.len()) {
            return Err(GpdError::Malformed("morphism is not total".into()));
        }
        Ok(GroupoidMorphism { source, target, assignment })
    }

    pub fn identity(g: Arc<FinTopGroupoid>) -> Self {
        let assignment = (0..g.len()).collect();
        GroupoidMorphism { source: g.clone(), target: g, assignment }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.assignment[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupoidMorphism) -> GroupoidMorphism {
        let assignment = self.assignment.iter().map(|&b| other.assignment[b]).collect();
        GroupoidMorphism { source: self.source.clone(), target: other.target.clone(), assignment }
    }

    /// First violation of the homomorphism laws, if any.
    pub fn homomorphism_witness(&self) -> Option<String> {
        let (g, h, f) = (&self.source, &self.target, &self.assignment);
        for a in 0..g.len() {
            if g.is_unit(a) && !h.is_unit(f[a]) {
                return Some(format!("unit {} maps to non-unit {}", g.name(a), h.name(f[a])));
            }
            if f[g.range(a)] != h.range(f[a]) || f[g.source(a)] != h.source(f[a]) {
                return Some(format!("{} does not commute with range/source", g.name(a)));
            }
            if f[g.inverse(a)] != h.inverse(f[a]) {
                return Some(format!("{} does not commute with inverse", g.name(a)));
            }
        }
        for (a, b, p) in g.composable_pairs() {
            if h.mul(f[a], f[b]) != Some(f[p]) {
                return Some(format!("product {}·{} not preserved", g.name(a), g.name(b)));
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_witness().is_none()
    }

    pub fn space_map(&self) -> SpaceMap {
        SpaceMap::new(self.source.topology.clone(), self.target.topology.clone(), self.assignment.clone())
            .expect("total by construction")
    }

    pub fn is_continuous(&self) -> bool {
        self.space_map().is_continuous()
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut hit = vec![false; self.target.len()];
        self.assignment.iter().all(|&b| !std::mem::replace(&mut hit[b], true))
    }

    pub fn inverse(&self) -> Option<GroupoidMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut assignment = vec![0; self.target.len()];
        for (a, &b) in self.assignment.iter().enumerate() {
            assignment[b] = a;
        }
        Some(GroupoidMorphism { source: self.target.clone(), target: self.source.clone(), assignment })
    }
}
