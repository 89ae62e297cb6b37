use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::FinSpaceError;

/// A finite topological space stored as its specialization preorder.
///
/// Opens are the up-sets of `leq`; `up[x]` is the minimal open `↑x`, and
/// the family of minimal opens is the canonical basis of the topology.
#[derive(Clone, PartialEq, Eq)]
pub struct FinSpace {
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    t0: bool,
}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinSpace")
            .field("points", &self.names.len())
            .field("t0", &self.t0)
            .finish()
    }
}

impl FinSpace {
    /// Builds the space whose preorder is the reflexive-transitive closure
    /// of `pairs`. Points are the declared `points` together with every
    /// point named in a pair, sorted lexicographically.
    pub fn from_relations<S: AsRef<str>>(
        points: &[S],
        pairs: &[(S, S)],
        require_t0: bool,
    ) -> Result<Self, FinSpaceError> {
        let mut all: BTreeSet<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        for (a, b) in pairs {
            all.insert(a.as_ref().to_string());
            all.insert(b.as_ref().to_string());
        }
        for name in &all {
            validate_identifier(name)?;
        }
        let names: Vec<String> = all.into_iter().collect();
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let n = names.len();
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for (a, b) in pairs {
            up[index[a.as_ref()]].insert(index[b.as_ref()]);
        }
        transitive_closure(&mut up);
        let space = Self::assemble(names, up);
        if require_t0 {
            if let Some((a, b)) = space.first_indistinguishable_pair() {
                return Err(FinSpaceError::CycleWithT0Flag(
                    space.names[a].clone(),
                    space.names[b].clone(),
                ));
            }
        }
        Ok(space)
    }

    /// Builds a space from explicit minimal opens, keeping the given point
    /// order. `up[x]` must contain `x` and the relation must be transitive.
    pub fn from_up_sets(names: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self, FinSpaceError> {
        let n = names.len();
        if up.len() != n {
            return Err(FinSpaceError::Malformed(format!(
                "{} points but {} minimal opens",
                n,
                up.len()
            )));
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(FinSpaceError::DuplicatePoint(name.clone()));
            }
        }
        for (x, row) in up.iter().enumerate() {
            if row.len() != n {
                return Err(FinSpaceError::Malformed(format!(
                    "minimal open of {} has width {}",
                    names[x],
                    row.len()
                )));
            }
            if !row.contains(x) {
                return Err(FinSpaceError::Malformed(format!("relation not reflexive at {}", names[x])));
            }
            for y in row.ones() {
                if !up[y].is_subset(row) {
                    return Err(FinSpaceError::Malformed(format!(
                        "relation not transitive through {} <= {}",
                        names[x], names[y]
                    )));
                }
            }
        }
        Ok(Self::assemble(names, up))
    }

    pub(crate) fn assemble(names: Vec<String>, up: Vec<FixedBitSet>) -> Self {
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut space = FinSpace { names, index, up, t0: true };
        space.t0 = space.first_indistinguishable_pair().is_none();
        space
    }

    pub fn discrete<S: AsRef<str>>(points: &[S]) -> Result<Self, FinSpaceError> {
        Self::from_relations(points, &[], true)
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

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize, FinSpaceError> {
        self.index_of(name).ok_or_else(|| FinSpaceError::UnknownPoint(name.to_string()))
    }

    /// `↑x`, the intersection of all opens containing `x`.
    pub fn up(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn up_sets(&self) -> &[FixedBitSet] {
        &self.up
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn is_t0(&self) -> bool {
        self.t0
    }

    /// `↓x` for every point.
    pub fn down_sets(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (x, row) in self.up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        down
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// A set is open iff it contains the minimal open of each of its points.
    pub fn is_open(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.up[x].is_subset(set))
    }

    /// The smallest open set containing `set`.
    pub fn open_hull(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut hull = self.empty_set();
        for x in set.ones() {
            hull.union_with(&self.up[x]);
        }
        hull
    }

    /// Indices as a sorted vector.
    pub fn members(set: &FixedBitSet) -> Vec<usize> {
        set.ones().collect()
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet, FinSpaceError> {
        let mut s = self.empty_set();
        for n in names {
            s.insert(self.require(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn first_indistinguishable_pair(&self) -> Option<(usize, usize)> {
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                if y != x && self.up[y].contains(x) {
                    return Some((x.min(y), x.max(y)));
                }
            }
        }
        None
    }

    /// Restriction of the preorder to `members`, in increasing index order.
    pub fn subspace(&self, members: &[usize]) -> FinSpace {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let k = sorted.len();
        let names = sorted.iter().map(|&x| self.names[x].clone()).collect();
        let up = sorted
            .iter()
            .map(|&x| {
                let mut row = FixedBitSet::with_capacity(k);
                for (j, &y) in sorted.iter().enumerate() {
                    if self.up[x].contains(y) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        FinSpace::assemble(names, up)
    }

    /// Path components: connected components of the comparability graph,
    /// each sorted, ordered by least member.
    pub fn path_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in 0..n {
            for y in self.up[x].ones() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for x in 0..n {
            let root = find(&mut parent, x);
            let k = *slot.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(x);
        }
        groups
    }

    /// Classes of topologically indistinguishable points (`x <= y <= x`),
    /// ordered by least member.
    pub fn kolmogorov_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let class: Vec<usize> = self.up[x].ones().filter(|&y| self.up[y].contains(x)).collect();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// True iff `f` is an order isomorphism onto `other` (a homeomorphism).
    pub fn is_homeomorphism(&self, other: &FinSpace, f: &[usize]) -> bool {
        if f.len() != self.len() || other.len() != self.len() {
            return false;
        }
        let mut hit = vec![false; other.len()];
        for &y in f {
            if y >= other.len() || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.leq(x, y) == other.leq(f[x], f[y])))
    }
}

fn validate_identifier(name: &str) -> Result<(), FinSpaceError> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(FinSpaceError::BadIdentifier(name.to_string()));
    }
    Ok(())
}

pub(crate) fn transitive_closure(up: &mut [FixedBitSet]) {
    let n = up.len();
    for k in 0..n {
        let row_k = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

/// An open subset of a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSet<'a> {
    space: &'a FinSpace,
    members: FixedBitSet,
}

impl<'a> OpenSet<'a> {
    pub fn new(space: &'a FinSpace, members: FixedBitSet) -> Result<Self, FinSpaceError> {
        if members.len() != space.len() || !space.is_open(&members) {
            return Err(FinSpaceError::NotOpen);
        }
        Ok(OpenSet { space, members })
    }

    pub fn space(&self) -> &'a FinSpace {
        self.space
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn names(&self) -> Vec<&'a str> {
        self.members.ones().map(|x| self.space.name(x)).collect()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Returns `↑x` for the named point.
pub fn minimal_open<'a>(space: &'a FinSpace, point: &str) -> Result<OpenSet<'a>, FinSpaceError> {
    let x = space.require(point)?;
    Ok(OpenSet { space, members: space.up(x).clone() })
}

/// Openness of a set of named points.
pub fn is_open<S: AsRef<str>>(space: &FinSpace, points: &[S]) -> Result<bool, FinSpaceError> {
    Ok(space.is_open(&space.set_from_names(points)?))
}

/// A total map between finite spaces. Continuity is a queried property.
#[derive(Debug, Clone)]
pub struct SpaceMap {
    domain: Arc<FinSpace>,
    codomain: Arc<FinSpace>,
    assignment: Vec<usize>,
}

impl SpaceMap {
    pub fn new(
        domain: Arc<FinSpace>,
        codomain: Arc<FinSpace>,
        assignment: Vec<usize>,
    ) -> Result<Self, FinSpaceError> {
        if assignment.len() != domain.len() || assignment.iter().any(|&y| y >= codomain.len()) {
            return Err(FinSpaceError::Malformed("map is not total".into()));
        }
        Ok(SpaceMap { domain, codomain, assignment })
    }

    pub fn from_names<S: AsRef<str>>(
        domain: Arc<FinSpace>,
        codomain: Arc<FinSpace>,
        pairs: &[(S, S)],
    ) -> Result<Self, FinSpaceError> {
        let mut assignment = vec![usize::MAX; domain.len()];
        for (a, b) in pairs {
            assignment[domain.require(a.as_ref())?] = codomain.require(b.as_ref())?;
        }
        if let Some(x) = assignment.iter().position(|&y| y == usize::MAX) {
            return Err(FinSpaceError::Malformed(format!("no image for {}", domain.name(x))));
        }
        Ok(SpaceMap { domain, codomain, assignment })
    }

    pub fn identity(space: Arc<FinSpace>) -> Self {
        let assignment = (0..space.len()).collect();
        SpaceMap { domain: space.clone(), codomain: space, assignment }
    }

    pub fn constant(domain: Arc<FinSpace>, codomain: Arc<FinSpace>, value: usize) -> Self {
        let assignment = vec![value; domain.len()];
        SpaceMap { domain, codomain, assignment }
    }

    pub fn domain(&self) -> &Arc<FinSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinSpace> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SpaceMap) -> Result<SpaceMap, FinSpaceError> {
        if !Arc::ptr_eq(&self.codomain, &other.domain) && *self.codomain != *other.domain {
            return Err(FinSpaceError::Malformed("maps are not composable".into()));
        }
        let assignment = self.assignment.iter().map(|&y| other.assignment[y]).collect();
        Ok(SpaceMap { domain: self.domain.clone(), codomain: other.codomain.clone(), assignment })
    }

    /// Order preservation: `x <= y` implies `f(x) <= f(y)`.
    pub fn is_monotone(&self) -> bool {
        monotone_witness(&self.domain, &self.codomain, &self.assignment).is_none()
    }

    /// Preimage of every minimal open of the codomain is open.
    pub fn preimages_of_minimal_opens_open(&self) -> bool {
        preimage_witness(&self.domain, &self.codomain, &self.assignment).is_none()
    }

    /// Continuity, computed both as order preservation and by preimages of
    /// the minimal-open basis. The two must agree.
    pub fn is_continuous(&self) -> bool {
        let monotone = self.is_monotone();
        let preimages = self.preimages_of_minimal_opens_open();
        assert_eq!(monotone, preimages, "continuity criteria disagree");
        monotone
    }

    /// Image of every minimal open is open.
    pub fn is_open_map(&self) -> bool {
        (0..self.domain.len()).all(|x| {
            let mut image = self.codomain.empty_set();
            for y in self.domain.up(x).ones() {
                image.insert(self.assignment[y]);
            }
            self.codomain.is_open(&image)
        })
    }
}

/// First pair `x <= y` with `f(x) </= f(y)`.
pub fn monotone_witness(dom: &FinSpace, cod: &FinSpace, f: &[usize]) -> Option<(usize, usize)> {
    for x in 0..dom.len() {
        let fx = cod.up(f[x]);
        for y in dom.up(x).ones() {
            if !fx.contains(f[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// First codomain point whose minimal open has a non-open preimage.
pub fn preimage_witness(dom: &FinSpace, cod: &FinSpace, f: &[usize]) -> Option<usize> {
    for c in 0..cod.len() {
        let mut pre = dom.empty_set();
        for (x, &fx) in f.iter().enumerate() {
            if cod.leq(c, fx) {
                pre.insert(x);
            }
        }
        if !dom.is_open(&pre) {
            return Some(c);
        }
    }
    None
}
