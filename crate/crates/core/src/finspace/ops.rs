use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::space::{FinSpace, SpaceMap};
use super::FinSpaceError;

/// Factor name inside a product name. Names that could make pairs ambiguous
/// are bracketed.
fn factor_name(x: &str) -> String {
    if x.contains([',', '(', ')', '[', ']']) {
        format!("[{x}]")
    } else {
        x.to_string()
    }
}

/// Product of two finite spaces. Points are ordered by `(a, b)` index pairs
/// and named `(a,b)`; minimal opens are products of minimal opens.
pub fn product_space(a: &FinSpace, b: &FinSpace) -> FinSpace {
    let (n, m) = (a.len(), b.len());
    let mut names = Vec::with_capacity(n * m);
    for x in a.names() {
        for y in b.names() {
            names.push(format!("({},{})", factor_name(x), factor_name(y)));
        }
    }
    let mut up = Vec::with_capacity(n * m);
    for x in 0..n {
        for y in 0..m {
            let mut row = FixedBitSet::with_capacity(n * m);
            for x2 in a.up(x).ones() {
                for y2 in b.up(y).ones() {
                    row.insert(x2 * m + y2);
                }
            }
            up.push(row);
        }
    }
    FinSpace::assemble(names, up)
}

/// Projections out of `product_space(a, b)`.
pub fn product_projections(
    a: &Arc<FinSpace>,
    b: &Arc<FinSpace>,
    product: &Arc<FinSpace>,
) -> (SpaceMap, SpaceMap) {
    let m = b.len();
    let first = (0..product.len()).map(|p| p / m).collect();
    let second = (0..product.len()).map(|p| p % m).collect();
    (
        SpaceMap::new(product.clone(), a.clone(), first).expect("projection is total"),
        SpaceMap::new(product.clone(), b.clone(), second).expect("projection is total"),
    )
}

/// Result of forming a quotient space.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub space: Arc<FinSpace>,
    pub projection: SpaceMap,
    /// The equivalence relation is a closed subset of `X × X`.
    pub relation_closed: bool,
    /// Image of every open set is open.
    pub projection_open: bool,
    pub hausdorff: bool,
}

impl Quotient {
    /// For an open projection, the quotient is Hausdorff iff the relation
    /// is closed. `None` when the projection is not open.
    pub fn closed_relation_criterion(&self) -> Option<bool> {
        self.projection_open.then_some(self.relation_closed == self.hausdorff)
    }
}

/// Quotient of `x` by the partition `classes`. Classes are ordered by least
/// member; singleton classes keep their point's name, others are named
/// `{a,b,...}`.
pub fn quotient_space(x: &Arc<FinSpace>, classes: &[Vec<usize>]) -> Result<Quotient, FinSpaceError> {
    let labels = labels_from_partition(x.len(), classes)?;
    let ordered = ordered_classes(&labels);
    let names = ordered
        .iter()
        .map(|c| {
            if c.len() == 1 {
                x.name(c[0]).to_string()
            } else {
                let inner: Vec<&str> = c.iter().map(|&p| x.name(p)).collect();
                format!("{{{}}}", inner.join(","))
            }
        })
        .collect();
    quotient_with_names(x, classes, names)
}

/// As [`quotient_space`] with caller-chosen class names, given in class
/// order (by least member).
pub fn quotient_with_names(
    x: &Arc<FinSpace>,
    classes: &[Vec<usize>],
    names: Vec<String>,
) -> Result<Quotient, FinSpaceError> {
    let labels = labels_from_partition(x.len(), classes)?;
    let ordered = ordered_classes(&labels);
    let k = ordered.len();
    if names.len() != k {
        return Err(FinSpaceError::BadPartition(format!("{} names for {} classes", names.len(), k)));
    }
    // relabel so class c has least member smaller than class c+1
    let mut class_of = vec![0usize; x.len()];
    for (c, members) in ordered.iter().enumerate() {
        for &p in members {
            class_of[p] = c;
        }
    }

    // A set of classes S is open iff its preimage is an up-set. The minimal
    // open of a class is the least such S containing it, found by closing
    // under "image of the open hull of the preimage".
    let mut up = Vec::with_capacity(k);
    for c in 0..k {
        let mut current = FixedBitSet::with_capacity(k);
        current.insert(c);
        loop {
            let mut preimage = x.empty_set();
            for cls in current.ones() {
                for &p in &ordered[cls] {
                    preimage.insert(p);
                }
            }
            let hull = x.open_hull(&preimage);
            let mut next = current.clone();
            for p in hull.ones() {
                next.insert(class_of[p]);
            }
            if next == current {
                break;
            }
            current = next;
        }
        up.push(current);
    }
    let space = Arc::new(FinSpace::from_up_sets(names, up)?);
    let projection = SpaceMap::new(x.clone(), space.clone(), class_of.clone())?;
    assert!(projection.is_continuous(), "quotient projection must be continuous");

    let projection_open = projection.is_open_map();
    let relation_closed = relation_is_closed(x, &class_of);
    let hausdorff = super::report::is_hausdorff(&space);
    Ok(Quotient { space, projection, relation_closed, projection_open, hausdorff })
}

/// The relation `{(p, q) : class(p) = class(q)}` is closed in `X × X` iff
/// its complement is an up-set, i.e. the relation is a down-set of the
/// product order.
pub fn relation_is_closed(x: &FinSpace, class_of: &[usize]) -> bool {
    let down = x.down_sets();
    let n = x.len();
    for p in 0..n {
        for q in 0..n {
            if class_of[p] != class_of[q] {
                continue;
            }
            for p2 in down[p].ones() {
                for q2 in down[q].ones() {
                    if class_of[p2] != class_of[q2] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn labels_from_partition(n: usize, classes: &[Vec<usize>]) -> Result<Vec<usize>, FinSpaceError> {
    let mut labels = vec![usize::MAX; n];
    for (c, members) in classes.iter().enumerate() {
        if members.is_empty() {
            return Err(FinSpaceError::BadPartition("empty class".into()));
        }
        for &p in members {
            if p >= n {
                return Err(FinSpaceError::BadPartition(format!("point index {p} out of range")));
            }
            if labels[p] != usize::MAX {
                return Err(FinSpaceError::BadPartition(format!("point index {p} in two classes")));
            }
            labels[p] = c;
        }
    }
    if labels.iter().any(|&l| l == usize::MAX) {
        return Err(FinSpaceError::BadPartition("classes do not cover the space".into()));
    }
    Ok(labels)
}

fn ordered_classes(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = Vec::new();
    let mut slot = std::collections::HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (p, &l) in labels.iter().enumerate() {
        let k = *slot.entry(l).or_insert_with(|| {
            order.push(l);
            out.push(Vec::new());
            out.len() - 1
        });
        out[k].push(p);
    }
    out
}

/// Partition of a space given by class names, e.g. `[["a","b"],["c","d"]]`.
pub fn partition_from_names<S: AsRef<str>>(
    x: &FinSpace,
    classes: &[Vec<S>],
) -> Result<Vec<Vec<usize>>, FinSpaceError> {
    classes
        .iter()
        .map(|c| c.iter().map(|n| x.require(n.as_ref())).collect())
        .collect()
}

/// Outcome of a local homeomorphism test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalHomeo {
    /// Image equals the requested target set.
    pub onto: bool,
    /// First domain point whose minimal open is not mapped homeomorphically
    /// onto an open set.
    pub failure: Option<usize>,
}

impl LocalHomeo {
    pub fn holds(&self) -> bool {
        self.onto && self.failure.is_none()
    }
}

/// Tests whether `f: dom -> cod` is a local homeomorphism onto `target`
/// (`None` means all of `cod`). In a finite space every neighbourhood of `x`
/// contains `↑x`, and restrictions of homeomorphisms onto opens are again
/// such, so testing minimal opens is exact.
pub fn local_homeomorphism(
    dom: &FinSpace,
    cod: &FinSpace,
    f: &[usize],
    target: Option<&FixedBitSet>,
) -> LocalHomeo {
    let mut image = cod.empty_set();
    for &y in f {
        image.insert(y);
    }
    let onto = match target {
        Some(t) => &image == t,
        None => image.count_ones(..) == cod.len(),
    };
    let mut failure = None;
    'points: for x in 0..dom.len() {
        let members: Vec<usize> = dom.up(x).ones().collect();
        let mut img = cod.empty_set();
        for &y in &members {
            if img.contains(f[y]) {
                failure = Some(x);
                break 'points;
            }
            img.insert(f[y]);
        }
        if !cod.is_open(&img) {
            failure = Some(x);
            break;
        }
        for &a in &members {
            for &b in &members {
                if dom.leq(a, b) != cod.leq(f[a], f[b]) {
                    failure = Some(x);
                    break 'points;
                }
            }
        }
    }
    LocalHomeo { onto, failure }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(pairs: &[(&str, &str)]) -> Arc<FinSpace> {
        Arc::new(FinSpace::from_relations::<&str>(&[], pairs, true).unwrap())
    }

    fn pseudocircle() -> Arc<FinSpace> {
        arc(&[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    }

    #[test]
    fn product_names_stay_distinct() {
        let x = FinSpace::discrete(&["1", "1,2", "2,3", "3"]).unwrap();
        let p = product_space(&x, &x);
        assert_eq!(p.len(), 16);
        assert!(p.index_of("(1,[2,3])").is_some());
        assert!(p.index_of("([1,2],3)").is_some());
        assert!(p.index_of("(1,3)").is_some());
    }

    #[test]
    fn products() {
        let pt = FinSpace::discrete(&["*"]).unwrap();
        let p = pseudocircle();
        let prod = product_space(&pt, &p);
        assert!(prod.is_homeomorphism(&p, &(0..4).collect::<Vec<_>>()));

        let c = arc(&[("a", "b")]);
        let sq = product_space(&c, &c);
        assert_eq!(sq.len(), 4);
        assert!(sq.leq(0, 3) && !sq.leq(1, 2) && !sq.leq(2, 1));
        assert_eq!(sq.up(0).count_ones(..), 4);

        let p2 = Arc::new(product_space(&p, &p));
        assert_eq!(p2.len(), 16);
        let aa = p2.index_of("(a,a)").unwrap();
        assert_eq!(p2.up(aa).count_ones(..), 9);
        let (f, s) = product_projections(&p, &p, &p2);
        for m in [&f, &s] {
            assert!(m.is_continuous() && m.is_open_map());
        }
    }

    #[test]
    fn quotients() {
        let p = pseudocircle();
        let trivial: Vec<Vec<usize>> = (0..4).map(|i| vec![i]).collect();
        let q = quotient_space(&p, &trivial).unwrap();
        assert!(q.space.is_homeomorphism(&p, &[0, 1, 2, 3]));
        assert_eq!(q.closed_relation_criterion(), Some(true));

        let c = arc(&[("a", "b")]);
        let q = quotient_space(&c, &[vec![0, 1]]).unwrap();
        assert_eq!(q.space.len(), 1);
        assert!(q.hausdorff && q.relation_closed);

        let classes = partition_from_names(&p, &[vec!["a", "b"], vec!["c", "d"]]).unwrap();
        let q = quotient_space(&p, &classes).unwrap();
        assert_eq!(q.space.names(), &["{a,b}", "{c,d}"]);
        assert!(q.space.leq(0, 1) && !q.space.leq(1, 0));
        assert!(!q.hausdorff && !q.relation_closed && q.projection_open);
        assert_eq!(q.closed_relation_criterion(), Some(true));
    }

    #[test]
    fn bad_partitions() {
        let p = pseudocircle();
        for classes in [vec![vec![0, 1]], vec![vec![0, 1, 2, 3], vec![3]], vec![vec![0, 1, 2, 3], vec![]]] {
            assert!(matches!(quotient_space(&p, &classes), Err(FinSpaceError::BadPartition(_))));
        }
        assert!(partition_from_names(&p, &[vec!["q"]]).is_err());
    }

    #[test]
    fn closed_relation_is_down_set() {
        let c = arc(&[("a", "b")]);
        // {a,b} glued with a third point away from them
        let x = Arc::new(FinSpace::from_relations(&["c"], &[("a", "b")], true).unwrap());
        assert!(relation_is_closed(&c, &[0, 0]));
        assert!(!relation_is_closed(&x, &[0, 1, 1]));
        assert!(relation_is_closed(&x, &[0, 0, 1]));
    }

    #[test]
    fn local_homeomorphisms() {
        // two copies of a chain folded onto one chain
        let two = FinSpace::from_relations::<&str>(&[], &[("a", "b"), ("c", "d")], true).unwrap();
        let one = FinSpace::from_relations::<&str>(&[], &[("a", "b")], true).unwrap();
        assert!(local_homeomorphism(&two, &one, &[0, 1, 0, 1], None).holds());
        let r = local_homeomorphism(&one, &one, &[0, 0], None);
        assert!(!r.onto && r.failure == Some(0));
    }
}
