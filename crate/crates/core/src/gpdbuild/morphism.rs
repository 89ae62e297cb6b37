use std::collections::VecDeque;

use crate::finspace::SpaceMap;

use super::quotient::{arrow_of_pair, arrow_representative};
use super::{FundamentalGroupoid, GpdError, GroupoidMorphism};

/// `f_*: Π₁(X) -> Π₁(Y)`. An arrow `[x̃, ỹ]` is sent to the class of
/// `f ∘ γ` where `γ` is the projection of a path from `ỹ` to `x̃` in the
/// cover; the image path is lifted to the cover of `Y` from the identity
/// sheet over `f(y)`.
pub fn induced_morphism(
    f: &SpaceMap,
    dom: &FundamentalGroupoid,
    cod: &FundamentalGroupoid,
) -> Result<GroupoidMorphism, GpdError> {
    if **f.domain() != *dom.space || **f.codomain() != *cod.space {
        return Err(GpdError::Malformed("map does not match the groupoids' spaces".into()));
    }
    if !f.is_continuous() {
        return Err(GpdError::NotContinuous(
            crate::finspace::monotone_witness(f.domain(), f.codomain(), f.assignment())
                .map(|(a, b)| format!("{} <= {} is not preserved", f.domain().name(a), f.domain().name(b)))
                .unwrap_or_default(),
        ));
    }
    let mut local = vec![0usize; cod.space.len()];
    for comp in &cod.components {
        for (i, &p) in comp.points.iter().enumerate() {
            local[p] = i;
        }
    }
    let mut assignment = vec![usize::MAX; dom.groupoid.len()];
    for comp in &dom.components {
        let total = comp.cover.total();
        let big = total.len();
        let down = total.down_sets();
        let n = comp.cover.degree();
        let m = comp.points.len();
        for q in 0..big {
            // BFS tree in the comparability graph of the cover, rooted at q
            let mut parent = vec![usize::MAX; big];
            parent[q] = q;
            let mut queue = VecDeque::from([q]);
            while let Some(v) = queue.pop_front() {
                for w in total.up(v).ones().chain(down[v].ones()) {
                    if parent[w] == usize::MAX {
                        parent[w] = v;
                        queue.push_back(w);
                    }
                }
            }
            let (y, k) = comp.cover.split(q);
            for x in 0..m {
                let a = (x * m + y) * n + k;
                let (p, q2) = arrow_representative(&comp.cover, a);
                debug_assert_eq!(q2, q);
                let mut path = vec![p];
                let mut cur = p;
                while cur != q {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                let image: Vec<usize> = path
                    .iter()
                    .map(|&v| f.apply(comp.points[comp.cover.split(v).0]))
                    .collect();
                let target = cod.component_of_point(image[0]);
                let steps: Vec<usize> = image.iter().map(|&v| local[v]).collect();
                let end = target.cover.lift_path(&steps, 0);
                let start = target.cover.point(steps[0], 0);
                assignment[comp.offset + a] = target.offset + arrow_of_pair(&target.cover, end, start);
            }
        }
    }
    let morphism = GroupoidMorphism::new(dom.groupoid.clone(), cod.groupoid.clone(), assignment)?;
    if let Some(w) = morphism.homomorphism_witness() {
        return Err(GpdError::NotHomomorphism(w));
    }
    if !morphism.is_continuous() {
        return Err(GpdError::NotContinuous("induced map of arrows".into()));
    }
    Ok(morphism)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finspace::FinSpace;

    fn circle() -> Arc<FinSpace> {
        Arc::new(
            FinSpace::from_relations::<&str>(
                &[],
                &[("a", "c"), ("a", "d"), ("a", "e"), ("b", "c"), ("b", "d"), ("b", "e"), ("f", "c"), ("f", "d"), ("f", "e")],
                true,
            )
            .unwrap(),
        )
    }

    #[test]
    fn identity_and_constant() {
        let x = Arc::new(FinSpace::from_relations(&["a", "b"], &[("a", "b")], true).unwrap());
        let g = FundamentalGroupoid::build(x.clone(), 10, None).unwrap();
        let id = induced_morphism(&SpaceMap::identity(x.clone()), &g, &g).unwrap();
        assert_eq!(id.assignment, (0..g.groupoid.len()).collect::<Vec<_>>());
        let c = induced_morphism(&SpaceMap::constant(x.clone(), x.clone(), 1), &g, &g).unwrap();
        let bb = g.unit_of_point(1);
        assert!(c.assignment.iter().all(|&a| a == bb));
    }

    #[test]
    fn discontinuous_map_rejected() {
        let x = Arc::new(FinSpace::from_relations(&["a", "b"], &[("a", "b")], true).unwrap());
        let g = FundamentalGroupoid::build(x.clone(), 10, None).unwrap();
        let swap = SpaceMap::new(x.clone(), x.clone(), vec![1, 0]).unwrap();
        assert!(matches!(induced_morphism(&swap, &g, &g), Err(GpdError::NotContinuous(_))));
    }

    #[test]
    fn infinite_pi1_has_no_groupoid() {
        assert!(FundamentalGroupoid::build(circle(), 1000, None).is_err());
    }
}
