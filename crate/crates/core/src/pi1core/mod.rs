//! Finite fundamental groups of finite spaces, universal covers and the
//! deck action.
//!
//! π₁ is presented by the edge-path group of the order complex and decided
//! by coset enumeration. Non-T0 spaces are handled through their
//! Kolmogorov quotient, which is homotopy equivalent.

mod coset;
mod cover;
mod deck;
mod group;
mod presentation;

use thiserror::Error;

use crate::finspace::{order_complex, FinSpace, FinSpaceError};

pub use coset::{enumerate_cosets, CosetTable};
pub use cover::{universal_cover, UniversalCover};
pub use deck::{deck_action_report, DeckActionReport};
pub use group::{todd_coxeter, FiniteGroupTable};
pub use presentation::{
    free_reduce, invert_word, presentation_from_complex, EdgePathPresentation, Letter, Presentation,
    Word,
};

pub const DEFAULT_MAX_COSETS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("coset enumeration exceeded {0} cosets")]
    Exceeded(usize),
    #[error("relator uses undeclared generator {0}")]
    UndeclaredGenerator(usize),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("complex is disconnected: `{0}` is not reachable from the base")]
    Disconnected(String),
    #[error("space is not path connected")]
    NotPathConnected,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("lifted order is inconsistent: {0}")]
    LiftInconsistency(String),
    #[error(transparent)]
    FinSpace(#[from] FinSpaceError),
}

/// The path component of `base`, its Kolmogorov quotient, and the
/// edge-path presentation of that quotient's order complex.
#[derive(Debug, Clone)]
pub(crate) struct ComponentModel {
    /// Vertex of the order complex for each point of the original space
    /// (`usize::MAX` outside the component).
    pub vertex_of: Vec<usize>,
    pub presentation: EdgePathPresentation,
}

pub(crate) fn component_model(x: &FinSpace, base: &str) -> Result<ComponentModel, Pi1Error> {
    let b = x.index_of(base).ok_or_else(|| FinSpaceError::UnknownPoint(base.to_string()))?;
    let members = x
        .path_components()
        .into_iter()
        .find(|c| c.contains(&b))
        .expect("every point lies in a component");
    let sub = x.subspace(&members);
    let classes = sub.kolmogorov_classes();
    // each class is named after its least member so names stay unique
    let mut class_of = vec![0usize; sub.len()];
    for (i, class) in classes.iter().enumerate() {
        for &p in class {
            class_of[p] = i;
        }
    }
    let names: Vec<String> = classes.iter().map(|c| sub.name(c[0]).to_string()).collect();
    let up = classes
        .iter()
        .map(|c| {
            let mut s = fixedbitset::FixedBitSet::with_capacity(classes.len());
            for q in sub.up(c[0]).ones() {
                s.insert(class_of[q]);
            }
            s
        })
        .collect();
    let t0 = FinSpace::from_up_sets(names, up)?;
    let k = order_complex(&t0)?;
    let base_class = class_of[members.iter().position(|&m| m == b).expect("base in component")];
    let presentation = presentation_from_complex(&k, t0.name(base_class))?;
    let mut vertex_of = vec![usize::MAX; x.len()];
    for (i, &m) in members.iter().enumerate() {
        let name = t0.name(class_of[i]);
        vertex_of[m] = k.vertices().iter().position(|v| v == name).expect("vertex of class");
    }
    Ok(ComponentModel { vertex_of, presentation })
}

/// `π₁(X, base)` when finite. The group presented is that of the path
/// component of `base`.
pub fn fundamental_group(x: &FinSpace, base: &str, max_cosets: usize) -> Result<FiniteGroupTable, Pi1Error> {
    let model = component_model(x, base)?;
    todd_coxeter(model.presentation.presentation(), max_cosets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::{face_poset, SimplicialComplex};

    fn rp2() -> FinSpace {
        let facets: Vec<Vec<&str>> = [
            "123", "134", "145", "156", "162", "235", "346", "452", "563", "624",
        ]
        .iter()
        .map(|f| f.split("").filter(|s| !s.is_empty()).collect())
        .collect();
        face_poset(&SimplicialComplex::from_facets(&facets).unwrap())
    }

    /// Distinct normal forms of all words of length at most `len` in
    /// `a, b` under the rewriting `aa -> 1`, `bb -> 1`, `ba -> ab`, which
    /// follow from `a² = b² = abab = 1` (inverses coincide with generators).
    fn klein_oracle(len: usize) -> usize {
        let mut words = vec![String::new()];
        let mut forms = std::collections::BTreeSet::new();
        for _ in 0..=len {
            let mut next = Vec::new();
            for w in &words {
                let mut v = w.clone();
                loop {
                    let r = v.replace("aa", "").replace("bb", "").replace("ba", "ab");
                    if r == v {
                        break;
                    }
                    v = r;
                }
                forms.insert(v);
                next.push(format!("{w}a"));
                next.push(format!("{w}b"));
            }
            words = next;
        }
        forms.len()
    }

    #[test]
    fn cyclic_two() {
        let g = todd_coxeter(&Presentation::parse(1, &["aa"]).unwrap(), 100).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn free_cyclic_exceeds() {
        let p = Presentation::parse(1, &[]).unwrap();
        assert_eq!(todd_coxeter(&p, 100), Err(Pi1Error::Exceeded(100)));
    }

    #[test]
    fn klein_four() {
        let g = todd_coxeter(&Presentation::parse(2, &["aa", "bb", "abab"]).unwrap(), 100).unwrap();
        assert_eq!(g.order(), klein_oracle(4));
        assert!(g.is_abelian());
    }

    #[test]
    fn symmetric_three() {
        let g = todd_coxeter(&Presentation::parse(2, &["aa", "bbb", "abab"]).unwrap(), 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.abelianization_order(), 2);
    }

    #[test]
    fn quaternion_needs_coincidences() {
        let g = todd_coxeter(&Presentation::parse(2, &["aaaa", "aaBB", "Baba"]).unwrap(), 1000).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.abelianization_order(), 4);
    }

    #[test]
    fn undeclared_generator() {
        assert_eq!(Presentation::parse(1, &["ab"]), Err(Pi1Error::UndeclaredGenerator(1)));
    }

    #[test]
    fn triangle_presentations() {
        let boundary = SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        let p = presentation_from_complex(&boundary, "a").unwrap();
        assert_eq!((p.presentation().generators, p.relators().len()), (1, 0));
        let full = SimplicialComplex::from_facets(&[vec!["a", "b", "c"]]).unwrap();
        let p = presentation_from_complex(&full, "a").unwrap();
        assert_eq!((p.presentation().generators, p.relators().len()), (1, 1));
        assert_eq!(todd_coxeter(p.presentation(), 10).unwrap().order(), 1);
    }

    #[test]
    fn rp2_presentation_counts() {
        let k = SimplicialComplex::from_facets(
            &["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"]
                .iter()
                .map(|f| f.chars().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let p = presentation_from_complex(&k, "1").unwrap();
        assert_eq!(p.presentation().generators, 10);
        assert_eq!(p.relators().len(), 10);
        assert_eq!(todd_coxeter(p.presentation(), 100).unwrap().order(), 2);
    }

    #[test]
    fn disconnected_complex() {
        let k = SimplicialComplex::from_facets(&[vec!["a"], vec!["b"]]).unwrap();
        assert_eq!(presentation_from_complex(&k, "a").unwrap_err(), Pi1Error::Disconnected("b".into()));
    }

    #[test]
    fn fundamental_groups_of_models() {
        let chain = FinSpace::from_relations(&["a", "b"], &[("a", "b")], true).unwrap();
        assert_eq!(fundamental_group(&chain, "a", 100).unwrap().order(), 1);
        let circle = FinSpace::from_relations::<&str>(
            &[],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
            true,
        )
        .unwrap();
        assert_eq!(fundamental_group(&circle, "a", 10_000), Err(Pi1Error::Exceeded(10_000)));
        assert_eq!(fundamental_group(&rp2(), "1", 10_000).unwrap().order(), 2);
    }

    #[test]
    fn non_t0_space_uses_kolmogorov_quotient() {
        // a and a' indistinguishable, glued into a pseudocircle shape
        let x = FinSpace::from_relations::<&str>(
            &[],
            &[("a", "x"), ("x", "a"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
            false,
        )
        .unwrap();
        assert!(!x.is_t0());
        assert_eq!(fundamental_group(&x, "x", 1000), Err(Pi1Error::Exceeded(1000)));
    }
}
