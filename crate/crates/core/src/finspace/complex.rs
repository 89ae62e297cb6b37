use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use serde::Deserialize;

use super::space::FinSpace;
use super::FinSpaceError;

/// An abstract simplicial complex given by its facets.
///
/// Vertices are sorted lexicographically; each facet is a sorted list of
/// vertex indices. Faces contained in other facets are dropped on
/// construction, so no facet contains another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct ComplexJson {
    facets: Vec<Vec<String>>,
}

impl SimplicialComplex {
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self, FinSpaceError> {
        let mut names = BTreeSet::new();
        for f in facets {
            if f.is_empty() {
                return Err(FinSpaceError::EmptyFacet);
            }
            for v in f {
                let v = v.as_ref();
                if v.is_empty() || v.chars().any(char::is_whitespace) {
                    return Err(FinSpaceError::BadIdentifier(v.to_string()));
                }
                names.insert(v.to_string());
            }
        }
        let vertices: Vec<String> = names.into_iter().collect();
        let index: BTreeMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut sets: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| {
                let s: BTreeSet<usize> = f.iter().map(|v| index[v.as_ref()]).collect();
                s.into_iter().collect()
            })
            .collect();
        sets.sort();
        sets.dedup();
        let maximal: Vec<Vec<usize>> = sets
            .iter()
            .filter(|f| !sets.iter().any(|g| g.len() > f.len() && is_sub(f, g)))
            .cloned()
            .collect();
        Ok(SimplicialComplex { vertices, facets: maximal })
    }

    /// Parses `{"facets": [["a","b","c"], ...]}`.
    pub fn from_json(text: &str) -> Result<Self, FinSpaceError> {
        let parsed: ComplexJson =
            serde_json::from_str(text).map_err(|e| FinSpaceError::Parse(e.to_string()))?;
        Self::from_facets(&parsed.facets)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_names(&self) -> Vec<Vec<&str>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v].as_str()).collect())
            .collect()
    }

    /// All faces with exactly `size` vertices, sorted.
    pub fn faces_of_size(&self, size: usize) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= size {
                subsets_of_size(f, size, &mut out);
            }
        }
        out.into_iter().collect()
    }

    /// Every nonempty face, sorted by size then lexicographically.
    pub fn all_faces(&self) -> Vec<Vec<usize>> {
        let max = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        (1..=max).flat_map(|k| self.faces_of_size(k)).collect()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }
}

fn is_sub(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn subsets_of_size(set: &[usize], size: usize, out: &mut BTreeSet<Vec<usize>>) {
    fn go(set: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if cur.len() == size {
            out.insert(cur.clone());
            return;
        }
        for i in start..set.len() {
            if set.len() - i < size - cur.len() {
                break;
            }
            cur.push(set[i]);
            go(set, size, i + 1, cur, out);
            cur.pop();
        }
    }
    go(set, size, 0, &mut Vec::with_capacity(size), out);
}

/// Face poset of `k`: one point per nonempty face, named by its vertices
/// joined with commas. `σ <= τ` iff `σ ⊇ τ`, so the minimal open of a face
/// is the set of its own faces and vertices are open points.
pub fn face_poset(k: &SimplicialComplex) -> FinSpace {
    let faces = k.all_faces();
    let mut named: Vec<(String, Vec<usize>)> = faces
        .into_iter()
        .map(|f| {
            let name = f.iter().map(|&v| k.vertices[v].as_str()).collect::<Vec<_>>().join(",");
            (name, f)
        })
        .collect();
    named.sort_by(|a, b| a.0.cmp(&b.0));
    let n = named.len();
    let up = named
        .iter()
        .map(|(_, sigma)| {
            let mut row = FixedBitSet::with_capacity(n);
            for (j, (_, tau)) in named.iter().enumerate() {
                if is_sub(tau, sigma) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let names = named.into_iter().map(|(n, _)| n).collect();
    FinSpace::assemble(names, up)
}

/// Order complex: vertices are the points, simplices the chains, facets
/// the maximal chains.
pub fn order_complex(x: &FinSpace) -> Result<SimplicialComplex, FinSpaceError> {
    if let Some((a, b)) = x.first_indistinguishable_pair() {
        return Err(FinSpaceError::NotT0(x.name(a).to_string(), x.name(b).to_string()));
    }
    let n = x.len();
    // covering relations
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            x.up(p)
                .ones()
                .filter(|&q| q != p && !x.up(p).ones().any(|r| r != p && r != q && x.leq(r, q)))
                .collect()
        })
        .collect();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    fn extend(x: &FinSpace, succ: &[Vec<usize>], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *chain.last().expect("chain is nonempty");
        if succ[last].is_empty() {
            out.push(chain.clone());
            return;
        }
        for &q in &succ[last] {
            chain.push(q);
            extend(x, succ, chain, out);
            chain.pop();
        }
    }
    for p in 0..n {
        // maximal chains start at minimal points
        if (0..n).any(|q| q != p && x.leq(q, p)) {
            continue;
        }
        extend(x, &succ, &mut vec![p], &mut chains);
    }
    let facets: Vec<Vec<&str>> =
        chains.iter().map(|c| c.iter().map(|&p| x.name(p)).collect()).collect();
    let complex = SimplicialComplex::from_facets(&facets)?;
    debug_assert_eq!(complex.vertices.len(), n);
    Ok(complex)
}
