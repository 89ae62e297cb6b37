use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::finspace::SimplicialComplex;

use super::Pi1Error;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// Column of a coset table: `2g` for the generator, `2g + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }

    pub fn from_column(column: usize) -> Self {
        Letter { generator: column / 2, inverse: column % 2 == 1 }
    }
}

pub type Word = Vec<Letter>;

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A finite group presentation `⟨x_0, ..., x_{n-1} | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self, Pi1Error> {
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.generator >= generators) {
                return Err(Pi1Error::UndeclaredGenerator(l.generator));
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Parses relators written over single lowercase letters, with an
    /// uppercase letter for the inverse: `parse(2, &["aa", "bb", "abab"])`.
    pub fn parse(generators: usize, relators: &[&str]) -> Result<Self, Pi1Error> {
        let words = relators
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| {
                        let lower = c.to_ascii_lowercase();
                        if !lower.is_ascii_lowercase() {
                            return Err(Pi1Error::UndeclaredGenerator(usize::MAX));
                        }
                        Ok(Letter::new((lower as u8 - b'a') as usize, c.is_ascii_uppercase()))
                    })
                    .collect::<Result<Word, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(generators, words)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} generators | ", self.generators)?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            for l in r {
                write!(f, "x{}{}", l.generator, if l.inverse { "'" } else { "" })?;
            }
        }
        write!(f, ">")
    }
}

/// Edge-path presentation of `π₁(|K|, base)` from the 2-skeleton.
///
/// Edges `{u, v}` with `u < v` are oriented `u -> v`. A BFS spanning tree
/// from `base` contributes trivial letters; every other edge is a generator;
/// each triangle `u < v < w` contributes the relator `e_uv e_vw e_uw⁻¹`.
#[derive(Debug, Clone)]
pub struct EdgePathPresentation {
    vertices: Vec<String>,
    base: usize,
    parent: Vec<Option<usize>>,
    tree_edges: Vec<(usize, usize)>,
    generator_edges: Vec<(usize, usize)>,
    edge_generator: HashMap<(usize, usize), usize>,
    presentation: Presentation,
}

impl EdgePathPresentation {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn generator_edges(&self) -> &[(usize, usize)] {
        &self.generator_edges
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn relators(&self) -> &[Word] {
        &self.presentation.relators
    }

    /// The letter carried by traversing edge `u -> v`: `None` for tree edges.
    /// Panics if `{u, v}` is not an edge.
    pub fn edge_letter(&self, u: usize, v: usize) -> Option<Letter> {
        let (a, b) = (u.min(v), u.max(v));
        if let Some(&g) = self.edge_generator.get(&(a, b)) {
            return Some(Letter::new(g, u > v));
        }
        assert!(
            self.parent[a] == Some(b) || self.parent[b] == Some(a),
            "{{{u}, {v}}} is not an edge"
        );
        None
    }

    /// Vertices of the tree path from the base to `v`.
    pub fn tree_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Word of an edge path given by its vertex sequence. Repeated
    /// consecutive vertices are skipped.
    pub fn word_of_path(&self, vertices: &[usize]) -> Word {
        let mut w = Vec::new();
        for pair in vertices.windows(2) {
            if pair[0] != pair[1] {
                if let Some(l) = self.edge_letter(pair[0], pair[1]) {
                    w.push(l);
                }
            }
        }
        w
    }

    /// The closed edge path realizing a generator:
    /// tree path to `u`, edge `u -> v`, tree path back from `v`.
    pub fn generator_loop(&self, g: usize) -> Vec<usize> {
        let (u, v) = self.generator_edges[g];
        let mut path = self.tree_path(u);
        let mut back = self.tree_path(v);
        back.reverse();
        path.extend(back);
        path
    }
}

/// Builds the edge-path presentation of a connected complex at `base`.
pub fn presentation_from_complex(
    k: &SimplicialComplex,
    base: &str,
) -> Result<EdgePathPresentation, Pi1Error> {
    let vertices = k.vertices().to_vec();
    let base_index = vertices
        .iter()
        .position(|v| v == base)
        .ok_or_else(|| Pi1Error::UnknownVertex(base.to_string()))?;
    let n = vertices.len();
    let edges = k.faces_of_size(2);
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &edges {
        adjacency[e[0]].push(e[1]);
        adjacency[e[1]].push(e[0]);
    }
    for a in &mut adjacency {
        a.sort_unstable();
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([base_index]);
    seen[base_index] = true;
    let mut tree_edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                tree_edges.push((u.min(v), u.max(v)));
                queue.push_back(v);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Pi1Error::Disconnected(vertices[v].clone()));
    }
    tree_edges.sort_unstable();
    let mut generator_edges = Vec::new();
    let mut edge_generator = HashMap::new();
    for e in &edges {
        let (u, v) = (e[0], e[1]);
        if parent[u] == Some(v) || parent[v] == Some(u) {
            continue;
        }
        edge_generator.insert((u, v), generator_edges.len());
        generator_edges.push((u, v));
    }
    let mut out = EdgePathPresentation {
        vertices,
        base: base_index,
        parent,
        tree_edges,
        generator_edges,
        edge_generator,
        presentation: Presentation { generators: 0, relators: Vec::new() },
    };
    let relators = k
        .faces_of_size(3)
        .iter()
        .map(|t| {
            let (u, v, w) = (t[0], t[1], t[2]);
            let word: Word = [out.edge_letter(u, v), out.edge_letter(v, w), out.edge_letter(w, u)]
                .into_iter()
                .flatten()
                .collect();
            free_reduce(&word)
        })
        .collect();
    out.presentation = Presentation { generators: out.generator_edges.len(), relators };
    Ok(out)
}
