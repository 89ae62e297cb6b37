use std::collections::VecDeque;

use super::coset::enumerate_cosets;
use super::presentation::{Letter, Presentation, Word};
use super::Pi1Error;

/// A finite group by its full multiplication table.
///
/// Elements are `0..order`; element 0 is the identity. Group axioms are
/// verified once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generator_images: Vec<usize>,
    words: Vec<Word>,
}

impl FiniteGroupTable {
    /// Validates `mult` (identity must be element 0) and builds the table.
    pub fn from_table(mult: Vec<Vec<usize>>, generator_images: Vec<usize>) -> Result<Self, Pi1Error> {
        let n = mult.len();
        if n == 0 || mult.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Pi1Error::NotAGroup("table is not square over 0..n".into()));
        }
        if (0..n).any(|a| mult[0][a] != a || mult[a][0] != a) {
            return Err(Pi1Error::NotAGroup("element 0 is not the identity".into()));
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mult[a][b] == 0) {
                Some(b) if mult[b][a] == 0 => inverse[a] = b,
                _ => return Err(Pi1Error::NotAGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a][b];
                for c in 0..n {
                    if mult[ab][c] != mult[a][mult[b][c]] {
                        return Err(Pi1Error::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        if generator_images.iter().any(|&g| g >= n) {
            return Err(Pi1Error::NotAGroup("generator image out of range".into()));
        }
        let words = shortest_words(&mult, &generator_images, &inverse);
        Ok(FiniteGroupTable { mult, inverse, generator_images, words })
    }

    /// Cyclic group of order `n` with generator 1.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(mult, vec![1 % n]).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Builds the group from a complete coset table of the trivial
    /// subgroup. Element `i` is coset `i`; products are computed by tracing
    /// a representative word of the right factor from the left factor.
    pub fn from_coset_table(generators: usize, table: &[Vec<usize>]) -> Result<Self, Pi1Error> {
        let n = table.len();
        let columns = 2 * generators;
        // BFS words from coset 0
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..columns {
                let d = table[c][x];
                if words[d].is_none() {
                    let mut w = words[c].clone().expect("visited");
                    w.push(Letter::from_column(x));
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        let words: Vec<Word> = words
            .into_iter()
            .map(|w| w.ok_or_else(|| Pi1Error::NotAGroup("coset table is not connected".into())))
            .collect::<Result<_, _>>()?;
        let trace = |c: usize, w: &[Letter]| w.iter().fold(c, |cur, l| table[cur][l.column()]);
        let mult: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| trace(a, &words[b])).collect()).collect();
        let generator_images = (0..generators).map(|g| table[0][2 * g]).collect();
        Self::from_table(mult, generator_images)
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.generator_images
    }

    pub fn letter(&self, l: Letter) -> usize {
        let g = self.generator_images[l.generator];
        if l.inverse {
            self.inverse[g]
        } else {
            g
        }
    }

    /// Value of a word, read left to right.
    pub fn eval(&self, w: &[Letter]) -> usize {
        w.iter().fold(0, |acc, &l| self.mul(acc, self.letter(l)))
    }

    /// A shortest word in the generators representing `a`, when the
    /// generator images generate the group.
    pub fn word(&self, a: usize) -> Option<&Word> {
        self.words.get(a).filter(|w| self.eval(w) == a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mult[a][b] == self.mult[b][a]))
    }

    /// Order of the subgroup generated by `elements`.
    pub fn subgroup_order(&self, elements: &[usize]) -> usize {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut list = vec![0usize];
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            i += 1;
            for &g in elements {
                let b = self.mult[a][g];
                if !member[b] {
                    member[b] = true;
                    list.push(b);
                }
            }
        }
        list.len()
    }

    /// `|G / [G, G]|`.
    pub fn abelianization_order(&self) -> usize {
        let n = self.order();
        let mut commutators = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                commutators.push(c);
            }
        }
        commutators.sort_unstable();
        commutators.dedup();
        n / self.subgroup_order(&commutators)
    }

    /// Every relator of `p` evaluates to the identity.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        p.generators == self.generator_images.len() && p.relators.iter().all(|r| self.eval(r) == 0)
    }
}

fn shortest_words(mult: &[Vec<usize>], gens: &[usize], inverse: &[usize]) -> Vec<Word> {
    let n = mult.len();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (g, &img) in gens.iter().enumerate() {
            for (inv, step) in [(false, img), (true, inverse[img])] {
                let b = mult[a][step];
                if words[b].is_none() {
                    let mut w = words[a].clone().expect("visited");
                    w.push(Letter::new(g, inv));
                    words[b] = Some(w);
                    queue.push_back(b);
                }
            }
        }
    }
    words.into_iter().map(Option::unwrap_or_default).collect()
}

/// Todd–Coxeter enumeration followed by table construction. `Exceeded`
/// means the enumeration needed more than `max_cosets` cosets: the group
/// is infinite or the cap is too small.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<FiniteGroupTable, Pi1Error> {
    let table = enumerate_cosets(p, max_cosets)?;
    let group = FiniteGroupTable::from_coset_table(p.generators, &table)?;
    debug_assert!(group.satisfies(p));
    Ok(group)
}
