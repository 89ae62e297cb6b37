//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! Strategy: HLT. Cosets are processed in definition order; for each live
//! coset every relator is scanned and filled, then any undefined entries of
//! its row are defined. Coincidences are merged immediately with a
//! union-find on coset numbers, always keeping the smaller number.

use super::presentation::{Letter, Presentation, Word};
use super::Pi1Error;

const UNDEF: u32 = u32::MAX;

/// Coset table workspace.
#[derive(Debug, Clone)]
pub struct CosetTable {
    columns: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    defined: usize,
    max_cosets: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    pub fn new(generators: usize, max_cosets: usize) -> Self {
        let columns = 2 * generators;
        let mut t = CosetTable {
            columns,
            table: Vec::new(),
            parent: Vec::new(),
            defined: 0,
            max_cosets,
            queue: Vec::new(),
        };
        t.push_row();
        t
    }

    fn push_row(&mut self) {
        self.table.extend(std::iter::repeat(UNDEF).take(self.columns));
        self.parent.push(self.defined as u32);
        self.defined += 1;
    }

    /// Number of cosets ever defined, live or dead.
    pub fn defined(&self) -> usize {
        self.defined
    }

    pub fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    pub fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.defined).filter(move |&c| self.is_live(c))
    }

    pub fn entry(&self, c: usize, column: usize) -> Option<usize> {
        let v = self.table[c * self.columns + column];
        (v != UNDEF).then_some(v as usize)
    }

    fn set(&mut self, c: usize, column: usize, v: usize) {
        self.table[c * self.columns + column] = v as u32;
    }

    fn clear(&mut self, c: usize, column: usize) {
        self.table[c * self.columns + column] = UNDEF;
    }

    fn define(&mut self, c: usize, column: usize) -> Result<(), Pi1Error> {
        if self.defined >= self.max_cosets {
            return Err(Pi1Error::Exceeded(self.max_cosets));
        }
        let d = self.defined;
        self.push_row();
        self.set(c, column, d);
        self.set(d, column ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = c;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, drop) = (ra.min(rb), ra.max(rb));
            self.parent[drop] = keep as u32;
            self.queue.push(drop as u32);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i] as usize;
            i += 1;
            for x in 0..self.columns {
                if let Some(delta) = self.entry(gamma, x) {
                    self.clear(delta, x ^ 1);
                    let mu = self.rep(gamma);
                    let nu = self.rep(delta);
                    if let Some(t) = self.entry(mu, x) {
                        self.merge(nu, t);
                    } else if let Some(t) = self.entry(nu, x ^ 1) {
                        self.merge(mu, t);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: usize, word: &[usize]) -> Result<(), Pi1Error> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                match self.entry(f, word[i]) {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i as isize {
                match self.entry(b, word[j as usize] ^ 1) {
                    Some(next) => {
                        b = next;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    /// Trace `word` from coset `c`; `None` if an entry is missing.
    pub fn trace(&self, c: usize, word: &[Letter]) -> Option<usize> {
        word.iter().try_fold(c, |cur, l| self.entry(cur, l.column()))
    }

    fn complete(&self) -> bool {
        self.live().all(|c| (0..self.columns).all(|x| self.entry(c, x).is_some()))
    }
}

/// Enumerates the cosets of the trivial subgroup. On success the returned
/// table is compacted: live cosets renumbered `0..n` in definition order,
/// coset 0 being the subgroup itself.
pub fn enumerate_cosets(p: &Presentation, max_cosets: usize) -> Result<Vec<Vec<usize>>, Pi1Error> {
    if max_cosets == 0 {
        return Err(Pi1Error::Exceeded(0));
    }
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r: &Word| r.iter().map(|l| l.column()).collect())
        .collect();
    let mut t = CosetTable::new(p.generators, max_cosets);
    loop {
        let mut alpha = 0;
        while alpha < t.defined() {
            if t.is_live(alpha) {
                for r in &relators {
                    t.scan_and_fill(alpha, r)?;
                    if !t.is_live(alpha) {
                        break;
                    }
                }
            }
            if t.is_live(alpha) {
                for x in 0..t.columns {
                    if t.entry(alpha, x).is_none() {
                        t.define(alpha, x)?;
                    }
                }
            }
            alpha += 1;
        }
        let consistent = t.complete()
            && t.live().all(|c| {
                p.relators.iter().all(|r| t.trace(c, r) == Some(c))
            });
        if consistent {
            break;
        }
    }
    let live: Vec<usize> = t.live().collect();
    let mut renumber = vec![usize::MAX; t.defined()];
    for (i, &c) in live.iter().enumerate() {
        renumber[c] = i;
    }
    Ok(live
        .iter()
        .map(|&c| (0..t.columns).map(|x| renumber[t.entry(c, x).expect("complete")]).collect())
        .collect())
}
