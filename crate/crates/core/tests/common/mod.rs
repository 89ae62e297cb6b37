#![allow(dead_code)]

use std::sync::Arc;

use fundgpd::finspace::{face_poset, FinSpace, SimplicialComplex};

pub const RP2_FACETS: [&str; 10] = ["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"];

pub fn complex(facets: &[&str]) -> SimplicialComplex {
    let f: Vec<Vec<String>> = facets.iter().map(|s| s.chars().map(|c| c.to_string()).collect()).collect();
    SimplicialComplex::from_facets(&f).unwrap()
}

pub fn rp2() -> Arc<FinSpace> {
    Arc::new(face_poset(&complex(&RP2_FACETS)))
}

pub fn poset(pairs: &[(&str, &str)]) -> Arc<FinSpace> {
    Arc::new(FinSpace::from_relations::<&str>(&[], pairs, true).unwrap())
}

pub fn point() -> Arc<FinSpace> {
    Arc::new(FinSpace::discrete(&["a"]).unwrap())
}

pub fn chain() -> Arc<FinSpace> {
    poset(&[("a", "b")])
}

pub fn pseudocircle() -> Arc<FinSpace> {
    poset(&[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
}

/// Minimal finite model of S²: two points below two points below two points.
pub fn s2() -> Arc<FinSpace> {
    poset(&[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "e"), ("c", "f"), ("d", "e"), ("d", "f")])
}

/// Poset on `p0..p{n-1}` with `pi < pj` for each flagged pair `i < j`.
pub fn dag(n: usize, edges: &[bool]) -> Arc<FinSpace> {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut pairs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if edges.get(k).copied().unwrap_or(false) {
                pairs.push((names[i].as_str(), names[j].as_str()));
            }
            k += 1;
        }
    }
    let points: Vec<&str> = names.iter().map(String::as_str).collect();
    Arc::new(FinSpace::from_relations(&points, &pairs, true).unwrap())
}

/// A random order-preserving map, found by backtracking over the points
/// of `x` in a linear extension with candidates tried in random order.
/// Constant maps guarantee success.
pub fn random_monotone(x: &FinSpace, y: &FinSpace, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by_key(|&p| std::cmp::Reverse(x.up(p).count_ones(..)));
    let choices: Vec<Vec<usize>> = order
        .iter()
        .map(|_| {
            let mut c: Vec<usize> = (0..y.len()).collect();
            c.shuffle(&mut rng);
            c
        })
        .collect();
    fn go(x: &FinSpace, y: &FinSpace, order: &[usize], choices: &[Vec<usize>], i: usize, f: &mut Vec<usize>) -> bool {
        if i == order.len() {
            return true;
        }
        let p = order[i];
        for &v in &choices[i] {
            // points already assigned are those earlier in the order
            let ok = order[..i].iter().all(|&q| (!x.leq(p, q) || y.leq(v, f[q])) && (!x.leq(q, p) || y.leq(f[q], v)));
            if ok {
                f[p] = v;
                if go(x, y, order, choices, i + 1, f) {
                    return true;
                }
            }
        }
        false
    }
    let mut f = vec![usize::MAX; x.len()];
    assert!(go(x, y, &order, &choices, 0, &mut f));
    f
}
