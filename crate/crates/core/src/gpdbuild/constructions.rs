use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::finspace::{product_space, FinSpace};
use crate::pi1core::FiniteGroupTable;

use super::{FinTopGroupoid, GpdError};

/// The groupoid of the trivial equivalence relation on `X`: arrows are
/// pairs `(x, y)`, stored at `x * |X| + y`, with the product topology.
pub fn trivial_pair_groupoid(x: &FinSpace) -> FinTopGroupoid {
    let m = x.len();
    let topology = Arc::new(product_space(x, x));
    let names = topology.names().to_vec();
    let is_unit: Vec<bool> = (0..m * m).map(|a| a / m == a % m).collect();
    let range = (0..m * m).map(|a| (a / m) * m + a / m).collect();
    let source = (0..m * m).map(|a| (a % m) * m + a % m).collect();
    let inverse = (0..m * m).map(|a| (a % m) * m + a / m).collect();
    FinTopGroupoid::assemble(
        names,
        &is_unit,
        range,
        source,
        inverse,
        |g, h| (g / m) * m + h % m,
        topology,
        "products of minimal opens of X",
    )
    .expect("pair groupoid is well formed")
}

/// Transformation groupoid `X ⋊ H` of a right action given by
/// `action[x][g] = x·g`. Arrows `(x, g)` are stored at `x * |H| + g` with
/// `r(x, g) = x`, `s(x, g) = x·g` and `(x, g)(x·g, t) = (x, gt)`. The
/// topology is the product with discrete `H`.
pub fn transformation_groupoid(
    x: &FinSpace,
    h: &FiniteGroupTable,
    action: &[Vec<usize>],
) -> Result<FinTopGroupoid, GpdError> {
    let m = x.len();
    let n = h.order();
    if action.len() != m || action.iter().any(|row| row.len() != n || row.iter().any(|&y| y >= m)) {
        return Err(GpdError::NotAnAction("action table has the wrong shape".into()));
    }
    for p in 0..m {
        if action[p][0] != p {
            return Err(GpdError::NotAnAction(format!("identity moves {}", x.name(p))));
        }
        for g in 0..n {
            for t in 0..n {
                if action[action[p][g]][t] != action[p][h.mul(g, t)] {
                    return Err(GpdError::NotAnAction(format!(
                        "compatibility fails at ({}, {g}, {t})",
                        x.name(p)
                    )));
                }
            }
        }
    }
    for g in 0..n {
        let map: Vec<usize> = (0..m).map(|p| action[p][g]).collect();
        if !x.is_homeomorphism(x, &map) {
            return Err(GpdError::NotAnAction(format!("element {g} does not act by a homeomorphism")));
        }
    }
    let names: Vec<String> = (0..m * n).map(|a| format!("({},{})", x.name(a / n), a % n)).collect();
    let up = (0..m * n)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(m * n);
            for q in x.up(a / n).ones() {
                row.insert(q * n + a % n);
            }
            row
        })
        .collect();
    let topology = Arc::new(FinSpace::from_up_sets(names.clone(), up)?);
    let is_unit: Vec<bool> = (0..m * n).map(|a| a % n == 0).collect();
    let range = (0..m * n).map(|a| (a / n) * n).collect();
    let source = (0..m * n).map(|a| action[a / n][a % n] * n).collect();
    let inverse = (0..m * n).map(|a| action[a / n][a % n] * n + h.inv(a % n)).collect();
    FinTopGroupoid::assemble(
        names,
        &is_unit,
        range,
        source,
        inverse,
        |g, t| (g / n) * n + h.mul(g % n, t % n),
        topology,
        "products of minimal opens of X with points of H",
    )
}
