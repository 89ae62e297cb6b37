use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::finspace::FinSpace;

use super::{FinTopGroupoid, GpdError};

pub const SCHEMA_VERSION: u32 = 1;

/// Serialized form of a finite topological groupoid. Arrows are referred
/// to by position; `topology[a]` lists the minimal open of arrow `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidJson {
    pub schema: u32,
    pub arrows: Vec<String>,
    pub units: Vec<bool>,
    pub range: Vec<usize>,
    pub source: Vec<usize>,
    pub inverse: Vec<usize>,
    pub mult: Vec<[usize; 3]>,
    pub topology: Vec<Vec<usize>>,
}

impl GroupoidJson {
    pub fn from_groupoid(g: &FinTopGroupoid) -> Self {
        GroupoidJson {
            schema: SCHEMA_VERSION,
            arrows: g.names().to_vec(),
            units: (0..g.len()).map(|a| g.is_unit(a)).collect(),
            range: (0..g.len()).map(|a| g.range(a)).collect(),
            source: (0..g.len()).map(|a| g.source(a)).collect(),
            inverse: (0..g.len()).map(|a| g.inverse(a)).collect(),
            mult: g.composable_pairs().map(|(a, b, c)| [a, b, c]).collect(),
            topology: (0..g.len()).map(|a| g.topology().up(a).ones().collect()).collect(),
        }
    }

    pub fn into_groupoid(self) -> Result<FinTopGroupoid, GpdError> {
        let n = self.arrows.len();
        let schema_err = |m: String| GpdError::Schema(m);
        if self.schema != SCHEMA_VERSION {
            return Err(schema_err(format!("unsupported schema version {}", self.schema)));
        }
        if self.topology.len() != n {
            return Err(schema_err(format!("topology has {} rows for {n} arrows", self.topology.len())));
        }
        let mut up = Vec::with_capacity(n);
        for (a, row) in self.topology.iter().enumerate() {
            let mut set = FixedBitSet::with_capacity(n);
            for &b in row {
                if b >= n {
                    return Err(schema_err(format!("topology row {a} mentions arrow {b}")));
                }
                set.insert(b);
            }
            up.push(set);
        }
        let topology =
            Arc::new(FinSpace::from_up_sets(self.arrows.clone(), up).map_err(|e| schema_err(e.to_string()))?);
        let mut table: HashMap<(usize, usize), usize> = HashMap::with_capacity(self.mult.len());
        for &[a, b, c] in &self.mult {
            if table.insert((a, b), c).is_some() {
                return Err(schema_err(format!("product of {a} and {b} given twice")));
            }
        }
        let mut missing = None;
        let g = FinTopGroupoid::assemble(
            self.arrows,
            &self.units,
            self.range,
            self.source,
            self.inverse,
            |a, b| match table.get(&(a, b)) {
                Some(&c) => c,
                None => {
                    missing.get_or_insert((a, b));
                    0
                }
            },
            topology,
            "minimal opens as given",
        )
        .map_err(|e| schema_err(e.to_string()))?;
        if let Some((a, b)) = missing {
            return Err(schema_err(format!("missing product of composable pair ({a}, {b})")));
        }
        if g.composable_count() != table.len() {
            return Err(schema_err("products given for non-composable pairs".into()));
        }
        Ok(g)
    }
}

pub fn groupoid_to_json(g: &FinTopGroupoid) -> String {
    serde_json::to_string_pretty(&GroupoidJson::from_groupoid(g)).expect("serializable")
}

pub fn groupoid_from_json(text: &str) -> Result<FinTopGroupoid, GpdError> {
    let parsed: GroupoidJson = serde_json::from_str(text).map_err(|e| GpdError::Schema(e.to_string()))?;
    parsed.into_groupoid()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    schema: u32,
    map: BTreeMap<String, String>,
}

/// Reads `{"schema": 1, "map": {source arrow: target arrow}}`.
pub fn morphism_from_json(text: &str, g: &FinTopGroupoid, h: &FinTopGroupoid) -> Result<Vec<usize>, GpdError> {
    let parsed: MapJson = serde_json::from_str(text).map_err(|e| GpdError::Schema(e.to_string()))?;
    if parsed.schema != SCHEMA_VERSION {
        return Err(GpdError::Schema(format!("unsupported schema version {}", parsed.schema)));
    }
    let mut out = vec![usize::MAX; g.len()];
    for (a, b) in &parsed.map {
        let ia = g.index_of(a).ok_or_else(|| GpdError::Schema(format!("unknown source arrow `{a}`")))?;
        let ib = h.index_of(b).ok_or_else(|| GpdError::Schema(format!("unknown target arrow `{b}`")))?;
        out[ia] = ib;
    }
    if let Some(a) = out.iter().position(|&b| b == usize::MAX) {
        return Err(GpdError::Schema(format!("no image for arrow `{}`", g.name(a))));
    }
    Ok(out)
}

pub fn morphism_to_json(f: &[usize], g: &FinTopGroupoid, h: &FinTopGroupoid) -> String {
    let map = f.iter().enumerate().map(|(a, &b)| (g.name(a).to_string(), h.name(b).to_string())).collect();
    serde_json::to_string_pretty(&MapJson { schema: SCHEMA_VERSION, map }).expect("serializable")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Arrow graph in DOT: one node per unit, one edge `s -> r` per non-unit
/// arrow.
pub fn groupoid_to_dot(g: &FinTopGroupoid) -> String {
    let mut out = String::from("digraph groupoid {\n");
    for &u in g.units() {
        let _ = writeln!(out, "  {};", quote(g.name(u)));
    }
    for a in (0..g.len()).filter(|&a| !g.is_unit(a)) {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(g.name(g.source(a))),
            quote(g.name(g.range(a))),
            quote(g.name(a))
        );
    }
    out.push_str("}\n");
    out
}
