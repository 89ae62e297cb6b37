use std::path::PathBuf;
use std::sync::Arc;

use clap::ValueEnum;
use fundgpd::finspace::{is_hausdorff, order_complex, quotient_space, space_report, FinSpace, FinSpaceError};
use fundgpd::gpdbuild::{groupoid_to_dot, topologies_equal, uc_topology, ComponentGroupoid, FundamentalGroupoid};
use fundgpd::gpdcheck::{
    check_algebraic_axioms, check_local_trivial_etale, check_r_times_s, check_subspace_identifications,
    check_topological, point_set_report, simply_connected_iso, CheckReport,
};
use fundgpd::homology::homology1;
use fundgpd::pi1core::{deck_action_report, fundamental_group, Pi1Error};
use serde_json::{json, Map, Value};

use crate::input::{self, Format};
use crate::{EXIT_EXCEEDED, EXIT_FAILED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Checks {
    All,
    Axioms,
    Topology,
    Pointset,
}

#[derive(clap::Args)]
pub struct Args {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// JSON report destination.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// DOT export of the groupoid.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(long)]
    pub basepoint: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub max_cosets: usize,
    #[arg(long, value_enum, default_value_t = Checks::All)]
    pub checks: Checks,
}

/// Accumulates the report and the overall verdict.
struct Report {
    root: Map<String, Value>,
    pass: bool,
    failures: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report { root: Map::new(), pass: true, failures: Vec::new() }
    }

    fn insert(&mut self, key: &str, value: Value) {
        self.root.insert(key.into(), value);
    }

    fn require(&mut self, what: &str, holds: bool) {
        if !holds {
            self.pass = false;
            self.failures.push(what.to_string());
        }
    }

    fn check(&mut self, what: &str, r: &CheckReport) -> Value {
        self.require(what, r.pass);
        serde_json::to_value(r).expect("serializable")
    }

    fn finish(mut self, args: &Args) -> anyhow::Result<bool> {
        self.insert("pass", Value::Bool(self.pass));
        let text = serde_json::to_string_pretty(&Value::Object(self.root))? + "\n";
        if let Some(path) = &args.report {
            input::write(path, &text)?;
        }
        Ok(self.pass)
    }
}

/// H₁ of the order complex of the T0 quotient.
fn homology_label(x: &Arc<FinSpace>) -> Result<(String, Option<u64>), FinSpaceError> {
    let t0 = if x.is_t0() { x.clone() } else { quotient_space(x, &x.kolmogorov_classes())?.space };
    let h = homology1(&order_complex(&t0)?);
    Ok((h.to_string(), h.order()))
}

pub fn run(args: &Args) -> anyhow::Result<u8> {
    let x = input::load_space(&args.input, args.format)?;
    let chosen = match &args.basepoint {
        Some(b) => Some(x.index_of(b).ok_or_else(|| FinSpaceError::UnknownPoint(b.clone()))?),
        None => None,
    };
    let mut report = Report::new();
    report.insert("schema", json!(1));
    report.insert("input", json!(input::file_label(&args.input)));
    report.insert("checks_selected", json!(format!("{:?}", args.checks).to_lowercase()));
    report.insert("space", serde_json::to_value(space_report(&x))?);

    let mut pi1 = Vec::new();
    let mut orders = Vec::new();
    let mut exceeded = false;
    for points in x.path_components() {
        let base = chosen.filter(|b| points.contains(b)).unwrap_or(points[0]);
        let (h1, h1_order) = homology_label(&Arc::new(x.subspace(&points)))?;
        let mut entry = json!({ "basepoint": x.name(base), "points": points.len(), "h1": h1 });
        match fundamental_group(&x, x.name(base), args.max_cosets) {
            Ok(g) => {
                let matches = h1_order == Some(g.abelianization_order() as u64);
                report.require("abelianization matches H1", matches);
                entry["status"] = json!("finite");
                entry["order"] = json!(g.order());
                entry["abelian"] = json!(g.is_abelian());
                entry["abelianization_matches_h1"] = json!(matches);
                orders.push(g.order());
            }
            Err(Pi1Error::Exceeded(cap)) => {
                exceeded = true;
                entry["status"] = json!("exceeded");
                entry["max_cosets"] = json!(cap);
            }
            Err(e) => return Err(e.into()),
        }
        pi1.push(entry);
    }
    report.insert("pi1", Value::Array(pi1));

    if exceeded {
        report.pass = false;
        report.finish(args)?;
        println!("π₁ not shown finite within {} cosets; no groupoid built", args.max_cosets);
        return Ok(EXIT_EXCEEDED);
    }

    let fg = FundamentalGroupoid::build(x.clone(), args.max_cosets, args.basepoint.as_deref())?;
    let g = &fg.groupoid;
    let sel = args.checks;
    let wants = |c: Checks| sel == Checks::All || sel == c;
    let mut checks = Map::new();
    let mut summary = Map::new();
    summary.insert("arrows".into(), json!(g.len()));
    summary.insert("units".into(), json!(g.units().len()));
    summary.insert("components".into(), json!(fg.components.len()));
    summary.insert("pi1_orders".into(), json!(orders));
    let hausdorff = is_hausdorff(g.topology());
    let base_hausdorff = is_hausdorff(&x);
    summary.insert("hausdorff".into(), json!(hausdorff));
    summary.insert("base_hausdorff".into(), json!(base_hausdorff));
    report.require("groupoid hausdorff iff base hausdorff", hausdorff == base_hausdorff);

    if wants(Checks::Axioms) {
        checks.insert("axioms".into(), report.check("axioms", &check_algebraic_axioms(g)));
    }
    if wants(Checks::Topology) {
        checks.insert("topology".into(), report.check("topology", &check_topological(g)));
        let lt = check_local_trivial_etale(g, None);
        summary.insert("etale".into(), json!(lt.flag("etale")));
        summary.insert("locally_trivial".into(), json!(lt.flag("locally_trivial")));
        checks.insert("local_triviality".into(), report.check("local triviality", &lt));
        checks.insert("r_times_s".into(), report.check("r x s", &check_r_times_s(g)));
        if sel == Checks::All && fg.components.iter().all(|c| c.cover.degree() == 1) {
            let r = simply_connected_iso(&fg)?;
            checks.insert("simply_connected_iso".into(), report.check("simply connected isomorphism", &r));
        }
    }
    let comps: Vec<Value> = fg.components.iter().map(|c| component_entry(&mut report, &x, c, sel)).collect::<anyhow::Result<_>>()?;
    checks.insert("components".into(), Value::Array(comps));
    report.insert("summary", Value::Object(summary));
    report.insert("checks", Value::Object(checks));

    if let Some(dot) = &args.dot {
        input::write(dot, &groupoid_to_dot(g))?;
    }
    let failures = report.failures.clone();
    let pass = report.finish(args)?;
    println!("{} arrows, π₁ orders {:?}", g.len(), orders);
    if pass {
        println!("all selected checks pass");
        Ok(0)
    } else {
        println!("failed: {}", failures.join(", "));
        Ok(EXIT_FAILED)
    }
}

fn component_entry(report: &mut Report, x: &FinSpace, c: &ComponentGroupoid, sel: Checks) -> anyhow::Result<Value> {
    let mut entry = Map::new();
    entry.insert("basepoint".into(), json!(x.name(c.basepoint)));
    entry.insert("points".into(), json!(c.points.len()));
    entry.insert("pi1_order".into(), json!(c.cover.degree()));
    entry.insert("cover_points".into(), json!(c.cover.total().len()));
    entry.insert("arrows".into(), json!(c.groupoid.len()));
    let expected = c.points.len() * c.points.len() * c.cover.degree();
    report.require("arrow count", c.groupoid.len() == expected);
    if matches!(sel, Checks::All | Checks::Topology) {
        let uc = uc_topology(&c.groupoid, &c.cover)?;
        let cmp = topologies_equal(&c.groupoid, &uc);
        let uc_ok = cmp.equal
            && cmp.projection_open
            && uc.parametrization_bijective
            && uc.general_sets_open
            && uc.containments_hold;
        report.require("UC topology", uc_ok);
        let mut u = json!({
            "equals_quotient_topology": cmp.equal,
            "projection_open": cmp.projection_open,
            "parametrization_bijective": uc.parametrization_bijective,
            "general_sets_checked": uc.general_sets_checked,
            "general_sets_open": uc.general_sets_open,
            "containments_hold": uc.containments_hold,
        });
        if let Some(w) = cmp.witness.or(uc.witness.clone()) {
            u["witness"] = json!(w);
        }
        entry.insert("uc_topology".into(), u);
        let ids = check_subspace_identifications(&c.groupoid, &c.cover)?;
        entry.insert("identifications".into(), report.check("subspace identifications", &ids));
        let deck = deck_action_report(&c.cover);
        report.require("deck action", deck.free && deck.covering_space_action && deck.proper && deck.consistent());
        entry.insert("deck_action".into(), serde_json::to_value(&deck)?);
    }
    if matches!(sel, Checks::All | Checks::Pointset) {
        entry.insert("pointset".into(), report.check("point-set properties", &point_set_report(&c.groupoid, &c.cover)));
    }
    Ok(Value::Object(entry))
}
