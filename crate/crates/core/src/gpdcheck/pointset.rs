use serde_json::json;

use crate::finspace::{is_hausdorff, is_locally_compact, FinSpace};
use crate::gpdbuild::FinTopGroupoid;
use crate::pi1core::UniversalCover;

use super::CheckReport;

fn properties(x: &FinSpace) -> (bool, bool, bool, bool) {
    let hausdorff = is_hausdorff(x);
    // finite spaces are second countable; paracompact coincides with
    // Hausdorff for finite spaces under the compact = quasicompact +
    // Hausdorff convention
    (hausdorff, is_locally_compact(x), true, hausdorff)
}

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

/// Point-set properties of the base, the cover and the groupoid, with
/// the finitely checkable relations among them. Items about the path
/// space are reported as not evaluated.
pub fn point_set_report(g: &FinTopGroupoid, c: &UniversalCover) -> CheckReport {
    let mut report = CheckReport::new();
    let (bh, blc, bsc, bpc) = properties(c.base());
    let (ch, clc, csc, cpc) = properties(c.total());
    let (gh, glc, gsc, gpc) = properties(g.topology());
    for (key, (h, lc, sc, pc)) in [
        ("base", (bh, blc, bsc, bpc)),
        ("cover", (ch, clc, csc, cpc)),
        ("groupoid", (gh, glc, gsc, gpc)),
    ] {
        report.fact(
            key,
            json!({ "hausdorff": h, "locally_compact": lc, "second_countable": sc, "paracompact": pc }),
        );
    }
    let claims = [
        ("hausdorff: base <=> groupoid", bh == gh),
        ("hausdorff: base => cover", implies(bh, ch)),
        ("locally compact: base <=> cover", blc == clc),
        ("locally compact: groupoid => cover and base", implies(glc, clc && blc)),
        ("locally compact: all equivalent when the base is hausdorff", implies(bh, blc == clc && clc == glc)),
        ("second countable: base, cover, groupoid equivalent", bsc == csc && csc == gsc),
        ("paracompact: groupoid => cover and base", implies(gpc, cpc && bpc)),
        ("paracompact: base => cover (finite fundamental group)", implies(bpc, cpc)),
    ];
    let mut listed = serde_json::Map::new();
    for (name, holds) in claims {
        listed.insert(name.to_string(), json!(if holds { "holds" } else { "fails" }));
        if !holds {
            report.fail(format!("claim fails: {name}"));
        }
    }
    report.fact("claims", serde_json::Value::Object(listed));
    report.not_evaluated = vec![
        "hausdorff: path space".into(),
        "hausdorff: path homotopy relation closed in the square of the path space".into(),
        "second countable: path space".into(),
    ];
    report
}
