use super::space::FinSpace;
use super::FinSpaceError;

/// Parses the poset text format: one relation `x < y` per line, isolated
/// points declared as `point x`, `#` starts a comment. The resulting space
/// is the reflexive-transitive closure; cycles are allowed and give non-T0
/// spaces.
pub fn parse_poset(text: &str) -> Result<FinSpace, FinSpaceError> {
    let mut points: Vec<String> = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = || FinSpaceError::Parse(format!("line {}: cannot parse `{}`", lineno + 1, raw.trim()));
        if let Some(rest) = line.strip_prefix("point") {
            if rest.starts_with(char::is_whitespace) {
                let mut words = rest.split_whitespace();
                let name = words.next().ok_or_else(err)?;
                if words.next().is_some() {
                    return Err(err());
                }
                points.push(name.to_string());
                continue;
            }
        }
        let (a, b) = line.split_once('<').ok_or_else(err)?;
        let (a, b) = (a.trim(), b.trim());
        if a.is_empty() || b.is_empty() || b.contains('<') {
            return Err(err());
        }
        if a.contains(char::is_whitespace) || b.contains(char::is_whitespace) {
            return Err(err());
        }
        pairs.push((a.to_string(), b.to_string()));
    }
    FinSpace::from_relations(&points, &pairs, false)
}

/// Renders a space in the poset text format.
pub fn write_poset(x: &FinSpace) -> String {
    let mut out = String::new();
    for p in 0..x.len() {
        let related = (0..x.len()).any(|q| q != p && (x.leq(p, q) || x.leq(q, p)));
        if !related {
            out.push_str(&format!("point {}\n", x.name(p)));
        }
    }
    for p in 0..x.len() {
        for q in x.up(p).ones() {
            if q != p {
                out.push_str(&format!("{} < {}\n", x.name(p), x.name(q)));
            }
        }
    }
    out
}
