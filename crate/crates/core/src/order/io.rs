//! Tab-separated edge lists: `a<TAB>b` means `a < b`, a lone name declares
//! an element, `#` starts a comment line.

use super::{OrderError, Poset, Relation};

pub fn parse_edge_list(text: &str) -> Result<Poset, OrderError> {
    parse_relation(text).and_then(|rel| Poset::from_relation(&rel))
}

/// Reads the pairs as written, without closing them.
pub fn parse_relation(text: &str) -> Result<Relation, OrderError> {
    let mut rel = Relation::new(Vec::new())?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let parse_err = |message: &str| OrderError::Parse {
            line: lineno + 1,
            message: message.to_string(),
        };
        match fields.as_slice() {
            [single] => {
                rel.intern(single.trim());
            }
            [a, b] => {
                let (a, b) = (a.trim(), b.trim());
                if a.is_empty() || b.is_empty() {
                    return Err(parse_err("empty element name"));
                }
                let ia = rel.intern(a);
                let ib = rel.intern(b);
                rel.insert(ia, ib)?;
            }
            _ => return Err(parse_err("expected one name or two tab-separated names")),
        }
    }
    Ok(rel)
}

/// Declares every element on its own line, then lists the covering pairs.
pub fn write_edge_list(p: &Poset) -> String {
    let mut out = String::from("# elements\n");
    for e in p.elements() {
        out.push_str(e);
        out.push('\n');
    }
    out.push_str("# covering pairs\n");
    for &(a, b) in p.covers() {
        out.push_str(p.name(a));
        out.push('\t');
        out.push_str(p.name(b));
        out.push('\n');
    }
    out
}
