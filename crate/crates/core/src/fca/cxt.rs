//! Burmeister `.cxt` files.

use crate::bitset::BitSet;

use super::{FcaError, FormalContext};

pub fn write_cxt(ctx: &FormalContext) -> String {
    let mut out = format!(
        "B\n\n{}\n{}\n\n",
        ctx.num_objects(),
        ctx.num_attributes()
    );
    for g in ctx.objects() {
        out.push_str(g);
        out.push('\n');
    }
    for m in ctx.attributes() {
        out.push_str(m);
        out.push('\n');
    }
    for g in 0..ctx.num_objects() {
        for m in 0..ctx.num_attributes() {
            out.push(if ctx.incident(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_cxt(text: &str) -> Result<FormalContext, FcaError> {
    let lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    let err = |line: usize, message: String| FcaError::Parse { line, message };
    let get = |i: usize| {
        lines
            .get(i)
            .copied()
            .ok_or_else(|| err(i + 1, "unexpected end of file".to_string()))
    };
    if get(0)?.trim() != "B" {
        return Err(err(1, "expected `B` header".into()));
    }
    if !get(1)?.trim().is_empty() {
        return Err(err(2, "expected an empty line".into()));
    }
    let count = |i: usize| -> Result<usize, FcaError> {
        let raw = get(i)?;
        raw.trim()
            .parse()
            .map_err(|_| err(i + 1, format!("expected a count, found `{raw}`")))
    };
    let g = count(2)?;
    let m = count(3)?;
    if !get(4)?.trim().is_empty() {
        return Err(err(5, "expected an empty line".into()));
    }
    let mut at = 5;
    let mut take = |k: usize| -> Result<Vec<String>, FcaError> {
        let out = (at..at + k).map(|i| get(i).map(str::to_string)).collect();
        at += k;
        out
    };
    let objects = take(g)?;
    let attributes = take(m)?;
    let first_row = 5 + g + m;
    let mut rows = Vec::with_capacity(g);
    for i in 0..g {
        let lineno = first_row + i;
        let raw = get(lineno)?.trim_end();
        if raw.chars().count() != m {
            return Err(err(
                lineno + 1,
                format!("row has {} cells, expected {m}", raw.chars().count()),
            ));
        }
        let mut row = BitSet::new(m);
        for (j, c) in raw.chars().enumerate() {
            match c {
                'X' | 'x' => row.insert(j),
                '.' => {}
                other => return Err(err(lineno + 1, format!("unexpected cell `{other}`"))),
            }
        }
        rows.push(row);
    }
    if let Some((i, extra)) = lines
        .iter()
        .enumerate()
        .skip(first_row + g)
        .find(|(_, l)| !l.trim().is_empty())
    {
        return Err(err(i + 1, format!("unexpected trailing content `{extra}`")));
    }
    FormalContext::new(objects, attributes, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_context_layout() {
        let ctx = FormalContext::new(vec![], vec![], vec![]).unwrap();
        assert_eq!(write_cxt(&ctx), "B\n\n0\n0\n\n");
        assert_eq!(parse_cxt("B\n\n0\n0\n\n").unwrap(), ctx);
    }

    #[test]
    fn writes_exact_layout() {
        let ctx = FormalContext::from_crosses(
            vec!["a".into(), "b".into()],
            vec!["p".into(), "q".into(), "r".into()],
            &["x.x", ".x."],
        )
        .unwrap();
        assert_eq!(write_cxt(&ctx), "B\n\n2\n3\n\na\nb\np\nq\nr\nX.X\n.X.\n");
    }

    #[test]
    fn reads_crlf() {
        let text = "B\r\n\r\n1\r\n2\r\n\r\ng\r\nm\r\nn\r\nX.\r\n";
        let ctx = parse_cxt(text).unwrap();
        assert_eq!(ctx.attributes(), &["m", "n"]);
        assert!(ctx.incident(0, 0) && !ctx.incident(0, 1));
    }

    #[test]
    fn reports_malformed_rows() {
        let bad = "B\n\n1\n2\n\ng\nm\nn\nX\n";
        assert!(matches!(parse_cxt(bad), Err(FcaError::Parse { line: 9, .. })));
        assert!(matches!(parse_cxt("A\n"), Err(FcaError::Parse { line: 1, .. })));
        assert!(matches!(parse_cxt("B\n\n2\n"), Err(FcaError::Parse { .. })));
    }
}
