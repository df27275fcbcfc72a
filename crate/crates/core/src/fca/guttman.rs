use super::FormalContext;

/// Integer ranks with `(g, m)` incident iff `object_rank[g] <= attribute_rank[m]`.
///
/// Object ranks run over `1..=k` for the `k` distinct rows; an attribute
/// present in no row gets rank 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuttmanWitness {
    pub object_rank: Vec<usize>,
    pub attribute_rank: Vec<usize>,
}

impl GuttmanWitness {
    pub fn reproduces(&self, ctx: &FormalContext) -> bool {
        (0..ctx.num_objects()).all(|g| {
            (0..ctx.num_attributes()).all(|m| {
                ctx.incident(g, m) == (self.object_rank[g] <= self.attribute_rank[m])
            })
        })
    }
}

/// Some witness iff the incidence is a Ferrers relation, i.e. the rows are
/// totally ordered by inclusion.
pub fn is_guttman(ctx: &FormalContext) -> Option<GuttmanWitness> {
    let mut distinct: Vec<&crate::bitset::BitSet> = Vec::new();
    for row in ctx.rows() {
        if !distinct.contains(&row) {
            distinct.push(row);
        }
    }
    // ascending by size; a chain under inclusion must also be a chain here
    distinct.sort_by_key(|r| r.len());
    if distinct.windows(2).any(|w| !w[0].is_subset(w[1])) {
        return None;
    }
    let k = distinct.len();
    // row level i (1-based, smallest row first) maps to rank k + 1 - i
    let level = |row: &crate::bitset::BitSet| {
        distinct.iter().position(|r| *r == row).expect("row was collected") + 1
    };
    let object_rank = ctx.rows().iter().map(|r| k + 1 - level(r)).collect();
    let attribute_rank = (0..ctx.num_attributes())
        .map(|m| match distinct.iter().position(|r| r.contains(m)) {
            Some(first) => k - first,
            None => 0,
        })
        .collect();
    Some(GuttmanWitness {
        object_rank,
        attribute_rank,
    })
}

/// Direct scan for a 2×2 crossing: `g1 m1`, `g2 m2` incident while
/// `g1 m2`, `g2 m1` are not.
pub fn has_crossing(ctx: &FormalContext) -> bool {
    let rows = ctx.rows();
    rows.iter().enumerate().any(|(i, a)| {
        rows[i + 1..]
            .iter()
            .any(|b| !a.is_subset(b) && !b.is_subset(a))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn staircase_is_guttman() {
        let ctx = FormalContext::from_crosses(names("g", 3), names("m", 3), &["x..", "xx.", "xxx"])
            .unwrap();
        let w = is_guttman(&ctx).expect("staircase is a Ferrers relation");
        assert!(w.reproduces(&ctx));
        // the fullest row gets the smallest rank
        assert_eq!(w.object_rank, vec![3, 2, 1]);
        assert_eq!(w.attribute_rank, vec![3, 2, 1]);
        assert!(!has_crossing(&ctx));
    }

    #[test]
    fn identity_is_not_guttman() {
        let ctx = FormalContext::from_crosses(names("g", 2), names("m", 2), &["x.", ".x"]).unwrap();
        assert!(is_guttman(&ctx).is_none());
        assert!(has_crossing(&ctx));
    }

    #[test]
    fn empty_rows_and_columns() {
        let ctx = FormalContext::from_crosses(names("g", 3), names("m", 3), &["...", "x..", "x.."])
            .unwrap();
        let w = is_guttman(&ctx).unwrap();
        assert!(w.reproduces(&ctx));
        assert_eq!(w.attribute_rank[1], 0);
    }
}
