//! Order dimension: critical pairs, exact realizers and bounds.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bitset::BitSet;
use crate::order::{
    intersect_linear_orders, keyed_topological_order, width_height, LinearExtension, Poset,
};

/// Default time budget for the exact search.
pub const DEFAULT_BUDGET_MS: u64 = 60_000;
/// Candidate 6-tuples examined when looking for a standard example.
pub const S3_SCAN_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimensionError {
    #[error("time budget exhausted; dimension is between {} and {}", .0.lower, .0.upper)]
    BudgetExceeded(Bounds),
    #[error("dimension exceeds {max_k}; it is between {} and {}", .bounds.lower, .bounds.upper)]
    ExceedsMaxK { max_k: usize, bounds: Bounds },
    #[error("max_k must be at least 1")]
    InvalidMaxK,
}

/// Linear extensions whose intersection is the poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realizer {
    pub extensions: Vec<LinearExtension>,
}

impl Realizer {
    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn realizes(&self, p: &Poset) -> bool {
        match intersect_linear_orders(p.elements(), &self.extensions) {
            Ok(q) => (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(a, b))),
            Err(_) => false,
        }
    }

    /// One extension per line, names comma-separated from bottom to top.
    pub fn to_text(&self, elements: &[String]) -> String {
        let mut out = String::new();
        for e in &self.extensions {
            out.push_str(&e.names(elements).join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dimension {
    pub dim: usize,
    pub realizer: Realizer,
}

#[derive(Clone, Copy, Debug)]
pub struct DimensionOptions {
    pub max_k: usize,
    pub budget: Duration,
}

impl Default for DimensionOptions {
    /// `max_k` 8; the budget comes from `ODSK_BUDGET_MS` when set.
    fn default() -> Self {
        let ms = std::env::var("ODSK_BUDGET_MS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_BUDGET_MS);
        DimensionOptions {
            max_k: 8,
            budget: Duration::from_millis(ms),
        }
    }
}

/// Incomparable `(a, b)` where everything below `a` is below `b` and
/// everything above `b` is above `a`. Sorted by `(a, b)`.
pub fn critical_pairs(p: &Poset) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for a in 0..n {
        let mut below_a = p.down_set(a).clone();
        below_a.remove(a);
        for b in 0..n {
            if a == b || p.comparable(a, b) {
                continue;
            }
            let mut above_b = p.up_set(b).clone();
            above_b.remove(b);
            if below_a.is_subset(p.down_set(b)) && above_b.is_subset(p.up_set(a)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// A set of critical pairs to be reversed by a single linear extension,
/// kept as the transitive closure of `<=` plus the reversed pairs.
#[derive(Clone)]
struct Class {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    pairs: Vec<(usize, usize)>,
}

impl Class {
    fn new(p: &Poset) -> Self {
        Class {
            up: (0..p.len()).map(|a| p.up_set(a).clone()).collect(),
            down: (0..p.len()).map(|a| p.down_set(a).clone()).collect(),
            pairs: Vec::new(),
        }
    }

    /// `b` must come before `a`; false when that closes a cycle.
    fn can_reverse(&self, (a, b): (usize, usize)) -> bool {
        !self.up[a].contains(b)
    }

    fn reverse(&mut self, (a, b): (usize, usize)) {
        let lower: Vec<usize> = self.down[b].iter().collect();
        let upper = self.up[a].clone();
        for x in lower {
            self.up[x].union_with(&upper);
        }
        let lower = self.down[b].clone();
        for y in upper.iter() {
            self.down[y].union_with(&lower);
        }
        self.pairs.push((a, b));
    }

    fn extension(&self, p: &Poset) -> LinearExtension {
        let order = keyed_topological_order(&self.down, |i| p.name(i).to_string())
            .expect("class constraints are acyclic");
        LinearExtension(order)
    }
}

fn realizer_from(p: &Poset, classes: &[Class]) -> Realizer {
    Realizer {
        extensions: classes.iter().map(|c| c.extension(p)).collect(),
    }
}

/// Each class takes every remaining critical pair it can still reverse.
fn greedy_classes(p: &Poset, pairs: &[(usize, usize)]) -> Vec<Class> {
    let mut left: Vec<(usize, usize)> = pairs.to_vec();
    let mut classes = Vec::new();
    while !left.is_empty() {
        let mut class = Class::new(p);
        left.retain(|&pair| {
            if class.can_reverse(pair) {
                class.reverse(pair);
                false
            } else {
                true
            }
        });
        classes.push(class);
    }
    classes
}

/// Whether `p` contains the standard example S3 as an induced suborder,
/// checking at most `cap` candidate 6-tuples.
pub fn contains_standard_example(p: &Poset, cap: usize) -> bool {
    let n = p.len();
    let mut checked = 0usize;
    let strictly_above = |a: usize| -> Vec<usize> { p.up_set(a).iter().filter(|&x| x != a).collect() };
    for a1 in 0..n {
        for a2 in a1 + 1..n {
            if p.comparable(a1, a2) {
                continue;
            }
            for a3 in a2 + 1..n {
                if p.comparable(a1, a3) || p.comparable(a2, a3) {
                    continue;
                }
                let a = [a1, a2, a3];
                // b_i above the other two a's, incomparable to a_i
                let cands: Vec<Vec<usize>> = (0..3)
                    .map(|i| {
                        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                        strictly_above(a[j])
                            .into_iter()
                            .filter(|&b| p.lt(a[k], b) && !p.comparable(a[i], b))
                            .collect()
                    })
                    .collect();
                for &b1 in &cands[0] {
                    for &b2 in &cands[1] {
                        if p.comparable(b1, b2) {
                            continue;
                        }
                        for &b3 in &cands[2] {
                            checked += 1;
                            if checked > cap {
                                return false;
                            }
                            if !p.comparable(b1, b3) && !p.comparable(b2, b3) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

/// Lower bound 1 for chains, else 2, raised to 3 when a standard example
/// S3 turns up; upper bound the smaller of width and greedy class count.
pub fn dimension_bounds(p: &Poset) -> Bounds {
    if p.is_chain() {
        return Bounds { lower: 1, upper: 1 };
    }
    let pairs = critical_pairs(p);
    let (width, _) = width_height(p);
    let greedy = greedy_classes(p, &pairs).len();
    let lower = if contains_standard_example(p, S3_SCAN_CAP) { 3 } else { 2 };
    Bounds {
        lower,
        upper: width.min(greedy).max(lower),
    }
}

struct Search<'a> {
    p: &'a Poset,
    pairs: &'a [(usize, usize)],
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
}

impl Search<'_> {
    /// First-fit assignment of pairs `i..` into `classes`, opening a new
    /// class only while fewer than `k` are in use.
    fn assign(&mut self, i: usize, classes: &mut Vec<Class>, k: usize) -> bool {
        if i == self.pairs.len() {
            return true;
        }
        // the first node is checked too, so a zero budget never searches
        if self.nodes.is_multiple_of(1024) && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        self.nodes += 1;
        if self.timed_out {
            return false;
        }
        let pair = self.pairs[i];
        for c in 0..classes.len() {
            if classes[c].can_reverse(pair) {
                let saved = classes[c].clone();
                classes[c].reverse(pair);
                if self.assign(i + 1, classes, k) {
                    return true;
                }
                classes[c] = saved;
                if self.timed_out {
                    return false;
                }
            }
        }
        if classes.len() < k {
            let mut fresh = Class::new(self.p);
            fresh.reverse(pair);
            classes.push(fresh);
            if self.assign(i + 1, classes, k) {
                return true;
            }
            classes.pop();
        }
        false
    }
}

/// Exact dimension with a realizer, searching `k = 2..=max_k`.
pub fn order_dimension(p: &Poset, opts: DimensionOptions) -> Result<Dimension, DimensionError> {
    if opts.max_k == 0 {
        return Err(DimensionError::InvalidMaxK);
    }
    if p.is_chain() {
        let order = keyed_topological_order(
            &(0..p.len()).map(|a| p.down_set(a).clone()).collect::<Vec<_>>(),
            |i| p.name(i).to_string(),
        )
        .expect("acyclic");
        return Ok(Dimension {
            dim: 1,
            realizer: Realizer {
                extensions: vec![LinearExtension(order)],
            },
        });
    }
    let bounds = dimension_bounds(p);
    let pairs = critical_pairs(p);
    let mut search = Search {
        p,
        pairs: &pairs,
        deadline: Instant::now() + opts.budget,
        nodes: 0,
        timed_out: false,
    };
    let mut lower = bounds.lower;
    for k in bounds.lower..=opts.max_k.min(bounds.upper) {
        let mut classes = Vec::new();
        if search.assign(0, &mut classes, k) {
            let realizer = realizer_from(p, &classes);
            debug_assert!(realizer.realizes(p));
            return Ok(Dimension { dim: k, realizer });
        }
        if search.timed_out {
            return Err(DimensionError::BudgetExceeded(Bounds {
                lower,
                upper: bounds.upper,
            }));
        }
        lower = k + 1;
        log::debug!("no realizer of size {k}");
    }
    Err(DimensionError::ExceedsMaxK {
        max_k: opts.max_k,
        bounds: Bounds {
            lower: lower.max(opts.max_k + 1),
            upper: bounds.upper,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Relation;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    fn standard_example(k: usize) -> Poset {
        let mut rel = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    rel.push((format!("a{i}"), format!("b{j}")));
                }
            }
        }
        let r = Relation::from_named_pairs(rel.iter().map(|(a, b)| (a.as_str(), b.as_str())));
        Poset::from_relation(&r).unwrap()
    }

    fn cube() -> Poset {
        let names: Vec<String> = (0..8).map(|i| format!("{i:03b}")).collect();
        Poset::from_fn(names, |a, b| a & b == a).unwrap()
    }

    fn exact(p: &Poset) -> Dimension {
        order_dimension(p, DimensionOptions::default()).unwrap()
    }

    #[test]
    fn chain_and_antichain() {
        assert_eq!(exact(&Poset::chain(names(4)).unwrap()).dim, 1);
        let anti = Poset::antichain(names(4)).unwrap();
        let d = exact(&anti);
        assert_eq!(d.dim, 2);
        assert!(d.realizer.realizes(&anti));
        assert_eq!(dimension_bounds(&anti), Bounds { lower: 2, upper: 2 });
    }

    #[test]
    fn critical_pairs_small_cases() {
        assert!(critical_pairs(&Poset::chain(names(3)).unwrap()).is_empty());
        assert_eq!(critical_pairs(&Poset::antichain(names(2)).unwrap()), vec![(0, 1), (1, 0)]);
        let s3 = standard_example(3);
        let cp = critical_pairs(&s3);
        assert_eq!(cp.len(), 3);
        for (a, b) in cp {
            assert_eq!(s3.name(a)[1..], s3.name(b)[1..]);
        }
    }

    #[test]
    fn standard_example_has_dimension_three() {
        let s3 = standard_example(3);
        assert!(contains_standard_example(&s3, S3_SCAN_CAP));
        let d = exact(&s3);
        assert_eq!(d.dim, 3);
        assert!(d.realizer.realizes(&s3));
        assert_eq!(exact(&standard_example(4)).dim, 4);
    }

    #[test]
    fn boolean_cube() {
        let c = cube();
        let b = dimension_bounds(&c);
        assert!(b.lower >= 2 && b.upper <= 3);
        let d = exact(&c);
        assert_eq!(d.dim, 3);
        assert!(d.realizer.realizes(&c));
    }

    #[test]
    fn max_k_and_budget() {
        let s4 = standard_example(4);
        let err = order_dimension(
            &s4,
            DimensionOptions {
                max_k: 2,
                budget: Duration::from_secs(10),
            },
        )
        .unwrap_err();
        assert!(matches!(err, DimensionError::ExceedsMaxK { max_k: 2, .. }));
        assert_eq!(
            order_dimension(
                &s4,
                DimensionOptions {
                    max_k: 0,
                    budget: Duration::ZERO
                }
            ),
            Err(DimensionError::InvalidMaxK)
        );
        let err = order_dimension(
            &s4,
            DimensionOptions {
                max_k: 8,
                budget: Duration::ZERO,
            },
        )
        .unwrap_err();
        assert!(matches!(err, DimensionError::BudgetExceeded(Bounds { upper: 4, .. })));
    }

    #[test]
    fn realizer_text() {
        let p = Poset::antichain(vec!["x".into(), "y".into()]).unwrap();
        let d = exact(&p);
        assert_eq!(d.realizer.to_text(p.elements()), "y,x\nx,y\n");
    }
}
