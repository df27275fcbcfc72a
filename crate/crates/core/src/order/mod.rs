//! Finite ordered sets, quasi-order families, linear extensions and
//! Pareto machinery.

mod extensions;
mod io;
mod poset;
mod structure;

pub use extensions::{
    count_linear_extensions, greedy_linear_extension, intersect_linear_orders,
    is_linear_extension, sample_linear_extension, sampler_registry, ExactSampler,
    ExtensionSampler, LinearExtension, McmcSampler, PreparedSampler, SamplingMethod,
    DEFAULT_COUNT_BUDGET,
};
pub use io::{parse_edge_list, parse_relation, write_edge_list};
pub(crate) use poset::check_unique;
pub use poset::{Poset, QuasiOrder, Quotient, Relation};
pub use structure::{
    pareto_maxima, product_order, product_order_without_quotient, strict_domination_order,
    OrdinalStructure,
};

use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("relation is not antisymmetric; equivalent classes: {classes:?}")]
    AntisymmetryViolation { classes: Vec<Vec<String>> },
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{size} elements exceed the budget of {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("orders range over different element sets")]
    ElementMismatch,
    #[error("an ordinal structure needs at least one order")]
    NoOrders,
    #[error("mcmc sampling needs at least one step")]
    InvalidSteps,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// The neighbouring relation: pairs `a < b` with nothing strictly between.
pub fn covering_relation(p: &Poset) -> Vec<(usize, usize)> {
    p.covers().to_vec()
}

/// Up-set generated by `set`.
pub fn order_filter(p: &Poset, set: &[usize]) -> BitSet {
    let mut out = BitSet::new(p.len());
    for &s in set {
        out.union_with(p.up_set(s));
    }
    out
}

/// Down-set generated by `set`.
pub fn order_ideal(p: &Poset, set: &[usize]) -> BitSet {
    let mut out = BitSet::new(p.len());
    for &s in set {
        out.union_with(p.down_set(s));
    }
    out
}

/// Elements sorted so that every element comes after everything below it.
pub(crate) fn by_down_set_size(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&a| (p.down_set(a).len(), a));
    order
}

/// Length of the longest chain ending in each element (1 for minimal ones).
pub fn heights(p: &Poset) -> Vec<usize> {
    let mut h = vec![1; p.len()];
    for a in by_down_set_size(p) {
        for b in p.down_set(a) {
            if b != a {
                h[a] = h[a].max(h[b] + 1);
            }
        }
    }
    h
}

/// `(width, height)`: the largest antichain via a maximum matching in the
/// strict comparability graph (Dilworth), and the longest chain.
pub fn width_height(p: &Poset) -> (usize, usize) {
    let n = p.len();
    if n == 0 {
        return (0, 0);
    }
    let height = heights(p).into_iter().max().unwrap_or(0);
    let width = n - max_chain_matching(p);
    (width, height)
}

/// Size of a maximum matching between left copies and right copies where
/// `a` may be matched to `b` when `a < b` (Kuhn's augmenting paths).
fn max_chain_matching(p: &Poset) -> usize {
    let n = p.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut size = 0;
    for a in 0..n {
        let mut visited = vec![false; n];
        if augment(p, a, &mut visited, &mut match_right) {
            size += 1;
        }
    }
    size
}

fn augment(
    p: &Poset,
    a: usize,
    visited: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for b in p.up_set(a) {
        if b == a || visited[b] {
            continue;
        }
        visited[b] = true;
        let free = match match_right[b] {
            None => true,
            Some(prev) => augment(p, prev, visited, match_right),
        };
        if free {
            match_right[b] = Some(a);
            return true;
        }
    }
    false
}

/// Topological order of `0..n` under `preds` (element `i` must follow every
/// member of `preds[i]`), always taking the available element with the
/// smallest key. `None` if the constraints are cyclic.
pub(crate) fn keyed_topological_order<K: Ord>(
    preds: &[BitSet],
    key: impl Fn(usize) -> K,
) -> Option<Vec<usize>> {
    let n = preds.len();
    let mut remaining: Vec<usize> = (0..n)
        .map(|i| preds[i].iter().filter(|&j| j != i).count())
        .collect();
    let mut succs = vec![Vec::new(); n];
    for (i, row) in preds.iter().enumerate() {
        for j in row {
            if j != i {
                succs[j].push(i);
            }
        }
    }
    let mut ready = std::collections::BTreeSet::new();
    for i in 0..n {
        if remaining[i] == 0 {
            ready.insert((key(i), i));
        }
    }
    let mut out = Vec::with_capacity(n);
    while let Some(first) = ready.pop_first() {
        let i = first.1;
        out.push(i);
        for &s in &succs[i] {
            remaining[s] -= 1;
            if remaining[s] == 0 {
                ready.insert((key(s), s));
            }
        }
    }
    (out.len() == n).then_some(out)
}
