use crate::bitset::BitSet;

use super::{FcaError, FormalContext};

/// Attribute implication `premise -> conclusion`. The stored conclusion
/// never repeats premise attributes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Implication {
    premise: BitSet,
    conclusion: BitSet,
}

impl Implication {
    pub fn new(premise: BitSet, conclusion: BitSet) -> Self {
        let conclusion = conclusion.difference(&premise);
        Implication {
            premise,
            conclusion,
        }
    }

    pub fn from_names<S: AsRef<str>>(
        ctx: &FormalContext,
        premise: &[S],
        conclusion: &[S],
    ) -> Result<Self, FcaError> {
        Ok(Implication::new(
            ctx.attribute_set(premise)?,
            ctx.attribute_set(conclusion)?,
        ))
    }

    pub fn premise(&self) -> &BitSet {
        &self.premise
    }

    pub fn conclusion(&self) -> &BitSet {
        &self.conclusion
    }

    pub fn display(&self, ctx: &FormalContext) -> String {
        let names = |s: &BitSet| {
            s.iter()
                .map(|m| ctx.attributes()[m].as_str())
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("{{{}}} -> {{{}}}", names(&self.premise), names(&self.conclusion))
    }
}

/// Every object having all premise attributes also has all conclusion
/// attributes.
pub fn holds(ctx: &FormalContext, imp: &Implication) -> bool {
    check_width(ctx, imp.premise()).is_ok()
        && check_width(ctx, imp.conclusion()).is_ok()
        && imp
            .conclusion()
            .is_subset(&ctx.attribute_closure(imp.premise()))
}

/// [`holds`] for implications given by attribute names.
pub fn holds_named<S: AsRef<str>>(
    ctx: &FormalContext,
    premise: &[S],
    conclusion: &[S],
) -> Result<bool, FcaError> {
    let imp = Implication::from_names(ctx, premise, conclusion)?;
    Ok(holds(ctx, &imp))
}

fn check_width(ctx: &FormalContext, s: &BitSet) -> Result<(), FcaError> {
    if s.capacity() == ctx.num_attributes() {
        Ok(())
    } else {
        Err(FcaError::DimensionMismatch)
    }
}

/// Smallest superset of `set` respecting every implication in `base`.
pub fn implication_closure(base: &[Implication], set: &BitSet) -> BitSet {
    let mut closed = set.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for imp in base {
            if imp.premise.is_subset(&closed) && !imp.conclusion.is_subset(&closed) {
                closed.union_with(&imp.conclusion);
                changed = true;
            }
        }
    }
    closed
}

/// Whether `imp` is derivable from `base` by the Armstrong rules.
pub fn entails(base: &[Implication], imp: &Implication) -> bool {
    imp.conclusion
        .is_subset(&implication_closure(base, &imp.premise))
}

/// Default cap on closed sets visited while computing the canonical base.
pub const DEFAULT_BASE_CAP: usize = 1_000_000;

/// The Duquenne-Guigues base: NextClosure walks all sets closed under the
/// implications found so far in lectic order; each such set that is not an
/// intent is a pseudo-intent and contributes `P -> P'' \ P`.
pub fn canonical_base(ctx: &FormalContext) -> Result<Vec<Implication>, FcaError> {
    canonical_base_with_cap(ctx, DEFAULT_BASE_CAP)
}

pub fn canonical_base_with_cap(
    ctx: &FormalContext,
    cap: usize,
) -> Result<Vec<Implication>, FcaError> {
    let n = ctx.num_attributes();
    let mut base: Vec<Implication> = Vec::new();
    let mut current = BitSet::new(n);
    let mut visited = 0usize;
    loop {
        visited += 1;
        if visited > cap {
            return Err(FcaError::BudgetExceeded { cap });
        }
        let closed = ctx.attribute_closure(&current);
        if closed != current {
            base.push(Implication::new(current.clone(), closed));
        }
        match next_closed(&current, n, |s| implication_closure(&base, s)) {
            Some(next) => current = next,
            None => return Ok(base),
        }
    }
}

/// Lectically next set closed under `close`, or `None` after the last.
fn next_closed(current: &BitSet, n: usize, close: impl Fn(&BitSet) -> BitSet) -> Option<BitSet> {
    let mut prefix = current.clone();
    for i in (0..n).rev() {
        if prefix.contains(i) {
            prefix.remove(i);
            continue;
        }
        let mut candidate = prefix.clone();
        candidate.insert(i);
        let closed = close(&candidate);
        if closed.agrees_below(current, i) {
            return Some(closed);
        }
    }
    None
}
