use std::collections::HashMap;
use std::sync::OnceLock;

use crate::bitset::BitSet;
use crate::order::Poset;

use super::{FcaError, FormalContext};

/// Default cap on the number of concepts enumerated.
pub const DEFAULT_CONCEPT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: BitSet,
    pub intent: BitSet,
}

/// All concepts of a context, in lectic order of their intents, ordered by
/// extent inclusion.
#[derive(Debug)]
pub struct ConceptLattice {
    concepts: Vec<FormalConcept>,
    by_extent: HashMap<BitSet, usize>,
    by_intent: HashMap<BitSet, usize>,
    order: OnceLock<Vec<BitSet>>,
}

impl Clone for ConceptLattice {
    fn clone(&self) -> Self {
        ConceptLattice::from_sorted(self.concepts.clone())
    }
}

impl ConceptLattice {
    fn from_sorted(concepts: Vec<FormalConcept>) -> Self {
        let by_extent = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent.clone(), i))
            .collect();
        let by_intent = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.intent.clone(), i))
            .collect();
        ConceptLattice {
            concepts,
            by_extent,
            by_intent,
            order: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn concept(&self, i: usize) -> &FormalConcept {
        &self.concepts[i]
    }

    pub fn index_of_extent(&self, extent: &BitSet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    pub fn index_of_intent(&self, intent: &BitSet) -> Option<usize> {
        self.by_intent.get(intent).copied()
    }

    /// Row `i` holds every concept `j` with `i <= j`.
    pub fn order(&self) -> &[BitSet] {
        self.order.get_or_init(|| {
            let n = self.len();
            self.concepts
                .iter()
                .map(|c| {
                    BitSet::from_indices(
                        n,
                        (0..n).filter(|&j| c.extent.is_subset(&self.concepts[j].extent)),
                    )
                })
                .collect()
        })
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order()[i].contains(j)
    }

    /// Concept with the largest extent.
    pub fn top(&self) -> usize {
        (0..self.len())
            .max_by_key(|&i| self.concepts[i].extent.len())
            .expect("a concept lattice is never empty")
    }

    /// Concept with the largest intent.
    pub fn bottom(&self) -> usize {
        (0..self.len())
            .max_by_key(|&i| self.concepts[i].intent.len())
            .expect("a concept lattice is never empty")
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let extent = self.concepts[i].extent.intersection(&self.concepts[j].extent);
        self.by_extent[&extent]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let intent = self.concepts[i].intent.intersection(&self.concepts[j].intent);
        self.by_intent[&intent]
    }

    /// Whether the extents are closed under pairwise intersection.
    pub fn extents_closed_under_intersection(&self) -> bool {
        self.concepts.iter().all(|a| {
            self.concepts
                .iter()
                .all(|b| self.by_extent.contains_key(&a.extent.intersection(&b.extent)))
        })
    }

    /// The lattice as a poset whose element names come from `label`.
    pub fn to_poset(&self, label: impl Fn(usize) -> String) -> Poset {
        let names: Vec<String> = (0..self.len()).map(label).collect();
        let order = self.order();
        Poset::from_fn(names, |a, b| order[a].contains(b)).expect("labels must be unique")
    }

    /// The lattice as a poset named `c0`, `c1`, ... by concept index.
    pub fn index_poset(&self) -> Poset {
        self.to_poset(|i| format!("c{i}"))
    }

    /// `{objects}|{attributes}` for concept `i`.
    pub fn full_label(&self, ctx: &FormalContext, i: usize) -> String {
        let c = &self.concepts[i];
        format!(
            "{{{}}}|{{{}}}",
            join_names(ctx.objects(), &c.extent),
            join_names(ctx.attributes(), &c.intent)
        )
    }

    /// Reduced labelling: object names whose object concept is `i`, and
    /// attribute names whose attribute concept is `i`.
    pub fn reduced_label(&self, ctx: &FormalContext, i: usize) -> String {
        let objs: Vec<&str> = (0..ctx.num_objects())
            .filter(|&g| self.object_concept(ctx, g) == i)
            .map(|g| ctx.objects()[g].as_str())
            .collect();
        let attrs: Vec<&str> = (0..ctx.num_attributes())
            .filter(|&m| self.attribute_concept(ctx, m) == i)
            .map(|m| ctx.attributes()[m].as_str())
            .collect();
        format!("#{i} {}|{}", objs.join(", "), attrs.join(", "))
    }

    pub fn object_concept(&self, ctx: &FormalContext, g: usize) -> usize {
        self.by_intent[ctx.row(g)]
    }

    pub fn attribute_concept(&self, ctx: &FormalContext, m: usize) -> usize {
        self.by_extent[ctx.column(m)]
    }
}

fn join_names(names: &[String], set: &BitSet) -> String {
    set.iter()
        .map(|i| names[i].as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Enumerates every formal concept with Close-by-One over the smaller side
/// of the context, then sorts by lectic order of intents.
pub fn concepts(ctx: &FormalContext) -> Result<ConceptLattice, FcaError> {
    concepts_with_cap(ctx, DEFAULT_CONCEPT_CAP)
}

pub fn concepts_with_cap(ctx: &FormalContext, cap: usize) -> Result<ConceptLattice, FcaError> {
    let mut found = Vec::new();
    if ctx.num_attributes() <= ctx.num_objects() {
        close_by_one(ctx, cap, &mut found)?;
    } else {
        close_by_one(&ctx.transpose(), cap, &mut found)?;
        for c in &mut found {
            std::mem::swap(&mut c.extent, &mut c.intent);
        }
    }
    found.sort_by(|a, b| a.intent.lectic_cmp(&b.intent));
    Ok(ConceptLattice::from_sorted(found))
}

fn close_by_one(
    ctx: &FormalContext,
    cap: usize,
    out: &mut Vec<FormalConcept>,
) -> Result<(), FcaError> {
    let extent = BitSet::full(ctx.num_objects());
    let intent = ctx.common_attributes(&extent);
    // explicit stack: (extent, intent, next attribute to try)
    let mut stack = vec![(extent, intent, 0usize)];
    while let Some((extent, intent, start)) = stack.pop() {
        if out.len() >= cap {
            return Err(FcaError::ConceptBudgetExceeded { cap });
        }
        for j in (start..ctx.num_attributes()).rev() {
            if intent.contains(j) {
                continue;
            }
            let child_extent = extent.intersection(ctx.column(j));
            let child_intent = ctx.common_attributes(&child_extent);
            // canonicity: no attribute before j was added by the closure
            if child_intent.agrees_below(&intent, j) {
                stack.push((child_extent, child_intent, j + 1));
            }
        }
        out.push(FormalConcept { extent, intent });
    }
    Ok(())
}
