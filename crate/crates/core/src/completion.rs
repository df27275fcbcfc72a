//! Dedekind-MacNeille completion as the concept lattice of `(P, P, <=)`.

use crate::fca::{concepts, ConceptLattice, FormalContext};
use crate::order::Poset;

#[derive(Clone, Debug)]
pub struct Completion {
    pub context: FormalContext,
    pub lattice: ConceptLattice,
    /// Concept index of each original element.
    pub embedding: Vec<usize>,
    /// Concepts that are not the image of an element.
    pub new_nodes: Vec<usize>,
}

impl Completion {
    /// Element name for embedded concepts, `+N` (N the concept index) for
    /// new ones.
    pub fn label(&self, concept: usize) -> String {
        match self.embedding.iter().position(|&c| c == concept) {
            Some(x) => self.context.objects()[x].clone(),
            None => format!("+{concept}"),
        }
    }

    /// The completed lattice as a poset labelled by [`Completion::label`].
    pub fn to_poset(&self) -> Poset {
        self.lattice.to_poset(|i| self.label(i))
    }
}

pub fn dedekind_macneille(p: &Poset) -> Completion {
    let names = p.elements().to_vec();
    let context = FormalContext::from_fn(names.clone(), names, |g, m| p.leq(g, m))
        .expect("poset names are distinct");
    let lattice = concepts(&context).expect("completion stays below the concept cap");
    let embedding: Vec<usize> = (0..p.len())
        .map(|x| {
            lattice
                .index_of_extent(p.down_set(x))
                .expect("principal ideals are extents")
        })
        .collect();
    let new_nodes = (0..lattice.len())
        .filter(|c| !embedding.contains(c))
        .collect();
    Completion {
        context,
        lattice,
        embedding,
        new_nodes,
    }
}
