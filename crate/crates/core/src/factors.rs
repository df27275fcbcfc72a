//! Boolean and ordinal (chain) factorizations of formal contexts.

use std::cmp::Ordering;
use std::fmt::Write as _;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::fca::{concepts, ConceptLattice, FcaError, FormalConcept, FormalContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error(transparent)]
    Fca(#[from] FcaError),
    #[error("the number of factors must be at least 1")]
    InvalidK,
    #[error("a biplot needs exactly 2 factors, got {0}")]
    WrongFactorCount(usize),
}

/// Incidences still to be covered, one attribute set per object.
pub type Cover = Vec<BitSet>;

fn tile_gain(c: &FormalConcept, uncovered: &[BitSet]) -> usize {
    c.extent
        .iter()
        .map(|g| uncovered[g].intersection_len(&c.intent))
        .sum()
}

fn remove_tile(uncovered: &mut [BitSet], c: &FormalConcept) {
    for g in c.extent.iter() {
        uncovered[g].difference_with(&c.intent);
    }
}

fn incidences_of(rows: &[BitSet]) -> Vec<(usize, usize)> {
    rows.iter()
        .enumerate()
        .flat_map(|(g, row)| row.iter().map(move |m| (g, m)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFactorization {
    pub factors: Vec<FormalConcept>,
    pub uncovered: Vec<(usize, usize)>,
}

/// Greedy Boolean factorization: repeatedly take the concept covering the
/// most uncovered incidences, the lectically first on ties. Stops when all
/// of `I` is covered or after `k` factors.
pub fn boolean_greedy(ctx: &FormalContext, k: Option<usize>) -> Result<BooleanFactorization, FactorError> {
    let lattice = concepts(ctx)?;
    let mut uncovered: Cover = ctx.rows().to_vec();
    let mut factors = Vec::new();
    while k.is_none_or(|k| factors.len() < k) {
        let mut best: Option<(usize, usize)> = None;
        for (i, c) in lattice.concepts().iter().enumerate() {
            let gain = tile_gain(c, &uncovered);
            if gain > best.map_or(0, |b| b.1) {
                best = Some((i, gain));
            }
        }
        let Some((i, _)) = best else { break };
        let c = lattice.concept(i).clone();
        remove_tile(&mut uncovered, &c);
        factors.push(c);
    }
    Ok(BooleanFactorization {
        factors,
        uncovered: incidences_of(&uncovered),
    })
}

/// A chain of concepts with strictly increasing extents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinalFactor {
    pub chain: Vec<FormalConcept>,
}

impl OrdinalFactor {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn covers(&self, g: usize, m: usize) -> bool {
        self.chain
            .iter()
            .any(|c| c.extent.contains(g) && c.intent.contains(m))
    }

    /// Whether the members are concepts of `ctx` with nested extents.
    pub fn is_valid(&self, ctx: &FormalContext) -> bool {
        self.chain.iter().all(|c| {
            ctx.common_attributes(&c.extent) == c.intent && ctx.common_objects(&c.intent) == c.extent
        }) && self.chain.windows(2).all(|w| {
            w[0].extent.is_subset(&w[1].extent) && w[0].extent != w[1].extent
        })
    }
}

#[derive(Clone)]
struct Path {
    gain: usize,
    len: usize,
    /// concept indices from bottom to top
    members: Vec<usize>,
}

fn better(a: &Path, b: &Path, lattice: &ConceptLattice) -> bool {
    compare_paths(a, b, lattice) == Ordering::Greater
}

/// More coverage wins, then the shorter chain, then the lectically greater
/// intents read from the bottom.
fn compare_paths(a: &Path, b: &Path, lattice: &ConceptLattice) -> Ordering {
    a.gain
        .cmp(&b.gain)
        .then(b.len.cmp(&a.len))
        .then_with(|| {
            for (x, y) in a.members.iter().zip(&b.members) {
                let o = lattice
                    .concept(*x)
                    .intent
                    .lectic_cmp(&lattice.concept(*y).intent);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
}

/// The chain covering the most uncovered incidences, found as a longest
/// path through the lattice. A chain's cover is the disjoint union of
/// `(A_i \ A_{i-1}) x B_i` over its members. `None` when nothing more can
/// be covered. Members with an empty tile are dropped.
pub fn largest_ordinal_factor(lattice: &ConceptLattice, uncovered: &[BitSet]) -> Option<OrdinalFactor> {
    let n = lattice.len();
    let mut by_size: Vec<usize> = (0..n).collect();
    by_size.sort_by_key(|&i| lattice.concept(i).extent.len());
    let mut best: Vec<Option<Path>> = vec![None; n];
    for (pos, &i) in by_size.iter().enumerate() {
        let ci = lattice.concept(i);
        let mut here = Path {
            gain: tile_gain(ci, uncovered),
            len: 1,
            members: vec![i],
        };
        for &j in &by_size[..pos] {
            let cj = lattice.concept(j);
            if cj.extent.len() == ci.extent.len() || !cj.extent.is_subset(&ci.extent) {
                continue;
            }
            let prev = best[j].as_ref().expect("smaller extents come first");
            let step: usize = ci
                .extent
                .difference(&cj.extent)
                .iter()
                .map(|g| uncovered[g].intersection_len(&ci.intent))
                .sum();
            let mut members = prev.members.clone();
            members.push(i);
            let cand = Path {
                gain: prev.gain + step,
                len: prev.len + 1,
                members,
            };
            if better(&cand, &here, lattice) {
                here = cand;
            }
        }
        best[i] = Some(here);
    }
    let top = best
        .into_iter()
        .flatten()
        .reduce(|a, b| if better(&b, &a, lattice) { b } else { a })?;
    if top.gain == 0 {
        return None;
    }
    let chain = top
        .members
        .iter()
        .map(|&i| lattice.concept(i).clone())
        .filter(|c| !c.extent.is_empty() && !c.intent.is_empty())
        .collect();
    Some(OrdinalFactor { chain })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<OrdinalFactor>,
    pub covered: Vec<(usize, usize)>,
    pub uncovered: Vec<(usize, usize)>,
}

/// Up to `k` ordinal factors, each the largest on what the previous ones
/// left uncovered.
pub fn ordinal_factorization(ctx: &FormalContext, k: usize) -> Result<Factorization, FactorError> {
    if k == 0 {
        return Err(FactorError::InvalidK);
    }
    let lattice = concepts(ctx)?;
    let mut uncovered: Cover = ctx.rows().to_vec();
    let mut factors = Vec::new();
    while factors.len() < k {
        let Some(f) = largest_ordinal_factor(&lattice, &uncovered) else {
            break;
        };
        for c in &f.chain {
            remove_tile(&mut uncovered, c);
        }
        factors.push(f);
    }
    let uncovered = incidences_of(&uncovered);
    let covered = ctx
        .incidences()
        .into_iter()
        .filter(|p| uncovered.binary_search(p).is_err())
        .collect();
    Ok(Factorization {
        factors,
        covered,
        uncovered,
    })
}

/// Per-factor coordinates: `(g, m)` is covered by factor `f` exactly when
/// `objects[g][f] >= attributes[m][f]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biplot {
    pub objects: Vec<[usize; 2]>,
    pub attributes: Vec<[usize; 2]>,
}

impl Biplot {
    /// Incidences read back from the coordinates.
    pub fn decode(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (g, og) in self.objects.iter().enumerate() {
            for (m, am) in self.attributes.iter().enumerate() {
                if (0..2).any(|f| og[f] >= am[f]) {
                    out.push((g, m));
                }
            }
        }
        out
    }
}

pub fn biplot(ctx: &FormalContext, fz: &Factorization) -> Result<Biplot, FactorError> {
    if fz.factors.len() != 2 {
        return Err(FactorError::WrongFactorCount(fz.factors.len()));
    }
    let mut objects = vec![[0; 2]; ctx.num_objects()];
    let mut attributes = vec![[0; 2]; ctx.num_attributes()];
    for (f, factor) in fz.factors.iter().enumerate() {
        let k = factor.len();
        for (g, coord) in objects.iter_mut().enumerate() {
            let first = factor
                .chain
                .iter()
                .position(|c| c.extent.contains(g))
                .map_or(k + 1, |i| i + 1);
            coord[f] = k + 1 - first;
        }
        for (m, coord) in attributes.iter_mut().enumerate() {
            let last = factor
                .chain
                .iter()
                .rposition(|c| c.intent.contains(m))
                .map_or(0, |i| i + 1);
            coord[f] = k + 1 - last;
        }
    }
    Ok(Biplot {
        objects,
        attributes,
    })
}

fn names(all: &[String], set: &BitSet) -> String {
    set.iter().map(|i| all[i].as_str()).collect::<Vec<_>>().join(", ")
}

/// Plain-text report: chains level by level, coordinates for two factors,
/// then the uncovered incidences.
pub fn factorization_report(ctx: &FormalContext, fz: &Factorization) -> String {
    let mut out = String::new();
    for (f, factor) in fz.factors.iter().enumerate() {
        let _ = writeln!(out, "factor {}", f + 1);
        for (level, c) in factor.chain.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {}: {{{}}} | {{{}}}",
                level + 1,
                names(ctx.objects(), &c.extent),
                names(ctx.attributes(), &c.intent)
            );
        }
    }
    if let Ok(b) = biplot(ctx, fz) {
        out.push_str("coordinates\n");
        for (g, c) in b.objects.iter().enumerate() {
            let _ = writeln!(out, "  object {}\t{}\t{}", ctx.objects()[g], c[0], c[1]);
        }
        for (m, c) in b.attributes.iter().enumerate() {
            let _ = writeln!(out, "  attribute {}\t{}\t{}", ctx.attributes()[m], c[0], c[1]);
        }
    }
    let _ = writeln!(
        out,
        "covered {} of {}",
        fz.covered.len(),
        fz.covered.len() + fz.uncovered.len()
    );
    out.push_str("uncovered\n");
    for &(g, m) in &fz.uncovered {
        let _ = writeln!(out, "  {}\t{}", ctx.objects()[g], ctx.attributes()[m]);
    }
    out
}
