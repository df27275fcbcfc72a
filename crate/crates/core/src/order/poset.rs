use std::collections::{BTreeSet, HashMap};

use crate::bitset::BitSet;

use super::OrderError;

/// A finite binary relation over named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    elements: Vec<String>,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(elements: Vec<String>) -> Result<Self, OrderError> {
        check_unique(&elements)?;
        Ok(Relation {
            elements,
            pairs: BTreeSet::new(),
        })
    }

    pub fn with_pairs<I>(elements: Vec<String>, pairs: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rel = Relation::new(elements)?;
        for (a, b) in pairs {
            rel.insert(a, b)?;
        }
        Ok(rel)
    }

    /// Builds a relation from name pairs, declaring elements in order of
    /// first appearance.
    pub fn from_named_pairs<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut rel = Relation {
            elements: Vec::new(),
            pairs: BTreeSet::new(),
        };
        for (a, b) in pairs {
            let ia = rel.intern(a);
            let ib = rel.intern(b);
            rel.pairs.insert((ia, ib));
        }
        rel
    }

    pub(crate) fn intern(&mut self, name: &str) -> usize {
        match self.index_of(name) {
            Some(i) => i,
            None => {
                self.elements.push(name.to_string());
                self.elements.len() - 1
            }
        }
    }

    pub fn insert(&mut self, a: usize, b: usize) -> Result<(), OrderError> {
        let n = self.elements.len();
        if a >= n || b >= n {
            return Err(OrderError::IndexOutOfRange {
                index: a.max(b),
                len: n,
            });
        }
        self.pairs.insert((a, b));
        Ok(())
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|i| self.contains(i, i))
    }

    pub fn reflexive_closure(&self) -> Relation {
        let mut rel = self.clone();
        for i in 0..self.len() {
            rel.pairs.insert((i, i));
        }
        rel
    }

    /// Row `i` holds every `j` with `(i, j)` in the relation.
    pub fn rows(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut rows = vec![BitSet::new(n); n];
        for &(a, b) in &self.pairs {
            rows[a].insert(b);
        }
        rows
    }
}

pub(crate) fn check_unique(elements: &[String]) -> Result<(), OrderError> {
    let mut seen = BTreeSet::new();
    for e in elements {
        if !seen.insert(e.as_str()) {
            return Err(OrderError::DuplicateElement(e.clone()));
        }
    }
    Ok(())
}

/// Reflexive-transitive closure of a row-encoded relation (Warshall).
fn closure_rows(mut rows: Vec<BitSet>) -> Vec<BitSet> {
    let n = rows.len();
    for (i, row) in rows.iter_mut().enumerate() {
        row.insert(i);
    }
    for k in 0..n {
        let row_k = rows[k].clone();
        for row in rows.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
    rows
}

/// A reflexive and transitive relation; antisymmetry is not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiOrder {
    elements: Vec<String>,
    up: Vec<BitSet>,
}

impl QuasiOrder {
    /// Closes `rel` reflexively and transitively.
    pub fn from_relation(rel: &Relation) -> Self {
        QuasiOrder {
            elements: rel.elements().to_vec(),
            up: closure_rows(rel.rows()),
        }
    }

    /// `leq(i, j)` must be a quasi-order; it is re-closed to be safe.
    pub fn from_fn<F>(elements: Vec<String>, leq: F) -> Result<Self, OrderError>
    where
        F: Fn(usize, usize) -> bool,
    {
        check_unique(&elements)?;
        let n = elements.len();
        let rows = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| leq(i, j))))
            .collect();
        Ok(QuasiOrder {
            elements,
            up: closure_rows(rows),
        })
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Strictly below: `a <= b` but not `b <= a`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && !self.leq(b, a)
    }

    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    pub fn up_row(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.equivalence_classes().iter().all(|c| c.len() == 1)
    }

    /// Classes of mutually comparable elements, ordered by first member.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<usize> = (i..n).filter(|&j| self.equivalent(i, j)).collect();
            for &j in &members {
                class_of[j] = id;
            }
            classes.push(members);
        }
        classes
    }

    /// Identifies mutually comparable elements. Class names join member
    /// names with `+`.
    pub fn quotient(&self) -> Quotient {
        let classes = self.equivalence_classes();
        let mut class_of = vec![0; self.len()];
        for (c, members) in classes.iter().enumerate() {
            for &m in members {
                class_of[m] = c;
            }
        }
        let names = classes
            .iter()
            .map(|members| {
                members
                    .iter()
                    .map(|&m| self.elements[m].as_str())
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        let k = classes.len();
        let up = classes
            .iter()
            .map(|members| {
                let rep = members[0];
                BitSet::from_indices(k, (0..k).filter(|&c| self.leq(rep, classes[c][0])))
            })
            .collect();
        let poset = Poset::from_closed_rows(names, up);
        Quotient {
            poset,
            class_of,
            classes,
        }
    }

    pub fn into_poset(self) -> Result<Poset, OrderError> {
        let classes = self.equivalence_classes();
        if classes.iter().any(|c| c.len() > 1) {
            let named = classes
                .into_iter()
                .filter(|c| c.len() > 1)
                .map(|c| c.into_iter().map(|i| self.elements[i].clone()).collect())
                .collect();
            return Err(OrderError::AntisymmetryViolation { classes: named });
        }
        Ok(Poset::from_closed_rows(self.elements, self.up))
    }
}

/// A poset obtained by identifying equivalent elements of a quasi-order.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub poset: Poset,
    /// Original element index to class index.
    pub class_of: Vec<usize>,
    /// Members of each class, ascending.
    pub classes: Vec<Vec<usize>>,
}

/// A finite partially ordered set with its covering relation.
///
/// The order is stored densely: `up[i]` holds every `j` with `i <= j` and
/// `down[i]` every `j` with `j <= i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds from rows that are already reflexive, transitive and
    /// antisymmetric.
    pub(crate) fn from_closed_rows(elements: Vec<String>, up: Vec<BitSet>) -> Self {
        let n = elements.len();
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row {
                down[j].insert(i);
            }
        }
        let covers = compute_covers(&up);
        Poset {
            elements,
            up,
            down,
            covers,
        }
    }

    /// Closes `rel` and checks antisymmetry; tied elements are reported as
    /// classes so that the caller may quotient them instead.
    pub fn from_relation(rel: &Relation) -> Result<Self, OrderError> {
        QuasiOrder::from_relation(rel).into_poset()
    }

    /// `leq(i, j)` is closed reflexively and transitively before the
    /// antisymmetry check.
    pub fn from_fn<F>(elements: Vec<String>, leq: F) -> Result<Self, OrderError>
    where
        F: Fn(usize, usize) -> bool,
    {
        QuasiOrder::from_fn(elements, leq)?.into_poset()
    }

    pub fn antichain(elements: Vec<String>) -> Result<Self, OrderError> {
        Poset::from_fn(elements, |_, _| false)
    }

    /// Chain in the given order, first element at the bottom.
    pub fn chain(elements: Vec<String>) -> Result<Self, OrderError> {
        Poset::from_fn(elements, |a, b| a <= b)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn index_map(&self) -> HashMap<&str, usize> {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|a| (a + 1..self.len()).all(|b| self.comparable(a, b)))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.down[a].len() == 1).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.up[a].len() == 1).collect()
    }

    /// All strict pairs `a < b`, in index order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in &self.up[a] {
                if a != b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn as_quasi_order(&self) -> QuasiOrder {
        QuasiOrder {
            elements: self.elements.clone(),
            up: self.up.clone(),
        }
    }

    pub fn dual(&self) -> Poset {
        Poset::from_closed_rows(self.elements.clone(), self.down.clone())
    }

    /// Sub-order induced on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let names = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let k = keep.len();
        let up = keep
            .iter()
            .map(|&a| BitSet::from_indices(k, (0..k).filter(|&j| self.leq(a, keep[j]))))
            .collect();
        Poset::from_closed_rows(names, up)
    }
}

fn compute_covers(up: &[BitSet]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (a, row) in up.iter().enumerate() {
        let mut strict = row.clone();
        strict.remove(a);
        for b in &strict {
            // b covers a unless some c with a < c < b exists
            let between = strict.iter().any(|c| c != b && up[c].contains(b));
            if !between {
                covers.push((a, b));
            }
        }
    }
    covers
}
