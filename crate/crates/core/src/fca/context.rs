use std::collections::{BTreeSet, HashMap};

use crate::bitset::BitSet;

use super::FcaError;

/// Objects × attributes incidence table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    /// Attributes of each object.
    rows: Vec<BitSet>,
    /// Objects having each attribute.
    cols: Vec<BitSet>,
}

fn check_names(kind: &'static str, names: &[String]) -> Result<(), FcaError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(FcaError::DuplicateName {
                kind,
                name: n.clone(),
            });
        }
    }
    Ok(())
}

impl FormalContext {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<BitSet>,
    ) -> Result<Self, FcaError> {
        check_names("object", &objects)?;
        check_names("attribute", &attributes)?;
        if rows.len() != objects.len() || rows.iter().any(|r| r.capacity() != attributes.len()) {
            return Err(FcaError::DimensionMismatch);
        }
        let mut cols = vec![BitSet::new(objects.len()); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            for m in row {
                cols[m].insert(g);
            }
        }
        Ok(FormalContext {
            objects,
            attributes,
            rows,
            cols,
        })
    }

    /// Rows given as strings of `x`/`X` (cross) and `.` (no cross).
    pub fn from_crosses<S: AsRef<str>>(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: &[S],
    ) -> Result<Self, FcaError> {
        let m = attributes.len();
        let mut bits = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.chars().count() != m {
                return Err(FcaError::Parse {
                    line: i + 1,
                    message: format!("row has {} cells, expected {m}", row.chars().count()),
                });
            }
            let mut set = BitSet::new(m);
            for (j, c) in row.chars().enumerate() {
                match c {
                    'x' | 'X' => set.insert(j),
                    '.' => {}
                    other => {
                        return Err(FcaError::Parse {
                            line: i + 1,
                            message: format!("unexpected cell `{other}`"),
                        })
                    }
                }
            }
            bits.push(set);
        }
        FormalContext::new(objects, attributes, bits)
    }

    pub fn from_fn<F>(objects: Vec<String>, attributes: Vec<String>, incident: F) -> Result<Self, FcaError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let m = attributes.len();
        let rows = (0..objects.len())
            .map(|g| BitSet::from_indices(m, (0..m).filter(|&j| incident(g, j))))
            .collect();
        FormalContext::new(objects, attributes, rows)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    #[inline]
    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    pub fn row(&self, g: usize) -> &BitSet {
        &self.rows[g]
    }

    pub fn column(&self, m: usize) -> &BitSet {
        &self.cols[m]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    /// All incidences `(g, m)`, row-major.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(g, row)| row.iter().map(move |m| (g, m)))
            .collect()
    }

    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet, FcaError> {
        let mut set = BitSet::new(self.num_attributes());
        for n in names {
            let m = self
                .attribute_index(n.as_ref())
                .ok_or_else(|| FcaError::UnknownAttribute(n.as_ref().to_string()))?;
            set.insert(m);
        }
        Ok(set)
    }

    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet, FcaError> {
        let mut set = BitSet::new(self.num_objects());
        for n in names {
            let g = self
                .object_index(n.as_ref())
                .ok_or_else(|| FcaError::UnknownObject(n.as_ref().to_string()))?;
            set.insert(g);
        }
        Ok(set)
    }

    /// Attributes shared by every object in `objects`.
    pub fn common_attributes(&self, objects: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.num_attributes());
        for g in objects {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// Objects having every attribute in `attributes`.
    pub fn common_objects(&self, attributes: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.num_objects());
        for m in attributes {
            out.intersect_with(&self.cols[m]);
        }
        out
    }

    pub fn attribute_closure(&self, attributes: &BitSet) -> BitSet {
        self.common_attributes(&self.common_objects(attributes))
    }

    pub fn object_closure(&self, objects: &BitSet) -> BitSet {
        self.common_objects(&self.common_attributes(objects))
    }

    pub fn transpose(&self) -> FormalContext {
        FormalContext {
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// Merges objects with identical rows and attributes with identical
    /// columns; merged names are joined with `+`.
    pub fn clarify(&self) -> (FormalContext, MergeReport) {
        let object_groups = group_identical(&self.rows);
        let attribute_groups = group_identical(&self.cols);
        let join = |names: &[String], group: &[usize]| {
            group
                .iter()
                .map(|&i| names[i].as_str())
                .collect::<Vec<_>>()
                .join("+")
        };
        let objects = object_groups.iter().map(|g| join(&self.objects, g)).collect();
        let attributes = attribute_groups
            .iter()
            .map(|g| join(&self.attributes, g))
            .collect();
        let k = attribute_groups.len();
        let rows = object_groups
            .iter()
            .map(|g| {
                let row = &self.rows[g[0]];
                BitSet::from_indices(k, (0..k).filter(|&a| row.contains(attribute_groups[a][0])))
            })
            .collect();
        let ctx = FormalContext::new(objects, attributes, rows)
            .expect("merged names stay unique and dimensions agree");
        (
            ctx,
            MergeReport {
                object_groups,
                attribute_groups,
            },
        )
    }
}

/// Which original indices were merged into each clarified object/attribute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeReport {
    pub object_groups: Vec<Vec<usize>>,
    pub attribute_groups: Vec<Vec<usize>>,
}

impl MergeReport {
    pub fn is_identity(&self) -> bool {
        self.object_groups.iter().all(|g| g.len() == 1)
            && self.attribute_groups.iter().all(|g| g.len() == 1)
    }
}

fn group_identical(sets: &[BitSet]) -> Vec<Vec<usize>> {
    let mut first: HashMap<&BitSet, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        match first.get(s) {
            Some(&g) => groups[g].push(i),
            None => {
                first.insert(s, groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}
