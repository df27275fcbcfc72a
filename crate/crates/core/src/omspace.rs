//! Ordered metric spaces: a finite metric together with a binary relation.

use std::str::FromStr;

use rust_decimal::Decimal;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::fca::FormalContext;
use crate::order::{check_unique, OrderError, Poset, QuasiOrder, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmError {
    #[error("Hausdorff distance of an empty set")]
    EmptySet,
    #[error("`{0}` relates to nothing; close the relation reflexively first")]
    EmptyImage(String),
    #[error("distance matrix is not symmetric at ({0}, {1})")]
    Asymmetric(String, String),
    #[error("distance from `{0}` to itself is not zero")]
    NonZeroDiagonal(String),
    #[error("negative distance between `{0}` and `{1}`")]
    Negative(String, String),
    #[error("`{0}` has no distances")]
    UnknownElement(String),
    #[error("element sets differ")]
    ElementMismatch,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Symmetric distance matrix with zero diagonal, stored as exact decimals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetric {
    elements: Vec<String>,
    d: Vec<Vec<Decimal>>,
}

impl FiniteMetric {
    pub fn new(elements: Vec<String>, d: Vec<Vec<Decimal>>) -> Result<Self, OmError> {
        check_unique(&elements)?;
        let n = elements.len();
        if d.len() != n || d.iter().any(|r| r.len() != n) {
            return Err(OmError::ElementMismatch);
        }
        for i in 0..n {
            if !d[i][i].is_zero() {
                return Err(OmError::NonZeroDiagonal(elements[i].clone()));
            }
            for j in 0..n {
                if d[i][j].is_sign_negative() && !d[i][j].is_zero() {
                    return Err(OmError::Negative(elements[i].clone(), elements[j].clone()));
                }
                if d[i][j] != d[j][i] {
                    return Err(OmError::Asymmetric(elements[i].clone(), elements[j].clone()));
                }
            }
        }
        let m = FiniteMetric { elements, d };
        for (x, y, z) in m.triangle_violations() {
            log::warn!(
                "triangle inequality fails: d({}, {}) > d({}, {}) + d({}, {})",
                m.elements[x],
                m.elements[z],
                m.elements[x],
                m.elements[y],
                m.elements[y],
                m.elements[z]
            );
        }
        Ok(m)
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

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn d(&self, x: usize, y: usize) -> Decimal {
        self.d[x][y]
    }

    /// Triples `(x, y, z)` with `d(x,z) > d(x,y) + d(y,z)`.
    pub fn triangle_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.d[x][z] > self.d[x][y] + self.d[y][z] {
                        out.push((x, y, z));
                    }
                }
            }
        }
        out
    }
}

/// Reads a distance matrix: a header row of names (first cell ignored) and
/// one row per element starting with its name, in the same order.
pub fn parse_distance_csv(text: &str) -> Result<FiniteMetric, OmError> {
    let parse_err = |line: usize, message: String| OmError::Parse { line, message };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| parse_err(line, e.to_string()))?;
        let mut fields = record.iter();
        let name = fields.next().unwrap_or_default();
        if names.get(i).map(String::as_str) != Some(name) {
            return Err(parse_err(
                line,
                format!("row `{name}` does not match column {}", i + 1),
            ));
        }
        let row = fields
            .map(|f| Decimal::from_str(f).map_err(|e| parse_err(line, format!("`{f}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != names.len() {
        return Err(parse_err(
            rows.len() + 2,
            format!("expected {} rows, found {}", names.len(), rows.len()),
        ));
    }
    FiniteMetric::new(names, rows)
}

/// Hausdorff distance with both directed parts:
/// `forward = max_{x in A} d(x, B)` and `backward = max_{y in B} d(y, A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hausdorff {
    pub value: Decimal,
    pub forward: Decimal,
    pub backward: Decimal,
}

fn directed(d: &FiniteMetric, a: &[usize], b: &[usize]) -> Decimal {
    a.iter()
        .map(|&x| b.iter().map(|&y| d.d(x, y)).min().expect("nonempty"))
        .max()
        .expect("nonempty")
}

pub fn hausdorff(d: &FiniteMetric, a: &[usize], b: &[usize]) -> Result<Hausdorff, OmError> {
    if a.is_empty() || b.is_empty() {
        return Err(OmError::EmptySet);
    }
    let forward = directed(d, a, b);
    let backward = directed(d, b, a);
    Ok(Hausdorff {
        value: forward.max(backward),
        forward,
        backward,
    })
}

/// A relation and a metric on the same elements.
#[derive(Clone, Debug)]
pub struct OmSpace {
    relation: Relation,
    metric: FiniteMetric,
}

impl OmSpace {
    pub fn new(relation: Relation, metric: FiniteMetric) -> Result<Self, OmError> {
        if relation.elements() != metric.elements() {
            return Err(OmError::ElementMismatch);
        }
        Ok(OmSpace { relation, metric })
    }

    /// Objects related when they share an attribute. Objects without
    /// attributes relate to nothing, not even themselves.
    pub fn co_incidence(ctx: &FormalContext, metric: FiniteMetric) -> Result<Self, OmError> {
        let metric = reorder(metric, ctx.objects())?;
        let mut rel = Relation::new(ctx.objects().to_vec())?;
        for x in 0..ctx.num_objects() {
            for y in 0..ctx.num_objects() {
                if !ctx.row(x).is_disjoint(ctx.row(y)) {
                    rel.insert(x, y)?;
                }
            }
        }
        OmSpace::new(rel, metric)
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn metric(&self) -> &FiniteMetric {
        &self.metric
    }

    pub fn reflexive_closure(&self) -> OmSpace {
        OmSpace {
            relation: self.relation.reflexive_closure(),
            metric: self.metric.clone(),
        }
    }

    /// `{y | x R y}`.
    pub fn image(&self, x: usize) -> Vec<usize> {
        (0..self.relation.len())
            .filter(|&y| self.relation.contains(x, y))
            .collect()
    }
}

/// The metric restricted and permuted to `names`.
fn reorder(metric: FiniteMetric, names: &[String]) -> Result<FiniteMetric, OmError> {
    if metric.elements() == names {
        return Ok(metric);
    }
    let idx = names
        .iter()
        .map(|n| metric.index_of(n).ok_or_else(|| OmError::UnknownElement(n.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let d = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| metric.d(i, j)).collect())
        .collect();
    FiniteMetric::new(names.to_vec(), d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Distortion {
    pub value: Decimal,
    /// First maximizing pair in row-major order.
    pub witness: (usize, usize),
}

/// `max |d(x, y) - d_H(phi(x), phi(y))|` over all pairs, with
/// `phi(x) = {y | x R y}`.
pub fn relational_distortion(s: &OmSpace) -> Result<Distortion, OmError> {
    let n = s.relation.len();
    let images: Vec<Vec<usize>> = (0..n).map(|x| s.image(x)).collect();
    if let Some(x) = images.iter().position(Vec::is_empty) {
        return Err(OmError::EmptyImage(s.relation.elements()[x].clone()));
    }
    let mut best = Distortion {
        value: Decimal::ZERO,
        witness: (0, 0),
    };
    for x in 0..n {
        for y in 0..n {
            let h = hausdorff(&s.metric, &images[x], &images[y])?.value;
            let gap = (s.metric.d(x, y) - h).abs();
            if gap > best.value {
                best = Distortion {
                    value: gap,
                    witness: (x, y),
                };
            }
        }
    }
    Ok(best)
}

/// Hausdorff distances between attribute extents. Pairs involving an
/// attribute with empty extent are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MediatedMetric {
    pub attributes: Vec<String>,
    pub distances: Vec<Vec<Option<Decimal>>>,
    pub empty_extents: Vec<String>,
}

impl MediatedMetric {
    pub fn get(&self, a: &str, b: &str) -> Option<Decimal> {
        let i = self.attributes.iter().position(|x| x == a)?;
        let j = self.attributes.iter().position(|x| x == b)?;
        self.distances[i][j]
    }

    /// Plain-text table with a header row.
    pub fn to_table(&self) -> String {
        let mut out = String::from("attribute");
        for a in &self.attributes {
            out.push('\t');
            out.push_str(a);
        }
        out.push('\n');
        for (a, row) in self.attributes.iter().zip(&self.distances) {
            out.push_str(a);
            for v in row {
                out.push('\t');
                match v {
                    Some(v) => out.push_str(&v.to_string()),
                    None => out.push('-'),
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn mediated_metric(ctx: &FormalContext, d: &FiniteMetric) -> Result<MediatedMetric, OmError> {
    let d = reorder(d.clone(), ctx.objects())?;
    let extents: Vec<Vec<usize>> = (0..ctx.num_attributes())
        .map(|m| ctx.column(m).iter().collect())
        .collect();
    let empty_extents: Vec<String> = extents
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_empty())
        .map(|(m, _)| ctx.attributes()[m].clone())
        .collect();
    for name in &empty_extents {
        log::warn!("attribute `{name}` has an empty extent");
    }
    let distances = extents
        .iter()
        .map(|a| {
            extents
                .iter()
                .map(|b| hausdorff(&d, a, b).ok().map(|h| h.value))
                .collect()
        })
        .collect();
    Ok(MediatedMetric {
        attributes: ctx.attributes().to_vec(),
        distances,
        empty_extents,
    })
}

/// Objects ranked by how many attributes they have.
pub fn valuation_order(ctx: &FormalContext) -> QuasiOrder {
    let counts: Vec<usize> = ctx.rows().iter().map(BitSet::len).collect();
    QuasiOrder::from_fn(ctx.objects().to_vec(), |g, h| counts[g] <= counts[h])
        .expect("context object names are distinct")
}

/// Pairs `a < b` in `p` that `o` ranks strictly the other way.
pub fn disagreement(p: &Poset, o: &QuasiOrder) -> Result<usize, OmError> {
    if p.elements() != o.elements() {
        return Err(OmError::ElementMismatch);
    }
    Ok(p.strict_pairs()
        .into_iter()
        .filter(|&(a, b)| o.lt(b, a))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{airline_distances, airlines};
    use rust_decimal::prelude::FromPrimitive;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn dec(v: i64) -> Decimal {
        Decimal::from_i64(v).unwrap()
    }

    fn line_metric(points: &[i64]) -> FiniteMetric {
        let names = (0..points.len()).map(|i| format!("p{i}")).collect();
        let d = points
            .iter()
            .map(|a| points.iter().map(|b| dec((a - b).abs())).collect())
            .collect();
        FiniteMetric::new(names, d).unwrap()
    }

    #[test]
    fn hausdorff_basics() {
        let d = line_metric(&[0, 1, 5]);
        assert_eq!(hausdorff(&d, &[0, 2], &[0, 2]).unwrap().value, Decimal::ZERO);
        assert_eq!(hausdorff(&d, &[0], &[2]).unwrap().value, dec(5));
        let h = hausdorff(&d, &[0], &[0, 2]).unwrap();
        assert_eq!((h.forward, h.backward, h.value), (dec(0), dec(5), dec(5)));
        assert_eq!(hausdorff(&d, &[], &[1]), Err(OmError::EmptySet));
    }

    #[test]
    fn csv_rejects_asymmetry() {
        let text = ",a,b\na,0,1\nb,2,0\n";
        assert!(matches!(parse_distance_csv(text), Err(OmError::Asymmetric(..))));
        let text = ",a,b\na,0,1.5\nb,1.5,0\n";
        assert_eq!(parse_distance_csv(text).unwrap().d(0, 1), Decimal::new(15, 1));
        assert!(matches!(
            parse_distance_csv(",a,b\na,0,x\nb,1,0\n"),
            Err(OmError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn triangle_violations_are_reported() {
        let m = FiniteMetric::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![dec(0), dec(1), dec(5)],
                vec![dec(1), dec(0), dec(1)],
                vec![dec(5), dec(1), dec(0)],
            ],
        )
        .unwrap();
        assert!(m.triangle_violations().contains(&(0, 1, 2)));
        assert!(airline_distances().triangle_violations().is_empty());
    }

    #[test]
    fn two_chain_distortion() {
        // a < b at distance 1: phi(a) = {a, b}, phi(b) = {b}.
        let d = line_metric(&[0, 1]);
        let rel = Relation::with_pairs(d.elements().to_vec(), [(0, 0), (0, 1), (1, 1)]).unwrap();
        let s = OmSpace::new(rel, d).unwrap();
        let r = relational_distortion(&s).unwrap();
        // d_H({a,b},{b}) = 1, d(a,b) = 1, so every pair agrees.
        assert_eq!(r.value, Decimal::ZERO);
    }

    #[test]
    fn empty_image_is_an_error() {
        let d = line_metric(&[0, 1]);
        let rel = Relation::with_pairs(d.elements().to_vec(), [(0, 1)]).unwrap();
        let s = OmSpace::new(rel, d).unwrap();
        assert_eq!(relational_distortion(&s), Err(OmError::EmptyImage("p1".into())));
        assert!(relational_distortion(&s.reflexive_closure()).is_ok());
    }

    #[test]
    fn airlines_scandinavian_austrian() {
        let ctx = airlines();
        let m = mediated_metric(&ctx, &airline_distances()).unwrap();
        assert_eq!(m.get("Scandinavian", "Austrian A."), Some(dec(1563)));
        assert!(m.empty_extents.is_empty());
        for a in &m.attributes {
            assert_eq!(m.get(a, a), Some(Decimal::ZERO));
        }
    }

    #[test]
    fn full_columns_are_at_distance_zero() {
        let ctx = FormalContext::from_crosses(names(&["a", "b"]), names(&["m", "n", "e"]), &["XX.", "XX."]).unwrap();
        let m = mediated_metric(&ctx, &line_metric(&[0, 3]).renamed(&["a", "b"])).unwrap();
        assert_eq!(m.get("m", "n"), Some(Decimal::ZERO));
        assert_eq!(m.get("m", "e"), None);
        assert_eq!(m.empty_extents, vec!["e".to_string()]);
    }

    #[test]
    fn valuation_ranks_hamburg_over_leipzig() {
        let ctx = airlines();
        let v = valuation_order(&ctx);
        let h = ctx.object_index("Hamburg").unwrap();
        let l = ctx.object_index("Leipzig/Halle").unwrap();
        assert!(v.lt(l, h));
    }

    #[test]
    fn valuation_of_empty_context_is_one_class() {
        let ctx = FormalContext::from_crosses(names(&["a", "b"]), vec![], &["", ""]).unwrap();
        assert_eq!(valuation_order(&ctx).equivalence_classes().len(), 1);
    }

    #[test]
    fn disagreement_on_a_chain() {
        let p = Poset::chain(vec!["a".into(), "b".into()]).unwrap();
        let same = p.as_quasi_order();
        assert_eq!(disagreement(&p, &same).unwrap(), 0);
        let flipped = p.dual().as_quasi_order();
        assert_eq!(disagreement(&p, &flipped).unwrap(), 1);
    }

    impl FiniteMetric {
        fn renamed(mut self, names: &[&str]) -> FiniteMetric {
            self.elements = names.iter().map(|s| s.to_string()).collect();
            self
        }
    }
}
