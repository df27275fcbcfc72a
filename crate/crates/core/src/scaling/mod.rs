//! Conceptual scaling: many-valued tables to formal contexts.

mod scales;
mod table;

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::fca::FormalContext;
use crate::order::{OrdinalStructure, QuasiOrder};

pub use scales::{
    scale_registry, Contranominal, Dichotomic, Interordinal, Nominal, Ordinal, Scale,
    ScaleAttribute, ScaleOp,
};
pub use table::{parse_table_csv, Column, ManyValuedTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalingError {
    #[error("no scale specified for column `{0}`")]
    MissingSpec(String),
    #[error("scale specified for unknown column `{0}`")]
    UnknownColumn(String),
    #[error("column `{column}`: value `{value}` is missing from the value order")]
    UnknownValue { column: String, value: String },
    #[error("column `{0}` holds text and needs an explicit value order")]
    MissingValueOrder(String),
    #[error("column `{column}` has {count} distinct values; a dichotomic scale allows at most 2")]
    NotDichotomic { column: String, count: usize },
    #[error("unsupported scale kind `{0}`")]
    UnsupportedKind(String),
    #[error("a standard scale needs at least one value")]
    EmptyScale,
    #[error("no ordinal columns to order by")]
    NoOrdinalColumns,
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("column `{0}` does not have one cell per row")]
    Ragged(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error("scaling config: {0}")]
    Config(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Larger values are better.
    #[default]
    Ascending,
    /// Smaller values are better.
    Descending,
}

/// How one column is scaled. `kind` is a registered scale name or `ignore`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleSpec {
    pub kind: String,
    pub direction: Direction,
    /// Value order from low to high; required for text columns scaled
    /// ordinally.
    pub values: Option<Vec<String>>,
}

impl ScaleSpec {
    pub fn new(kind: &str, direction: Direction) -> Self {
        ScaleSpec {
            kind: kind.to_string(),
            direction,
            values: None,
        }
    }

    pub fn is_ignored(&self) -> bool {
        self.kind == "ignore"
    }
}

#[derive(Deserialize)]
struct RawSpec {
    kind: String,
    #[serde(default)]
    direction: Direction,
    values: Option<Vec<serde_json::Value>>,
}

/// Column name to scale, e.g. `{"W": {"kind": "ordinal", "direction": "ascending"}}`.
pub type ScalingConfig = BTreeMap<String, ScaleSpec>;

pub fn parse_scaling_config(text: &str) -> Result<ScalingConfig, ScalingError> {
    let raw: BTreeMap<String, RawSpec> =
        serde_json::from_str(text).map_err(|e| ScalingError::Config(e.to_string()))?;
    Ok(raw
        .into_iter()
        .map(|(col, spec)| {
            let values = spec.values.map(|vs| {
                vs.into_iter()
                    .map(|v| match v {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    })
                    .collect()
            });
            (
                col,
                ScaleSpec {
                    kind: spec.kind,
                    direction: spec.direction,
                    values,
                },
            )
        })
        .collect())
}

/// A standard scale by name: nominal, ordinal (alias linear),
/// interordinal, contranominal or dichotomic.
pub fn standard_scale(kind: &str, n: usize) -> Result<FormalContext, ScalingError> {
    let registry = scale_registry();
    let scale = registry
        .get(kind)
        .map_err(|_| ScalingError::UnsupportedKind(kind.to_string()))?;
    if n == 0 {
        return Err(ScalingError::EmptyScale);
    }
    Ok(scale.standard(n))
}

/// Distinct observed values of `column` from weakest to strongest.
fn ranked_values(
    column: &Column,
    spec: &ScaleSpec,
    directed: bool,
    needs_order: bool,
) -> Result<Vec<String>, ScalingError> {
    let mut distinct: Vec<&String> = Vec::new();
    for cell in &column.cells {
        if !distinct.iter().any(|d| column.same_value(d, cell)) {
            distinct.push(cell);
        }
    }
    let mut ordered: Vec<String> = match &spec.values {
        Some(order) => {
            let position = |v: &str| {
                order
                    .iter()
                    .position(|o| o == v || column.same_value(o, v) && column.is_numeric())
            };
            let mut keyed = Vec::with_capacity(distinct.len());
            for v in distinct {
                let p = position(v).ok_or_else(|| ScalingError::UnknownValue {
                    column: column.name.clone(),
                    value: v.clone(),
                })?;
                keyed.push((p, v.clone()));
            }
            keyed.sort();
            keyed.into_iter().map(|(_, v)| v).collect()
        }
        None => {
            if needs_order && !column.is_numeric() && !distinct.is_empty() {
                return Err(ScalingError::MissingValueOrder(column.name.clone()));
            }
            let mut v: Vec<String> = distinct.into_iter().cloned().collect();
            v.sort_by(|a, b| column.compare_cells(a, b));
            v
        }
    };
    if directed && spec.direction == Direction::Descending {
        ordered.reverse();
    }
    Ok(ordered)
}

fn rank_of(column: &Column, values: &[String], cell: &str) -> usize {
    values
        .iter()
        .position(|v| column.same_value(v, cell))
        .expect("every cell value was ranked")
}

fn check_config(table: &ManyValuedTable, config: &ScalingConfig) -> Result<(), ScalingError> {
    for name in config.keys() {
        if table.column(name).is_none() {
            return Err(ScalingError::UnknownColumn(name.clone()));
        }
    }
    for column in table.columns() {
        if !config.contains_key(&column.name) {
            return Err(ScalingError::MissingSpec(column.name.clone()));
        }
    }
    Ok(())
}

/// Derived context: attributes `column:op:value` in column order, then
/// value order.
pub fn apply_scaling(
    table: &ManyValuedTable,
    config: &ScalingConfig,
) -> Result<FormalContext, ScalingError> {
    check_config(table, config)?;
    let registry = scale_registry();
    let mut names = Vec::new();
    // (column index, ranks per row, attribute)
    let mut attrs: Vec<(Vec<usize>, ScaleAttribute)> = Vec::new();
    for column in table.columns() {
        let spec = &config[&column.name];
        if spec.is_ignored() {
            continue;
        }
        let scale = registry
            .get(&spec.kind)
            .map_err(|_| ScalingError::UnsupportedKind(spec.kind.clone()))?;
        let directed = scale.directed();
        let values = ranked_values(column, spec, directed, scale.uses_value_order())?;
        if scale.name() == "dichotomic" && values.len() > 2 {
            return Err(ScalingError::NotDichotomic {
                column: column.name.clone(),
                count: values.len(),
            });
        }
        let ranks: Vec<usize> = column
            .cells
            .iter()
            .map(|c| rank_of(column, &values, c))
            .collect();
        let flip = directed && spec.direction == Direction::Descending;
        for a in scale.column_attributes(values.len()) {
            let op = if flip { a.op.reversed() } else { a.op };
            names.push(format!("{}:{}:{}", column.name, op.symbol(), values[a.threshold]));
            attrs.push((ranks.clone(), a));
        }
    }
    FormalContext::from_fn(table.objects().to_vec(), names, |g, m| {
        let (ranks, a) = &attrs[m];
        a.op.holds(ranks[g], a.threshold)
    })
    .map_err(|e| ScalingError::Config(e.to_string()))
}

/// One quasi-order per ordinally scaled column, ranking rows by the
/// column's direction.
pub fn ordinal_structure(
    table: &ManyValuedTable,
    config: &ScalingConfig,
) -> Result<OrdinalStructure, ScalingError> {
    check_config(table, config)?;
    let registry = scale_registry();
    let mut orders = Vec::new();
    for column in table.columns() {
        let spec = &config[&column.name];
        if spec.is_ignored() {
            continue;
        }
        let scale = registry
            .get(&spec.kind)
            .map_err(|_| ScalingError::UnsupportedKind(spec.kind.clone()))?;
        if !scale.directed() {
            continue;
        }
        let values = ranked_values(column, spec, true, true)?;
        let ranks: Vec<usize> = column
            .cells
            .iter()
            .map(|c| rank_of(column, &values, c))
            .collect();
        let q = QuasiOrder::from_fn(table.objects().to_vec(), |a, b| ranks[a] <= ranks[b])
            .map_err(|e| ScalingError::Config(e.to_string()))?;
        orders.push((column.name.clone(), q));
    }
    if orders.is_empty() {
        return Err(ScalingError::NoOrdinalColumns);
    }
    OrdinalStructure::new(table.objects().to_vec(), orders)
        .map_err(|e| ScalingError::Config(e.to_string()))
}
