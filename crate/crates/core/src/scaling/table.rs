use std::cmp::Ordering;

use super::ScalingError;

/// One named column of raw cell strings.
#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    pub name: String,
    pub cells: Vec<String>,
    numbers: Option<Vec<f64>>,
}

impl Column {
    pub fn new(name: impl Into<String>, cells: Vec<String>) -> Self {
        let numbers = if cells.is_empty() {
            None
        } else {
            cells.iter().map(|c| parse_number(c)).collect()
        };
        Column {
            name: name.into(),
            cells,
            numbers,
        }
    }

    /// Every cell parses as a finite decimal.
    pub fn is_numeric(&self) -> bool {
        self.numbers.is_some()
    }

    pub fn number(&self, row: usize) -> Option<f64> {
        self.numbers.as_ref().map(|n| n[row])
    }

    /// Compares two cells numerically when the column is numeric.
    pub(crate) fn compare_cells(&self, a: &str, b: &str) -> Ordering {
        match (self.is_numeric(), parse_number(a), parse_number(b)) {
            (true, Some(x), Some(y)) => x.total_cmp(&y),
            _ => a.cmp(b),
        }
    }

    pub(crate) fn same_value(&self, a: &str, b: &str) -> bool {
        self.compare_cells(a, b) == Ordering::Equal
    }
}

fn parse_number(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Rows are objects, columns carry strings or numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct ManyValuedTable {
    objects: Vec<String>,
    columns: Vec<Column>,
}

impl ManyValuedTable {
    pub fn new(objects: Vec<String>, columns: Vec<Column>) -> Result<Self, ScalingError> {
        let mut seen = std::collections::BTreeSet::new();
        for o in &objects {
            if !seen.insert(o) {
                return Err(ScalingError::DuplicateName(o.clone()));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in &columns {
            if !seen.insert(&c.name) {
                return Err(ScalingError::DuplicateName(c.name.clone()));
            }
            if c.cells.len() != objects.len() {
                return Err(ScalingError::Ragged(c.name.clone()));
            }
        }
        Ok(ManyValuedTable { objects, columns })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }
}

/// Reads a CSV table: the header names the columns (its first cell is the
/// row-name column and is ignored) and each record starts with the row name.
pub fn parse_table_csv(text: &str) -> Result<ManyValuedTable, ScalingError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| ScalingError::Csv(e.to_string()))?
        .clone();
    let names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let mut objects = Vec::new();
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); names.len()];
    for record in reader.records() {
        let record = record.map_err(|e| ScalingError::Csv(e.to_string()))?;
        let mut fields = record.iter();
        objects.push(fields.next().unwrap_or_default().to_string());
        for (col, value) in cells.iter_mut().zip(fields) {
            col.push(value.to_string());
        }
    }
    let columns = names
        .into_iter()
        .zip(cells)
        .map(|(n, c)| Column::new(n, c))
        .collect();
    ManyValuedTable::new(objects, columns)
}
