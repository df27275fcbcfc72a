use crate::fca::FormalContext;
use crate::registry::Registry;

/// Predicate of a scale attribute on value ranks `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaleOp {
    Eq,
    Ne,
    AtLeast,
    AtMost,
}

impl ScaleOp {
    pub fn holds(self, rank: usize, threshold: usize) -> bool {
        match self {
            ScaleOp::Eq => rank == threshold,
            ScaleOp::Ne => rank != threshold,
            ScaleOp::AtLeast => rank >= threshold,
            ScaleOp::AtMost => rank <= threshold,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ScaleOp::Eq => "=",
            ScaleOp::Ne => "!=",
            ScaleOp::AtLeast => ">=",
            ScaleOp::AtMost => "<=",
        }
    }

    /// The same predicate expressed on values when ranks run against the
    /// natural value order.
    pub fn reversed(self) -> ScaleOp {
        match self {
            ScaleOp::AtLeast => ScaleOp::AtMost,
            ScaleOp::AtMost => ScaleOp::AtLeast,
            other => other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaleAttribute {
    pub op: ScaleOp,
    pub threshold: usize,
}

/// A conceptual scale family: which binary attributes a column with `n`
/// ranked values turns into.
pub trait Scale: Send + Sync {
    fn name(&self) -> &'static str;

    /// Attributes of the full standard scale on `n` values.
    fn standard_attributes(&self, n: usize) -> Vec<ScaleAttribute>;

    /// Attributes emitted when scaling a data column.
    fn column_attributes(&self, n: usize) -> Vec<ScaleAttribute> {
        self.standard_attributes(n)
    }

    /// Whether ranks follow the column's direction; scales that ignore
    /// direction return `false`.
    fn directed(&self) -> bool {
        false
    }

    /// Whether the attributes depend on how the values are ordered, so a
    /// text column needs an explicit value order.
    fn uses_value_order(&self) -> bool {
        self.directed()
    }

    /// The standard scale as a context with objects `1..=n`.
    fn standard(&self, n: usize) -> FormalContext {
        let attrs = self.standard_attributes(n);
        let objects = (1..=n).map(|i| i.to_string()).collect();
        let names = attrs
            .iter()
            .map(|a| format!("{}{}", a.op.symbol(), a.threshold + 1))
            .collect();
        FormalContext::from_fn(objects, names, |g, m| attrs[m].op.holds(g, attrs[m].threshold))
            .expect("scale attribute names are distinct")
    }
}

pub struct Nominal;
pub struct Contranominal;
pub struct Ordinal;
pub struct Interordinal;
pub struct Dichotomic;

impl Scale for Nominal {
    fn name(&self) -> &'static str {
        "nominal"
    }

    fn standard_attributes(&self, n: usize) -> Vec<ScaleAttribute> {
        (0..n)
            .map(|t| ScaleAttribute {
                op: ScaleOp::Eq,
                threshold: t,
            })
            .collect()
    }
}

impl Scale for Dichotomic {
    fn name(&self) -> &'static str {
        "dichotomic"
    }

    fn standard_attributes(&self, n: usize) -> Vec<ScaleAttribute> {
        Nominal.standard_attributes(n)
    }
}

impl Scale for Contranominal {
    fn name(&self) -> &'static str {
        "contranominal"
    }

    fn standard_attributes(&self, n: usize) -> Vec<ScaleAttribute> {
        (0..n)
            .map(|t| ScaleAttribute {
                op: ScaleOp::Ne,
                threshold: t,
            })
            .collect()
    }
}

impl Scale for Ordinal {
    fn name(&self) -> &'static str {
        "ordinal"
    }

    fn standard_attributes(&self, n: usize) -> Vec<ScaleAttribute> {
        (0..n)
            .map(|t| ScaleAttribute {
                op: ScaleOp::AtLeast,
                threshold: t,
            })
            .collect()
    }

    /// `>= 0` holds everywhere and is dropped.
    fn column_attributes(&self, n: usize) -> Vec<ScaleAttribute> {
        self.standard_attributes(n).into_iter().skip(1).collect()
    }

    fn directed(&self) -> bool {
        true
    }
}

impl Scale for Interordinal {
    fn name(&self) -> &'static str {
        "interordinal"
    }

    fn standard_attributes(&self, n: usize) -> Vec<ScaleAttribute> {
        let at_most = (0..n).map(|t| ScaleAttribute {
            op: ScaleOp::AtMost,
            threshold: t,
        });
        let at_least = (0..n).map(|t| ScaleAttribute {
            op: ScaleOp::AtLeast,
            threshold: t,
        });
        at_most.chain(at_least).collect()
    }

    /// `<= n-1` and `>= 0` hold everywhere and are dropped.
    fn column_attributes(&self, n: usize) -> Vec<ScaleAttribute> {
        self.standard_attributes(n)
            .into_iter()
            .filter(|a| !(0..n).all(|r| a.op.holds(r, a.threshold)))
            .collect()
    }

    fn uses_value_order(&self) -> bool {
        true
    }
}

/// Scale families known by name. `linear` is an alias of `ordinal`.
pub fn scale_registry() -> Registry<dyn Scale> {
    let mut r: Registry<dyn Scale> = Registry::new("scale");
    r.register("nominal", Box::new(Nominal));
    r.register("ordinal", Box::new(Ordinal));
    r.register("linear", Box::new(Ordinal));
    r.register("interordinal", Box::new(Interordinal));
    r.register("contranominal", Box::new(Contranominal));
    r.register("dichotomic", Box::new(Dichotomic));
    r
}
