use super::{OrderError, Poset, QuasiOrder, Quotient};

/// Several named quasi-orders over one element list, e.g. the columns of a
/// league table each read as a ranking.
#[derive(Clone, Debug)]
pub struct OrdinalStructure {
    elements: Vec<String>,
    orders: Vec<(String, QuasiOrder)>,
}

impl OrdinalStructure {
    pub fn new(elements: Vec<String>, orders: Vec<(String, QuasiOrder)>) -> Result<Self, OrderError> {
        super::poset::check_unique(&elements)?;
        if orders.is_empty() {
            return Err(OrderError::NoOrders);
        }
        if orders.iter().any(|(_, q)| q.elements() != elements.as_slice()) {
            return Err(OrderError::ElementMismatch);
        }
        Ok(OrdinalStructure { elements, orders })
    }

    /// One quasi-order per score column: `a <= b` iff `key(a) <= key(b)`.
    pub fn from_scores<K: PartialOrd>(
        elements: Vec<String>,
        columns: Vec<(String, Vec<K>)>,
    ) -> Result<Self, OrderError> {
        let n = elements.len();
        let mut orders = Vec::with_capacity(columns.len());
        for (name, keys) in columns {
            if keys.len() != n {
                return Err(OrderError::ElementMismatch);
            }
            let q = QuasiOrder::from_fn(elements.clone(), |a, b| keys[a] <= keys[b])?;
            orders.push((name, q));
        }
        OrdinalStructure::new(elements, orders)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn orders(&self) -> &[(String, QuasiOrder)] {
        &self.orders
    }

    /// `a` is below `b` in every component.
    pub fn dominated(&self, a: usize, b: usize) -> bool {
        self.orders.iter().all(|(_, q)| q.leq(a, b))
    }

    /// The domination relation before tie quotienting.
    pub fn domination_quasi_order(&self) -> QuasiOrder {
        QuasiOrder::from_fn(self.elements.clone(), |a, b| self.dominated(a, b))
            .expect("element names were checked at construction")
    }
}

/// Domination order of the direct product of the component orders, with
/// elements tied in every component identified.
pub fn product_order(s: &OrdinalStructure) -> Quotient {
    s.domination_quasi_order().quotient()
}

/// Elements not strictly dominated by any other element.
pub fn pareto_maxima(s: &OrdinalStructure) -> Vec<usize> {
    let n = s.elements().len();
    let q = s.domination_quasi_order();
    (0..n)
        .filter(|&a| !(0..n).any(|b| q.lt(a, b)))
        .collect()
}

/// Like [`product_order`] but tied elements stay distinct and become
/// mutually incomparable twins.
pub fn product_order_without_quotient(s: &OrdinalStructure) -> Poset {
    let q = s.domination_quasi_order();
    Poset::from_fn(s.elements().to_vec(), |a, b| {
        a == b || (q.leq(a, b) && !q.leq(b, a))
    })
    .expect("strict part of a quasi-order plus identity is a partial order")
}

/// `a < b` when `b` is strictly better than `a` in every component.
/// Elements tied in some component are incomparable.
pub fn strict_domination_order(s: &OrdinalStructure) -> Poset {
    Poset::from_fn(s.elements().to_vec(), |a, b| {
        a == b || s.orders().iter().all(|(_, q)| q.lt(a, b))
    })
    .expect("componentwise strict order plus identity is a partial order")
}
