//! Ordinal data science toolkit: formal concept analysis, finite orders,
//! order dimension, ordinal factorization, ordered metric spaces and
//! order-diagram layout.

pub mod bitset;
pub mod completion;
pub mod datasets;
pub mod dimension;
pub mod factors;
pub mod fca;
pub mod layout;
pub mod omspace;
pub mod order;
pub mod registry;
pub mod scaling;
