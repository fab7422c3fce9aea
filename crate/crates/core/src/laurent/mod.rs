//! Truncated Laurent series over coefficient rings, including iterated
//! Laurent rings, and the unit presentation of their invertible elements.

mod decompose;
mod nest;
mod series;

pub use decompose::{unit_decompose, UnitDecomposition};
pub use series::{laurent_add, laurent_inv, laurent_mul, reduce_mod_t, valuation, LaurentSeries, EXACT};
pub use nest::{deep_precision, deep_precision_series, deep_truncate, deep_truncate_series, iterated_ring, nest};
