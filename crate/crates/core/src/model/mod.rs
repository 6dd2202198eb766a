//! Goods, valuations, instances and allocations.

pub mod goods;
pub mod instance;
pub mod json;
pub mod valuation;

pub use goods::{GoodSet, MAX_GOODS};
pub use instance::{Allocation, Instance};
pub use json::{parse_allocation, parse_instance, serialize_allocation, serialize_instance};
pub use valuation::{Valuation, ValuationClass, ValuationKind, MAX_TABLE_GOODS};
