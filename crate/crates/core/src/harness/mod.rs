//! Fixtures, random instance streams and claim verification.

pub mod catalog;
pub mod generate;
pub mod verify;

pub use catalog::{fixture_instances, InstanceCatalogEntry};
pub use generate::{generate_instance, TrialConfig, ValuationFamily};
pub use verify::{claims, verify_claim, verify_egalitarian_bounds, verify_implication, Claim, ClaimReport, Condition};
