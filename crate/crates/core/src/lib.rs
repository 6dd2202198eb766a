//! Exact fair division of indivisible goods.
//!
//! The crate decides envy-based (EF, EF1, EFX), share-based (PROP, MMS) and
//! maximin-aware (MMA, MMA1, MMAX, EEF) fairness notions exactly, computes
//! maximin, leximin and minimax partitions, and implements two constructive
//! allocation procedures: a divide-and-choose scheme for three additive
//! agents and a matching-based round procedure with envy-cycle elimination.
//!
//! Everything is generic over [`Scalar`]; the aliases below fix the scalar to
//! arbitrary-precision rationals, which is what the harness, fixtures and
//! CLI use.

pub mod algorithms;
pub mod error;
pub mod fairness;
pub mod harness;
pub mod model;
pub mod partition;
pub mod scalar;

pub use error::{Error, Result};
pub use fairness::Notion;
pub use model::{Allocation, GoodSet};
pub use partition::SearchBudget;
pub use scalar::Scalar;

/// Arbitrary-precision rational; the default scalar.
pub type Rational = num_rational::BigRational;

pub type Valuation = model::Valuation<Rational>;
pub type Instance = model::Instance<Rational>;
pub type PartitionResult = partition::PartitionResult<Rational>;
pub type FairnessReport = fairness::FairnessReport<Rational>;
pub type AllocationRun = algorithms::AllocationRun<Rational>;

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a [`Rational`].
pub fn rational(text: &str) -> Result<Rational> {
    text.trim().parse().map_err(|_| Error::Parse {
        path: String::new(),
        message: format!("cannot parse {text:?} as a rational"),
    })
}

/// `numer / denom` as a [`Rational`].
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
