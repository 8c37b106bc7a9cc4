//! Exact verification of g-quasi metric spaces: distances bounded below by an
//! index `r` with equality on the diagonal, the generalized topologies their
//! balls generate, products, g-uniform continuity, and the Cauchy-type
//! sequence classes with the completeness notions built on them.
//!
//! All algorithms are generic over [`Scalar`]; [`Rational`] is the exact
//! instantiation used by the CLI and the test suites.

pub mod error;
pub mod io;
pub mod maps;
pub mod metrics;
pub mod numerics;
pub mod random;
pub mod report;
pub mod reproduce;
pub mod sequences;
pub mod topology;

pub use error::{Error, Result};
pub use metrics::{FiniteSpace, GQuasiMetric, GqmPoint, GqmSpace, LineSpace, TableSpace};
pub use numerics::{IntervalSet, Scalar};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Finite table space over exact rationals.
pub type RationalTable = TableSpace<Rational>;
/// Closed-form line space over exact rationals.
pub type RationalLine = LineSpace<Rational>;
/// Interval sets with exact rational endpoints.
pub type RationalSet = IntervalSet<Rational>;
