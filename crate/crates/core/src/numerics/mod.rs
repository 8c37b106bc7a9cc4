//! Exact scalars and the interval-set algebra used for balls on the line.

mod interval;
mod scalar;

pub use interval::{Bound, Extent, IntervalSet, OpenInterval};
pub use scalar::{is_integral, pow, Scalar};
