//! Maps between g-quasi metric spaces: products, g-uniform continuity,
//! generalized continuity, and transport of a metric along a bijection.

mod pointmap;
mod product;
mod pullback;
mod uniform;

pub use pointmap::{invert, PointMap};
pub use product::{product_table, ProductSpace};
pub use pullback::{pullback_metric, Pullback};
pub use uniform::{
    check_g_uniform_continuity, distance_map_verdict, noncontinuity_witness_distance_map, DeltaProbe,
    DistanceMapWitness, PairViolation, UniformityVerdict,
};

pub use crate::topology::check_generalized_continuity;
