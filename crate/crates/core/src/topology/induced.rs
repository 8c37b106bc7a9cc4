use super::{generate_gt, GenTopology, PointSet};
use crate::error::Result;
use crate::metrics::{distance_values, FiniteSpace};
use crate::numerics::Scalar;

/// Radii at which ball membership can change: every distinct distance value,
/// the midpoint between the index and the next value, and one value above the
/// maximum.
pub fn ball_radii<S: Scalar, M: FiniteSpace<S>>(space: &M) -> Vec<S> {
    let values = distance_values(space);
    let mut radii: Vec<S> = values.iter().filter(|v| **v > S::zero()).cloned().collect();
    let index = space.index();
    match values.get(1) {
        Some(next) => radii.push(S::midpoint(&index, next)),
        None => radii.push(index.clone() + S::one()),
    }
    if let Some(max) = values.last() {
        radii.push(max.clone() + S::one());
    }
    crate::metrics::sort_dedup(&mut radii);
    radii.retain(|p| *p > S::zero());
    radii
}

/// Generalized topology generated by all open balls of a finite space.
pub fn induced_gt<S: Scalar, M: FiniteSpace<S>>(space: &M) -> Result<GenTopology> {
    let points = space.points();
    let ground: Vec<String> = points.iter().map(|p| space.render_point(p)).collect();
    let radii = ball_radii(space);
    let mut base = vec![PointSet::EMPTY];
    for x in &points {
        for p in &radii {
            base.push(PointSet::from_indices(
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| space.dist(x, y) < *p)
                    .map(|(i, _)| i),
            ));
        }
    }
    generate_gt(ground, &base)
}
