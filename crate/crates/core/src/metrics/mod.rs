//! g-quasi metric spaces: a distance `d` with an index `r >= 0` such that
//! `d(x, y) >= r` with equality exactly on the diagonal, and the triangle
//! inequality holds. Symmetry is not required.

mod axioms;
mod line;
mod table;

use std::fmt::Debug;

pub use axioms::{check_axioms, AxiomFailure, AxiomReport, Coverage, Sample, SampleMode, TriangleCase};
pub use line::{piecewise_case_analysis, BallShape, CaseAnalysis, Grid, LineCarrier, LineRule, LineSpace};
pub use table::TableSpace;

use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// A g-quasi metric on some carrier.
pub trait GQuasiMetric<S: Scalar>: Sync {
    type Point: Clone + Debug + PartialEq + Send + Sync;

    /// The index `r`; `d(x, x) = r` for every point.
    fn index(&self) -> S;

    fn contains(&self, p: &Self::Point) -> bool;

    /// Distance of two carrier points. Callers guarantee membership.
    fn dist(&self, x: &Self::Point, y: &Self::Point) -> S;

    fn render_point(&self, p: &Self::Point) -> String;

    /// Membership-checked distance.
    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Result<S> {
        for p in [x, y] {
            if !self.contains(p) {
                return Err(Error::PointOutsideCarrier(self.render_point(p)));
            }
        }
        Ok(self.dist(x, y))
    }

    /// Classifies a pair for triangle-case bookkeeping; only the piecewise
    /// line rule reports classes.
    fn pair_class(&self, _x: &Self::Point, _y: &Self::Point) -> Option<PairClass> {
        None
    }
}

/// Position of `|x − y|` relative to the piecewise threshold `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairClass {
    Same,
    Near,
    Far,
}

/// A space whose carrier can be enumerated.
pub trait FiniteSpace<S: Scalar>: GQuasiMetric<S> {
    fn points(&self) -> Vec<Self::Point>;

    fn len(&self) -> usize {
        self.points().len()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Points `y` with `d(center, y) < radius`, in carrier order.
pub fn finite_ball<S: Scalar, M: FiniteSpace<S>>(
    space: &M,
    center: &M::Point,
    radius: &S,
) -> Result<Vec<M::Point>> {
    if !space.contains(center) {
        return Err(Error::PointOutsideCarrier(space.render_point(center)));
    }
    if *radius <= S::zero() {
        return Err(Error::NonPositiveRadius(radius.render()));
    }
    Ok(space
        .points()
        .into_iter()
        .filter(|y| space.dist(center, y) < *radius)
        .collect())
}

/// Sorted distinct distance values over all ordered pairs.
pub fn distance_values<S: Scalar, M: FiniteSpace<S>>(space: &M) -> Vec<S> {
    let pts = space.points();
    let mut values: Vec<S> = pts
        .iter()
        .flat_map(|x| pts.iter().map(move |y| (x, y)))
        .map(|(x, y)| space.dist(x, y))
        .collect();
    sort_dedup(&mut values);
    values
}

pub(crate) fn sort_dedup<S: Scalar>(values: &mut Vec<S>) {
    values.sort_by(|a, b| a.partial_cmp(b).expect("comparable scalars"));
    values.dedup();
}

/// A space read from a description file: either a finite table or a
/// closed-form rule on the line.
#[derive(Clone, Debug, PartialEq)]
pub enum GqmSpace<S> {
    Table(TableSpace<S>),
    Line(LineSpace<S>),
}

impl<S: Scalar> GqmSpace<S> {
    pub fn index(&self) -> S {
        match self {
            GqmSpace::Table(t) => t.index(),
            GqmSpace::Line(l) => l.index(),
        }
    }

    pub fn as_table(&self) -> Result<&TableSpace<S>> {
        match self {
            GqmSpace::Table(t) => Ok(t),
            GqmSpace::Line(_) => Err(Error::InfiniteCarrier),
        }
    }

    /// Distance between points named as text (labels or rationals).
    pub fn eval_text(&self, x: &str, y: &str) -> Result<S> {
        match self {
            GqmSpace::Table(t) => t.distance(&t.resolve(x)?, &t.resolve(y)?),
            GqmSpace::Line(l) => {
                let parse =
                    |s: &str| S::parse_exact(s).ok_or_else(|| Error::PointOutsideCarrier(s.to_string()));
                l.distance(&parse(x)?, &parse(y)?)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GqmSpace::Table(t) => format!("table space on {} points", t.len()),
            GqmSpace::Line(l) => l.describe(),
        }
    }

    /// Resolves a textual point: a label for tables, a rational otherwise.
    pub fn parse_point(&self, text: &str) -> Result<GqmPoint<S>> {
        let point = match self {
            GqmSpace::Table(t) => GqmPoint::Label(t.resolve(text)?),
            GqmSpace::Line(_) => GqmPoint::Real(
                S::parse_exact(text).ok_or_else(|| Error::PointOutsideCarrier(text.to_string()))?,
            ),
        };
        if !self.contains(&point) {
            return Err(Error::PointOutsideCarrier(text.to_string()));
        }
        Ok(point)
    }
}

/// Point of a [`GqmSpace`]: a table index or a rational on the line.
#[derive(Clone, Debug, PartialEq)]
pub enum GqmPoint<S> {
    Label(usize),
    Real(S),
}

impl<S: Scalar> GQuasiMetric<S> for GqmSpace<S> {
    type Point = GqmPoint<S>;

    fn index(&self) -> S {
        GqmSpace::index(self)
    }

    fn contains(&self, p: &GqmPoint<S>) -> bool {
        match (self, p) {
            (GqmSpace::Table(t), GqmPoint::Label(i)) => t.contains(i),
            (GqmSpace::Line(l), GqmPoint::Real(x)) => l.contains(x),
            _ => false,
        }
    }

    fn dist(&self, x: &GqmPoint<S>, y: &GqmPoint<S>) -> S {
        match (self, x, y) {
            (GqmSpace::Table(t), GqmPoint::Label(i), GqmPoint::Label(j)) => t.dist(i, j),
            (GqmSpace::Line(l), GqmPoint::Real(a), GqmPoint::Real(b)) => l.dist(a, b),
            _ => panic!("point kind does not match the space"),
        }
    }

    fn render_point(&self, p: &GqmPoint<S>) -> String {
        match (self, p) {
            (GqmSpace::Table(t), GqmPoint::Label(i)) => t.render_point(i),
            (_, GqmPoint::Label(i)) => format!("#{i}"),
            (_, GqmPoint::Real(x)) => x.render(),
        }
    }

    fn pair_class(&self, x: &GqmPoint<S>, y: &GqmPoint<S>) -> Option<PairClass> {
        match (self, x, y) {
            (GqmSpace::Line(l), GqmPoint::Real(a), GqmPoint::Real(b)) => l.pair_class(a, b),
            _ => None,
        }
    }
}
