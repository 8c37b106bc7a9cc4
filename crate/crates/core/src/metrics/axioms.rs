use rayon::prelude::*;

use super::{GQuasiMetric, PairClass};
use crate::numerics::Scalar;

/// How a point sample was obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum SampleMode {
    Exhaustive,
    /// A finite grid drawn from an infinite carrier; results are not
    /// universal claims.
    Sampled(String),
}

/// Requested sample for [`super::LineSpace::verify_axioms`] and friends.
#[derive(Clone, Debug, PartialEq)]
pub enum Sample<S> {
    Exhaustive,
    Grid(super::Grid<S>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coverage {
    pub mode: SampleMode,
    pub points: usize,
    pub pairs: u64,
    pub triples: u64,
}

/// Which branch of the piecewise triangle argument a triple falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleCase {
    /// `|x − y| <= r`: follows from the index bound alone.
    Close,
    /// `z` coincides with `x` or `y`.
    Degenerate,
    BothFar,
    BothNear,
    FarThenNear,
    NearThenFar,
}

impl TriangleCase {
    pub const ALL: [TriangleCase; 6] = [
        TriangleCase::Close,
        TriangleCase::Degenerate,
        TriangleCase::BothFar,
        TriangleCase::BothNear,
        TriangleCase::FarThenNear,
        TriangleCase::NearThenFar,
    ];

    pub fn classify(xy: PairClass, xz: PairClass, zy: PairClass) -> Self {
        use PairClass::*;
        match (xy, xz, zy) {
            (Same | Near, _, _) => TriangleCase::Close,
            (Far, Same, _) | (Far, _, Same) => TriangleCase::Degenerate,
            (Far, Far, Far) => TriangleCase::BothFar,
            (Far, Near, Near) => TriangleCase::BothNear,
            (Far, Far, Near) => TriangleCase::FarThenNear,
            (Far, Near, Far) => TriangleCase::NearThenFar,
        }
    }

    pub fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            TriangleCase::Close => "close",
            TriangleCase::Degenerate => "degenerate",
            TriangleCase::BothFar => "both-far",
            TriangleCase::BothNear => "both-near",
            TriangleCase::FarThenNear => "far-then-near",
            TriangleCase::NearThenFar => "near-then-far",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AxiomFailure<P, S> {
    /// `d(x, y) < index`, or equality off the diagonal, or a diagonal value
    /// different from the index.
    Index { x: P, y: P, distance: S },
    /// `d(x, y) > d(x, z) + d(z, y)`.
    Triangle { x: P, y: P, z: P, direct: S, detour: S },
}

impl<P: Clone + PartialEq, S: Scalar> AxiomFailure<P, S> {
    /// Re-evaluates the witness against the space.
    pub fn reverify<M: GQuasiMetric<S, Point = P>>(&self, space: &M) -> bool {
        match self {
            AxiomFailure::Index { x, y, .. } => {
                let d = space.dist(x, y);
                let r = space.index();
                if x == y {
                    d != r
                } else {
                    d <= r
                }
            }
            AxiomFailure::Triangle { x, y, z, .. } => space.dist(x, y) > space.dist(x, z) + space.dist(z, y),
        }
    }

    pub fn describe<M: GQuasiMetric<S, Point = P>>(&self, space: &M) -> String {
        let p = |q: &P| space.render_point(q);
        match self {
            AxiomFailure::Index { x, y, distance } => format!(
                "axiom (a) fails at ({}, {}): d = {} against index {}",
                p(x),
                p(y),
                distance.render(),
                space.index().render()
            ),
            AxiomFailure::Triangle {
                x,
                y,
                z,
                direct,
                detour,
            } => format!(
                "axiom (b) fails at ({}, {}, {}): d(x,y) = {} > d(x,z) + d(z,y) = {}",
                p(x),
                p(y),
                p(z),
                direct.render(),
                detour.render()
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<P, S> {
    pub holds: bool,
    pub failure: Option<AxiomFailure<P, S>>,
    pub symmetric: bool,
    pub asymmetry: Option<(P, P)>,
    pub coverage: Coverage,
    /// Per-case triple counts, indexed by [`TriangleCase::slot`]; present for
    /// spaces that classify pairs.
    pub cases: Option<[u64; 6]>,
}

impl<P, S> AxiomReport<P, S> {
    /// Whether every non-trivial triangle case occurred in the sample.
    pub fn all_cases_exercised(&self) -> bool {
        self.cases.is_some_and(|c| c[1..].iter().all(|&n| n > 0))
    }
}

/// Checks both axioms over every pair and triple of `points`.
///
/// `points` must be distinct carrier points.
pub fn check_axioms<S: Scalar, M: GQuasiMetric<S>>(
    space: &M,
    points: &[M::Point],
    mode: SampleMode,
) -> AxiomReport<M::Point, S> {
    let n = points.len();
    let index = space.index();
    let table: Vec<Vec<S>> = points
        .par_iter()
        .map(|x| points.iter().map(|y| space.dist(x, y)).collect())
        .collect();

    let index_failure = (0..n).find_map(|i| {
        (0..n).find_map(|j| {
            let d = &table[i][j];
            let ok = if i == j { *d == index } else { *d > index };
            (!ok).then(|| AxiomFailure::Index {
                x: points[i].clone(),
                y: points[j].clone(),
                distance: d.clone(),
            })
        })
    });

    let triangle_failure = if index_failure.is_some() {
        None
    } else {
        (0..n).into_par_iter().find_map_first(|i| {
            let row = &table[i];
            for j in 0..n {
                let direct = &row[j];
                for k in 0..n {
                    let detour = row[k].clone() + table[k][j].clone();
                    if *direct > detour {
                        return Some(AxiomFailure::Triangle {
                            x: points[i].clone(),
                            y: points[j].clone(),
                            z: points[k].clone(),
                            direct: direct.clone(),
                            detour,
                        });
                    }
                }
            }
            None
        })
    };

    let asymmetry = (0..n).find_map(|i| {
        (i + 1..n)
            .find(|&j| table[i][j] != table[j][i])
            .map(|j| (points[i].clone(), points[j].clone()))
    });

    let cases = case_counts(space, points);
    let failure = index_failure.or(triangle_failure);
    AxiomReport {
        holds: failure.is_none(),
        failure,
        symmetric: asymmetry.is_none(),
        asymmetry,
        coverage: Coverage {
            mode,
            points: n,
            pairs: (n * n) as u64,
            triples: (n as u64).pow(3),
        },
        cases,
    }
}

fn case_counts<S: Scalar, M: GQuasiMetric<S>>(space: &M, points: &[M::Point]) -> Option<[u64; 6]> {
    let n = points.len();
    let mut classes = Vec::with_capacity(n * n);
    for x in points {
        for y in points {
            classes.push(space.pair_class(x, y)?);
        }
    }
    let mut counts = [0u64; 6];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let case = TriangleCase::classify(classes[i * n + j], classes[i * n + k], classes[k * n + j]);
                counts[case.slot()] += 1;
            }
        }
    }
    Some(counts)
}
