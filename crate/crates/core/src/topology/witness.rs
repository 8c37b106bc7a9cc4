use crate::error::{Error, Result};
use crate::metrics::{BallShape, GQuasiMetric, LineSpace};
use crate::numerics::{Extent, IntervalSet, Scalar};

/// Extent lower bound for one nonempty ball shape of the piecewise rule.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeBound<S> {
    pub shape: BallShape,
    /// Radii of this shape satisfy `radius > radius_above`.
    pub radius_above: S,
    /// Every ball of this shape has extent `2·radius > extent_above`.
    pub extent_above: S,
    /// The closed form `extent = 2·radius` matched on every probe ball, and
    /// each probe's interval form matched brute-force membership.
    pub probes_ok: bool,
}

/// Every nonempty piecewise ball has extent strictly above `target`, so no
/// such ball fits inside a set of extent `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtentLemma<S> {
    pub target: S,
    pub bounds: Vec<ShapeBound<S>>,
}

impl<S: Scalar> ExtentLemma<S> {
    pub fn holds(&self) -> bool {
        self.bounds
            .iter()
            .all(|b| b.probes_ok && b.extent_above >= self.target)
    }
}

/// Falsification search over a finite family of balls.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSearch<S> {
    pub candidates: usize,
    pub nonempty: usize,
    /// `(center, radius)` of nonempty balls found inside the target set.
    pub contained: Vec<(S, S)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NotTopologyWitness<S> {
    pub r: S,
    /// `(center, radius, ball)`.
    pub ball_a: (S, S, IntervalSet<S>),
    pub ball_b: (S, S, IntervalSet<S>),
    pub intersection: IntervalSet<S>,
    pub expected: IntervalSet<S>,
    pub extent: Extent<S>,
    pub lemma: ExtentLemma<S>,
    pub search: GridSearch<S>,
}

impl<S: Scalar> NotTopologyWitness<S> {
    pub fn intersection_matches(&self) -> bool {
        self.intersection == self.expected
    }

    pub fn extent_is_r(&self) -> bool {
        self.extent == Extent::Finite(self.r.clone())
    }

    /// Recomputes both balls and their intersection from scratch.
    pub fn reverify(&self) -> bool {
        let Ok(space) = LineSpace::piecewise(self.r.clone()) else {
            return false;
        };
        let again = |(c, p, _): &(S, S, IntervalSet<S>)| space.ball(c, p).ok();
        match (again(&self.ball_a), again(&self.ball_b)) {
            (Some(a), Some(b)) => a.intersect(&b) == self.expected,
            _ => false,
        }
    }

    pub fn holds(&self) -> bool {
        self.intersection_matches()
            && self.extent_is_r()
            && self.lemma.holds()
            && self.search.contained.is_empty()
            && self.reverify()
    }
}

/// Two open balls of the piecewise space whose intersection contains no
/// nonempty ball, so the induced family is not closed under intersection.
pub fn not_topology_witness_piecewise<S: Scalar>(r: &S) -> Result<NotTopologyWitness<S>> {
    if *r <= S::zero() {
        return Err(Error::NonPositiveR(r.render()));
    }
    let space = LineSpace::piecewise(r.clone())?;
    let tenth = r.clone() / S::from_int(10);
    let radius = r.clone() + r.clone() + tenth.clone();
    let center_b = r.clone() * S::ratio(21, 5);
    let a = space.ball(r, &radius)?;
    let b = space.ball(&center_b, &radius)?;
    let intersection = a.intersect(&b);
    let lo = r.clone() * S::ratio(21, 10);
    let expected = IntervalSet::open(lo.clone(), lo + r.clone());
    let extent = intersection.extent();
    let lemma = extent_lemma(&space, r)?;
    let search = grid_search(&space, r, &intersection)?;
    Ok(NotTopologyWitness {
        r: r.clone(),
        ball_a: (r.clone(), radius.clone(), a),
        ball_b: (center_b, radius, b),
        intersection,
        expected,
        extent,
        lemma,
        search,
    })
}

fn extent_lemma<S: Scalar>(space: &LineSpace<S>, r: &S) -> Result<ExtentLemma<S>> {
    let two_r = r.clone() + r.clone();
    let frac = |n, d| r.clone() * S::ratio(n, d);
    let shapes = [
        (
            BallShape::Split,
            r.clone(),
            vec![frac(11, 10), frac(3, 2), two_r.clone()],
        ),
        (
            BallShape::Solid,
            two_r.clone(),
            vec![frac(21, 10), frac(3, 1), frac(5, 1)],
        ),
    ];
    let mut bounds = Vec::new();
    for (shape, radius_above, probes) in shapes {
        let mut probes_ok = true;
        for p in &probes {
            probes_ok &= BallShape::classify(r, p) == shape;
            for c in [S::zero(), frac(-7, 3), frac(5, 2)] {
                let ball = space.ball(&c, p)?;
                probes_ok &= ball.extent() == Extent::Finite(p.clone() + p.clone());
                probes_ok &= membership_agrees(space, &c, p, &ball);
            }
        }
        bounds.push(ShapeBound {
            shape,
            extent_above: radius_above.clone() + radius_above.clone(),
            radius_above,
            probes_ok,
        });
    }
    Ok(ExtentLemma {
        target: r.clone(),
        bounds,
    })
}

/// Compares interval membership against direct distance evaluation at
/// boundary points and points just inside and outside them.
fn membership_agrees<S: Scalar>(space: &LineSpace<S>, c: &S, p: &S, ball: &IntervalSet<S>) -> bool {
    let r = space.index();
    let eps = r.clone() / S::from_int(1000);
    let marks = [
        c.clone() - p.clone(),
        c.clone() - r.clone(),
        c.clone(),
        c.clone() + r.clone(),
        c.clone() + p.clone(),
    ];
    marks.iter().all(|m| {
        [m.clone() - eps.clone(), m.clone(), m.clone() + eps.clone()]
            .iter()
            .all(|y| ball.contains(y) == (space.dist(c, y) < *p))
    })
}

fn grid_search<S: Scalar>(space: &LineSpace<S>, r: &S, target: &IntervalSet<S>) -> Result<GridSearch<S>> {
    let step = r.clone() / S::from_int(10);
    let mut centers = Vec::new();
    let mut c = -(r.clone() * S::from_int(5));
    let hi = r.clone() * S::from_int(5);
    while c <= hi {
        centers.push(c.clone());
        c = c + step.clone();
    }
    let radii: Vec<S> = (1..=50).map(|k| step.clone() * S::from_int(k)).collect();
    let mut search = GridSearch {
        candidates: 0,
        nonempty: 0,
        contained: Vec::new(),
    };
    for c in &centers {
        for p in &radii {
            search.candidates += 1;
            let ball = space.ball(c, p)?;
            if ball.is_empty() {
                continue;
            }
            search.nonempty += 1;
            if ball.is_subset(target) {
                search.contained.push((c.clone(), p.clone()));
            }
        }
    }
    Ok(search)
}
