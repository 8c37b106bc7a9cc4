use super::{check_axioms, AxiomReport, GQuasiMetric, PairClass, Sample, SampleMode, TriangleCase};
use crate::error::{Error, Result};
use crate::numerics::{IntervalSet, Scalar};

/// Carrier of a closed-form space: the whole rational line or `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub enum LineCarrier<S> {
    Line,
    Closed { lo: S, hi: S },
}

impl<S: Scalar> LineCarrier<S> {
    pub fn contains(&self, x: &S) -> bool {
        match self {
            LineCarrier::Line => true,
            LineCarrier::Closed { lo, hi } => lo <= x && x <= hi,
        }
    }

    fn as_set(&self) -> IntervalSet<S> {
        match self {
            LineCarrier::Line => IntervalSet::whole_line(),
            LineCarrier::Closed { lo, hi } => IntervalSet::closed(lo.clone(), hi.clone()),
        }
    }
}

/// Closed-form distance rules on the line.
#[derive(Clone, Debug, PartialEq)]
pub enum LineRule<S> {
    /// `shift + forward·(y − x)⁺ + backward·(x − y)⁺`, a weighted asymmetric
    /// quasi-metric shifted by `shift`. Weights `1, 1` give `|x − y| + shift`.
    Shifted { forward: S, backward: S, shift: S },
    /// `(x − y)² + offset`.
    SquareShift { offset: S },
    /// `r` on the diagonal, `2r` when `0 < |x − y| <= r`, `|x − y|` beyond.
    Piecewise { r: S },
}

/// Shape of a piecewise-rule ball `B(c, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BallShape {
    /// `p <= r`.
    Empty,
    /// `r < p <= 2r`: `{c} ∪ (c − p, c − r) ∪ (c + r, c + p)`.
    Split,
    /// `p > 2r`: `(c − p, c + p)`.
    Solid,
}

impl BallShape {
    pub fn classify<S: Scalar>(r: &S, radius: &S) -> Self {
        if radius <= r {
            BallShape::Empty
        } else if *radius <= r.clone() + r.clone() {
            BallShape::Split
        } else {
            BallShape::Solid
        }
    }
}

/// Evenly spaced sample `lo, lo + step, …` up to `hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<S> {
    pub step: S,
    pub lo: S,
    pub hi: S,
}

impl<S: Scalar> Grid<S> {
    pub const MAX_POINTS: usize = 20_000;

    pub fn new(step: S, lo: S, hi: S) -> Result<Self> {
        if step <= S::zero() {
            return Err(Error::InvalidGrid(format!(
                "step {} is not positive",
                step.render()
            )));
        }
        if lo > hi {
            return Err(Error::InvalidGrid(format!(
                "bounds [{}, {}] are reversed",
                lo.render(),
                hi.render()
            )));
        }
        let span = (hi.clone() - lo.clone()) / step.clone();
        match span.ceil_int() {
            Some(n) if (n as usize) < Self::MAX_POINTS => Ok(Grid { step, lo, hi }),
            _ => Err(Error::InvalidGrid("too many grid points".into())),
        }
    }

    pub fn points(&self) -> Vec<S> {
        let mut out = Vec::new();
        let mut x = self.lo.clone();
        while x <= self.hi {
            out.push(x.clone());
            x = x + self.step.clone();
        }
        out
    }

    pub fn describe(&self) -> String {
        format!(
            "grid step {} over [{}, {}]",
            self.step.render(),
            self.lo.render(),
            self.hi.render()
        )
    }
}

/// A closed-form g-quasi metric on the line or on a closed interval.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSpace<S> {
    carrier: LineCarrier<S>,
    rule: LineRule<S>,
}

impl<S: Scalar> LineSpace<S> {
    pub fn new(carrier: LineCarrier<S>, rule: LineRule<S>) -> Result<Self> {
        if let LineCarrier::Closed { lo, hi } = &carrier {
            if lo > hi {
                return Err(Error::EmptyCarrier);
            }
        }
        let invalid = |m: String| Err(Error::InvalidParameters(m));
        match &rule {
            LineRule::Shifted {
                forward,
                backward,
                shift,
            } => {
                if *forward <= S::zero() || *backward <= S::zero() {
                    return invalid("weights must be positive".into());
                }
                if *shift < S::zero() {
                    return invalid(format!("shift {} is negative", shift.render()));
                }
            }
            LineRule::SquareShift { offset } => {
                if *offset < S::zero() {
                    return invalid(format!("offset {} is negative", offset.render()));
                }
            }
            LineRule::Piecewise { r } => {
                if *r <= S::zero() {
                    return Err(Error::NonPositiveR(r.render()));
                }
            }
        }
        Ok(LineSpace { carrier, rule })
    }

    /// Piecewise rule of parameter `r` on the whole line.
    pub fn piecewise(r: S) -> Result<Self> {
        Self::new(LineCarrier::Line, LineRule::Piecewise { r })
    }

    /// `(x − y)² + offset` on `[lo, hi]`.
    pub fn square_shift(offset: S, lo: S, hi: S) -> Result<Self> {
        Self::new(LineCarrier::Closed { lo, hi }, LineRule::SquareShift { offset })
    }

    /// The weighted quasi-metric `forward·(y − x)⁺ + backward·(x − y)⁺`
    /// shifted by `r`; the result has index `r`.
    pub fn shift_quasi_metric(carrier: LineCarrier<S>, forward: S, backward: S, r: S) -> Result<Self> {
        Self::new(
            carrier,
            LineRule::Shifted {
                forward,
                backward,
                shift: r,
            },
        )
    }

    /// The usual metric `|x − y|` on the line.
    pub fn usual() -> Self {
        LineSpace {
            carrier: LineCarrier::Line,
            rule: LineRule::Shifted {
                forward: S::one(),
                backward: S::one(),
                shift: S::zero(),
            },
        }
    }

    pub fn carrier(&self) -> &LineCarrier<S> {
        &self.carrier
    }

    pub fn rule(&self) -> &LineRule<S> {
        &self.rule
    }

    /// The parameter `r` of a piecewise space.
    pub fn piecewise_r(&self) -> Option<&S> {
        match &self.rule {
            LineRule::Piecewise { r } => Some(r),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        let rule = match &self.rule {
            LineRule::Shifted {
                forward,
                backward,
                shift,
            } => format!(
                "shifted quasi-metric (forward {}, backward {}, shift {})",
                forward.render(),
                backward.render(),
                shift.render()
            ),
            LineRule::SquareShift { offset } => format!("square shift {}", offset.render()),
            LineRule::Piecewise { r } => format!("piecewise r = {}", r.render()),
        };
        match &self.carrier {
            LineCarrier::Line => format!("{rule} on the line"),
            LineCarrier::Closed { lo, hi } => {
                format!("{rule} on [{}, {}]", lo.render(), hi.render())
            }
        }
    }

    /// Grid used when none is given: step `r/10` over `[−5r, 5r]` for the
    /// piecewise rule, step `1/10` over a closed carrier, otherwise step
    /// `1/10` over `[−5, 5]`.
    pub fn default_grid(&self) -> Grid<S> {
        let tenth = S::ratio(1, 10);
        let grid = match (&self.rule, &self.carrier) {
            (LineRule::Piecewise { r }, LineCarrier::Line) => Grid::new(
                r.clone() * tenth,
                -(r.clone() * S::from_int(5)),
                r.clone() * S::from_int(5),
            ),
            (_, LineCarrier::Closed { lo, hi }) => Grid::new(tenth, lo.clone(), hi.clone()),
            _ => Grid::new(tenth, S::from_int(-5), S::from_int(5)),
        };
        grid.expect("default grid is valid")
    }

    pub fn verify_axioms(&self, sample: &Sample<S>) -> Result<AxiomReport<S, S>> {
        let grid = match sample {
            Sample::Exhaustive => return Err(Error::SampleRequired),
            Sample::Grid(g) => g,
        };
        let points: Vec<S> = grid
            .points()
            .into_iter()
            .filter(|x| self.carrier.contains(x))
            .collect();
        Ok(check_axioms(self, &points, SampleMode::Sampled(grid.describe())))
    }

    /// The exact ball `{y : d(center, y) < radius}`.
    pub fn ball(&self, center: &S, radius: &S) -> Result<IntervalSet<S>> {
        if !self.carrier.contains(center) {
            return Err(Error::PointOutsideCarrier(center.render()));
        }
        if *radius <= S::zero() {
            return Err(Error::NonPositiveRadius(radius.render()));
        }
        let c = center.clone();
        let raw = match &self.rule {
            LineRule::Shifted {
                forward,
                backward,
                shift,
            } => {
                if radius <= shift {
                    IntervalSet::empty()
                } else {
                    let slack = radius.clone() - shift.clone();
                    IntervalSet::open(
                        c.clone() - slack.clone() / backward.clone(),
                        c + slack / forward.clone(),
                    )
                }
            }
            LineRule::SquareShift { offset } => {
                if radius <= offset {
                    IntervalSet::empty()
                } else {
                    let slack = radius.clone() - offset.clone();
                    let half_width = slack
                        .try_sqrt()
                        .ok_or_else(|| Error::IrrationalBoundary(slack.render()))?;
                    IntervalSet::open(c.clone() - half_width.clone(), c + half_width)
                }
            }
            LineRule::Piecewise { r } => piecewise_ball(r, &c, radius),
        };
        Ok(match self.carrier {
            LineCarrier::Line => raw,
            _ => raw.intersect(&self.carrier.as_set()),
        })
    }
}

fn piecewise_ball<S: Scalar>(r: &S, c: &S, radius: &S) -> IntervalSet<S> {
    match BallShape::classify(r, radius) {
        BallShape::Empty => IntervalSet::empty(),
        BallShape::Split => {
            let left = IntervalSet::open(c.clone() - radius.clone(), c.clone() - r.clone());
            let right = IntervalSet::open(c.clone() + r.clone(), c.clone() + radius.clone());
            left.union(&right).union(&IntervalSet::point(c.clone()))
        }
        BallShape::Solid => IntervalSet::open(c.clone() - radius.clone(), c.clone() + radius.clone()),
    }
}

impl<S: Scalar> GQuasiMetric<S> for LineSpace<S> {
    type Point = S;

    fn index(&self) -> S {
        match &self.rule {
            LineRule::Shifted { shift, .. } => shift.clone(),
            LineRule::SquareShift { offset } => offset.clone(),
            LineRule::Piecewise { r } => r.clone(),
        }
    }

    fn contains(&self, p: &S) -> bool {
        self.carrier.contains(p)
    }

    fn dist(&self, x: &S, y: &S) -> S {
        let diff = y.clone() - x.clone();
        match &self.rule {
            LineRule::Shifted {
                forward,
                backward,
                shift,
            } => {
                if diff >= S::zero() {
                    shift.clone() + forward.clone() * diff
                } else {
                    shift.clone() - backward.clone() * diff
                }
            }
            LineRule::SquareShift { offset } => diff.clone() * diff + offset.clone(),
            LineRule::Piecewise { r } => {
                let gap = diff.abs();
                if gap.is_zero() {
                    r.clone()
                } else if gap <= *r {
                    r.clone() + r.clone()
                } else {
                    gap
                }
            }
        }
    }

    fn render_point(&self, p: &S) -> String {
        p.render()
    }

    fn pair_class(&self, x: &S, y: &S) -> Option<PairClass> {
        let r = self.piecewise_r()?;
        let gap = (x.clone() - y.clone()).abs();
        Some(if gap.is_zero() {
            PairClass::Same
        } else if gap <= *r {
            PairClass::Near
        } else {
            PairClass::Far
        })
    }
}

/// Triangle inequality of the piecewise rule checked case by case on
/// triples `(0, a + b, a)` with offsets at the case boundaries.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseAnalysis<S> {
    pub counts: [u64; 6],
    /// `(x, y, z)` triples where `d(x,y) > d(x,z) + d(z,y)`.
    pub violations: Vec<(S, S, S)>,
}

impl<S> CaseAnalysis<S> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.counts[1..].iter().all(|&n| n > 0)
    }
}

pub fn piecewise_case_analysis<S: Scalar>(r: &S) -> Result<CaseAnalysis<S>> {
    let space = LineSpace::piecewise(r.clone())?;
    // 0, just inside r, exactly r, just past r, and well past 2r on each side.
    let fractions = [
        (0, 1),
        (1, 10),
        (1, 2),
        (1, 1),
        (11, 10),
        (3, 2),
        (2, 1),
        (3, 1),
        (5, 1),
    ];
    let mut offsets = Vec::new();
    for (n, d) in fractions {
        let v = r.clone() * S::ratio(n, d);
        if !v.is_zero() {
            offsets.push(-v.clone());
        }
        offsets.push(v);
    }
    let x = S::zero();
    let mut counts = [0u64; 6];
    let mut violations = Vec::new();
    for a in &offsets {
        for b in &offsets {
            let z = a.clone();
            let y = a.clone() + b.clone();
            let class = |p: &S, q: &S| space.pair_class(p, q).expect("piecewise");
            let case = TriangleCase::classify(class(&x, &y), class(&x, &z), class(&z, &y));
            counts[case.slot()] += 1;
            if space.dist(&x, &y) > space.dist(&x, &z) + space.dist(&z, &y) {
                violations.push((x.clone(), y, z));
            }
        }
    }
    Ok(CaseAnalysis { counts, violations })
}
