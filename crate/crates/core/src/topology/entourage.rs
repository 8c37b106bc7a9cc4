//! Entourages `V_δ = {(x, y) : d(x, y) < δ}` and the composition test
//! `V_δ ∘ V_δ ⊆ V_ε`.

use crate::error::{Error, Result};
use crate::metrics::{FiniteSpace, GQuasiMetric, GqmSpace, LineRule, LineSpace};
use crate::numerics::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum EntourageOutcome<S> {
    Contained,
    /// `(x, y), (y, z) ∈ V_δ` but `(x, z) ∉ V_ε`.
    Violated {
        x: String,
        y: String,
        z: String,
        d_xy: S,
        d_yz: S,
        d_xz: S,
    },
    /// The symbolic witness does not apply to this target.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntourageCheck<S> {
    pub delta: S,
    pub outcome: EntourageOutcome<S>,
}

impl<S: Scalar> EntourageCheck<S> {
    pub fn contained(&self) -> bool {
        self.outcome == EntourageOutcome::Contained
    }

    pub fn violated(&self) -> bool {
        matches!(self.outcome, EntourageOutcome::Violated { .. })
    }
}

fn validate<S: Scalar>(index: &S, target_eps: &S, deltas: &[S]) -> Result<()> {
    if target_eps <= index {
        return Err(Error::EpsilonNotAboveIndex {
            epsilon: target_eps.render(),
            index: index.render(),
        });
    }
    if let Some(d) = deltas.iter().find(|d| *d <= index) {
        return Err(Error::DeltaNotAboveIndex {
            delta: d.render(),
            index: index.render(),
        });
    }
    Ok(())
}

/// Exact composition test on a finite carrier.
pub fn entourage_check_finite<S: Scalar, M: FiniteSpace<S>>(
    space: &M,
    target_eps: &S,
    deltas: &[S],
) -> Result<Vec<EntourageCheck<S>>> {
    validate(&space.index(), target_eps, deltas)?;
    let pts = space.points();
    let table: Vec<Vec<S>> = pts
        .iter()
        .map(|x| pts.iter().map(|y| space.dist(x, y)).collect())
        .collect();
    let n = pts.len();
    Ok(deltas
        .iter()
        .map(|delta| {
            let violation = (0..n).find_map(|i| {
                (0..n).find_map(|k| {
                    if table[i][k] >= *delta {
                        return None;
                    }
                    (0..n)
                        .find(|&j| table[k][j] < *delta && table[i][j] >= *target_eps)
                        .map(|j| EntourageOutcome::Violated {
                            x: space.render_point(&pts[i]),
                            y: space.render_point(&pts[k]),
                            z: space.render_point(&pts[j]),
                            d_xy: table[i][k].clone(),
                            d_yz: table[k][j].clone(),
                            d_xz: table[i][j].clone(),
                        })
                })
            });
            EntourageCheck {
                delta: delta.clone(),
                outcome: violation.unwrap_or(EntourageOutcome::Contained),
            }
        })
        .collect())
}

/// Symbolic witness `x = 0`, `y = r + (δ − r)/2`, `z = r + δ` for the
/// piecewise rule, evaluated through the distance function.
pub fn entourage_check_piecewise<S: Scalar>(
    space: &LineSpace<S>,
    target_eps: &S,
    deltas: &[S],
) -> Result<Vec<EntourageCheck<S>>> {
    let r = space
        .piecewise_r()
        .ok_or_else(|| Error::UnsupportedSpace(space.describe()))?
        .clone();
    validate(&r, target_eps, deltas)?;
    Ok(deltas
        .iter()
        .map(|delta| {
            let x = S::zero();
            let y = r.clone() + (delta.clone() - r.clone()).half();
            let z = r.clone() + delta.clone();
            let (d_xy, d_yz, d_xz) = (space.dist(&x, &y), space.dist(&y, &z), space.dist(&x, &z));
            let outcome = if d_xy < *delta && d_yz < *delta && d_xz >= *target_eps {
                EntourageOutcome::Violated {
                    x: x.render(),
                    y: y.render(),
                    z: z.render(),
                    d_xy,
                    d_yz,
                    d_xz,
                }
            } else {
                EntourageOutcome::Inconclusive
            };
            EntourageCheck {
                delta: delta.clone(),
                outcome,
            }
        })
        .collect())
}

/// Dispatches on the kind of space.
pub fn entourage_base_check<S: Scalar>(
    space: &GqmSpace<S>,
    target_eps: &S,
    deltas: &[S],
) -> Result<Vec<EntourageCheck<S>>> {
    match space {
        GqmSpace::Table(t) => entourage_check_finite(t, target_eps, deltas),
        GqmSpace::Line(l) if matches!(l.rule(), LineRule::Piecewise { .. }) => {
            entourage_check_piecewise(l, target_eps, deltas)
        }
        GqmSpace::Line(l) => Err(Error::UnsupportedSpace(l.describe())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::TableSpace;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    #[test]
    fn piecewise_witness_r1() {
        let s = LineSpace::piecewise(q(1, 1)).unwrap();
        let out = entourage_check_piecewise(&s, &q(3, 2), &[q(6, 5)]).unwrap();
        assert_eq!(
            out[0].outcome,
            EntourageOutcome::Violated {
                x: "0/1".into(),
                y: "11/10".into(),
                z: "11/5".into(),
                d_xy: q(11, 10),
                d_yz: q(11, 10),
                d_xz: q(11, 5),
            }
        );
    }

    #[test]
    fn piecewise_witness_r2() {
        let s = GqmSpace::Line(LineSpace::piecewise(q(2, 1)).unwrap());
        let out = entourage_base_check(&s, &q(3, 1), &[q(3, 1)]).unwrap();
        match &out[0].outcome {
            EntourageOutcome::Violated { y, z, d_xz, .. } => {
                assert_eq!((y.as_str(), z.as_str()), ("5/2", "5/1"));
                assert_eq!(*d_xz, q(5, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn every_small_delta_fails() {
        let s = LineSpace::piecewise(q(1, 1)).unwrap();
        let deltas: Vec<Q> = (1..=50).map(|k| q(1, 1) + q(1, k)).collect();
        let out = entourage_check_piecewise(&s, &q(3, 2), &deltas).unwrap();
        assert!(out.iter().all(EntourageCheck::violated));
    }

    #[test]
    fn quasi_metric_halves_compose() {
        let pts: Vec<Q> = [0, 1, 3, 4, 9].iter().map(|&n| q(n, 1)).collect();
        let t = TableSpace::from_rule(&pts, |x, y| {
            let d = y.clone() - x.clone();
            if d >= Q::from_int(0) {
                d
            } else {
                -d * Q::from_int(2)
            }
        })
        .unwrap();
        assert!(t.verify_axioms().holds);
        for eps in [q(1, 2), q(2, 1), q(5, 1), q(10, 1)] {
            let out = entourage_check_finite(&t, &eps, &[eps.half()]).unwrap();
            assert!(out[0].contained(), "eps {eps}");
        }
    }

    #[test]
    fn finite_violation_found() {
        let t = TableSpace::unlabeled(vec![
            vec![q(0, 1), q(1, 1), q(2, 1)],
            vec![q(1, 1), q(0, 1), q(1, 1)],
            vec![q(2, 1), q(1, 1), q(0, 1)],
        ])
        .unwrap();
        let out = entourage_check_finite(&t, &q(3, 2), &[q(3, 2)]).unwrap();
        assert!(
            matches!(&out[0].outcome, EntourageOutcome::Violated { x, y, z, .. }
            if (x.as_str(), y.as_str(), z.as_str()) == ("0", "1", "2"))
        );
    }

    #[test]
    fn parameter_errors() {
        let s = LineSpace::piecewise(q(1, 1)).unwrap();
        assert!(matches!(
            entourage_check_piecewise(&s, &q(3, 2), &[q(1, 1)]),
            Err(Error::DeltaNotAboveIndex { .. })
        ));
        assert!(matches!(
            entourage_check_piecewise(&s, &q(1, 2), &[q(2, 1)]),
            Err(Error::EpsilonNotAboveIndex { .. })
        ));
        let usual = GqmSpace::Line(LineSpace::usual());
        assert!(matches!(
            entourage_base_check(&usual, &q(1, 1), &[q(1, 2)]),
            Err(Error::UnsupportedSpace(_))
        ));
    }
}
