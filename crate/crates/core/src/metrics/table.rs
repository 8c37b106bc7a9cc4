use std::collections::HashSet;

use super::{check_axioms, AxiomReport, FiniteSpace, GQuasiMetric, SampleMode};
use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// Finite space given by an explicit distance matrix. Row `i` holds
/// `d(point_i, ·)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TableSpace<S> {
    labels: Vec<String>,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> TableSpace<S> {
    pub fn new(labels: Vec<String>, rows: Vec<Vec<S>>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: rows.len(),
                points: n,
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(TableSpace { labels, rows })
    }

    /// Table with labels `0..n`.
    pub fn unlabeled(rows: Vec<Vec<S>>) -> Result<Self> {
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::new(labels, rows)
    }

    /// Materializes a closed-form rule on finitely many rational points.
    pub fn from_rule(points: &[S], rule: impl Fn(&S, &S) -> S) -> Result<Self> {
        let labels = points.iter().map(Scalar::render).collect();
        let rows = points
            .iter()
            .map(|x| points.iter().map(|y| rule(x, y)).collect())
            .collect();
        Self::new(labels, rows)
    }

    /// `0` on the diagonal, `1` elsewhere.
    pub fn discrete(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { S::zero() } else { S::one() })
                    .collect()
            })
            .collect();
        Self::new(labels, rows)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn resolve(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::PointOutsideCarrier(label.to_string()))
    }

    pub fn verify_axioms(&self) -> AxiomReport<usize, S> {
        check_axioms(self, &self.points(), SampleMode::Exhaustive)
    }

    /// `d + r` for a quasi-metric `d`; the result has index `r`.
    pub fn shift_quasi_metric(&self, r: S) -> Result<Self> {
        if r < S::zero() {
            return Err(Error::InvalidParameters(format!(
                "shift {} is negative",
                r.render()
            )));
        }
        if !self.index().is_zero() {
            return Err(Error::BaseNotQuasiMetric(format!(
                "diagonal value {} is not 0",
                self.index().render()
            )));
        }
        let report = self.verify_axioms();
        if let Some(f) = report.failure {
            return Err(Error::BaseNotQuasiMetric(f.describe(self)));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|d| d.clone() + r.clone()).collect())
            .collect();
        Self::new(self.labels.clone(), rows)
    }

    /// Same distances under new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        Self::new(labels, self.rows.clone())
    }
}

impl<S: Scalar> GQuasiMetric<S> for TableSpace<S> {
    type Point = usize;

    fn index(&self) -> S {
        self.rows[0][0].clone()
    }

    fn contains(&self, p: &usize) -> bool {
        *p < self.labels.len()
    }

    fn dist(&self, x: &usize, y: &usize) -> S {
        self.rows[*x][*y].clone()
    }

    fn render_point(&self, p: &usize) -> String {
        self.labels.get(*p).cloned().unwrap_or_else(|| format!("#{p}"))
    }
}

impl<S: Scalar> FiniteSpace<S> for TableSpace<S> {
    fn points(&self) -> Vec<usize> {
        (0..self.labels.len()).collect()
    }

    fn len(&self) -> usize {
        self.labels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{distance_values, finite_ball, AxiomFailure};
    use num_rational::BigRational;
    use num_traits::Signed;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn discrete_shift_gives_two_point_table() {
        let base = TableSpace::<Q>::discrete(labels(&["a", "b"])).unwrap();
        let shifted = base.shift_quasi_metric(q(3)).unwrap();
        assert_eq!(shifted.rows(), &[vec![q(3), q(4)], vec![q(4), q(3)]]);
        assert_eq!(shifted.index(), q(3));
        assert!(shifted.verify_axioms().holds);
        assert_eq!(base.shift_quasi_metric(q(0)).unwrap(), base);
    }

    #[test]
    fn shift_of_usual_metric() {
        let pts = [q(0), q(1), q(5)];
        let base = TableSpace::from_rule(&pts, |x, y| (x.clone() - y.clone()).abs()).unwrap();
        let s = base.shift_quasi_metric(q(2)).unwrap();
        assert_eq!(s.distance(&0, &2).unwrap(), q(7));
        assert_eq!(s.labels(), &labels(&["0/1", "1/1", "5/1"]));
    }

    #[test]
    fn shift_rejects_non_quasi_metric() {
        let bad = TableSpace::unlabeled(vec![
            vec![q(0), q(5), q(1)],
            vec![q(5), q(0), q(1)],
            vec![q(1), q(1), q(0)],
        ])
        .unwrap();
        assert!(matches!(
            bad.shift_quasi_metric(q(1)),
            Err(Error::BaseNotQuasiMetric(_))
        ));
        let offset = TableSpace::unlabeled(vec![vec![q(1)]]).unwrap();
        assert!(matches!(
            offset.shift_quasi_metric(q(1)),
            Err(Error::BaseNotQuasiMetric(_))
        ));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(TableSpace::<Q>::new(vec![], vec![]), Err(Error::EmptyCarrier));
        assert!(matches!(
            TableSpace::new(labels(&["a", "b"]), vec![vec![q(0), q(1)]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            TableSpace::new(labels(&["a", "a"]), vec![vec![q(0), q(1)], vec![q(1), q(0)]]),
            Err(Error::DuplicateLabel(_))
        ));
        let t = TableSpace::<Q>::discrete(labels(&["a"])).unwrap();
        assert!(matches!(t.distance(&0, &3), Err(Error::PointOutsideCarrier(_))));
        assert!(matches!(t.resolve("z"), Err(Error::PointOutsideCarrier(_))));
    }

    #[test]
    fn diagonal_mismatch_fails_axiom_a() {
        let t = TableSpace::unlabeled(vec![vec![q(3), q(4)], vec![q(4), q(5)]]).unwrap();
        let report = t.verify_axioms();
        assert!(!report.holds);
        let failure = report.failure.unwrap();
        assert!(matches!(failure, AxiomFailure::Index { x: 1, y: 1, .. }));
        assert!(failure.reverify(&t));
    }

    #[test]
    fn balls_and_index_recovery() {
        let t = TableSpace::new(
            labels(&["a", "b", "c"]),
            vec![
                vec![q(1), q(2), q(5)],
                vec![q(2), q(1), q(5)],
                vec![q(5), q(5), q(1)],
            ],
        )
        .unwrap();
        assert_eq!(finite_ball(&t, &0, &q(3)).unwrap(), vec![0, 1]);
        assert!(finite_ball(&t, &0, &q(1)).unwrap().is_empty());
        assert!(finite_ball(&t, &0, &q(0)).is_err());
        let values = distance_values(&t);
        assert_eq!(values[0], t.index());
        assert_eq!(values, vec![q(1), q(2), q(5)]);
    }
}
