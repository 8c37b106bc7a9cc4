use super::{certify, Certificate, PairedSeq, Property, Sequence};
use crate::error::Result;
use crate::maps::ProductSpace;
use crate::metrics::{distance_values, FiniteSpace, GQuasiMetric};
use crate::numerics::Scalar;

/// The completeness hierarchy on a finite carrier.
///
/// At `ε₀` strictly between the index and the smallest off-diagonal
/// distance, `d(x_m, x_n) < ε₀` forces `x_m = x_n`. A Cauchy or G-Cauchy
/// sequence is therefore eventually constant and converges to its tail
/// value. Some point recurs infinitely often in any sequence on a finite
/// carrier, which makes it a cluster point; sequences with pairwise distinct
/// terms do not exist, so the Lebesgue condition is vacuous.
#[derive(Clone, Debug, PartialEq)]
pub struct CompletenessReport<S> {
    pub points: usize,
    pub index: S,
    /// Smallest off-diagonal distance, absent on a single point.
    pub min_off_diagonal: Option<S>,
    pub epsilon0: S,
    pub complete: bool,
    pub g_complete: bool,
    pub weak_g_complete: bool,
    pub lebesgue: bool,
    pub strongly_lebesgue: bool,
}

impl<S: Scalar> CompletenessReport<S> {
    /// Strongly Lebesgue ⇒ Lebesgue ⇒ weak G-complete, and
    /// G-complete ⇒ weak G-complete.
    pub fn diagram_holds(&self) -> bool {
        (!self.strongly_lebesgue || self.lebesgue)
            && (!self.lebesgue || self.weak_g_complete)
            && (!self.g_complete || self.weak_g_complete)
    }

    pub fn all_hold(&self) -> bool {
        self.complete && self.g_complete && self.weak_g_complete && self.lebesgue && self.strongly_lebesgue
    }
}

pub fn finite_space_completeness<S: Scalar, M: FiniteSpace<S>>(space: &M) -> CompletenessReport<S> {
    let index = space.index();
    let values = distance_values(space);
    let min_off_diagonal = values.iter().find(|v| **v > index).cloned();
    let epsilon0 = match &min_off_diagonal {
        Some(m) => S::midpoint(&index, m),
        None => index.clone() + S::one(),
    };
    let separating = min_off_diagonal.as_ref().is_none_or(|m| epsilon0 < *m) && epsilon0 > index;
    CompletenessReport {
        points: space.len(),
        index,
        min_off_diagonal,
        epsilon0,
        complete: separating,
        g_complete: separating,
        weak_g_complete: separating,
        lebesgue: true,
        strongly_lebesgue: true,
    }
}

/// First index of the constant tail implied by a verified Cauchy or
/// G-Cauchy certificate at `ε <= ε₀`, checked against the terms up to the
/// horizon.
pub fn eventual_constancy_index<S, M, Q>(
    seq: &Q,
    space: &M,
    report: &CompletenessReport<S>,
    certificate: &Certificate<S>,
) -> Result<Option<u64>>
where
    S: Scalar,
    M: FiniteSpace<S>,
    Q: Sequence<M::Point>,
{
    if !certificate.verified()
        || certificate.property == Property::PseudoCauchy
        || certificate.epsilon > report.epsilon0
    {
        return Ok(None);
    }
    let terms = seq.prefix(certificate.horizon)?;
    let k = certificate.k;
    let anchor = &terms[(k - 1) as usize];
    let constant = terms[(k - 1) as usize..].iter().all(|t| t == anchor);
    Ok(constant.then_some(k).filter(|_| space.contains(anchor)))
}

/// All three certificates at one `(ε, k, horizon)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramCheck<S> {
    pub cauchy: Certificate<S>,
    pub g_cauchy: Certificate<S>,
    pub pseudo_cauchy: Certificate<S>,
}

impl<S: Scalar> DiagramCheck<S> {
    /// Cauchy ⇒ G-Cauchy and Cauchy ⇒ pseudo-Cauchy.
    pub fn holds(&self) -> bool {
        !self.cauchy.verified() || (self.g_cauchy.verified() && self.pseudo_cauchy.verified())
    }
}

pub fn diagram_check<S, M, Q>(
    seq: &Q,
    space: &M,
    epsilon: &S,
    k: u64,
    horizon: u64,
) -> Result<DiagramCheck<S>>
where
    S: Scalar,
    M: GQuasiMetric<S>,
    Q: Sequence<M::Point>,
{
    Ok(DiagramCheck {
        cauchy: certify(seq, space, Property::Cauchy, epsilon, k, horizon)?,
        g_cauchy: certify(seq, space, Property::GCauchy, epsilon, k, horizon)?,
        pseudo_cauchy: certify(seq, space, Property::PseudoCauchy, epsilon, k, horizon)?,
    })
}

/// Component and paired certificates for one property.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaCheck<S> {
    pub left: Certificate<S>,
    pub right: Certificate<S>,
    pub pair: Certificate<S>,
}

impl<S: Scalar> LemmaCheck<S> {
    /// Cauchy and G-Cauchy: pair ⇔ both components. Pseudo-Cauchy: pair ⇒
    /// both components.
    pub fn consistent(&self) -> bool {
        let both = self.left.verified() && self.right.verified();
        match self.pair.property {
            Property::Cauchy | Property::GCauchy => self.pair.verified() == both,
            Property::PseudoCauchy => !self.pair.verified() || both,
        }
    }

    /// Components verified while the pair is refuted.
    pub fn converse_fails(&self) -> bool {
        self.left.verified() && self.right.verified() && !self.pair.verified()
    }
}

#[allow(clippy::too_many_arguments)]
pub fn product_lemma_check<S, A, B, X, Y>(
    seq_x: &X,
    seq_y: &Y,
    space_x: &A,
    space_y: &B,
    property: Property,
    epsilon: &S,
    k: u64,
    horizon: u64,
) -> Result<LemmaCheck<S>>
where
    S: Scalar,
    A: GQuasiMetric<S> + Clone,
    B: GQuasiMetric<S> + Clone,
    X: Sequence<A::Point> + Clone,
    Y: Sequence<B::Point> + Clone,
{
    let product = ProductSpace::new(space_x.clone(), space_y.clone())?;
    let pair = PairedSeq::new(seq_x.clone(), seq_y.clone());
    Ok(LemmaCheck {
        left: certify(seq_x, space_x, property, epsilon, k, horizon)?,
        right: certify(seq_y, space_y, property, epsilon, k, horizon)?,
        pair: certify(&pair, &product, property, epsilon, k, horizon)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::metrics::{LineSpace, TableSpace};
    use crate::sequences::{ClosedForm, TabulatedSeq};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn two_point() -> TableSpace<Q> {
        TableSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![q(3, 1), q(4, 1)], vec![q(4, 1), q(3, 1)]],
        )
        .unwrap()
    }

    #[test]
    fn two_point_threshold() {
        let r = finite_space_completeness(&two_point());
        assert_eq!(r.epsilon0, q(7, 2));
        assert!(r.all_hold() && r.diagram_holds());
    }

    #[test]
    fn one_point_space() {
        let t = TableSpace::new(vec!["x".into()], vec![vec![q(2, 1)]]).unwrap();
        let r = finite_space_completeness(&t);
        assert_eq!(r.min_off_diagonal, None);
        assert!(r.all_hold());
    }

    #[test]
    fn constancy_from_cauchy_certificate() {
        let t = two_point();
        let report = finite_space_completeness(&t);
        let seq = TabulatedSeq::new(vec![0usize, 1, 0, 1, 1]).unwrap();
        let c = certify(&seq, &t, Property::Cauchy, &report.epsilon0, 4, 30).unwrap();
        assert!(c.verified());
        assert_eq!(eventual_constancy_index(&seq, &t, &report, &c).unwrap(), Some(4));
        let early = certify(&seq, &t, Property::Cauchy, &report.epsilon0, 1, 30).unwrap();
        assert!(!early.verified());
        assert_eq!(eventual_constancy_index(&seq, &t, &report, &early).unwrap(), None);
    }

    #[test]
    fn diagram_on_constant() {
        let space = LineSpace::piecewise(q(1, 1)).unwrap();
        let seq = ClosedForm::Constant { value: q(0, 1) };
        let d = diagram_check(&seq, &space, &q(3, 2), 1, 20).unwrap();
        assert!(d.cauchy.verified() && d.holds());
    }

    #[test]
    fn lemma_checks() {
        let space = LineSpace::piecewise(q(1, 1)).unwrap();
        let c = ClosedForm::Constant { value: q(2, 1) };
        let l = product_lemma_check(&c, &c, &space, &space, Property::Cauchy, &q(3, 2), 1, 20).unwrap();
        assert!(l.pair.verified() && l.consistent());

        let drift = ClosedForm::DriftGap { r: q(1, 1) };
        let l =
            product_lemma_check(&drift, &c, &space, &space, Property::GCauchy, &q(11, 10), 10, 500).unwrap();
        assert!(l.left.verified() && l.right.verified() && l.pair.verified() && l.consistent());

        let x = ClosedForm::AltPow {
            base: q(10, 1),
            odd_value: q(1, 1),
            mirrored: false,
        };
        let y = ClosedForm::AltPow {
            base: q(10, 1),
            odd_value: q(1, 1),
            mirrored: true,
        };
        let l = product_lemma_check(&x, &y, &space, &space, Property::PseudoCauchy, &q(2, 1), 1, 50).unwrap();
        assert!(l.consistent() && l.converse_fails());
    }

    #[test]
    fn lemma_rejects_mixed_indices() {
        let a = LineSpace::piecewise(q(1, 1)).unwrap();
        let b = LineSpace::piecewise(q(2, 1)).unwrap();
        let c = ClosedForm::Constant { value: q(0, 1) };
        assert!(matches!(
            product_lemma_check(&c, &c, &a, &b, Property::Cauchy, &q(3, 1), 1, 5),
            Err(Error::IndexMismatch(_, _))
        ));
    }
}
