//! Sequences in g-quasi metric spaces, horizon-relative Cauchy-type
//! certificates, cluster analysis, and completeness on finite carriers.

mod certify;
mod cluster;
mod completeness;

use std::fmt::Debug;

pub use certify::{certify, Certificate, Property, Status, Witness};
pub use cluster::{
    cluster_check, cluster_scan, converges_to, drift_gap_cutoff, weak_g_incompleteness_demo, ClusterScan,
    WeakGDemo,
};
pub use completeness::{
    diagram_check, eventual_constancy_index, finite_space_completeness, product_lemma_check,
    CompletenessReport, DiagramCheck, LemmaCheck,
};

use crate::error::{Error, Result};
use crate::numerics::{pow, Scalar};

/// A sequence `n ↦ x_n` indexed from 1.
pub trait Sequence<P>: Sync {
    /// Term `x_n`; `n = 0` is rejected.
    fn term(&self, n: u64) -> Result<P>;

    fn describe(&self) -> String;

    /// `x_1, …, x_horizon`.
    fn prefix(&self, horizon: u64) -> Result<Vec<P>> {
        (1..=horizon).map(|n| self.term(n)).collect()
    }
}

fn check_index(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok(())
}

/// Named closed-form families over the scalar line.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm<S> {
    Constant {
        value: S,
    },
    /// `a·n + b`.
    Affine {
        a: S,
        b: S,
    },
    /// `r·n − r/n`.
    DriftGap {
        r: S,
    },
    /// `odd_value` at odd `n` and `base^n` at even `n`; the mirror swaps
    /// the parities.
    AltPow {
        base: S,
        odd_value: S,
        mirrored: bool,
    },
}

impl<S: Scalar> Sequence<S> for ClosedForm<S> {
    fn term(&self, n: u64) -> Result<S> {
        check_index(n)?;
        let nn = S::from_int(n as i64);
        Ok(match self {
            ClosedForm::Constant { value } => value.clone(),
            ClosedForm::Affine { a, b } => a.clone() * nn + b.clone(),
            ClosedForm::DriftGap { r } => r.clone() * nn.clone() - r.clone() / nn,
            ClosedForm::AltPow {
                base,
                odd_value,
                mirrored,
            } => {
                let odd = n % 2 == 1;
                if odd != *mirrored {
                    odd_value.clone()
                } else {
                    let exp = u32::try_from(n)
                        .map_err(|_| Error::InvalidParameters(format!("exponent {n} too large")))?;
                    pow(base, exp)
                }
            }
        })
    }

    fn describe(&self) -> String {
        match self {
            ClosedForm::Constant { value } => format!("constant {}", value.render()),
            ClosedForm::Affine { a, b } => format!("affine {}·n + {}", a.render(), b.render()),
            ClosedForm::DriftGap { r } => format!("drift-gap r = {}", r.render()),
            ClosedForm::AltPow {
                base,
                odd_value,
                mirrored,
            } => format!(
                "alt-pow base {} odd value {}{}",
                base.render(),
                odd_value.render(),
                if *mirrored { " (mirrored)" } else { "" }
            ),
        }
    }
}

/// Finite list of terms; the last one repeats forever.
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedSeq<P> {
    terms: Vec<P>,
}

impl<P> TabulatedSeq<P> {
    pub fn new(terms: Vec<P>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameters(
                "a tabulated sequence needs at least one term".into(),
            ));
        }
        Ok(TabulatedSeq { terms })
    }

    pub fn terms(&self) -> &[P] {
        &self.terms
    }

    /// First index of the constant tail.
    pub fn tail_start(&self) -> u64
    where
        P: PartialEq,
    {
        let last = self.terms.last().expect("nonempty");
        let run = self.terms.iter().rev().take_while(|t| *t == last).count();
        (self.terms.len() - run + 1) as u64
    }
}

impl<P: Clone + Debug + Send + Sync> Sequence<P> for TabulatedSeq<P> {
    fn term(&self, n: u64) -> Result<P> {
        check_index(n)?;
        let i = (n as usize).min(self.terms.len()) - 1;
        Ok(self.terms[i].clone())
    }

    fn describe(&self) -> String {
        format!("table of {} terms with constant tail", self.terms.len())
    }
}

/// `n ↦ (x_n, y_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairedSeq<A, B> {
    pub left: A,
    pub right: B,
}

impl<A, B> PairedSeq<A, B> {
    pub fn new(left: A, right: B) -> Self {
        PairedSeq { left, right }
    }
}

impl<P, Q, A: Sequence<P>, B: Sequence<Q>> Sequence<(P, Q)> for PairedSeq<A, B> {
    fn term(&self, n: u64) -> Result<(P, Q)> {
        Ok((self.left.term(n)?, self.right.term(n)?))
    }

    fn describe(&self) -> String {
        format!(
            "pair of ({}) and ({})",
            self.left.describe(),
            self.right.describe()
        )
    }
}

/// Wraps a scalar sequence so its terms become line points of a
/// [`crate::GqmSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct OnLine<T>(pub T);

impl<S: Scalar, T: Sequence<S>> Sequence<crate::metrics::GqmPoint<S>> for OnLine<T> {
    fn term(&self, n: u64) -> Result<crate::metrics::GqmPoint<S>> {
        self.0.term(n).map(crate::metrics::GqmPoint::Real)
    }

    fn describe(&self) -> String {
        self.0.describe()
    }
}
