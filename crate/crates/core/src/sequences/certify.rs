use rayon::prelude::*;

use super::Sequence;
use crate::error::{Error, Result};
use crate::metrics::GQuasiMetric;
use crate::numerics::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Cauchy,
    GCauchy,
    PseudoCauchy,
}

impl Property {
    pub const ALL: [Property; 3] = [Property::Cauchy, Property::GCauchy, Property::PseudoCauchy];

    pub fn name(self) -> &'static str {
        match self {
            Property::Cauchy => "cauchy",
            Property::GCauchy => "g-cauchy",
            Property::PseudoCauchy => "pseudo-cauchy",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    VerifiedOnHorizon,
    RefutedOnHorizon,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::VerifiedOnHorizon => "verified-on-horizon",
            Status::RefutedOnHorizon => "refuted-on-horizon",
        }
    }
}

/// `d(x_m, x_n)` for the recorded index pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<S> {
    pub m: u64,
    pub n: u64,
    pub distance: S,
}

/// Outcome of checking a Cauchy-type condition on indices `k..=horizon`.
///
/// Witnesses: a verified cauchy or g-cauchy certificate stores the largest
/// distance checked; a refuted one stores the first violation. A verified
/// pseudo-cauchy certificate stores the first close pair; a refuted one
/// stores the smallest distance among distinct pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<S> {
    pub property: Property,
    pub epsilon: S,
    pub k: u64,
    pub horizon: u64,
    pub status: Status,
    pub witness: Option<Witness<S>>,
    pub pairs_checked: u64,
}

impl<S: Scalar> Certificate<S> {
    pub fn verified(&self) -> bool {
        self.status == Status::VerifiedOnHorizon
    }

    /// Recomputes the witness distance and checks it against the status.
    pub fn reverify<M: GQuasiMetric<S>, Q: Sequence<M::Point>>(&self, seq: &Q, space: &M) -> bool {
        let Some(w) = &self.witness else {
            return false;
        };
        let (Ok(a), Ok(b)) = (seq.term(w.m), seq.term(w.n)) else {
            return false;
        };
        let in_range = |i: u64| self.k <= i && i <= self.horizon;
        let d = space.dist(&a, &b);
        let close = d < self.epsilon;
        let shape = match self.property {
            Property::Cauchy => true,
            Property::GCauchy => w.n == w.m + 1,
            Property::PseudoCauchy => w.m != w.n,
        };
        let consistent = match self.status {
            Status::VerifiedOnHorizon => close,
            Status::RefutedOnHorizon => !close,
        };
        d == w.distance && in_range(w.m) && in_range(w.n) && shape && consistent
    }
}

/// Checks `property` for `seq` in `space` on indices `k..=horizon`.
pub fn certify<S, M, Q>(
    seq: &Q,
    space: &M,
    property: Property,
    epsilon: &S,
    k: u64,
    horizon: u64,
) -> Result<Certificate<S>>
where
    S: Scalar,
    M: GQuasiMetric<S>,
    Q: Sequence<M::Point>,
{
    let index = space.index();
    if *epsilon <= index {
        return Err(Error::EpsilonNotAboveIndex {
            epsilon: epsilon.render(),
            index: index.render(),
        });
    }
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    if horizon <= k {
        return Err(Error::HorizonTooSmall { k, horizon });
    }
    let terms = seq.prefix(horizon)?;
    for t in &terms {
        if !space.contains(t) {
            return Err(Error::PointOutsideCarrier(space.render_point(t)));
        }
    }
    let x = |i: u64| &terms[(i - 1) as usize];
    let d = |m: u64, n: u64| space.dist(x(m), x(n));
    let span = horizon - k + 1;

    let (status, witness, pairs_checked) = match property {
        Property::Cauchy => {
            let rows: Vec<std::result::Result<Witness<S>, Witness<S>>> = (k..=horizon)
                .into_par_iter()
                .map(|m| {
                    let mut worst: Option<Witness<S>> = None;
                    for n in k..=horizon {
                        let dist = d(m, n);
                        if dist >= *epsilon {
                            return Err(Witness { m, n, distance: dist });
                        }
                        if worst.as_ref().is_none_or(|w| dist > w.distance) {
                            worst = Some(Witness { m, n, distance: dist });
                        }
                    }
                    Ok(worst.expect("nonempty range"))
                })
                .collect();
            match rows.iter().find_map(|r| r.as_ref().err()) {
                Some(v) => (Status::RefutedOnHorizon, Some(v.clone()), span * span),
                None => {
                    let worst = rows.into_iter().filter_map(|r| r.ok()).reduce(|a, b| {
                        if b.distance > a.distance {
                            b
                        } else {
                            a
                        }
                    });
                    (Status::VerifiedOnHorizon, worst, span * span)
                }
            }
        }
        Property::GCauchy => {
            let mut worst: Option<Witness<S>> = None;
            let mut violation = None;
            for m in k..horizon {
                let dist = d(m, m + 1);
                if dist >= *epsilon {
                    violation = Some(Witness {
                        m,
                        n: m + 1,
                        distance: dist,
                    });
                    break;
                }
                if worst.as_ref().is_none_or(|w| dist > w.distance) {
                    worst = Some(Witness {
                        m,
                        n: m + 1,
                        distance: dist,
                    });
                }
            }
            match violation {
                Some(v) => (Status::RefutedOnHorizon, Some(v), span - 1),
                None => (Status::VerifiedOnHorizon, worst, span - 1),
            }
        }
        Property::PseudoCauchy => {
            let mut closest: Option<Witness<S>> = None;
            let mut found = None;
            let mut checked = 0;
            'outer: for n in k + 1..=horizon {
                for m in k..n {
                    for (a, b) in [(m, n), (n, m)] {
                        checked += 1;
                        let dist = d(a, b);
                        if dist < *epsilon {
                            found = Some(Witness {
                                m: a,
                                n: b,
                                distance: dist,
                            });
                            break 'outer;
                        }
                        if closest.as_ref().is_none_or(|w| dist < w.distance) {
                            closest = Some(Witness {
                                m: a,
                                n: b,
                                distance: dist,
                            });
                        }
                    }
                }
            }
            match found {
                Some(w) => (Status::VerifiedOnHorizon, Some(w), checked),
                None => (Status::RefutedOnHorizon, closest, checked),
            }
        }
    };
    Ok(Certificate {
        property,
        epsilon: epsilon.clone(),
        k,
        horizon,
        status,
        witness,
        pairs_checked,
    })
}
