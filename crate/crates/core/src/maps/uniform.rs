use super::ProductSpace;
use crate::error::{Error, Result};
use crate::metrics::{distance_values, FiniteSpace, GQuasiMetric, LineSpace};
use crate::numerics::Scalar;

/// A pair with `d_X(x1, x2) < δ` and `d_Y(f x1, f x2) >= ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairViolation<S> {
    pub x1: String,
    pub x2: String,
    pub d_x: S,
    pub d_y: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaProbe<S> {
    pub delta: S,
    /// `None` when every pair passes.
    pub violation: Option<PairViolation<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniformityVerdict<S> {
    pub uniformly_continuous: bool,
    /// Failing `ε` for a negative verdict.
    pub epsilon: Option<S>,
    /// Probes at the failing `ε`; for a positive verdict, the passing probe
    /// chosen for each candidate `ε`.
    pub trace: Vec<(S, DeltaProbe<S>)>,
    /// Whether the verdict decides the statement for all real `ε, δ`, as
    /// opposed to a finite sweep of `δ` values.
    pub exact: bool,
}

impl<S: Scalar> UniformityVerdict<S> {
    /// Every recorded violation satisfies its two defining inequalities.
    pub fn witnesses_consistent(&self) -> bool {
        self.trace.iter().all(|(eps, probe)| match &probe.violation {
            Some(v) => v.d_x < probe.delta && v.d_y >= *eps,
            None => self.uniformly_continuous,
        })
    }
}

/// Decides `∀ε > r2 ∃δ > r1 ∀x1, x2: d_X(x1, x2) < δ ⇒ d_Y(f x1, f x2) < ε`
/// for a map between finite spaces, given as image indices.
///
/// Only codomain distance values need testing as `ε`, and only one `δ` per
/// gap between consecutive domain distance values above `r1`.
pub fn check_g_uniform_continuity<S, X, Y>(
    domain: &X,
    codomain: &Y,
    images: &[usize],
) -> Result<UniformityVerdict<S>>
where
    S: Scalar,
    X: FiniteSpace<S>,
    Y: FiniteSpace<S>,
{
    let xs = domain.points();
    let ys = codomain.points();
    if images.len() != xs.len() {
        return Err(Error::NotTotal(format!(
            "{} images for {} points",
            images.len(),
            xs.len()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&i| i >= ys.len()) {
        return Err(Error::PointOutsideCarrier(format!("#{bad}")));
    }
    let r1 = domain.index();
    let r2 = codomain.index();
    let epsilons: Vec<S> = distance_values(codomain)
        .into_iter()
        .filter(|v| *v > r2)
        .collect();

    let above: Vec<S> = distance_values(domain).into_iter().filter(|v| *v > r1).collect();
    let mut deltas = Vec::new();
    let mut prev = r1.clone();
    for v in &above {
        deltas.push(S::midpoint(&prev, v));
        prev = v.clone();
    }
    deltas.push(prev + S::one());

    let n = xs.len();
    let probe = |eps: &S, delta: &S| -> DeltaProbe<S> {
        let violation = (0..n).find_map(|i| {
            (0..n).find_map(|j| {
                let d_x = domain.dist(&xs[i], &xs[j]);
                if d_x >= *delta {
                    return None;
                }
                let d_y = codomain.dist(&ys[images[i]], &ys[images[j]]);
                (d_y >= *eps).then(|| PairViolation {
                    x1: domain.render_point(&xs[i]),
                    x2: domain.render_point(&xs[j]),
                    d_x,
                    d_y,
                })
            })
        });
        DeltaProbe {
            delta: delta.clone(),
            violation,
        }
    };

    let mut trace = Vec::new();
    for eps in &epsilons {
        let probes: Vec<DeltaProbe<S>> = deltas.iter().map(|d| probe(eps, d)).collect();
        match probes.iter().find(|p| p.violation.is_none()) {
            Some(pass) => trace.push((eps.clone(), pass.clone())),
            None => {
                return Ok(UniformityVerdict {
                    uniformly_continuous: false,
                    epsilon: Some(eps.clone()),
                    trace: probes.into_iter().map(|p| (eps.clone(), p)).collect(),
                    exact: true,
                })
            }
        }
    }
    Ok(UniformityVerdict {
        uniformly_continuous: true,
        epsilon: None,
        trace,
        exact: true,
    })
}

/// Points showing that `(x, y) ↦ d(x, y)` from the product of the piecewise
/// space with itself to the usual line fails the `δ` condition at `ε = r/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMapWitness<S> {
    pub r: S,
    pub delta: S,
    pub n: u64,
    pub x: S,
    pub y: S,
    /// `max{d(x, 0), d(y, 0)}`: product distance from `(x, y)` to `(0, 0)`.
    pub domain_distance: S,
    pub d_xy: S,
    /// `|d(x, y) − d(0, 0)|`.
    pub gap: S,
    pub epsilon: S,
}

impl<S: Scalar> DistanceMapWitness<S> {
    pub fn holds(&self) -> bool {
        self.x != self.y && self.domain_distance < self.delta && self.gap >= self.epsilon
    }

    /// Recomputes every distance from the stored points.
    pub fn reverify(&self) -> bool {
        let Ok(space) = LineSpace::piecewise(self.r.clone()) else {
            return false;
        };
        let Ok(prod) = ProductSpace::new(space.clone(), space.clone()) else {
            return false;
        };
        let origin = (S::zero(), S::zero());
        let d_xy = space.dist(&self.x, &self.y);
        let gap = (d_xy.clone() - space.dist(&S::zero(), &S::zero())).abs();
        prod.dist(&(self.x.clone(), self.y.clone()), &origin) == self.domain_distance
            && d_xy == self.d_xy
            && gap == self.gap
            && self.holds()
    }
}

/// Smallest `n >= 3` with `(δ − r)/(n − 1)² < r/2`, then
/// `x = r + (δ − r)/n`, `y = r + (δ − r)/(n − 1)`.
pub fn noncontinuity_witness_distance_map<S: Scalar>(r: &S, delta: &S) -> Result<DistanceMapWitness<S>> {
    if *r <= S::zero() {
        return Err(Error::NonPositiveR(r.render()));
    }
    if delta <= r {
        return Err(Error::DeltaNotAboveIndex {
            delta: delta.render(),
            index: r.render(),
        });
    }
    let space = LineSpace::piecewise(r.clone())?;
    let prod = ProductSpace::new(space.clone(), space.clone())?;
    let excess = delta.clone() - r.clone();
    let half_r = r.half();
    let mut n: u64 = 3;
    loop {
        let m = S::from_int(n as i64 - 1);
        if excess.clone() / (m.clone() * m) < half_r {
            break;
        }
        n += 1;
    }
    let x = r.clone() + excess.clone() / S::from_int(n as i64);
    let y = r.clone() + excess / S::from_int(n as i64 - 1);
    let domain_distance = prod.dist(&(x.clone(), y.clone()), &(S::zero(), S::zero()));
    let d_xy = space.dist(&x, &y);
    let gap = (d_xy.clone() - space.dist(&S::zero(), &S::zero())).abs();
    Ok(DistanceMapWitness {
        r: r.clone(),
        delta: delta.clone(),
        n,
        x,
        y,
        domain_distance,
        d_xy,
        gap,
        epsilon: half_r,
    })
}

/// Per-`δ` falsification of uniform continuity for the distance map of the
/// piecewise space; the verdict is negative when every swept `δ` fails.
pub fn distance_map_verdict<S: Scalar>(r: &S, deltas: &[S]) -> Result<UniformityVerdict<S>> {
    let eps = r.half();
    let mut trace = Vec::new();
    for delta in deltas {
        let w = noncontinuity_witness_distance_map(r, delta)?;
        let violation = w.holds().then(|| PairViolation {
            x1: format!("({},{})", w.x.render(), w.y.render()),
            x2: format!("({},{})", S::zero().render(), S::zero().render()),
            d_x: w.domain_distance.clone(),
            d_y: w.gap.clone(),
        });
        trace.push((
            eps.clone(),
            DeltaProbe {
                delta: delta.clone(),
                violation,
            },
        ));
    }
    let all_fail = !trace.is_empty() && trace.iter().all(|(_, p)| p.violation.is_some());
    Ok(UniformityVerdict {
        uniformly_continuous: !all_fail,
        epsilon: all_fail.then_some(eps),
        trace,
        exact: false,
    })
}
