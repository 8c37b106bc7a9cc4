use super::{certify, Certificate, ClosedForm, Property, Sequence};
use crate::error::{Error, Result};
use crate::metrics::{FiniteSpace, GQuasiMetric, LineSpace};
use crate::numerics::Scalar;
use crate::topology::ball_radii;

/// Indices `n <= horizon` with `d(center, x_n) < radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterScan {
    pub indices: Vec<u64>,
    pub horizon: u64,
    /// No index at or beyond the cutoff can enter the ball.
    pub cutoff: Option<u64>,
}

impl ClusterScan {
    /// The list is complete, not just complete up to the horizon.
    pub fn exact(&self) -> bool {
        self.cutoff.is_some_and(|n| n <= self.horizon + 1)
    }

    pub fn within_cutoff(&self) -> bool {
        self.cutoff.is_none_or(|n| self.indices.iter().all(|&i| i < n))
    }
}

/// Lists the terms inside `B(center, radius)`. A radius at or below the
/// index gives an empty ball and an empty list.
pub fn cluster_scan<S, M, Q>(
    seq: &Q,
    space: &M,
    center: &M::Point,
    radius: &S,
    horizon: u64,
) -> Result<ClusterScan>
where
    S: Scalar,
    M: GQuasiMetric<S>,
    Q: Sequence<M::Point>,
{
    if !space.contains(center) {
        return Err(Error::PointOutsideCarrier(space.render_point(center)));
    }
    let mut indices = Vec::new();
    if *radius > space.index() {
        for n in 1..=horizon {
            if space.dist(center, &seq.term(n)?) < *radius {
                indices.push(n);
            }
        }
    }
    Ok(ClusterScan {
        indices,
        horizon,
        cutoff: None,
    })
}

/// For `x_n = r·n − r/n` in the piecewise space: every ball `B(c, p)` lies in
/// `(c − p, c + p)` and `x_n >= r·(n − 1)`, so no `n >= ⌈(c + p)/r⌉ + 1`
/// enters it.
pub fn drift_gap_cutoff<S: Scalar>(r: &S, center: &S, radius: &S) -> Result<u64> {
    if *r <= S::zero() {
        return Err(Error::NonPositiveR(r.render()));
    }
    let bound = (center.clone() + radius.clone()) / r.clone();
    let ceil = bound.ceil_int().ok_or_else(|| {
        Error::InvalidParameters(format!("cutoff for {} not representable", bound.render()))
    })?;
    Ok((ceil + 1).max(1) as u64)
}

/// [`cluster_scan`] for the drift-gap sequence in the piecewise space, with
/// the analytic cutoff attached.
fn drift_gap_scan<S: Scalar>(r: &S, center: &S, radius: &S, horizon: u64) -> Result<ClusterScan> {
    let space = LineSpace::piecewise(r.clone())?;
    let seq = ClosedForm::DriftGap { r: r.clone() };
    let mut scan = cluster_scan(&seq, &space, center, radius, horizon)?;
    scan.cutoff = Some(drift_gap_cutoff(r, center, radius)?);
    Ok(scan)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeakGDemo<S> {
    pub r: S,
    /// G-Cauchy certificates at `ε = r + 1/j` from index `10·j`.
    pub certificates: Vec<Certificate<S>>,
    /// Scans of `B(c, 3r/2)` per center.
    pub scans: Vec<(S, ClusterScan)>,
}

impl<S: Scalar> WeakGDemo<S> {
    pub fn holds(&self) -> bool {
        self.certificates.iter().all(Certificate::verified)
            && self.scans.iter().all(|(_, s)| s.within_cutoff())
    }
}

/// The drift-gap sequence is G-Cauchy yet every ball of radius `3r/2`
/// captures only finitely many terms, so it has no cluster point.
pub fn weak_g_incompleteness_demo<S: Scalar>(r: &S, centers: &[S], horizon: u64) -> Result<WeakGDemo<S>> {
    if *r <= S::zero() {
        return Err(Error::NonPositiveR(r.render()));
    }
    let space = LineSpace::piecewise(r.clone())?;
    let seq = ClosedForm::DriftGap { r: r.clone() };
    let mut certificates = Vec::new();
    for j in 1..=10u64 {
        let eps = r.clone() + S::one() / S::from_int(j as i64);
        let k = 10 * j;
        if horizon > k {
            certificates.push(certify(&seq, &space, Property::GCauchy, &eps, k, horizon)?);
        }
    }
    let radius = r.clone() * S::ratio(3, 2);
    let scans = centers
        .iter()
        .map(|c| drift_gap_scan(r, c, &radius, horizon).map(|s| (c.clone(), s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeakGDemo {
        r: r.clone(),
        certificates,
        scans,
    })
}

/// Balls `B(x, p)` containing `c`, over all centers and threshold radii.
fn balls_around<S: Scalar, M: FiniteSpace<S>>(space: &M, c: &M::Point) -> Vec<Vec<bool>> {
    let pts = space.points();
    let radii = ball_radii(space);
    let mut balls = Vec::new();
    for x in &pts {
        for p in &radii {
            if space.dist(x, c) < *p {
                balls.push(pts.iter().map(|y| space.dist(x, y) < *p).collect());
            }
        }
    }
    balls
}

fn membership<S: Scalar, M: FiniteSpace<S>, Q: Sequence<M::Point>>(
    seq: &Q,
    space: &M,
    horizon: u64,
) -> Result<Vec<usize>> {
    let pts = space.points();
    seq.prefix(horizon)?
        .iter()
        .map(|t| {
            pts.iter()
                .position(|p| p == t)
                .ok_or_else(|| Error::PointOutsideCarrier(space.render_point(t)))
        })
        .collect()
}

/// Every basic ball containing `c` holds all terms with index in
/// `[⌈horizon/2⌉, horizon]`.
pub fn converges_to<S: Scalar, M: FiniteSpace<S>, Q: Sequence<M::Point>>(
    seq: &Q,
    space: &M,
    c: &M::Point,
    horizon: u64,
) -> Result<bool> {
    let terms = membership(seq, space, horizon)?;
    let start = horizon.div_ceil(2).max(1) as usize;
    Ok(balls_around(space, c)
        .iter()
        .all(|ball| terms[start - 1..].iter().all(|&t| ball[t])))
}

/// Every basic ball containing `c` holds at least `⌈horizon/4⌉` of the first
/// `horizon` terms.
pub fn cluster_check<S: Scalar, M: FiniteSpace<S>, Q: Sequence<M::Point>>(
    seq: &Q,
    space: &M,
    c: &M::Point,
    horizon: u64,
) -> Result<bool> {
    let terms = membership(seq, space, horizon)?;
    let need = horizon.div_ceil(4) as usize;
    Ok(balls_around(space, c)
        .iter()
        .all(|ball| terms.iter().filter(|&&t| ball[t]).count() >= need))
}
