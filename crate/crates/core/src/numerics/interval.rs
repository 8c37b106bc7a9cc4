//! Finite unions of open intervals plus isolated points.
//!
//! Every ball on the line is cut out by a strict inequality, so open
//! intervals are the only interval kind. Closed endpoints appear as isolated
//! points.

use std::cmp::Ordering;
use std::fmt;

use super::scalar::Scalar;

/// Interval endpoint, possibly infinite.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound<S> {
    NegInf,
    At(S),
    PosInf,
}

impl<S: Scalar> Bound<S> {
    fn cmp_bound(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, Bound::PosInf) => Ordering::Equal,
            (Bound::NegInf, _) | (_, Bound::PosInf) => Ordering::Less,
            (_, Bound::NegInf) | (Bound::PosInf, _) => Ordering::Greater,
            (Bound::At(a), Bound::At(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
        }
    }

    /// Compares against a finite value.
    fn cmp_value(&self, x: &S) -> Ordering {
        self.cmp_bound(&Bound::At(x.clone()))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Bound::At(x) => Some(x),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Bound::NegInf => "-inf".into(),
            Bound::PosInf => "+inf".into(),
            Bound::At(x) => x.render(),
        }
    }
}

/// Open interval `(lo, hi)` with `lo < hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenInterval<S> {
    pub lo: Bound<S>,
    pub hi: Bound<S>,
}

impl<S: Scalar> OpenInterval<S> {
    pub fn contains(&self, x: &S) -> bool {
        self.lo.cmp_value(x) == Ordering::Less && self.hi.cmp_value(x) == Ordering::Greater
    }

    fn is_nonempty(&self) -> bool {
        self.lo.cmp_bound(&self.hi) == Ordering::Less
    }

    /// Some point strictly inside the interval.
    fn interior_point(&self) -> S {
        match (&self.lo, &self.hi) {
            (Bound::At(a), Bound::At(b)) => S::midpoint(a, b),
            (Bound::At(a), _) => a.clone() + S::one(),
            (_, Bound::At(b)) => b.clone() - S::one(),
            _ => S::zero(),
        }
    }
}

/// Result of [`IntervalSet::extent`].
#[derive(Clone, Debug, PartialEq)]
pub enum Extent<S> {
    Empty,
    Finite(S),
    Infinite,
}

/// Normalized union of open intervals and isolated points.
///
/// Invariants after normalization: intervals sorted, pairwise disjoint and
/// not mergeable; points sorted, distinct, and outside every interval.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSet<S> {
    intervals: Vec<OpenInterval<S>>,
    points: Vec<S>,
}

impl<S: Scalar> IntervalSet<S> {
    pub fn empty() -> Self {
        IntervalSet {
            intervals: Vec::new(),
            points: Vec::new(),
        }
    }

    pub fn whole_line() -> Self {
        Self::from_parts(vec![(Bound::NegInf, Bound::PosInf)], vec![])
    }

    /// The open interval `(lo, hi)`; empty when `lo >= hi`.
    pub fn open(lo: S, hi: S) -> Self {
        Self::from_parts(vec![(Bound::At(lo), Bound::At(hi))], vec![])
    }

    /// The closed interval `[lo, hi]`.
    pub fn closed(lo: S, hi: S) -> Self {
        if lo > hi {
            return Self::empty();
        }
        Self::from_parts(vec![(Bound::At(lo.clone()), Bound::At(hi.clone()))], vec![lo, hi])
    }

    pub fn point(x: S) -> Self {
        Self::from_parts(vec![], vec![x])
    }

    /// Builds and normalizes. Empty intervals are dropped.
    pub fn from_parts(intervals: Vec<(Bound<S>, Bound<S>)>, points: Vec<S>) -> Self {
        let mut set = IntervalSet {
            intervals: intervals
                .into_iter()
                .map(|(lo, hi)| OpenInterval { lo, hi })
                .collect(),
            points,
        };
        set.normalize();
        set
    }

    pub fn intervals(&self) -> &[OpenInterval<S>] {
        &self.intervals
    }

    pub fn points(&self) -> &[S] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.points.is_empty()
    }

    pub fn normalize(&mut self) {
        let mut ivs: Vec<OpenInterval<S>> = self.intervals.drain(..).filter(|iv| iv.is_nonempty()).collect();
        ivs.sort_by(|a, b| a.lo.cmp_bound(&b.lo));

        let mut pts = std::mem::take(&mut self.points);
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        pts.dedup();

        let mut merged: Vec<OpenInterval<S>> = Vec::with_capacity(ivs.len());
        for iv in ivs {
            if let Some(last) = merged.last_mut() {
                let touch = last.hi.cmp_bound(&iv.lo);
                let bridged = touch == Ordering::Equal && iv.lo.finite().is_some_and(|x| pts.contains(x));
                if touch == Ordering::Greater || bridged {
                    if last.hi.cmp_bound(&iv.hi) == Ordering::Less {
                        last.hi = iv.hi;
                    }
                    continue;
                }
            }
            merged.push(iv);
        }
        pts.retain(|p| !merged.iter().any(|iv| iv.contains(p)));
        self.intervals = merged;
        self.points = pts;
    }

    pub fn contains(&self, x: &S) -> bool {
        self.points.iter().any(|p| p == x) || self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// Exact intersection.
    pub fn intersect(&self, other: &Self) -> Self {
        let mut intervals = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                let lo = if a.lo.cmp_bound(&b.lo) == Ordering::Less {
                    &b.lo
                } else {
                    &a.lo
                };
                let hi = if a.hi.cmp_bound(&b.hi) == Ordering::Less {
                    &a.hi
                } else {
                    &b.hi
                };
                intervals.push((lo.clone(), hi.clone()));
            }
        }
        let points = self
            .points
            .iter()
            .filter(|p| other.contains(p))
            .chain(other.points.iter().filter(|p| self.contains(p)))
            .cloned()
            .collect();
        Self::from_parts(intervals, points)
    }

    pub fn union(&self, other: &Self) -> Self {
        let intervals = self
            .intervals
            .iter()
            .chain(&other.intervals)
            .map(|iv| (iv.lo.clone(), iv.hi.clone()))
            .collect();
        let points = self.points.iter().chain(&other.points).cloned().collect();
        Self::from_parts(intervals, points)
    }

    /// `Ok(())` when `self ⊆ other`, otherwise an exact element of
    /// `self \ other`.
    pub fn subset_of(&self, other: &Self) -> Result<(), S> {
        if let Some(p) = self.points.iter().find(|p| !other.contains(p)) {
            return Err(p.clone());
        }
        for iv in &self.intervals {
            let covered = other.intervals.iter().any(|b| {
                b.lo.cmp_bound(&iv.lo) != Ordering::Greater && b.hi.cmp_bound(&iv.hi) != Ordering::Less
            });
            if !covered {
                return Err(other.uncovered_point(iv));
            }
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.subset_of(other).is_ok()
    }

    /// A point of `iv` outside `self`; `iv` must not lie inside one interval
    /// of `self`.
    fn uncovered_point(&self, iv: &OpenInterval<S>) -> S {
        // Gaps of `iv` left by the (sorted, disjoint) intervals of self.
        let mut cursor = iv.lo.clone();
        for b in &self.intervals {
            if b.hi.cmp_bound(&cursor) != Ordering::Greater {
                continue;
            }
            if b.lo.cmp_bound(&iv.hi) != Ordering::Less {
                break;
            }
            match b.lo.cmp_bound(&cursor) {
                Ordering::Greater => {
                    let gap = OpenInterval {
                        lo: cursor.clone(),
                        hi: b.lo.clone(),
                    };
                    return self.avoid_points(gap);
                }
                _ => {
                    // `b` covers from `cursor`; its right end is in `iv`
                    // unless it covers everything, which the caller excludes.
                    if b.hi.cmp_bound(&iv.hi) == Ordering::Less {
                        let end = b.hi.finite().expect("finite end inside interval").clone();
                        if !self.contains(&end) {
                            return end;
                        }
                        cursor = b.hi.clone();
                    } else {
                        cursor = iv.hi.clone();
                    }
                }
            }
        }
        self.avoid_points(OpenInterval {
            lo: cursor,
            hi: iv.hi.clone(),
        })
    }

    /// A point of the (nonempty, interval-free) gap that is not an isolated
    /// point of self.
    fn avoid_points(&self, gap: OpenInterval<S>) -> S {
        let mut candidate = gap.interior_point();
        while self.points.contains(&candidate) {
            candidate = OpenInterval {
                lo: gap.lo.clone(),
                hi: Bound::At(candidate),
            }
            .interior_point();
        }
        candidate
    }

    /// `sup − inf` of the convex hull.
    pub fn extent(&self) -> Extent<S> {
        if self.is_empty() {
            return Extent::Empty;
        }
        let mut inf: Option<Bound<S>> = None;
        let mut sup: Option<Bound<S>> = None;
        let candidates = self
            .intervals
            .iter()
            .flat_map(|iv| [iv.lo.clone(), iv.hi.clone()])
            .chain(self.points.iter().cloned().map(Bound::At));
        for b in candidates {
            if inf.as_ref().is_none_or(|i| b.cmp_bound(i) == Ordering::Less) {
                inf = Some(b.clone());
            }
            if sup.as_ref().is_none_or(|s| b.cmp_bound(s) == Ordering::Greater) {
                sup = Some(b);
            }
        }
        match (inf, sup) {
            (Some(Bound::At(i)), Some(Bound::At(s))) => Extent::Finite(s - i),
            _ => Extent::Infinite,
        }
    }

    /// Canonical text, e.g. `(21/1,31/1) u {5/1}`; the empty set is `{}`.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .intervals
            .iter()
            .map(|iv| format!("({},{})", iv.lo.render(), iv.hi.render()))
            .collect();
        if !self.points.is_empty() {
            let pts: Vec<String> = self.points.iter().map(Scalar::render).collect();
            parts.push(format!("{{{}}}", pts.join(",")));
        }
        if parts.is_empty() {
            "{}".into()
        } else {
            parts.join(" u ")
        }
    }

    /// Parses the form produced by [`IntervalSet::render`].
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if text == "{}" {
            return Some(Self::empty());
        }
        let mut intervals = Vec::new();
        let mut points = Vec::new();
        for part in text.split(" u ") {
            let part = part.trim();
            if let Some(body) = part.strip_prefix('(').and_then(|p| p.strip_suffix(')')) {
                let (lo, hi) = body.split_once(',')?;
                let bound = |t: &str| match t.trim() {
                    "-inf" => Some(Bound::NegInf),
                    "+inf" => Some(Bound::PosInf),
                    t => S::parse_exact(t).map(Bound::At),
                };
                intervals.push((bound(lo)?, bound(hi)?));
            } else {
                let body = part.strip_prefix('{').and_then(|p| p.strip_suffix('}'))?;
                for t in body.split(',').filter(|t| !t.trim().is_empty()) {
                    points.push(S::parse_exact(t)?);
                }
            }
        }
        Some(Self::from_parts(intervals, points))
    }
}

impl<S: Scalar> fmt::Display for IntervalSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn set(text: &str) -> IntervalSet<Q> {
        IntervalSet::parse(text).unwrap()
    }

    #[test]
    fn intersect_example_balls() {
        let a = IntervalSet::open(q(-11, 1), q(31, 1));
        let b = IntervalSet::open(q(21, 1), q(63, 1));
        assert_eq!(a.intersect(&b), IntervalSet::open(q(21, 1), q(31, 1)));
        assert!(a.intersect(&IntervalSet::empty()).is_empty());
    }

    #[test]
    fn intersect_with_points_matches_grid_sampling() {
        let a = set("(0/1,2/1) u {5/1}");
        let b = set("(1/1,3/1) u {5/1}");
        let c = a.intersect(&b);
        assert_eq!(c, set("(1/1,2/1) u {5/1}"));
        // membership oracle on a 1/100 grid over [-1, 6]
        for i in -100..=600 {
            let x = q(i, 100);
            assert_eq!(c.contains(&x), a.contains(&x) && b.contains(&x), "x = {}", x);
        }
    }

    #[test]
    fn subset_cases() {
        let i = set("(21/1,31/1)");
        assert_eq!(i.subset_of(&i), Ok(()));
        assert_eq!(
            set("(0/1,2/1) u {5/1}").subset_of(&set("(0/1,3/1)")),
            Err(q(5, 1))
        );
        assert!(IntervalSet::<Q>::empty().is_subset(&i));
        assert!(IntervalSet::<Q>::empty().is_subset(&IntervalSet::empty()));
    }

    #[test]
    fn subset_witness_in_gap_points() {
        // (0,2) ⊄ (0,1) ∪ (1,2): 1 is the only uncovered point
        let a = IntervalSet::open(q(0, 1), q(2, 1));
        let b = set("(0/1,1/1) u (1/1,2/1)");
        assert_eq!(a.subset_of(&b), Err(q(1, 1)));
        // gap filled by isolated points needs another choice
        let b = set("(0/1,1/1) u (3/2,2/1) u {5/4}");
        let w = a.subset_of(&b).unwrap_err();
        assert!(a.contains(&w) && !b.contains(&w));
    }

    #[test]
    fn normalization_merges_bridged_intervals() {
        let s = set("(0/1,1/1) u (1/1,2/1) u {1/1}");
        assert_eq!(s, IntervalSet::open(q(0, 1), q(2, 1)));
        let s = set("(0/1,1/1) u (1/1,2/1)");
        assert_eq!(s.intervals().len(), 2);
        let s = set("(0/1,3/1) u (1/1,2/1) u {2/1,5/1}");
        assert_eq!(s.render(), "(0/1,3/1) u {5/1}");
    }

    #[test]
    fn extents() {
        assert_eq!(set("(21/1,31/1)").extent(), Extent::Finite(q(10, 1)));
        assert_eq!(IntervalSet::point(q(7, 3)).extent(), Extent::Finite(q(0, 1)));
        assert_eq!(set("(0/1,1/1) u {5/1}").extent(), Extent::Finite(q(5, 1)));
        assert_eq!(IntervalSet::<Q>::empty().extent(), Extent::Empty);
        assert_eq!(IntervalSet::<Q>::whole_line().extent(), Extent::Infinite);
    }

    #[test]
    fn closed_interval_has_endpoints() {
        let s = IntervalSet::closed(q(2, 1), q(4, 1));
        assert!(s.contains(&q(2, 1)) && s.contains(&q(4, 1)) && s.contains(&q(3, 1)));
        assert!(!s.contains(&q(41, 10)));
        assert_eq!(s.render(), "(2/1,4/1) u {2/1,4/1}");
    }

    #[test]
    fn render_parse_unbounded() {
        let s = set("(-inf,0/1) u (3/1,+inf)");
        assert!(s.contains(&q(-1000, 1)) && !s.contains(&q(1, 1)));
        assert_eq!(s.extent(), Extent::Infinite);
        let outside = IntervalSet::whole_line().subset_of(&s).unwrap_err();
        assert!(!s.contains(&outside));
    }

    fn arb_set() -> impl Strategy<Value = IntervalSet<Q>> {
        let iv = (-20i64..20, 1i64..10, 1i64..4)
            .prop_map(|(a, len, den)| (Bound::At(q(a, den)), Bound::At(q(a + len, den))));
        let pts = prop::collection::vec((-40i64..40, 1i64..4).prop_map(|(n, d)| q(n, d)), 0..4);
        (prop::collection::vec(iv, 0..4), pts).prop_map(|(ivs, pts)| IntervalSet::from_parts(ivs, pts))
    }

    proptest! {
        #[test]
        fn normalize_idempotent(s in arb_set()) {
            let mut t = s.clone();
            t.normalize();
            prop_assert_eq!(&t, &s);
            prop_assert_eq!(IntervalSet::parse(&s.render()).unwrap(), s);
        }

        #[test]
        fn intersection_membership(a in arb_set(), b in arb_set(),
                                   xs in prop::collection::vec((-250i64..250, 1i64..13), 40)) {
            let c = a.intersect(&b);
            for (n, d) in xs {
                let x = q(n, d);
                prop_assert_eq!(c.contains(&x), a.contains(&x) && b.contains(&x));
            }
        }

        #[test]
        fn subset_iff_intersection_is_self(a in arb_set(), b in arb_set()) {
            let sub = a.subset_of(&b);
            prop_assert_eq!(sub.is_ok(), a.intersect(&b) == a);
            if let Err(w) = sub {
                prop_assert!(a.contains(&w) && !b.contains(&w));
            }
        }
    }
}
