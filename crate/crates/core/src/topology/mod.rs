//! Generalized topologies on finite ground sets.
//!
//! A generalized topology contains `∅` and is closed under arbitrary unions;
//! it is strong when the ground set itself is open. Subsets are bitmasks over
//! at most [`MAX_GROUND`] points.

mod entourage;
mod induced;
mod witness;

use std::collections::BTreeSet;
use std::fmt;

pub use entourage::{
    entourage_base_check, entourage_check_finite, entourage_check_piecewise, EntourageCheck, EntourageOutcome,
};
pub use induced::{ball_radii, induced_gt};
pub use witness::{not_topology_witness_piecewise, ExtentLemma, GridSearch, NotTopologyWitness, ShapeBound};

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 16;

/// Subset of `{0, …, n − 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PointSet(u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        PointSet(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        PointSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Complement within a ground set of `n` points.
    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & Self::full(n).0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Image under an index map.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_indices(self.indices().map(f))
    }

    /// Ordering key: cardinality first, then the sorted index list.
    fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.indices().collect())
    }
}

/// A generalized topology on a finite labeled ground set, with opens in
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTopology {
    ground: Vec<String>,
    opens: Vec<PointSet>,
}

fn check_ground(ground: &[String]) -> Result<()> {
    if ground.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    if ground.len() > MAX_GROUND {
        return Err(Error::TooManyPoints(ground.len()));
    }
    let distinct: BTreeSet<&String> = ground.iter().collect();
    if distinct.len() != ground.len() {
        let dup = ground
            .iter()
            .find(|l| ground.iter().filter(|m| m == l).count() > 1);
        return Err(Error::DuplicateLabel(dup.cloned().unwrap_or_default()));
    }
    Ok(())
}

fn canonicalize(opens: impl IntoIterator<Item = PointSet>) -> Vec<PointSet> {
    let mut v: Vec<PointSet> = opens.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    v.sort_by_cached_key(|s| s.canonical_key());
    v
}

// BTreeSet needs an order; any total order works before canonical sorting.
impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

/// All unions of base elements (including the empty union).
pub fn generate_gt(ground: Vec<String>, base: &[PointSet]) -> Result<GenTopology> {
    check_ground(&ground)?;
    let full = PointSet::full(ground.len());
    if let Some(bad) = base.iter().find(|b| !b.is_subset(full)) {
        return Err(Error::BaseElementNotSubset(format!("{:#b}", bad.bits())));
    }
    let mut opens: BTreeSet<PointSet> = BTreeSet::from([PointSet::EMPTY]);
    for &b in base {
        if opens.contains(&b) {
            continue;
        }
        let extended: Vec<PointSet> = opens.iter().map(|o| o.union(b)).collect();
        opens.extend(extended);
    }
    Ok(GenTopology {
        ground,
        opens: canonicalize(opens),
    })
}

/// [`generate_gt`] with base elements given by label.
pub fn generate_gt_labeled(ground: Vec<String>, base: &[Vec<String>]) -> Result<GenTopology> {
    check_ground(&ground)?;
    let sets = base
        .iter()
        .map(|elem| {
            elem.iter()
                .map(|l| {
                    ground
                        .iter()
                        .position(|g| g == l)
                        .ok_or_else(|| Error::BaseElementNotSubset(format!("{{{}}}", elem.join(","))))
                })
                .collect::<Result<Vec<usize>>>()
                .map(PointSet::from_indices)
        })
        .collect::<Result<Vec<PointSet>>>()?;
    generate_gt(ground, &sets)
}

/// Why a generalized topology fails to be a topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopologyDiagnosis {
    Topology,
    GroundMissing,
    IntersectionNotOpen {
        a: PointSet,
        b: PointSet,
        meet: PointSet,
    },
}

impl TopologyDiagnosis {
    pub fn is_topology(&self) -> bool {
        matches!(self, TopologyDiagnosis::Topology)
    }
}

/// Outcome of the μ-T0 / μ-T1 / closed-singleton checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub t0: bool,
    pub t1: bool,
    pub singletons_closed: bool,
    /// Pair with no open containing exactly one of them.
    pub t0_witness: Option<(usize, usize)>,
    /// Ordered pair `(x, y)` with no open containing `x` but not `y`.
    pub t1_witness: Option<(usize, usize)>,
    /// Point whose complement is not open.
    pub singleton_witness: Option<usize>,
}

impl SeparationReport {
    /// `t1 ⇒ t0` and `t1 ⇒ singletons_closed`.
    pub fn implications_hold(&self) -> bool {
        (!self.t1 || self.t0) && (!self.t1 || self.singletons_closed)
    }
}

impl GenTopology {
    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.ground.len())
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        self.opens.contains(&set)
    }

    pub fn is_strong(&self) -> bool {
        self.is_open(self.full())
    }

    /// Whether all pairwise unions are open.
    pub fn is_union_closed(&self) -> bool {
        self.opens
            .iter()
            .all(|&a| self.opens.iter().all(|&b| self.is_open(a.union(b))))
    }

    /// Ground present and pairwise intersections open; pairwise suffices
    /// because the family is finite and union-closed.
    pub fn diagnose(&self) -> TopologyDiagnosis {
        if !self.is_strong() {
            return TopologyDiagnosis::GroundMissing;
        }
        for (i, &a) in self.opens.iter().enumerate() {
            for &b in &self.opens[i + 1..] {
                let meet = a.intersection(b);
                if !self.is_open(meet) {
                    return TopologyDiagnosis::IntersectionNotOpen { a, b, meet };
                }
            }
        }
        TopologyDiagnosis::Topology
    }

    pub fn is_topology(&self) -> bool {
        self.diagnose().is_topology()
    }

    pub fn check_separation(&self) -> Result<SeparationReport> {
        if !self.is_strong() {
            return Err(Error::NotStrong);
        }
        let n = self.ground.len();
        let separates = |x: usize, y: usize| self.opens.iter().any(|o| o.contains(x) && !o.contains(y));
        let mut t0_witness = None;
        let mut t1_witness = None;
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let xy = separates(x, y);
                if !xy && t1_witness.is_none() {
                    t1_witness = Some((x, y));
                }
                if x < y && !xy && !separates(y, x) && t0_witness.is_none() {
                    t0_witness = Some((x, y));
                }
            }
        }
        let singleton_witness = (0..n).find(|&x| !self.is_open(PointSet::singleton(x).complement(n)));
        Ok(SeparationReport {
            t0: t0_witness.is_none(),
            t1: t1_witness.is_none(),
            singletons_closed: singleton_witness.is_none(),
            t0_witness,
            t1_witness,
            singleton_witness,
        })
    }

    /// Image family `{f(U)}` on a new ground set; `images[i]` is the index of
    /// the image of point `i`.
    pub fn image(&self, ground: Vec<String>, images: &[usize]) -> Result<GenTopology> {
        check_ground(&ground)?;
        let opens = self.opens.iter().map(|o| o.map(|i| images[i]));
        Ok(GenTopology {
            ground,
            opens: canonicalize(opens),
        })
    }

    /// Preimage of an open under an index map into this ground set.
    pub fn preimage(set: PointSet, images: &[usize]) -> PointSet {
        PointSet::from_indices((0..images.len()).filter(|&i| set.contains(images[i])))
    }

    pub fn render_set(&self, set: PointSet) -> String {
        let labels: Vec<&str> = set.indices().map(|i| self.ground[i].as_str()).collect();
        format!("{{{}}}", labels.join(", "))
    }

    /// Text form: a `ground` header line, then one open per line.
    pub fn render(&self) -> String {
        let mut out = format!("ground {}\n", self.render_set(self.full()));
        for &o in &self.opens {
            out.push_str(&self.render_set(o));
            out.push('\n');
        }
        out
    }

    /// Parses the text form. The listed family is closed under unions, so
    /// a base file in the same format yields the generated topology.
    pub fn parse(text: &str) -> Result<GenTopology> {
        let mut ground: Option<Vec<String>> = None;
        let mut base = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| Error::Parse {
                line: lineno + 1,
                message: message.into(),
            };
            if let Some(rest) = line.strip_prefix("ground") {
                ground = Some(parse_braced(rest.trim()).ok_or_else(|| err("malformed ground set"))?);
            } else {
                if ground.is_none() {
                    return Err(err("subset before the ground line"));
                }
                base.push(parse_braced(line).ok_or_else(|| err("malformed subset"))?);
            }
        }
        let ground = ground.ok_or(Error::Parse {
            line: 1,
            message: "missing ground line".into(),
        })?;
        generate_gt_labeled(ground, &base)
    }
}

fn parse_braced(text: &str) -> Option<Vec<String>> {
    let body = text.strip_prefix('{')?.strip_suffix('}')?;
    Some(
        body.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect(),
    )
}

impl fmt::Display for GenTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `true` iff the preimage of every open of `gt_y` is open in `gt_x`;
/// otherwise the first failing open in canonical order.
pub fn check_generalized_continuity(
    images: &[usize],
    gt_x: &GenTopology,
    gt_y: &GenTopology,
) -> Result<Option<PointSet>> {
    if images.len() != gt_x.ground.len() {
        return Err(Error::NotTotal(format!(
            "{} images for {} points",
            images.len(),
            gt_x.ground.len()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&i| i >= gt_y.ground.len()) {
        return Err(Error::PointOutsideCarrier(format!("#{bad}")));
    }
    Ok(gt_y
        .opens
        .iter()
        .copied()
        .find(|&g| !gt_x.is_open(GenTopology::preimage(g, images))))
}
