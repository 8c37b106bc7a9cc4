//! Named reproductions of the worked examples and theorems, each a list of
//! report checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::maps::{distance_map_verdict, noncontinuity_witness_distance_map, pullback_metric, ProductSpace};
use crate::metrics::{GQuasiMetric, LineSpace, TableSpace};
use crate::numerics::{Extent, Scalar};
use crate::random::{random_permutation, random_table};
use crate::report::Check;
use crate::sequences::{
    certify, product_lemma_check, weak_g_incompleteness_demo, ClosedForm, PairedSeq, Property,
};
use crate::topology::{
    entourage_check_finite, entourage_check_piecewise, induced_gt, not_topology_witness_piecewise,
    EntourageOutcome,
};
use crate::Rational;

pub const EXAMPLES: [&str; 8] = [
    "ex-3-5-not-topology",
    "remark-entourage",
    "remark-two-point",
    "ex-4-5-noncontinuity",
    "ex-5-4-weak-g",
    "ex-5-8-pseudo-product",
    "thm-mu-t1",
    "thm-pullback",
];

/// Optional overrides; each example documents its defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub r: Option<Rational>,
    pub horizon: Option<u64>,
    /// Sweep length or instance count.
    pub k: Option<u64>,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            r: None,
            horizon: None,
            k: None,
            seed: 2024,
        }
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn r_or(params: &Params, default: i64) -> Rational {
    params.r.clone().unwrap_or_else(|| q(default, 1))
}

fn delta_sweep(r: &Rational, count: u64) -> Vec<Rational> {
    (1..=count as i64).map(|k| r.clone() + q(1, k)).collect()
}

pub fn reproduce(id: &str, params: &Params) -> Result<Vec<Check>> {
    match id {
        "ex-3-5-not-topology" => not_topology(&r_or(params, 10)),
        "remark-entourage" => entourage(&r_or(params, 1), params.k.unwrap_or(10)),
        "remark-two-point" => two_point(),
        "ex-4-5-noncontinuity" => noncontinuity(&r_or(params, 1), params.k.unwrap_or(10)),
        "ex-5-4-weak-g" => weak_g(&r_or(params, 1), params.horizon.unwrap_or(10_000)),
        "ex-5-8-pseudo-product" => pseudo_product(params.horizon.unwrap_or(50)),
        "thm-mu-t1" => mu_t1(params.seed, params.k.unwrap_or(20)),
        "thm-pullback" => pullback(params.seed, params.k.unwrap_or(20)),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

fn not_topology(r: &Rational) -> Result<Vec<Check>> {
    let w = not_topology_witness_piecewise(r)?;
    let extent = match &w.extent {
        Extent::Finite(e) => e.render(),
        other => format!("{other:?}"),
    };
    let mut checks = vec![
        Check::new("ball-a", true)
            .formula("center", w.ball_a.0.render())
            .formula("radius", w.ball_a.1.render())
            .derived("ball", &w.ball_a.2),
        Check::new("ball-b", true)
            .formula("center", w.ball_b.0.render())
            .formula("radius", w.ball_b.1.render())
            .derived("ball", &w.ball_b.2),
        Check::new("intersection", w.intersection_matches() && w.reverify())
            .derived("intersection", &w.intersection)
            .formula("expected", &w.expected),
        Check::new("extent-equals-r", w.extent_is_r())
            .derived("extent", extent)
            .formula("r", r.render()),
    ];
    let mut lemma = Check::new("nonempty-ball-extent-exceeds-r", w.lemma.holds());
    for b in &w.lemma.bounds {
        lemma = lemma.derived(
            format!("{:?}", b.shape).to_lowercase(),
            format!(
                "radius > {}, extent > {}",
                b.radius_above.render(),
                b.extent_above.render()
            ),
        );
    }
    checks.push(lemma);
    checks.push(
        Check::new(
            "grid-search",
            w.search.contained.is_empty() && w.search.candidates >= 400,
        )
        .derived("candidates", w.search.candidates)
        .derived("nonempty", w.search.nonempty)
        .derived("contained", w.search.contained.len()),
    );
    Ok(checks)
}

fn entourage(r: &Rational, count: u64) -> Result<Vec<Check>> {
    let space = LineSpace::piecewise(r.clone())?;
    let eps = r.clone() * q(3, 2);
    let mut checks = Vec::new();
    for c in entourage_check_piecewise(&space, &eps, &delta_sweep(r, count))? {
        let mut check =
            Check::new(format!("delta {}", c.delta.render()), c.violated()).formula("epsilon", eps.render());
        if let EntourageOutcome::Violated {
            x,
            y,
            z,
            d_xy,
            d_yz,
            d_xz,
        } = &c.outcome
        {
            check = check
                .formula("triple", format!("({x}, {y}, {z})"))
                .derived("d(x,y)", d_xy.render())
                .derived("d(y,z)", d_yz.render())
                .derived("d(x,z)", d_xz.render());
        }
        checks.push(check);
    }
    // an asymmetric quasi-metric (index 0) on five points
    let pts: Vec<Rational> = [0, 1, 3, 4, 9].iter().map(|&n| q(n, 1)).collect();
    let t = TableSpace::from_rule(&pts, |x, y| {
        let d = y.clone() - x.clone();
        if d >= q(0, 1) {
            d
        } else {
            -d * q(2, 1)
        }
    })?;
    let epsilons: Vec<Rational> = [(1, 2), (1, 1), (2, 1), (5, 1), (10, 1), (30, 1)]
        .iter()
        .map(|&(n, d)| q(n, d))
        .collect();
    let mut all = t.verify_axioms().holds;
    for e in &epsilons {
        all &= entourage_check_finite(&t, e, &[e.half()])?
            .iter()
            .all(|c| c.contained());
    }
    checks.push(
        Check::new("index-0 half entourages compose", all)
            .trivial("points", t.labels().join(" "))
            .derived(
                "epsilons",
                epsilons.iter().map(Scalar::render).collect::<Vec<_>>().join(" "),
            ),
    );
    Ok(checks)
}

fn two_point() -> Result<Vec<Check>> {
    let labels = || vec!["x".to_string(), "y".to_string()];
    let d1 = TableSpace::new(labels(), vec![vec![q(3, 1), q(4, 1)], vec![q(4, 1), q(3, 1)]])?;
    let d2 = TableSpace::new(labels(), vec![vec![q(5, 1), q(6, 1)], vec![q(6, 1), q(5, 1)]])?;
    let g1 = induced_gt(&d1)?;
    let g2 = induced_gt(&d2)?;
    let discrete = |g: &crate::topology::GenTopology| g.len() == 4 && g.is_topology();
    Ok(vec![
        Check::new("axioms", d1.verify_axioms().holds && d2.verify_axioms().holds)
            .formula("index d1", d1.index().render())
            .formula("index d2", d2.index().render()),
        Check::new("both discrete", discrete(&g1) && discrete(&g2)).derived("opens", g1.len()),
        Check::new("same generalized topology", g1 == g2 && d1.index() != d2.index()),
    ])
}

fn noncontinuity(r: &Rational, count: u64) -> Result<Vec<Check>> {
    let deltas = delta_sweep(r, count);
    let mut checks = Vec::new();
    for delta in &deltas {
        let w = noncontinuity_witness_distance_map(r, delta)?;
        checks.push(
            Check::new(format!("delta {}", delta.render()), w.holds() && w.reverify())
                .derived("n", w.n)
                .formula("x", w.x.render())
                .formula("y", w.y.render())
                .derived("max{d(x,0),d(y,0)}", w.domain_distance.render())
                .derived("d(x,y)", w.d_xy.render())
                .derived("gap", w.gap.render())
                .formula("epsilon", w.epsilon.render()),
        );
    }
    let verdict = distance_map_verdict(r, &deltas)?;
    checks.push(
        Check::new(
            "not uniformly continuous on the sweep",
            !verdict.uniformly_continuous,
        )
        .formula("epsilon", r.half().render())
        .derived("deltas", deltas.len()),
    );
    Ok(checks)
}

fn weak_g(r: &Rational, horizon: u64) -> Result<Vec<Check>> {
    let centers = [q(0, 1), q(5, 1), q(100, 1)];
    let demo = weak_g_incompleteness_demo(r, &centers, horizon)?;
    let mut checks = Vec::new();
    for c in &demo.certificates {
        let w = c.witness.as_ref().expect("verified certificates carry a witness");
        checks.push(
            Check::new(format!("g-cauchy epsilon {}", c.epsilon.render()), c.verified())
                .trivial("k", c.k)
                .trivial("horizon", c.horizon)
                .derived("max consecutive distance", w.distance.render())
                .derived("at", format!("({}, {})", w.m, w.n)),
        );
    }
    for (center, scan) in &demo.scans {
        let list = scan
            .indices
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        checks.push(
            Check::new(
                format!("ball at {} holds finitely many terms", center.render()),
                scan.within_cutoff(),
            )
            .formula("radius", (r.clone() * q(3, 2)).render())
            .derived("indices", format!("{{{list}}}"))
            .derived("cutoff", scan.cutoff.map_or("none".into(), |n| n.to_string())),
        );
    }
    Ok(checks)
}

fn pseudo_product(horizon: u64) -> Result<Vec<Check>> {
    let space = LineSpace::piecewise(q(1, 1))?;
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
    let mut checks = Vec::new();
    for (name, seq) in [("x", &x), ("y", &y)] {
        let c = certify(seq, &space, Property::PseudoCauchy, &q(3, 2), 5, horizon)?;
        let w = c.witness.as_ref().expect("witness");
        checks.push(
            Check::new(format!("{name} pseudo-cauchy at 3/2"), c.verified())
                .derived("pair", format!("({}, {})", w.m, w.n))
                .derived("distance", w.distance.render()),
        );
    }
    let lemma = product_lemma_check(
        &x,
        &y,
        &space,
        &space,
        Property::PseudoCauchy,
        &q(2, 1),
        1,
        horizon,
    )?;
    let prod = ProductSpace::new(space.clone(), space)?;
    let pair = PairedSeq::new(x, y);
    let closest = lemma.pair.witness.as_ref().expect("witness");
    checks.push(
        Check::new(
            "pair refuted at 2",
            !lemma.pair.verified() && closest.distance > q(2, 1) && lemma.pair.reverify(&pair, &prod),
        )
        .trivial("horizon", horizon)
        .derived("pairs checked", lemma.pair.pairs_checked)
        .derived("smallest distance", closest.distance.render())
        .derived("at", format!("({}, {})", closest.m, closest.n)),
    );
    checks.push(Check::new(
        "components verified at 2",
        lemma.left.verified() && lemma.right.verified(),
    ));
    checks.push(Check::new(
        "converse fails",
        lemma.consistent() && lemma.converse_fails(),
    ));
    Ok(checks)
}

fn mu_t1(seed: u64, count: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..count {
        let t = random_table(&mut rng, 5);
        let sep = induced_gt(&t)?.check_separation()?;
        if !(sep.t0 && sep.t1 && sep.singletons_closed) {
            failures += 1;
        }
    }
    let three = TableSpace::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![q(1, 1), q(2, 1), q(5, 1)],
            vec![q(2, 1), q(1, 1), q(5, 1)],
            vec![q(5, 1), q(5, 1), q(1, 1)],
        ],
    )?;
    let sep = induced_gt(&three)?.check_separation()?;
    Ok(vec![
        Check::new(
            "three-point table is mu-T1",
            sep.t1 && sep.t0 && sep.singletons_closed,
        ),
        Check::new("random tables are mu-T1", failures == 0)
            .trivial("seed", seed)
            .trivial("instances", count)
            .derived("failures", failures),
    ])
}

fn pullback(seed: u64, count: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..count {
        let t = random_table(&mut rng, 5);
        let perm = random_permutation(&mut rng, t.labels().len());
        let codomain: Vec<String> = (0..perm.len()).map(|i| format!("y{i}")).collect();
        let p = pullback_metric(&t, codomain, &perm)?;
        let same_sep = induced_gt(&t)?.check_separation()? == p.induced.check_separation()?;
        if !(p.metric.index() == t.index() && p.families_equal() && same_sep) {
            failures += 1;
        }
    }
    Ok(vec![Check::new(
        "index and induced family preserved",
        failures == 0,
    )
    .trivial("seed", seed)
    .trivial("instances", count)
    .derived("failures", failures)])
}
