//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gquasi::maps::{noncontinuity_witness_distance_map, pullback_metric, ProductSpace};
use gquasi::metrics::{AxiomFailure, Grid, LineSpace, Sample};
use gquasi::numerics::Extent;
use gquasi::random::{closure_table, random_permutation, random_sequence, random_table};
use gquasi::reproduce::{reproduce, Params};
use gquasi::sequences::{
    certify, diagram_check, eventual_constancy_index, finite_space_completeness, product_lemma_check,
    weak_g_incompleteness_demo, ClosedForm, PairedSeq, Property, Sequence,
};
use gquasi::topology::{
    entourage_check_finite, entourage_check_piecewise, induced_gt, not_topology_witness_piecewise,
    EntourageOutcome,
};
use gquasi::{FiniteSpace, GQuasiMetric, IntervalSet, Rational, Scalar};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Piecewise rule written out independently of the library.
fn piecewise(r: &Rational, x: &Rational, y: &Rational) -> Rational {
    let gap = (x.clone() - y.clone()).abs();
    if gap == q(0, 1) {
        r.clone()
    } else if gap <= *r {
        r.clone() * q(2, 1)
    } else {
        gap
    }
}

fn delta_sweep(r: &Rational) -> Vec<Rational> {
    (1..=10).map(|k| r.clone() + q(1, k)).collect()
}

fn not_topology() -> Outcome {
    let mut slowest = Duration::ZERO;
    for r in [1, 5, 10] {
        let r = q(r, 1);
        let start = Instant::now();
        let w = not_topology_witness_piecewise(&r).map_err(|e| e.to_string())?;
        let checks = reproduce(
            "ex-3-5-not-topology",
            &Params {
                r: Some(r.clone()),
                ..Params::default()
            },
        )
        .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);

        let lo = r.clone() * q(21, 10);
        let expected = IntervalSet::open(lo.clone(), r.clone() + lo);
        ensure(w.intersection == expected, || {
            format!("r={r}: intersection {}", w.intersection)
        })?;
        ensure(w.reverify(), || format!("r={r}: balls do not recompute"))?;
        ensure(w.extent == Extent::Finite(r.clone()), || {
            format!("r={r}: extent {:?}", w.extent)
        })?;
        ensure(w.lemma.holds(), || format!("r={r}: extent lemma fails"))?;
        ensure(w.search.candidates >= 400, || {
            format!("r={r}: {} candidates", w.search.candidates)
        })?;
        ensure(w.search.contained.is_empty(), || {
            format!("r={r}: contained ball {:?}", w.search.contained)
        })?;
        ensure(checks.iter().all(|c| c.passed), || {
            format!("r={r}: a reproduction check failed")
        })?;
        ensure(elapsed < Duration::from_secs(1), || {
            format!("r={r}: took {elapsed:?}")
        })?;
    }
    Ok(format!("r in {{1, 5, 10}}, slowest {slowest:.2?}"))
}

fn axiom_suites() -> Outcome {
    let start = Instant::now();
    let mut triples = 0;
    for r in [1, 2, 10] {
        let r = q(r, 1);
        let space = LineSpace::piecewise(r.clone()).map_err(|e| e.to_string())?;
        let grid = Grid::new(r.clone() / q(10, 1), -(r.clone() * q(5, 1)), r.clone() * q(5, 1))
            .map_err(|e| e.to_string())?;
        let report = space
            .verify_axioms(&Sample::Grid(grid))
            .map_err(|e| e.to_string())?;
        ensure(report.holds, || {
            format!("piecewise r={r} fails: {:?}", report.failure)
        })?;
        ensure(report.all_cases_exercised(), || {
            format!("piecewise r={r}: cases {:?}", report.cases)
        })?;
        ensure(report.coverage.triples >= 10_000, || {
            format!("r={r}: {} triples", report.coverage.triples)
        })?;
        triples += report.coverage.triples;
    }

    let shifted = LineSpace::square_shift(q(100, 1), q(2, 1), q(4, 1)).map_err(|e| e.to_string())?;
    let report = shifted
        .verify_axioms(&Sample::Grid(shifted.default_grid()))
        .map_err(|e| e.to_string())?;
    ensure(report.holds, || {
        format!("square shift 100 fails: {:?}", report.failure)
    })?;

    let plain = LineSpace::square_shift(q(0, 1), q(2, 1), q(4, 1)).map_err(|e| e.to_string())?;
    let grid = Grid::new(q(1, 1), q(2, 1), q(4, 1)).map_err(|e| e.to_string())?;
    let report = plain
        .verify_axioms(&Sample::Grid(grid))
        .map_err(|e| e.to_string())?;
    match &report.failure {
        Some(AxiomFailure::Triangle {
            x,
            y,
            z,
            direct,
            detour,
        }) if (x, y, z) == (&q(2, 1), &q(4, 1), &q(3, 1)) && *direct == q(4, 1) && *detour == q(2, 1) => {}
        other => {
            return Err(format!(
                "square shift 0: expected witness (2, 4, 3), got {other:?}"
            ))
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{triples} piecewise triples, witness (2, 4, 3), {elapsed:.2?}"
    ))
}

fn entourage_remark() -> Outcome {
    let mut violations = 0;
    for r in [1, 2] {
        let r = q(r, 1);
        let space = LineSpace::piecewise(r.clone()).map_err(|e| e.to_string())?;
        let target = r.clone() * q(3, 2);
        let deltas = delta_sweep(&r);
        let checks = entourage_check_piecewise(&space, &target, &deltas).map_err(|e| e.to_string())?;
        for (delta, check) in deltas.iter().zip(&checks) {
            let x = q(0, 1);
            let y = r.clone() + (delta.clone() - r.clone()) / q(2, 1);
            let z = r.clone() + delta.clone();
            let oracle = piecewise(&r, &x, &y) < *delta
                && piecewise(&r, &y, &z) < *delta
                && piecewise(&r, &x, &z) >= target;
            let reported = matches!(
                &check.outcome,
                EntourageOutcome::Violated { d_xy, d_yz, d_xz, .. }
                    if *d_xy == piecewise(&r, &x, &y) && *d_yz == piecewise(&r, &y, &z) && *d_xz == piecewise(&r, &x, &z)
            );
            ensure(oracle && reported, || {
                format!("r={r}, delta={delta}: no violation")
            })?;
            violations += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let mut compositions = 0;
    for _ in 0..20 {
        let n = rng.gen_range(2..=5);
        let t = closure_table(&mut rng, n, &q(0, 1));
        let values: Vec<Rational> = t
            .points()
            .iter()
            .flat_map(|x| t.points().into_iter().map(|y| t.dist(x, &y)))
            .collect();
        for eps in values.iter().filter(|v| **v > q(0, 1)) {
            let half = eps.clone() / q(2, 1);
            let checks =
                entourage_check_finite(&t, eps, std::slice::from_ref(&half)).map_err(|e| e.to_string())?;
            ensure(checks.iter().all(|c| c.contained()), || {
                format!("index 0: V_{half} composed escapes V_{eps}")
            })?;
            compositions += 1;
        }
    }
    Ok(format!(
        "{violations} piecewise violations, {compositions} index-0 compositions contained"
    ))
}

fn separation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = 0;
    for _ in 0..100 {
        let t = random_table(&mut rng, 5);
        let gt = induced_gt(&t).map_err(|e| e.to_string())?;
        let sep = gt.check_separation().map_err(|e| e.to_string())?;
        let discrete = gt.len() == 1 << t.len();
        if !(gt.is_strong() && sep.t0 && sep.t1 && sep.singletons_closed && discrete) {
            failures += 1;
        }
    }
    ensure(failures == 0, || format!("{failures} of 100 tables fail"))?;
    Ok("100 random tables, 0 failures".into())
}

fn distance_map_noncontinuity() -> Outcome {
    let mut count = 0;
    for r in [1, 2] {
        let r = q(r, 1);
        for delta in delta_sweep(&r) {
            let w = noncontinuity_witness_distance_map(&r, &delta).map_err(|e| e.to_string())?;
            let zero = q(0, 1);
            let dx = piecewise(&r, &w.x, &zero);
            let dy = piecewise(&r, &w.y, &zero);
            let domain = if dx > dy { dx } else { dy };
            let gap = (piecewise(&r, &w.x, &w.y) - piecewise(&r, &zero, &zero)).abs();
            ensure(w.x != w.y, || format!("r={r}, delta={delta}: x = y"))?;
            ensure(domain < delta, || {
                format!("r={r}, delta={delta}: domain distance {domain}")
            })?;
            ensure(gap >= r.clone() / q(2, 1), || {
                format!("r={r}, delta={delta}: gap {gap}")
            })?;
            ensure(w.holds() && w.reverify() && w.domain_distance == domain, || {
                format!("r={r}, delta={delta}: reported witness disagrees")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} witnesses verified"))
}

fn weak_g_incompleteness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    let centers: Vec<Rational> = (0..20)
        .map(|_| q(rng.gen_range(-400..4000), rng.gen_range(1..=4)))
        .collect();
    let mut certificates = 0;
    for r in [1, 2] {
        let r = q(r, 1);
        let demo = weak_g_incompleteness_demo(&r, &centers, 10_000).map_err(|e| e.to_string())?;
        ensure(demo.certificates.len() == 10, || {
            format!("r={r}: {} certificates", demo.certificates.len())
        })?;
        for (j, c) in demo.certificates.iter().enumerate() {
            let j = j as i64 + 1;
            ensure(
                c.verified() && c.epsilon == r.clone() + q(1, j) && c.k == 10 * j as u64,
                || format!("r={r}: certificate {j} is {:?}", c.status),
            )?;
            certificates += 1;
        }
        let seq = ClosedForm::DriftGap { r: r.clone() };
        let radius = r.clone() * q(3, 2);
        for (center, scan) in &demo.scans {
            let cutoff = scan
                .cutoff
                .ok_or_else(|| format!("r={r}, c={center}: no cutoff"))?;
            ensure(scan.exact() && scan.within_cutoff(), || {
                format!("r={r}, c={center}: exceeds cutoff {cutoff}")
            })?;
            let mut oracle = Vec::new();
            for n in 1..=10_000u64 {
                let x = seq.term(n).map_err(|e| e.to_string())?;
                if piecewise(&r, center, &x) < radius {
                    oracle.push(n);
                }
            }
            ensure(oracle == scan.indices, || {
                format!("r={r}, c={center}: scan disagrees with direct count")
            })?;
        }
    }
    Ok(format!(
        "{certificates} certificates verified, 20 centers within cutoff"
    ))
}

fn lemmas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    let mut converse = 0;
    for i in 0..200 {
        let t = random_table(&mut rng, 5);
        let n = t.len();
        let x = random_sequence(&mut rng, n, 8);
        let y = random_sequence(&mut rng, n, 8);
        let property = Property::ALL[i % 3];
        let eps = t.index() + q(rng.gen_range(1..=24), 4);
        let k = rng.gen_range(1..=6);
        let horizon = k + rng.gen_range(1..=20);
        let l = product_lemma_check(&x, &y, &t, &t, property, &eps, k, horizon).map_err(|e| e.to_string())?;
        ensure(l.consistent(), || {
            format!("instance {i}: {property:?} pair disagrees with components")
        })?;
        if l.converse_fails() {
            converse += 1;
        }
    }

    let line = LineSpace::piecewise(q(1, 1)).map_err(|e| e.to_string())?;
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
    for (name, s) in [("x", &x), ("y", &y)] {
        let c = certify(s, &line, Property::PseudoCauchy, &q(3, 2), 1, 50).map_err(|e| e.to_string())?;
        ensure(c.verified(), || {
            format!("component {name} not pseudo-Cauchy at 3/2")
        })?;
    }
    let product = ProductSpace::new(line.clone(), line.clone()).map_err(|e| e.to_string())?;
    let pair = PairedSeq::new(x.clone(), y.clone());
    let terms = pair.prefix(50).map_err(|e| e.to_string())?;
    let r = q(1, 1);
    for m in 0..50 {
        for n in 0..50 {
            if m == n {
                continue;
            }
            let (a, b) = (&terms[m], &terms[n]);
            let d = std::cmp::max(piecewise(&r, &a.0, &b.0), piecewise(&r, &a.1, &b.1));
            ensure(d > q(2, 1) && d == product.dist(a, b), || {
                format!("pair ({}, {}) at distance {d}", m + 1, n + 1)
            })?;
        }
    }
    let c = certify(&pair, &product, Property::PseudoCauchy, &q(2, 1), 1, 50).map_err(|e| e.to_string())?;
    ensure(!c.verified(), || "product pair verified at 2".into())?;
    Ok(format!(
        "200 instances consistent ({converse} converse failures), alternating pair refuted at 2"
    ))
}

fn diagram() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(58);
    let mut cauchy = 0;
    let mut tails = 0;
    for i in 0..500 {
        let t = random_table(&mut rng, 6);
        let report = finite_space_completeness(&t);
        ensure(
            report.complete && report.g_complete && report.all_hold() && report.diagram_holds(),
            || format!("instance {i}: completeness report {report:?}"),
        )?;
        let seq = random_sequence(&mut rng, t.len(), 10);
        let eps = if rng.gen_bool(0.5) {
            report.epsilon0.clone()
        } else {
            t.index() + q(rng.gen_range(1..=24), 4)
        };
        let k = rng.gen_range(1..=12);
        let horizon = k + rng.gen_range(1..=20);
        let d = diagram_check(&seq, &t, &eps, k, horizon).map_err(|e| e.to_string())?;
        ensure(d.holds(), || {
            format!("instance {i}: Cauchy without G-Cauchy or pseudo-Cauchy")
        })?;
        if d.cauchy.verified() {
            cauchy += 1;
            if eps <= report.epsilon0 {
                let tail =
                    eventual_constancy_index(&seq, &t, &report, &d.cauchy).map_err(|e| e.to_string())?;
                ensure(tail.is_some(), || {
                    format!("instance {i}: Cauchy below threshold but not constant")
                })?;
                tails += 1;
            }
        }
    }
    Ok(format!(
        "500 certificates, {cauchy} Cauchy, {tails} eventually constant, 0 violations"
    ))
}

fn pullback() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..50 {
        let t = random_table(&mut rng, 6);
        let n = t.len();
        let images = random_permutation(&mut rng, n);
        let labels: Vec<String> = (0..n).map(|j| format!("y{j}")).collect();
        let p = pullback_metric(&t, labels.clone(), &images).map_err(|e| e.to_string())?;
        ensure(p.metric.index() == t.index(), || {
            format!("instance {i}: index changed")
        })?;
        for a in 0..n {
            for b in 0..n {
                ensure(p.metric.dist(&images[a], &images[b]) == t.dist(&a, &b), || {
                    format!("instance {i}: d' differs at ({a}, {b})")
                })?;
            }
        }
        let image = induced_gt(&t)
            .map_err(|e| e.to_string())?
            .image(labels, &images)
            .map_err(|e| e.to_string())?;
        let induced = induced_gt(&p.metric).map_err(|e| e.to_string())?;
        ensure(image == induced && p.families_equal(), || {
            format!("instance {i}: families differ")
        })?;
    }
    Ok("50 random bijections, index and family preserved".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 not-a-topology witness", not_topology),
        ("2 axiom suites", axiom_suites),
        ("3 entourage composition", entourage_remark),
        ("4 separation of induced topologies", separation),
        ("5 distance map noncontinuity", distance_map_noncontinuity),
        ("6 weak G-incompleteness", weak_g_incompleteness),
        ("7 product lemmas", lemmas),
        ("8 implication diagram", diagram),
        ("9 pullback invariance", pullback),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
