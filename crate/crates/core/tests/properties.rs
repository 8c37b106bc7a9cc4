use gquasi::maps::{
    check_g_uniform_continuity, check_generalized_continuity, noncontinuity_witness_distance_map,
    product_table, pullback_metric,
};
use gquasi::metrics::LineSpace;
use gquasi::random::{
    closure_table, random_index, random_permutation, random_sequence, random_table, random_table_with,
};
use gquasi::sequences::{
    certify, diagram_check, finite_space_completeness, product_lemma_check, Property, Sequence,
};
use gquasi::topology::{generate_gt, induced_gt, PointSet};
use gquasi::{FiniteSpace, GQuasiMetric, Rational, Scalar, TableSpace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn table_values(t: &TableSpace<Rational>) -> Vec<Rational> {
    let pts = t.points();
    let mut v: Vec<Rational> = pts
        .iter()
        .flat_map(|x| pts.iter().map(move |y| t.dist(x, y)))
        .collect();
    v.sort();
    v.dedup();
    v
}

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..5).prop_map(|(n, d)| q(n, d))
}

/// Classical openness at index 0: every point has some `ε > 0` with
/// `B(x, ε) ⊆ U`. On a finite carrier the candidate radii are half of each
/// positive distance value, or any radius on a single point.
fn classical_opens(t: &TableSpace<Rational>) -> Vec<PointSet> {
    let n = t.len();
    let radii: Vec<Rational> = table_values(t)
        .into_iter()
        .filter(|v| *v > q(0, 1))
        .map(|v| v / q(2, 1))
        .chain([q(1, 1)])
        .collect();
    let mut opens: Vec<PointSet> = (0..1u32 << n)
        .map(|bits| PointSet::from_indices((0..n).filter(|i| bits >> i & 1 == 1)))
        .filter(|u| {
            u.indices().all(|x| {
                radii
                    .iter()
                    .any(|p| (0..n).filter(|&y| t.dist(&x, &y) < *p).all(|y| u.contains(y)))
            })
        })
        .collect();
    opens.sort_by_key(|s| (s.len(), s.indices().collect::<Vec<_>>()));
    opens
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_tables_satisfy_axioms(seed in any::<u64>()) {
        let t = random_table(&mut rng(seed), 6);
        prop_assert!(t.verify_axioms().holds);
    }

    #[test]
    fn product_of_tables_is_a_g_quasi_metric(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = random_table(&mut g, 4);
        let n = g.gen_range(1..=4);
        let b = random_table_with(&mut g, n, &a.index());
        let p = product_table(&a, &b).unwrap();
        prop_assert_eq!(p.index(), a.index());
        prop_assert!(p.verify_axioms().holds);
        for i in 0..a.len() {
            for j in 0..b.len() {
                for k in 0..a.len() {
                    for l in 0..b.len() {
                        let expected = std::cmp::max(a.dist(&i, &k), b.dist(&j, &l));
                        prop_assert_eq!(p.dist(&(i * b.len() + j), &(k * b.len() + l)), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn induced_matches_classical_topology_at_index_zero(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=5);
        let t = closure_table(&mut g, n, &q(0, 1));
        let gt = induced_gt(&t).unwrap();
        prop_assert_eq!(gt.opens().to_vec(), classical_opens(&t));
    }

    #[test]
    fn uniform_continuity_matches_brute_force_at_index_zero(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (n, m) = (g.gen_range(1..=4), g.gen_range(1..=4));
        let x = closure_table(&mut g, n, &q(0, 1));
        let y = closure_table(&mut g, m, &q(0, 1));
        let images: Vec<usize> = (0..n).map(|_| g.gen_range(0..m)).collect();
        let verdict = check_g_uniform_continuity(&x, &y, &images).unwrap();
        let deltas: Vec<Rational> = table_values(&x).into_iter().filter(|v| *v > q(0, 1)).collect();
        let epsilons: Vec<Rational> = table_values(&y).into_iter().filter(|v| *v > q(0, 1)).collect();
        let classical = epsilons.iter().all(|eps| {
            deltas.iter().chain(std::iter::once(&q(1, 1000))).any(|delta| {
                (0..n).all(|a| (0..n).all(|b| x.dist(&a, &b) >= *delta || y.dist(&images[a], &images[b]) < *eps))
            })
        });
        prop_assert_eq!(verdict.uniformly_continuous, classical);
        prop_assert!(verdict.witnesses_consistent());
    }

    #[test]
    fn finite_maps_are_continuous_both_ways(seed in any::<u64>()) {
        let mut g = rng(seed);
        let x = random_table(&mut g, 5);
        let m = g.gen_range(1..=5);
        let r = random_index(&mut g);
        let y = random_table_with(&mut g, m, &r);
        let images: Vec<usize> = (0..x.len()).map(|_| g.gen_range(0..m)).collect();
        let verdict = check_g_uniform_continuity(&x, &y, &images).unwrap();
        prop_assert!(verdict.uniformly_continuous && verdict.exact);
        let failing = check_generalized_continuity(&images, &induced_gt(&x).unwrap(), &induced_gt(&y).unwrap()).unwrap();
        prop_assert_eq!(failing, None);
    }

    #[test]
    fn distance_map_witness_survives_larger_delta(r in 1i64..5, num in 1i64..200, den in 1i64..20, extra in 0i64..50) {
        let r = q(r, 1);
        let delta = r.clone() + q(num, den);
        let w = noncontinuity_witness_distance_map(&r, &delta).unwrap();
        prop_assert!(w.holds() && w.reverify() && w.n >= 3);
        let wider = delta + q(extra, 1);
        prop_assert!(w.domain_distance < wider);
    }

    #[test]
    fn piecewise_balls_match_membership(r in 1i64..4, c in rational(), p in rational(), probes in prop::collection::vec(rational(), 20)) {
        prop_assume!(p > q(0, 1));
        let r = q(r, 1);
        let space = LineSpace::piecewise(r).unwrap();
        let ball = space.ball(&c, &p).unwrap();
        for y in probes.iter().chain([c.clone(), c.clone() + p.clone(), c.clone() - p.clone()].iter()) {
            prop_assert_eq!(ball.contains(y), space.dist(&c, y) < p);
        }
    }

    #[test]
    fn generated_families_are_union_closed(n in 1usize..7, bases in prop::collection::vec(any::<u32>(), 0..6)) {
        let ground: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mask = (1u32 << n) - 1;
        let base: Vec<PointSet> = bases.iter().map(|b| PointSet::from_indices((0..n).filter(|i| (b & mask) >> i & 1 == 1))).collect();
        let gt = generate_gt(ground, &base).unwrap();
        prop_assert!(gt.is_union_closed());
        prop_assert!(gt.is_open(PointSet::EMPTY));
        for b in &base {
            prop_assert!(gt.is_open(*b));
        }
        for u in gt.opens() {
            let covered = base.iter().filter(|b| b.is_subset(*u)).fold(PointSet::EMPTY, |acc, b| acc.union(*b));
            prop_assert_eq!(covered, *u);
        }
    }

    #[test]
    fn separation_implications(n in 1usize..7, bases in prop::collection::vec(any::<u32>(), 0..8)) {
        let ground: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mut base: Vec<PointSet> = bases.iter().map(|b| PointSet::from_indices((0..n).filter(|i| b >> i & 1 == 1))).collect();
        base.push(PointSet::full(n));
        let gt = generate_gt(ground, &base).unwrap();
        let s = gt.check_separation().unwrap();
        prop_assert!(s.implications_hold());
        let t0 = (0..n).all(|x| (0..n).all(|y| x == y || gt.opens().iter().any(|u| u.contains(x) != u.contains(y))));
        let t1 = (0..n).all(|x| (0..n).all(|y| x == y || gt.opens().iter().any(|u| u.contains(x) && !u.contains(y))));
        prop_assert_eq!(s.t0, t0);
        prop_assert_eq!(s.t1, t1);
    }

    #[test]
    fn cauchy_implies_the_weaker_notions(seed in any::<u64>(), k in 1u64..8, extra in 1u64..20) {
        let mut g = rng(seed);
        let t = random_table(&mut g, 6);
        let seq = random_sequence(&mut g, t.len(), 10);
        let eps = t.index() + q(g.gen_range(1..=20), 4);
        let d = diagram_check(&seq, &t, &eps, k, k + extra).unwrap();
        prop_assert!(d.holds());
        let report = finite_space_completeness(&t);
        prop_assert!(report.all_hold() && report.diagram_holds());
    }

    #[test]
    fn certificates_reverify(seed in any::<u64>(), k in 1u64..6, extra in 1u64..15) {
        let mut g = rng(seed);
        let t = random_table(&mut g, 5);
        let seq = random_sequence(&mut g, t.len(), 8);
        let eps = t.index() + q(g.gen_range(1..=20), 4);
        for property in Property::ALL {
            let c = certify(&seq, &t, property, &eps, k, k + extra).unwrap();
            prop_assert!(c.reverify(&seq, &t));
            if c.property == Property::Cauchy && c.verified() {
                let terms = seq.prefix(k + extra).unwrap();
                for m in k..=k + extra {
                    for n in k..=k + extra {
                        prop_assert!(t.dist(&terms[m as usize - 1], &terms[n as usize - 1]) < eps);
                    }
                }
            }
        }
    }

    #[test]
    fn product_lemma_biconditional(seed in any::<u64>(), k in 1u64..6, extra in 1u64..15) {
        let mut g = rng(seed);
        let t = random_table(&mut g, 5);
        let x = random_sequence(&mut g, t.len(), 8);
        let y = random_sequence(&mut g, t.len(), 8);
        let eps = t.index() + q(g.gen_range(1..=20), 4);
        for property in Property::ALL {
            let l = product_lemma_check(&x, &y, &t, &t, property, &eps, k, k + extra).unwrap();
            prop_assert!(l.consistent());
        }
    }

    #[test]
    fn pullback_preserves_everything(seed in any::<u64>()) {
        let mut g = rng(seed);
        let t = random_table(&mut g, 6);
        let images = random_permutation(&mut g, t.len());
        let labels: Vec<String> = (0..t.len()).map(|i| format!("y{i}")).collect();
        let p = pullback_metric(&t, labels, &images).unwrap();
        prop_assert_eq!(p.metric.index(), t.index());
        prop_assert!(p.metric.verify_axioms().holds);
        prop_assert!(p.families_equal());
    }
}
