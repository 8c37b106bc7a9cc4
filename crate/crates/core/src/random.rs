//! Seeded generators of finite g-quasi metric spaces, bijections and
//! sequences, for property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::metrics::TableSpace;
use crate::sequences::TabulatedSeq;
use crate::Rational;

fn rational(rng: &mut impl Rng, max_num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(1..=max_num).into(), den.into())
}

/// A random index from a small menu including 0 and non-integers.
pub fn random_index(rng: &mut impl Rng) -> Rational {
    let menu = [(0, 1), (1, 2), (1, 1), (2, 1), (3, 1), (7, 3)];
    let (n, d) = menu[rng.gen_range(0..menu.len())];
    Rational::new(n.into(), d.into())
}

/// Shortest-path closure of random positive (generally asymmetric) weights,
/// shifted by `r`. The closure is a quasi-metric with positive off-diagonal
/// values, so the shift has index `r`.
pub fn closure_table(rng: &mut impl Rng, n: usize, r: &Rational) -> TableSpace<Rational> {
    let zero = Rational::from_integer(0.into());
    let mut d: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        zero.clone()
                    } else {
                        rational(rng, 12, 4)
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].clone() + d[k][j].clone();
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let rows = d
        .into_iter()
        .map(|row| row.into_iter().map(|x| x + r.clone()).collect())
        .collect();
    TableSpace::unlabeled(rows).expect("square table")
}

/// Off-diagonal values drawn from `[a, 2a]` with `a > r`: any two of them
/// sum to at least `2a`, which bounds every single value.
pub fn band_table(rng: &mut impl Rng, n: usize, r: &Rational) -> TableSpace<Rational> {
    let a = r.clone() + rational(rng, 4, 2);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        r.clone()
                    } else {
                        let t = Rational::new(rng.gen_range(0..=8).into(), 8.into());
                        a.clone() + a.clone() * t
                    }
                })
                .collect()
        })
        .collect();
    TableSpace::unlabeled(rows).expect("square table")
}

/// A random finite g-quasi metric space on `1..=max_points` points.
pub fn random_table(rng: &mut impl Rng, max_points: usize) -> TableSpace<Rational> {
    let n = rng.gen_range(1..=max_points);
    let r = random_index(rng);
    random_table_with(rng, n, &r)
}

/// A random finite space with exactly `n` points and index `r`.
pub fn random_table_with(rng: &mut impl Rng, n: usize, r: &Rational) -> TableSpace<Rational> {
    if rng.gen_bool(0.5) {
        closure_table(rng, n, r)
    } else {
        band_table(rng, n, r)
    }
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random terms over `0..points` followed by a constant tail; prefix lengths
/// up to `max_prefix`.
pub fn random_sequence(rng: &mut impl Rng, points: usize, max_prefix: usize) -> TabulatedSeq<usize> {
    let len = rng.gen_range(1..=max_prefix.max(1));
    let terms = (0..len).map(|_| rng.gen_range(0..points)).collect();
    TabulatedSeq::new(terms).expect("nonempty")
}
