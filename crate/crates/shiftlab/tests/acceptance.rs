//! Acceptance gate: one test (and one harness pass/fail line) per criterion.
//! Tolerances are pinned as constants next to each check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use shiftlab::countable::{self, CountableSystem, RecurrenceClass};
use shiftlab::fixtures;
use shiftlab::krieger;
use shiftlab::matrix::ratio_to_f64;
use shiftlab::oracle::{self, WorkGuard};
use shiftlab::sft::SftShift;
use shiftlab::spectral::stochasticize;
use shiftlab::system::System;
use shiftlab::ShiftError;

fn sft(name: &str) -> SftShift {
    match fixtures::by_name(name).unwrap().load().unwrap() {
        System::Sft(s) => s,
        other => panic!("{name} loaded as {}", other.kind()),
    }
}

fn sofic(name: &str) -> shiftlab::sofic::LabeledGraph {
    match fixtures::by_name(name).unwrap().load().unwrap() {
        System::Sofic(g) => g,
        other => panic!("{name} loaded as {}", other.kind()),
    }
}

#[test]
fn criterion_1_star_matrix_reproduction() {
    const TOL_LAMBDA: f64 = 1e-10;
    const TOL_VECTOR: f64 = 1e-10;
    const TOL_ROW: f64 = 1e-12;
    const TOL_AVERAGED: f64 = 1e-6;
    const OSCILLATION: f64 = 0.05;
    let s = sft("star-4");
    let sd = s.spectral(1e-13).unwrap();
    assert!((sd.lambda - 3.0f64.sqrt()).abs() < TOL_LAMBDA);
    assert_eq!(sd.period, 2);
    let (p, pm) = stochasticize(s.matrix(), &sd);
    let expect = [0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0];
    for (a, b) in p.iter().zip(expect) {
        assert!((a - b).abs() < TOL_VECTOR, "{p:?}");
    }
    let row0 = [0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
    for (a, b) in pm[0].iter().zip(row0) {
        assert!((a - b).abs() < TOL_ROW, "{:?}", pm[0]);
    }
    // Raw window ratios split by parity; the period-averaged series doesn't.
    let w = s.parse_word("1").unwrap();
    let vals: Vec<f64> = (1..=40)
        .map(|k| ratio_to_f64(&s.natural_measure_ratio(&w, k, k).unwrap()))
        .collect();
    let odd = vals[39 - 1];
    let even = vals[40 - 1];
    assert!((odd - even).abs() > OSCILLATION, "odd {odd} even {even}");
    let averaged = ratio_to_f64(&s.averaged_ratio(&w, 40, 40, sd.period).unwrap());
    assert!((averaged - 0.5).abs() < TOL_AVERAGED, "{averaged}");
}

#[test]
fn criterion_2_sft_oracle_equivalence() {
    const CENSUS_N: usize = 12;
    const WINDOW_TOTAL: usize = 16;
    let guard = WorkGuard::new();
    for name in ["full-2", "golden-mean", "star-4", "upper-triangular"] {
        let s = sft(name);
        for n in 1..=CENSUS_N {
            assert_eq!(
                s.word_count(n).unwrap(),
                oracle::census(&s, n, &guard).unwrap(),
                "{name} n={n}"
            );
            assert_eq!(
                s.periodic_count(n).unwrap(),
                oracle::count_periodic(&s, n, &guard).unwrap(),
                "{name} n={n}"
            );
        }
        for n in 1..=4usize {
            for w in oracle::enumerate_words(&s, n, &guard).unwrap() {
                for (k, l) in [(1usize, 1usize), (2, 2), (3, 5), (6, 6)] {
                    if n + k + l > WINDOW_TOTAL {
                        continue;
                    }
                    let fast = s.natural_measure_ratio(&w, k, l).unwrap();
                    let slow = oracle::cylinder_ratio(&s, &w, k, l, &guard).unwrap();
                    assert_eq!(fast, slow, "{name} w={w:?} k={k} l={l}");
                }
            }
        }
    }
}

#[test]
fn criterion_3_sofic_census() {
    const CENSUS_N: usize = 12;
    let guard = WorkGuard::new();
    for name in ["even-shift", "period-2-sofic"] {
        let g = sofic(name);
        for n in 1..=CENSUS_N {
            assert_eq!(
                g.count_words(n).unwrap(),
                oracle::census(&g, n, &guard).unwrap(),
                "{name} n={n}"
            );
            assert_eq!(
                g.count_periodic(n).unwrap(),
                oracle::count_periodic(&g, n, &guard).unwrap(),
                "{name} n={n}"
            );
        }
    }
}

#[test]
fn criterion_4_sofic_measure_coherence() {
    const TOL: f64 = 1e-6;
    const MAX_LEN: usize = 6;
    let g = sofic("even-shift");
    let guard = WorkGuard::new();
    assert!(g.hidden_markov_check(MAX_LEN, TOL).unwrap());
    for n in 1..=MAX_LEN {
        for w in oracle::enumerate_words(&g, n, &guard).unwrap() {
            let closed = g.natural_measure(&w, 1e-13).unwrap().value;
            let limit = g.natural_measure_limit(&w, 1e-9, 512).unwrap().value;
            let edge = g.edge_shift_measure(&w, 1e-9, 512).unwrap().value;
            let periodic = g.periodic_natural_measure(&w, 1e-9, 512).unwrap().value;
            for (label, v) in [("limit", limit), ("edge", edge), ("periodic", periodic)] {
                assert!((closed - v).abs() < TOL, "w={w:?} closed={closed} {label}={v}");
            }
        }
    }
}

#[test]
fn criterion_5_sofic_uniform_bounds() {
    const MAX_LEN: usize = 10;
    // Products of row-subnormalized 0-1 matrices are partial functions on
    // states, so the closure cap is (N+1)^N; the even shift already exceeds
    // the naive N^N.
    let guard = WorkGuard::new();
    for name in ["even-shift", "period-2-sofic"] {
        let g = sofic(name);
        let n_states = g.vertex_count();
        let bounds = g.uniform_bounds(1e-12).unwrap();
        assert!(bounds.semigroup_size <= (n_states + 1).pow(n_states as u32));
        let lambda = g.spectral(1e-13).unwrap().lambda;
        for n in 1..=MAX_LEN {
            let lam_n = lambda.powi(n as i32);
            for w in oracle::enumerate_words(&g, n, &guard).unwrap() {
                let mu = g.natural_measure(&w, 1e-13).unwrap().value;
                assert!(
                    bounds.alpha / lam_n <= mu + 1e-12 && mu <= bounds.beta / lam_n + 1e-12,
                    "{name} w={w:?}: {} ≤ {mu} ≤ {}",
                    bounds.alpha / lam_n,
                    bounds.beta / lam_n
                );
            }
        }
    }
}

#[test]
fn criterion_6_random_walk() {
    const STIRLING_WINDOW: (f64, f64) = (0.98, 1.02);
    let grid: Vec<(usize, usize)> = vec![(1, 1), (50, 50), (200, 200)];
    let out = countable::random_walk_diagnostic(&grid);
    assert_eq!(out[0].2, BigRational::new(BigInt::from(2), BigInt::from(3)));
    assert!(ratio_to_f64(&out[1].2) < 0.12);
    assert!(out[2].3 > STIRLING_WINDOW.0 && out[2].3 < STIRLING_WINDOW.1);
    // Monotone decrease along the diagonal.
    let diag = countable::random_walk_diagnostic(
        &(1..=50).map(|k| (k, k)).collect::<Vec<_>>(),
    );
    for pair in diag.windows(2) {
        assert!(pair[1].2 < pair[0].2);
    }
    let rw = CountableSystem::RandomWalkZ;
    let rep = countable::classify_recurrence(&rw, 2.0, 400).unwrap();
    assert_eq!(rep.class, RecurrenceClass::NullRecurrent);
    // All-ones eigenvector evidence: interior rows of any truncation sum to
    // λ = 2 exactly.
    let tr = rw.truncate(101).unwrap();
    let sums = tr.matrix.row_sums();
    let interior = sums.iter().filter(|s| s.to_u64() == Some(2)).count();
    assert!(interior >= 99, "{interior}");
}

#[test]
fn criterion_7_context_free() {
    const TOL_LAMBDA: f64 = 1e-3;
    const TOL_EIGEN: f64 = 1e-8;
    const R_SLACK: f64 = 1e-6;
    let closed = 1.0 + (1.0 + 3.0f64.sqrt()).sqrt();
    let spec = krieger::cf_cover();
    let tr = countable::approx_perron(&spec, 1e-10, 500, None).unwrap();
    for pair in tr.lambdas.windows(2) {
        assert!(pair[1] > pair[0]);
    }
    assert!(tr.sizes.iter().all(|&s| s <= 500));
    assert!((tr.lambda - closed).abs() < TOL_LAMBDA, "{}", tr.lambda);
    let rep = countable::classify_recurrence(&spec, tr.lambda, 200).unwrap();
    assert_eq!(rep.class, RecurrenceClass::PositiveRecurrent);
    let lam2 = tr.lambda * tr.lambda;
    for &r in &tr.right {
        assert!(r >= 1.0 / lam2 - R_SLACK && r <= 1.0 + R_SLACK, "{r}");
    }
    let cf = krieger::context_free_shift();
    for n in 1..=10 {
        let m = krieger::nstar_bound(&spec, &cf, n).unwrap();
        assert!(m <= n + 1, "N*_{n} = {m}");
    }
    let facts = krieger::cf_eigen_facts_check(10).unwrap();
    assert!(facts.all_ok, "{facts:?}");
    assert!(facts.ratio_dev < TOL_EIGEN, "{}", facts.ratio_dev);
}

#[test]
fn criterion_8_measure_axioms_and_no_measure() {
    const TOL_ADD: f64 = 1e-9;
    const TOL_AVG: f64 = 1e-3;
    const WINDOW: usize = 10_000;
    let guard = WorkGuard::new();
    // Additivity and normalization wherever a measure exists.
    for name in ["full-2", "golden-mean", "star-4"] {
        let s = sft(name);
        for n in 1..=3 {
            let total: f64 = oracle::enumerate_words(&s, n, &guard)
                .unwrap()
                .iter()
                .map(|w| s.parry_measure(w, 1e-13).unwrap().value)
                .sum();
            assert!((total - 1.0).abs() < TOL_ADD, "{name} n={n}: {total}");
        }
    }
    // The upper-triangular matrix has no natural measure, but the
    // shift-averaged window values still settle.
    let s = sft("upper-triangular");
    let w0 = s.parse_word("0").unwrap();
    let err = s.natural_measure(&w0, 1e-9, 256).unwrap_err();
    assert!(matches!(err, ShiftError::NoNaturalMeasure(_)), "{err:?}");
    for (word, expect) in [("0", 0.5), ("1", 0.5), ("0,1", 0.0)] {
        let w = s.parse_word(word).unwrap();
        let v = s.shift_averaged_measure(&w, WINDOW).unwrap();
        assert!((v - expect).abs() < TOL_AVG, "{word}: {v}");
    }
}

#[test]
fn criterion_9_birkhoff_monte_carlo() {
    // Statistical check (3 standard errors), not an exact identity.
    const LENGTH: usize = 1_000_000;
    const SEED: u64 = 20260826;
    let s = sft("golden-mean");
    let w = s.parse_word("1").unwrap();
    let mu = s.parry_measure(&w, 1e-13).unwrap().value;
    assert!((mu - 0.7236067977499789).abs() < 1e-10);
    let orbit = s.sample_orbit(LENGTH, SEED, 1e-13).unwrap();
    let hits = orbit.symbols().iter().filter(|&&x| x == w.symbols()[0]).count();
    let freq = hits as f64 / LENGTH as f64;
    let se = (mu * (1.0 - mu) / LENGTH as f64).sqrt();
    assert!(
        (freq - mu).abs() < 3.0 * se,
        "freq {freq} vs mu {mu} (se {se})"
    );
}
