//! Randomized invariants: fast formulas against the enumeration oracle, and
//! measure axioms on the fixture systems.

use num_traits::ToPrimitive;
use proptest::prelude::*;

use shiftlab::matrix::{Alphabet, NonnegMatrix, Symbol, Word};
use shiftlab::oracle::{self, WorkGuard};
use shiftlab::sft::SftShift;
use shiftlab::sofic::LabeledGraph;
use shiftlab::system::System;

/// A random 0-1 matrix with a forced full cycle, hence irreducible.
fn irreducible_matrix(dim: usize, bits: u64) -> NonnegMatrix {
    let mut rows = vec![vec![0u64; dim]; dim];
    let mut b = bits;
    for i in 0..dim {
        for j in 0..dim {
            rows[i][j] = b & 1;
            b >>= 1;
        }
    }
    for i in 0..dim {
        rows[i][(i + 1) % dim] = 1;
    }
    NonnegMatrix::from_rows(&rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sft_census_matches_oracle(dim in 2usize..5, bits in 0u64..(1 << 16)) {
        let m = irreducible_matrix(dim, bits);
        let s = SftShift::new(m.clone(), Alphabet::numeric(dim)).unwrap();
        let guard = WorkGuard::new();
        for n in 1..=6 {
            prop_assert_eq!(s.word_count(n).unwrap(), oracle::census(&s, n, &guard).unwrap());
            prop_assert_eq!(
                s.periodic_count(n).unwrap(),
                oracle::count_periodic(&s, n, &guard).unwrap()
            );
        }
    }

    #[test]
    fn sft_cylinder_ratio_matches_oracle(dim in 2usize..4, bits in 0u64..(1 << 9), k in 1usize..3, l in 1usize..3) {
        let m = irreducible_matrix(dim, bits);
        let s = SftShift::new(m, Alphabet::numeric(dim)).unwrap();
        let guard = WorkGuard::new();
        for w in oracle::enumerate_words(&s, 2, &guard).unwrap() {
            let fast = s.natural_measure_ratio(&w, k, l).unwrap();
            let slow = oracle::cylinder_ratio(&s, &w, k, l, &guard).unwrap();
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn parry_measure_axioms(dim in 2usize..5, bits in 0u64..(1 << 16)) {
        let m = irreducible_matrix(dim, bits);
        let s = SftShift::new(m, Alphabet::numeric(dim)).unwrap();
        let guard = WorkGuard::new();
        // Normalization over each word length.
        for n in 1..=3 {
            let total: f64 = oracle::enumerate_words(&s, n, &guard)
                .unwrap()
                .iter()
                .map(|w| s.parry_measure(w, 1e-13).unwrap().value)
                .sum();
            prop_assert!((total - 1.0).abs() < 1e-9, "n={n}: {total}");
        }
        // Additivity under both one-sided extensions.
        for w in oracle::enumerate_words(&s, 2, &guard).unwrap() {
            let mu = s.parry_measure(&w, 1e-13).unwrap().value;
            let mut right = 0.0;
            let mut left = 0.0;
            for t in 0..dim {
                let mut ws = w.symbols().to_vec();
                ws.push(Symbol(t));
                right += s.parry_measure(&Word::new(ws).unwrap(), 1e-13).unwrap().value;
                let mut sw = vec![Symbol(t)];
                sw.extend_from_slice(w.symbols());
                left += s.parry_measure(&Word::new(sw).unwrap(), 1e-13).unwrap().value;
            }
            prop_assert!((mu - right).abs() < 1e-9);
            prop_assert!((mu - left).abs() < 1e-9);
        }
    }

    #[test]
    fn sofic_counts_match_oracle(bits in 0u64..(1 << 12)) {
        // Random labeled graph on 3 vertices, 2 symbols: each (vertex,
        // symbol) pair gets at most one target to keep it right-resolving.
        let ab = Alphabet::of_strs(&["a", "b"]).unwrap();
        let mut edges = Vec::new();
        let mut b = bits;
        for v in 0..3usize {
            for s in 0..2usize {
                let choice = (b % 4) as usize;
                b /= 4;
                if choice < 3 {
                    edges.push((v, choice, Symbol(s)));
                }
            }
        }
        prop_assume!(!edges.is_empty());
        let g = LabeledGraph::new(3, edges, ab).unwrap();
        let guard = WorkGuard::new();
        for n in 1..=5 {
            prop_assert_eq!(g.count_words(n).unwrap(), oracle::census(&g, n, &guard).unwrap());
            prop_assert_eq!(
                g.count_periodic(n).unwrap(),
                oracle::count_periodic(&g, n, &guard).unwrap()
            );
        }
    }

    #[test]
    fn full_shift_counts_are_powers(dim in 1usize..5, n in 1usize..7) {
        let s = SftShift::full(dim);
        let expect = (dim as u64).pow(n as u32);
        prop_assert_eq!(s.word_count(n).unwrap().to_u64().unwrap(), expect);
        prop_assert_eq!(s.periodic_count(n).unwrap().to_u64().unwrap(), expect);
    }
}

#[test]
fn fixture_measures_are_additive() {
    let guard = WorkGuard::new();
    for f in shiftlab::fixtures::registry() {
        let sys = f.load().unwrap();
        match &sys {
            System::Sft(s) => {
                if f.name == "upper-triangular" {
                    continue; // no natural measure; covered elsewhere
                }
                let total: f64 = oracle::enumerate_words(s, 2, &guard)
                    .unwrap()
                    .iter()
                    .map(|w| s.parry_measure(w, 1e-13).unwrap().value)
                    .sum();
                assert!((total - 1.0).abs() < 1e-9, "{}", f.name);
            }
            System::Sofic(g) => {
                let total: f64 = oracle::enumerate_words(g, 2, &guard)
                    .unwrap()
                    .iter()
                    .map(|w| g.natural_measure(w, 1e-13).unwrap().value)
                    .sum();
                assert!((total - 1.0).abs() < 1e-8, "{}: {total}", f.name);
            }
            _ => {}
        }
    }
}

#[test]
fn fixtures_verify_clean() {
    // Every fixture passes the full cross-check suite at n ≤ 10.
    for f in shiftlab::fixtures::registry() {
        let sys = f.load().unwrap();
        // The reducible SFT has no spectral checks to run; censuses only.
        let n_max = if f.name == "context-free" { 8 } else { 10 };
        let cli = shiftlab::cli::Cli::try_parse_from([
            "shiftlab",
            "verify",
            f.name,
            "--n-max",
            &n_max.to_string(),
        ])
        .unwrap();
        let _ = sys;
        shiftlab::cli::run(cli).unwrap_or_else(|e| panic!("{}: {:?}", f.name, e));
    }
}

use clap::Parser as _;
