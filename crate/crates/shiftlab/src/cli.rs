//! Command-line front end. Every command prints a single JSON document to
//! stdout (keys sorted, so identical inputs give identical bytes) and uses
//! distinct exit codes per failure class: 2 parse, 3 validation, 4
//! non-convergence, 5 cross-check mismatch.

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::countable::{self, CountableSystem};
use crate::error::{Result, ShiftError};
use crate::krieger::{self, ForbiddenKind, ForbiddenShift};
use crate::oracle::{self, WorkGuard};
use crate::sofic::LabeledGraph;
use crate::system::{System, SystemFile};

#[derive(Parser)]
#[command(name = "shiftlab", version, about = "symbolic dynamics toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Closed,
    Limit,
    Periodic,
}

#[derive(Subcommand)]
pub enum Command {
    /// Spectral data: growth rate, eigenvectors, period.
    Perron {
        system: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Truncation cap for countable systems.
        #[arg(long, default_value_t = 600)]
        max_size: usize,
    },
    /// Measure of a cylinder word.
    Measure {
        system: String,
        word: String,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 512)]
        max_window: usize,
    },
    /// Word and periodic-point counts up to a length.
    Census {
        system: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Cross-check fast formulas against brute-force enumeration.
    Verify {
        system: String,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 64)]
        window_max: usize,
    },
    /// Recurrence classification of a countable system.
    Classify {
        system: String,
        #[arg(long, default_value_t = 200)]
        terms: usize,
        #[arg(long, default_value_t = 600)]
        max_size: usize,
    },
    /// Topological entropy (and measure-entropy partial sums for SFTs).
    Entropy {
        system: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Sample an orbit of the maximal-entropy chain and compare empirical
    /// frequencies against the measure.
    Sample {
        system: String,
        #[arg(long, default_value_t = 100000)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        word: Option<String>,
    },
}

pub fn exit_code(err: &ShiftError) -> i32 {
    match err {
        ShiftError::Invalid(_) | ShiftError::Refused(_) | ShiftError::WorkLimit(_) => 3,
        ShiftError::Reducible(_) | ShiftError::NoNaturalMeasure(_) => 3,
        ShiftError::NonConvergence(_) => 4,
        ShiftError::Mismatch(_) => 5,
    }
}

/// Either a path to a system file or a builtin/fixture name.
fn load(arg: &str) -> std::result::Result<System, (i32, String)> {
    let text = if std::path::Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| (2, format!("cannot read {arg}: {e}")))?
    } else {
        return crate::fixtures::builtin(arg).map_err(|e| (2, e.to_string()));
    };
    let file = SystemFile::parse(&text).map_err(|e| (2, e.to_string()))?;
    file.load().map_err(|e| (3, e.to_string()))
}

fn digest(sys: &System) -> Value {
    let size = match sys {
        System::Sft(s) => s.matrix().dim(),
        System::Sofic(g) => g.vertex_count(),
        System::Forbidden(_) => 0,
        System::Countable(_) => 0,
    };
    json!({"kind": sys.kind(), "size": size})
}

fn doc(command: &str, sys: &System, results: Value, provenance: Value) -> Value {
    json!({
        "command": command,
        "system": digest(sys),
        "results": results,
        "provenance": provenance,
    })
}

fn cf_truncation(tol: f64, size: usize) -> Result<countable::TruncationResult> {
    countable::approx_perron(&krieger::cf_cover(), tol, size, Some(vec![size | 1]))
}

pub fn run(cli: Cli) -> std::result::Result<Value, (i32, String)> {
    let fail = |e: ShiftError| (exit_code(&e), e.to_string());
    match cli.command {
        Command::Perron { system, tol, max_size } => {
            let sys = load(&system)?;
            let out = match &sys {
                System::Sft(s) => {
                    let sd = s.spectral(tol).map_err(fail)?;
                    json!({"lambda": sd.lambda, "left": sd.left, "right": sd.right, "period": sd.period})
                }
                System::Sofic(g) => {
                    let sd = g.spectral(tol).map_err(fail)?;
                    json!({"lambda": sd.lambda, "left": sd.left, "right": sd.right, "period": sd.period})
                }
                System::Forbidden(f) => {
                    let spec = forbidden_cover(f).map_err(fail)?;
                    let tr = countable::approx_perron(&spec, tol.max(1e-12), max_size, None)
                        .map_err(fail)?;
                    json!({"lambda": tr.lambda, "sizes": tr.sizes, "lambdas": tr.lambdas})
                }
                System::Countable(c) => {
                    let tr =
                        countable::approx_perron(c, tol.max(1e-12), max_size, None).map_err(fail)?;
                    json!({"lambda": tr.lambda, "sizes": tr.sizes, "lambdas": tr.lambdas})
                }
            };
            Ok(doc("perron", &sys, out, json!({"tol": tol, "max_size": max_size})))
        }
        Command::Measure { system, word, method, tol, max_window } => {
            let sys = load(&system)?;
            let out = measure(&sys, &word, method, tol, max_window).map_err(fail)?;
            Ok(doc(
                "measure",
                &sys,
                out,
                json!({"tol": tol, "max_window": max_window, "method": format!("{method:?}").to_lowercase(), "word": word}),
            ))
        }
        Command::Census { system, n } => {
            let sys = load(&system)?;
            let guard = WorkGuard::new();
            let (words, periodic) = census(&sys, n, &guard).map_err(fail)?;
            Ok(doc(
                "census",
                &sys,
                json!({"words": words, "periodic": periodic}),
                json!({"n": n}),
            ))
        }
        Command::Verify { system, n_max, window_max } => {
            let sys = load(&system)?;
            let checks = verify(&sys, n_max, window_max).map_err(fail)?;
            Ok(doc("verify", &sys, checks, json!({"n_max": n_max, "window_max": window_max})))
        }
        Command::Classify { system, terms, max_size } => {
            let sys = load(&system)?;
            let spec = match &sys {
                System::Countable(c) => c.clone(),
                System::Forbidden(f) => forbidden_cover(f).map_err(fail)?,
                _ => {
                    return Err((3, "classification applies to countable systems".into()));
                }
            };
            let tr = countable::approx_perron(&spec, 1e-9, max_size, None).map_err(fail)?;
            let rep = countable::classify_recurrence(&spec, tr.lambda, terms).map_err(fail)?;
            Ok(doc(
                "classify",
                &sys,
                json!({
                    "class": rep.class,
                    "lambda": tr.lambda,
                    "sum_t": rep.sum_t, "growth_t": rep.growth_t,
                    "sum_nl": rep.sum_nl, "growth_nl": rep.growth_nl,
                    "lr_estimates": rep.lr_estimates,
                }),
                json!({"terms": terms, "max_size": max_size}),
            ))
        }
        Command::Entropy { system, tol } => {
            let sys = load(&system)?;
            let out = match &sys {
                System::Sft(s) => {
                    let h = s.entropy(tol).map_err(fail)?;
                    let partial: Vec<f64> = (1..=8)
                        .map(|n| s.measure_entropy_partial(n, tol))
                        .collect::<Result<_>>()
                        .map_err(fail)?;
                    json!({"entropy": h, "measure_entropy_partials": partial})
                }
                System::Sofic(g) => {
                    let sd = g.spectral(tol.max(1e-13)).map_err(fail)?;
                    json!({"entropy": sd.lambda.ln()})
                }
                System::Forbidden(f) => match &f.kind {
                    ForbiddenKind::ContextFree => {
                        let h = krieger::cf_entropy(tol.max(1e-10), 600).map_err(fail)?;
                        json!({"entropy": h})
                    }
                    ForbiddenKind::WordList { .. } => {
                        let g = word_list_cover(f).map_err(fail)?;
                        let sd = g.spectral(tol.max(1e-13)).map_err(fail)?;
                        json!({"entropy": sd.lambda.ln()})
                    }
                },
                System::Countable(c) => {
                    let tr = countable::approx_perron(c, tol.max(1e-10), 600, None).map_err(fail)?;
                    json!({"entropy": tr.lambda.ln()})
                }
            };
            Ok(doc("entropy", &sys, out, json!({"tol": tol})))
        }
        Command::Sample { system, length, seed, word } => {
            let sys = load(&system)?;
            let System::Sft(s) = &sys else {
                return Err((3, "orbit sampling applies to SFT systems".into()));
            };
            let w = s.parse_word(&word.unwrap_or_else(|| {
                s.alphabet().token(crate::matrix::Symbol(0)).to_string()
            })).map_err(fail)?;
            let orbit = s.sample_orbit(length, seed, 1e-12).map_err(fail)?;
            let mut hits = 0usize;
            let ws = w.symbols();
            for window in orbit.symbols().windows(ws.len()) {
                if window == ws {
                    hits += 1;
                }
            }
            let total = orbit.len() + 1 - ws.len();
            let freq = hits as f64 / total as f64;
            let mu = s.parry_measure(&w, 1e-13).map_err(fail)?.value;
            let se = (mu * (1.0 - mu) / total as f64).sqrt();
            Ok(doc(
                "sample",
                &sys,
                json!({"empirical": freq, "measure": mu, "stderr": se, "windows": total,
                       "z": (freq - mu) / se}),
                json!({"length": length, "seed": seed, "word": s.alphabet().format_word(&w),
                       "note": "statistical comparison, not exact"}),
            ))
        }
    }
}

/// Present a forbidden-set shift as a countable cover spec.
fn forbidden_cover(f: &ForbiddenShift) -> Result<CountableSystem> {
    match &f.kind {
        ForbiddenKind::ContextFree => Ok(krieger::cf_cover()),
        ForbiddenKind::WordList { .. } => {
            Ok(krieger::krieger_cover(f, 6, 6, 4096)?.cover)
        }
    }
}

/// Finite covers become labeled graphs so the sofic machinery applies.
fn word_list_cover(f: &ForbiddenShift) -> Result<LabeledGraph> {
    let cover = krieger::krieger_cover(f, 6, 6, 64)?;
    if let CountableSystem::Cover { edges, alphabet, .. } = cover.cover {
        let mut flat = Vec::new();
        for (from, row) in edges.iter().enumerate() {
            for &(to, s) in row {
                flat.push((from, to, s));
            }
        }
        LabeledGraph::new(edges.len(), flat, alphabet)
    } else {
        Err(ShiftError::Invalid("cover did not produce a finite table".into()))
    }
}

fn measure(sys: &System, word: &str, method: Method, tol: f64, max_window: usize) -> Result<Value> {
    let to_json = |m: &crate::matrix::MeasureResult| {
        json!({"value": m.value, "method": m.method, "inadmissible": m.inadmissible,
               "diagnostics": m.diagnostics})
    };
    match sys {
        System::Sft(s) => {
            let w = s.parse_word(word)?;
            let m = match method {
                Method::Closed => s.parry_measure(&w, tol.min(1e-12))?,
                Method::Limit => s.natural_measure(&w, tol, max_window)?,
                Method::Periodic => s.periodic_natural_measure(&w, tol, max_window)?,
            };
            Ok(to_json(&m))
        }
        System::Sofic(g) => {
            let w = g.parse_word(word)?;
            let m = match method {
                Method::Closed => g.natural_measure(&w, tol.min(1e-12))?,
                Method::Limit => g.natural_measure_limit(&w, tol, max_window)?,
                Method::Periodic => g.periodic_natural_measure(&w, tol, max_window)?,
            };
            Ok(to_json(&m))
        }
        System::Forbidden(f) => {
            let w = f.alphabet.parse_word(word)?;
            match &f.kind {
                ForbiddenKind::ContextFree => {
                    let spec = krieger::cf_cover();
                    let tr = cf_truncation(1e-10, 103)?;
                    let rep = countable::classify_recurrence(&spec, tr.lambda, 200)?;
                    let i = crate::countable::CState::Cf(crate::countable::CfState::P);
                    let m = match method {
                        Method::Closed => {
                            let v = countable::closed_form_sofic(&spec, &tr, &w)?;
                            json!({"value": v, "method": "closed-form", "inadmissible": v <= 0.0})
                        }
                        Method::Limit => to_json(&countable::natural_measure_sofic(
                            &spec, &tr, &rep, &w, &i, &i, tol, max_window,
                        )?),
                        Method::Periodic => {
                            return Err(ShiftError::Invalid(
                                "periodic measure is not available for countable covers".into(),
                            ))
                        }
                    };
                    Ok(m)
                }
                ForbiddenKind::WordList { .. } => {
                    let g = word_list_cover(f)?;
                    measure(&System::Sofic(g), word, method, tol, max_window)
                }
            }
        }
        System::Countable(_) => Err(ShiftError::Invalid(
            "cylinder measures on raw countable specs need a labeled cover; use the forbidden-set form".into(),
        )),
    }
}

fn census(sys: &System, n: usize, guard: &WorkGuard) -> Result<(Vec<String>, Vec<String>)> {
    let mut words = Vec::new();
    let mut periodic = Vec::new();
    match sys {
        System::Sft(s) => {
            for m in 1..=n {
                words.push(s.word_count(m)?.to_string());
                periodic.push(s.periodic_count(m)?.to_string());
            }
        }
        System::Sofic(g) => {
            for m in 1..=n {
                words.push(g.count_words(m)?.to_string());
                periodic.push(g.count_periodic(m)?.to_string());
            }
        }
        System::Forbidden(f) => {
            for m in 1..=n {
                words.push(oracle::census(f, m, guard)?.to_string());
                periodic.push(oracle::count_periodic(f, m, guard)?.to_string());
            }
        }
        System::Countable(_) => {
            return Err(ShiftError::Invalid("census applies to finite-alphabet systems".into()));
        }
    }
    Ok((words, periodic))
}

fn verify(sys: &System, n_max: usize, window_max: usize) -> Result<Value> {
    let guard = WorkGuard::new();
    let mut checks: Vec<Value> = Vec::new();
    let mut push = |name: &str, ok: bool, detail: String| {
        checks.push(json!({"check": name, "ok": ok, "detail": detail}));
        if ok {
            Ok(())
        } else {
            Err(ShiftError::Mismatch(format!("{name}: {detail}")))
        }
    };
    match sys {
        System::Sft(s) => {
            for n in 1..=n_max {
                let fast = s.word_count(n)?;
                let slow = oracle::census(s, n, &guard)?;
                push("word-count", fast == slow, format!("n={n} fast={fast} oracle={slow}"))?;
                let fast = s.periodic_count(n)?;
                let slow = oracle::count_periodic(s, n, &guard)?;
                push("periodic-count", fast == slow, format!("n={n} fast={fast} oracle={slow}"))?;
            }
            let words = oracle::enumerate_words(s, 2.min(n_max), &guard)?;
            for w in words.iter().take(6) {
                for (k, l) in [(1usize, 1usize), (2, 3)] {
                    if w.len() + k + l > window_max {
                        continue;
                    }
                    let fast = s.natural_measure_ratio(w, k, l)?;
                    let slow = oracle::cylinder_ratio(s, w, k, l, &guard)?;
                    push(
                        "cylinder-ratio",
                        fast == slow,
                        format!("w={} k={k} l={l}", s.alphabet().format_word(w)),
                    )?;
                }
            }
        }
        System::Sofic(g) => {
            for n in 1..=n_max {
                let fast = g.count_words(n)?;
                let slow = oracle::census(g, n, &guard)?;
                push("word-count", fast == slow, format!("n={n} fast={fast} oracle={slow}"))?;
                let fast = g.count_periodic(n)?;
                let slow = oracle::count_periodic(g, n, &guard)?;
                push("periodic-count", fast == slow, format!("n={n} fast={fast} oracle={slow}"))?;
            }
            for w in oracle::enumerate_words(g, 2.min(n_max), &guard)?.iter().take(4) {
                let (k, l) = (1usize, 2usize);
                if w.len() + k + l <= window_max {
                    let fast = g.count_cylinder_exact(w, k, l)?;
                    let slow = oracle::count_cylinder(g, w, k, l, &guard)?;
                    push(
                        "cylinder-count",
                        fast == slow,
                        format!("w={} k={k} l={l}", g.graph_alphabet().format_word(w)),
                    )?;
                }
            }
        }
        System::Forbidden(f) => {
            let horizon = crate::oracle::ShiftLanguage::sound_horizon(f);
            let reach = horizon.map_or(n_max, |h| h.min(n_max));
            match &f.kind {
                ForbiddenKind::ContextFree => {
                    let spec = krieger::cf_cover();
                    for n in 1..=reach.min(8) {
                        let total = oracle::census(
                            &ForbiddenShift::word_list(f.alphabet.clone(), vec![], None),
                            n,
                            &guard,
                        )?;
                        let admissible = oracle::census(f, n, &guard)?;
                        let mut accepted = 0u64;
                        let full = ForbiddenShift::word_list(f.alphabet.clone(), vec![], None);
                        for w in oracle::enumerate_words(&full, n, &guard)? {
                            if krieger::cover_accepts(&spec, &w) {
                                accepted += 1;
                            }
                        }
                        push(
                            "cover-language",
                            admissible.to_u64() == Some(accepted),
                            format!("n={n} predicate={admissible} cover={accepted} (of {total})"),
                        )?;
                    }
                }
                ForbiddenKind::WordList { .. } => {
                    let g = word_list_cover(f)?;
                    for n in 1..=reach {
                        let via_cover = g.count_words(n)?;
                        let direct = oracle::census(f, n, &guard)?;
                        push(
                            "cover-census",
                            via_cover == direct,
                            format!("n={n} cover={via_cover} predicate={direct}"),
                        )?;
                    }
                }
            }
        }
        System::Countable(c) => {
            // Convergence is not required here (null-recurrent systems creep
            // toward λ); monotonicity along the family is the check.
            let tr = countable::approx_perron(c, 2e-3, 400, None)?;
            let mut ok = true;
            for w in tr.lambdas.windows(2) {
                if w[1] < w[0] - 1e-9 {
                    ok = false;
                }
            }
            push("lambda-monotone", ok, format!("{:?}", tr.lambdas))?;
        }
    }
    Ok(Value::Array(checks))
}

/// Render the result deterministically: sorted keys, shortest-round-trip
/// floats (both serde_json defaults).
pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("result documents always serialize")
}
