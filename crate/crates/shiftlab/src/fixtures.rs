//! Curated systems with known answers, shared by tests and the CLI.
//! Each fixture is a system file plus a bag of expected values kept in the
//! same document under "facts" (ignored by the loader, read by tests).

use crate::countable::CountableSystem;
use crate::error::{Result, ShiftError};
use crate::krieger;
use crate::system::{System, SystemFile};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
}

impl Fixture {
    pub fn file(&self) -> Result<SystemFile> {
        SystemFile::parse(self.text)
    }

    pub fn load(&self) -> Result<System> {
        self.file()?.load()
    }

    /// The raw document, facts included.
    pub fn document(&self) -> serde_json::Value {
        serde_json::from_str(self.text).expect("fixture files are valid JSON")
    }

    pub fn fact(&self, key: &str) -> Option<serde_json::Value> {
        self.document().get("facts")?.get(key).cloned()
    }

    pub fn fact_f64(&self, key: &str) -> Option<f64> {
        self.fact(key)?.as_f64()
    }
}

pub fn registry() -> Vec<Fixture> {
    vec![
        Fixture { name: "full-2", text: include_str!("../fixtures/full-2.json") },
        Fixture { name: "golden-mean", text: include_str!("../fixtures/golden-mean.json") },
        Fixture { name: "star-4", text: include_str!("../fixtures/star-4.json") },
        Fixture { name: "upper-triangular", text: include_str!("../fixtures/upper-triangular.json") },
        Fixture { name: "even-shift", text: include_str!("../fixtures/even-shift.json") },
        Fixture { name: "period-2-sofic", text: include_str!("../fixtures/period-2-sofic.json") },
        Fixture { name: "random-walk-z", text: include_str!("../fixtures/random-walk-z.json") },
        Fixture { name: "context-free", text: include_str!("../fixtures/context-free.json") },
    ]
}

pub fn by_name(name: &str) -> Result<Fixture> {
    registry()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| ShiftError::Invalid(format!("no fixture named {name:?}")))
}

/// Systems constructible by name alone (referenced by `"type": "builtin"`
/// documents). Fixture names that are themselves plain data files resolve
/// through the registry.
pub fn builtin(name: &str) -> Result<System> {
    match name {
        "random-walk-z" => Ok(System::Countable(CountableSystem::RandomWalkZ)),
        "context-free" => Ok(System::Forbidden(krieger::context_free_shift())),
        "context-free-cover" => Ok(System::Countable(krieger::cf_cover())),
        "golden-mean-cover" => {
            let gm = krieger::golden_mean_shift();
            let cover = krieger::krieger_cover(&gm, 6, 4, 64)?;
            if let CountableSystem::Cover { edges, alphabet, .. } = cover.cover {
                let mut flat = Vec::new();
                for (f, row) in edges.iter().enumerate() {
                    for &(t, s) in row {
                        flat.push((f, t, s));
                    }
                }
                Ok(System::Sofic(crate::sofic::LabeledGraph::new(
                    edges.len(),
                    flat,
                    alphabet,
                )?))
            } else {
                Err(ShiftError::Invalid("cover construction returned a non-table spec".into()))
            }
        }
        other => match by_name(other) {
            Ok(f) => match f.file()? {
                SystemFile::Builtin { name: inner } if inner == other => Err(
                    ShiftError::Invalid(format!("builtin {other:?} resolves to itself")),
                ),
                file => file.load(),
            },
            Err(_) => Err(ShiftError::Invalid(format!("unknown builtin {other:?}"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_parses_and_loads() {
        for f in registry() {
            let sys = f.load().unwrap_or_else(|e| panic!("{}: {e}", f.name));
            match f.name {
                "full-2" | "golden-mean" | "star-4" | "upper-triangular" => {
                    assert_eq!(sys.kind(), "sft", "{}", f.name)
                }
                "even-shift" | "period-2-sofic" => assert_eq!(sys.kind(), "sofic"),
                "random-walk-z" => assert_eq!(sys.kind(), "countable"),
                "context-free" => assert_eq!(sys.kind(), "forbidden"),
                _ => {}
            }
        }
    }

    #[test]
    fn facts_match_computation() {
        let gm = by_name("golden-mean").unwrap();
        if let System::Sft(s) = gm.load().unwrap() {
            let sd = s.spectral(1e-12).unwrap();
            assert!((sd.lambda - gm.fact_f64("lambda").unwrap()).abs() < 1e-10);
            let w = s.parse_word("1").unwrap();
            let mu = s.parry_measure(&w, 1e-13).unwrap().value;
            assert!((mu - gm.fact_f64("measure_1").unwrap()).abs() < 1e-10);
        } else {
            panic!("golden-mean should load as an SFT");
        }
        let ex = by_name("star-4").unwrap();
        if let System::Sft(s) = ex.load().unwrap() {
            let sd = s.spectral(1e-12).unwrap();
            assert!((sd.lambda - 3.0f64.sqrt()).abs() < 1e-10);
            assert_eq!(sd.period, 2);
        } else {
            panic!();
        }
    }

    #[test]
    fn builtins_resolve() {
        assert!(matches!(builtin("random-walk-z").unwrap(), System::Countable(_)));
        assert!(matches!(builtin("context-free").unwrap(), System::Forbidden(_)));
        assert!(matches!(builtin("context-free-cover").unwrap(), System::Countable(_)));
        if let System::Sofic(g) = builtin("golden-mean-cover").unwrap() {
            assert_eq!(g.vertex_count(), 2);
        } else {
            panic!("golden-mean-cover should present as a labeled graph");
        }
        assert!(builtin("no-such-thing").is_err());
    }

    #[test]
    fn export_round_trip() {
        for f in registry() {
            let sys = f.load().unwrap();
            if let Ok(file) = crate::system::export(&sys) {
                let text = file.to_json();
                let reloaded = SystemFile::parse(&text).unwrap().load().unwrap();
                assert_eq!(reloaded.kind(), sys.kind(), "{}", f.name);
            }
        }
    }
}
