//! System description files: a small JSON document format shared by the CLI,
//! the fixtures, and external tooling.

use serde::{Deserialize, Serialize};

use crate::countable::CountableSystem;
use crate::error::{Result, ShiftError};
use crate::krieger::ForbiddenShift;
use crate::matrix::{Alphabet, NonnegMatrix};
use crate::sft::SftShift;
use crate::sofic::LabeledGraph;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SystemFile {
    Sft {
        #[serde(skip_serializing_if = "Option::is_none")]
        alphabet: Option<Vec<String>>,
        matrix: Vec<Vec<u64>>,
    },
    Sofic {
        vertices: usize,
        alphabet: Vec<String>,
        /// (from, to, label token) triples.
        edges: Vec<(usize, usize, String)>,
    },
    Forbidden {
        alphabet: Vec<String>,
        /// Comma-separated display tokens per word.
        words: Vec<String>,
        /// Present when `words` lists an infinite family only up to this
        /// length; longer language queries are refused.
        #[serde(skip_serializing_if = "Option::is_none")]
        horizon: Option<usize>,
    },
    CountableStencil {
        offsets: Vec<i64>,
        values: Vec<u64>,
    },
    Builtin {
        name: String,
    },
}

/// A loaded system, ready for the operations each kind supports.
#[derive(Debug, Clone)]
pub enum System {
    Sft(SftShift),
    Sofic(LabeledGraph),
    Forbidden(ForbiddenShift),
    Countable(CountableSystem),
}

impl System {
    pub fn kind(&self) -> &'static str {
        match self {
            System::Sft(_) => "sft",
            System::Sofic(_) => "sofic",
            System::Forbidden(_) => "forbidden",
            System::Countable(_) => "countable",
        }
    }
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<SystemFile> {
        serde_json::from_str(text)
            .map_err(|e| ShiftError::Invalid(format!("system file parse error: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system files always serialize")
    }

    pub fn load(&self) -> Result<System> {
        match self {
            SystemFile::Sft { alphabet, matrix } => {
                let m = NonnegMatrix::from_rows(matrix)?;
                let ab = match alphabet {
                    Some(tokens) => Alphabet::new(tokens.clone())?,
                    None => Alphabet::numeric(m.dim()),
                };
                Ok(System::Sft(SftShift::new(m, ab)?))
            }
            SystemFile::Sofic { vertices, alphabet, edges } => {
                let ab = Alphabet::new(alphabet.clone())?;
                let mut es = Vec::with_capacity(edges.len());
                for (f, t, tok) in edges {
                    let s = ab.symbol(tok)?;
                    es.push((*f, *t, s));
                }
                Ok(System::Sofic(LabeledGraph::new(*vertices, es, ab)?))
            }
            SystemFile::Forbidden { alphabet, words, horizon } => {
                let ab = Alphabet::new(alphabet.clone())?;
                let ws = words
                    .iter()
                    .map(|w| ab.parse_word(w))
                    .collect::<Result<Vec<_>>>()?;
                Ok(System::Forbidden(ForbiddenShift::word_list(ab, ws, *horizon)))
            }
            SystemFile::CountableStencil { offsets, values } => {
                if offsets.len() != values.len() || offsets.is_empty() {
                    return Err(ShiftError::Invalid(
                        "stencil needs matching nonempty offset/value lists".into(),
                    ));
                }
                Ok(System::Countable(CountableSystem::Stencil {
                    offsets: offsets.clone(),
                    values: values.clone(),
                }))
            }
            SystemFile::Builtin { name } => crate::fixtures::builtin(name),
        }
    }
}

/// Re-export a loaded system as a document (builtins resolve to their
/// concrete payloads, so round-trips compare behavior, not names).
pub fn export(sys: &System) -> Result<SystemFile> {
    match sys {
        System::Sft(s) => {
            let m = s.matrix();
            let rows: Vec<Vec<u64>> = (0..m.dim())
                .map(|i| {
                    (0..m.dim())
                        .map(|j| {
                            use num_traits::ToPrimitive;
                            m.get(i, j).to_u64().unwrap_or(u64::MAX)
                        })
                        .collect()
                })
                .collect();
            let ab = s.alphabet();
            Ok(SystemFile::Sft {
                alphabet: Some(ab.symbols().map(|x| ab.token(x).to_string()).collect()),
                matrix: rows,
            })
        }
        System::Sofic(g) => {
            let ab = g.graph_alphabet().clone();
            Ok(SystemFile::Sofic {
                vertices: g.vertex_count(),
                alphabet: ab.symbols().map(|x| ab.token(x).to_string()).collect(),
                edges: g
                    .edges()
                    .iter()
                    .map(|&(f, t, s)| (f, t, ab.token(s).to_string()))
                    .collect(),
            })
        }
        System::Forbidden(f) => {
            use crate::krieger::ForbiddenKind;
            match &f.kind {
                ForbiddenKind::WordList { words, truncated_at } => Ok(SystemFile::Forbidden {
                    alphabet: f
                        .alphabet
                        .symbols()
                        .map(|x| f.alphabet.token(x).to_string())
                        .collect(),
                    words: words.iter().map(|w| f.alphabet.format_word(w)).collect(),
                    horizon: *truncated_at,
                }),
                ForbiddenKind::ContextFree => {
                    Ok(SystemFile::Builtin { name: "context-free".into() })
                }
            }
        }
        System::Countable(c) => match c {
            CountableSystem::Stencil { offsets, values } => Ok(SystemFile::CountableStencil {
                offsets: offsets.clone(),
                values: values.clone(),
            }),
            CountableSystem::RandomWalkZ => Ok(SystemFile::Builtin { name: "random-walk-z".into() }),
            CountableSystem::ContextFree => {
                Ok(SystemFile::Builtin { name: "context-free-cover".into() })
            }
            _ => Err(ShiftError::Invalid("this system kind has no file form".into())),
        },
    }
}
