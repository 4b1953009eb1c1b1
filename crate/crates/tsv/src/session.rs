//! Session files: named tori, morphisms and block isomorphisms in JSON.
//!
//! ```json
//! {
//!   "tsv": 1,
//!   "extension_d": 2,
//!   "tori": [{"name": "Ei", "J": [["0", "-1"], ["1", "0"]]}],
//!   "morphisms": [{"name": "two", "source": "Ei", "target": "Ei", "matrix": [["2", "0"], ["0", "2"]]}],
//!   "block_isos": [{"name": "S", "source": "Ei", "target": "Ei",
//!                   "alpha": [["0","0"],["0","0"]], "beta": [["-1","0"],["0","-1"]],
//!                   "gamma": [["1","0"],["0","1"]], "delta": [["0","0"],["0","0"]]}]
//! }
//! ```
//!
//! Entries are strings (`"p/q"`, `"p/q+r/s*sqrt(d)"`). A name ending in `^`
//! refers to the dual of the named torus.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use tsv_core::scalar::{is_square_free, Scalar};
use tsv_core::symplectic::{build_pair, BlockIso};
use tsv_core::torus::{ComplexTorus, TorusHom};
use tsv_core::{IntMatrix, Matrix, ScalarMatrix};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{}{message}", location.map(|(l, c)| format!("line {}, column {}: ", l, c)).unwrap_or_default())]
    Invalid { location: Option<(usize, usize)>, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSession {
    tsv: u32,
    extension_d: u64,
    #[serde(default)]
    tori: Vec<RawTorus>,
    #[serde(default)]
    morphisms: Vec<RawMorphism>,
    #[serde(default)]
    block_isos: Vec<RawBlockIso>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorus {
    name: String,
    #[serde(rename = "J")]
    j: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    name: String,
    source: String,
    target: String,
    matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlockIso {
    name: String,
    source: String,
    target: String,
    alpha: Vec<Vec<String>>,
    beta: Vec<Vec<String>>,
    gamma: Vec<Vec<String>>,
    delta: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    extension_d: u64,
    tori: Vec<Arc<ComplexTorus>>,
    morphisms: Vec<(String, TorusHom)>,
    block_isos: Vec<(String, BlockIso)>,
}

/// 1-based line and column of the first occurrence of `needle` at or after
/// the first occurrence of `section`.
fn locate(src: &str, section: &str, needle: &str) -> Option<(usize, usize)> {
    let start = src.find(section).unwrap_or(0);
    let at = start + src[start..].find(needle)?;
    let before = &src[..at];
    let line = before.matches('\n').count() + 1;
    let column = at - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    Some((line, column))
}

struct Loader<'a> {
    src: &'a str,
    d: u64,
}

impl Loader<'_> {
    fn invalid(&self, section: &str, name: &str, message: String) -> SessionError {
        let location = locate(self.src, &format!("\"{}\"", section), &format!("\"{}\"", name));
        SessionError::Invalid { location, message }
    }

    fn scalar_matrix(
        &self,
        section: &str,
        owner: &str,
        field: &str,
        rows: &[Vec<String>],
    ) -> Result<ScalarMatrix, SessionError> {
        let mut parsed = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, s) in row.iter().enumerate() {
                let x: Scalar = s.parse().map_err(|e| {
                    self.invalid(
                        section,
                        owner,
                        format!("{} {}[{}][{}]: cannot parse {:?}: {}", owner, field, i, j, s, e),
                    )
                })?;
                if x.tag() != 1 && x.tag() != self.d {
                    return Err(self.invalid(
                        section,
                        owner,
                        format!(
                            "{} {}[{}][{}]: entry {} lives in Q(sqrt({})) but the session declares extension_d = {}",
                            owner,
                            field,
                            i,
                            j,
                            s,
                            x.tag(),
                            self.d
                        ),
                    ));
                }
                out.push(x);
            }
            parsed.push(out);
        }
        Matrix::from_rows(parsed).map_err(|e| self.invalid(section, owner, format!("{} {}: {}", owner, field, e)))
    }

    fn int_matrix(
        &self,
        section: &str,
        owner: &str,
        field: &str,
        rows: &[Vec<String>],
    ) -> Result<IntMatrix, SessionError> {
        let m = self.scalar_matrix(section, owner, field, rows)?;
        m.to_integer()
            .ok_or_else(|| self.invalid(section, owner, format!("{} {}: entries must be integers", owner, field)))
    }
}

impl Session {
    pub fn from_json(src: &str) -> Result<Self, SessionError> {
        let raw: RawSession = serde_json::from_str(src).map_err(|e| SessionError::Syntax {
            line: e.line(),
            column: e.column(),
            message: {
                let full = e.to_string();
                let suffix = format!(" at line {} column {}", e.line(), e.column());
                full.strip_suffix(&suffix).map(str::to_string).unwrap_or(full)
            },
        })?;
        if raw.tsv != SCHEMA_VERSION {
            return Err(SessionError::Invalid {
                location: locate(src, "\"tsv\"", "\"tsv\""),
                message: format!("unsupported schema version {} (expected {})", raw.tsv, SCHEMA_VERSION),
            });
        }
        if raw.extension_d == 0 || !is_square_free(raw.extension_d) {
            return Err(SessionError::Invalid {
                location: locate(src, "\"extension_d\"", "\"extension_d\""),
                message: format!("extension_d = {} is not a square-free positive integer", raw.extension_d),
            });
        }
        let ld = Loader { src, d: raw.extension_d };
        let mut session =
            Session { extension_d: raw.extension_d, tori: Vec::new(), morphisms: Vec::new(), block_isos: Vec::new() };

        for t in &raw.tori {
            if t.name.ends_with('^') || t.name.is_empty() {
                return Err(ld.invalid("tori", &t.name, format!("invalid torus name {:?}", t.name)));
            }
            if session.torus(&t.name).is_some() {
                return Err(ld.invalid("tori", &t.name, format!("duplicate torus {}", t.name)));
            }
            let j = ld.scalar_matrix("tori", &t.name, "J", &t.j)?;
            let torus = ComplexTorus::new(t.name.clone(), j).map_err(|e| ld.invalid("tori", &t.name, e.to_string()))?;
            session.tori.push(Arc::new(torus));
        }

        for m in &raw.morphisms {
            if session.morphisms.iter().any(|(n, _)| n == &m.name) {
                return Err(ld.invalid("morphisms", &m.name, format!("duplicate morphism {}", m.name)));
            }
            let source = session.resolve(&ld, "morphisms", &m.name, &m.source)?;
            let target = session.resolve(&ld, "morphisms", &m.name, &m.target)?;
            let t = ld.int_matrix("morphisms", &m.name, "matrix", &m.matrix)?;
            let f = TorusHom::new(source, target, t)
                .map_err(|e| ld.invalid("morphisms", &m.name, format!("morphism {}: {}", m.name, e)))?;
            session.morphisms.push((m.name.clone(), f));
        }

        for b in &raw.block_isos {
            if session.block_isos.iter().any(|(n, _)| n == &b.name) {
                return Err(ld.invalid("block_isos", &b.name, format!("duplicate block isomorphism {}", b.name)));
            }
            let source = session.resolve(&ld, "block_isos", &b.name, &b.source)?;
            let target = session.resolve(&ld, "block_isos", &b.name, &b.target)?;
            let alpha = ld.int_matrix("block_isos", &b.name, "alpha", &b.alpha)?;
            let beta = ld.int_matrix("block_isos", &b.name, "beta", &b.beta)?;
            let gamma = ld.int_matrix("block_isos", &b.name, "gamma", &b.gamma)?;
            let delta = ld.int_matrix("block_isos", &b.name, "delta", &b.delta)?;
            let f =
                BlockIso::new(Arc::new(build_pair(source)), Arc::new(build_pair(target)), alpha, beta, gamma, delta)
                    .map_err(|e| ld.invalid("block_isos", &b.name, format!("block isomorphism {}: {}", b.name, e)))?;
            session.block_isos.push((b.name.clone(), f));
        }
        Ok(session)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SessionError> {
        let path = path.as_ref();
        let src =
            fs::read_to_string(path).map_err(|source| SessionError::Io { path: path.display().to_string(), source })?;
        Session::from_json(&src)
    }

    fn resolve(
        &self,
        ld: &Loader<'_>,
        section: &str,
        owner: &str,
        name: &str,
    ) -> Result<Arc<ComplexTorus>, SessionError> {
        self.torus(name).ok_or_else(|| ld.invalid(section, owner, format!("{}: unknown torus {:?}", owner, name)))
    }

    pub fn extension_d(&self) -> u64 {
        self.extension_d
    }

    /// A declared torus, or the dual of one when `name` ends in `^`.
    pub fn torus(&self, name: &str) -> Option<Arc<ComplexTorus>> {
        if let Some(base) = name.strip_suffix('^') {
            if let Some(t) = self.tori.iter().find(|t| t.name() == base) {
                return Some(Arc::new(t.dual()));
            }
            // an explicit double dual resolves to the torus itself
            return base.strip_suffix('^').and_then(|b| self.torus(b));
        }
        self.tori.iter().find(|t| t.name() == name).cloned()
    }

    pub fn morphism(&self, name: &str) -> Option<&TorusHom> {
        self.morphisms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn block_iso(&self, name: &str) -> Option<&BlockIso> {
        self.block_isos.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn tori(&self) -> &[Arc<ComplexTorus>] {
        &self.tori
    }

    pub fn morphisms(&self) -> &[(String, TorusHom)] {
        &self.morphisms
    }

    pub fn block_isos(&self) -> &[(String, BlockIso)] {
        &self.block_isos
    }

    fn to_raw(&self) -> RawSession {
        RawSession {
            tsv: SCHEMA_VERSION,
            extension_d: self.extension_d,
            tori: self
                .tori
                .iter()
                .map(|t| RawTorus { name: t.name().to_string(), j: matrix_strings(t.complex_structure()) })
                .collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|(n, f)| RawMorphism {
                    name: n.clone(),
                    source: f.source().name().to_string(),
                    target: f.target().name().to_string(),
                    matrix: matrix_strings(f.matrix()),
                })
                .collect(),
            block_isos: self
                .block_isos
                .iter()
                .map(|(n, f)| RawBlockIso {
                    name: n.clone(),
                    source: f.src().base().name().to_string(),
                    target: f.dst().base().name().to_string(),
                    alpha: matrix_strings(f.alpha().matrix()),
                    beta: matrix_strings(f.beta().matrix()),
                    gamma: matrix_strings(f.gamma().matrix()),
                    delta: matrix_strings(f.delta().matrix()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("session serializes")
    }
}

/// Rows of exact entry strings.
pub fn matrix_strings<T: std::fmt::Display>(m: &Matrix<T>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}
