//! JSON file formats for codes, q-matroids, matroids and map corpora.
//!
//! Field elements are written as integer codes. Wherever an extension field
//! element is expected, a coefficient list `[c_0, ..., c_{m-1}]` in the
//! power basis is accepted as well.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{CodeError, LinearCode};
use crate::gf::{Elem, ExtField, Field, FieldError, Matrix};
use crate::lattice::{Ambient, LatticeError, Subspace};
use crate::matroid::{Matroid, MatroidError};
use crate::qmaps::{LMap, MapError};
use crate::qmatroid::{QMatroid, QMatroidError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    QMatroid(#[from] QMatroidError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Map(#[from] MapError),
}

impl IoError {
    /// True when the failure is a size guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        match self {
            IoError::Field(e) => matches!(e, FieldError::TooLarge(_)),
            IoError::Lattice(e) => e.is_guard(),
            IoError::Code(e) => e.is_guard(),
            IoError::QMatroid(e) => e.is_guard(),
            IoError::Matroid(e) => e.is_guard(),
            IoError::Map(e) => e.is_guard(),
            _ => false,
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Code(Elem),
    Coeffs(Vec<Elem>),
}

impl Entry {
    fn resolve(&self, q: u32, m: u32) -> Result<Elem, IoError> {
        let order = q.pow(m);
        match self {
            Entry::Code(c) if *c < order => Ok(*c),
            Entry::Code(c) => Err(IoError::Invalid(format!("entry {c} is not below {order}"))),
            Entry::Coeffs(cs) => {
                if cs.len() > m as usize || cs.iter().any(|&c| c >= q) {
                    return Err(IoError::Invalid(format!("bad coefficient list {cs:?}")));
                }
                Ok(cs.iter().rev().fold(0, |acc, &c| acc * q + c))
            }
        }
    }
}

fn resolve_rows(rows: &[Vec<Entry>], q: u32, m: u32, cols: usize) -> Result<Matrix, IoError> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(IoError::Invalid(format!("every row must have {cols} entries")));
    }
    let data: Vec<Vec<Elem>> =
        rows.iter().map(|r| r.iter().map(|e| e.resolve(q, m)).collect()).collect::<Result<_, _>>()?;
    Ok(Matrix::from_rows(&data, cols))
}

/// `{q, m, modulus?, n, k, G}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub q: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<Elem>>,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "G")]
    pub g: Vec<Vec<Entry>>,
}

impl CodeFile {
    pub fn build(&self) -> Result<LinearCode, IoError> {
        let base = Field::new(self.q)?;
        let ext = ExtField::new(&base, self.m, self.modulus.clone())?;
        if self.g.len() != self.k {
            return Err(IoError::Invalid(format!("k = {} but G has {} rows", self.k, self.g.len())));
        }
        let g = resolve_rows(&self.g, self.q, self.m, self.n)?;
        Ok(LinearCode::new(&ext, g)?)
    }

    pub fn from_code(code: &LinearCode) -> CodeFile {
        let ext = code.ext();
        CodeFile {
            q: ext.base().q(),
            m: ext.m(),
            modulus: Some(ext.modulus().to_vec()),
            n: code.n(),
            k: code.k(),
            g: code.generator().row_vecs().into_iter().map(|r| r.into_iter().map(Entry::Code).collect()).collect(),
        }
    }
}

/// A q-matroid given as a uniform q-matroid, by its flats (each flat a list
/// of spanning vectors), or as the q-matroid of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QMatroidFile {
    Uniform { q: u32, n: usize, k: usize },
    Flats { q: u32, n: usize, flats: Vec<Vec<Vec<Elem>>> },
    Code(CodeFile),
}

impl QMatroidFile {
    pub fn build(&self) -> Result<QMatroid, IoError> {
        match self {
            QMatroidFile::Uniform { q, n, k } => {
                if k > n {
                    return Err(IoError::Invalid(format!("rank {k} exceeds dimension {n}")));
                }
                Ok(QMatroid::uniform(Field::new(*q)?, *k, *n))
            }
            QMatroidFile::Flats { q, n, flats } => {
                let field = Field::new(*q)?;
                let a = Ambient::new(field.clone(), *n);
                let flats: Vec<Subspace> = flats.iter().map(|f| a.span(f)).collect::<Result<_, _>>()?;
                Ok(QMatroid::from_flats(field, *n, flats)?)
            }
            QMatroidFile::Code(c) => Ok(c.build()?.associated_qmatroid()),
        }
    }

    /// Writes any q-matroid by its flats.
    pub fn from_qmatroid(qm: &QMatroid) -> QMatroidFile {
        QMatroidFile::Flats {
            q: qm.ambient().q(),
            n: qm.n(),
            flats: qm.flats().elements().iter().map(|f| f.basis()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidFile {
    Uniform {
        n: usize,
        k: usize,
    },
    /// Flats as lists of element indices.
    Flats {
        #[serde(default)]
        labels: Option<Vec<String>>,
        n: usize,
        flats: Vec<Vec<usize>>,
    },
}

impl MatroidFile {
    pub fn build(&self) -> Result<Matroid, IoError> {
        match self {
            MatroidFile::Uniform { n, k } => Ok(Matroid::uniform(*k, *n)?),
            MatroidFile::Flats { labels, n, flats } => {
                let labels = labels.clone().unwrap_or_else(|| (1..=*n).map(|i| i.to_string()).collect());
                if labels.len() != *n {
                    return Err(IoError::Invalid(format!("{} labels for {n} elements", labels.len())));
                }
                let masks = flats
                    .iter()
                    .map(|f| {
                        f.iter().try_fold(0u64, |m, &i| {
                            (i < *n).then_some(m | 1 << i).ok_or_else(|| IoError::Invalid(format!("element {i}")))
                        })
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Matroid::from_flats(labels, masks)?)
            }
        }
    }
}

/// One entry of a map corpus: an `n2 x n1` matrix between two q-matroids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    #[serde(default)]
    pub name: Option<String>,
    pub domain: QMatroidFile,
    pub codomain: QMatroidFile,
    pub matrix: Vec<Vec<Elem>>,
}

impl MapEntry {
    pub fn build(&self) -> Result<(QMatroid, QMatroid, LMap), IoError> {
        let m = self.domain.build()?;
        let n = self.codomain.build()?;
        let cols = self.matrix.first().map_or(m.n(), Vec::len);
        if self.matrix.iter().any(|r| r.len() != cols) {
            return Err(IoError::Invalid("ragged matrix".into()));
        }
        let a = if self.matrix.is_empty() { Matrix::zeros(0, m.n()) } else { Matrix::from_rows(&self.matrix, cols) };
        let map = LMap::from_matrix(m.ambient(), n.ambient(), a)?;
        Ok((m, n, map))
    }
}
