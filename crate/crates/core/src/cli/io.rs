//! The JSON subspace file format.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::numerics::{FieldTag, Matrix, Tolerance, C64};
use crate::subspace::Subspace;

/// One scalar: a bare number, or `[re, im]` in complex files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    fn encode(z: C64, field: FieldTag) -> Self {
        match field {
            FieldTag::Real => Scalar::Real(z.re),
            FieldTag::Complex => Scalar::Complex([z.re, z.im]),
        }
    }

    fn value(self) -> C64 {
        match self {
            Scalar::Real(x) => C64::new(x, 0.0),
            Scalar::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceEntry {
    pub id: String,
    /// Spanning vectors, each of length `ambient_dim`.
    pub vectors: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub field: FieldTag,
    pub ambient_dim: usize,
    pub subspaces: Vec<SubspaceEntry>,
}

impl SubspaceFile {
    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: SubspaceFile =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("subspace files always serialize")
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.subspaces.is_empty() {
            return Err(CliError::Parse("the file lists no subspaces".into()));
        }
        let mut seen = HashSet::new();
        for entry in &self.subspaces {
            if !seen.insert(entry.id.as_str()) {
                return Err(CliError::Parse(format!("duplicate id {:?}", entry.id)));
            }
            for (k, v) in entry.vectors.iter().enumerate() {
                if v.len() != self.ambient_dim {
                    return Err(CliError::Parse(format!(
                        "{}: vector {k} has length {}, expected {}",
                        entry.id,
                        v.len(),
                        self.ambient_dim
                    )));
                }
                for s in v {
                    if self.field == FieldTag::Real && matches!(s, Scalar::Complex(_)) {
                        return Err(CliError::Parse(format!(
                            "{}: complex entry in a real file",
                            entry.id
                        )));
                    }
                    let z = s.value();
                    if !(z.re.is_finite() && z.im.is_finite()) {
                        return Err(CliError::Parse(format!("{}: non-finite entry", entry.id)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a file from named spanning sets given as columns of matrices.
    pub fn from_spanning_sets(
        field: FieldTag,
        ambient_dim: usize,
        sets: &[(&str, &Matrix)],
    ) -> Self {
        let subspaces = sets
            .iter()
            .map(|(id, m)| SubspaceEntry {
                id: id.to_string(),
                vectors: m
                    .columns()
                    .into_iter()
                    .map(|col| col.into_iter().map(|z| Scalar::encode(z, field)).collect())
                    .collect(),
            })
            .collect();
        SubspaceFile {
            field,
            ambient_dim,
            subspaces,
        }
    }

    pub fn ids(&self) -> Vec<&str> {
        self.subspaces.iter().map(|s| s.id.as_str()).collect()
    }

    /// The spanning vectors of one entry as matrix columns.
    pub fn spanning_set(&self, entry: &SubspaceEntry) -> Matrix {
        let cols: Vec<Vec<C64>> = entry
            .vectors
            .iter()
            .map(|v| v.iter().map(|s| s.value()).collect())
            .collect();
        Matrix::from_columns(self.ambient_dim, &cols).expect("lengths were validated")
    }

    pub fn subspace(&self, id: &str, tol: &Tolerance) -> Result<Subspace, CliError> {
        let entry =
            self.subspaces
                .iter()
                .find(|s| s.id == id)
                .ok_or_else(|| CliError::MissingId {
                    id: id.to_string(),
                    known: self.ids().join(", "),
                })?;
        Ok(Subspace::from_columns(
            self.field,
            self.spanning_set(entry),
            tol,
        )?)
    }

    pub fn all_subspaces(&self, tol: &Tolerance) -> Result<Vec<Subspace>, CliError> {
        self.subspaces
            .iter()
            .map(|e| {
                Ok(Subspace::from_columns(
                    self.field,
                    self.spanning_set(e),
                    tol,
                )?)
            })
            .collect()
    }
}
