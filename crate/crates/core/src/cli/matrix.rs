//! Pairwise distance matrices.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CliError;
use crate::metrics::{
    asymmetric_distance, containment_gap, diagnostic_quantities, directional_distance, gap,
    symmetric_distance, symmetrize, MetricDescriptor, MetricName, SymmetrizeMode,
};
use crate::numerics::Tolerance;
use crate::subspace::Subspace;

pub const DIRECTION_CONVENTION: &str = "row→column";

/// Anything the matrix command can tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixMetric {
    Extension(MetricName),
    ContainmentGap,
    Gap,
    Directional,
    Symmetric,
    MaxCorrelation,
    Martin,
}

impl MatrixMetric {
    const OTHERS: [MatrixMetric; 6] = [
        MatrixMetric::ContainmentGap,
        MatrixMetric::Gap,
        MatrixMetric::Directional,
        MatrixMetric::Symmetric,
        MatrixMetric::MaxCorrelation,
        MatrixMetric::Martin,
    ];

    pub fn all() -> impl Iterator<Item = MatrixMetric> {
        MetricName::ALL
            .into_iter()
            .map(MatrixMetric::Extension)
            .chain(Self::OTHERS)
    }

    pub fn name(self) -> &'static str {
        match self {
            MatrixMetric::Extension(m) => m.as_str(),
            MatrixMetric::ContainmentGap => "containment_gap",
            MatrixMetric::Gap => "gap",
            MatrixMetric::Directional => "directional",
            MatrixMetric::Symmetric => "symmetric",
            MatrixMetric::MaxCorrelation => "max_correlation",
            MatrixMetric::Martin => "martin",
        }
    }

    pub fn units(self) -> &'static str {
        match self {
            MatrixMetric::Extension(m) => m.units(),
            _ => "dimensionless",
        }
    }

    pub fn valid_names() -> String {
        Self::all().map(|m| m.name()).collect::<Vec<_>>().join(", ")
    }

    fn distance(self, v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<f64, CliError> {
        let value = match self {
            MatrixMetric::Extension(m) => {
                asymmetric_distance(&MetricDescriptor::new(m), v, w, tol)?.value
            }
            MatrixMetric::ContainmentGap => containment_gap(v, w, tol)?,
            MatrixMetric::Gap => gap(v, w, tol)?,
            MatrixMetric::Directional => directional_distance(v, w, tol)?,
            MatrixMetric::Symmetric => symmetric_distance(v, w, tol)?,
            MatrixMetric::MaxCorrelation => diagnostic_quantities(v, w, tol)?.max_correlation.value,
            MatrixMetric::Martin => diagnostic_quantities(v, w, tol)?.martin.value,
        };
        Ok(value)
    }
}

impl fmt::Display for MatrixMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixMetric {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Self::all().find(|m| m.name() == s).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown metric {s:?}; valid names: {}",
                Self::valid_names()
            ))
        })
    }
}

/// A full pairwise table; entry `(i, j)` is the distance from subspace `i`
/// to subspace `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrixOutput {
    pub metric: String,
    pub direction_convention: String,
    pub ids: Vec<String>,
    /// Infinite entries are written as `null`.
    #[serde(serialize_with = "write_values", deserialize_with = "read_values")]
    pub values: Vec<Vec<f64>>,
    pub units: String,
    pub symmetrize: String,
}

fn write_values<S: Serializer>(values: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Option<f64>>> = values
        .iter()
        .map(|r| r.iter().map(|&x| x.is_finite().then_some(x)).collect())
        .collect();
    rows.serialize(s)
}

fn read_values<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<f64>>, D::Error> {
    let rows: Vec<Vec<Option<f64>>> = Vec::deserialize(d)?;
    Ok(rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.unwrap_or(f64::INFINITY)).collect())
        .collect())
}

impl DistanceMatrixOutput {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("distance matrices always serialize")
    }

    /// Header row of ids, then one row per source subspace.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# metric={} units={} direction={} symmetrize={}\n",
            self.metric, self.units, self.direction_convention, self.symmetrize
        );
        out.push_str("from\\to");
        for id in &self.ids {
            out.push(',');
            out.push_str(&csv_field(id));
        }
        out.push('\n');
        for (id, row) in self.ids.iter().zip(&self.values) {
            out.push_str(&csv_field(id));
            for x in row {
                out.push(',');
                if x.is_finite() {
                    out.push_str(&format!("{x:?}"));
                } else {
                    out.push_str("inf");
                }
            }
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Computes every ordered pair in parallel; the result does not depend on
/// the schedule.
pub fn distance_matrix(
    ids: &[&str],
    subspaces: &[Subspace],
    metric: MatrixMetric,
    mode: Option<SymmetrizeMode>,
    tol: &Tolerance,
) -> Result<DistanceMatrixOutput, CliError> {
    let n = subspaces.len();
    let flat: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|k| metric.distance(&subspaces[k / n], &subspaces[k % n], tol))
        .collect::<Result<_, _>>()?;
    let raw = |i: usize, j: usize| flat[i * n + j];
    let mut values = vec![vec![0.0; n]; n];
    for (i, row) in values.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = match mode {
                None => raw(i, j),
                Some(m) => symmetrize(raw(i, j), raw(j, i), m)?,
            };
        }
    }
    Ok(DistanceMatrixOutput {
        metric: metric.name().to_string(),
        direction_convention: DIRECTION_CONVENTION.to_string(),
        ids: ids.iter().map(|s| s.to_string()).collect(),
        values,
        units: metric.units().to_string(),
        symmetrize: match mode {
            None => "none",
            Some(SymmetrizeMode::Max) => "max",
            Some(SymmetrizeMode::Mean) => "mean",
        }
        .to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_names_parse() {
        for m in MatrixMetric::all() {
            assert_eq!(m.name().parse::<MatrixMetric>().unwrap(), m);
        }
        let err = "hausdorff".parse::<MatrixMetric>().unwrap_err().to_string();
        assert!(err.contains("fubini_study") && err.contains("martin"));
    }

    #[test]
    fn infinite_entries_become_null() {
        let out = DistanceMatrixOutput {
            metric: "martin".into(),
            direction_convention: DIRECTION_CONVENTION.into(),
            ids: vec!["a".into(), "b".into()],
            values: vec![vec![0.0, f64::INFINITY], vec![f64::INFINITY, 0.0]],
            units: "dimensionless".into(),
            symmetrize: "none".into(),
        };
        let json = out.to_json();
        assert!(json.contains("null"));
        let back: DistanceMatrixOutput = serde_json::from_str(&json).unwrap();
        assert_eq!(back, out);
        assert!(out.to_csv().contains(",inf"));
    }
}
