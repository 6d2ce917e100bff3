use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixNorm {
    Max,
    Frobenius,
}

/// A measurement that may be undefined because some distance was infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Measure {
    Value(f64),
    #[serde(with = "undefined_tag")]
    Undefined,
}

impl Measure {
    pub fn value(self) -> Option<f64> {
        match self {
            Self::Value(v) => Some(v),
            Self::Undefined => None,
        }
    }

    pub fn is_undefined(self) -> bool {
        matches!(self, Self::Undefined)
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Value(v) => write!(f, "{v:?}"),
            Self::Undefined => f.write_str("undefined"),
        }
    }
}

mod undefined_tag {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("undefined")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "undefined" {
            Ok(())
        } else {
            Err(de::Error::custom(format!("expected \"undefined\", got {s:?}")))
        }
    }
}

/// Norm of `d_i - d_0`; undefined when either matrix has an infinite entry.
pub fn matrix_norm_delta(d_i: &DistanceMatrix, d_0: &DistanceMatrix, norm: MatrixNorm) -> Result<Measure> {
    if d_i.len() != d_0.len() {
        return Err(Error::DimensionMismatch(d_i.len(), d_0.len()));
    }
    if !d_i.all_finite() || !d_0.all_finite() {
        return Ok(Measure::Undefined);
    }
    let diffs = d_i.entries().iter().zip(d_0.entries()).map(|(a, b)| a - b);
    Ok(Measure::Value(match norm {
        MatrixNorm::Max => diffs.fold(0.0, |m, x| m.max(x.abs())),
        MatrixNorm::Frobenius => diffs.map(|x| x * x).sum::<f64>().sqrt(),
    }))
}
