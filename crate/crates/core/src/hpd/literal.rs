//! JSON matrix literals: a list of rows, each entry either `[re, im]` or a
//! bare number for a real entry.
//!
//! ```json
//! [[2, [1, -0.5]], [[1, 0.5], 3]]
//! ```

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{CMatrix, Hermitian, PdMatrix};

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

struct Row<'a>(&'a [Complex64]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for z in self.0 {
            if z.im == 0.0 {
                seq.serialize_element(&z.re)?;
            } else {
                seq.serialize_element(&[z.re, z.im])?;
            }
        }
        seq.end()
    }
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for row in self.rows() {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Entry>>::deserialize(deserializer).map_err(|e| {
            D::Error::custom(format!(
                "expected a matrix literal (rows of numbers or [re, im] pairs): {e}"
            ))
        })?;
        let n = rows.len();
        if n == 0 {
            return Err(D::Error::custom(
                "matrix literal must have at least one row",
            ));
        }
        let mut out = Vec::with_capacity(n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(D::Error::custom(format!(
                    "matrix literal must be square: row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            out.push(
                row.into_iter()
                    .map(|e| match e {
                        Entry::Real(x) => Complex64::new(x, 0.0),
                        Entry::Complex([re, im]) => Complex64::new(re, im),
                    })
                    .collect(),
            );
        }
        CMatrix::from_rows(out).map_err(D::Error::custom)
    }
}

impl Serialize for Hermitian {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.matrix().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Hermitian {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Hermitian::new(CMatrix::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

impl Serialize for PdMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.matrix().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PdMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        PdMatrix::new(Hermitian::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}
