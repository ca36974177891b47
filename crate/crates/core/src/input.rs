//! The JSON algebra-spec format: parsing with error paths, building, and
//! export of any algebra as a `structure_constants` spec.
//!
//! Rationals are `[num, den]` pairs and residues are plain integers; any
//! integer outside the 64-bit range is written as a decimal string.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{Algebra, Origin};
use crate::constructions::{
    algebra_from_matrix_span, block_triangular_algebra, grassmann_algebra, BlockSpec, ConstructionError,
    GrassmannSpec,
};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("malformed spec at {path}: {message}")]
    Json { path: String, message: String },
    #[error("invalid spec at {path}: {message}")]
    Invalid { path: String, message: String },
    /// Well-formed, but the field does not meet the construction's
    /// precondition.
    #[error("unsupported field at {path}: {message}")]
    Field { path: String, message: String },
}

impl InputError {
    fn invalid(path: impl Into<String>, message: impl ToString) -> Self {
        InputError::Invalid { path: path.into(), message: message.to_string() }
    }

    pub fn path(&self) -> &str {
        match self {
            InputError::Json { path, .. } | InputError::Invalid { path, .. } | InputError::Field { path, .. } => path,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_bigint(v: &BigInt) -> Self {
        i64::try_from(v).map(IntRepr::Small).unwrap_or_else(|_| IntRepr::Big(v.to_string()))
    }

    fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s.trim().parse().map_err(|_| format!("{s:?} is not an integer")),
        }
    }
}

/// A scalar: an integer (residue, or integral rational) or a `[num, den]`
/// fraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(IntRepr),
    Fraction([IntRepr; 2]),
}

impl ScalarRepr {
    pub fn from_scalar(s: &Scalar) -> Self {
        match s.residue() {
            Some(r) => ScalarRepr::Int(IntRepr::from_bigint(&BigInt::from(r))),
            None => {
                let (n, d) = s.to_fraction();
                ScalarRepr::Fraction([IntRepr::from_bigint(&n), IntRepr::from_bigint(&d)])
            }
        }
    }

    fn to_scalar(&self, field: Field, path: &str) -> Result<Scalar, InputError> {
        let (num, den) = match self {
            ScalarRepr::Int(v) => (v.to_bigint(), Ok(BigInt::from(1))),
            ScalarRepr::Fraction([n, d]) => (n.to_bigint(), d.to_bigint()),
        };
        let num = num.map_err(|m| InputError::invalid(path, m))?;
        let den = den.map_err(|m| InputError::invalid(path, m))?;
        if let (Field::Prime { p }, ScalarRepr::Int(_)) = (field, self) {
            let r = u64::try_from(&num).ok().filter(|r| *r < p);
            return match r {
                Some(r) => field.residue(r).map_err(|e| InputError::invalid(path, e)),
                None => Err(InputError::invalid(path, format!("residue {num} is not in 0..{p}"))),
            };
        }
        field.from_fraction(num, den).map_err(|e| InputError::invalid(path, e))
    }
}

/// One algebra description. Unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpecFile {
    StructureConstants {
        field: Field,
        dim: usize,
        /// `table[i][j]` holds the coordinates of `b_i · b_j`.
        table: Vec<Vec<Vec<ScalarRepr>>>,
        labels: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<Vec<ScalarRepr>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    BlockTriangular {
        field: Field,
        m: usize,
        ks: Vec<usize>,
        unital: bool,
    },
    Grassmann {
        field: Field,
        m: usize,
    },
    MatrixSpan {
        field: Field,
        size: usize,
        matrices: Vec<Vec<Vec<ScalarRepr>>>,
        include_identity: bool,
    },
}

/// Parses a spec, reporting the JSON path of the first error.
pub fn parse_spec(text: &str) -> Result<AlgebraSpecFile, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let spec: AlgebraSpecFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        InputError::Json { path, message: e.into_inner().to_string() }
    })?;
    de.end().map_err(|e| InputError::Json { path: ".".into(), message: e.to_string() })?;
    Ok(spec)
}

fn check_field(field: Field) -> Result<Field, InputError> {
    match field {
        Field::Rational => Ok(field),
        Field::Prime { p } => Field::prime(p).map_err(|e| InputError::invalid("field.p", e)),
    }
}

impl AlgebraSpecFile {
    pub fn field(&self) -> Field {
        match self {
            AlgebraSpecFile::StructureConstants { field, .. }
            | AlgebraSpecFile::BlockTriangular { field, .. }
            | AlgebraSpecFile::Grassmann { field, .. }
            | AlgebraSpecFile::MatrixSpan { field, .. } => *field,
        }
    }

    pub fn build(&self) -> Result<Algebra, InputError> {
        let field = check_field(self.field())?;
        match self {
            AlgebraSpecFile::StructureConstants { dim, table, labels, unit, name, .. } => {
                let d = *dim;
                if table.len() != d {
                    return Err(InputError::invalid("table", format!("{} rows for dim {d}", table.len())));
                }
                if labels.len() != d {
                    return Err(InputError::invalid("labels", format!("{} labels for dim {d}", labels.len())));
                }
                let mut dense = Vec::with_capacity(d);
                for (i, row) in table.iter().enumerate() {
                    if row.len() != d {
                        return Err(InputError::invalid(format!("table[{i}]"), format!("{} entries for dim {d}", row.len())));
                    }
                    let mut out_row = Vec::with_capacity(d);
                    for (j, v) in row.iter().enumerate() {
                        if v.len() != d {
                            return Err(InputError::invalid(
                                format!("table[{i}][{j}]"),
                                format!("{} coordinates for dim {d}", v.len()),
                            ));
                        }
                        let coords = v
                            .iter()
                            .enumerate()
                            .map(|(k, s)| s.to_scalar(field, &format!("table[{i}][{j}][{k}]")))
                            .collect::<Result<Vec<_>, _>>()?;
                        out_row.push(coords);
                    }
                    dense.push(out_row);
                }
                let unit = match unit {
                    None => None,
                    Some(u) if u.len() != d => {
                        return Err(InputError::invalid("unit", format!("{} coordinates for dim {d}", u.len())))
                    }
                    Some(u) => Some(
                        u.iter()
                            .enumerate()
                            .map(|(k, s)| s.to_scalar(field, &format!("unit[{k}]")))
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                };
                let alg = Algebra::new(field, dense, labels.clone(), unit, Origin::StructureConstants)
                    .map_err(|e| InputError::invalid("table", e))?;
                Ok(match name {
                    Some(n) => alg.with_name(n.clone()),
                    None => alg,
                })
            }
            AlgebraSpecFile::BlockTriangular { m, ks, unital, .. } => {
                let spec = BlockSpec::new(ks.clone(), *unital, field).map_err(|e| InputError::invalid("ks", e))?;
                if spec.m != *m {
                    return Err(InputError::invalid("m", format!("m = {m} but ks sum to {}", spec.m)));
                }
                block_triangular_algebra(&spec).map_err(|e| InputError::invalid("ks", e))
            }
            AlgebraSpecFile::Grassmann { m, .. } => {
                grassmann_algebra(&GrassmannSpec { m: *m, field }).map_err(|e| match e {
                    ConstructionError::CharacteristicTwo => InputError::Field { path: "field".into(), message: e.to_string() },
                    _ => InputError::invalid("m", e),
                })
            }
            AlgebraSpecFile::MatrixSpan { size, matrices, include_identity, .. } => {
                let mut mats = Vec::with_capacity(matrices.len());
                for (idx, rows) in matrices.iter().enumerate() {
                    if rows.len() != *size || rows.iter().any(|r| r.len() != *size) {
                        return Err(InputError::invalid(format!("matrices[{idx}]"), format!("not {size}x{size}")));
                    }
                    let mut data = Vec::with_capacity(size * size);
                    for (i, row) in rows.iter().enumerate() {
                        for (j, s) in row.iter().enumerate() {
                            data.push(s.to_scalar(field, &format!("matrices[{idx}][{i}][{j}]"))?);
                        }
                    }
                    mats.push(Matrix::new(field, *size, *size, data).map_err(|e| InputError::invalid(format!("matrices[{idx}]"), e))?);
                }
                if mats.is_empty() && *include_identity {
                    mats.push(Matrix::identity(field, *size));
                }
                algebra_from_matrix_span(&mats, *include_identity)
                    .map(|m| m.algebra)
                    .map_err(|e| InputError::invalid("matrices", e))
            }
        }
    }

    /// Canonical JSON text of the spec.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("specs serialize")
    }

    /// Hex sha256 of [`canonical_json`](Self::canonical_json).
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}

pub fn load_algebra(text: &str) -> Result<Algebra, InputError> {
    parse_spec(text)?.build()
}

/// Any algebra as a `structure_constants` spec that rebuilds to an equal
/// algebra.
pub fn export_spec(alg: &Algebra) -> AlgebraSpecFile {
    let table = alg
        .dense_table()
        .iter()
        .map(|row| row.iter().map(|v| v.iter().map(ScalarRepr::from_scalar).collect()).collect())
        .collect();
    AlgebraSpecFile::StructureConstants {
        field: alg.field(),
        dim: alg.dim(),
        table,
        labels: alg.labels().to_vec(),
        unit: alg.unit_vector().map(|u| u.iter().map(ScalarRepr::from_scalar).collect()),
        name: Some(alg.name()),
    }
}
