//! Dense exact matrices, reduced row-echelon form, null spaces and
//! subspaces kept in canonical RREF.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("shape mismatch: expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    Ambient(usize, usize),
}

/// Dense row-major matrix over a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape { expected: rows * cols, got: data.len() });
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(FieldError::Mismatch(field, bad.field()).into());
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::Shape { expected: cols, got: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "scalar field mismatch");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch(self.field, other.field).into());
        }
        if self.cols != other.rows {
            return Err(LinalgError::Shape { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape { expected: self.cols, got: v.len() });
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    *o = a.checked_mul(b).and_then(|p| o.checked_add(&p))?;
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Stacks `other` under `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch(self.field, other.field).into());
        }
        if self.cols != other.cols {
            return Err(LinalgError::Shape { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Row-major flattening, used to treat square matrices as vectors.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn unvectorize(field: Field, size: usize, v: &[Scalar]) -> Result<Matrix, LinalgError> {
        Matrix::new(field, size, size, v.to_vec())
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = self.field.one();
        }
        let (r, pivots) = rref_with_pivots(&aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j).clone();
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination. Zero rows are dropped from the result, so the
/// returned matrix has exactly `rank` rows.
fn rref_with_pivots(m: &Matrix) -> (Matrix, Vec<usize>) {
    let field = m.field;
    let cols = m.cols;
    let mut rows: Vec<Vec<Scalar>> = m.row_vecs();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        let Some(sel) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, sel);
        let inv = rows[lead][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for v in rows[lead][col..].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let pivot_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == lead || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..cols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    let data = rows.into_iter().flatten().collect();
    (Matrix { field, rows: lead, cols, data }, pivots)
}

/// Reduced row-echelon form and rank. Zero rows are removed.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let (r, pivots) = rref_with_pivots(m);
    (r, pivots.len())
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1
}

/// `{v : m·v = 0}` as a canonical subspace of `K^cols`.
pub fn null_space(m: &Matrix) -> Subspace {
    let field = m.field;
    let n = m.cols;
    let (r, pivots) = rref_with_pivots(m);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            let e = r.get(row, free);
            if !e.is_zero() {
                v[p] = -e;
            }
        }
        basis.push(v);
    }
    Subspace::span(field, n, &basis).expect("null space vectors share the field")
}

/// A linear subspace of `K^ambient`, stored as its unique RREF basis.
/// Structural equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows(field, ambient, vectors)?;
        Ok(Self::from_matrix_rows(&m))
    }

    /// Row space of `m`.
    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let (basis, pivots) = rref_with_pivots(m);
        Subspace { ambient: m.cols, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<(), LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::Ambient(self.ambient, v.len()));
        }
        if let Some(bad) = v.iter().find(|s| s.field() != self.field()) {
            return Err(FieldError::Mismatch(self.field(), bad.field()).into());
        }
        Ok(())
    }

    fn check_other(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::Ambient(self.ambient, other.ambient));
        }
        if self.field() != other.field() {
            return Err(FieldError::Mismatch(self.field(), other.field()).into());
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating the pivot columns; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        self.check_vec(v)?;
        Ok(self.reduce_unchecked(v))
    }

    pub(crate) fn reduce_unchecked(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (c, b) in self.basis.row(row).iter().enumerate().skip(p) {
                if !b.is_zero() {
                    out[c] = &out[c] - &(&factor * b);
                }
            }
        }
        out
    }

    /// Coordinates of a member vector with respect to the RREF basis, or
    /// `None` if it is not a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        Ok(self.reduce(v)?.iter().all(Scalar::is_zero))
    }

    pub(crate) fn contains_unchecked(&self, v: &[Scalar]) -> bool {
        self.reduce_unchecked(v).iter().all(Scalar::is_zero)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_other(other)?;
        Ok(Subspace::from_matrix_rows(&self.basis.vstack(&other.basis)?))
    }

    /// Adds the given vectors to the span.
    pub fn extend(&self, vectors: &[Vec<Scalar>]) -> Result<Subspace, LinalgError> {
        let extra = Matrix::from_rows(self.field(), self.ambient, vectors)?;
        Ok(Subspace::from_matrix_rows(&self.basis.vstack(&extra)?))
    }

    /// Vectors annihilating every member under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field(), self.ambient);
        }
        null_space(&self.basis)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_other(other)?;
        let stacked = self.annihilator().basis.vstack(&other.annihilator().basis)?;
        if stacked.rows() == 0 {
            return Ok(Subspace::full(self.field(), self.ambient));
        }
        Ok(null_space(&stacked))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_other(other)?;
        Ok((0..self.basis.rows()).all(|r| other.contains_unchecked(self.basis.row(r))))
    }
}
