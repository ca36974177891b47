//! Finite-dimensional associative algebras given by structure constants,
//! their elements, commutator calculus and the L_n decision procedure.
//!
//! # Basis tuples suffice
//!
//! The left-normed commutator `[x1, ..., x_{n+1}]*` is linear in every slot.
//! Over a field it therefore vanishes identically as soon as it vanishes on
//! every tuple of basis elements, so [`Algebra::satisfies_ln`] sweeps the
//! `d^{n+1}` basis tuples and nothing else. The sweep is depth-first in
//! lexicographic order and prunes a prefix as soon as its partial commutator
//! is zero, since every extension of a zero prefix is zero too.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};
use crate::linalg::{LinalgError, Matrix};
use crate::report::{Check, Counterexample, Mode, Report};

/// Default tuple budget for exhaustive sweeps.
pub const DEFAULT_MAX_TUPLES: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_MAX_TUPLES`].
pub const BUDGET_ENV: &str = "LIENIL_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("table is not associative: (b{i} b{j}) b{k} != b{i} (b{j} b{k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("unit vector is not a two-sided identity for basis element {0}")]
    BadUnit(usize),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("empty commutator argument list")]
    EmptyCommutator,
    #[error("n must be at least 1")]
    ZeroN,
    #[error("tuple budget exceeded: need {required} tuples, limit is {limit}")]
    Budget { required: u128, limit: u64 },
    #[error("algebra has no unit")]
    NoUnit,
}

/// Cap on exhaustive sweeps, in tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_tuples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_tuples: DEFAULT_MAX_TUPLES }
    }
}

impl Budget {
    pub fn new(max_tuples: u64) -> Self {
        Budget { max_tuples }
    }

    /// Default budget, overridden by `LIENIL_BUDGET` when set to an integer.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }

    pub fn fits(&self, required: u128) -> bool {
        required <= self.max_tuples as u128
    }

    pub fn check(&self, required: u128) -> Result<(), AlgebraError> {
        if self.fits(required) {
            Ok(())
        } else {
            Err(AlgebraError::Budget { required, limit: self.max_tuples })
        }
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn tuple_count(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    StructureConstants,
    MatrixSpan,
    BlockTriangular,
    Grassmann,
}

/// Content fingerprint of an algebra's field and table. Elements remember the
/// fingerprint of the algebra that created them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(u64);

type Sparse = Vec<(usize, Scalar)>;

fn sparsify(dense: Vec<Scalar>) -> Sparse {
    dense.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect()
}

/// An element as a sparse coordinate map. No explicit zeros are stored, so
/// structural equality is equality of elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    algebra: AlgebraId,
    coords: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn algebra_id(&self) -> AlgebraId {
        self.algebra
    }

    pub fn coords(&self) -> &BTreeMap<usize, Scalar> {
        &self.coords
    }

    pub fn coefficient(&self, i: usize) -> Option<&Scalar> {
        self.coords.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coords.keys().copied().collect()
    }
}

/// A nonzero left-normed commutator of basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LnWitness {
    pub indices: Vec<usize>,
    pub value: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LnVerdict {
    pub holds: bool,
    /// Lexicographically first falsifying basis tuple.
    pub witness: Option<LnWitness>,
}

/// A finite-dimensional associative algebra over an exact field.
#[derive(Debug, Clone)]
pub struct Algebra {
    id: AlgebraId,
    name: String,
    field: Field,
    dim: usize,
    labels: Vec<String>,
    /// `table[i * dim + j]` is `b_i · b_j`.
    table: Vec<Sparse>,
    /// `comm[i * dim + j]` is `[b_i, b_j]`.
    comm: Vec<Sparse>,
    unit: Option<Vec<Scalar>>,
    origin: Origin,
}

impl PartialEq for Algebra {
    /// Same field, dimension and structure constants in the same basis order.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table && self.unit == other.unit
    }
}

impl Eq for Algebra {}

fn fingerprint(field: Field, dim: usize, table: &[Sparse]) -> AlgebraId {
    let mut h = Sha256::new();
    h.update(format!("{field}|{dim}|").as_bytes());
    for entry in table {
        for (k, s) in entry {
            h.update(format!("{k}:{s},").as_bytes());
        }
        h.update(b";");
    }
    let digest = h.finalize();
    AlgebraId(u64::from_le_bytes(digest[..8].try_into().expect("8 bytes")))
}

/// Validating constructor; see [`Algebra::new`].
pub fn make_algebra(
    field: Field,
    table: Vec<Vec<Vec<Scalar>>>,
    labels: Vec<String>,
    unit: Option<Vec<Scalar>>,
    origin: Origin,
) -> Result<Algebra, AlgebraError> {
    Algebra::new(field, table, labels, unit, origin)
}

impl Algebra {
    /// Builds an algebra from a dense `d × d` table of coordinate vectors.
    ///
    /// Associativity is checked on every basis triple and the unit laws on
    /// every basis element; the first offending triple (in lexicographic
    /// order) or index is reported.
    pub fn new(
        field: Field,
        table: Vec<Vec<Vec<Scalar>>>,
        labels: Vec<String>,
        unit: Option<Vec<Scalar>>,
        origin: Origin,
    ) -> Result<Self, AlgebraError> {
        let dim = table.len();
        if labels.len() != dim {
            return Err(AlgebraError::Dimension(format!("{} labels for dimension {dim}", labels.len())));
        }
        let mut sparse = Vec::with_capacity(dim * dim);
        for (i, row) in table.into_iter().enumerate() {
            if row.len() != dim {
                return Err(AlgebraError::Dimension(format!("table row {i} has {} entries, expected {dim}", row.len())));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.len() != dim {
                    return Err(AlgebraError::Dimension(format!(
                        "product b{i}·b{j} has {} coordinates, expected {dim}",
                        v.len()
                    )));
                }
                if let Some(bad) = v.iter().find(|s| s.field() != field) {
                    return Err(FieldError::Mismatch(field, bad.field()).into());
                }
                sparse.push(sparsify(v));
            }
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(AlgebraError::Dimension(format!("unit has {} coordinates, expected {dim}", u.len())));
            }
            if let Some(bad) = u.iter().find(|s| s.field() != field) {
                return Err(FieldError::Mismatch(field, bad.field()).into());
            }
        }
        Self::from_sparse(field, sparse, labels, unit, origin)
    }

    pub(crate) fn from_sparse(
        field: Field,
        table: Vec<Sparse>,
        labels: Vec<String>,
        unit: Option<Vec<Scalar>>,
        origin: Origin,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        debug_assert_eq!(table.len(), dim * dim);
        let id = fingerprint(field, dim, &table);
        let mut alg = Algebra {
            id,
            name: String::new(),
            field,
            dim,
            labels,
            table,
            comm: Vec::new(),
            unit,
            origin,
        };
        alg.comm = (0..dim * dim)
            .map(|ij| {
                let (i, j) = (ij / dim, ij % dim);
                let mut v = alg.basis_product_dense(i, j);
                for (k, s) in &alg.table[j * dim + i] {
                    v[*k] = &v[*k] - s;
                }
                sparsify(v)
            })
            .collect();
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        let bad = (0..d).into_par_iter().find_map_first(|i| {
            for j in 0..d {
                let ij = &self.table[i * d + j];
                for k in 0..d {
                    // (b_i b_j) b_k
                    let mut left = vec![self.field.zero(); d];
                    for (l, c) in ij {
                        self.axpy_table(&mut left, c, *l, k);
                    }
                    // b_i (b_j b_k)
                    let mut right = vec![self.field.zero(); d];
                    for (l, c) in &self.table[j * d + k] {
                        self.axpy_table(&mut right, c, i, *l);
                    }
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        match bad {
            Some((i, j, k)) => Err(AlgebraError::NonAssociative { i, j, k }),
            None => Ok(()),
        }
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let Some(u) = &self.unit else { return Ok(()) };
        for i in 0..self.dim {
            let mut e = vec![self.field.zero(); self.dim];
            e[i] = self.field.one();
            if self.mul_dense(u, &e) != e || self.mul_dense(&e, u) != e {
                return Err(AlgebraError::BadUnit(i));
            }
        }
        Ok(())
    }

    /// `acc += c · (b_i b_j)`
    fn axpy_table(&self, acc: &mut [Scalar], c: &Scalar, i: usize, j: usize) {
        for (k, s) in &self.table[i * self.dim + j] {
            acc[*k] = &acc[*k] + &(c * s);
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Human-readable descriptor; falls back to origin and dimension.
    pub fn name(&self) -> String {
        if self.name.is_empty() {
            format!("{:?}(dim {}) over {}", self.origin, self.dim, self.field)
        } else {
            self.name.clone()
        }
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn has_unit(&self) -> bool {
        self.unit.is_some()
    }

    pub fn unit(&self) -> Option<Element> {
        self.unit.as_ref().map(|u| self.element_unchecked(u.clone()))
    }

    pub fn unit_vector(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    /// Dense `d × d` table of coordinate vectors, as accepted by [`Algebra::new`].
    pub fn dense_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product_dense(i, j)).collect())
            .collect()
    }

    pub fn zero(&self) -> Element {
        Element { algebra: self.id, coords: BTreeMap::new() }
    }

    pub fn basis(&self, i: usize) -> Element {
        assert!(i < self.dim, "basis index {i} out of range");
        let mut coords = BTreeMap::new();
        coords.insert(i, self.field.one());
        Element { algebra: self.id, coords }
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.dim).map(|i| self.basis(i)).collect()
    }

    /// Element from dense coordinates.
    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element, AlgebraError> {
        if coords.len() != self.dim {
            return Err(AlgebraError::Dimension(format!("{} coordinates, expected {}", coords.len(), self.dim)));
        }
        if let Some(bad) = coords.iter().find(|s| s.field() != self.field) {
            return Err(FieldError::Mismatch(self.field, bad.field()).into());
        }
        Ok(self.element_unchecked(coords))
    }

    pub(crate) fn element_unchecked(&self, coords: Vec<Scalar>) -> Element {
        Element { algebra: self.id, coords: sparsify(coords).into_iter().collect() }
    }

    /// Element from small integer coordinates.
    pub fn element_i64(&self, coords: &[i64]) -> Result<Element, AlgebraError> {
        self.element(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    /// Sum of `coef · b_label` terms looked up by label.
    pub fn element_from_labels(&self, terms: &[(i64, &str)]) -> Result<Element, AlgebraError> {
        let mut v = vec![self.field.zero(); self.dim];
        for (c, label) in terms {
            let i = self
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| AlgebraError::Dimension(format!("unknown basis label {label}")))?;
            v[i] = &v[i] + &self.field.from_i64(*c);
        }
        Ok(self.element_unchecked(v))
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn to_dense(&self, e: &Element) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        for (i, s) in &e.coords {
            v[*i] = s.clone();
        }
        v
    }

    fn owns(&self, e: &Element) -> Result<(), AlgebraError> {
        if e.algebra == self.id {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    pub(crate) fn basis_product_dense(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        for (k, s) in &self.table[i * self.dim + j] {
            v[*k] = s.clone();
        }
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        Element { algebra: self.id, coords: self.table[i * self.dim + j].iter().cloned().collect() }
    }

    pub(crate) fn mul_dense(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.dim];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = x * y;
                self.axpy_table(&mut acc, &c, i, j);
            }
        }
        acc
    }

    /// `c · b_k`
    pub(crate) fn mul_basis_right(&self, c: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.dim];
        for (i, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            self.axpy_table(&mut acc, x, i, k);
        }
        acc
    }

    /// `b_k · c`
    pub(crate) fn mul_basis_left(&self, k: usize, c: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.dim];
        for (i, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            self.axpy_table(&mut acc, x, k, i);
        }
        acc
    }

    /// `[c, b_k]`
    pub(crate) fn comm_basis_right(&self, c: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.dim];
        for (i, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (l, s) in &self.comm[i * self.dim + k] {
                acc[*l] = &acc[*l] + &(x * s);
            }
        }
        acc
    }

    pub(crate) fn comm_dense(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.dim];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = x * y;
                for (l, s) in &self.comm[i * self.dim + j] {
                    acc[*l] = &acc[*l] + &(&c * s);
                }
            }
        }
        acc
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(self.element_unchecked(self.mul_dense(&self.to_dense(a), &self.to_dense(b))))
    }

    /// Product of a non-empty list, left to right.
    pub fn product(&self, xs: &[Element]) -> Result<Element, AlgebraError> {
        let (first, rest) = xs.split_first().ok_or(AlgebraError::EmptyCommutator)?;
        self.owns(first)?;
        let mut acc = self.to_dense(first);
        for x in rest {
            self.owns(x)?;
            acc = self.mul_dense(&acc, &self.to_dense(x));
        }
        Ok(self.element_unchecked(acc))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.owns(a)?;
        self.owns(b)?;
        let mut coords = a.coords.clone();
        for (i, s) in &b.coords {
            let v = coords.get(i).map_or_else(|| s.clone(), |x| x + s);
            if v.is_zero() {
                coords.remove(i);
            } else {
                coords.insert(*i, v);
            }
        }
        Ok(Element { algebra: self.id, coords })
    }

    pub fn neg(&self, a: &Element) -> Result<Element, AlgebraError> {
        self.owns(a)?;
        Ok(Element { algebra: self.id, coords: a.coords.iter().map(|(i, s)| (*i, -s)).collect() })
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.add(a, &self.neg(b)?)
    }

    pub fn scale(&self, a: &Element, s: &Scalar) -> Result<Element, AlgebraError> {
        self.owns(a)?;
        if s.field() != self.field {
            return Err(FieldError::Mismatch(self.field, s.field()).into());
        }
        Ok(Element {
            algebra: self.id,
            coords: a.coords.iter().map(|(i, c)| (*i, c * s)).filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn power(&self, a: &Element, k: u32) -> Result<Element, AlgebraError> {
        self.owns(a)?;
        if k == 0 {
            return self.unit().ok_or(AlgebraError::NoUnit);
        }
        let base = self.to_dense(a);
        let mut acc = base.clone();
        for _ in 1..k {
            acc = self.mul_dense(&acc, &base);
        }
        Ok(self.element_unchecked(acc))
    }

    /// `[x, y] = xy − yx`
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(self.element_unchecked(self.comm_dense(&self.to_dense(x), &self.to_dense(y))))
    }

    /// `[x1]* = x1`, `[x1, …, x_{k+1}]* = [[x1, …, xk]*, x_{k+1}]`.
    pub fn left_normed_commutator(&self, xs: &[Element]) -> Result<Element, AlgebraError> {
        let (first, rest) = xs.split_first().ok_or(AlgebraError::EmptyCommutator)?;
        self.owns(first)?;
        let mut acc = self.to_dense(first);
        for x in rest {
            self.owns(x)?;
            acc = self.comm_dense(&acc, &self.to_dense(x));
        }
        Ok(self.element_unchecked(acc))
    }

    /// Left-normed commutator of basis elements.
    pub fn basis_commutator(&self, indices: &[usize]) -> Element {
        let (first, rest) = indices.split_first().expect("non-empty index list");
        let mut acc = vec![self.field.zero(); self.dim];
        acc[*first] = self.field.one();
        for &k in rest {
            acc = self.comm_basis_right(&acc, k);
        }
        self.element_unchecked(acc)
    }

    /// Matrix of `y ↦ a·y` (column j holds `a·b_j`).
    pub fn left_mult_matrix(&self, a: &Element) -> Result<Matrix, AlgebraError> {
        self.owns(a)?;
        Ok(self.left_mult_matrix_dense(&self.to_dense(a)))
    }

    pub(crate) fn left_mult_matrix_dense(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul_basis_right(a, j)).collect();
        Matrix::from_rows(self.field, self.dim, &cols).expect("square").transpose()
    }

    /// Matrix of `y ↦ y·a`.
    pub fn right_mult_matrix(&self, a: &Element) -> Result<Matrix, AlgebraError> {
        self.owns(a)?;
        let a = self.to_dense(a);
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul_basis_left(j, &a)).collect();
        Ok(Matrix::from_rows(self.field, self.dim, &cols)?.transpose())
    }

    /// A seeded random element: each coordinate is nonzero with probability ½.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        let v = (0..self.dim)
            .map(|_| if rng.random_bool(0.5) { self.field.random(rng) } else { self.field.zero() })
            .collect();
        self.element_unchecked(v)
    }

    /// Renders an element as a signed sum of labelled basis elements.
    pub fn format(&self, e: &Element) -> String {
        format_terms(&self.labels, e.coords.iter().map(|(i, s)| (*i, s)))
    }

    pub(crate) fn format_dense(&self, v: &[Scalar]) -> String {
        format_terms(&self.labels, v.iter().enumerate().filter(|(_, s)| !s.is_zero()))
    }

    /// Decides L_n by the exhaustive basis-tuple sweep.
    ///
    /// Returns the lexicographically first tuple `(i1, …, i_{n+1})` whose
    /// left-normed commutator is nonzero. The result does not depend on the
    /// number of rayon workers.
    pub fn satisfies_ln(&self, n: usize, budget: &Budget) -> Result<LnVerdict, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::ZeroN);
        }
        budget.check(tuple_count(self.dim, n + 1))?;
        let witness = (0..self.dim).into_par_iter().find_map_first(|i| {
            let mut start = vec![self.field.zero(); self.dim];
            start[i] = self.field.one();
            let mut path = vec![i];
            self.first_nonzero_chain(&start, n + 1, &mut path)
                .map(|value| LnWitness { indices: path.clone(), value: self.element_unchecked(value) })
        });
        Ok(LnVerdict { holds: witness.is_none(), witness })
    }

    /// Depth-first search for the first extension of `path` to `len` indices
    /// with nonzero left-normed commutator; `current` is the commutator of
    /// `path` and is nonzero.
    fn first_nonzero_chain(&self, current: &[Scalar], len: usize, path: &mut Vec<usize>) -> Option<Vec<Scalar>> {
        if path.len() == len {
            return Some(current.to_vec());
        }
        for k in 0..self.dim {
            let next = self.comm_basis_right(current, k);
            if next.iter().all(Scalar::is_zero) {
                continue;
            }
            path.push(k);
            if let Some(v) = self.first_nonzero_chain(&next, len, path) {
                return Some(v);
            }
            path.pop();
        }
        None
    }

    /// Smallest `n ≤ n_max` with L_n, if any.
    pub fn lie_index(&self, n_max: usize, budget: &Budget) -> Result<Option<usize>, AlgebraError> {
        for n in 1..=n_max {
            if self.satisfies_ln(n, budget)?.holds {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    pub fn format_witness(&self, w: &LnWitness) -> String {
        let labels: Vec<&str> = w.indices.iter().map(|&i| self.label(i)).collect();
        format!("({}) ↦ {}", labels.join(","), self.format(&w.value))
    }

    /// Jacobi identity on basis triples (`trials == None`) or on seeded random
    /// triples.
    pub fn jacobi_check(&self, seed: u64, trials: Option<u64>) -> Report {
        let d = self.dim;
        let jacobi = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| -> Vec<Scalar> {
            let a = self.comm_dense(&self.comm_dense(x, y), z);
            let b = self.comm_dense(&self.comm_dense(y, z), x);
            let c = self.comm_dense(&self.comm_dense(z, x), y);
            a.iter().zip(&b).zip(&c).map(|((a, b), c)| &(a + b) + c).collect()
        };
        match trials {
            None => {
                let mut report = Report::new("jacobi", self.name(), Mode::Exhaustive);
                let unit = |i: usize| {
                    let mut v = vec![self.field.zero(); d];
                    v[i] = self.field.one();
                    v
                };
                let cx = (0..d * d * d).into_par_iter().find_map_first(|t| {
                    let (i, j, k) = (t / (d * d), (t / d) % d, t % d);
                    let v = jacobi(&unit(i), &unit(j), &unit(k));
                    (!v.iter().all(Scalar::is_zero)).then(|| {
                        Counterexample::new(
                            vec![self.label(i).into(), self.label(j).into(), self.label(k).into()],
                            self.format_dense(&v),
                        )
                    })
                });
                report.push(Check::from_outcome("jacobi.basis_triples", (d * d * d) as u64, cx));
                report
            }
            Some(trials) => {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut report = Report::new("jacobi", self.name(), Mode::Seeded { seed, trials });
                let mut cx = None;
                for _ in 0..trials {
                    let x = self.to_dense(&self.random_element(&mut rng));
                    let y = self.to_dense(&self.random_element(&mut rng));
                    let z = self.to_dense(&self.random_element(&mut rng));
                    let v = jacobi(&x, &y, &z);
                    if !v.iter().all(Scalar::is_zero) {
                        cx = Some(Counterexample::new(
                            vec![self.format_dense(&x), self.format_dense(&y), self.format_dense(&z)],
                            self.format_dense(&v),
                        ));
                        break;
                    }
                }
                report.push(Check::from_outcome("jacobi.random_triples", trials, cx));
                report
            }
        }
    }
}

pub(crate) fn format_terms<'a>(labels: &[String], terms: impl Iterator<Item = (usize, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (i, s) in terms {
        let text = s.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
