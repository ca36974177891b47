//! Model algebras: block upper-triangular matrix algebras, Grassmann
//! algebras, full matrix algebras, and the multiplicative closure of a span
//! of matrices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Origin};
use crate::field::{Field, Scalar};
use crate::linalg::{LinalgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid composition {ks:?} of {m}: {reason}")]
    Composition { m: usize, ks: Vec<usize>, reason: String },
    #[error("index pair ({i}, {j}) out of range 1..={m}")]
    IndexRange { i: usize, j: usize, m: usize },
    #[error("Grassmann algebra needs characteristic != 2")]
    CharacteristicTwo,
    #[error("Grassmann algebra needs at least one generator")]
    NoGenerators,
    #[error("matrix span input: {0}")]
    MatrixInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Composition `(k1, …, k_{n+1})` of `m` describing the diagonal blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub m: usize,
    pub ks: Vec<usize>,
    pub unital: bool,
    pub field: Field,
}

impl BlockSpec {
    pub fn new(ks: Vec<usize>, unital: bool, field: Field) -> Result<Self, ConstructionError> {
        let m = ks.iter().sum();
        let spec = BlockSpec { m, ks, unital, field };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let err = |reason: &str| ConstructionError::Composition { m: self.m, ks: self.ks.clone(), reason: reason.into() };
        if self.ks.len() < 2 {
            return Err(err("need at least two parts"));
        }
        if self.ks.contains(&0) {
            return Err(err("parts must be positive"));
        }
        if self.ks.iter().sum::<usize>() != self.m {
            return Err(err("parts must sum to m"));
        }
        Ok(())
    }

    /// Number of parts minus one: the block algebra is nilpotent of index
    /// `n + 1` and satisfies L_n.
    pub fn n(&self) -> usize {
        self.ks.len() - 1
    }

    /// ½(m² − Σ kᵢ²), plus one when unital.
    pub fn expected_dim(&self) -> usize {
        let strict = (self.m * self.m - self.ks.iter().map(|k| k * k).sum::<usize>()) / 2;
        strict + usize::from(self.unital)
    }

    /// Block index (0-based) of the 1-based row/column `i`.
    fn block_of(&self, i: usize) -> usize {
        let mut prefix = 0;
        for (t, k) in self.ks.iter().enumerate() {
            prefix += k;
            if i <= prefix {
                return t;
            }
        }
        unreachable!("index within 1..=m")
    }
}

/// Whether the 1-based pair `(i, j)` lies strictly above the diagonal blocks:
/// `k0+…+k_{t−1} < i ≤ k0+…+k_t < j ≤ m` for some t.
pub fn star_condition(spec: &BlockSpec, i: usize, j: usize) -> Result<bool, ConstructionError> {
    spec.validate()?;
    if i == 0 || j == 0 || i > spec.m || j > spec.m {
        return Err(ConstructionError::IndexRange { i, j, m: spec.m });
    }
    Ok(spec.block_of(i) < spec.block_of(j))
}

fn unit_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("E{i}{j}")
    } else {
        format!("E{i},{j}")
    }
}

/// Matrix unit `E_{i,j}` (1-based).
pub fn matrix_unit(field: Field, m: usize, i: usize, j: usize) -> Matrix {
    let mut e = Matrix::zeros(field, m, m);
    e.set(i - 1, j - 1, field.one());
    e
}

/// Basis pairs `(i, j)` of the block algebra, lexicographic.
pub fn block_pairs(spec: &BlockSpec) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 1..=spec.m {
        for j in 1..=spec.m {
            if spec.block_of(i) < spec.block_of(j) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// The basis of the block algebra as `m × m` matrices, unit last if present.
pub fn block_matrices(spec: &BlockSpec) -> Result<Vec<Matrix>, ConstructionError> {
    spec.validate()?;
    let mut mats: Vec<Matrix> =
        block_pairs(spec).into_iter().map(|(i, j)| matrix_unit(spec.field, spec.m, i, j)).collect();
    if spec.unital {
        mats.push(Matrix::identity(spec.field, spec.m));
    }
    Ok(mats)
}

/// All compositions of `m` (ordered positive parts), optionally with a fixed
/// number of parts, in lexicographic order.
pub fn compositions(m: usize, parts: Option<usize>) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts: Option<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            if parts.is_none_or(|p| p == prefix.len()) {
                out.push(prefix.clone());
            }
            return;
        }
        if parts.is_some_and(|p| prefix.len() >= p) {
            return;
        }
        for k in 1..=rest {
            prefix.push(k);
            go(rest - k, parts, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(m, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// `R_m(k1, …, k_{n+1})`, optionally with `K·I_m` adjoined.
///
/// Basis: `E_{i,j}` for pairs satisfying the block condition, sorted
/// lexicographically, followed by `I` when unital.
pub fn block_triangular_algebra(spec: &BlockSpec) -> Result<Algebra, ConstructionError> {
    spec.validate()?;
    let field = spec.field;
    let pairs = block_pairs(spec);
    let strict = pairs.len();
    let dim = strict + usize::from(spec.unital);
    let index_of = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j));
    let mut table = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let entry: Vec<(usize, Scalar)> = match (pairs.get(a), pairs.get(b)) {
                (Some(&(i, j)), Some(&(k, l))) => {
                    if j == k {
                        // closed: block(i) < block(j) < block(l)
                        vec![(index_of(i, l).expect("product stays in the span"), field.one())]
                    } else {
                        vec![]
                    }
                }
                (Some(_), None) => vec![(a, field.one())],
                (None, Some(_)) => vec![(b, field.one())],
                (None, None) => vec![(strict, field.one())],
            };
            table.push(entry);
        }
    }
    let mut labels: Vec<String> = pairs.iter().map(|&(i, j)| unit_label(i, j)).collect();
    let unit = spec.unital.then(|| {
        labels.push("I".into());
        let mut u = vec![field.zero(); dim];
        u[strict] = field.one();
        u
    });
    let ks: Vec<String> = spec.ks.iter().map(ToString::to_string).collect();
    let name = if spec.unital {
        format!("KI{}+R{}({}) over {}", spec.m, spec.m, ks.join(","), field)
    } else {
        format!("R{}({}) over {}", spec.m, ks.join(","), field)
    };
    Ok(Algebra::from_sparse(field, table, labels, unit, Origin::BlockTriangular)?.with_name(name))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannSpec {
    pub m: usize,
    pub field: Field,
}

/// Sign of `v_S · v_T` for disjoint `S`, `T` (bitmasks over generators
/// 0..m): parity of the inversions in the concatenated index sequence.
fn grassmann_sign(s: u32, t: u32) -> bool {
    let mut inversions = 0u32;
    let mut rest = s;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        // elements of T smaller than i must move past it
        inversions += (t & ((1u32 << i) - 1)).count_ones();
    }
    inversions % 2 == 1
}

/// Basis monomials of `E^(m)` as bitmasks, ordered by degree then
/// lexicographically by generator index.
pub fn grassmann_monomials(m: usize) -> Vec<u32> {
    let mut monos: Vec<u32> = (0..(1u32 << m)).collect();
    monos.sort_by_key(|&s| {
        let idx: Vec<u32> = (0..m as u32).filter(|b| s & (1 << b) != 0).collect();
        (s.count_ones(), idx)
    });
    monos
}

fn monomial_label(s: u32, m: usize) -> String {
    if s == 0 {
        return "1".into();
    }
    (0..m).filter(|b| s & (1 << b) != 0).map(|b| format!("v{}", b + 1)).collect()
}

/// `E^(m) = K⟨v1, …, vm | v_i v_j + v_j v_i = 0⟩`, dimension 2^m, unit `v_∅`.
pub fn grassmann_algebra(spec: &GrassmannSpec) -> Result<Algebra, ConstructionError> {
    if spec.field.characteristic() == 2 {
        return Err(ConstructionError::CharacteristicTwo);
    }
    if spec.m == 0 {
        return Err(ConstructionError::NoGenerators);
    }
    assert!(spec.m <= 16, "Grassmann algebras beyond 16 generators are out of range");
    let field = spec.field;
    let monos = grassmann_monomials(spec.m);
    let dim = monos.len();
    let mut position = vec![0usize; dim];
    for (idx, &s) in monos.iter().enumerate() {
        position[s as usize] = idx;
    }
    let mut table = Vec::with_capacity(dim * dim);
    for &s in &monos {
        for &t in &monos {
            if s & t != 0 {
                table.push(vec![]);
            } else {
                let coef = if grassmann_sign(s, t) { field.from_i64(-1) } else { field.one() };
                table.push(vec![(position[(s | t) as usize], coef)]);
            }
        }
    }
    let labels = monos.iter().map(|&s| monomial_label(s, spec.m)).collect();
    let mut unit = vec![field.zero(); dim];
    unit[0] = field.one();
    let name = format!("E^({}) over {}", spec.m, field);
    Ok(Algebra::from_sparse(field, table, labels, Some(unit), Origin::Grassmann)?.with_name(name))
}

/// The full matrix algebra `M_m(K)` on matrix units, row-major order.
pub fn matrix_algebra(m: usize, field: Field) -> Result<Algebra, ConstructionError> {
    let dim = m * m;
    let mut table = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let (i, j, k, l) = (a / m, a % m, b / m, b % m);
            table.push(if j == k { vec![(i * m + l, field.one())] } else { vec![] });
        }
    }
    let labels = (0..dim).map(|a| unit_label(a / m + 1, a % m + 1)).collect();
    let mut unit = vec![field.zero(); dim];
    for i in 0..m {
        unit[i * m + i] = field.one();
    }
    Ok(Algebra::from_sparse(field, table, labels, Some(unit), Origin::MatrixSpan)?.with_name(format!("M{m}({field})")))
}

/// An algebra realised inside `M_size(K)`, with its basis matrices.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    pub algebra: Algebra,
    /// Basis of the closed span: the RREF rows of the vectorised matrices.
    pub basis: Vec<Matrix>,
    pub span: Subspace,
}

/// Smallest subspace of `M_size(K)` containing `mats` (and `I` if requested)
/// and closed under multiplication, as a structure-constant algebra.
///
/// Iterates `span ← span + span·span` on row-major vectorised matrices; the
/// dimension strictly grows until it stabilises, so at most `size²` rounds.
pub fn algebra_from_matrix_span(mats: &[Matrix], include_identity: bool) -> Result<MatrixAlgebra, ConstructionError> {
    let first = mats.first().ok_or_else(|| ConstructionError::MatrixInput("no matrices given".into()))?;
    let field = first.field();
    let size = first.rows();
    for (idx, m) in mats.iter().enumerate() {
        if m.rows() != size || m.cols() != size {
            return Err(ConstructionError::MatrixInput(format!("matrix {idx} is {}x{}, expected {size}x{size}", m.rows(), m.cols())));
        }
        if m.field() != field {
            return Err(ConstructionError::MatrixInput(format!("matrix {idx} is over {}, expected {field}", m.field())));
        }
    }
    let mut vectors: Vec<Vec<Scalar>> = mats.iter().map(Matrix::vectorize).collect();
    if include_identity {
        vectors.push(Matrix::identity(field, size).vectorize());
    }
    let mut span = Subspace::span(field, size * size, &vectors)?;
    loop {
        let basis = span_matrices(&span, size)?;
        let mut products = Vec::new();
        for a in &basis {
            for b in &basis {
                let p = a.mul(b)?.vectorize();
                if !span.contains_unchecked(&p) {
                    products.push(p);
                }
            }
        }
        if products.is_empty() {
            break;
        }
        span = span.extend(&products)?;
    }
    let basis = span_matrices(&span, size)?;
    let dim = basis.len();
    let mut table = Vec::with_capacity(dim * dim);
    for a in &basis {
        for b in &basis {
            let coords = span.coordinates(&a.mul(b)?.vectorize())?.expect("span is closed");
            table.push(coords.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect());
        }
    }
    let identity = Matrix::identity(field, size).vectorize();
    let unit = span.coordinates(&identity)?;
    let labels = basis.iter().enumerate().map(|(idx, m)| matrix_label(m, idx)).collect();
    let algebra = Algebra::from_sparse(field, table, labels, unit, Origin::MatrixSpan)?
        .with_name(format!("matrix span (dim {dim}) in M{size}({field})"));
    Ok(MatrixAlgebra { algebra, basis, span })
}

fn span_matrices(span: &Subspace, size: usize) -> Result<Vec<Matrix>, LinalgError> {
    span.basis_vectors().iter().map(|v| Matrix::unvectorize(span.field(), size, v)).collect()
}

/// `E{i}{j}` for a matrix unit, `I` for the identity, `M{idx}` otherwise.
fn matrix_label(m: &Matrix, idx: usize) -> String {
    let nonzero: Vec<(usize, usize)> = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !m.get(i, j).is_zero())
        .collect();
    if let [(i, j)] = nonzero[..] {
        if m.get(i, j).is_one() {
            return unit_label(i + 1, j + 1);
        }
    }
    if *m == Matrix::identity(m.field(), m.rows()) {
        return "I".into();
    }
    format!("M{idx}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Budget;

    fn q() -> Field {
        Field::rational()
    }

    #[test]
    fn star_condition_examples() {
        let s = BlockSpec::new(vec![1, 1, 1, 1], false, q()).unwrap();
        assert!(star_condition(&s, 1, 2).unwrap());
        assert!(!star_condition(&s, 2, 2).unwrap());
        let s = BlockSpec::new(vec![2, 2], false, q()).unwrap();
        assert!(!star_condition(&s, 2, 1).unwrap());
        assert!(star_condition(&s, 2, 3).unwrap());
        assert!(matches!(star_condition(&s, 0, 3), Err(ConstructionError::IndexRange { .. })));
        assert!(matches!(star_condition(&s, 1, 5), Err(ConstructionError::IndexRange { .. })));
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(5, None).len(), 16);
        assert_eq!(compositions(4, Some(2)), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert!(compositions(3, Some(4)).is_empty());
    }

    #[test]
    fn invalid_compositions() {
        assert!(BlockSpec::new(vec![4], false, q()).is_err());
        assert!(BlockSpec::new(vec![2, 0, 2], false, q()).is_err());
        let bad = BlockSpec { m: 5, ks: vec![2, 2], unital: false, field: q() };
        assert!(block_triangular_algebra(&bad).is_err());
    }

    #[test]
    fn block_dimensions_and_basis() {
        let s = BlockSpec::new(vec![1, 1, 1, 1], true, q()).unwrap();
        assert_eq!(block_triangular_algebra(&s).unwrap().dim(), 7);
        let s = BlockSpec::new(vec![2, 2], false, q()).unwrap();
        let a = block_triangular_algebra(&s).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.labels(), ["E13", "E14", "E23", "E24"]);
    }

    #[test]
    fn matrix_unit_rule() {
        let s = BlockSpec::new(vec![1, 1, 1, 1], false, q()).unwrap();
        let a = block_triangular_algebra(&s).unwrap();
        let e = |l: &str| a.basis(a.index_of(l).unwrap());
        assert_eq!(a.mul(&e("E12"), &e("E23")).unwrap(), e("E13"));
        assert_eq!(a.commutator(&e("E12"), &e("E23")).unwrap(), e("E13"));
        assert_eq!(a.commutator(&e("E23"), &e("E12")).unwrap(), a.neg(&e("E13")).unwrap());
        assert_eq!(a.left_normed_commutator(&[e("E12"), e("E23"), e("E34")]).unwrap(), e("E14"));
    }

    #[test]
    fn grassmann_products() {
        let e = grassmann_algebra(&GrassmannSpec { m: 3, field: q() }).unwrap();
        let v = |l: &str| e.basis(e.index_of(l).unwrap());
        assert_eq!(e.mul(&v("1"), &v("v1v2")).unwrap(), v("v1v2"));
        assert!(e.mul(&v("v1"), &v("v1")).unwrap().is_zero());
        assert_eq!(e.mul(&v("v2"), &v("v1")).unwrap(), e.neg(&v("v1v2")).unwrap());
        // (v1 + v2)^2 = v1v2 + v2v1 = 0
        let s = e.add(&v("v1"), &v("v2")).unwrap();
        assert!(e.mul(&s, &s).unwrap().is_zero());
        // [v1, v2] = 2 v1v2
        assert_eq!(e.commutator(&v("v1"), &v("v2")).unwrap(), e.scale(&v("v1v2"), &q().from_i64(2)).unwrap());
    }

    #[test]
    fn grassmann_sign_by_brute_force() {
        // oracle: bubble sort the concatenated index list and count swaps
        for s in 0u32..16 {
            for t in 0u32..16 {
                if s & t != 0 {
                    continue;
                }
                let mut seq: Vec<u32> = (0..4).filter(|b| s & (1 << b) != 0).collect();
                seq.extend((0..4).filter(|b| t & (1 << b) != 0));
                let mut swaps = 0;
                for i in 0..seq.len() {
                    for j in 0..seq.len() - 1 - i {
                        if seq[j] > seq[j + 1] {
                            seq.swap(j, j + 1);
                            swaps += 1;
                        }
                    }
                }
                assert_eq!(grassmann_sign(s, t), swaps % 2 == 1, "s={s:b} t={t:b}");
            }
        }
    }

    #[test]
    fn grassmann_rejects_char_two() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(grassmann_algebra(&GrassmannSpec { m: 3, field: f2 }).unwrap_err(), ConstructionError::CharacteristicTwo);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(grassmann_algebra(&GrassmannSpec { m: 2, field: f3 }).unwrap().dim(), 4);
    }

    #[test]
    fn single_nilpotent_matrix_span() {
        let e12 = matrix_unit(q(), 2, 1, 2);
        let ma = algebra_from_matrix_span(&[e12], false).unwrap();
        assert_eq!(ma.algebra.dim(), 1);
        assert!(ma.algebra.basis_product(0, 0).is_zero());
        assert!(!ma.algebra.has_unit());
    }

    #[test]
    fn two_units_generate_m2() {
        let ma = algebra_from_matrix_span(&[matrix_unit(q(), 2, 1, 2), matrix_unit(q(), 2, 2, 1)], true).unwrap();
        assert_eq!(ma.algebra.dim(), 4);
        assert!(ma.algebra.has_unit());
        assert!(!ma.algebra.satisfies_ln(1, &Budget::default()).unwrap().holds);
    }

    #[test]
    fn matrix_span_input_errors() {
        assert!(algebra_from_matrix_span(&[], false).is_err());
        let a = Matrix::identity(q(), 2);
        let b = Matrix::identity(q(), 3);
        assert!(matches!(algebra_from_matrix_span(&[a.clone(), b], false), Err(ConstructionError::MatrixInput(_))));
        let c = Matrix::identity(Field::prime(3).unwrap(), 2);
        assert!(matches!(algebra_from_matrix_span(&[a, c], false), Err(ConstructionError::MatrixInput(_))));
    }
}
