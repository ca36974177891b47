//! Subspace computations inside a fixed algebra: subring and ideal closures,
//! powers of subspaces, nilpotent elements, the radical, and the n-th Lie
//! center.
//!
//! Subspaces are canonical [`Subspace`] values in the coordinate space of the
//! algebra's basis.
//!
//! A nilpotent element `a` of a d-dimensional algebra satisfies
//! `a^{d+1} = 0`: if `a^k ≠ 0` and `a^{k+1} = 0`, the powers `a, a², …, a^k`
//! are linearly independent (multiply a vanishing combination by the right
//! power of `a` to isolate its lowest term), so `k ≤ d`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{tuple_count, Algebra, AlgebraError, Budget, Element, Origin};
use crate::field::{Field, Scalar};
use crate::linalg::{null_space, LinalgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("trace-form radical needs characteristic 0 or p > {dim}, got p = {p}")]
    SmallCharacteristic { p: u64, dim: usize },
    #[error("generator list is empty")]
    NoGenerators,
    #[error("subspace is not closed under multiplication")]
    NotClosed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealSide {
    Left,
    Right,
    TwoSided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalResult {
    pub subspace: Subspace,
    /// Least k with `rad^k = 0`.
    pub nilpotency_index: usize,
}

fn dense_gens(alg: &Algebra, gens: &[Element]) -> Result<Vec<Vec<Scalar>>, StructureError> {
    gens.iter()
        .map(|g| {
            if g.algebra_id() != alg.id() {
                Err(AlgebraError::AlgebraMismatch.into())
            } else {
                Ok(alg.to_dense(g))
            }
        })
        .collect()
}

/// Basis vectors of a subspace as algebra elements.
pub fn subspace_elements(alg: &Algebra, s: &Subspace) -> Vec<Element> {
    s.basis_vectors().into_iter().map(|v| alg.element_unchecked(v)).collect()
}

pub fn subspace_of(alg: &Algebra, elems: &[Element]) -> Result<Subspace, StructureError> {
    let vecs = dense_gens(alg, elems)?;
    Ok(Subspace::span(alg.field(), alg.dim(), &vecs)?)
}

pub fn contains_element(s: &Subspace, alg: &Algebra, e: &Element) -> bool {
    s.contains_unchecked(&alg.to_dense(e))
}

/// Grows `start` until `step(basis)` produces nothing new.
fn fixed_point<F>(start: Subspace, step: F) -> Subspace
where
    F: Fn(&[Vec<Scalar>]) -> Vec<Vec<Scalar>>,
{
    let mut span = start;
    loop {
        let basis = span.basis_vectors();
        let fresh: Vec<Vec<Scalar>> =
            step(&basis).into_iter().filter(|v| !span.contains_unchecked(v)).collect();
        if fresh.is_empty() {
            return span;
        }
        span = span.extend(&fresh).expect("vectors live in the ambient space");
    }
}

/// Smallest multiplicatively closed subspace containing `gens` (and the unit
/// when `include_unit`).
pub fn subring_closure(alg: &Algebra, gens: &[Element], include_unit: bool) -> Result<Subspace, StructureError> {
    if gens.is_empty() && !include_unit {
        return Err(StructureError::NoGenerators);
    }
    let mut vecs = dense_gens(alg, gens)?;
    if include_unit {
        vecs.push(alg.unit_vector().ok_or(AlgebraError::NoUnit)?.to_vec());
    }
    let start = Subspace::span(alg.field(), alg.dim(), &vecs)?;
    Ok(fixed_point(start, |basis| {
        let mut out = Vec::new();
        for a in basis {
            for b in basis {
                out.push(alg.mul_dense(a, b));
            }
        }
        out
    }))
}

/// Smallest subspace containing `gens` and closed under multiplication by
/// basis elements on the requested side(s). No unit is assumed.
pub fn ideal_closure(alg: &Algebra, gens: &[Element], side: IdealSide) -> Result<Subspace, StructureError> {
    let vecs = dense_gens(alg, gens)?;
    let start = Subspace::span(alg.field(), alg.dim(), &vecs)?;
    Ok(ideal_closure_of(alg, start, side))
}

pub fn ideal_closure_of(alg: &Algebra, start: Subspace, side: IdealSide) -> Subspace {
    fixed_point(start, |basis| {
        let mut out = Vec::new();
        for v in basis {
            for k in 0..alg.dim() {
                if side != IdealSide::Right {
                    out.push(alg.mul_basis_left(k, v));
                }
                if side != IdealSide::Left {
                    out.push(alg.mul_basis_right(v, k));
                }
            }
        }
        out
    })
}

pub fn is_ideal(alg: &Algebra, s: &Subspace, side: IdealSide) -> bool {
    s.basis_vectors().iter().all(|v| {
        (0..alg.dim()).all(|k| {
            (side == IdealSide::Right || s.contains_unchecked(&alg.mul_basis_left(k, v)))
                && (side == IdealSide::Left || s.contains_unchecked(&alg.mul_basis_right(v, k)))
        })
    })
}

pub fn is_multiplicatively_closed(alg: &Algebra, s: &Subspace) -> bool {
    let basis = s.basis_vectors();
    basis.iter().all(|a| basis.iter().all(|b| s.contains_unchecked(&alg.mul_dense(a, b))))
}

/// Span of all products `a·b` with `a ∈ s`, `b ∈ t`.
pub fn subspace_product(alg: &Algebra, s: &Subspace, t: &Subspace) -> Subspace {
    let (sb, tb) = (s.basis_vectors(), t.basis_vectors());
    let prods: Vec<Vec<Scalar>> = sb.iter().flat_map(|a| tb.iter().map(move |b| alg.mul_dense(a, b))).collect();
    Subspace::span(alg.field(), alg.dim(), &prods).expect("products live in the algebra")
}

/// Least `k ≤ max_k` with `s^k = 0`, where `s^{k+1} = s^k · s`. The zero
/// subspace has index 1.
pub fn subspace_power_nilpotency(alg: &Algebra, s: &Subspace, max_k: usize) -> Option<usize> {
    if s.is_zero() {
        return Some(1);
    }
    let mut power = s.clone();
    let mut k = 1;
    while k < max_k {
        let next = subspace_product(alg, &power, s);
        k += 1;
        if next.is_zero() {
            return Some(k);
        }
        if next == power {
            return None;
        }
        power = next;
    }
    None
}

/// `a^{d+1} = 0` with `d = dim`; see the module docs for why this exponent
/// suffices.
pub fn is_nilpotent_element(alg: &Algebra, a: &Element) -> Result<bool, StructureError> {
    if a.algebra_id() != alg.id() {
        return Err(AlgebraError::AlgebraMismatch.into());
    }
    Ok(is_nilpotent_dense(alg, &alg.to_dense(a)))
}

pub(crate) fn is_nilpotent_dense(alg: &Algebra, a: &[Scalar]) -> bool {
    let mut p = a.to_vec();
    for _ in 0..alg.dim() {
        if p.iter().all(Scalar::is_zero) {
            return true;
        }
        p = alg.mul_dense(&p, a);
    }
    p.iter().all(Scalar::is_zero)
}

/// `A ⊕ K·1` with the new unit as the last basis element.
pub fn adjoin_unit(alg: &Algebra) -> Result<Algebra, StructureError> {
    let d = alg.dim();
    let field = alg.field();
    let mut table = Vec::with_capacity((d + 1) * (d + 1));
    for i in 0..=d {
        for j in 0..=d {
            let entry: Vec<(usize, Scalar)> = match (i < d, j < d) {
                (true, true) => alg.basis_product(i, j).coords().iter().map(|(k, s)| (*k, s.clone())).collect(),
                (true, false) => vec![(i, field.one())],
                (false, true) => vec![(j, field.one())],
                (false, false) => vec![(d, field.one())],
            };
            table.push(entry);
        }
    }
    let mut labels = alg.labels().to_vec();
    labels.push("1".into());
    let mut unit = vec![field.zero(); d + 1];
    unit[d] = field.one();
    Ok(Algebra::from_sparse(field, table, labels, Some(unit), alg.origin())?.with_name(format!("{} + K1", alg.name())))
}

/// Gram matrix of the trace form `(x, y) ↦ Tr(L_{xy})` on the basis.
pub fn trace_form(alg: &Algebra) -> Matrix {
    let d = alg.dim();
    let field = alg.field();
    // Tr(L_{b_l}) = Σ_k coefficient of b_k in b_l b_k
    let traces: Vec<Scalar> = (0..d)
        .map(|l| {
            (0..d).fold(field.zero(), |acc, k| match alg.basis_product(l, k).coefficient(k) {
                Some(c) => &acc + c,
                None => acc,
            })
        })
        .collect();
    let mut t = Matrix::zeros(field, d, d);
    for i in 0..d {
        for j in 0..d {
            let v = alg
                .basis_product(i, j)
                .coords()
                .iter()
                .fold(field.zero(), |acc, (l, c)| &acc + &(c * &traces[*l]));
            t.set(i, j, v);
        }
    }
    t
}

/// The radical via the trace-form criterion:
/// `rad = {x : Tr(L_{x·b_i}) = 0 for every basis element b_i}`.
///
/// Valid in characteristic 0 and for `p > dim`; smaller characteristics are
/// refused. Non-unital input is computed inside the unital hull and
/// intersected back.
pub fn radical(alg: &Algebra) -> Result<RadicalResult, StructureError> {
    let hull = if alg.has_unit() { None } else { Some(adjoin_unit(alg)?) };
    let work = hull.as_ref().unwrap_or(alg);
    if let Field::Prime { p } = alg.field() {
        if p as usize <= work.dim() {
            return Err(StructureError::SmallCharacteristic { p, dim: work.dim() });
        }
    }
    let rad_work = null_space(&trace_form(work));
    let subspace = match &hull {
        None => rad_work,
        Some(h) => {
            let d = alg.dim();
            let field = alg.field();
            // vectors of the hull with zero unit coordinate
            let mut original: Vec<Vec<Scalar>> = Vec::new();
            for i in 0..d {
                let mut v = vec![field.zero(); h.dim()];
                v[i] = field.one();
                original.push(v);
            }
            let inside = Subspace::span(field, h.dim(), &original)?;
            let cut = rad_work.intersection(&inside)?;
            let back: Vec<Vec<Scalar>> = cut.basis_vectors().into_iter().map(|mut v| {
                v.truncate(d);
                v
            }).collect();
            Subspace::span(field, d, &back)?
        }
    };
    let nilpotency_index =
        subspace_power_nilpotency(alg, &subspace, alg.dim() + 2).expect("the radical is a nilpotent ideal");
    Ok(RadicalResult { subspace, nilpotency_index })
}

/// `Z_n = {r : [r, x1, …, xn]* = 0 for all xi}` as the null space of the
/// stacked linear maps `r ↦ [r, b_{i1}, …, b_{in}]` over all basis n-tuples.
pub fn lie_center(alg: &Algebra, n: usize, budget: &Budget) -> Result<Subspace, StructureError> {
    if n == 0 {
        return Err(AlgebraError::ZeroN.into());
    }
    let d = alg.dim();
    let field = alg.field();
    budget.check(tuple_count(d, n)).map_err(StructureError::from)?;
    let identity: Vec<Vec<Scalar>> = (0..d)
        .map(|r| {
            let mut v = vec![field.zero(); d];
            v[r] = field.one();
            v
        })
        .collect();
    let partial: Vec<Subspace> = (0..d)
        .into_par_iter()
        .map(|first| {
            let mut rows = Subspace::zero(field, d);
            let images: Vec<Vec<Scalar>> = identity.iter().map(|v| alg.comm_basis_right(v, first)).collect();
            collect_center_rows(alg, images, n - 1, &mut rows);
            rows
        })
        .collect();
    let rows = partial.iter().try_fold(Subspace::zero(field, d), |acc, s| acc.sum(s))?;
    if rows.is_zero() {
        return Ok(Subspace::full(field, d));
    }
    Ok(null_space(rows.basis()))
}

/// `images[r]` is `[b_r, x1, …, xk]` for the current prefix; adds the rows of
/// the map `r ↦ images[r]` once `remaining` reaches 0.
fn collect_center_rows(alg: &Algebra, images: Vec<Vec<Scalar>>, remaining: usize, rows: &mut Subspace) {
    if images.iter().all(|v| v.iter().all(Scalar::is_zero)) {
        return;
    }
    if remaining == 0 {
        let d = alg.dim();
        let fresh: Vec<Vec<Scalar>> = (0..d)
            .map(|c| images.iter().map(|img| img[c].clone()).collect::<Vec<_>>())
            .filter(|row| !rows.contains_unchecked(row))
            .collect();
        if !fresh.is_empty() {
            *rows = rows.extend(&fresh).expect("rows have length d");
        }
        return;
    }
    for k in 0..alg.dim() {
        let next: Vec<Vec<Scalar>> = images.iter().map(|v| alg.comm_basis_right(v, k)).collect();
        collect_center_rows(alg, next, remaining - 1, rows);
    }
}

/// A multiplicatively closed subspace as a structure-constant algebra over
/// its RREF basis. Labels render each basis vector in the parent's labels.
pub fn subalgebra(alg: &Algebra, s: &Subspace) -> Result<Algebra, StructureError> {
    let basis = s.basis_vectors();
    let k = basis.len();
    let mut table = Vec::with_capacity(k * k);
    for a in &basis {
        for b in &basis {
            let coords = s.coordinates(&alg.mul_dense(a, b))?.ok_or(StructureError::NotClosed)?;
            table.push(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    let unit = match alg.unit_vector() {
        Some(u) => s.coordinates(u)?,
        None => None,
    };
    let labels = basis.iter().map(|v| alg.format_dense(v)).collect();
    Ok(Algebra::from_sparse(alg.field(), table, labels, unit, Origin::StructureConstants)?
        .with_name(format!("subalgebra (dim {k}) of {}", alg.name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{block_triangular_algebra, grassmann_algebra, matrix_algebra, BlockSpec, GrassmannSpec};

    fn block4() -> Algebra {
        block_triangular_algebra(&BlockSpec::new(vec![1, 1, 1, 1], true, Field::rational()).unwrap()).unwrap()
    }

    fn span_labels(a: &Algebra, labels: &[&str]) -> Subspace {
        let elems: Vec<Element> = labels.iter().map(|l| a.basis(a.index_of(l).unwrap())).collect();
        subspace_of(a, &elems).unwrap()
    }

    #[test]
    fn subring_of_unit() {
        let a = block4();
        let s = subring_closure(&a, &[a.unit().unwrap()], false).unwrap();
        assert_eq!(s, span_labels(&a, &["I"]));
    }

    #[test]
    fn subring_of_two_matrix_units() {
        let m3 = matrix_algebra(3, Field::rational()).unwrap();
        let e = |l: &str| m3.basis(m3.index_of(l).unwrap());
        let s = subring_closure(&m3, &[e("E12"), e("E23")], false).unwrap();
        assert_eq!(s, span_labels(&m3, &["E12", "E23", "E13"]));
    }

    #[test]
    fn left_closure_of_corner() {
        let a = block4();
        let s = ideal_closure(&a, &[a.basis(a.index_of("E14").unwrap())], IdealSide::Left).unwrap();
        assert_eq!(s, span_labels(&a, &["E14"]));
        assert!(is_ideal(&a, &s, IdealSide::TwoSided));
    }

    #[test]
    fn power_indices() {
        let a = block4();
        assert_eq!(subspace_power_nilpotency(&a, &span_labels(&a, &["E14"]), 10), Some(2));
        let strict = span_labels(&a, &["E12", "E13", "E14", "E23", "E24", "E34"]);
        assert_eq!(subspace_power_nilpotency(&a, &strict, 10), Some(4));
        assert_eq!(subspace_power_nilpotency(&a, &span_labels(&a, &["I"]), 10), None);
        assert_eq!(subspace_power_nilpotency(&a, &Subspace::zero(a.field(), a.dim()), 10), Some(1));
    }

    #[test]
    fn nilpotent_elements() {
        let a = block4();
        let x = a.element_from_labels(&[(1, "E12"), (1, "E34")]).unwrap();
        assert!(is_nilpotent_element(&a, &x).unwrap());
        assert!(!is_nilpotent_element(&a, &a.unit().unwrap()).unwrap());
        let e = grassmann_algebra(&GrassmannSpec { m: 3, field: Field::rational() }).unwrap();
        let y = e.element_from_labels(&[(1, "v1"), (1, "v1v2v3")]).unwrap();
        assert!(is_nilpotent_element(&e, &y).unwrap());
    }

    #[test]
    fn radical_examples() {
        let a = block4();
        let rad = radical(&a).unwrap();
        assert_eq!(rad.subspace, span_labels(&a, &["E12", "E13", "E14", "E23", "E24", "E34"]));
        assert_eq!(rad.nilpotency_index, 4);

        let m2 = matrix_algebra(2, Field::prime(5).unwrap()).unwrap();
        assert!(radical(&m2).unwrap().subspace.is_zero());

        let e3 = grassmann_algebra(&GrassmannSpec { m: 3, field: Field::rational() }).unwrap();
        let r = radical(&e3).unwrap();
        assert_eq!(r.subspace.dim(), 7);
        assert!(!contains_element(&r.subspace, &e3, &e3.unit().unwrap()));
    }

    #[test]
    fn radical_refuses_small_characteristic() {
        let m2 = matrix_algebra(2, Field::prime(3).unwrap()).unwrap();
        assert_eq!(radical(&m2), Err(StructureError::SmallCharacteristic { p: 3, dim: 4 }));
    }

    #[test]
    fn radical_of_non_unital_block() {
        let r = block_triangular_algebra(&BlockSpec::new(vec![1, 1, 1], false, Field::rational()).unwrap()).unwrap();
        let rad = radical(&r).unwrap();
        assert_eq!(rad.subspace, Subspace::full(r.field(), r.dim()));
        assert_eq!(rad.nilpotency_index, 3);
    }

    #[test]
    fn lie_centers_of_block4() {
        let a = block4();
        let b = Budget::default();
        assert_eq!(lie_center(&a, 1, &b).unwrap(), span_labels(&a, &["I", "E14"]));
        assert_eq!(lie_center(&a, 2, &b).unwrap(), span_labels(&a, &["I", "E13", "E24", "E14"]));
        assert_eq!(lie_center(&a, 3, &b).unwrap(), Subspace::full(a.field(), a.dim()));
    }

    #[test]
    fn lie_center_budget() {
        let a = block4();
        assert!(matches!(
            lie_center(&a, 3, &Budget::new(100)),
            Err(StructureError::Algebra(AlgebraError::Budget { required: 343, limit: 100 }))
        ));
    }

    #[test]
    fn subalgebra_of_center() {
        let a = block4();
        let z = lie_center(&a, 2, &Budget::default()).unwrap();
        let s = subalgebra(&a, &z).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.has_unit());
        assert!(s.satisfies_ln(2, &Budget::default()).unwrap().holds);
        let not_closed = span_labels(&a, &["E12", "E23"]);
        assert_eq!(subalgebra(&a, &not_closed).unwrap_err(), StructureError::NotClosed);
    }
}
