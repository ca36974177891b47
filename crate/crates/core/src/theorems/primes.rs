//! Exhaustive ideal enumeration in tiny finite algebras and the check that
//! every prime ideal of a Lie nilpotent ring is completely prime.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{is_zero, SuiteError, VerifyConfig};
use crate::algebra::{tuple_count, Algebra, AlgebraError};
use crate::field::{Field, Scalar};
use crate::linalg::{null_space, Matrix, Subspace};
use crate::report::{Check, Counterexample, Mode, Report};
use crate::structure::{ideal_closure_of, is_ideal, subspace_product, IdealSide};

/// Hard cap on the number of ring elements, `p^dim`.
pub const ELEMENT_BUDGET: u64 = 1 << 16;
/// Cap on the number of subspaces generated for the enumeration cross-check.
pub const SUBSPACE_BUDGET: u128 = 1 << 16;

fn order(alg: &Algebra) -> Result<u128, SuiteError> {
    let p = alg.field().order().ok_or(SuiteError::InfiniteField)?;
    let count = tuple_count(p as usize, alg.dim());
    if count > ELEMENT_BUDGET as u128 {
        return Err(AlgebraError::Budget { required: count, limit: ELEMENT_BUDGET }.into());
    }
    Ok(count)
}

/// Every vector of `F_p^len`, in lexicographic order of residues.
fn all_vectors(field: Field, len: usize) -> Vec<Vec<Scalar>> {
    let elems = field.elements().expect("finite field");
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    out
}

fn first_nonzero_is_one(v: &[Scalar]) -> bool {
    v.iter().find(|s| !s.is_zero()).is_some_and(Scalar::is_one)
}

/// All two-sided ideals, as sums of principal ideals `RaR + Ra + aR + Ka`.
/// Requires `p^dim ≤ 2^16`. Sorted by dimension, then canonical basis.
pub fn enumerate_ideals(alg: &Algebra) -> Result<Vec<Subspace>, SuiteError> {
    order(alg)?;
    let field = alg.field();
    let d = alg.dim();
    let principal: HashSet<Subspace> = all_vectors(field, d)
        .into_par_iter()
        .filter(|v| first_nonzero_is_one(v))
        .map(|v| {
            let start = Subspace::span(field, d, &[v]).expect("length d");
            ideal_closure_of(alg, start, IdealSide::TwoSided)
        })
        .collect();
    let mut principal: Vec<Subspace> = principal.into_iter().collect();
    sort_subspaces(&mut principal);
    let mut ideals: HashSet<Subspace> = HashSet::from([Subspace::zero(field, d)]);
    for q in &principal {
        let sums: Vec<Subspace> = ideals.iter().map(|i| i.sum(q).expect("same ambient")).collect();
        ideals.extend(sums);
    }
    let mut ideals: Vec<Subspace> = ideals.into_iter().collect();
    sort_subspaces(&mut ideals);
    Ok(ideals)
}

fn sort_subspaces(v: &mut [Subspace]) {
    v.sort_by_cached_key(|s| {
        let key: Vec<u64> = s.basis().entries().iter().map(|e| e.residue().unwrap_or(0)).collect();
        (s.dim(), s.pivots().to_vec(), key)
    });
}

/// Every subspace of `F_p^dim` by RREF pattern: each pivot set with every
/// assignment of the free entries. Fails when the count exceeds `limit`.
/// Pivot columns and the free `(row, column)` positions of an RREF shape.
type Pattern = (Vec<usize>, Vec<(usize, usize)>);

pub fn enumerate_subspaces(field: Field, dim: usize, limit: u128) -> Result<Vec<Subspace>, SuiteError> {
    let p = field.order().ok_or(SuiteError::InfiniteField)? as usize;
    let mut patterns: Vec<Pattern> = Vec::new();
    let mut total: u128 = 0;
    for mask in 0u32..(1 << dim) {
        let pivots: Vec<usize> = (0..dim).filter(|c| mask >> c & 1 == 1).collect();
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..dim).filter(|c| mask >> c & 1 == 0).map(move |c| (r, c)))
            .collect();
        total = total.saturating_add(tuple_count(p, free.len()));
        if total > limit {
            return Err(AlgebraError::Budget { required: total, limit: limit.min(u64::MAX as u128) as u64 }.into());
        }
        patterns.push((pivots, free));
    }
    let mut out = Vec::with_capacity(total as usize);
    for (pivots, free) in patterns {
        for values in all_vectors(field, free.len()) {
            let mut m = Matrix::zeros(field, pivots.len(), dim);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(r, pc, field.one());
            }
            for (&(r, c), v) in free.iter().zip(values) {
                m.set(r, c, v);
            }
            out.push(Subspace::from_matrix_rows(&m));
        }
    }
    Ok(out)
}

/// `P` is prime when no two ideals strictly containing it multiply into it.
/// `ideals` must contain every ideal of the algebra.
pub fn is_prime_ideal(alg: &Algebra, p: &Subspace, ideals: &[Subspace]) -> bool {
    if p.dim() == alg.dim() {
        return false;
    }
    let above: Vec<&Subspace> =
        ideals.iter().filter(|i| i.dim() > p.dim() && p.is_subspace_of(i).unwrap_or(false)).collect();
    above.iter().all(|i| above.iter().all(|j| !subspace_product(alg, i, j).is_subspace_of(p).unwrap_or(false)))
}

/// `(a, b)` with `a, b ∉ P` and `ab ∈ P`.
pub type ZeroDivisorPair = (Vec<Scalar>, Vec<Scalar>);

/// A pair `a, b ∉ P` with `ab ∈ P`, if one exists. `a` runs over the
/// canonical coset representatives of `R/P`; for each, the set
/// `{b : ab ∈ P}` is a subspace computed exactly.
pub fn has_zero_divisor_mod(alg: &Algebra, p: &Subspace) -> Result<Option<ZeroDivisorPair>, SuiteError> {
    order(alg)?;
    let field = alg.field();
    let d = alg.dim();
    let free: Vec<usize> = (0..d).filter(|c| !p.pivots().contains(c)).collect();
    let reps: Vec<Vec<Scalar>> = all_vectors(field, free.len())
        .into_iter()
        .map(|vals| {
            let mut v = vec![field.zero(); d];
            for (&c, x) in free.iter().zip(vals) {
                v[c] = x;
            }
            v
        })
        .filter(|v| !is_zero(v))
        .collect();
    Ok(reps.into_par_iter().find_map_first(|a| {
        // columns: a·b_j reduced modulo P
        let cols: Vec<Vec<Scalar>> = (0..d).map(|j| p.reduce_unchecked(&alg.mul_basis_right(&a, j))).collect();
        let m = Matrix::from_rows(field, d, &cols).expect("square").transpose();
        let kernel = null_space(&m);
        if kernel.dim() == p.dim() {
            return None;
        }
        let b = kernel.basis_vectors().into_iter().find(|b| !p.contains_unchecked(b))?;
        Some((a, b))
    }))
}

fn describe(alg: &Algebra, s: &Subspace) -> String {
    if s.is_zero() {
        return "{0}".into();
    }
    let parts: Vec<String> = s.basis_vectors().iter().map(|v| alg.format_dense(v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

/// Ideals, prime ideals and the first prime that is not completely prime.
struct PrimeScan {
    ideals: Vec<Subspace>,
    primes: Vec<Subspace>,
    bad: Option<(Subspace, Vec<Scalar>, Vec<Scalar>)>,
}

fn scan(alg: &Algebra) -> Result<PrimeScan, SuiteError> {
    let ideals = enumerate_ideals(alg)?;
    let primes: Vec<Subspace> = ideals.iter().filter(|p| is_prime_ideal(alg, p, &ideals)).cloned().collect();
    let mut bad = None;
    for p in &primes {
        if let Some((a, b)) = has_zero_divisor_mod(alg, p)? {
            bad = Some((p.clone(), a, b));
            break;
        }
    }
    Ok(PrimeScan { ideals, primes, bad })
}

/// In a unital Lie nilpotent algebra over `F_p` with `p^dim ≤ 2^16`: every
/// prime ideal is completely prime, by exhaustive ideal enumeration.
pub fn verify_complete_primeness(alg: &Algebra, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    const ID: &str = "ideals.complete_primeness";
    let mode = Mode::Exhaustive;
    let elements = match order(alg) {
        Ok(n) => n,
        Err(e) => return Ok(Report::not_applicable(ID, alg.name(), mode, e.to_string())),
    };
    if !alg.has_unit() {
        return Ok(Report::not_applicable(ID, alg.name(), mode, "algebra has no unit"));
    }
    if alg.lie_index(cfg.n_max, &cfg.budget)?.is_none() {
        let mut r = Report::not_applicable(ID, alg.name(), mode, format!("not Lie nilpotent of index <= {}", cfg.n_max));
        let s = scan(alg)?;
        if let Some((p, a, b)) = &s.bad {
            r.note(format!(
                "informational: prime ideal {} is not completely prime: ({}) · ({}) ∈ P",
                describe(alg, p),
                alg.format_dense(a),
                alg.format_dense(b)
            ));
        }
        return Ok(r);
    }
    let s = scan(alg)?;
    let mut report = Report::new(ID, alg.name(), mode);
    report.note(format!("{elements} elements, {} ideals, {} prime", s.ideals.len(), s.primes.len()));

    let d = alg.dim();
    match enumerate_subspaces(alg.field(), d, SUBSPACE_BUDGET) {
        Ok(all) => {
            let total = all.len() as u64;
            let mut filtered: Vec<Subspace> =
                all.into_par_iter().filter(|s| is_ideal(alg, s, IdealSide::TwoSided)).collect();
            sort_subspaces(&mut filtered);
            let cx = (filtered != s.ideals).then(|| {
                Counterexample::new(
                    vec![format!("{} ideals by subspace filter", filtered.len())],
                    format!("{} ideals by principal sums", s.ideals.len()),
                )
            });
            report.push(Check::from_outcome("ideal_enumeration_agrees", total, cx).with_detail(format!("{total} subspaces")));
        }
        Err(_) => report.note("subspace cross-check skipped: too many subspaces"),
    }

    let cases = s.primes.iter().map(|p| tuple_count(alg.field().characteristic() as usize, d - p.dim()) as u64).sum();
    let cx = s.bad.map(|(p, a, b)| {
        Counterexample::new(
            vec![format!("P = {}", describe(alg, &p)), format!("a = {}", alg.format_dense(&a)), format!("b = {}", alg.format_dense(&b))],
            "a·b ∈ P with a, b ∉ P",
        )
    });
    let detail = s.primes.iter().map(|p| describe(alg, p)).collect::<Vec<_>>().join("; ");
    let check = if s.primes.is_empty() {
        Check::vacuous("primes_completely_prime").with_detail("no prime ideals")
    } else {
        Check::from_outcome("primes_completely_prime", cases, cx).with_detail(format!("primes: {detail}"))
    };
    report.push(check);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_algebra, Origin};
    use crate::constructions::{block_triangular_algebra, matrix_algebra, BlockSpec};
    use crate::report::Status;

    fn dual_numbers_f2() -> Algebra {
        let f = Field::prime(2).unwrap();
        let (o, z) = (f.one(), f.zero());
        let table = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
        ];
        make_algebra(f, table, vec!["1".into(), "x".into()], Some(vec![o, z]), Origin::StructureConstants).unwrap()
    }

    /// Prime by the element definition: a, b ∉ P ⇒ some a·r·b ∉ P.
    fn prime_by_elements(alg: &Algebra, p: &Subspace) -> bool {
        let elems = all_vectors(alg.field(), alg.dim());
        p.dim() < alg.dim()
            && elems.iter().filter(|a| !p.contains_unchecked(a)).all(|a| {
                elems.iter().filter(|b| !p.contains_unchecked(b)).all(|b| {
                    (0..alg.dim()).any(|k| !p.contains_unchecked(&alg.mul_dense(&alg.mul_basis_right(a, k), b)))
                })
            })
    }

    fn completely_prime_by_elements(alg: &Algebra, p: &Subspace) -> bool {
        let elems = all_vectors(alg.field(), alg.dim());
        elems.iter().all(|a| {
            elems.iter().all(|b| {
                !p.contains_unchecked(&alg.mul_dense(a, b)) || p.contains_unchecked(a) || p.contains_unchecked(b)
            })
        })
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        // F_2^3: 1 + 7 + 7 + 1, F_3^2: 1 + 4 + 1
        assert_eq!(enumerate_subspaces(Field::prime(2).unwrap(), 3, 1000).unwrap().len(), 16);
        assert_eq!(enumerate_subspaces(Field::prime(3).unwrap(), 2, 1000).unwrap().len(), 6);
        let all = enumerate_subspaces(Field::prime(2).unwrap(), 4, 1000).unwrap();
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 67);
        assert!(enumerate_subspaces(Field::prime(2).unwrap(), 4, 10).is_err());
    }

    #[test]
    fn dual_numbers_ideals() {
        let a = dual_numbers_f2();
        let ideals = enumerate_ideals(&a).unwrap();
        assert_eq!(ideals.len(), 3);
        let primes: Vec<_> = ideals.iter().filter(|p| is_prime_ideal(&a, p, &ideals)).collect();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].dim(), 1);
        let r = verify_complete_primeness(&a, &VerifyConfig::default()).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:#?}");
    }

    #[test]
    fn primes_agree_with_element_definition() {
        for alg in [
            dual_numbers_f2(),
            block_triangular_algebra(&BlockSpec::new(vec![1, 1, 1], true, Field::prime(2).unwrap()).unwrap()).unwrap(),
            matrix_algebra(2, Field::prime(2).unwrap()).unwrap(),
        ] {
            let ideals = enumerate_ideals(&alg).unwrap();
            for p in &ideals {
                let prime = is_prime_ideal(&alg, p, &ideals);
                assert_eq!(prime, prime_by_elements(&alg, p), "{}", alg.name());
                if prime {
                    let cp = has_zero_divisor_mod(&alg, p).unwrap().is_none();
                    assert_eq!(cp, completely_prime_by_elements(&alg, p));
                }
            }
        }
    }

    #[test]
    fn m2_f2_zero_ideal_not_completely_prime() {
        let a = matrix_algebra(2, Field::prime(2).unwrap()).unwrap();
        let r = verify_complete_primeness(&a, &VerifyConfig::default()).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert!(r.notes.iter().any(|n| n.contains("{0} is not completely prime")), "{:?}", r.notes);
    }

    #[test]
    fn block3_over_f2() {
        let a = block_triangular_algebra(&BlockSpec::new(vec![1, 1, 1], true, Field::prime(2).unwrap()).unwrap()).unwrap();
        let r = verify_complete_primeness(&a, &VerifyConfig::default()).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:#?}");
        assert_eq!(r.checks.len(), 2);
    }
}
