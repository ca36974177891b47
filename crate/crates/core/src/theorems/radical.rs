//! Radical properties of Lie nilpotent algebras: the radical is the set of
//! nilpotent elements, the quotient by it is commutative, and `L + rad` is
//! two-sided for every left ideal `L`.

use rand::Rng;

use super::{candidate, is_zero, random_member, rng_for, sparse_random, SuiteError, VerifyConfig};
use crate::algebra::Algebra;
use crate::field::Scalar;
use crate::linalg::Subspace;
use crate::report::{Check, Counterexample, Mode, Report};
use crate::structure::{ideal_closure_of, is_ideal, is_nilpotent_dense, radical, IdealSide};

pub fn verify_radical_properties(alg: &Algebra, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    const ID: &str = "radical.properties";
    let mode = Mode::Seeded { seed: cfg.seed, trials: cfg.radical_samples as u64 };
    let Some(n) = alg.lie_index(cfg.n_max, &cfg.budget)? else {
        return Ok(Report::not_applicable(
            ID,
            alg.name(),
            mode,
            format!("not Lie nilpotent of index <= {}", cfg.n_max),
        ));
    };
    let rad = match radical(alg) {
        Ok(r) => r,
        Err(e) => return Ok(Report::not_applicable(ID, alg.name(), mode, e.to_string())),
    };
    let mut rng = rng_for(cfg.seed, ID, &alg.name());
    let mut report = Report::new(ID, alg.name(), mode);
    report.note(format!(
        "Lie nilpotent of index {n}; dim rad = {}, nilpotency index {}",
        rad.subspace.dim(),
        rad.nilpotency_index
    ));
    let s = &rad.subspace;

    // radical elements are nilpotent
    let basis = s.basis_vectors();
    let mut cx = basis
        .iter()
        .find(|v| !is_nilpotent_dense(alg, v))
        .map(|v| Counterexample::new(vec![alg.format_dense(v)], "rad basis element is not nilpotent"));
    let mut cases = basis.len() as u64;
    if cx.is_none() && !s.is_zero() {
        for _ in 0..cfg.radical_samples {
            let v = random_member(s, &mut rng);
            cases += 1;
            if !is_nilpotent_dense(alg, &v) {
                cx = Some(Counterexample::new(vec![alg.format_dense(&v)], "rad element is not nilpotent"));
                break;
            }
        }
    }
    report.push(Check::from_outcome("radical_is_nil", cases, cx));

    // nilpotent candidates lie in the radical; candidates are drawn half from
    // generic elements and half shifted into a coset of rad so that nilpotent
    // samples are actually found
    let mut found = 0;
    let mut attempts = 0u64;
    let mut cx = None;
    while found < cfg.radical_samples && attempts < 50 * cfg.radical_samples as u64 {
        attempts += 1;
        let v = if s.is_zero() || rng.random_bool(0.5) {
            candidate(alg, &mut rng)
        } else {
            let r = random_member(s, &mut rng);
            let c = sparse_random(alg, &mut rng);
            if rng.random_bool(0.5) {
                r
            } else {
                r.iter().zip(&c).map(|(x, y)| x + y).collect()
            }
        };
        if is_zero(&v) || !is_nilpotent_dense(alg, &v) {
            continue;
        }
        found += 1;
        if !s.contains_unchecked(&v) {
            cx = Some(Counterexample::new(vec![alg.format_dense(&v)], "nilpotent element outside rad"));
            break;
        }
    }
    let check = Check::from_outcome("nilpotents_in_radical", found as u64, cx)
        .with_detail(format!("{found} nilpotent samples from {attempts} candidates"));
    report.push(if found == 0 { Check::vacuous("nilpotents_in_radical").with_detail("no nilpotent samples") } else { check });

    // R/rad is commutative
    let d = alg.dim();
    let cx = (0..d * d).find_map(|ij| {
        let (i, j) = (ij / d, ij % d);
        let c = alg.to_dense(&alg.basis_commutator(&[i, j]));
        (!s.contains_unchecked(&c)).then(|| {
            Counterexample::new(vec![alg.label(i).to_string(), alg.label(j).to_string()], alg.format_dense(&c))
        })
    });
    report.push(Check::from_outcome("commutators_in_radical", (d * d) as u64, cx));

    // L + rad is a two-sided ideal
    let mut cx = None;
    for t in 0..cfg.left_ideals {
        let gens: Vec<Vec<Scalar>> = (0..rng.random_range(1..=3)).map(|_| candidate(alg, &mut rng)).collect();
        let start = Subspace::span(alg.field(), d, &gens)?;
        let left = ideal_closure_of(alg, start, IdealSide::Left);
        let sum = left.sum(s)?;
        if !is_ideal(alg, &sum, IdealSide::TwoSided) {
            let inputs = gens.iter().map(|g| alg.format_dense(g)).collect();
            cx = Some(Counterexample::new(inputs, format!("L + rad not two-sided (ideal {t})")));
            break;
        }
    }
    report.push(Check::from_outcome("left_ideal_plus_radical_two_sided", cfg.left_ideals as u64, cx));
    Ok(report)
}
