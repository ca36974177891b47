//! The n-th Lie center: its structure, the failure of the naive converse, and
//! the extension by a commutative submonoid.

use rand::Rng;

use super::{is_zero, random_member, rng_for, unit_vec, SuiteError, VerifyConfig};
use crate::algebra::{tuple_count, Algebra, Element, LnVerdict};
use crate::field::Scalar;
use crate::linalg::Subspace;
use crate::report::{Check, Counterexample, Mode, Report};
use crate::structure::{is_multiplicatively_closed, lie_center, subalgebra, subring_closure, subspace_elements};

/// `S = ⟨Z_n(R) ∪ C⟩` as a subspace and as an algebra, with its L_n verdict.
#[derive(Debug, Clone)]
pub struct CenterExtension {
    pub center: Subspace,
    pub subspace: Subspace,
    pub algebra: Algebra,
    pub verdict: LnVerdict,
}

/// Builds `S = ⟨Z_n(R) ∪ C⟩` where `C` is the submonoid generated by `gens`
/// and the unit. Fails if two generators do not commute.
pub fn center_extension(alg: &Algebra, n: usize, gens: &[Element], cfg: &VerifyConfig) -> Result<CenterExtension, SuiteError> {
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            if !alg.commutator(x, y)?.is_zero() {
                return Err(SuiteError::NonCommutingGenerators { left: alg.format(x), right: alg.format(y) });
            }
        }
    }
    let center = lie_center(alg, n, &cfg.budget)?;
    let mut all = subspace_elements(alg, &center);
    all.extend(gens.iter().cloned());
    let subspace = subring_closure(alg, &all, true)?;
    let algebra = subalgebra(alg, &subspace)?;
    let verdict = algebra.satisfies_ln(n, &cfg.budget)?;
    Ok(CenterExtension { center, subspace, algebra, verdict })
}

/// `⟨Z_n(R) ∪ C⟩` has L_n for every commutative submonoid `C`.
pub fn verify_center_extension(
    alg: &Algebra,
    n: usize,
    gens: &[Element],
    cfg: &VerifyConfig,
) -> Result<Report, SuiteError> {
    const ID: &str = "center.extension";
    let mode = Mode::Exhaustive;
    if !alg.has_unit() {
        return Ok(Report::not_applicable(ID, alg.name(), mode, "algebra has no unit"));
    }
    let ext = center_extension(alg, n, gens, cfg)?;
    let mut report = Report::new(ID, alg.name(), mode);
    let gens_text: Vec<String> = gens.iter().map(|g| alg.format(g)).collect();
    report.note(format!(
        "n = {n}, C generated by {{{}}}, dim Z_n = {}, dim S = {}",
        gens_text.join(", "),
        ext.center.dim(),
        ext.subspace.dim()
    ));
    let cx = ext.verdict.witness.as_ref().map(|w| {
        Counterexample::new(vec![format!("L_{n} on S")], ext.algebra.format_witness(w))
    });
    report.push(Check::from_outcome("extension_satisfies_ln", tuple_count(ext.subspace.dim(), n + 1) as u64, cx));
    let cx = (!ext.center.is_subspace_of(&ext.subspace)?).then(|| Counterexample::new(vec!["Z_n".into()], "not inside S"));
    report.push(Check::from_outcome("center_inside_extension", ext.center.dim() as u64, cx));
    Ok(report)
}

/// `[x_1, …, x_k, r, x_{k+1}, …, x_n]*` with `r` at position `k`.
fn slot_commutator(alg: &Algebra, xs: &[usize], k: usize, r: &[Scalar]) -> Vec<Scalar> {
    let mut factors: Vec<Vec<Scalar>> = xs.iter().map(|&i| unit_vec(alg, i)).collect();
    factors.insert(k, r.to_vec());
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = alg.comm_dense(&acc, f);
    }
    acc
}

/// For `n = 1..=center_n_max`: `Z_{n-1} ⊆ Z_n`, `Z_n` is a unital subring and
/// a Lie ideal, `Z_n` elements vanish in every slot of an (n+1)-fold
/// commutator, and `Z_n` has L_n.
pub fn verify_lie_center_structure(alg: &Algebra, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    const ID: &str = "center.structure";
    let samples = cfg.radical_samples as u64;
    let mode = Mode::Mixed { seed: cfg.seed, trials: samples };
    let d = alg.dim();
    let mut rng = rng_for(cfg.seed, ID, &alg.name());
    let mut report = Report::new(ID, alg.name(), mode);
    let mut previous: Option<Subspace> = None;
    let mut dims = Vec::new();
    for n in 1..=cfg.center_n_max {
        if !cfg.budget.fits(tuple_count(d, n + 1)) {
            report.note(format!("stopped before n = {n}: tuple budget"));
            break;
        }
        let z = lie_center(alg, n, &cfg.budget)?;
        dims.push(z.dim());
        let basis = z.basis_vectors();

        if let Some(prev) = &previous {
            let cx = (!prev.is_subspace_of(&z)?)
                .then(|| Counterexample::new(vec![format!("Z_{}", n - 1), format!("Z_{n}")], "chain broken"));
            report.push(Check::from_outcome(format!("chain.z{}_in_z{n}", n - 1), prev.dim() as u64, cx));
        }

        let closed = is_multiplicatively_closed(alg, &z);
        let unit_ok = alg.unit_vector().is_none_or(|u| z.contains_unchecked(u));
        let cx = (!closed || !unit_ok).then(|| {
            Counterexample::new(vec![format!("Z_{n}")], if closed { "unit missing" } else { "not closed under products" })
        });
        report.push(Check::from_outcome(format!("subring.z{n}"), (basis.len() * basis.len()) as u64, cx));

        let cx = basis.iter().find_map(|r| {
            (0..d).find_map(|k| {
                let c = alg.comm_basis_right(r, k);
                (!z.contains_unchecked(&c)).then(|| {
                    Counterexample::new(vec![alg.format_dense(r), alg.label(k).to_string()], alg.format_dense(&c))
                })
            })
        });
        report.push(Check::from_outcome(format!("lie_ideal.z{n}"), (basis.len() * d) as u64, cx));

        let mut cx = None;
        if !z.is_zero() {
            for _ in 0..samples {
                let r = if rng.random_bool(0.5) { basis[rng.random_range(0..basis.len())].clone() } else { random_member(&z, &mut rng) };
                let xs: Vec<usize> = (0..n).map(|_| rng.random_range(0..d)).collect();
                let k = rng.random_range(0..=n);
                let v = slot_commutator(alg, &xs, k, &r);
                if !is_zero(&v) {
                    let mut inputs: Vec<String> = xs.iter().map(|&i| alg.label(i).to_string()).collect();
                    inputs.insert(k, format!("r = {}", alg.format_dense(&r)));
                    cx = Some(Counterexample::new(inputs, alg.format_dense(&v)));
                    break;
                }
            }
        }
        report.push(Check::from_outcome(format!("any_slot.z{n}"), if z.is_zero() { 0 } else { samples }, cx));

        if !z.is_zero() && cfg.budget.fits(tuple_count(z.dim(), n + 1)) {
            let sub = subalgebra(alg, &z)?;
            let verdict = sub.satisfies_ln(n, &cfg.budget)?;
            let cx = verdict.witness.map(|w| Counterexample::new(vec![format!("L_{n} on Z_{n}")], sub.format_witness(&w)));
            report.push(Check::from_outcome(format!("satisfies_ln.z{n}"), tuple_count(z.dim(), n + 1) as u64, cx));
        }
        previous = Some(z);
    }
    report.note(format!("dim Z_1.. = {dims:?}"));
    Ok(report)
}

/// `[[x1,x2],r] = 0` for all `x1, x2` does not put `r` into `Z_2`:
/// `r = E23`, `y1 = E34`, `y2 = E12` give `[[r,y1],y2] = -E14`.
pub fn verify_center_converse(alg: &Algebra, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    const ID: &str = "center.converse_fails";
    let mode = Mode::Exhaustive;
    let idx: Option<Vec<usize>> = ["E23", "E34", "E12", "E14"].iter().map(|l| alg.index_of(l)).collect();
    let Some(idx) = idx else {
        return Ok(Report::not_applicable(ID, alg.name(), mode, "needs matrix units E12, E23, E34, E14"));
    };
    let d = alg.dim();
    let r = unit_vec(alg, idx[0]);
    let mut report = Report::new(ID, alg.name(), mode);

    let cx = (0..d * d).find_map(|t| {
        let (i, j) = (t / d, t % d);
        let v = alg.comm_dense(&alg.to_dense(&alg.basis_commutator(&[i, j])), &r);
        (!is_zero(&v)).then(|| {
            Counterexample::new(vec![alg.label(i).to_string(), alg.label(j).to_string(), "E23".into()], alg.format_dense(&v))
        })
    });
    report.push(Check::from_outcome("commutators_commute_with_r", (d * d) as u64, cx));

    let value = alg.basis_commutator(&[idx[0], idx[1], idx[2]]);
    let expected = alg.neg(&alg.basis(idx[3]))?;
    let cx = (value != expected)
        .then(|| Counterexample::new(vec!["[[E23,E34],E12]".into()], format!("{} (expected -E14)", alg.format(&value))));
    report.push(Check::from_outcome("r_y1_y2_is_minus_e14", 1, cx).with_detail(alg.format(&value)));

    let z2 = lie_center(alg, 2, &cfg.budget)?;
    let cx = z2.contains_unchecked(&r).then(|| Counterexample::new(vec!["E23".into()], "E23 lies in Z_2"));
    report.push(Check::from_outcome("r_not_in_z2", 1, cx));
    Ok(report)
}
