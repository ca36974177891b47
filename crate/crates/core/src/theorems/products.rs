//! Product identities in rings with L_2 and L_n: commutator products, the
//! ideals generated by commutators, and zero-product chains.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;

use super::{
    is_zero, rng_for, sparse_random, sweep_chain, unit_vec, zero_product_pairs, ChainOutcome, Factor, SuiteError,
    VerifyConfig,
};
use crate::algebra::{tuple_count, Algebra, Budget};
use crate::field::Scalar;
use crate::linalg::{null_space, Subspace};
use crate::report::{Check, Counterexample, Mode, Report};
use crate::structure::{ideal_closure_of, radical, subspace_power_nilpotency, IdealSide};

fn labels_of(alg: &Algebra, idx: &[usize]) -> String {
    idx.iter().map(|&i| alg.label(i)).collect::<Vec<_>>().join(",")
}

fn not_l(alg: &Algebra, statement: &str, mode: Mode, n: usize, budget: &Budget) -> Result<Option<Report>, SuiteError> {
    let verdict = alg.satisfies_ln(n, budget)?;
    Ok(verdict.witness.map(|w| {
        Report::not_applicable(
            statement,
            alg.name(),
            mode,
            format!("algebra does not satisfy L_{n}: witness {}", alg.format_witness(&w)),
        )
    }))
}

fn chain_check(alg: &Algebra, name: &str, pairs: usize, outcome: ChainOutcome, inputs: Vec<String>) -> Check {
    let cx = outcome.nonzero.map(|(idx, v)| {
        let mut inputs = inputs;
        inputs.push(format!("slots ({})", labels_of(alg, &idx)));
        Counterexample::new(inputs, alg.format_dense(&v))
    });
    Check::from_outcome(name, outcome.cases, cx).with_detail(format!(
        "{pairs} pairs, {} slot sweep",
        if outcome.exhaustive { "exhaustive" } else { "seeded" }
    ))
}

/// Identities of rings with L_2:
/// `[a,b][a,c] = 0`; `ab = 0 ⇒ bxbya = 0`; and
/// `a0 a1 ⋯ ak = 0 ⇒ a1x1a1y1 ⋯ akxkakyk a0 = 0` for `k ≤ chain_depth`.
///
/// `[a,b][a,c]` is quadratic in `a`, so the exhaustive check covers its
/// polarization `[a,b][a',c] + [a',b][a,c]` over all basis `a ≤ a'`, `b`, `c`
/// together with the diagonal `a = a'`.
pub fn verify_l2_products(alg: &Algebra, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    const ID: &str = "l2.products";
    let mode = Mode::Mixed { seed: cfg.seed, trials: cfg.pair_samples as u64 };
    if let Some(na) = not_l(alg, ID, mode, 2, &cfg.budget)? {
        return Ok(na);
    }
    let d = alg.dim();
    let mut report = Report::new(ID, alg.name(), mode);
    let comm: Vec<Vec<Scalar>> =
        (0..d * d).map(|ij| alg.to_dense(&alg.basis_commutator(&[ij / d, ij % d]))).collect();
    let c = |i: usize, j: usize| &comm[i * d + j];
    let cx = (0..d).into_par_iter().find_map_first(|a| {
        for a2 in a..d {
            for b in 0..d {
                for cc in 0..d {
                    let mut v = alg.mul_dense(c(a, b), c(a2, cc));
                    if a2 != a {
                        let w = alg.mul_dense(c(a2, b), c(a, cc));
                        v = v.iter().zip(&w).map(|(x, y)| x + y).collect();
                    }
                    if !is_zero(&v) {
                        let inputs = vec![
                            format!("a={}", alg.label(a)),
                            format!("a'={}", alg.label(a2)),
                            format!("b={}", alg.label(b)),
                            format!("c={}", alg.label(cc)),
                        ];
                        return Some(Counterexample::new(inputs, alg.format_dense(&v)));
                    }
                }
            }
        }
        None
    });
    report.push(Check::from_outcome("repeated_commutator_product", (d * (d + 1) / 2 * d * d) as u64, cx));

    let mut rng = rng_for(cfg.seed, ID, &alg.name());
    let pairs = zero_product_pairs(alg, &mut rng, cfg.pair_samples);
    if pairs.is_empty() {
        report.push(Check::vacuous("zero_product_sandwich").with_detail("no zero-product pairs found, 0 pairs"));
    } else {
        let mut total = 0;
        let mut found = None;
        for (a, b) in &pairs {
            let factors = [Factor::Fixed(b), Factor::Slot, Factor::Fixed(b), Factor::Slot, Factor::Fixed(a)];
            let out = sweep_chain(alg, &factors, cfg.slot_budget, cfg.slot_samples, &mut rng);
            total += out.cases;
            if out.nonzero.is_some() {
                found = Some(chain_check(
                    alg,
                    "zero_product_sandwich",
                    pairs.len(),
                    out,
                    vec![format!("a={}", alg.format_dense(a)), format!("b={}", alg.format_dense(b))],
                ));
                break;
            }
        }
        report.push(found.unwrap_or_else(|| {
            Check::pass("zero_product_sandwich", total).with_detail(format!("{} pairs, exhaustive over x, y", pairs.len()))
        }));
    }

    for k in 1..=cfg.chain_depth {
        let name = format!("zero_product_chain.k{k}");
        let mut total = 0;
        let mut used = 0;
        let mut failure = None;
        let mut exhaustive = true;
        for _ in 0..cfg.pair_samples {
            let factors_a: Vec<Vec<Scalar>> = (0..k).map(|_| sparse_random(alg, &mut rng)).collect();
            let mut prod = factors_a[0].clone();
            for f in &factors_a[1..] {
                prod = alg.mul_dense(&prod, f);
            }
            // a0 with a0 · (a1 ⋯ ak) = 0
            let right = right_mult_matrix(alg, &prod);
            let kernel = null_space(&right);
            if kernel.is_zero() {
                continue;
            }
            let a0 = super::random_member(&kernel, &mut rng);
            used += 1;
            let mut factors = Vec::with_capacity(4 * k + 1);
            for ai in &factors_a {
                factors.extend([Factor::Fixed(ai), Factor::Slot, Factor::Fixed(ai), Factor::Slot]);
            }
            factors.push(Factor::Fixed(&a0));
            let out = sweep_chain(alg, &factors, cfg.slot_budget, cfg.slot_samples, &mut rng);
            total += out.cases;
            exhaustive &= out.exhaustive;
            if out.nonzero.is_some() {
                let mut inputs: Vec<String> = vec![format!("a0={}", alg.format_dense(&a0))];
                inputs.extend(factors_a.iter().enumerate().map(|(i, a)| format!("a{}={}", i + 1, alg.format_dense(a))));
                failure = Some(chain_check(alg, &name, used, out, inputs));
                break;
            }
        }
        report.push(match failure {
            Some(f) => f,
            None if used == 0 => Check::vacuous(name).with_detail("no zero-product chains found, 0 pairs"),
            None => Check::pass(name, total).with_detail(format!(
                "{used} chains, {} slot sweep",
                if exhaustive { "exhaustive" } else { "seeded" }
            )),
        });
    }
    Ok(report)
}

fn right_mult_matrix(alg: &Algebra, a: &[Scalar]) -> crate::linalg::Matrix {
    let cols: Vec<Vec<Scalar>> = (0..alg.dim()).map(|j| alg.mul_basis_left(j, a)).collect();
    crate::linalg::Matrix::from_rows(alg.field(), alg.dim(), &cols).expect("square").transpose()
}

/// Result of checking `[x1..xn]* · [y1..yn]* = 0` over basis tuples.
#[derive(Debug, Clone)]
pub struct ProductCheck {
    pub cases: u64,
    pub exhaustive: bool,
    pub counterexample: Option<Counterexample>,
    /// Span of the n-fold basis commutators.
    pub span: Subspace,
}

/// Distinct nonzero n-fold basis commutators, each with its first tuple.
fn basis_commutator_values(alg: &Algebra, n: usize) -> Vec<(Vec<usize>, Vec<Scalar>)> {
    fn walk(
        alg: &Algebra,
        current: Vec<Scalar>,
        path: &mut Vec<usize>,
        n: usize,
        seen: &mut HashMap<Vec<Scalar>, usize>,
        out: &mut Vec<(Vec<usize>, Vec<Scalar>)>,
    ) {
        if path.len() == n {
            if !seen.contains_key(&current) {
                seen.insert(current.clone(), out.len());
                out.push((path.clone(), current));
            }
            return;
        }
        for k in 0..alg.dim() {
            let next = if path.is_empty() { unit_vec(alg, k) } else { alg.comm_basis_right(&current, k) };
            if is_zero(&next) {
                continue;
            }
            path.push(k);
            walk(alg, next, path, n, seen, out);
            path.pop();
        }
    }
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    walk(alg, Vec::new(), &mut Vec::new(), n, &mut seen, &mut out);
    out
}

/// `[x1, …, xn]* · [y1, …, yn]* = 0` for all basis tuples. Runs for any
/// `n ≥ 1` regardless of whether the algebra satisfies L_n, so it can also
/// exhibit failures. Falls back to `samples` seeded tuple pairs when `d^n`
/// exceeds the budget.
pub fn commutator_product_check(alg: &Algebra, n: usize, budget: &Budget, seed: u64, samples: u64) -> ProductCheck {
    let d = alg.dim();
    let tuples = tuple_count(d, n);
    if budget.fits(tuples) {
        let values = basis_commutator_values(alg, n);
        let span = Subspace::span(alg.field(), d, &values.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>())
            .expect("vectors of length d");
        let cases = tuples.saturating_mul(tuples).min(u64::MAX as u128) as u64;
        let counterexample = (0..values.len()).into_par_iter().find_map_first(|i| {
            values.iter().find_map(|(ty, cy)| {
                let (tx, cx) = &values[i];
                let p = alg.mul_dense(cx, cy);
                (!is_zero(&p)).then(|| {
                    Counterexample::new(
                        vec![format!("[{}]*", labels_of(alg, tx)), format!("[{}]*", labels_of(alg, ty))],
                        alg.format_dense(&p),
                    )
                })
            })
        });
        return ProductCheck { cases, exhaustive: true, counterexample, span };
    }
    let mut rng = rng_for(seed, "commutator_products", &alg.name());
    let mut span = Subspace::zero(alg.field(), d);
    let mut counterexample = None;
    for _ in 0..samples {
        let tx: Vec<usize> = (0..n).map(|_| rng.random_range(0..d)).collect();
        let ty: Vec<usize> = (0..n).map(|_| rng.random_range(0..d)).collect();
        let cx = alg.to_dense(&alg.basis_commutator(&tx));
        let cy = alg.to_dense(&alg.basis_commutator(&ty));
        span = span.extend(&[cx.clone(), cy.clone()]).expect("length d");
        let p = alg.mul_dense(&cx, &cy);
        if !is_zero(&p) {
            counterexample = Some(Counterexample::new(
                vec![format!("[{}]*", labels_of(alg, &tx)), format!("[{}]*", labels_of(alg, &ty))],
                alg.format_dense(&p),
            ));
            break;
        }
    }
    ProductCheck { cases: samples, exhaustive: false, counterexample, span }
}

/// For `n ≥ 3` and L_n: products of two n-fold commutators vanish, the
/// commutators are central, and the ideal `N` they generate has `N² = 0`.
pub fn verify_commutator_products(alg: &Algebra, n: usize, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    Ok(commutator_products_inner(alg, n, cfg)?.0)
}

pub(crate) fn commutator_products_inner(
    alg: &Algebra,
    n: usize,
    cfg: &VerifyConfig,
) -> Result<(Report, Option<Subspace>), SuiteError> {
    const ID: &str = "ln.commutator_products";
    let exhaustive = cfg.budget.fits(tuple_count(alg.dim(), n));
    let mode = if exhaustive { Mode::Exhaustive } else { Mode::Seeded { seed: cfg.seed, trials: cfg.slot_samples } };
    if n < 3 {
        return Ok((Report::not_applicable(ID, alg.name(), mode, format!("needs n >= 3, got n = {n}")), None));
    }
    if let Some(na) = not_l(alg, ID, mode, n, &cfg.budget)? {
        return Ok((na, None));
    }
    let mut report = Report::new(ID, alg.name(), mode);
    let check = commutator_product_check(alg, n, &cfg.budget, cfg.seed, cfg.slot_samples);
    report.push(Check::from_outcome("products_vanish", check.cases, check.counterexample.clone()));

    let span_basis = check.span.basis_vectors();
    let central_cx = span_basis.iter().find_map(|c| {
        (0..alg.dim()).find_map(|k| {
            let v = alg.comm_basis_right(c, k);
            (!is_zero(&v)).then(|| {
                Counterexample::new(vec![alg.format_dense(c), alg.label(k).to_string()], alg.format_dense(&v))
            })
        })
    });
    report.push(Check::from_outcome("commutators_central", (span_basis.len() * alg.dim()) as u64, central_cx));

    let ideal = ideal_closure_of(alg, check.span.clone(), IdealSide::TwoSided);
    let index = subspace_power_nilpotency(alg, &ideal, 3);
    let cx = match index {
        Some(k) if k <= 2 => None,
        _ => Some(Counterexample::new(vec![format!("N of dim {}", ideal.dim())], "N^2 != 0")),
    };
    report.push(
        Check::from_outcome("ideal_square_zero", (ideal.dim() * ideal.dim()) as u64, cx)
            .with_detail(format!("dim N = {}, nilpotency index {:?}", ideal.dim(), index)),
    );
    Ok((report, Some(ideal)))
}

/// `I(2)` and `I(3)` of an algebra, with the ideal `N` for `n ≥ 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorIdeals {
    pub i2: Subspace,
    pub i3: Subspace,
    pub i2_index: Option<usize>,
    pub i3_index: Option<usize>,
}

pub fn commutator_ideals(alg: &Algebra) -> CommutatorIdeals {
    let d = alg.dim();
    let field = alg.field();
    let pairs: Vec<Vec<Scalar>> = (0..d * d).map(|ij| alg.to_dense(&alg.basis_commutator(&[ij / d, ij % d]))).collect();
    let i2 = ideal_closure_of(alg, Subspace::span(field, d, &pairs).expect("length d"), IdealSide::TwoSided);
    let triples: Vec<Vec<Scalar>> = (0..d * d * d)
        .map(|t| alg.to_dense(&alg.basis_commutator(&[t / (d * d), (t / d) % d, t % d])))
        .collect();
    let i3 = ideal_closure_of(alg, Subspace::span(field, d, &triples).expect("length d"), IdealSide::TwoSided);
    let i2_index = subspace_power_nilpotency(alg, &i2, d + 2);
    let i3_index = subspace_power_nilpotency(alg, &i3, d + 2);
    CommutatorIdeals { i2, i3, i2_index, i3_index }
}

/// For L_n with `n ≥ 2`: `I(2) = R[R,R]R` is nil (inside the radical and
/// nilpotent) and `I(3) = R[[R,R],R]R` has nilpotency index at most
/// `2^{n-2}`. Also checks `N ⊆ I(3) ⊆ I(2) ⊆ rad`.
pub fn verify_commutator_ideals(alg: &Algebra, n: usize, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    const ID: &str = "ln.commutator_ideals";
    let mode = Mode::Exhaustive;
    if n < 2 {
        return Ok(Report::not_applicable(ID, alg.name(), mode, format!("needs n >= 2, got n = {n}")));
    }
    if let Some(na) = not_l(alg, ID, mode, n, &cfg.budget)? {
        return Ok(na);
    }
    let rad = radical(alg)?;
    let ideals = commutator_ideals(alg);
    let mut report = Report::new(ID, alg.name(), mode);
    let d = alg.dim() as u64;

    let cx = (!ideals.i2.is_subspace_of(&rad.subspace)?)
        .then(|| Counterexample::new(vec![format!("I(2) of dim {}", ideals.i2.dim())], "I(2) not inside rad"));
    report.push(Check::from_outcome("i2_inside_radical", ideals.i2.dim() as u64, cx));

    let cx = ideals.i2_index.is_none().then(|| Counterexample::new(vec!["I(2)".into()], "not nilpotent"));
    report.push(
        Check::from_outcome("i2_nilpotent", d, cx).with_detail(format!("dim {}, index {:?}", ideals.i2.dim(), ideals.i2_index)),
    );

    let bound = 1usize << (n - 2);
    let cx = match ideals.i3_index {
        Some(k) if k <= bound => None,
        other => Some(Counterexample::new(vec!["I(3)".into()], format!("index {other:?} exceeds {bound}"))),
    };
    report.push(
        Check::from_outcome("i3_index_bound", d, cx)
            .with_detail(format!("dim {}, index {:?}, bound {bound}", ideals.i3.dim(), ideals.i3_index)),
    );

    let mut chain_ok = ideals.i3.is_subspace_of(&ideals.i2)? && ideals.i2.is_subspace_of(&rad.subspace)?;
    if n >= 3 && cfg.budget.fits(tuple_count(alg.dim(), n)) {
        let n_span = commutator_product_check(alg, n, &cfg.budget, cfg.seed, cfg.slot_samples).span;
        let n_ideal = ideal_closure_of(alg, n_span, IdealSide::TwoSided);
        chain_ok &= n_ideal.is_subspace_of(&ideals.i3)?;
    }
    let cx = (!chain_ok).then(|| Counterexample::new(vec!["N, I(3), I(2), rad".into()], "inclusion chain broken"));
    report.push(Check::from_outcome("inclusion_chain", 3, cx));
    Ok(report)
}

/// For L_n with `n ≥ 2`, `ab = 0` and `q = 2^{n-2}`:
/// `b x1 b y1 a z1 b x2 b y2 a ⋯ z_{q-1} b xq b yq a = 0`.
pub fn verify_zero_product_chains(alg: &Algebra, n: usize, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    const ID: &str = "ln.zero_product_chains";
    let mode = Mode::Mixed { seed: cfg.seed, trials: cfg.pair_samples as u64 };
    if n < 2 {
        return Ok(Report::not_applicable(ID, alg.name(), mode, format!("needs n >= 2, got n = {n}")));
    }
    if let Some(na) = not_l(alg, ID, mode, n, &cfg.budget)? {
        return Ok(na);
    }
    let q = 1usize << (n - 2);
    let mut rng = rng_for(cfg.seed, ID, &alg.name());
    let pairs = zero_product_pairs(alg, &mut rng, cfg.pair_samples);
    let mut report = Report::new(ID, alg.name(), mode);
    report.note(format!("q = {q}, {} slots per chain", 3 * q - 1));
    if pairs.is_empty() {
        report.push(Check::vacuous("chains_vanish").with_detail("no zero-product pairs found, 0 pairs"));
        return Ok(report);
    }
    // per-pair RNG streams keep the sweep deterministic under parallelism
    let seeds: Vec<u64> = pairs.iter().map(|_| rng.random()).collect();
    let outcomes: Vec<ChainOutcome> = pairs
        .par_iter()
        .zip(seeds.par_iter())
        .map(|((a, b), s)| {
            let mut factors = Vec::with_capacity(6 * q);
            for i in 0..q {
                if i > 0 {
                    factors.push(Factor::Slot);
                }
                factors.extend([Factor::Fixed(b), Factor::Slot, Factor::Fixed(b), Factor::Slot, Factor::Fixed(a)]);
            }
            let mut local = rand::SeedableRng::seed_from_u64(*s);
            let local: &mut rand_chacha::ChaCha8Rng = &mut local;
            sweep_chain(alg, &factors, cfg.slot_budget, cfg.slot_samples, local)
        })
        .collect();
    let cases = outcomes.iter().map(|o| o.cases).sum();
    let exhaustive = outcomes.iter().all(|o| o.exhaustive);
    let failure = outcomes.into_iter().zip(&pairs).find(|(o, _)| o.nonzero.is_some());
    report.push(match failure {
        Some((out, (a, b))) => chain_check(
            alg,
            "chains_vanish",
            pairs.len(),
            out,
            vec![format!("a={}", alg.format_dense(a)), format!("b={}", alg.format_dense(b))],
        ),
        None => Check::pass("chains_vanish", cases).with_detail(format!(
            "{} pairs, {} slot sweep",
            pairs.len(),
            if exhaustive { "exhaustive" } else { "seeded" }
        )),
    });
    Ok(report)
}

/// The n = 2 boundary in `E^(m)`, `m ≥ 4`: `E^(m)` has L_2, yet
/// `[v1,v2]·[v3,v4] = 4·v1v2v3v4 ≠ 0`, so commutator products need not
/// vanish at n = 2.
pub fn verify_grassmann_boundary(alg: &Algebra, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    const ID: &str = "grassmann.n2_boundary";
    let mode = Mode::Exhaustive;
    let labels = ["v1", "v2", "v3", "v4", "v1v2v3v4"];
    let idx: Option<Vec<usize>> = labels.iter().map(|l| alg.index_of(l)).collect();
    let Some(idx) = idx else {
        return Ok(Report::not_applicable(ID, alg.name(), mode, "needs a Grassmann algebra on at least 4 generators"));
    };
    let mut report = Report::new(ID, alg.name(), mode);
    let c12 = alg.commutator(&alg.basis(idx[0]), &alg.basis(idx[1]))?;
    let c34 = alg.commutator(&alg.basis(idx[2]), &alg.basis(idx[3]))?;
    let product = alg.mul(&c12, &c34)?;
    let expected = alg.scale(&alg.basis(idx[4]), &alg.field().from_i64(4))?;
    let cx = (product != expected).then(|| {
        Counterexample::new(vec!["[v1,v2]".into(), "[v3,v4]".into()], format!("{} (expected 4*v1v2v3v4)", alg.format(&product)))
    });
    report.push(Check::from_outcome("product_is_4_v1v2v3v4", 1, cx).with_detail(alg.format(&product)));

    let verdict = alg.satisfies_ln(2, &cfg.budget)?;
    let cx = verdict.witness.map(|w| Counterexample::new(vec!["L_2".into()], alg.format_witness(&w)));
    report.push(Check::from_outcome("satisfies_l2", tuple_count(alg.dim(), 3) as u64, cx));

    let check = commutator_product_check(alg, 2, &cfg.budget, cfg.seed, cfg.slot_samples);
    let cx = check
        .counterexample
        .is_none()
        .then(|| Counterexample::new(vec!["n = 2".into()], "all commutator products vanished"));
    let detail = check
        .counterexample
        .as_ref()
        .map(|c| format!("{} · {} = {}", c.inputs[0], c.inputs[1], c.value))
        .unwrap_or_default();
    report.push(Check::from_outcome("n2_product_check_fails", check.cases, cx).with_detail(detail));
    Ok(report)
}
