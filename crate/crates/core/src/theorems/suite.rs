//! The built-in instance zoo and the full verification run over it.

use rayon::prelude::*;

use super::center::{verify_center_converse, verify_center_extension, verify_lie_center_structure};
use super::primes::verify_complete_primeness;
use super::products::{
    verify_commutator_ideals, verify_commutator_products, verify_grassmann_boundary, verify_l2_products,
    verify_zero_product_chains,
};
use super::radical::verify_radical_properties;
use super::{SuiteError, VerifyConfig};
use crate::algebra::{make_algebra, tuple_count, Algebra, Origin};
use crate::constructions::{
    block_triangular_algebra, compositions, grassmann_algebra, matrix_algebra, BlockSpec, ConstructionError,
    GrassmannSpec,
};
use crate::field::Field;
use crate::report::{Check, Counterexample, Mode, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZooRole {
    /// Expected to be Lie nilpotent; every applicable verifier must pass.
    Model,
    /// Not Lie nilpotent; verifiers must report not applicable.
    Control,
}

/// Extra statements tied to one specific instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Showcase {
    /// `[v1,v2][v3,v4] = 4 v1v2v3v4` in Grassmann algebras with `m ≥ 4`.
    GrassmannBoundary,
    /// The E23 counterexample and the `{I+E12, I+E34}` extension.
    BlockFour,
}

#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub algebra: Algebra,
    pub role: ZooRole,
    pub showcase: Option<Showcase>,
}

impl ZooEntry {
    pub fn model(algebra: Algebra) -> Self {
        ZooEntry { algebra, role: ZooRole::Model, showcase: None }
    }

    pub fn control(algebra: Algebra) -> Self {
        ZooEntry { algebra, role: ZooRole::Control, showcase: None }
    }

    /// A model when Lie nilpotent of index at most `n_max`, a control
    /// otherwise; Grassmann algebras on four or more generators also get the
    /// n = 2 boundary check.
    pub fn classify(algebra: Algebra, cfg: &VerifyConfig) -> Result<Self, SuiteError> {
        let nilpotent = algebra.lie_index(cfg.n_max, &cfg.budget)?.is_some();
        let boundary = algebra.origin() == Origin::Grassmann && algebra.index_of("v1v2v3v4").is_some();
        let entry = if nilpotent { ZooEntry::model(algebra) } else { ZooEntry::control(algebra) };
        Ok(if boundary { entry.with_showcase(Showcase::GrassmannBoundary) } else { entry })
    }

    pub fn with_showcase(mut self, s: Showcase) -> Self {
        self.showcase = Some(s);
        self
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub verify: VerifyConfig,
    pub zoo: Vec<ZooEntry>,
    /// Include the algebra-independent block checks.
    pub block_checks: bool,
}

impl SuiteConfig {
    pub fn new(verify: VerifyConfig) -> Result<Self, ConstructionError> {
        Ok(SuiteConfig { verify, zoo: default_zoo()?, block_checks: true })
    }

    pub fn empty(verify: VerifyConfig) -> Self {
        SuiteConfig { verify, zoo: Vec::new(), block_checks: false }
    }
}

const BLOCKS: &str = "block algebras over Q";

fn block(ks: &[usize], unital: bool, field: Field) -> Result<Algebra, ConstructionError> {
    block_triangular_algebra(&BlockSpec::new(ks.to_vec(), unital, field)?)
}

fn dual_numbers(field: Field) -> Algebra {
    let (o, z) = (field.one(), field.zero());
    let table = vec![
        vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
        vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
    ];
    make_algebra(field, table, vec!["1".into(), "x".into()], Some(vec![o, z]), Origin::StructureConstants)
        .expect("dual numbers are associative")
        .with_name(format!("{field}[x]/(x^2)"))
}

/// Block algebras over ℚ for `m ≤ 5`, Grassmann algebras `E^(2..5)` over ℚ,
/// tiny algebras over `F_2` and `F_3`, and the `M_2` controls.
pub fn default_zoo() -> Result<Vec<ZooEntry>, ConstructionError> {
    let q = Field::rational();
    let f2 = Field::prime(2).expect("prime");
    let f3 = Field::prime(3).expect("prime");
    let f5 = Field::prime(5).expect("prime");
    let mut zoo = vec![
        ZooEntry::model(block(&[1, 1, 1, 1], true, q)?).with_showcase(Showcase::BlockFour),
        ZooEntry::model(block(&[2, 2], true, q)?),
        ZooEntry::model(block(&[1, 2, 1], true, q)?),
        ZooEntry::model(block(&[1, 1, 1], true, q)?),
        ZooEntry::model(block(&[1, 1, 1, 1, 1], true, q)?),
        ZooEntry::model(block(&[1, 1, 1, 1], false, q)?),
    ];
    for m in 2..=5 {
        let e = ZooEntry::model(grassmann_algebra(&GrassmannSpec { m, field: q })?);
        zoo.push(if m >= 4 { e.with_showcase(Showcase::GrassmannBoundary) } else { e });
    }
    zoo.extend([
        ZooEntry::model(dual_numbers(f2)),
        ZooEntry::model(block(&[1, 1, 1], true, f2)?),
        ZooEntry::model(block(&[1, 1, 1], true, f3)?),
        ZooEntry::model(grassmann_algebra(&GrassmannSpec { m: 2, field: f3 })?),
        ZooEntry::control(matrix_algebra(2, f3)?),
        ZooEntry::control(matrix_algebra(2, f2)?),
        ZooEntry::control(matrix_algebra(2, f5)?),
    ]);
    Ok(zoo)
}

/// Fails L_n for every `n ≤ max_n`.
pub fn verify_not_lie_nilpotent(alg: &Algebra, max_n: usize, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    let mut report = Report::new("control.not_lie_nilpotent", alg.name(), Mode::Exhaustive);
    for n in 1..=max_n {
        let verdict = alg.satisfies_ln(n, &cfg.budget)?;
        let cases = tuple_count(alg.dim(), n + 1) as u64;
        let check = match verdict.witness {
            Some(w) => Check::pass(format!("fails_l{n}"), cases).with_detail(alg.format_witness(&w)),
            None => Check::fail(
                format!("fails_l{n}"),
                cases,
                Counterexample::new(vec![format!("n = {n}")], format!("algebra satisfies L_{n}")),
            ),
        };
        report.push(check);
    }
    Ok(report)
}

/// Dimension of every block algebra (at least two parts) with `m ≤ max_m` against
/// `(m² − Σk²)/2`, plus one when unital.
pub fn verify_block_dimensions(max_m: usize) -> Result<Report, SuiteError> {
    let mut report = Report::new("blocks.dimension_formula", BLOCKS, Mode::Exhaustive);
    let mut cases = 0;
    let mut cx = None;
    'outer: for m in 1..=max_m {
        for ks in compositions(m, None).into_iter().filter(|ks| ks.len() >= 2) {
            for unital in [false, true] {
                let alg = block(&ks, unital, Field::rational())?;
                let formula = (m * m - ks.iter().map(|k| k * k).sum::<usize>()) / 2 + usize::from(unital);
                cases += 1;
                if alg.dim() != formula {
                    cx = Some(Counterexample::new(vec![alg.name()], format!("dim {} != {formula}", alg.dim())));
                    break 'outer;
                }
            }
        }
    }
    report.push(Check::from_outcome("dimension_formula", cases, cx).with_detail(format!("m <= {max_m}")));
    Ok(report)
}

/// Unital block algebras with `n+1` parts (`m ≤ max_m`) have L_n; for all
/// parts 1 they fail L_{n-1} with the chain `E12, E23, …` and value `E1m`.
pub fn verify_ln_classification(max_m: usize, cfg: &VerifyConfig) -> Result<Report, SuiteError> {
    let mut report = Report::new("blocks.ln_classification", BLOCKS, Mode::Exhaustive);
    let mut cases = 0;
    let mut cx = None;
    for m in 1..=max_m {
        for ks in compositions(m, None).into_iter().filter(|ks| ks.len() >= 2) {
            let alg = block(&ks, true, Field::rational())?;
            let n = (ks.len() - 1).max(1);
            cases += 1;
            if let Some(w) = alg.satisfies_ln(n, &cfg.budget)?.witness {
                cx.get_or_insert_with(|| Counterexample::new(vec![alg.name(), format!("L_{n}")], alg.format_witness(&w)));
            }
        }
    }
    report.push(Check::from_outcome("block_has_ln", cases, cx));

    let mut cx = None;
    let mut cases = 0;
    for m in 3..=max_m {
        let alg = block(&vec![1; m], true, Field::rational())?;
        let chain: Vec<String> = (1..m).map(|i| format!("E{}{}", i, i + 1)).collect();
        let expected = format!("({}) ↦ E1{m}", chain.join(","));
        cases += 1;
        let verdict = alg.satisfies_ln(m - 2, &cfg.budget)?;
        let got = verdict.witness.map(|w| alg.format_witness(&w));
        if got.as_deref() != Some(expected.as_str()) {
            cx = Some(Counterexample::new(vec![alg.name(), format!("L_{}", m - 2)], format!("{got:?}, expected {expected}")));
            break;
        }
    }
    report.push(Check::from_outcome("all_ones_fails_one_lower", cases, cx));
    Ok(report)
}

fn guarded(id: &str, alg: &Algebra, r: Result<Report, SuiteError>) -> Report {
    guarded_named(id, &alg.name(), r)
}

fn guarded_named(id: &str, name: &str, r: Result<Report, SuiteError>) -> Report {
    r.unwrap_or_else(|e| Report::not_applicable(id, name, Mode::Exhaustive, format!("error: {e}")))
}

fn run_entry(entry: &ZooEntry, cfg: &VerifyConfig) -> Vec<Report> {
    let alg = &entry.algebra;
    let mut out = Vec::new();
    let d = alg.dim();
    out.push(alg.jacobi_check(cfg.seed, (!cfg.budget.fits(tuple_count(d, 3)) || d > 16).then_some(100)));
    match entry.role {
        ZooRole::Control => {
            out.push(guarded("control.not_lie_nilpotent", alg, verify_not_lie_nilpotent(alg, 4, cfg)));
            out.push(guarded("radical.properties", alg, verify_radical_properties(alg, cfg)));
            if alg.field().order().is_some() {
                out.push(guarded("ideals.complete_primeness", alg, verify_complete_primeness(alg, cfg)));
            }
        }
        ZooRole::Model => {
            let n = match alg.lie_index(cfg.n_max, &cfg.budget) {
                Ok(Some(n)) => n,
                Ok(None) => {
                    out.push(Report::not_applicable("lie_index", alg.name(), Mode::Exhaustive, "expected a Lie nilpotent model"));
                    return out;
                }
                Err(e) => {
                    out.push(Report::not_applicable("lie_index", alg.name(), Mode::Exhaustive, e.to_string()));
                    return out;
                }
            };
            out.push(guarded("l2.products", alg, verify_l2_products(alg, cfg)));
            out.push(guarded("ln.commutator_products", alg, verify_commutator_products(alg, n.max(3), cfg)));
            out.push(guarded("ln.commutator_ideals", alg, verify_commutator_ideals(alg, n.max(2), cfg)));
            out.push(guarded("ln.zero_product_chains", alg, verify_zero_product_chains(alg, n.max(2), cfg)));
            out.push(guarded("radical.properties", alg, verify_radical_properties(alg, cfg)));
            if alg.field().order().is_some() {
                out.push(guarded("ideals.complete_primeness", alg, verify_complete_primeness(alg, cfg)));
            }
            out.push(guarded("center.structure", alg, verify_lie_center_structure(alg, cfg)));
        }
    }
    match entry.showcase {
        Some(Showcase::GrassmannBoundary) => {
            out.push(guarded("grassmann.n2_boundary", alg, verify_grassmann_boundary(alg, cfg)));
        }
        Some(Showcase::BlockFour) => {
            out.push(guarded("center.converse_fails", alg, verify_center_converse(alg, cfg)));
            let gens: Result<Vec<_>, _> = [[(1, "I"), (1, "E12")], [(1, "I"), (1, "E34")]]
                .iter()
                .map(|t| alg.element_from_labels(t))
                .collect();
            let r = gens.map_err(SuiteError::from).and_then(|g| verify_center_extension(alg, 2, &g, cfg));
            out.push(guarded("center.extension", alg, r));
        }
        None => {}
    }
    out
}

/// Every verifier over the zoo. Report order follows the zoo order and does
/// not depend on the number of worker threads.
pub fn run_full_suite(config: &SuiteConfig) -> Vec<Report> {
    let cfg = &config.verify;
    let mut reports = Vec::new();
    if config.block_checks {
        reports.push(guarded_named("blocks.dimension_formula", BLOCKS, verify_block_dimensions(6)));
        reports.push(guarded_named("blocks.ln_classification", BLOCKS, verify_ln_classification(5, cfg)));
    }
    let per_entry: Vec<Vec<Report>> = config.zoo.par_iter().map(|e| run_entry(e, cfg)).collect();
    reports.extend(per_entry.into_iter().flatten());
    reports
}
