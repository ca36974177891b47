//! Search for large unital subalgebras of `M_m(F_p)` with L_n, measured
//! against the block-algebra bound `1 + (m² − Σk_i²)/2` over compositions of
//! `m` into `n+1` parts.
//!
//! Only unital subalgebras are searched; every record says so.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{tuple_count, AlgebraError, Budget};
use crate::constructions::{
    algebra_from_matrix_span, block_matrices, compositions, BlockSpec, ConstructionError, MatrixAlgebra,
};
use crate::field::{Field, FieldError};
use crate::linalg::Matrix;

pub const UNITAL_NOTE: &str = "search restricted to unital subalgebras";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorerError {
    #[error("need 1 <= n and n + 1 <= m, got m = {m}, n = {n}")]
    Precondition { m: usize, n: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("record does not re-verify: {0}")]
    Verification(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureBound {
    pub m: usize,
    pub n: usize,
    pub best_ks: Vec<usize>,
    pub value: usize,
}

/// `max 1 + (m² − Σk_i²)/2` over compositions of `m` into `n+1` parts; ties
/// go to the lexicographically smallest composition.
pub fn conjecture_bound(m: usize, n: usize) -> Result<ConjectureBound, ExplorerError> {
    if n == 0 || n + 1 > m {
        return Err(ExplorerError::Precondition { m, n });
    }
    let mut best: Option<(Vec<usize>, usize)> = None;
    for ks in compositions(m, Some(n + 1)) {
        let value = 1 + (m * m - ks.iter().map(|k| k * k).sum::<usize>()) / 2;
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((ks, value));
        }
    }
    let (best_ks, value) = best.expect("n + 1 <= m admits a composition");
    Ok(ConjectureBound { m, n, best_ks, value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    /// The block algebra for the bound's composition.
    BlockFloor,
    RandomMatrices,
    BlockPerturbation,
    ConjugatedBlock,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub seed: u64,
    pub trials: u64,
    pub best_dim: usize,
    /// Trial index of the best candidate; `None` for the block floor.
    pub best_trial: Option<u64>,
    pub best_kind: CandidateKind,
    /// Basis of the best subalgebra, matrices as rows of residues.
    pub best_basis: Vec<Vec<Vec<u64>>>,
    pub bound: ConjectureBound,
    pub violation: bool,
    /// Candidates whose closure satisfied L_n.
    pub ln_candidates: u64,
    /// Candidates with closure dimension above the bound.
    pub over_bound: u64,
    /// Candidates skipped because the L_n sweep exceeded the budget.
    pub skipped: u64,
    pub note: String,
}

struct Candidate {
    trial: u64,
    kind: CandidateKind,
    closure: MatrixAlgebra,
    ln: bool,
    skipped: bool,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(b"explore");
    h.update(seed.to_le_bytes());
    h.update(trial.to_le_bytes());
    let d = h.finalize();
    ChaCha8Rng::seed_from_u64(u64::from_le_bytes(d[..8].try_into().expect("8 bytes")))
}

fn random_matrix<R: Rng + ?Sized>(field: Field, m: usize, rng: &mut R, mask: impl Fn(usize, usize) -> bool) -> Matrix {
    let mut a = Matrix::zeros(field, m, m);
    for i in 0..m {
        for j in 0..m {
            if mask(i, j) {
                a.set(i, j, field.random(rng));
            }
        }
    }
    a
}

fn random_composition<R: Rng + ?Sized>(m: usize, parts: usize, rng: &mut R) -> Vec<usize> {
    let all = compositions(m, Some(parts));
    all[rng.random_range(0..all.len())].clone()
}

fn block_of(ks: &[usize]) -> Vec<usize> {
    ks.iter().enumerate().flat_map(|(b, &k)| std::iter::repeat_n(b, k)).collect()
}

fn generators<R: Rng + ?Sized>(m: usize, n: usize, field: Field, rng: &mut R) -> Result<(CandidateKind, Vec<Matrix>), ExplorerError> {
    Ok(match rng.random_range(0..3) {
        0 => {
            let k = rng.random_range(1..=3);
            (CandidateKind::RandomMatrices, (0..k).map(|_| random_matrix(field, m, rng, |_, _| true)).collect())
        }
        1 => {
            // combinations of strict block units plus one block-upper matrix
            // with a random (possibly non-scalar) diagonal perturbation
            let ks = random_composition(m, n + 1, rng);
            let blocks = block_of(&ks);
            let mut gens: Vec<Matrix> = (0..rng.random_range(1..=3))
                .map(|_| random_matrix(field, m, rng, |i, j| blocks[i] < blocks[j]))
                .collect();
            if rng.random_bool(0.5) {
                let (i, j) = (rng.random_range(0..m), rng.random_range(0..m));
                let mut e = random_matrix(field, m, rng, |a, b| blocks[a] < blocks[b]);
                e.set(i, j, field.random_nonzero(rng));
                gens.push(e);
            }
            (CandidateKind::BlockPerturbation, gens)
        }
        _ => {
            let ks = random_composition(m, n + 1, rng);
            let mats = block_matrices(&BlockSpec::new(ks, true, field)?)?;
            let g = loop {
                let g = random_matrix(field, m, rng, |_, _| true);
                if let Some(inv) = g.inverse() {
                    break (g, inv);
                }
            };
            let conj = mats
                .iter()
                .map(|a| g.0.mul(a).and_then(|ga| ga.mul(&g.1)).expect("square"))
                .collect();
            (CandidateKind::ConjugatedBlock, conj)
        }
    })
}

fn evaluate(trial: u64, kind: CandidateKind, gens: &[Matrix], n: usize, budget: &Budget) -> Result<Candidate, ExplorerError> {
    let closure = algebra_from_matrix_span(gens, true)?;
    let d = closure.algebra.dim();
    if !budget.fits(tuple_count(d, n + 1)) {
        return Ok(Candidate { trial, kind, closure, ln: false, skipped: true });
    }
    let ln = closure.algebra.satisfies_ln(n, budget)?.holds;
    Ok(Candidate { trial, kind, closure, ln, skipped: false })
}

fn residues(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|s| s.residue().expect("prime field")).collect()).collect()
}

/// Seeded search over `trials` random candidates, each closed under
/// multiplication with the identity adjoined and tested for L_n. The block
/// algebra of the bound's composition is always evaluated as a floor. Ties
/// keep the earliest candidate (floor first, then smallest trial index).
pub fn random_ln_subalgebra_search(
    m: usize,
    n: usize,
    p: u64,
    trials: u64,
    seed: u64,
    budget: &Budget,
) -> Result<SearchRecord, ExplorerError> {
    let bound = conjecture_bound(m, n)?;
    let field = Field::prime(p)?;
    let floor_gens = block_matrices(&BlockSpec::new(bound.best_ks.clone(), true, field)?)?;
    let floor = evaluate(0, CandidateKind::BlockFloor, &floor_gens, n, budget)?;
    if !floor.ln {
        return Err(ExplorerError::Verification("block floor does not satisfy L_n".into()));
    }
    let results: Vec<Candidate> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let (kind, gens) = generators(m, n, field, &mut rng)?;
            evaluate(t, kind, &gens, n, budget)
        })
        .collect::<Result<_, _>>()?;
    let ln_candidates = results.iter().filter(|c| c.ln).count() as u64;
    let over_bound = results.iter().filter(|c| c.closure.algebra.dim() > bound.value).count() as u64;
    let skipped = results.iter().filter(|c| c.skipped).count() as u64;
    let mut best = &floor;
    for c in &results {
        if c.ln && c.closure.algebra.dim() > best.closure.algebra.dim() {
            best = c;
        }
    }
    let best_dim = best.closure.algebra.dim();
    Ok(SearchRecord {
        m,
        n,
        p,
        seed,
        trials,
        best_dim,
        best_trial: (best.kind != CandidateKind::BlockFloor).then_some(best.trial),
        best_kind: best.kind,
        best_basis: best.closure.basis.iter().map(residues).collect(),
        violation: best_dim > bound.value,
        bound,
        ln_candidates,
        over_bound,
        skipped,
        note: UNITAL_NOTE.into(),
    })
}

/// Re-checks a stored record: the basis spans a unital, multiplicatively
/// closed subspace of the stated dimension with L_n, the bound is recomputed,
/// and the violation flag matches.
pub fn verify_record(record: &SearchRecord, budget: &Budget) -> Result<(), ExplorerError> {
    let bad = |s: String| Err(ExplorerError::Verification(s));
    let field = Field::prime(record.p)?;
    if conjecture_bound(record.m, record.n)? != record.bound {
        return bad("bound does not match its recomputation".into());
    }
    if record.violation != (record.best_dim > record.bound.value) {
        return bad("violation flag inconsistent with best_dim".into());
    }
    if record.best_basis.len() != record.best_dim {
        return bad(format!("{} basis matrices for best_dim {}", record.best_basis.len(), record.best_dim));
    }
    let mut mats = Vec::with_capacity(record.best_basis.len());
    for (idx, rows) in record.best_basis.iter().enumerate() {
        if rows.len() != record.m || rows.iter().any(|r| r.len() != record.m) {
            return bad(format!("basis matrix {idx} is not {0}x{0}", record.m));
        }
        let data = rows.iter().flatten().map(|&v| field.residue(v)).collect::<Result<Vec<_>, _>>()?;
        mats.push(Matrix::new(field, record.m, record.m, data).map_err(|e| ExplorerError::Verification(e.to_string()))?);
    }
    let plain = algebra_from_matrix_span(&mats, false)?;
    if plain.algebra.dim() != record.best_dim {
        return bad(format!("basis closes to dimension {}, not {}", plain.algebra.dim(), record.best_dim));
    }
    if !plain.algebra.has_unit() {
        return bad("identity matrix is not in the span".into());
    }
    if let Some(w) = plain.algebra.satisfies_ln(record.n, budget)?.witness {
        return bad(format!("L_{} fails: {}", record.n, plain.algebra.format_witness(&w)));
    }
    Ok(())
}
