//! Executable verifiers for identities of Lie nilpotent rings, each producing
//! a [`Report`](crate::report::Report).
//!
//! Preconditions (L_n, field, unit) are always checked by the verifier itself
//! and an unmet precondition yields a `not_applicable` report. Identities that
//! are linear in every slot are swept exhaustively over basis elements;
//! identities constrained by a zero product `ab = 0` are checked on pairs
//! drawn by annihilator sampling (`b ∈ ker L_a`), with the remaining linear
//! slots still swept exhaustively whenever they fit the tuple budget.

mod center;
mod primes;
mod products;
mod radical;
mod suite;

pub use center::{
    center_extension, verify_center_converse, verify_center_extension, verify_lie_center_structure, CenterExtension,
};
pub use primes::{
    enumerate_ideals, enumerate_subspaces, has_zero_divisor_mod, is_prime_ideal, verify_complete_primeness,
};
pub use products::{
    commutator_ideals, commutator_product_check, verify_commutator_ideals, verify_commutator_products, verify_grassmann_boundary,
    verify_l2_products, verify_zero_product_chains, CommutatorIdeals, ProductCheck,
};
pub use radical::verify_radical_properties;
pub use suite::{
    default_zoo, run_full_suite, verify_block_dimensions, verify_ln_classification, verify_not_lie_nilpotent, Showcase,
    SuiteConfig, ZooEntry, ZooRole,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Budget};
use crate::constructions::ConstructionError;
use crate::field::Scalar;
use crate::linalg::{null_space, LinalgError, Subspace};
use crate::structure::StructureError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("generators do not commute: {left} · {right} != {right} · {left}")]
    NonCommutingGenerators { left: String, right: String },
    #[error("exhaustive ideal enumeration needs a finite field")]
    InfiniteField,
}

/// Knobs shared by the verifiers. Defaults are the values the acceptance run
/// pins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub budget: Budget,
    /// Zero-product pairs per verifier.
    pub pair_samples: usize,
    /// Deepest chain `a0 a1 ⋯ ak = 0` checked for the L_2 chain identity.
    pub chain_depth: usize,
    /// Cap on exhaustive slot sweeps per sampled pair; larger sweeps are
    /// replaced by `slot_samples` seeded basis assignments.
    pub slot_budget: u64,
    pub slot_samples: u64,
    /// Nilpotent/radical samples for the radical checks.
    pub radical_samples: usize,
    pub left_ideals: usize,
    /// Largest n tried when a verifier needs the Lie nilpotency index.
    pub n_max: usize,
    /// Largest n for Lie center structure checks.
    pub center_n_max: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            budget: Budget::default(),
            pair_samples: 24,
            chain_depth: 3,
            slot_budget: 1_000_000,
            slot_samples: 4_000,
            radical_samples: 200,
            left_ideals: 32,
            n_max: 6,
            center_n_max: 3,
        }
    }
}

impl VerifyConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Deterministic per-(statement, algebra) RNG so reports do not depend on
/// scheduling.
pub(crate) fn rng_for(seed: u64, statement: &str, algebra: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(statement.as_bytes());
    h.update([0]);
    h.update(algebra.as_bytes());
    let digest = h.finalize();
    ChaCha8Rng::seed_from_u64(u64::from_le_bytes(digest[..8].try_into().expect("8 bytes")))
}

pub(crate) fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub(crate) fn unit_vec(alg: &Algebra, i: usize) -> Vec<Scalar> {
    let mut v = vec![alg.field().zero(); alg.dim()];
    v[i] = alg.field().one();
    v
}

/// Random combination of 1–3 basis elements.
pub(crate) fn sparse_random<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Vec<Scalar> {
    let mut v = vec![alg.field().zero(); alg.dim()];
    for _ in 0..rng.random_range(1..=3) {
        let i = rng.random_range(0..alg.dim());
        v[i] = &v[i] + &alg.field().random_nonzero(rng);
    }
    v
}

/// A candidate element: a basis element, a sparse combination or a dense
/// random element, with equal probability.
pub(crate) fn candidate<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Vec<Scalar> {
    match rng.random_range(0..3) {
        0 => unit_vec(alg, rng.random_range(0..alg.dim())),
        1 => sparse_random(alg, rng),
        _ => alg.to_dense(&alg.random_element(rng)),
    }
}

/// Random nonzero member of a nonzero subspace.
pub(crate) fn random_member<R: Rng + ?Sized>(s: &Subspace, rng: &mut R) -> Vec<Scalar> {
    let basis = s.basis_vectors();
    let field = s.field();
    loop {
        let mut v = vec![field.zero(); s.ambient_dim()];
        for b in &basis {
            let c = field.random(rng);
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x + &(&c * y);
                }
            }
        }
        if !is_zero(&v) {
            return v;
        }
    }
}

/// Pairs `(a, b)` with `a·b = 0`, both nonzero: `a` is a seeded candidate and
/// `b` a random member of `ker L_a`. Gives up after `20 · count` attempts.
pub(crate) fn zero_product_pairs<R: Rng + ?Sized>(
    alg: &Algebra,
    rng: &mut R,
    count: usize,
) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
    let mut pairs = Vec::with_capacity(count);
    let mut attempts = 0;
    while pairs.len() < count && attempts < 20 * count {
        attempts += 1;
        let a = candidate(alg, rng);
        if is_zero(&a) {
            continue;
        }
        let kernel = null_space(&alg.left_mult_matrix_dense(&a));
        if kernel.is_zero() {
            continue;
        }
        let b = random_member(&kernel, rng);
        debug_assert!(is_zero(&alg.mul_dense(&a, &b)));
        pairs.push((a, b));
    }
    pairs
}

/// One factor of a product whose slots range over basis elements.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Factor<'a> {
    Fixed(&'a [Scalar]),
    Slot,
}

#[derive(Debug, Clone)]
pub(crate) struct ChainOutcome {
    pub cases: u64,
    pub exhaustive: bool,
    /// Basis indices of the slots and the nonzero value.
    pub nonzero: Option<(Vec<usize>, Vec<Scalar>)>,
}

/// Checks that a product of fixed elements and basis-valued slots vanishes:
/// every basis assignment when `d^slots ≤ slot_budget` (depth-first, zero
/// prefixes pruned), else `samples` seeded assignments.
pub(crate) fn sweep_chain<R: Rng + ?Sized>(
    alg: &Algebra,
    factors: &[Factor<'_>],
    slot_budget: u64,
    samples: u64,
    rng: &mut R,
) -> ChainOutcome {
    let slots = factors.iter().filter(|f| matches!(f, Factor::Slot)).count();
    let total = crate::algebra::tuple_count(alg.dim(), slots);
    if total <= slot_budget as u128 {
        let mut path = Vec::with_capacity(slots);
        let nonzero = chain_dfs(alg, factors, None, &mut path);
        return ChainOutcome { cases: total as u64, exhaustive: true, nonzero };
    }
    for _ in 0..samples {
        let choice: Vec<usize> = (0..slots).map(|_| rng.random_range(0..alg.dim())).collect();
        let mut acc: Option<Vec<Scalar>> = None;
        let mut slot = 0;
        for f in factors {
            let next = match (f, &acc) {
                (Factor::Fixed(v), None) => v.to_vec(),
                (Factor::Slot, None) => unit_vec(alg, choice[slot]),
                (Factor::Fixed(v), Some(a)) => alg.mul_dense(a, v),
                (Factor::Slot, Some(a)) => alg.mul_basis_right(a, choice[slot]),
            };
            if matches!(f, Factor::Slot) {
                slot += 1;
            }
            acc = Some(next);
        }
        let value = acc.unwrap_or_default();
        if !is_zero(&value) {
            return ChainOutcome { cases: samples, exhaustive: false, nonzero: Some((choice, value)) };
        }
    }
    ChainOutcome { cases: samples, exhaustive: false, nonzero: None }
}

fn chain_dfs(
    alg: &Algebra,
    factors: &[Factor<'_>],
    prefix: Option<&[Scalar]>,
    path: &mut Vec<usize>,
) -> Option<(Vec<usize>, Vec<Scalar>)> {
    let Some((first, rest)) = factors.split_first() else {
        let v = prefix.map(<[Scalar]>::to_vec).unwrap_or_default();
        return (!is_zero(&v)).then(|| (path.clone(), v));
    };
    match first {
        Factor::Fixed(v) => {
            let next = match prefix {
                None => v.to_vec(),
                Some(p) => alg.mul_dense(p, v),
            };
            if is_zero(&next) {
                return None;
            }
            chain_dfs(alg, rest, Some(&next), path)
        }
        Factor::Slot => {
            for k in 0..alg.dim() {
                let next = match prefix {
                    None => unit_vec(alg, k),
                    Some(p) => alg.mul_basis_right(p, k),
                };
                if is_zero(&next) {
                    continue;
                }
                path.push(k);
                if let Some(hit) = chain_dfs(alg, rest, Some(&next), path) {
                    return Some(hit);
                }
                path.pop();
            }
            None
        }
    }
}
