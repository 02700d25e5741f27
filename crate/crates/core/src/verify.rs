//! The acceptance checks, runnable from the library, the CLI and the test
//! suite. Every comparison is exact.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::jets::{monomials_in_range, random_connection_jet, random_vector_field};
use crate::lie_action::{action_matrix, lie_derivative, tensor_lie_derivative, vf_bracket};
use crate::normal_coords::{
    is_normal_jet, sample_normal_jet, stabilizer_system_0jet, stabilizer_system_1jet, witness_gamma,
    witness_n2_first_order,
};
use crate::poincare::{
    closed_form, expand_rational, finite_differences_vanish, fit_polynomial_in_k, functional_moduli_estimate,
    leading_coefficient_formula, operator_lemma_check, phi_recursion_check, series_by_difference, series_by_operator,
};
use crate::scalar::q;
use crate::stabilizer::{expected_stabilizer_dim, orbit_dim_formula, stabilizer_dim_generic};
use crate::{poincare, ConnectionJet, Rational, Result};

pub const CHECK_COUNT: u8 = 10;
/// Seeds for the random generic jets.
pub const GENERIC_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Adds `(4, 2)` to the empirical checks.
    pub deep: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl CheckResult {
    /// `PASS  C1  series triple agreement: ...`
    pub fn line(&self) -> String {
        format!(
            "{}  C{:<2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail
        )
    }
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "series triple agreement",
        2 => "generic stabilizer dimensions",
        3 => "stabilizer witnesses",
        4 => "orbit dimensions by rank",
        5 => "filtration triviality",
        6 => "projection commutes with the action",
        7 => "action homomorphism",
        8 => "normal-coordinate equivalence",
        9 => "operator identities",
        10 => "polynomiality and pole coefficients",
        _ => panic!("no check {id}"),
    }
}

/// Runs check `id` (1-based).
pub fn run_check(id: u8, opts: VerifyOptions) -> CheckResult {
    let start = Instant::now();
    let outcome = match id {
        1 => series_agreement(),
        2 => generic_stabilizers(opts),
        3 => witnesses(),
        4 => orbit_dims(opts),
        5 => filtration(),
        6 => projection(),
        7 => homomorphism(),
        8 => normal_equivalence(),
        9 => operator_identities(),
        10 => polynomiality(),
        _ => panic!("no check {id}"),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    if id == 1 && elapsed >= Duration::from_secs(1) {
        passed = false;
        detail.push_str(&format!("; took {elapsed:?}, limit 1s"));
    }
    CheckResult { id, title: title(id), passed, detail, elapsed_ms: elapsed.as_millis() }
}

/// Runs every check in parallel; results are ordered by id.
pub fn run_all(opts: VerifyOptions) -> Vec<CheckResult> {
    (1..=CHECK_COUNT).into_par_iter().map(|id| run_check(id, opts)).collect()
}

type Outcome = Result<(bool, String)>;

fn summarize(failures: Vec<String>, ok: String) -> (bool, String) {
    if failures.is_empty() {
        (true, ok)
    } else {
        (false, failures.join("; "))
    }
}

fn series_agreement() -> Outcome {
    const K: usize = 30;
    let mut failures = Vec::new();
    for n in 1..=6 {
        let diff = series_by_difference(n, K);
        if diff != expand_rational(&closed_form(n)?, K) {
            failures.push(format!("n={n}: closed form differs"));
        }
        if diff != series_by_operator(n, K) {
            failures.push(format!("n={n}: operator route differs"));
        }
    }
    if series_by_difference(1, K).coefficients().iter().any(|c| *c != q(0)) {
        failures.push("n=1 series is not zero".into());
    }
    Ok(summarize(failures, format!("n=1..6, k=0..{K}, three routes agree; n=1 series is zero")))
}

fn empirical_pairs(opts: VerifyOptions, base: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut pairs = base.to_vec();
    if opts.deep {
        pairs.push((4, 2));
    }
    pairs
}

fn generic_stabilizers(opts: VerifyOptions) -> Outcome {
    let base = [(1, 0), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (4, 0)];
    let results: Vec<(usize, usize, Vec<usize>)> = empirical_pairs(opts, &base)
        .into_par_iter()
        .map(|(n, k)| {
            let dims = GENERIC_SEEDS.iter().map(|&s| stabilizer_dim_generic(n, k, s)).collect::<Result<Vec<_>>>()?;
            Ok((n, k, dims))
        })
        .collect::<Result<_>>()?;
    let failures = results
        .iter()
        .filter(|(n, k, dims)| dims.iter().any(|&d| d != expected_stabilizer_dim(*n, *k)))
        .map(|(n, k, dims)| format!("({n},{k}) dims {dims:?}, expected {}", expected_stabilizer_dim(*n, *k)))
        .collect();
    Ok(summarize(failures, format!("{} cases x {} seeds match", results.len(), GENERIC_SEEDS.len())))
}

fn witnesses() -> Outcome {
    let mut failures = Vec::new();
    for n in 3..=5 {
        let dim = stabilizer_system_0jet(&witness_gamma(n)?)?.kernel_dim();
        if dim != 0 {
            failures.push(format!("n={n} zero-order witness kernel {dim}"));
        }
    }
    let dim = stabilizer_system_1jet(&witness_n2_first_order())?.kernel_dim();
    if dim != 0 {
        failures.push(format!("n=2 first-order witness kernel {dim}"));
    }
    for seed in GENERIC_SEEDS {
        let sys = stabilizer_system_0jet(&sample_normal_jet(2, 0, seed, 10)?)?;
        let shape = (sys.matrix.rows(), sys.matrix.cols());
        if shape != (2, 4) || sys.matrix.rank() != 2 {
            failures.push(format!("n=2 antisymmetric seed {seed}: shape {shape:?}, rank {}", sys.matrix.rank()));
        }
    }
    Ok(summarize(failures, "n=3..5 and n=2 first order trivial; n=2 2x4 systems have rank 2".into()))
}

fn orbit_dims(opts: VerifyOptions) -> Outcome {
    let base = [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1)];
    let seed = GENERIC_SEEDS[0];
    let ranks: Vec<(usize, usize, u64)> = empirical_pairs(opts, &base)
        .into_par_iter()
        .map(|(n, k)| Ok((n, k, action_matrix(&random_connection_jet(n, k, seed, 10)?)?.rank() as u64)))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for &(n, k, rank) in &ranks {
        if rank != orbit_dim_formula(n, k) {
            failures.push(format!("({n},{k}) rank {rank}, formula {}", orbit_dim_formula(n, k)));
        }
        let empirical_moduli = poincare::dim_f(n, k) - rank;
        if empirical_moduli != poincare::dim_m(n, k) {
            failures.push(format!("({n},{k}) dim M by rank {empirical_moduli}, formula {}", poincare::dim_m(n, k)));
        }
    }
    if (poincare::dim_m(3, 1), poincare::dim_m(4, 0)) != (51, 8) {
        failures.push("dim M_1(3) or dim M_0(4) off".into());
    }
    Ok(summarize(failures, format!("{} cases: rank equals formula orbit dimension", ranks.len())))
}

/// Deterministic `(n, k)` with `n ≤ 3`, `k ≤ 2`.
fn small_case(rng: &mut ChaCha8Rng) -> (usize, usize) {
    (rng.gen_range(1..=3), rng.gen_range(0..=2))
}

fn filtration() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    for trial in 0..50u64 {
        let (n, k) = small_case(&mut rng);
        let low = k + 3 + rng.gen_range(0..=1);
        let g = random_connection_jet::<Rational>(n, k, 5000 + trial, 10)?;
        let v = random_vector_field::<Rational>(n, low, low + 1, 6000 + trial, 10)?;
        if !lie_derivative(&v, &g)?.project(k)?.is_zero() {
            failures.push(format!("trial {trial} (n={n}, k={k})"));
        }
    }
    Ok(summarize(failures, "50 pairs: fields of degree >= k+3 act trivially".into()))
}

fn projection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    for trial in 0..50u64 {
        let (n, _) = small_case(&mut rng);
        let k = rng.gen_range(1..=3);
        let target = rng.gen_range(0..k);
        let g = random_connection_jet::<Rational>(n, k, 7000 + trial, 10)?;
        let v = random_vector_field::<Rational>(n, 1, k + 2, 8000 + trial, 10)?;
        let lhs = lie_derivative(&v, &g)?.project(target)?;
        let rhs = lie_derivative(&v.with_max_degree(target + 2), &g.project(target)?)?;
        if lhs != rhs {
            failures.push(format!("trial {trial} (n={n}, k={k} -> {target})"));
        }
    }
    Ok(summarize(failures, "50 pairs commute with projection".into()))
}

fn homomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for trial in 0..25u64 {
        let (n, k) = small_case(&mut rng);
        let g = random_connection_jet::<Rational>(n, k, 9000 + trial, 10)?;
        let v = random_vector_field::<Rational>(n, 1, k + 2, 10_000 + trial, 5)?;
        let w = random_vector_field::<Rational>(n, 1, k + 2, 11_000 + trial, 5)?;
        let lhs = lie_derivative(&vf_bracket(&v, &w, k + 2)?, &g)?;
        let rhs = tensor_lie_derivative(&v, &lie_derivative(&w, &g)?)?
            .sub(&tensor_lie_derivative(&w, &lie_derivative(&v, &g)?)?)?;
        if lhs != rhs {
            failures.push(format!("trial {trial} (n={n}, k={k})"));
        }
    }
    Ok(summarize(failures, "25 triples satisfy the bracket identity".into()))
}

/// Adds a nonzero amount to one random coefficient of `g`.
fn perturb(g: &ConnectionJet, rng: &mut ChaCha8Rng) -> ConnectionJet {
    let n = g.n();
    let monomials = monomials_in_range(n, 0, g.order());
    let (l, i, j) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
    let alpha = monomials[rng.gen_range(0..monomials.len())].clone();
    let amount = q(rng.gen_range(1..=10) * if rng.gen_bool(0.5) { 1 } else { -1 });
    let mut h = g.clone();
    h.component_mut(l, i, j).add_term(alpha, amount);
    h
}

fn normal_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    for trial in 0..20u64 {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(0..=2);
        let g = sample_normal_jet(n, k, 12_000 + trial, 10)?;
        if !is_normal_jet(&g) {
            failures.push(format!("sample {trial} (n={n}, k={k}) rejected"));
        }
        if is_normal_jet(&perturb(&g, &mut rng)) {
            failures.push(format!("violation {trial} (n={n}, k={k}) accepted"));
        }
    }
    Ok(summarize(failures, "20 samples accepted, 20 single-coefficient violations rejected".into()))
}

fn operator_identities() -> Outcome {
    let mut failures = Vec::new();
    for big_n in 2..=6 {
        if !operator_lemma_check(big_n, 40)? {
            failures.push(format!("N={big_n}"));
        }
    }
    if !phi_recursion_check(6, 40) {
        failures.push("phi recursion".into());
    }
    Ok(summarize(failures, "N=2..6 through 40 terms; phi_m for m<=6".into()))
}

fn polynomiality() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=6 {
        if !finite_differences_vanish(n, n, 2, 3 * n) {
            failures.push(format!("n={n}: order-n differences nonzero"));
        }
        let lead = fit_polynomial_in_k(n)?.leading();
        if lead != leading_coefficient_formula(n) {
            failures.push(format!("n={n}: leading coefficient {lead}"));
        }
        let top = functional_moduli_estimate(n)?;
        if top != q((n * n * n - n) as i64) {
            failures.push(format!("n={n}: top pole {top}"));
        }
    }
    Ok(summarize(failures, "n=2..6: differences vanish, leading n(n^2-1)/(n-1)!, top pole n(n^2-1)".into()))
}
