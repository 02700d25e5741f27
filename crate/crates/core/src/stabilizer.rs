//! Stabilizer and orbit dimensions of generic jets.
//!
//! The empirical route takes the exact kernel dimension of the linearized
//! action at random integer jets; the formula route counts vector-field
//! jets and subtracts the expected generic stabilizer.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_core::{binomial, QMatrix};
use crate::jets::random_connection_jet;
use crate::lie_action::action_matrix;
use crate::normal_coords::{
    is_normal_jet, linear_stabilizer_block, stabilizer_system_0jet, stabilizer_system_1jet, witness_gamma,
    witness_n2_first_order,
};
use crate::ConnectionJet;

pub const DEFAULT_COEFF_RANGE: u64 = 10;

/// Generic stabilizer dimension predicted by the closed-form model:
/// 1 for `n = 1`; 2 for `n = 2, k = 0`; 0 otherwise.
pub fn expected_stabilizer_dim(n: usize, k: usize) -> usize {
    usize::from(n == 1) + 2 * usize::from(n == 2 && k == 0)
}

/// Dimension of the space of vector-field jets acting on `k`-jets:
/// `n (C(n+k+2, n) − 1)`.
pub fn vector_field_dim(n: usize, k: usize) -> u64 {
    n as u64 * (binomial((n + k + 2) as u64, n as u64) - 1)
}

/// `n Σ_{m=1}^{k+2} C(n+m−1, n−1)` minus the expected stabilizer.
pub fn orbit_dim_formula(n: usize, k: usize) -> u64 {
    let fields: u64 = (1..=k + 2).map(|m| binomial((n + m - 1) as u64, (n - 1) as u64)).sum::<u64>() * n as u64;
    fields - expected_stabilizer_dim(n, k) as u64
}

/// Kernel dimension of the linearized action at `g`.
pub fn stabilizer_dim_at(g: &ConnectionJet) -> Result<usize> {
    Ok(action_matrix(g)?.kernel_dim())
}

pub fn stabilizer_dim_generic(n: usize, k: usize, seed: u64) -> Result<usize> {
    stabilizer_dim_generic_with_range(n, k, seed, DEFAULT_COEFF_RANGE)
}

pub fn stabilizer_dim_generic_with_range(n: usize, k: usize, seed: u64, coeff_range: u64) -> Result<usize> {
    stabilizer_dim_at(&random_connection_jet(n, k, seed, coeff_range)?)
}

/// Stacked linear systems `L_V Γ_m = 0`, `m = 0..=order`, for linear `V`.
pub fn normal_linear_system(g: &ConnectionJet) -> Result<QMatrix> {
    if !is_normal_jet(g) {
        return Err(Error::NotNormal);
    }
    let mut blocks = vec![stabilizer_system_0jet(&g.project(0)?)?.matrix];
    if g.order() >= 1 {
        blocks.push(stabilizer_system_1jet(&g.project(1)?)?.matrix);
    }
    for m in 2..=g.order() {
        blocks.push(linear_stabilizer_block(g, m)?);
    }
    QMatrix::vstack(&blocks)
}

/// Dimension of the linear fields fixing a jet given in its own normal
/// coordinates.
pub fn stabilizer_dim_normal_linear(g: &ConnectionJet) -> Result<usize> {
    let m = normal_linear_system(g)?;
    Ok(m.cols() - m.rank())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerReport {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub empirical_stab_dim: usize,
    pub expected_stab_dim: usize,
    pub empirical_orbit_dim: u64,
    pub formula_orbit_dim: u64,
    pub agree: bool,
}

pub fn report(n: usize, k: usize, seed: u64) -> Result<StabilizerReport> {
    report_with_range(n, k, seed, DEFAULT_COEFF_RANGE)
}

pub fn report_with_range(n: usize, k: usize, seed: u64, coeff_range: u64) -> Result<StabilizerReport> {
    let a = action_matrix(&random_connection_jet(n, k, seed, coeff_range)?)?;
    let rank = a.rank();
    let empirical_stab_dim = a.base.cols() - rank;
    let expected_stab_dim = expected_stabilizer_dim(n, k);
    let formula_orbit_dim = orbit_dim_formula(n, k);
    Ok(StabilizerReport {
        n,
        k,
        seed,
        empirical_stab_dim,
        expected_stab_dim,
        empirical_orbit_dim: rank as u64,
        formula_orbit_dim,
        agree: empirical_stab_dim == expected_stab_dim && rank as u64 == formula_orbit_dim,
    })
}

/// Explicit jet whose normal linear stabilizer should realize the generic
/// dimension at `(n, k)`.
pub fn witness_for(n: usize, k: usize) -> Result<ConnectionJet> {
    match (n, k) {
        (0, _) => Err(Error::ZeroVariables),
        (1, _) => ConnectionJet::zero(1, k),
        (2, 0) => witness_gamma(2),
        (2, _) => Ok(witness_n2_first_order().with_order(k)),
        _ => Ok(witness_gamma(n)?.with_order(k)),
    }
}

/// Outcome of checking an empirical dimension across several seeds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub n: usize,
    pub k: usize,
    pub seeds: Vec<u64>,
    pub dims: Vec<usize>,
    /// At least five seeds, all with the same dimension.
    pub consistent: bool,
    pub witness_dim: usize,
    /// The common dimension, when consistent and reproduced by the witness.
    pub accepted_dim: Option<usize>,
}

pub fn certify(n: usize, k: usize, seeds: &[u64]) -> Result<Certification> {
    let dims = seeds.iter().map(|&s| stabilizer_dim_generic(n, k, s)).collect::<Result<Vec<_>>>()?;
    let consistent = dims.len() >= 5 && dims.windows(2).all(|w| w[0] == w[1]);
    let witness_dim = stabilizer_dim_normal_linear(&witness_for(n, k)?)?;
    let accepted_dim = (consistent && dims[0] == witness_dim).then(|| dims[0]);
    Ok(Certification { n, k, seeds: seeds.to_vec(), dims, consistent, witness_dim, accepted_dim })
}
