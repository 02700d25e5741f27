use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Connection, Jet3, VectorField};
use super::monomial::monomials_in_range;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Jet whose coefficients are integers drawn uniformly from
/// `[-coeff_range, coeff_range]`. Deterministic in `seed`.
pub fn random_connection_jet<T: Scalar>(
    n: usize,
    k: usize,
    seed: u64,
    coeff_range: u64,
) -> Result<Jet3<T, Connection>> {
    let range = checked_range(coeff_range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monos = monomials_in_range(n, 0, k);
    let components = (0..n * n * n)
        .map(|_| {
            Polynomial::from_terms(n, k, monos.iter().map(|m| (m.clone(), T::from_int(rng.gen_range(-range..=range)))))
        })
        .collect::<Result<Vec<_>>>()?;
    Jet3::from_components(n, k, components)
}

/// Vector field with integer coefficients in `[-coeff_range, coeff_range]`
/// on every monomial of degree `min_degree..=max_degree` (`min_degree` is
/// raised to 1).
pub fn random_vector_field<T: Scalar>(
    n: usize,
    min_degree: usize,
    max_degree: usize,
    seed: u64,
    coeff_range: u64,
) -> Result<VectorField<T>> {
    let range = checked_range(coeff_range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monos = monomials_in_range(n, min_degree.max(1), max_degree);
    let components = (0..n)
        .map(|_| {
            Polynomial::from_terms(
                n,
                max_degree,
                monos.iter().map(|m| (m.clone(), T::from_int(rng.gen_range(-range..=range)))),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(n, max_degree, components)
}

fn checked_range(coeff_range: u64) -> Result<i64> {
    if coeff_range == 0 {
        return Err(Error::InvalidArgument("coeff_range must be at least 1".into()));
    }
    i64::try_from(coeff_range).map_err(|_| Error::InvalidArgument("coeff_range too large".into()))
}
