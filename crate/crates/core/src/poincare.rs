//! Dimensions of jet spaces, orbits and moduli, and the Poincaré series
//! `p(t) = Σ a_k t^k` of the moduli spaces, computed three ways:
//!
//! 1. `a_k = dim M_k − dim M_{k−1}` from the dimension formulas,
//! 2. Taylor expansion of the closed rational form
//!    `δ¹_n + 2δ²_n(1−t) − n² + n((n²−1)/(1−t)^n − 2/(1−t)^{n−1} − … − n/(1−t))`,
//! 3. the operator form `δ¹_n + 2δ²_n(1−t) − n² + n D(1/(1−t))` with
//!    `D = n² C(n+θ−1, n−1) − C(n+θ+1, n−1)`, `θ = t d/dt`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_core::binomial;
use crate::scalar::{q, Rational, Scalar};
use crate::stabilizer::orbit_dim_formula;

/// Truncated power series `a_0 + a_1 t + … + a_K t^K`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coefficients: Vec<T>,
}

impl<T: Scalar> Series<T> {
    pub fn new(coefficients: Vec<T>) -> Self {
        assert!(!coefficients.is_empty(), "a series keeps at least the constant term");
        Series { coefficients }
    }

    pub fn from_fn(truncation: usize, f: impl FnMut(usize) -> T) -> Self {
        Series::new((0..=truncation).map(f).collect())
    }

    /// `1/(1−t)`.
    pub fn geometric(truncation: usize) -> Self {
        Self::from_fn(truncation, |_| T::one())
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coefficients[k]
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn scale(&self, c: &T) -> Self {
        Series::new(self.coefficients.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.truncation(), other.truncation());
        Series::new(self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    /// Adds `c t^k` when `k` is within the truncation.
    pub fn add_monomial(&mut self, k: usize, c: T) {
        if let Some(a) = self.coefficients.get_mut(k) {
            *a = a.clone() + c;
        }
    }
}

/// `n^3 C(n+k, n)`: dimension of the space of connection `k`-jets.
pub fn dim_f(n: usize, k: usize) -> u64 {
    (n as u64).pow(3) * binomial((n + k) as u64, n as u64)
}

/// `dim F_k − dim O_k` with the formula orbit dimension.
pub fn dim_m(n: usize, k: usize) -> u64 {
    dim_f(n, k) - orbit_dim_formula(n, k)
}

fn kron(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// `a_k` of the closed bracket form:
/// `n (n² C(n+k−1, n−1) − C(n+k+1, n−1))` for `k ≥ 1`, corrected by
/// `−2δ²_n` at `k = 1`; `n²(n−3)/2 + δ¹_n + 2δ²_n` at `k = 0`.
pub fn a_coeff_bracket(n: usize, k: usize) -> i64 {
    let ni = n as i64;
    if k == 0 {
        return ni * ni * (ni - 3) / 2 + kron(n, 1) + 2 * kron(n, 2);
    }
    ni * bracket(n, k) - 2 * kron(n, 2) * kron(k, 1)
}

/// `n² C(n+k−1, n−1) − C(n+k+1, n−1)`.
fn bracket(n: usize, k: usize) -> i64 {
    let (n64, k64) = (n as u64, k as u64);
    (n64 * n64 * binomial(n64 + k64 - 1, n64 - 1)) as i64 - binomial(n64 + k64 + 1, n64 - 1) as i64
}

/// `a_k = dim M_k − dim M_{k−1}` (`a_0 = dim M_0`).
pub fn a_coeff_difference(n: usize, k: usize) -> i64 {
    let cur = dim_m(n, k) as i64;
    if k == 0 {
        cur
    } else {
        cur - dim_m(n, k - 1) as i64
    }
}

/// Poincaré coefficient `a_k`. Panics if the difference and bracket forms
/// disagree, which would be a defect in the dimension formulas.
pub fn a_coeff(n: usize, k: usize) -> i64 {
    let diff = a_coeff_difference(n, k);
    let closed = a_coeff_bracket(n, k);
    assert_eq!(diff, closed, "a_{k} for n={n}: difference form {diff} vs bracket form {closed}");
    diff
}

/// `a_0..a_K` from the dimension formulas.
pub fn series_by_difference(n: usize, truncation: usize) -> Series<Rational> {
    Series::from_fn(truncation, |k| q(a_coeff(n, k)))
}

/// `c_0 + c_1 t + Σ_{j=1}^{n} pole_part[j−1] / (1−t)^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionT {
    pub polynomial_part: [Rational; 2],
    pub pole_part: Vec<Rational>,
}

/// Closed rational form of the Poincaré series in dimension `n`.
pub fn closed_form(n: usize) -> Result<RationalFunctionT> {
    if n == 0 {
        return Err(Error::ZeroVariables);
    }
    let ni = n as i64;
    let polynomial_part = [q(kron(n, 1) + 2 * kron(n, 2) - ni * ni), q(-2 * kron(n, 2))];
    let mut pole_part: Vec<Rational> = (1..=n).map(|j| q(-ni * (ni - j as i64 + 1))).collect();
    pole_part[n - 1] = q(ni * (ni * ni - 1));
    Ok(RationalFunctionT { polynomial_part, pole_part })
}

impl RationalFunctionT {
    /// Order of the pole at `t = 1`, the only possible pole.
    pub fn pole_order(&self) -> usize {
        self.pole_part.iter().rposition(|c| !c.is_zero()).map_or(0, |j| j + 1)
    }

    /// Pole locations with orders; every entry is at `t = 1`.
    pub fn poles(&self) -> Vec<(Rational, usize)> {
        match self.pole_order() {
            0 => Vec::new(),
            order => vec![(Rational::one(), order)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.polynomial_part.iter().all(Zero::is_zero) && self.pole_order() == 0
    }

    /// Value at `t`; `None` at the pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let base = Rational::one() - t;
        let mut acc = &self.polynomial_part[0] + &self.polynomial_part[1] * t;
        for (j, c) in self.pole_part.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if base.is_zero() {
                return None;
            }
            acc += c / num_traits::pow(base.clone(), j + 1);
        }
        Some(acc)
    }

    /// Writes the function as `numerator(t) / (1−t)^power` in lowest terms.
    /// The numerator is listed by ascending powers of `t`.
    pub fn to_single_fraction(&self) -> (Vec<Rational>, usize) {
        let n = self.pole_part.len();
        let one_minus_t_pow = |e: usize| -> Vec<Rational> {
            (0..=e).map(|i| q(binomial(e as u64, i as u64) as i64 * if i % 2 == 0 { 1 } else { -1 })).collect()
        };
        let mut num = vec![Rational::zero(); n + 2];
        let base = one_minus_t_pow(n);
        for (i, b) in base.iter().enumerate() {
            num[i] += &self.polynomial_part[0] * b;
            num[i + 1] += &self.polynomial_part[1] * b;
        }
        for (j, c) in self.pole_part.iter().enumerate() {
            for (i, b) in one_minus_t_pow(n - (j + 1)).iter().enumerate() {
                num[i] += c * b;
            }
        }
        let mut power = n;
        // divide out (1 − t) while it divides the numerator
        while power > 0 && num.iter().fold(Rational::zero(), |a, c| a + c).is_zero() && num.iter().any(|c| !c.is_zero()) {
            let mut quotient = vec![Rational::zero(); num.len().saturating_sub(1)];
            // N(t) = (1 − t) Q(t): q_0 = n_0, q_i = n_i + q_{i−1}
            let mut carry = Rational::zero();
            for (i, slot) in quotient.iter_mut().enumerate() {
                carry += &num[i];
                *slot = carry.clone();
            }
            num = quotient;
            power -= 1;
        }
        while num.last().is_some_and(Zero::is_zero) {
            num.pop();
        }
        if num.is_empty() {
            power = 0;
        }
        (num, power)
    }
}

impl fmt::Display for RationalFunctionT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let [c0, c1] = &self.polynomial_part;
        if !c0.is_zero() {
            parts.push(c0.to_string());
        }
        if !c1.is_zero() {
            parts.push(format!("{c1}*t"));
        }
        for (j, c) in self.pole_part.iter().enumerate() {
            if !c.is_zero() {
                parts.push(if j == 0 { format!("{c}/(1-t)") } else { format!("{c}/(1-t)^{}", j + 1) });
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Formats `numerator / (1−t)^power`.
pub fn format_single_fraction(numerator: &[Rational], power: usize) -> String {
    let terms: Vec<String> = numerator
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => c.to_string(),
            1 => format!("{c}*t"),
            _ => format!("{c}*t^{i}"),
        })
        .collect();
    let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
    match power {
        0 => num,
        1 => format!("({num})/(1-t)"),
        p => format!("({num})/(1-t)^{p}"),
    }
}

/// Taylor coefficients `0..=K` at `t = 0`, using
/// `1/(1−t)^N = Σ C(N+k−1, N−1) t^k`.
pub fn expand_rational(f: &RationalFunctionT, truncation: usize) -> Series<Rational> {
    let mut s = Series::from_fn(truncation, |k| {
        f.pole_part
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| c * q(binomial((j + k) as u64, j as u64) as i64))
            .fold(Rational::zero(), |a, b| a + b)
    });
    s.add_monomial(0, f.polynomial_part[0].clone());
    s.add_monomial(1, f.polynomial_part[1].clone());
    s
}

/// `prefactor · (θ + c_1) ⋯ (θ + c_m)` with `θ = t d/dt`, acting on
/// `Σ a_k t^k` by `a_k ↦ prefactor Π(k + c_i) a_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaOperator {
    pub prefactor: Rational,
    pub shifts: Vec<i64>,
}

impl ThetaOperator {
    pub fn identity() -> Self {
        ThetaOperator { prefactor: Rational::one(), shifts: Vec::new() }
    }

    /// `θ^m`.
    pub fn theta_power(m: usize) -> Self {
        ThetaOperator { prefactor: Rational::one(), shifts: vec![0; m] }
    }

    /// `(θ + start)(θ + start + 1)⋯(θ + start + count − 1) / count!`, i.e.
    /// `C(θ + start + count − 1, count)`.
    pub fn binomial(start: i64, count: usize) -> Self {
        let fact = (1..=count as i64).product::<i64>();
        ThetaOperator {
            prefactor: Rational::new(1.into(), fact.into()),
            shifts: (0..count as i64).map(|i| start + i).collect(),
        }
    }

    pub fn multiplier(&self, k: usize) -> Rational {
        self.shifts.iter().fold(self.prefactor.clone(), |acc, c| acc * q(k as i64 + c))
    }
}

pub fn apply_theta(op: &ThetaOperator, s: &Series<Rational>) -> Series<Rational> {
    Series::new(s.coefficients().iter().enumerate().map(|(k, a)| op.multiplier(k) * a).collect())
}

/// `D(1/(1−t))` through `t^K`.
pub fn d_gamma_expansion(n: usize, truncation: usize) -> Series<Rational> {
    let ones = Series::geometric(truncation);
    let lower = apply_theta(&ThetaOperator::binomial(1, n - 1), &ones);
    let upper = apply_theta(&ThetaOperator::binomial(3, n - 1), &ones);
    let nn = q((n * n) as i64);
    lower.scale(&nn).sub(&upper)
}

/// `δ¹_n + 2δ²_n(1−t) − n² + n D(1/(1−t))` through `t^K`.
pub fn series_by_operator(n: usize, truncation: usize) -> Series<Rational> {
    let mut s = d_gamma_expansion(n, truncation).scale(&q(n as i64));
    s.add_monomial(0, q(kron(n, 1) + 2 * kron(n, 2) - (n * n) as i64));
    s.add_monomial(1, q(-2 * kron(n, 2)));
    s
}

/// Both binomial-operator identities applied to `1/(1−t)`, through `t^K`:
///
/// ```text
/// C(N+θ−1, N−1) 1/(1−t) = 1/(1−t)^N
/// C(N+θ+1, N−1) 1/(1−t) = Σ_{j=1}^{N} j/(1−t)^{N−j+1}
/// ```
pub fn operator_lemma_check(big_n: usize, truncation: usize) -> Result<bool> {
    if big_n < 2 {
        return Err(Error::InvalidArgument("operator identities need N >= 2".into()));
    }
    let ones = Series::geometric(truncation);
    let lhs1 = apply_theta(&ThetaOperator::binomial(1, big_n - 1), &ones);
    let mut single = vec![Rational::zero(); big_n];
    single[big_n - 1] = Rational::one();
    let rhs1 = expand_rational(&RationalFunctionT { polynomial_part: [q(0), q(0)], pole_part: single }, truncation);
    let lhs2 = apply_theta(&ThetaOperator::binomial(3, big_n - 1), &ones);
    let ladder: Vec<Rational> = (1..=big_n).map(|p| q((big_n - p + 1) as i64)).collect();
    let rhs2 = expand_rational(&RationalFunctionT { polynomial_part: [q(0), q(0)], pole_part: ladder }, truncation);
    Ok(lhs1 == rhs1 && lhs2 == rhs2)
}

/// `φ_m(t) = Σ k^m t^k = θ^m (1/(1−t))`.
pub fn phi_series(m: usize, truncation: usize) -> Series<Rational> {
    apply_theta(&ThetaOperator::theta_power(m), &Series::geometric(truncation))
}

/// `φ_m = θ φ_{m−1}` and `[t^k] φ_m = k^m` for `m = 1..=max_m`.
pub fn phi_recursion_check(max_m: usize, truncation: usize) -> bool {
    let theta = ThetaOperator::theta_power(1);
    (1..=max_m).all(|m| {
        let phi = phi_series(m, truncation);
        let direct = Series::from_fn(truncation, |k| q((k as i64).pow(m as u32)));
        phi == apply_theta(&theta, &phi_series(m - 1, truncation)) && phi == direct
    })
}

/// Polynomial in `k`, coefficients by ascending power.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialInK {
    pub coefficients: Vec<Rational>,
}

impl PolynomialInK {
    pub fn eval(&self, k: i64) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * q(k) + c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Rational {
        self.degree().map_or_else(Rational::zero, |d| self.coefficients[d].clone())
    }
}

/// Interpolating polynomial through `(x_i, y_i)`, by Newton divided
/// differences.
pub fn interpolate(points: &[(i64, Rational)]) -> PolynomialInK {
    let m = points.len();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..m {
        for i in (level..m).rev() {
            let denom = q(points[i].0 - points[i - level].0);
            dd[i] = (&dd[i] - &dd[i - 1]) / denom;
        }
    }
    // Horner on the Newton form
    let mut coeffs = vec![Rational::zero(); m.max(1)];
    for i in (0..m).rev() {
        let mut next = vec![Rational::zero(); m.max(1)];
        for (d, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[d] -= c * q(points[i].0);
            if d + 1 < next.len() {
                next[d + 1] += c;
            }
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    PolynomialInK { coefficients: coeffs }
}

/// `order`-th forward difference of `k ↦ a_k` at `k = start`.
pub fn finite_difference(n: usize, order: usize, start: usize) -> i64 {
    (0..=order)
        .map(|i| {
            let sign = if (order - i).is_multiple_of(2) { 1 } else { -1 };
            sign * binomial(order as u64, i as u64) as i64 * a_coeff(n, start + i)
        })
        .sum()
}

/// True when the `order`-th differences of `a_k` vanish for every window
/// inside `from..=through`.
pub fn finite_differences_vanish(n: usize, order: usize, from: usize, through: usize) -> bool {
    (from..=through.saturating_sub(order)).all(|s| finite_difference(n, order, s) == 0)
}

/// Degree `n−1` polynomial with `a(k) = a_k` for `k ≥ 2`, fitted on
/// `k = 2..=n+1`.
pub fn fit_polynomial_in_k(n: usize) -> Result<PolynomialInK> {
    if n < 2 {
        return Err(Error::InvalidArgument("polynomial fit needs n >= 2".into()));
    }
    let points: Vec<(i64, Rational)> = (2..=n + 1).map(|k| (k as i64, q(a_coeff(n, k)))).collect();
    Ok(interpolate(&points))
}

/// `n(n²−1)/(n−1)!`, the leading coefficient of `k ↦ a_k`.
pub fn leading_coefficient_formula(n: usize) -> Rational {
    let fact: i64 = (1..n as i64).product();
    Rational::new(((n * n * n - n) as i64).into(), fact.into())
}

/// Integer value of an exact coefficient. Every coefficient of the series
/// is integral, so a fraction here is a defect.
pub fn integral(c: &Rational) -> i64 {
    assert!(c.is_integer(), "non-integral coefficient {c}");
    i64::try_from(c.to_integer()).expect("coefficient fits in i64")
}

/// Coefficient of the top pole `1/(1−t)^n`, `n(n²−1) = n³ − n`: the
/// asymptotic growth rate `a_k ~ (n³−n) k^{n−1}/(n−1)!`, read as a count
/// of functional invariants in `n` variables.
pub fn functional_moduli_estimate(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidArgument("estimate needs n >= 2".into()));
    }
    Ok(closed_form(n)?.pole_part[n - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_space_dims() {
        assert_eq!(dim_f(2, 0), 8);
        assert_eq!(dim_f(2, 1), 24);
        assert_eq!(dim_f(3, 1), 108);
        for n in 1..4 {
            for k in 0..3 {
                assert_eq!(dim_f(n, k), crate::ConnectionJet::zero(n, k).unwrap().slot_count());
            }
        }
    }

    #[test]
    fn moduli_dims() {
        assert_eq!(dim_m(2, 0), 0);
        assert_eq!(dim_m(3, 1), 51);
        assert_eq!(dim_m(4, 0), 8);
        for n in 1..7 {
            assert_eq!(dim_m(n, 0) as i64, a_coeff_bracket(n, 0));
        }
    }

    #[test]
    fn coefficients() {
        assert_eq!(a_coeff(2, 1), 6);
        assert_eq!(a_coeff(3, 2), 117);
        for k in 0..20 {
            assert_eq!(a_coeff(1, k), 0);
        }
    }

    #[test]
    fn closed_form_examples() {
        let f1 = closed_form(1).unwrap();
        assert!(f1.is_zero());
        assert_eq!(f1.to_single_fraction(), (vec![], 0));
        let f2 = closed_form(2).unwrap();
        assert_eq!(f2.polynomial_part, [q(-2), q(-2)]);
        assert_eq!(f2.pole_part, vec![q(-4), q(6)]);
        assert_eq!(f2.to_single_fraction(), (vec![q(0), q(6), q(2), q(-2)], 2));
        assert_eq!(format_single_fraction(&[q(0), q(6), q(2), q(-2)], 2), "(6*t + 2*t^2 - 2*t^3)/(1-t)^2");
        let f3 = closed_form(3).unwrap();
        assert_eq!(f3.polynomial_part, [q(-9), q(0)]);
        assert_eq!(f3.pole_part, vec![q(-9), q(-6), q(24)]);
        assert_eq!(f3.eval(&q(0)), Some(q(0)));
        assert_eq!(f3.eval(&q(1)), None);
        assert_eq!(f3.to_string(), "-9 - 9/(1-t) - 6/(1-t)^2 + 24/(1-t)^3");
        for n in 1..7 {
            let f = closed_form(n).unwrap();
            assert_eq!(f.eval(&q(0)), Some(q(dim_m(n, 0) as i64)));
            assert!(f.poles().iter().all(|(t, _)| *t == q(1)));
        }
    }

    #[test]
    fn single_fraction_agrees_with_partial_fractions() {
        for n in 1..7 {
            let f = closed_form(n).unwrap();
            let (num, power) = f.to_single_fraction();
            for t in [q(0), q(2), Rational::new(1.into(), 3.into()), q(-5)] {
                let numer = num.iter().rev().fold(Rational::zero(), |a, c| a * &t + c);
                let value = numer / num_traits::pow(Rational::one() - &t, power);
                assert_eq!(Some(value), f.eval(&t), "n={n}");
            }
        }
    }

    #[test]
    fn expansions() {
        let cube = RationalFunctionT { polynomial_part: [q(0), q(0)], pole_part: vec![q(0), q(0), q(1)] };
        let s = expand_rational(&cube, 10);
        for k in 0..=10 {
            assert_eq!(s.coeff(k), &q(binomial(k as u64 + 2, 2) as i64));
        }
        let zero = RationalFunctionT { polynomial_part: [q(0), q(0)], pole_part: vec![q(0)] };
        assert!(expand_rational(&zero, 5).coefficients().iter().all(Zero::is_zero));
        let s2 = expand_rational(&closed_form(2).unwrap(), 3);
        assert_eq!(s2.coefficients(), &[q(0), q(6), q(14), q(20)]);
    }

    #[test]
    fn theta_operators() {
        let ones = Series::<Rational>::geometric(8);
        let k_series = Series::from_fn(8, |k| q(k as i64));
        assert_eq!(apply_theta(&ThetaOperator::theta_power(1), &ones), k_series);
        assert_eq!(apply_theta(&ThetaOperator::identity(), &k_series), k_series);
        let shifted = apply_theta(&ThetaOperator::binomial(1, 1), &ones);
        let two_poles = RationalFunctionT { polynomial_part: [q(0), q(0)], pole_part: vec![q(0), q(1)] };
        assert_eq!(shifted, expand_rational(&two_poles, 8));
    }

    #[test]
    fn operator_identities() {
        for big_n in 2..=6 {
            assert!(operator_lemma_check(big_n, 40).unwrap());
        }
        assert!(operator_lemma_check(1, 40).is_err());
        assert!(phi_recursion_check(6, 30));
    }

    #[test]
    fn three_routes_agree() {
        for n in 1..=6 {
            let by_diff = series_by_difference(n, 30);
            assert_eq!(by_diff, expand_rational(&closed_form(n).unwrap(), 30), "n={n}");
            assert_eq!(by_diff, series_by_operator(n, 30), "n={n}");
        }
    }

    #[test]
    fn polynomial_fits() {
        let p2 = fit_polynomial_in_k(2).unwrap();
        assert_eq!(p2.coefficients, vec![q(2), q(6)]);
        let p3 = fit_polynomial_in_k(3).unwrap();
        assert_eq!(p3.coefficients, vec![q(9), q(30), q(12)]);
        assert_eq!(fit_polynomial_in_k(4).unwrap().leading(), q(10));
        for n in 2..=6 {
            let p = fit_polynomial_in_k(n).unwrap();
            assert_eq!(p.degree(), Some(n - 1));
            assert_eq!(p.leading(), leading_coefficient_formula(n));
            for k in 2..=3 * n {
                assert_eq!(p.eval(k as i64), q(a_coeff(n, k)));
            }
            assert!(finite_differences_vanish(n, n, 2, 3 * n));
            assert!(!finite_differences_vanish(n, n - 1, 2, 3 * n));
        }
        assert!(fit_polynomial_in_k(1).is_err());
    }

    #[test]
    fn top_pole_estimate() {
        assert_eq!(functional_moduli_estimate(2).unwrap(), q(6));
        assert_eq!(functional_moduli_estimate(3).unwrap(), q(24));
        // a_k − (n³−n) C(n+k−1, n−1) has degree ≤ n−2
        for n in 2..=6 {
            let top = functional_moduli_estimate(n).unwrap();
            let pts: Vec<(i64, Rational)> = (2..=n + 1)
                .map(|k| (k as i64, q(a_coeff(n, k)) - &top * q(binomial((n + k - 1) as u64, (n - 1) as u64) as i64)))
                .collect();
            assert!(interpolate(&pts).degree().is_none_or(|d| d <= n - 2));
        }
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let pts: Vec<(i64, Rational)> = (0..4).map(|x| (x, q(3 * x * x * x - x + 7))).collect();
        assert_eq!(interpolate(&pts).coefficients, vec![q(7), q(-1), q(0), q(3)]);
    }
}
