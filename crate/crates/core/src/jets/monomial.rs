use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::exact_core::binomial;

/// Exponent vector of a monomial in `n` variables.
///
/// Ordered graded-lexicographically: lower total degree first, and within a
/// degree, larger powers of earlier variables first (`x1^2 < x1 x2 < x2^2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The monomial `x^k`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        MultiIndex(e)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `∂/∂x^k x^α = α_k x^(α - e_k)`; `None` when `α_k = 0`.
    pub fn differentiate(&self, k: usize) -> Option<(u32, MultiIndex)> {
        let e = self.0[k];
        if e == 0 {
            return None;
        }
        let mut lowered = self.0.clone();
        lowered[k] -= 1;
        Some((e, MultiIndex(lowered)))
    }

    /// `α! = Π α_i!`.
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .flat_map(|&e| 1..=e)
            .fold(BigInt::from(1), |acc, f| acc * BigInt::from(f))
    }

    /// The variables of the monomial listed with multiplicity, e.g.
    /// `x1^2 x3 -> [0, 0, 2]`.
    pub fn positions(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    /// Inverse of [`MultiIndex::positions`].
    pub fn from_positions(n: usize, positions: &[usize]) -> Self {
        let mut e = vec![0; n];
        for &p in positions {
            e[p] += 1;
        }
        MultiIndex(e)
    }

    /// Comma-separated exponent list used as a JSON key.
    pub fn key(&self) -> String {
        self.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse_key(s: &str) -> Option<MultiIndex> {
        s.split(',').map(|p| p.trim().parse().ok()).collect::<Option<Vec<u32>>>().map(MultiIndex)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of exactly degree `d`, in graded-lex order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<MultiIndex> {
    fn fill(rest: usize, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        let n = cur.len();
        if slot + 1 == n {
            cur[slot] = rest as u32;
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for e in (0..=rest).rev() {
            cur[slot] = e as u32;
            fill(rest - e, slot + 1, cur, out);
        }
    }
    if n == 0 {
        return if d == 0 { vec![MultiIndex(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    fill(d, 0, &mut vec![0; n], &mut out);
    out
}

/// All monomials with degree in `lo..=hi`, in graded-lex order.
pub fn monomials_in_range(n: usize, lo: usize, hi: usize) -> Vec<MultiIndex> {
    (lo..=hi).flat_map(|d| monomials_of_degree(n, d)).collect()
}

/// Dimension of the space of homogeneous degree-`d` polynomials in `n`
/// variables: `C(n+d-1, n-1)`.
pub fn jet_dimension_count(n: usize, d: usize) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial((n + d - 1) as u64, (n - 1) as u64)
}
