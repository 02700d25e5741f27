use std::collections::BTreeMap;

use super::monomial::MultiIndex;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Polynomial in `n` variables with every term of degree above
/// `degree_bound` discarded. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    n: usize,
    degree_bound: usize,
    terms: BTreeMap<MultiIndex, T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero(n: usize, degree_bound: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroVariables);
        }
        Ok(Polynomial { n, degree_bound, terms: BTreeMap::new() })
    }

    /// Builds from `(monomial, coefficient)` pairs; terms above the bound are
    /// dropped and repeated monomials are summed.
    pub fn from_terms(
        n: usize,
        degree_bound: usize,
        terms: impl IntoIterator<Item = (MultiIndex, T)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n, degree_bound)?;
        for (m, c) in terms {
            if m.n() != n {
                return Err(Error::VariableMismatch(n, m.n()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn constant(n: usize, degree_bound: usize, c: T) -> Result<Self> {
        Self::from_terms(n, degree_bound, [(MultiIndex::zero(n), c)])
    }

    /// The coordinate function `x^k` (0-based `k`).
    pub fn variable(n: usize, degree_bound: usize, k: usize) -> Result<Self> {
        Self::from_terms(n, degree_bound, [(MultiIndex::unit(n, k), T::one())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &MultiIndex) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree of a stored term.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(MultiIndex::degree)
    }

    /// Adds `c x^m`, ignoring it when `m` is above the bound.
    pub fn add_term(&mut self, m: MultiIndex, c: T) {
        if m.degree() > self.degree_bound || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn set_coeff(&mut self, m: MultiIndex, c: T) {
        self.terms.remove(&m);
        self.add_term(m, c);
    }

    /// `self += factor * other`, truncated at `self`'s bound.
    pub fn add_scaled(&mut self, other: &Polynomial<T>, factor: &T) {
        debug_assert_eq!(self.n, other.n);
        if factor.is_zero() {
            return;
        }
        for (m, c) in other.terms.range(..) {
            if m.degree() > self.degree_bound {
                break;
            }
            self.add_term(m.clone(), c.clone() * factor.clone());
        }
    }

    pub fn scaled(&self, factor: &T) -> Polynomial<T> {
        let mut out = Polynomial { n: self.n, degree_bound: self.degree_bound, terms: BTreeMap::new() };
        out.add_scaled(self, factor);
        out
    }

    /// Same polynomial with a different bound; lowering the bound truncates.
    pub fn with_degree_bound(&self, bound: usize) -> Polynomial<T> {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() <= bound).map(|(m, c)| (m.clone(), c.clone())).collect();
        Polynomial { n: self.n, degree_bound: bound, terms }
    }

    /// Terms of exactly degree `d`, keeping the bound.
    pub fn homogeneous_part(&self, d: usize) -> Polynomial<T> {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        Polynomial { n: self.n, degree_bound: self.degree_bound, terms }
    }

    /// `∂/∂x^k`, as a polynomial with the bound lowered by one.
    pub fn derivative(&self, k: usize) -> Polynomial<T> {
        let mut out = Polynomial {
            n: self.n,
            degree_bound: self.degree_bound.saturating_sub(1),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.differentiate(k) {
                out.add_term(lowered, c.clone() * T::from_int(i64::from(e)));
            }
        }
        out
    }

    /// Multiplies by `c x^m` and truncates at `bound`.
    pub fn mul_monomial(&self, m: &MultiIndex, c: &T, bound: usize) -> Polynomial<T> {
        let mut out = Polynomial { n: self.n, degree_bound: bound, terms: BTreeMap::new() };
        let shift = m.degree();
        for (a, ca) in &self.terms {
            if a.degree() + shift > bound {
                break;
            }
            out.add_term(a.add(m), ca.clone() * c.clone());
        }
        out
    }

    /// Exact sum and difference, keeping the larger bound.
    pub fn add(&self, other: &Polynomial<T>) -> Result<Polynomial<T>> {
        self.check_n(other)?;
        let mut out = self.with_degree_bound(self.degree_bound.max(other.degree_bound));
        out.add_scaled(other, &T::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial<T>) -> Result<Polynomial<T>> {
        self.check_n(other)?;
        let mut out = self.with_degree_bound(self.degree_bound.max(other.degree_bound));
        out.add_scaled(other, &-T::one());
        Ok(out)
    }

    /// `self * other` with every term of degree above `bound` discarded.
    pub fn truncate_product(&self, other: &Polynomial<T>, bound: usize) -> Result<Polynomial<T>> {
        self.check_n(other)?;
        let mut out = Polynomial { n: self.n, degree_bound: bound, terms: BTreeMap::new() };
        accumulate_product(&mut out, self, other, &T::one());
        Ok(out)
    }

    fn check_n(&self, other: &Polynomial<T>) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableMismatch(self.n, other.n));
        }
        Ok(())
    }
}

/// `acc += factor * p * q`, truncated at `acc`'s bound.
pub(crate) fn accumulate_product<T: Scalar>(
    acc: &mut Polynomial<T>,
    p: &Polynomial<T>,
    q: &Polynomial<T>,
    factor: &T,
) {
    if factor.is_zero() {
        return;
    }
    let bound = acc.degree_bound;
    for (a, ca) in &p.terms {
        let da = a.degree();
        if da > bound {
            break;
        }
        let scaled = ca.clone() * factor.clone();
        for (b, cb) in &q.terms {
            if da + b.degree() > bound {
                break;
            }
            acc.add_term(a.add(b), scaled.clone() * cb.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};
    use proptest::prelude::*;

    type P = Polynomial<Rational>;

    fn poly(n: usize, bound: usize, terms: &[(&[u32], i64)]) -> P {
        P::from_terms(n, bound, terms.iter().map(|(e, c)| (MultiIndex::new(e.to_vec()), q(*c)))).unwrap()
    }

    #[test]
    fn truncate_product_examples() {
        let one_plus_x = poly(1, 3, &[(&[0], 1), (&[1], 1)]);
        assert_eq!(one_plus_x.truncate_product(&one_plus_x, 1).unwrap(), poly(1, 1, &[(&[0], 1), (&[1], 2)]));
        let x1 = P::variable(2, 2, 0).unwrap();
        let x2 = P::variable(2, 2, 1).unwrap();
        assert_eq!(x1.truncate_product(&x2, 2).unwrap(), poly(2, 2, &[(&[1, 1], 1)]));
        let x = P::variable(1, 1, 0).unwrap();
        assert!(x.truncate_product(&x, 1).unwrap().is_zero());
    }

    #[test]
    fn mismatched_variables() {
        let a = P::variable(1, 1, 0).unwrap();
        let b = P::variable(2, 1, 0).unwrap();
        assert_eq!(a.truncate_product(&b, 1), Err(Error::VariableMismatch(1, 2)));
        assert_eq!(P::zero(0, 1), Err(Error::ZeroVariables));
    }

    #[test]
    fn derivative_and_bound() {
        let p = poly(2, 3, &[(&[2, 1], 3), (&[0, 1], 5)]);
        let d = p.derivative(0);
        assert_eq!(d, poly(2, 2, &[(&[1, 1], 6)]));
        assert_eq!(p.derivative(1), poly(2, 2, &[(&[2, 0], 3), (&[0, 0], 5)]));
    }

    #[test]
    fn generic_over_floats() {
        let p = Polynomial::<f64>::from_terms(1, 2, [(MultiIndex::new(vec![1]), 0.5)]).unwrap();
        let sq = p.truncate_product(&p, 2).unwrap();
        assert_eq!(sq.coeff(&MultiIndex::new(vec![2])), 0.25);
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 0..6).prop_map(|ts| {
            P::from_terms(2, 4, ts.into_iter().map(|((a, b), c)| (MultiIndex::new(vec![a, b]), q(c)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn product_commutes(a in arb_poly(), b in arb_poly(), bound in 0usize..5) {
            prop_assert_eq!(a.truncate_product(&b, bound).unwrap(), b.truncate_product(&a, bound).unwrap());
        }

        #[test]
        fn product_associative_after_truncation(a in arb_poly(), b in arb_poly(), c in arb_poly(), bound in 0usize..5) {
            let exact = a.truncate_product(&b, 12).unwrap().truncate_product(&c, 12).unwrap().with_degree_bound(bound);
            let early = a.truncate_product(&b, bound).unwrap().truncate_product(&c, bound).unwrap();
            let other = a.truncate_product(&b.truncate_product(&c, bound).unwrap(), bound).unwrap();
            prop_assert_eq!(&exact, &early);
            prop_assert_eq!(&exact, &other);
        }
    }
}
