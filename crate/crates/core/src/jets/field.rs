use std::marker::PhantomData;

use super::monomial::MultiIndex;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::exact_core::binomial;
use crate::scalar::Scalar;

/// Marker distinguishing connection jets from tensor jets, which share one
/// storage layout but transform differently.
pub trait JetKind: Clone + Copy + std::fmt::Debug + PartialEq + Send + Sync + 'static {
    const NAME: &'static str;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Connection;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tensor;

impl JetKind for Connection {
    const NAME: &'static str = "connection";
}

impl JetKind for Tensor {
    const NAME: &'static str = "tensor";
}

/// Jet of order `order` of a three-index object `X^l_{ij}` on `R^n`:
/// `n^3` truncated polynomials, component `(l, i, j)` at
/// `l*n^2 + i*n + j` (indices 0-based, upper index first).
#[derive(Clone, Debug, PartialEq)]
pub struct Jet3<T, K> {
    n: usize,
    order: usize,
    components: Vec<Polynomial<T>>,
    _kind: PhantomData<K>,
}

impl<T: Scalar, K: JetKind> Jet3<T, K> {
    pub fn zero(n: usize, order: usize) -> Result<Self> {
        let p = Polynomial::zero(n, order)?;
        Ok(Jet3 { n, order, components: vec![p; n * n * n], _kind: PhantomData })
    }

    pub fn from_components(n: usize, order: usize, components: Vec<Polynomial<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroVariables);
        }
        if components.len() != n * n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} components, got {}",
                n * n * n,
                components.len()
            )));
        }
        for c in &components {
            if c.n() != n {
                return Err(Error::VariableMismatch(n, c.n()));
            }
            if c.degree_bound() != order {
                return Err(Error::InvalidArgument(format!(
                    "component degree bound {} differs from jet order {order}",
                    c.degree_bound()
                )));
            }
        }
        Ok(Jet3 { n, order, components, _kind: PhantomData })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self, l: usize, i: usize, j: usize) -> usize {
        (l * self.n + i) * self.n + j
    }

    pub fn component(&self, l: usize, i: usize, j: usize) -> &Polynomial<T> {
        &self.components[self.index(l, i, j)]
    }

    pub fn component_mut(&mut self, l: usize, i: usize, j: usize) -> &mut Polynomial<T> {
        let idx = self.index(l, i, j);
        &mut self.components[idx]
    }

    pub fn components(&self) -> &[Polynomial<T>] {
        &self.components
    }

    /// `(l, i, j)` triples in storage order.
    pub fn index_triples(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |l| (0..n).flat_map(move |i| (0..n).map(move |j| (l, i, j))))
    }

    /// Number of coefficient slots: `n^3 C(n+k, n)`.
    pub fn slot_count(&self) -> u64 {
        (self.n as u64).pow(3) * binomial((self.n + self.order) as u64, self.n as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Projection onto jets of a lower order.
    pub fn project(&self, order: usize) -> Result<Self> {
        if order > self.order {
            return Err(Error::ProjectionOrder { order: self.order, target: order });
        }
        Ok(self.with_order(order))
    }

    /// Same coefficients with a new order; raising the order pads with zeros,
    /// which is only meaningful when the jet is an exact polynomial.
    pub fn with_order(&self, order: usize) -> Self {
        Jet3 {
            n: self.n,
            order,
            components: self.components.iter().map(|c| c.with_degree_bound(order)).collect(),
            _kind: PhantomData,
        }
    }

    /// The homogeneous degree-`d` part, as a jet of order `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        Jet3 {
            n: self.n,
            order: d,
            components: self.components.iter().map(|c| c.homogeneous_part(d).with_degree_bound(d)).collect(),
            _kind: PhantomData,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VariableMismatch(self.n, other.n));
        }
        let order = self.order.max(other.order);
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b).map(|p| p.with_degree_bound(order)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Jet3 { n: self.n, order, components, _kind: PhantomData })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let neg = Jet3 {
            n: other.n,
            order: other.order,
            components: other.components.iter().map(|c| c.scaled(&-T::one())).collect(),
            _kind: PhantomData,
        };
        self.add(&neg)
    }

    /// Coordinates in the canonical basis: components in storage order, and
    /// within each component the monomials of degree `0..=order` in
    /// graded-lex order.
    pub fn coordinates(&self) -> Vec<T> {
        let monos = super::monomials_in_range(self.n, 0, self.order);
        self.components.iter().flat_map(|c| monos.iter().map(move |m| c.coeff(m))).collect()
    }

    pub fn from_coordinates(n: usize, order: usize, coords: &[T]) -> Result<Self> {
        let monos = super::monomials_in_range(n, 0, order);
        if coords.len() != n * n * n * monos.len() {
            return Err(Error::InvalidArgument("coordinate vector has the wrong length".into()));
        }
        let components = coords
            .chunks(monos.len())
            .map(|chunk| Polynomial::from_terms(n, order, monos.iter().cloned().zip(chunk.iter().cloned())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_components(n, order, components)
    }

    /// Reinterprets the coefficients as a jet of another kind.
    pub fn cast<K2: JetKind>(self) -> Jet3<T, K2> {
        Jet3 { n: self.n, order: self.order, components: self.components, _kind: PhantomData }
    }
}

/// Truncated vector field `V = V^c ∂_c` vanishing at the origin, with
/// components of degree `1..=max_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField<T> {
    n: usize,
    max_degree: usize,
    components: Vec<Polynomial<T>>,
}

impl<T: Scalar> VectorField<T> {
    /// Rejects components with a nonzero constant term.
    pub fn new(n: usize, max_degree: usize, components: Vec<Polynomial<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroVariables);
        }
        if components.len() != n {
            return Err(Error::InvalidArgument(format!("expected {n} components, got {}", components.len())));
        }
        let zero = MultiIndex::zero(n);
        for (c, p) in components.iter().enumerate() {
            if p.n() != n {
                return Err(Error::VariableMismatch(n, p.n()));
            }
            if !p.coeff(&zero).is_zero() {
                return Err(Error::NonzeroConstantTerm(c));
            }
        }
        let components = components.into_iter().map(|p| p.with_degree_bound(max_degree)).collect();
        Ok(VectorField { n, max_degree, components })
    }

    pub fn zero(n: usize, max_degree: usize) -> Result<Self> {
        let p = Polynomial::zero(n, max_degree)?;
        Ok(VectorField { n, max_degree, components: vec![p; n] })
    }

    /// `c x^m ∂_component`.
    pub fn monomial(n: usize, max_degree: usize, component: usize, m: MultiIndex, c: T) -> Result<Self> {
        let mut v = Self::zero(n, max_degree)?;
        if m.is_zero() {
            return Err(Error::NonzeroConstantTerm(component));
        }
        v.components[component].add_term(m, c);
        Ok(v)
    }

    /// Linear field `V^c = Σ_s b[c*n + s] x^s`.
    pub fn linear(n: usize, max_degree: usize, b: &[T]) -> Result<Self> {
        if b.len() != n * n {
            return Err(Error::InvalidArgument("linear field needs n^2 coefficients".into()));
        }
        let components = (0..n)
            .map(|c| Polynomial::from_terms(n, max_degree, (0..n).map(|s| (MultiIndex::unit(n, s), b[c * n + s].clone()))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, max_degree, components)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn component(&self, c: usize) -> &Polynomial<T> {
        &self.components[c]
    }

    pub fn components(&self) -> &[Polynomial<T>] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Lowest degree among stored terms of all components.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.components.iter().filter_map(Polynomial::lowest_degree).min()
    }

    /// Raising pads with zeros; lowering truncates.
    pub fn with_max_degree(&self, max_degree: usize) -> Self {
        VectorField {
            n: self.n,
            max_degree,
            components: self.components.iter().map(|c| c.with_degree_bound(max_degree)).collect(),
        }
    }

    /// Number of coordinates: `n (C(n+d, n) - 1)`.
    pub fn coordinate_count(n: usize, max_degree: usize) -> usize {
        n * (binomial((n + max_degree) as u64, n as u64) as usize - 1)
    }

    /// Coordinates component-major, monomials of degree `1..=max_degree` in
    /// graded-lex order.
    pub fn coordinates(&self) -> Vec<T> {
        let monos = super::monomials_in_range(self.n, 1, self.max_degree);
        self.components.iter().flat_map(|c| monos.iter().map(move |m| c.coeff(m))).collect()
    }

    pub fn from_coordinates(n: usize, max_degree: usize, coords: &[T]) -> Result<Self> {
        let monos = super::monomials_in_range(n, 1, max_degree);
        if coords.len() != n * monos.len() {
            return Err(Error::InvalidArgument("coordinate vector has the wrong length".into()));
        }
        let components = coords
            .chunks(monos.len().max(1))
            .take(n)
            .map(|chunk| Polynomial::from_terms(n, max_degree, monos.iter().cloned().zip(chunk.iter().cloned())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, max_degree, components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    type CJ = Jet3<Rational, Connection>;

    #[test]
    fn vector_field_rejects_constant_term() {
        let p = Polynomial::constant(2, 2, q(1)).unwrap();
        let z = Polynomial::zero(2, 2).unwrap();
        assert_eq!(VectorField::new(2, 2, vec![z, p]).unwrap_err(), Error::NonzeroConstantTerm(1));
        assert!(VectorField::<Rational>::monomial(2, 2, 0, MultiIndex::zero(2), q(1)).is_err());
    }

    #[test]
    fn projection() {
        let mut g = CJ::zero(2, 2).unwrap();
        for (d, m) in [(0u32, MultiIndex::zero(2)), (1, MultiIndex::unit(2, 0)), (2, MultiIndex::new(vec![1, 1]))] {
            g.component_mut(0, 1, 1).add_term(m, q(i64::from(d) + 1));
        }
        let p1 = g.project(1).unwrap();
        assert_eq!(p1.order(), 1);
        assert_eq!(p1.component(0, 1, 1).num_terms(), 2);
        assert_eq!(g.project(2).unwrap(), g);
        assert_eq!(g.project(2).unwrap().project(1).unwrap(), p1);
        assert_eq!(p1.project(2).unwrap_err(), Error::ProjectionOrder { order: 1, target: 2 });
    }

    #[test]
    fn slot_count_matches_coordinates() {
        for n in 1..4 {
            for k in 0..3 {
                let g = CJ::zero(n, k).unwrap();
                assert_eq!(g.coordinates().len() as u64, g.slot_count());
            }
        }
        assert_eq!(CJ::zero(0, 1).unwrap_err(), Error::ZeroVariables);
    }

    #[test]
    fn coordinates_round_trip() {
        let g = crate::jets::random_connection_jet::<Rational>(2, 2, 7, 5).unwrap();
        assert_eq!(CJ::from_coordinates(2, 2, &g.coordinates()).unwrap(), g);
        let v = crate::jets::random_vector_field::<Rational>(3, 1, 3, 9, 4).unwrap();
        assert_eq!(VectorField::from_coordinates(3, 3, &v.coordinates()).unwrap(), v);
        assert_eq!(v.coordinates().len(), VectorField::<Rational>::coordinate_count(3, 3));
    }
}
