//! Truncated polynomials and jets of connections, (1,2)-tensors and
//! origin-vanishing vector fields.

mod field;
mod json;
mod monomial;
mod polynomial;
mod random;

pub use field::{Connection, Jet3, JetKind, Tensor, VectorField};
pub use json::{jet_from_json, jet_to_json};
pub use monomial::{jet_dimension_count, monomials_in_range, monomials_of_degree, MultiIndex};
pub use polynomial::Polynomial;
pub use random::{random_connection_jet, random_vector_field};

pub(crate) use polynomial::accumulate_product;

/// `p * q` truncated at `bound`.
pub fn truncate_product<T: crate::Scalar>(
    p: &Polynomial<T>,
    q: &Polynomial<T>,
    bound: usize,
) -> crate::Result<Polynomial<T>> {
    p.truncate_product(q, bound)
}

/// Drops every coefficient of degree above `order`.
pub fn project_jet<T: crate::Scalar, K: JetKind>(g: &Jet3<T, K>, order: usize) -> crate::Result<Jet3<T, K>> {
    g.project(order)
}
