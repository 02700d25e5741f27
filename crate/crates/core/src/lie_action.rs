//! Infinitesimal action of origin-preserving vector fields on connection
//! jets, and its matrix in the canonical jet bases.
//!
//! In coordinates,
//!
//! ```text
//! (L_V Γ)^l_ij = V^k ∂_k Γ^l_ij − Γ^k_ij ∂_k V^l + Γ^l_kj ∂_i V^k + Γ^l_ik ∂_j V^k + ∂_i ∂_j V^l
//! ```
//!
//! The `k`-jet of the result depends only on the `k`-jet of `Γ` and the
//! `(k+2)`-jet of `V`, since `V(0) = 0`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_core::Matrix;
use crate::jets::{accumulate_product, monomials_in_range, Connection, Jet3, MultiIndex, Polynomial, Tensor, VectorField};
use crate::scalar::{Rational, Scalar};

/// `j^k(L_V Γ)` for `k = g.order()`. Requires `v` to be given through
/// degree `k + 2`.
pub fn lie_derivative<T: Scalar>(v: &VectorField<T>, g: &Jet3<T, Connection>) -> Result<Jet3<T, Tensor>> {
    check_inputs(v, g.n(), g.order() + 2)?;
    derivative_core(v, g.n(), g.order(), g.components(), true)
}

/// Lie derivative of a (1,2)-tensor jet: the connection formula without the
/// second-derivative term. Requires `v` through degree `order + 1`.
pub fn tensor_lie_derivative<T: Scalar>(v: &VectorField<T>, t: &Jet3<T, Tensor>) -> Result<Jet3<T, Tensor>> {
    check_inputs(v, t.n(), t.order() + 1)?;
    derivative_core(v, t.n(), t.order(), t.components(), false)
}

fn check_inputs<T: Scalar>(v: &VectorField<T>, n: usize, need: usize) -> Result<()> {
    if v.n() != n {
        return Err(Error::VariableMismatch(v.n(), n));
    }
    if v.max_degree() < need {
        return Err(Error::InsufficientDegree { have: v.max_degree(), need });
    }
    Ok(())
}

fn derivative_core<T: Scalar>(
    v: &VectorField<T>,
    n: usize,
    order: usize,
    comps: &[Polynomial<T>],
    inhomogeneous: bool,
) -> Result<Jet3<T, Tensor>> {
    let idx = |l: usize, i: usize, j: usize| (l * n + i) * n + j;
    let v_low: Vec<Polynomial<T>> = v.components().iter().map(|c| c.with_degree_bound(order)).collect();
    // dv[c][s] = ∂_s V^c
    let dv: Vec<Vec<Polynomial<T>>> = v
        .components()
        .iter()
        .map(|c| (0..n).map(|s| c.derivative(s).with_degree_bound(order)).collect())
        .collect();
    let one = T::one();
    let minus_one = -T::one();
    let mut out = Vec::with_capacity(n * n * n);
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                let gamma = &comps[idx(l, i, j)];
                let mut acc = Polynomial::zero(n, order)?;
                for k in 0..n {
                    accumulate_product(&mut acc, &v_low[k], &gamma.derivative(k), &one);
                    accumulate_product(&mut acc, &comps[idx(k, i, j)], &dv[l][k], &minus_one);
                    accumulate_product(&mut acc, &comps[idx(l, k, j)], &dv[k][i], &one);
                    accumulate_product(&mut acc, &comps[idx(l, i, k)], &dv[k][j], &one);
                }
                if inhomogeneous {
                    acc.add_scaled(&v.component(l).derivative(i).derivative(j), &one);
                }
                out.push(acc);
            }
        }
    }
    Jet3::from_components(n, order, out)
}

/// `[v, w]^i = v^k ∂_k w^i − w^k ∂_k v^i`, truncated at `bound`.
pub fn vf_bracket<T: Scalar>(v: &VectorField<T>, w: &VectorField<T>, bound: usize) -> Result<VectorField<T>> {
    if v.n() != w.n() {
        return Err(Error::VariableMismatch(v.n(), w.n()));
    }
    let n = v.n();
    let one = T::one();
    let minus_one = -T::one();
    let components = (0..n)
        .map(|i| {
            let mut acc = Polynomial::zero(n, bound)?;
            for k in 0..n {
                accumulate_product(&mut acc, v.component(k), &w.component(i).derivative(k), &one);
                accumulate_product(&mut acc, w.component(k), &v.component(i).derivative(k), &minus_one);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(n, bound, components)
}

/// Matrix of the linear map `V ↦ j^k(L_V Γ)` at a fixed jet `Γ`.
///
/// Rows follow [`Jet3::coordinates`], columns follow
/// [`VectorField::coordinates`] for fields of degree `1..=k+2`.
#[derive(Clone, Debug)]
pub struct ActionMatrix<T = Rational> {
    pub base: Matrix<T>,
    pub n: usize,
    pub k: usize,
    /// `(l, i, j, monomial)` per row.
    pub row_basis: Vec<(usize, usize, usize, MultiIndex)>,
    /// `(component, monomial)` per column.
    pub col_basis: Vec<(usize, MultiIndex)>,
}

pub fn action_matrix<T: Scalar>(g: &Jet3<T, Connection>) -> Result<ActionMatrix<T>> {
    let (n, k) = (g.n(), g.order());
    let col_monos = monomials_in_range(n, 1, k + 2);
    let col_basis: Vec<(usize, MultiIndex)> =
        (0..n).flat_map(|c| col_monos.iter().map(move |m| (c, m.clone()))).collect();
    let row_monos = monomials_in_range(n, 0, k);
    let row_basis = g
        .index_triples()
        .flat_map(|(l, i, j)| row_monos.iter().map(move |m| (l, i, j, m.clone())))
        .collect::<Vec<_>>();
    let columns = col_basis
        .par_iter()
        .map(|(c, m)| {
            let field = VectorField::monomial(n, k + 2, *c, m.clone(), T::one())?;
            Ok(lie_derivative(&field, g)?.coordinates())
        })
        .collect::<Result<Vec<_>>>()?;
    let base = Matrix::from_columns(row_basis.len(), columns)?;
    Ok(ActionMatrix { base, n, k, row_basis, col_basis })
}

impl<T: Scalar> ActionMatrix<T> {
    /// `base · coords(v)`, as a tensor jet.
    pub fn apply(&self, v: &VectorField<T>) -> Result<Jet3<T, Tensor>> {
        check_inputs(v, self.n, self.k + 2)?;
        let coords = v.with_max_degree(self.k + 2).coordinates();
        Jet3::from_coordinates(self.n, self.k, &self.base.mul_vec(&coords))
    }
}

impl ActionMatrix<Rational> {
    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// Dimension of the stabilizer subalgebra of vector-field jets.
    pub fn kernel_dim(&self) -> usize {
        self.base.cols() - self.rank()
    }
}
