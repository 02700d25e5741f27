//! Connections in their own normal coordinates.
//!
//! Coordinates are normal for `Γ` exactly when `Γ^i_jk(x) x^j x^k ≡ 0`.
//! Expanding in Taylor coefficients, this is one linear identity per upper
//! index `i` and per monomial of degree `r + 2`, over the order-`r`
//! derivatives `Γ^i_{jk,α}` (`|α| = r`). The identity sums the slot over
//! every ordered pair of positions `(j, k)` drawn from the multiset
//! `{j, k, α_1, …, α_r}`; coincident terms are merged with their
//! multiplicity.
//!
//! In normal coordinates the stabilizer of a jet consists of linear fields
//! `V^k = b^k_s x^s`, and `L_V Γ = 0` splits into one system per
//! homogeneous degree of `Γ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_core::{kernel_basis, QMatrix};
use crate::jets::{monomials_of_degree, MultiIndex, Polynomial, VectorField};
use crate::lie_action::lie_derivative;
use crate::scalar::{q, Rational};
use crate::ConnectionJet;

/// Coefficient slot `Γ^upper_{lower.0 lower.1, α}` holding the derivative
/// `∂^α Γ^upper_{lower}(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSlot {
    pub upper: usize,
    pub lower: (usize, usize),
    pub alpha: MultiIndex,
}

/// Linear identities on the order-`r` slots of a connection in normal
/// coordinates; its kernel is the space of admissible order-`r` data.
#[derive(Clone, Debug)]
pub struct NormalConstraintSystem {
    pub n: usize,
    pub r: usize,
    /// Slot enumeration: `(upper, lower.0, lower.1)` major, `α` in graded-lex
    /// order within.
    pub slots: Vec<NormalSlot>,
    /// `(upper index, monomial of degree r + 2)` per row.
    pub rows: Vec<(usize, MultiIndex)>,
    pub matrix: QMatrix,
}

impl NormalConstraintSystem {
    pub fn slot_index(&self, upper: usize, j: usize, k: usize, alpha: &MultiIndex) -> usize {
        let alphas = monomials_of_degree(self.n, self.r);
        let a = alphas.iter().position(|m| m == alpha).expect("alpha of wrong degree");
        ((upper * self.n + j) * self.n + k) * alphas.len() + a
    }

    pub fn kernel_dim(&self) -> usize {
        self.matrix.cols() - self.matrix.rank()
    }
}

pub fn normal_constraint_matrix(n: usize, r: usize) -> Result<NormalConstraintSystem> {
    if n == 0 {
        return Err(Error::ZeroVariables);
    }
    let alphas = monomials_of_degree(n, r);
    let per_block = alphas.len();
    let slots: Vec<NormalSlot> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .flat_map(|(i, j, k)| {
            alphas.iter().map(move |a| NormalSlot { upper: i, lower: (j, k), alpha: a.clone() })
        })
        .collect();
    let alpha_pos = |a: &MultiIndex| alphas.iter().position(|m| m == a).expect("degree r multi-index");
    let betas = monomials_of_degree(n, r + 2);
    let rows: Vec<(usize, MultiIndex)> = (0..n).flat_map(|i| betas.iter().map(move |b| (i, b.clone()))).collect();
    let mut matrix = QMatrix::zeros(rows.len(), slots.len());
    for (row, (i, beta)) in rows.iter().enumerate() {
        let pos = beta.positions();
        for p in 0..pos.len() {
            for s in 0..pos.len() {
                if p == s {
                    continue;
                }
                let (j, k) = (pos[p], pos[s]);
                let rest: Vec<usize> =
                    pos.iter().enumerate().filter(|&(t, _)| t != p && t != s).map(|(_, &x)| x).collect();
                let alpha = MultiIndex::from_positions(n, &rest);
                let col = ((i * n + j) * n + k) * per_block + alpha_pos(&alpha);
                let v = matrix.get(row, col) + q(1);
                matrix.set(row, col, v);
            }
        }
    }
    Ok(NormalConstraintSystem { n, r, slots, rows, matrix })
}

/// `Γ^i_jk(x) x^j x^k ≡ 0` through degree `order + 2`, for every `i`.
pub fn is_normal_jet(g: &ConnectionJet) -> bool {
    let n = g.n();
    let bound = g.order() + 2;
    let one = q(1);
    (0..n).all(|i| {
        let mut acc = Polynomial::zero(n, bound).expect("n >= 1");
        for j in 0..n {
            for k in 0..n {
                let xx = MultiIndex::unit(n, j).add(&MultiIndex::unit(n, k));
                acc.add_scaled(&g.component(i, j, k).mul_monomial(&xx, &one, bound), &one);
            }
        }
        acc.is_zero()
    })
}

/// Random jet in normal coordinates: each order-`r` block is an integer
/// combination (coefficients in `[-coeff_range, coeff_range]`) of the
/// kernel basis of [`normal_constraint_matrix`]. Deterministic in `seed`.
pub fn sample_normal_jet(n: usize, k: usize, seed: u64, coeff_range: u64) -> Result<ConnectionJet> {
    if coeff_range == 0 {
        return Err(Error::InvalidArgument("coeff_range must be at least 1".into()));
    }
    let range = i64::try_from(coeff_range).map_err(|_| Error::InvalidArgument("coeff_range too large".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = ConnectionJet::zero(n, k)?;
    for r in 0..=k {
        let system = normal_constraint_matrix(n, r)?;
        let mut slot_values = vec![q(0); system.slots.len()];
        for basis in kernel_basis(&system.matrix) {
            let c = q(rng.gen_range(-range..=range));
            for (dst, b) in slot_values.iter_mut().zip(&basis) {
                *dst += &c * b;
            }
        }
        write_slots(&mut g, &system, &slot_values);
    }
    Ok(g)
}

/// Stores derivative-valued slots as Taylor coefficients `∂^α Γ(0) / α!`.
fn write_slots(g: &mut ConnectionJet, system: &NormalConstraintSystem, values: &[Rational]) {
    for (slot, v) in system.slots.iter().zip(values) {
        let taylor = v / Rational::from_integer(slot.alpha.factorial());
        g.component_mut(slot.upper, slot.lower.0, slot.lower.1).set_coeff(slot.alpha.clone(), taylor);
    }
}

/// Reads the order-`r` slots of a jet as derivatives `∂^α Γ(0)`.
pub fn read_slots(g: &ConnectionJet, system: &NormalConstraintSystem) -> Vec<Rational> {
    system
        .slots
        .iter()
        .map(|s| g.component(s.upper, s.lower.0, s.lower.1).coeff(&s.alpha) * Rational::from_integer(s.alpha.factorial()))
        .collect()
}

/// Constant jet with `γ^a_ab = 1` for `a < b`, `−1` for `a > b`, the
/// mirrored entries `γ^a_ba = −γ^a_ab`, and zero whenever the upper index
/// matches neither lower index.
pub fn witness_gamma(n: usize) -> Result<ConnectionJet> {
    if n < 2 {
        return Err(Error::InvalidArgument("witness_gamma needs n >= 2".into()));
    }
    let mut g = ConnectionJet::zero(n, 0)?;
    let zero = MultiIndex::zero(n);
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let v = if a < b { 1 } else { -1 };
            g.component_mut(a, a, b).set_coeff(zero.clone(), q(v));
            g.component_mut(a, b, a).set_coeff(zero.clone(), q(-v));
        }
    }
    Ok(g)
}

/// The `n = 2` first-order witness: zero constant part and
/// `Γ^i_{12,j} = 2`, `Γ^i_{21,j} = Γ^i_{kk,j} = −1` for `k ≠ j`,
/// `Γ^i_{jj,j} = 0`.
pub fn witness_n2_first_order() -> ConnectionJet {
    let mut g = ConnectionJet::zero(2, 1).expect("n = 2");
    for i in 0..2 {
        for j in 0..2 {
            let x = MultiIndex::unit(2, j);
            g.component_mut(i, 0, 1).set_coeff(x.clone(), q(2));
            g.component_mut(i, 1, 0).set_coeff(x.clone(), q(-1));
            let k = 1 - j;
            g.component_mut(i, k, k).set_coeff(x, q(-1));
        }
    }
    g
}

/// Column of the unknown `b^comp_var` in the stabilizer systems.
pub fn b_column(n: usize, comp: usize, var: usize) -> usize {
    comp * n + var
}

/// Linear stabilizer equations of the constant part, one row per `(i, j, l)`
/// with `i < j`:
/// `−γ^k_ij b^l_k + γ^l_kj b^k_i + γ^l_ik b^k_j = 0`.
#[derive(Clone, Debug)]
pub struct StabilizerSystem0 {
    pub n: usize,
    pub rows: Vec<(usize, usize, usize)>,
    pub matrix: QMatrix,
}

/// Linear stabilizer equations of the first-order part, one row per
/// `(i, j, l, s)`:
/// `Γ^l_{ij,k} b^k_s − Γ^k_{ij,s} b^l_k + Γ^l_{kj,s} b^k_i + Γ^l_{ik,s} b^k_j = 0`.
#[derive(Clone, Debug)]
pub struct StabilizerSystem1 {
    pub n: usize,
    pub rows: Vec<(usize, usize, usize, usize)>,
    pub matrix: QMatrix,
}

impl StabilizerSystem0 {
    pub fn kernel_dim(&self) -> usize {
        self.matrix.cols() - self.matrix.rank()
    }
}

impl StabilizerSystem1 {
    pub fn kernel_dim(&self) -> usize {
        self.matrix.cols() - self.matrix.rank()
    }
}

fn add_entry(m: &mut QMatrix, r: usize, c: usize, v: &Rational) {
    if v == &q(0) {
        return;
    }
    let cur = m.get(r, c) + v;
    m.set(r, c, cur);
}

pub fn stabilizer_system_0jet(g: &ConnectionJet) -> Result<StabilizerSystem0> {
    if !is_normal_jet(g) {
        return Err(Error::NotNormal);
    }
    let n = g.n();
    let zero = MultiIndex::zero(n);
    let gamma = |l: usize, i: usize, j: usize| g.component(l, i, j).coeff(&zero);
    let rows: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (0..n).map(move |l| (i, j, l))))
        .collect();
    let mut matrix = QMatrix::zeros(rows.len(), n * n);
    for (r, &(i, j, l)) in rows.iter().enumerate() {
        for k in 0..n {
            add_entry(&mut matrix, r, b_column(n, l, k), &-gamma(k, i, j));
            add_entry(&mut matrix, r, b_column(n, k, i), &gamma(l, k, j));
            add_entry(&mut matrix, r, b_column(n, k, j), &gamma(l, i, k));
        }
    }
    Ok(StabilizerSystem0 { n, rows, matrix })
}

pub fn stabilizer_system_1jet(g: &ConnectionJet) -> Result<StabilizerSystem1> {
    if g.order() < 1 {
        return Err(Error::InvalidArgument("first-order system needs a jet of order >= 1".into()));
    }
    if !is_normal_jet(g) {
        return Err(Error::NotNormal);
    }
    let n = g.n();
    // Γ^l_{ij,s} = ∂_s Γ^l_ij (0)
    let d = |l: usize, i: usize, j: usize, s: usize| g.component(l, i, j).coeff(&MultiIndex::unit(n, s));
    let rows: Vec<(usize, usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).flat_map(move |l| (0..n).map(move |s| (i, j, l, s)))))
        .collect();
    let mut matrix = QMatrix::zeros(rows.len(), n * n);
    for (r, &(i, j, l, s)) in rows.iter().enumerate() {
        for k in 0..n {
            add_entry(&mut matrix, r, b_column(n, k, s), &d(l, i, j, k));
            add_entry(&mut matrix, r, b_column(n, l, k), &-d(k, i, j, s));
            add_entry(&mut matrix, r, b_column(n, k, i), &d(l, k, j, s));
            add_entry(&mut matrix, r, b_column(n, k, j), &d(l, i, k, s));
        }
    }
    Ok(StabilizerSystem1 { n, rows, matrix })
}

/// Matrix of `b ↦ L_{b·x} Γ_m` for the homogeneous degree-`m` part `Γ_m`,
/// computed through the general Lie derivative. Rows are `(l, i, j)` major
/// with degree-`m` monomials within; `n^2` columns as in [`b_column`].
pub fn linear_stabilizer_block(g: &ConnectionJet, m: usize) -> Result<QMatrix> {
    let n = g.n();
    let part = g.with_order(m.max(g.order())).homogeneous_part(m);
    let monos = monomials_of_degree(n, m);
    let columns = (0..n * n)
        .map(|col| {
            let mut b = vec![q(0); n * n];
            b[col] = q(1);
            let v = VectorField::linear(n, m + 2, &b)?;
            let t = lie_derivative(&v, &part)?;
            Ok(t.components().iter().flat_map(|c| monos.iter().map(move |mono| c.coeff(mono))).collect())
        })
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    QMatrix::from_columns(n * n * n * monos.len(), columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::binomial;
    use crate::jets::random_connection_jet;

    #[test]
    fn constraint_kernel_dimensions() {
        assert_eq!(normal_constraint_matrix(2, 0).unwrap().kernel_dim(), 2);
        assert_eq!(normal_constraint_matrix(2, 1).unwrap().kernel_dim(), 8);
        for r in 0..4 {
            assert_eq!(normal_constraint_matrix(1, r).unwrap().kernel_dim(), 0);
        }
        // one independent identity per (i, degree r+2 monomial)
        for n in 2..4u64 {
            for r in 0..3u64 {
                let sys = normal_constraint_matrix(n as usize, r as usize).unwrap();
                let expected = n * (n * n * binomial(n + r - 1, n - 1) - binomial(n + r + 1, n - 1));
                assert_eq!(sys.kernel_dim() as u64, expected, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn s_operator_row_sums() {
        for r in 0..4usize {
            let sys = normal_constraint_matrix(3, r).unwrap();
            for row in sys.matrix.row_iter() {
                let total: Rational = row.iter().sum();
                assert_eq!(total, q(((r + 2) * (r + 1)) as i64));
            }
        }
    }

    #[test]
    fn s_operator_first_order_rows() {
        // Γ^i_{12,1} + Γ^i_{21,1} + Γ^i_{11,2} = 0, each with multiplicity 2
        let sys = normal_constraint_matrix(2, 1).unwrap();
        let beta = MultiIndex::new(vec![2, 1]);
        let row = sys.rows.iter().position(|(i, b)| *i == 0 && *b == beta).unwrap();
        let x1 = MultiIndex::unit(2, 0);
        let x2 = MultiIndex::unit(2, 1);
        for (j, k, a) in [(0, 1, &x1), (1, 0, &x1), (0, 0, &x2)] {
            assert_eq!(sys.matrix.get(row, sys.slot_index(0, j, k, a)), &q(2));
        }
        let nonzero = sys.matrix.row(row).iter().filter(|v| **v != q(0)).count();
        assert_eq!(nonzero, 3);
    }

    #[test]
    fn constant_jets() {
        let mut g = ConnectionJet::zero(2, 0).unwrap();
        g.component_mut(0, 0, 1).add_term(MultiIndex::zero(2), q(3));
        g.component_mut(0, 1, 0).add_term(MultiIndex::zero(2), q(-3));
        assert!(is_normal_jet(&g));
        let mut h = ConnectionJet::zero(2, 0).unwrap();
        h.component_mut(0, 0, 0).add_term(MultiIndex::zero(2), q(1));
        assert!(!is_normal_jet(&h));
    }

    #[test]
    fn samples_are_normal() {
        for seed in 0..6 {
            assert!(is_normal_jet(&sample_normal_jet(2, 1, seed, 10).unwrap()));
            assert!(is_normal_jet(&sample_normal_jet(3, 2, seed, 10).unwrap()));
        }
        let g = sample_normal_jet(3, 0, 4, 10).unwrap();
        let zero = MultiIndex::zero(3);
        for (l, i, j) in g.index_triples() {
            assert_eq!(g.component(l, i, j).coeff(&zero), -g.component(l, j, i).coeff(&zero));
        }
        assert!(sample_normal_jet(1, 3, 9, 10).unwrap().is_zero());
        assert_eq!(sample_normal_jet(2, 2, 5, 10).unwrap(), sample_normal_jet(2, 2, 5, 10).unwrap());
    }

    #[test]
    fn generic_jets_are_not_normal() {
        assert!(!is_normal_jet(&random_connection_jet(2, 1, 3, 10).unwrap()));
    }

    #[test]
    fn slots_round_trip_through_taylor_coefficients() {
        let g = sample_normal_jet(2, 2, 8, 10).unwrap();
        for r in 0..=2 {
            let sys = normal_constraint_matrix(2, r).unwrap();
            let values = read_slots(&g, &sys);
            assert!(sys.matrix.mul_vec(&values).iter().all(|v| *v == q(0)));
        }
    }

    #[test]
    fn witness_gamma_entries() {
        let g = witness_gamma(3).unwrap();
        let z = MultiIndex::zero(3);
        let at = |l, i, j| g.component(l, i, j).coeff(&z);
        assert_eq!((at(0, 0, 1), at(0, 0, 2), at(1, 1, 2)), (q(1), q(1), q(1)));
        assert_eq!((at(1, 1, 0), at(2, 2, 0), at(2, 2, 1)), (q(-1), q(-1), q(-1)));
        assert_eq!((at(0, 1, 0), at(1, 0, 1)), (q(-1), q(1)));
        assert_eq!(at(0, 1, 2), q(0));
        assert!(is_normal_jet(&g));
        let g2 = witness_gamma(2).unwrap();
        assert_eq!(g2.component(0, 0, 1).coeff(&MultiIndex::zero(2)), q(1));
        assert_eq!(g2.component(1, 1, 0).coeff(&MultiIndex::zero(2)), q(-1));
        assert!(witness_gamma(1).is_err());
    }

    #[test]
    fn first_order_witness_satisfies_identities() {
        let g = witness_n2_first_order();
        let x = |s| MultiIndex::unit(2, s);
        for i in 0..2 {
            let c = |a, b, s| g.component(i, a, b).coeff(&x(s));
            assert_eq!(c(0, 1, 0) + c(1, 0, 0) + c(0, 0, 1), q(0));
            assert_eq!(c(0, 1, 1) + c(1, 0, 1) + c(1, 1, 0), q(0));
            assert_eq!((c(0, 0, 0), c(1, 1, 1)), (q(0), q(0)));
        }
        assert!(is_normal_jet(&g));
    }

    #[test]
    fn zero_order_systems() {
        for n in 4..7 {
            let sys = stabilizer_system_0jet(&witness_gamma(n).unwrap()).unwrap();
            assert_eq!(sys.matrix.rows(), n * n * (n - 1) / 2);
            assert_eq!(sys.kernel_dim(), 0);
        }
        // For n = 3 the explicit witness is degenerate: V = x2 (∂1 + ∂3)
        // (1-based) survives, since no row constrains the adjacent
        // off-diagonal b^1_2, b^3_2.
        let sys3 = stabilizer_system_0jet(&witness_gamma(3).unwrap()).unwrap();
        let mut kernel = vec![q(0); 9];
        kernel[b_column(3, 0, 1)] = q(1);
        kernel[b_column(3, 2, 1)] = q(1);
        assert_eq!(sys3.matrix.kernel_basis(), vec![kernel]);
        // generic antisymmetric γ in dimension 3 keep a one-dimensional kernel
        for seed in 0..5 {
            let g = sample_normal_jet(3, 0, seed, 10).unwrap();
            assert_eq!(stabilizer_system_0jet(&g).unwrap().kernel_dim(), 1);
        }
        let generic = sample_normal_jet(2, 0, 21, 10).unwrap();
        let sys = stabilizer_system_0jet(&generic).unwrap();
        assert_eq!((sys.matrix.rows(), sys.matrix.cols()), (2, 4));
        assert_eq!(sys.matrix.rank(), 2);
        let flat = stabilizer_system_0jet(&ConnectionJet::zero(2, 0).unwrap()).unwrap();
        assert!(flat.matrix.is_zero());
        assert_eq!(flat.kernel_dim(), 4);
        assert_eq!(
            stabilizer_system_0jet(&random_connection_jet(2, 0, 1, 10).unwrap()).unwrap_err(),
            Error::NotNormal
        );
    }

    #[test]
    fn first_order_systems() {
        let sys = stabilizer_system_1jet(&witness_n2_first_order()).unwrap();
        assert_eq!((sys.matrix.rows(), sys.matrix.cols()), (16, 4));
        assert_eq!(sys.kernel_dim(), 0);
        let zero_part = sample_normal_jet(2, 0, 3, 10).unwrap().with_order(1);
        assert_eq!(stabilizer_system_1jet(&zero_part).unwrap().kernel_dim(), 4);
        for seed in 0..5 {
            let g = sample_normal_jet(2, 1, seed, 10).unwrap();
            assert_eq!(stabilizer_system_1jet(&g).unwrap().kernel_dim(), 0);
        }
        // four of the sixteen rows vanish identically on normal jets
        let g = sample_normal_jet(2, 1, 17, 10).unwrap();
        let sys = stabilizer_system_1jet(&g).unwrap();
        let zero_rows = sys.matrix.row_iter().filter(|r| r.iter().all(|v| *v == q(0))).count();
        assert_eq!(zero_rows, 4);
    }

    #[test]
    fn direct_systems_match_lie_derivative_blocks() {
        for seed in 0..4 {
            let n = 2 + (seed % 2) as usize;
            let g = sample_normal_jet(n, 1, seed, 10).unwrap();
            let block0 = linear_stabilizer_block(&g, 0).unwrap();
            let sys0 = stabilizer_system_0jet(&g).unwrap();
            for (r, &(i, j, l)) in sys0.rows.iter().enumerate() {
                let br = (l * n + i) * n + j;
                assert_eq!(sys0.matrix.row(r), block0.row(br));
            }
            let block1 = linear_stabilizer_block(&g, 1).unwrap();
            let sys1 = stabilizer_system_1jet(&g).unwrap();
            for (r, &(i, j, l, s)) in sys1.rows.iter().enumerate() {
                let br = ((l * n + i) * n + j) * n + s;
                assert_eq!(sys1.matrix.row(r), block1.row(br));
            }
        }
    }
}
