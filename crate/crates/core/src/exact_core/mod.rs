//! Exact rational linear algebra and counting helpers.

mod bareiss;
mod matrix;

pub use bareiss::{echelon, Echelon};
pub use matrix::Matrix;

use crate::scalar::Rational;

/// Dense matrix over the rationals.
pub type QMatrix = Matrix<Rational>;
/// Vector over the rationals.
pub type QVector = Vec<Rational>;

/// Binomial coefficient `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 1..=b as u128 {
        // acc * (a - b + i) is divisible by i since acc = C(a-b+i-1, i-1).
        acc = acc * (a as u128 - b as u128 + i) / i;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Exact rank over the rationals.
pub fn rank(m: &QMatrix) -> usize {
    m.rank()
}

/// Basis of the right null space, in reduced echelon parametrization.
pub fn kernel_basis(m: &QMatrix) -> Vec<QVector> {
    m.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&qm(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&QMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&QMatrix::identity(3)), 3);
        assert_eq!(rank(&QMatrix::zeros(3, 5)), 0);
        assert_eq!(rank(&QMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let m = Matrix::from_rows(vec![
            vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into())],
            vec![q(3), q(2)],
        ])
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&qm(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
        assert!(kernel_basis(&QMatrix::identity(2)).is_empty());
        let m = qm(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * q(-1), &k[0][1] * q(2));
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_of_empty_rows_is_whole_space() {
        let k = kernel_basis(&QMatrix::zeros(0, 3));
        assert_eq!(k.len(), 3);
        assert_eq!(k[1], vec![q(0), q(1), q(0)]);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(36, 6), 1_947_792);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
        })
    }

    fn to_q(rows: &[Vec<i64>], cols_hint: usize) -> QMatrix {
        if rows.is_empty() {
            return QMatrix::zeros(0, cols_hint);
        }
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
            .unwrap()
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in small_matrix()) {
            let m = to_q(&rows, 0);
            let kernel = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            prop_assert!(rank(&m) <= m.rows().min(m.cols()));
        }

        #[test]
        fn rank_invariant_under_row_ops(rows in small_matrix(), seed in 0u64..1000, num in 1i64..7, den in 1i64..7) {
            prop_assume!(!rows.is_empty());
            let m = to_q(&rows, 0);
            let base = rank(&m);
            let mut permuted = rows.clone();
            let len = permuted.len();
            permuted.rotate_left((seed as usize) % len);
            prop_assert_eq!(rank(&to_q(&permuted, 0)), base);
            let scale = if seed % 2 == 0 { Rational::new(num.into(), den.into()) } else { -Rational::new(num.into(), den.into()) };
            let mut scaled = m.clone();
            let target = (seed as usize) % len;
            for c in 0..scaled.cols() {
                let v = scaled.get(target, c) * &scale;
                scaled.set(target, c, v);
            }
            prop_assert_eq!(rank(&scaled), base);
        }

        #[test]
        fn pascal(a in 1u64..40, b in 1u64..40) {
            prop_assert_eq!(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b));
        }
    }
}
