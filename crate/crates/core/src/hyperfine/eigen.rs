//! Cyclic Jacobi diagonalization of small real symmetric matrices.

use crate::num::{lit, Real};

/// Eigen-decomposition of a symmetric matrix.
///
/// Returns eigenvalues and the matrix whose *columns* are the matching
/// orthonormal eigenvectors. Order is whatever the sweeps leave behind.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_eigen<T: Real, const N: usize>(mut a: [[T; N]; N]) -> ([T; N], [[T; N]; N]) {
    let mut v = [[T::zero(); N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let scale = a
        .iter()
        .flatten()
        .fold(T::zero(), |m, x| m.max(x.abs()))
        .max(T::min_positive_value());

    for _sweep in 0..64 {
        let off: T = (0..N)
            .flat_map(|p| (p + 1..N).map(move |q| (p, q)))
            .fold(T::zero(), |s, (p, q)| s + a[p][q] * a[p][q]);
        if off.sqrt() <= T::epsilon() * scale * lit(1e-3) {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                if a[p][q] == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (lit::<T>(2.0) * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..N {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut values = [T::zero(); N];
    for (i, x) in values.iter_mut().enumerate() {
        *x = a[i][i];
    }
    (values, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let (vals, vecs) = symmetric_eigen([[2.0f64, 1.0], [1.0, 2.0]]);
        let mut sorted = vals;
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((sorted[0] - 1.0).abs() < 1e-15 && (sorted[1] - 3.0).abs() < 1e-15);
        for j in 0..2 {
            let av0 = 2.0 * vecs[0][j] + vecs[1][j];
            assert!((av0 - vals[j] * vecs[0][j]).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_input_untouched() {
        let (vals, vecs) = symmetric_eigen([[3.0f32, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 2.0]]);
        assert_eq!(vals, [3.0, -1.0, 2.0]);
        assert_eq!(vecs, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    }

    #[test]
    fn reconstructs_dense_matrix() {
        let m: [[f64; 4]; 4] = [
            [4.0, 1.0, -2.0, 0.5],
            [1.0, -3.0, 0.0, 2.0],
            [-2.0, 0.0, 1.0, 1.5],
            [0.5, 2.0, 1.5, 0.0],
        ];
        let (vals, v) = symmetric_eigen(m);
        for i in 0..4 {
            for j in 0..4 {
                let r: f64 = (0..4).map(|k| v[i][k] * vals[k] * v[j][k]).sum();
                assert!((r - m[i][j]).abs() < 1e-13, "({i},{j})");
            }
        }
    }
}
