//! Dense LU factorization with partial pivoting for small fixed-size systems.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("singular system: pivot {pivot:e} at column {column} is below {threshold:e}")]
pub struct SingularMatrix {
    pub column: usize,
    pub pivot: f64,
    pub threshold: f64,
}

/// Pivots smaller than this fraction of the largest entry count as zero.
pub const RELATIVE_PIVOT_TOL: f64 = 1e-13;

/// Row-pivoted LU factors of an `N×N` matrix, stored in place.
#[derive(Debug, Clone)]
pub struct Lu<const N: usize> {
    lu: [[f64; N]; N],
    perm: [usize; N],
}

impl<const N: usize> Lu<N> {
    pub fn factor(a: &[[f64; N]; N]) -> Result<Self, SingularMatrix> {
        let mut lu = *a;
        let mut perm = [0usize; N];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        let scale = a
            .iter()
            .flat_map(|row| row.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let threshold = RELATIVE_PIVOT_TOL * scale;

        for k in 0..N {
            let (p, pivot) = (k..N)
                .map(|i| (i, lu[i][k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot > threshold) {
                return Err(SingularMatrix { column: k, pivot, threshold });
            }
            if p != k {
                lu.swap(p, k);
                perm.swap(p, k);
            }
            let inv = 1.0 / lu[k][k];
            for i in (k + 1)..N {
                let m = lu[i][k] * inv;
                lu[i][k] = m;
                if m != 0.0 {
                    for j in (k + 1)..N {
                        lu[i][j] -= m * lu[k][j];
                    }
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, b: &[f64; N]) -> [f64; N] {
        let mut x = [0.0; N];
        for i in 0..N {
            x[i] = b[self.perm[i]];
        }
        for i in 0..N {
            for j in 0..i {
                x[i] -= self.lu[i][j] * x[j];
            }
        }
        for i in (0..N).rev() {
            for j in (i + 1)..N {
                x[i] -= self.lu[i][j] * x[j];
            }
            x[i] /= self.lu[i][i];
        }
        x
    }
}

pub fn mat_vec<const N: usize>(a: &[[f64; N]; N], x: &[f64; N]) -> [f64; N] {
    let mut y = [0.0; N];
    for (yi, row) in y.iter_mut().zip(a) {
        *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
    }
    y
}

/// Solve `a x = b` with one step of iterative refinement.
pub fn solve<const N: usize>(a: &[[f64; N]; N], b: &[f64; N]) -> Result<[f64; N], SingularMatrix> {
    let lu = Lu::factor(a)?;
    let mut x = lu.solve(b);
    let ax = mat_vec(a, &x);
    let mut r = [0.0; N];
    for i in 0..N {
        r[i] = b[i] - ax[i];
    }
    let dx = lu.solve(&r);
    for i in 0..N {
        x[i] += dx[i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_permuted_system() {
        // Needs a row swap at the first column.
        let a = [[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]];
        let x_true = [1.0, -2.0, 0.5];
        let b = mat_vec(&a, &x_true);
        let x = solve(&a, &b).unwrap();
        for i in 0..3 {
            assert!((x[i] - x_true[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn hilbert_like_system() {
        let mut a = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                a[i][j] = 1.0 / (i + j + 1) as f64;
            }
        }
        let x_true = [1.0, -1.0, 2.0, -2.0, 3.0, -3.0];
        let b = mat_vec(&a, &x_true);
        let x = solve(&a, &b).unwrap();
        for i in 0..6 {
            assert!((x[i] - x_true[i]).abs() < 1e-6, "{x:?}");
        }
    }

    #[test]
    fn rank_deficient_is_singular() {
        let a = [[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]];
        let err = Lu::factor(&a).unwrap_err();
        assert_eq!(err.column, 2);
        assert!(Lu::factor(&[[0.0; 2]; 2]).is_err());
    }
}
