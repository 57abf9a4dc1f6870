use num_complex::Complex64;
use thiserror::Error;

use super::density::{max_norm, CMatrix3, DensityMatrix, ZERO3};
use super::liouvillian_rhs;
use crate::linalg::{self, SingularMatrix};
use crate::params::{ParamErrors, SystemParams};

/// Real coordinates of a Hermitian 3×3 matrix:
/// `[ρ₁₁, ρ₂₂, ρ₃₃, Re ρ₂₁, Im ρ₂₁, Re ρ₃₁, Im ρ₃₁, Re ρ₃₂, Im ρ₃₂]`.
const DIM: usize = 9;
const OFF_DIAGONAL: [(usize, usize); 3] = [(1, 0), (2, 0), (2, 1)];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SteadyStateError {
    #[error("invalid parameters: {0}")]
    InvalidParams(#[from] ParamErrors),
    #[error("steady state is not unique: {0}")]
    SingularSystem(#[from] SingularMatrix),
}

fn to_real(m: &CMatrix3) -> [f64; DIM] {
    let mut v = [0.0; DIM];
    for k in 0..3 {
        v[k] = m[k][k].re;
    }
    for (n, &(i, j)) in OFF_DIAGONAL.iter().enumerate() {
        v[3 + 2 * n] = m[i][j].re;
        v[4 + 2 * n] = m[i][j].im;
    }
    v
}

fn from_real(v: &[f64; DIM]) -> CMatrix3 {
    let mut m = ZERO3;
    for k in 0..3 {
        m[k][k] = Complex64::new(v[k], 0.0);
    }
    for (n, &(i, j)) in OFF_DIAGONAL.iter().enumerate() {
        let z = Complex64::new(v[3 + 2 * n], v[4 + 2 * n]);
        m[i][j] = z;
        m[j][i] = z.conj();
    }
    m
}

/// The generator of the equations of motion as a real 9×9 matrix acting on
/// the coordinates described at the top of this module.
pub fn liouvillian_matrix(params: &SystemParams) -> [[f64; DIM]; DIM] {
    let mut a = [[0.0; DIM]; DIM];
    for col in 0..DIM {
        let mut basis = [0.0; DIM];
        basis[col] = 1.0;
        let image = to_real(&liouvillian_rhs(&from_real(&basis), params));
        for row in 0..DIM {
            a[row][col] = image[row];
        }
    }
    a
}

/// Exact steady state: solves L ρ = 0 with the ρ̇₁₁ equation, which is
/// redundant by trace conservation, replaced by Tr ρ = 1.
pub fn steady_state_linear(params: &SystemParams) -> Result<DensityMatrix, SteadyStateError> {
    let params = params.validate()?;
    let mut a = liouvillian_matrix(&params);
    a[0] = [0.0; DIM];
    a[0][..3].fill(1.0);
    let mut b = [0.0; DIM];
    b[0] = 1.0;
    let x = linalg::solve(&a, &b)?;
    Ok(DensityMatrix::from_raw(from_real(&x)))
}

/// Max-norm of dρ/dt at `rho`.
pub fn residual(rho: &DensityMatrix, params: &SystemParams) -> f64 {
    max_norm(&liouvillian_rhs(rho.as_array(), params))
}
