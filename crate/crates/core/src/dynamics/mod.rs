//! Exact density-matrix dynamics of the pumped V system.
//!
//! Nothing here assumes a weak probe or a resonant coupling field. The
//! time integrator and the direct linear solve are the reference that the
//! closed-form results in [`crate::steadystate`] are checked against.

mod density;
mod integrator;
mod linear;

pub use density::{
    hermiticity_defect, max_abs_diff, max_norm, CMatrix3, DensityMatrix, StateError,
    POPULATION_SLACK, STATE_TOL, ZERO3,
};
pub use integrator::{
    integrate, integrate_to_steady_state, integrate_to_steady_state_default, step_size,
    IntegrationError, IntegrationReport, CHECK_INTERVAL, DEFAULT_MAX_TIME, DEFAULT_TOLERANCE,
};
pub use linear::{liouvillian_matrix, residual, steady_state_linear, SteadyStateError};

use num_complex::Complex64;

use crate::params::{coherence_rates, SystemParams};

/// Time derivative of ρ under the optical Bloch equations of the model.
///
/// The six independent elements follow the rotating-wave equations of
/// motion; ρ̇₁₂, ρ̇₁₃, ρ̇₂₃ are the conjugates of ρ̇₂₁, ρ̇₃₁, ρ̇₃₂. The input is
/// read as given, so a non-Hermitian `rho` yields a non-Hermitian result.
pub fn liouvillian_rhs(rho: &CMatrix3, params: &SystemParams) -> CMatrix3 {
    let i = Complex64::i();
    let rates = coherence_rates(params);

    // Rabi frequencies are real; the conjugates are kept where they belong.
    let op = Complex64::new(params.omega_p, 0.0);
    let oc = Complex64::new(params.omega_c, 0.0);
    let op_c = op.conj();
    let oc_c = oc.conj();

    let (g21, g31) = (params.gamma21, params.gamma31);
    let (r1, r2) = (params.r1, params.r2);
    let (dc, dp) = (params.delta_c, params.delta_p);

    let r11 = rho[0][0];
    let r22 = rho[1][1];
    let r33 = rho[2][2];
    let r12 = rho[0][1];
    let r13 = rho[0][2];
    let r21 = rho[1][0];
    let r23 = rho[1][2];
    let r31 = rho[2][0];
    let r32 = rho[2][1];

    let d11 = i * op * r31 + i * oc * r21 - i * op_c * r13 - i * oc_c * r12 + g31 * r33 + g21 * r22
        - (r1 + r2) * r11;
    let d22 = i * oc_c * r12 - i * oc * r21 - g21 * r22 + r2 * r11;
    let d33 = i * op_c * r13 - i * op * r31 - g31 * r33 + r1 * r11;
    let d21 = (i * dc - rates.rho21) * r21 + i * oc_c * r11 - i * oc_c * r22 - i * op_c * r23;
    let d31 = (i * dp - rates.rho31) * r31 + i * op_c * r11 - i * op_c * r33 - i * oc_c * r32;
    let d32 = (i * (dp - dc) - rates.rho32) * r32 + i * op_c * r12 - i * oc * r31;

    [
        [d11, d21.conj(), d31.conj()],
        [d21, d22, d32.conj()],
        [d31, d32, d33],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet() -> SystemParams {
        SystemParams { omega_p: 0.0, ..SystemParams::default() }
    }

    #[test]
    fn ground_state_is_stationary_without_drive() {
        let d = liouvillian_rhs(DensityMatrix::ground().as_array(), &quiet());
        assert_eq!(max_norm(&d), 0.0);
    }

    #[test]
    fn excited_level_decays() {
        let d = liouvillian_rhs(DensityMatrix::pure_level(2).as_array(), &quiet());
        assert_eq!(d[0][0].re, 1.0);
        assert_eq!(d[1][1].re, -1.0);
        let mut rest = d;
        rest[0][0] = Complex64::new(0.0, 0.0);
        rest[1][1] = Complex64::new(0.0, 0.0);
        assert_eq!(max_norm(&rest), 0.0);
    }

    #[test]
    fn pump_moves_ground_population_to_level_three() {
        let p = SystemParams { r1: 1.5, ..quiet() };
        let d = liouvillian_rhs(DensityMatrix::ground().as_array(), &p);
        assert_eq!(d[0][0].re, -1.5);
        assert_eq!(d[2][2].re, 1.5);
        assert_eq!(d[1][1].re, 0.0);
    }

    #[test]
    fn coupling_builds_coherence_from_ground() {
        let p = SystemParams { omega_c: 0.5, ..quiet() };
        let d = liouvillian_rhs(DensityMatrix::ground().as_array(), &p);
        // ρ̇₂₁ = iΩ_c*(ρ₁₁ − ρ₂₂) at t = 0.
        assert_eq!(d[1][0], Complex64::new(0.0, 0.5));
        assert_eq!(d[0][1], Complex64::new(0.0, -0.5));
    }
}
