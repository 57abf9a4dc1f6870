//! Model parameters and the coherence decay rates derived from them.
//!
//! Every quantity is expressed in units of the spontaneous decay rate γ.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Names of the fields of [`SystemParams`], in configuration-key order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParamField {
    Gamma21,
    Gamma31,
    R1,
    R2,
    OmegaC,
    OmegaP,
    DeltaC,
    DeltaP,
    ChiPrefactor,
    OmegaScale,
}

impl ParamField {
    pub const ALL: [ParamField; 10] = [
        ParamField::Gamma21,
        ParamField::Gamma31,
        ParamField::R1,
        ParamField::R2,
        ParamField::OmegaC,
        ParamField::OmegaP,
        ParamField::DeltaC,
        ParamField::DeltaP,
        ParamField::ChiPrefactor,
        ParamField::OmegaScale,
    ];

    /// The configuration key for this field.
    pub fn key(self) -> &'static str {
        match self {
            ParamField::Gamma21 => "gamma21",
            ParamField::Gamma31 => "gamma31",
            ParamField::R1 => "r1",
            ParamField::R2 => "r2",
            ParamField::OmegaC => "omega_c",
            ParamField::OmegaP => "omega_p",
            ParamField::DeltaC => "delta_c",
            ParamField::DeltaP => "delta_p",
            ParamField::ChiPrefactor => "chi_prefactor",
            ParamField::OmegaScale => "omega_scale",
        }
    }

    pub fn from_key(key: &str) -> Option<ParamField> {
        ParamField::ALL.into_iter().find(|f| f.key() == key)
    }
}

impl fmt::Display for ParamField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Decay rates, pump rates, Rabi frequencies, detunings and output scales of
/// the V-type model.
///
/// Level |1⟩ is the ground state. The coupling field drives |1⟩↔|2⟩ and the
/// probe drives |1⟩↔|3⟩. Rabi frequencies are real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemParams {
    /// Spontaneous decay |2⟩→|1⟩.
    pub gamma21: f64,
    /// Spontaneous decay |3⟩→|1⟩.
    pub gamma31: f64,
    /// Incoherent pump |1⟩→|3⟩.
    pub r1: f64,
    /// Incoherent pump |1⟩→|2⟩.
    pub r2: f64,
    /// Coupling Rabi frequency.
    pub omega_c: f64,
    /// Probe Rabi frequency.
    pub omega_p: f64,
    /// Coupling detuning ω_c − ω₂₁.
    pub delta_c: f64,
    /// Probe detuning ω_p − ω₃₁.
    pub delta_p: f64,
    /// N℘₁₃²/(ε₀ℏ) in normalized units.
    pub chi_prefactor: f64,
    /// 2πω_p in units of γ; multiplies the dispersion slope in the group index.
    pub omega_scale: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            gamma21: 1.0,
            gamma31: 1.0,
            r1: 0.0,
            r2: 0.0,
            omega_c: 0.0,
            omega_p: 1e-3,
            delta_c: 0.0,
            delta_p: 0.0,
            chi_prefactor: 1.0,
            omega_scale: 100.0,
        }
    }
}

impl SystemParams {
    pub fn get(&self, field: ParamField) -> f64 {
        match field {
            ParamField::Gamma21 => self.gamma21,
            ParamField::Gamma31 => self.gamma31,
            ParamField::R1 => self.r1,
            ParamField::R2 => self.r2,
            ParamField::OmegaC => self.omega_c,
            ParamField::OmegaP => self.omega_p,
            ParamField::DeltaC => self.delta_c,
            ParamField::DeltaP => self.delta_p,
            ParamField::ChiPrefactor => self.chi_prefactor,
            ParamField::OmegaScale => self.omega_scale,
        }
    }

    pub fn set(&mut self, field: ParamField, value: f64) {
        let slot = match field {
            ParamField::Gamma21 => &mut self.gamma21,
            ParamField::Gamma31 => &mut self.gamma31,
            ParamField::R1 => &mut self.r1,
            ParamField::R2 => &mut self.r2,
            ParamField::OmegaC => &mut self.omega_c,
            ParamField::OmegaP => &mut self.omega_p,
            ParamField::DeltaC => &mut self.delta_c,
            ParamField::DeltaP => &mut self.delta_p,
            ParamField::ChiPrefactor => &mut self.chi_prefactor,
            ParamField::OmegaScale => &mut self.omega_scale,
        };
        *slot = value;
    }

    /// Copy with one field replaced.
    pub fn with(mut self, field: ParamField, value: f64) -> Self {
        self.set(field, value);
        self
    }

    /// Returns `self` unchanged if every invariant holds, otherwise every
    /// violation found.
    pub fn validate(self) -> Result<SystemParams, ParamErrors> {
        let mut violations = Vec::new();
        for field in ParamField::ALL {
            let value = self.get(field);
            if !value.is_finite() {
                violations.push(ParamViolation::NonFinite(field));
                continue;
            }
            match field {
                ParamField::Gamma21 | ParamField::Gamma31 if value <= 0.0 => {
                    violations.push(ParamViolation::NonPositiveDecay(field))
                }
                ParamField::R1 | ParamField::R2 if value < 0.0 => {
                    violations.push(ParamViolation::NegativeRate(field))
                }
                ParamField::ChiPrefactor | ParamField::OmegaScale if value <= 0.0 => {
                    violations.push(ParamViolation::NonPositiveScale(field))
                }
                _ => {}
            }
        }
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(ParamErrors(violations))
        }
    }

    pub fn coherence_rates(&self) -> CoherenceRates {
        coherence_rates(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParamViolation {
    #[error("NegativeRate({0}): pump rate must be >= 0")]
    NegativeRate(ParamField),
    #[error("NonPositiveDecay({0}): decay rate must be > 0")]
    NonPositiveDecay(ParamField),
    #[error("NonPositiveScale({0}): scale must be > 0")]
    NonPositiveScale(ParamField),
    #[error("NonFinite({0}): value must be finite")]
    NonFinite(ParamField),
}

impl ParamViolation {
    pub fn field(&self) -> ParamField {
        match *self {
            ParamViolation::NegativeRate(f)
            | ParamViolation::NonPositiveDecay(f)
            | ParamViolation::NonPositiveScale(f)
            | ParamViolation::NonFinite(f) => f,
        }
    }
}

/// All invariant violations of one parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamErrors(pub Vec<ParamViolation>);

impl fmt::Display for ParamErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParamErrors {}

/// Damping rates of the three coherences.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherenceRates {
    /// Decay of ρ₂₁.
    pub rho21: f64,
    /// Decay of ρ₃₁.
    pub rho31: f64,
    /// Decay of ρ₃₂. Independent of the pumps.
    pub rho32: f64,
}

pub fn coherence_rates(params: &SystemParams) -> CoherenceRates {
    let pump = params.r1 + params.r2;
    CoherenceRates {
        rho21: 0.5 * (params.gamma21 + pump),
        rho31: 0.5 * (params.gamma31 + pump),
        rho32: 0.5 * (params.gamma21 + params.gamma31),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rates(g21: f64, g31: f64, r1: f64, r2: f64) -> CoherenceRates {
        let p = SystemParams {
            gamma21: g21,
            gamma31: g31,
            r1,
            r2,
            ..SystemParams::default()
        };
        coherence_rates(&p)
    }

    #[test]
    fn rates_at_caption_points() {
        let c = rates(1.0, 1.0, 0.0, 0.0);
        assert_eq!((c.rho21, c.rho31, c.rho32), (0.5, 0.5, 1.0));
        let c = rates(1.0, 1.0, 1.5, 0.0);
        assert_eq!((c.rho21, c.rho31, c.rho32), (1.25, 1.25, 1.0));
        let c = rates(1.0, 1.0, 1.5, 2.43);
        assert!((c.rho21 - 2.465).abs() < 1e-15);
        assert!((c.rho31 - 2.465).abs() < 1e-15);
        assert_eq!(c.rho32, 1.0);
    }

    #[test]
    fn default_params_validate() {
        let p = SystemParams::default();
        assert_eq!(p.validate(), Ok(p));
    }

    #[test]
    fn violations_name_their_field() {
        let p = SystemParams { r1: -0.1, ..Default::default() };
        assert_eq!(
            p.validate().unwrap_err().0,
            vec![ParamViolation::NegativeRate(ParamField::R1)]
        );

        let p = SystemParams { gamma31: 0.0, ..Default::default() };
        assert_eq!(
            p.validate().unwrap_err().0,
            vec![ParamViolation::NonPositiveDecay(ParamField::Gamma31)]
        );

        let p = SystemParams {
            omega_c: f64::NAN,
            r2: -1.0,
            omega_scale: 0.0,
            ..Default::default()
        };
        let errs = p.validate().unwrap_err();
        assert_eq!(errs.0.len(), 3);
        assert!(errs.to_string().contains("NonFinite(omega_c)"));
        assert!(errs.to_string().contains("NegativeRate(r2)"));
    }

    #[test]
    fn keys_round_trip() {
        for f in ParamField::ALL {
            assert_eq!(ParamField::from_key(f.key()), Some(f));
        }
        assert_eq!(ParamField::from_key("gamma"), None);
    }

    proptest! {
        #[test]
        fn rates_linear_in_pumps(
            g21 in 0.01f64..10.0, g31 in 0.01f64..10.0,
            r1 in 0.0f64..10.0, r2 in 0.0f64..10.0, dr1 in 0.0f64..5.0, dr2 in 0.0f64..5.0,
        ) {
            let a = rates(g21, g31, r1, r2);
            let b = rates(g21, g31, r1 + dr1, r2 + dr2);
            let slope = 0.5 * (dr1 + dr2);
            prop_assert!((b.rho21 - a.rho21 - slope).abs() < 1e-12);
            prop_assert!((b.rho31 - a.rho31 - slope).abs() < 1e-12);
            prop_assert_eq!(b.rho32, a.rho32);
        }

        #[test]
        fn swapping_decays_swaps_rates(
            g21 in 0.01f64..10.0, g31 in 0.01f64..10.0, r1 in 0.0f64..10.0, r2 in 0.0f64..10.0,
        ) {
            let a = rates(g21, g31, r1, r2);
            let b = rates(g31, g21, r1, r2);
            prop_assert_eq!(a.rho21, b.rho31);
            prop_assert_eq!(a.rho31, b.rho21);
            prop_assert_eq!(a.rho32, b.rho32);
        }
    }
}
