use num_complex::Complex64;
use thiserror::Error;

/// A 3×3 complex matrix, indexed `[i][j]` with level |k⟩ at index `k - 1`.
pub type CMatrix3 = [[Complex64; 3]; 3];

pub const ZERO3: CMatrix3 = [[Complex64::new(0.0, 0.0); 3]; 3];

/// Hermiticity and trace tolerance for constructed states.
pub const STATE_TOL: f64 = 1e-12;
/// Slack allowed on populations produced by numerical solves.
pub const POPULATION_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum StateError {
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("trace differs from 1 by {0:e}")]
    TraceNotUnit(f64),
    #[error("population of level {level} is {value}, outside [0, 1]")]
    PopulationOutOfRange { level: usize, value: f64 },
    #[error("non-finite entry")]
    NonFinite,
}

/// Atomic density matrix: Hermitian with unit trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix3,
}

impl DensityMatrix {
    pub fn new(m: CMatrix3) -> Result<Self, StateError> {
        let state = DensityMatrix { m };
        if m.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(StateError::NonFinite);
        }
        let h = hermiticity_defect(&m);
        if h > STATE_TOL {
            return Err(StateError::NotHermitian(h));
        }
        let t = state.trace_defect();
        if t > STATE_TOL {
            return Err(StateError::TraceNotUnit(t));
        }
        for level in 1..=3 {
            let value = state.population(level);
            if !(-POPULATION_SLACK..=1.0 + POPULATION_SLACK).contains(&value) {
                return Err(StateError::PopulationOutOfRange { level, value });
            }
        }
        Ok(state)
    }

    /// Wrap a matrix produced by a solver without re-checking invariants.
    pub(crate) fn from_raw(m: CMatrix3) -> Self {
        DensityMatrix { m }
    }

    /// All population in level |k⟩.
    pub fn pure_level(level: usize) -> Self {
        assert!((1..=3).contains(&level), "levels are 1, 2, 3");
        let mut m = ZERO3;
        m[level - 1][level - 1] = Complex64::new(1.0, 0.0);
        DensityMatrix { m }
    }

    pub fn ground() -> Self {
        Self::pure_level(1)
    }

    /// Diagonal state from populations (ρ₁₁, ρ₂₂, ρ₃₃).
    pub fn diagonal(p: [f64; 3]) -> Result<Self, StateError> {
        let mut m = ZERO3;
        for (k, v) in p.into_iter().enumerate() {
            m[k][k] = Complex64::new(v, 0.0);
        }
        Self::new(m)
    }

    /// ρᵢⱼ with the model's level labels `i, j ∈ {1, 2, 3}`.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[i - 1][j - 1]
    }

    pub fn population(&self, level: usize) -> f64 {
        self.m[level - 1][level - 1].re
    }

    pub fn as_array(&self) -> &CMatrix3 {
        &self.m
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn trace_defect(&self) -> f64 {
        (self.trace() - 1.0).norm()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.m)
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        max_abs_diff(&self.m, &other.m)
    }
}

pub fn hermiticity_defect(m: &CMatrix3) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((m[i][j] - m[j][i].conj()).norm());
        }
    }
    worst
}

pub fn max_norm(m: &CMatrix3) -> f64 {
    m.iter().flatten().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix3, b: &CMatrix3) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}
