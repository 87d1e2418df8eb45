// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("observable is not Hermitian: imaginary part of expectation is {residue:e}")]
    NonHermitianObservable { residue: f64 },

    #[error("off-resonance dynamics are not supported (delta_omega = {delta_omega} rad/s)")]
    UnsupportedOffResonance { delta_omega: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("projection leaks {magnitude:e} into {component}")]
    ClosureViolation { component: String, magnitude: f64 },

    #[error("reduced dynamics depend on excluded directions (leak {magnitude:e} in {detail})")]
    ReductionLeak { detail: String, magnitude: f64 },

    #[error("initial moment m0 = {0} outside (0, 1]")]
    InvalidM0(f64),

    #[error("invalid step control: {0}")]
    InvalidStepControl(String),

    #[error("adaptive step size underflow at t = {t:e} s (h = {h:e} s)")]
    StepSizeUnderflow { t: f64, h: f64 },

    #[error("non-finite state encountered at t = {t:e} s")]
    NonFiniteState { t: f64 },

    #[error("degenerate parameters: omega1 = omega_d = 0 has no relaxation")]
    DegenerateParams,

    #[error("expected a one-dimensional null space, found nullity {nullity}")]
    RankError { nullity: usize },

    #[error("M_x never settles within {fraction} of its steady value {target:e}")]
    NeverLocks { fraction: f64, target: f64 },

    #[error("malformed matrix text: {0}")]
    MalformedMatrix(String),

    #[error("sweep grid is empty")]
    EmptyGrid,

    #[error("sweep grid point {index} duplicates point {first}")]
    DuplicateGridPoint { index: usize, first: usize },
}

impl Error {
    /// Short snake_case token used in CSV status columns.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonHermitianObservable { .. } => "non_hermitian_observable",
            Error::UnsupportedOffResonance { .. } => "unsupported_off_resonance",
            Error::InvalidParams(_) => "invalid_params",
            Error::ClosureViolation { .. } => "closure_violation",
            Error::ReductionLeak { .. } => "reduction_leak",
            Error::InvalidM0(_) => "invalid_m0",
            Error::InvalidStepControl(_) => "invalid_step_control",
            Error::StepSizeUnderflow { .. } => "step_size_underflow",
            Error::NonFiniteState { .. } => "non_finite_state",
            Error::DegenerateParams => "degenerate_params",
            Error::RankError { .. } => "rank_error",
            Error::NeverLocks { .. } => "never_locks",
            Error::MalformedMatrix(_) => "malformed_matrix",
            Error::EmptyGrid => "empty_grid",
            Error::DuplicateGridPoint { .. } => "duplicate_grid_point",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
