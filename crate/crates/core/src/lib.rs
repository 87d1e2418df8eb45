// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! Magnetization locking in a dipolar-coupled spin-1/2 pair under a resonant
//! drive, from the second-order generator down to the observable ODEs.

pub mod analysis;
pub mod error;
pub mod hamiltonians;
pub mod integrator;
pub mod observable_ode;
pub mod rk;
pub mod spin_algebra;

pub use analysis::{
    lock_time, steady_state_mx, steady_state_nullspace, sweep, SteadyState, SweepResult,
};
pub use error::{Error, Result};
pub use hamiltonians::{build_liouvillian, Liouvillian, PhysicalParams};
pub use integrator::{
    integrate, Engine, InitialCondition, IntegrationSettings, StepControl, Trajectory,
};
pub use observable_ode::{CoefficientMatrix3, CoefficientMatrix9};
