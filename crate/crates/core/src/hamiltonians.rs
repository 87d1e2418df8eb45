// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! Rotating-frame Hamiltonians and the second-order generator built from them.
//!
//! On resonance both the co-rotating drive and the secular dipolar term are
//! static in the interaction frame. The regulated memory integral
//! `∫₀^∞ e^{−τ/τc} dτ` then contributes a plain factor `τc`, the secular filter
//! keeps every term, and the generator reduces to
//!
//! ```text
//! L(ρ) = −i[H, ρ] − τc [H, [H, ρ]],    H = ω₁ F_x + ω_d (2 I_z S_z − I_x S_x − I_y S_y)
//! ```
//!
//! The double commutator is kept split into its four drive/dipole pieces so the
//! self-terms and cross-terms can be inspected separately.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::spin_algebra::{collective, spin_i, spin_s, Axis, Operator, SuperOperator};

/// Scalar physics inputs. Frequencies in rad/s, times in seconds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalParams {
    /// Drive amplitude ω₁.
    pub omega1: f64,
    /// Dipolar strength ω_d. May be negative; only ω_d² enters the steady state.
    pub omega_d: f64,
    /// Fluctuation correlation time τc. Zero switches off the second-order terms.
    pub tau_c: f64,
    /// Equilibrium moment M₀.
    pub m0: f64,
    /// Drive offset Δω; only zero is supported by the generator.
    pub delta_omega: f64,
    /// Larmor frequency ω₀, consulted only by [`validate_regime`].
    pub omega0: Option<f64>,
}

impl PhysicalParams {
    pub fn on_resonance(omega1: f64, omega_d: f64, tau_c: f64, m0: f64) -> Self {
        Self {
            omega1,
            omega_d,
            tau_c,
            m0,
            delta_omega: 0.0,
            omega0: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.omega1,
            self.omega_d,
            self.tau_c,
            self.m0,
            self.delta_omega,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite || self.omega0.is_some_and(|w| !w.is_finite()) {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        if self.tau_c < 0.0 {
            return Err(Error::InvalidParams(format!(
                "tau_c = {} must be >= 0",
                self.tau_c
            )));
        }
        if !(self.m0 > 0.0 && self.m0 <= 1.0) {
            return Err(Error::InvalidM0(self.m0));
        }
        Ok(())
    }

    fn require_resonance(&self) -> Result<()> {
        if self.delta_omega != 0.0 {
            return Err(Error::UnsupportedOffResonance {
                delta_omega: self.delta_omega,
            });
        }
        Ok(())
    }
}

/// Orientation and size of the internuclear vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geometry {
    /// Gyromagnetic ratio γ (rad·s⁻¹·T⁻¹).
    pub gamma: f64,
    /// Internuclear distance (m).
    pub r: f64,
    /// Polar angle (rad).
    pub theta: f64,
    /// Azimuthal angle (rad).
    pub phi: f64,
}

/// `ω_d = (γ²/r³) Y₂₀(θ, φ)` with the orthonormal `Y₂₀`. The sign is kept.
pub fn omega_d_from_geometry(geo: &Geometry) -> f64 {
    let y20 = (5.0 / (16.0 * PI)).sqrt() * (3.0 * geo.theta.cos().powi(2) - 1.0);
    geo.gamma * geo.gamma / geo.r.powi(3) * y20
}

/// Secular dipolar coupling `ω_d (2 I_z S_z − I_x S_x − I_y S_y)`.
pub fn secular_dipolar(params: &PhysicalParams) -> Operator {
    let zz = spin_i(Axis::Z) * spin_s(Axis::Z);
    let xx = spin_i(Axis::X) * spin_s(Axis::X);
    let yy = spin_i(Axis::Y) * spin_s(Axis::Y);
    (zz.scale(2.0) - xx - yy).scale(params.omega_d)
}

/// Co-rotating drive on resonance, `ω₁ (I_x + S_x)`.
pub fn drive_rotating(params: &PhysicalParams) -> Result<Operator> {
    params.require_resonance()?;
    Ok(collective(Axis::X).scale(params.omega1))
}

/// The individual contributions to the generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiouvillianParts {
    /// `−i[H_S + H_DD, ·]`
    pub first_order: SuperOperator,
    /// `−τc [H_S, [H_S, ·]]`
    pub drive_drive: SuperOperator,
    /// `−τc [H_S, [H_DD, ·]]`
    pub drive_dipole: SuperOperator,
    /// `−τc [H_DD, [H_S, ·]]`
    pub dipole_drive: SuperOperator,
    /// `−τc [H_DD, [H_DD, ·]]`
    pub dipole_dipole: SuperOperator,
}

impl LiouvillianParts {
    pub fn sum(&self) -> SuperOperator {
        self.first_order
            + self.drive_drive
            + self.drive_dipole
            + self.dipole_drive
            + self.dipole_dipole
    }

    pub fn cross_terms(&self) -> SuperOperator {
        self.drive_dipole + self.dipole_drive
    }
}

/// Generator of the reduced master equation acting on column-stacked operators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Liouvillian {
    pub matrix: SuperOperator,
    pub parts: LiouvillianParts,
    pub params: PhysicalParams,
}

impl Liouvillian {
    pub fn apply(&self, op: &Operator) -> Operator {
        self.matrix.apply(op)
    }
}

pub fn build_liouvillian(params: &PhysicalParams) -> Result<Liouvillian> {
    params.validate()?;
    let drive = SuperOperator::commutator(&drive_rotating(params)?);
    let dipole = SuperOperator::commutator(&secular_dipolar(params));
    let damp = C64::new(-params.tau_c, 0.0);

    let parts = LiouvillianParts {
        first_order: (drive + dipole).scale_c(C64::new(0.0, -1.0)),
        drive_drive: drive.compose(&drive).scale_c(damp),
        drive_dipole: drive.compose(&dipole).scale_c(damp),
        dipole_drive: dipole.compose(&drive).scale_c(damp),
        dipole_dipole: dipole.compose(&dipole).scale_c(damp),
    };
    Ok(Liouvillian {
        matrix: parts.sum(),
        parts,
        params: *params,
    })
}

/// Threshold on ω·τc above which second-order perturbation theory is suspect.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;
/// Factor read into "≫" / "≪" for the drive conditions.
pub const MUCH_GREATER: f64 = 10.0;

#[derive(Clone, Debug, PartialEq)]
pub enum RegimeWarning {
    /// `|ω₁| τc ≥ 0.1`
    StrongDrive { product: f64 },
    /// `|ω_d| τc ≥ 0.1`
    StrongDipolar { product: f64 },
    /// `2 ω₀ τc ≫ 1` fails; counter-rotating terms may matter.
    ShortCorrelation { product: f64 },
    /// `ω₁² ≪ ω₀` fails. Compared numerically in SI units exactly as stated,
    /// although the two sides carry different dimensions.
    DriveVersusLarmor { omega1_sq: f64, omega0: f64 },
}

impl fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegimeWarning::StrongDrive { product } => write!(
                f,
                "omega1*tau_c = {product:.4} >= {PERTURBATIVE_LIMIT}: second-order treatment of the drive may be inaccurate"
            ),
            RegimeWarning::StrongDipolar { product } => write!(
                f,
                "omega_d*tau_c = {product:.4} >= {PERTURBATIVE_LIMIT}: second-order treatment of the dipolar coupling may be inaccurate"
            ),
            RegimeWarning::ShortCorrelation { product } => write!(
                f,
                "2*omega0*tau_c = {product:.4} is not >> 1: dropping counter-rotating drive terms is not justified"
            ),
            RegimeWarning::DriveVersusLarmor { omega1_sq, omega0 } => write!(
                f,
                "omega1^2 = {omega1_sq:.4e} is not << omega0 = {omega0:.4e}: dropping counter-rotating drive terms is not justified"
            ),
        }
    }
}

/// Flags parameter choices outside the validity of the reduced generator.
/// Never fails.
pub fn validate_regime(params: &PhysicalParams) -> Vec<RegimeWarning> {
    let mut warnings = Vec::new();
    let drive = (params.omega1 * params.tau_c).abs();
    if drive >= PERTURBATIVE_LIMIT {
        warnings.push(RegimeWarning::StrongDrive { product: drive });
    }
    let dipolar = (params.omega_d * params.tau_c).abs();
    if dipolar >= PERTURBATIVE_LIMIT {
        warnings.push(RegimeWarning::StrongDipolar { product: dipolar });
    }
    if let (Some(omega0), true) = (params.omega0, params.omega1 != 0.0) {
        let product = 2.0 * omega0.abs() * params.tau_c;
        if product < MUCH_GREATER {
            warnings.push(RegimeWarning::ShortCorrelation { product });
        }
        let omega1_sq = params.omega1 * params.omega1;
        if omega1_sq * MUCH_GREATER > omega0.abs() {
            warnings.push(RegimeWarning::DriveVersusLarmor { omega1_sq, omega0 });
        }
    }
    warnings
}
