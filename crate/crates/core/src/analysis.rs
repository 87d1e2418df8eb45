// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! Steady states, lock times and parameter sweeps.

use std::io::Write;

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonians::PhysicalParams;
use crate::integrator::{integrate, Engine, InitialCondition, IntegrationSettings, Trajectory};
use crate::observable_ode::CoefficientMatrix3;

/// Default relative band for [`lock_time`].
pub const DEFAULT_LOCK_FRACTION: f64 = 0.05;
/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SteadySource {
    ClosedForm,
    Nullspace,
    LongTime,
}

/// Locked values of `(M_x, W, M_zy)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyState {
    pub mx_ss: f64,
    pub w_ss: f64,
    pub mzy_ss: f64,
    pub source: SteadySource,
}

impl SteadyState {
    /// `M_zz`, assuming `M_zz + M_yy = 0` as it is from the post-pulse state.
    pub fn mzz(&self) -> f64 {
        0.5 * self.w_ss
    }

    pub fn myy(&self) -> f64 {
        -0.5 * self.w_ss
    }
}

/// `M_x^ss = M₀ ω₁² / (ω₁² + 9ω_d²/16)`, with `W^ss = (3ω_d / 8ω₁) M_x^ss`.
pub fn steady_state_mx(params: &PhysicalParams) -> Result<SteadyState> {
    params.validate()?;
    let (w1, wd) = (params.omega1, params.omega_d);
    let denom = w1 * w1 + 0.5625 * wd * wd;
    if denom == 0.0 {
        return Err(Error::DegenerateParams);
    }
    Ok(SteadyState {
        mx_ss: params.m0 * w1 * w1 / denom,
        w_ss: params.m0 * 0.375 * wd * w1 / denom,
        mzy_ss: 0.0,
        source: SteadySource::ClosedForm,
    })
}

/// Steady state of the locked system reached from `y0`: the right null
/// vector of the generator, scaled so the conserved left-null combination
/// keeps its initial value.
pub fn steady_state_nullspace(
    system: &CoefficientMatrix3,
    y0: &Vector3<f64>,
) -> Result<SteadyState> {
    let (left, right) = null_vectors(system)?;
    let overlap = left.dot(&right);
    let y = right * (left.dot(y0) / overlap);
    Ok(SteadyState {
        mx_ss: y[0],
        w_ss: y[1],
        mzy_ss: y[2],
        source: SteadySource::Nullspace,
    })
}

/// Left and right null vectors of the locked generator, or a rank error
/// unless the null space is exactly one-dimensional.
pub fn null_vectors(system: &CoefficientMatrix3) -> Result<(Vector3<f64>, Vector3<f64>)> {
    let svd = system.matrix.svd(true, true);
    let sigma = svd.singular_values;
    let largest = sigma.max();
    let small: Vec<usize> = (0..3).filter(|&k| sigma[k] <= RANK_TOL * largest).collect();
    if largest == 0.0 || small.len() != 1 {
        let nullity = if largest == 0.0 { 3 } else { small.len() };
        return Err(Error::RankError { nullity });
    }
    let k = small[0];
    let u = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    Ok((u.column(k).into_owned(), v_t.row(k).transpose()))
}

/// Reads the locked values off the last sample of a long run.
pub fn steady_state_long_time(traj: &Trajectory) -> SteadyState {
    let last = *traj.locked_series().last().expect("non-empty trajectory");
    SteadyState {
        mx_ss: last[0],
        w_ss: last[1],
        mzy_ss: last[2],
        source: SteadySource::LongTime,
    }
}

/// Earliest sample time after which `M_x` stays within
/// `fraction·|M_x^ss|` of the closed-form steady state.
pub fn lock_time(traj: &Trajectory, fraction: f64) -> Result<f64> {
    let mut params = traj.params;
    params.m0 = traj.m0;
    let target = steady_state_mx(&params)?.mx_ss;
    if target == 0.0 {
        return Err(Error::DegenerateParams);
    }
    let band = fraction * target.abs();
    let mx = traj.mx();
    let inside = |x: &f64| (x - target).abs() <= band;
    if !mx.last().is_some_and(inside) {
        return Err(Error::NeverLocks { fraction, target });
    }
    let first = mx.iter().rposition(|x| !inside(x)).map_or(0, |k| k + 1);
    Ok(traj.times[first])
}

/// One sweep point. `status` is `None` for a clean run.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub params: PhysicalParams,
    pub mx_ss_closed: Option<f64>,
    pub mx_ss_numeric: Option<f64>,
    pub w_ss: Option<f64>,
    pub lock_time: Option<f64>,
    pub status: Option<Error>,
}

impl SweepRecord {
    pub fn status_code(&self) -> &'static str {
        self.status.as_ref().map_or("ok", Error::code)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// In grid order.
    pub records: Vec<SweepRecord>,
}

impl SweepResult {
    pub const HEADER: [&'static str; 8] = [
        "omega1_rad_s",
        "omega_d_rad_s",
        "tau_c_s",
        "mx_ss_closed",
        "mx_ss_numeric",
        "w_ss",
        "lock_time_s",
        "status",
    ];

    /// CSV in grid order; unavailable numbers are left empty.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let opt = |x: Option<f64>| x.map_or_else(String::new, |v| format!("{v:e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::HEADER)?;
        for r in &self.records {
            w.write_record([
                format!("{:e}", r.params.omega1),
                format!("{:e}", r.params.omega_d),
                format!("{:e}", r.params.tau_c),
                opt(r.mx_ss_closed),
                opt(r.mx_ss_numeric),
                opt(r.w_ss),
                opt(r.lock_time),
                r.status_code().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs every grid point in parallel. Per-point failures are recorded in the
/// row; only an empty or repeated grid fails the whole sweep.
pub fn sweep(
    grid: &[PhysicalParams],
    settings: &IntegrationSettings,
    engine: Engine,
) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let key =
        |p: &PhysicalParams| [p.omega1, p.omega_d, p.tau_c, p.m0, p.delta_omega].map(f64::to_bits);
    for (i, p) in grid.iter().enumerate() {
        if let Some(first) = grid[..i].iter().position(|q| key(q) == key(p)) {
            return Err(Error::DuplicateGridPoint { index: i, first });
        }
    }
    let records = grid
        .par_iter()
        .map(|p| sweep_point(p, settings, engine))
        .collect();
    Ok(SweepResult { records })
}

fn sweep_point(
    params: &PhysicalParams,
    settings: &IntegrationSettings,
    engine: Engine,
) -> SweepRecord {
    let mut record = SweepRecord {
        params: *params,
        mx_ss_closed: None,
        mx_ss_numeric: None,
        w_ss: None,
        lock_time: None,
        status: None,
    };
    let closed = steady_state_mx(params);
    if let Ok(s) = &closed {
        record.mx_ss_closed = Some(s.mx_ss);
    }
    let traj = match integrate(
        engine,
        params,
        &InitialCondition { m0: params.m0 },
        settings,
    ) {
        Ok(t) => t,
        Err(e) => {
            record.status = Some(e);
            return record;
        }
    };
    let late = steady_state_long_time(&traj);
    record.mx_ss_numeric = Some(late.mx_ss);
    record.w_ss = Some(late.w_ss);
    match closed.and_then(|_| lock_time(&traj, DEFAULT_LOCK_FRACTION)) {
        Ok(t) => record.lock_time = Some(t),
        Err(e) => record.status = Some(e),
    }
    record
}
