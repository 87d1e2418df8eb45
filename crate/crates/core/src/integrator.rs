// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! Time integration of the density operator or of the observable ODEs.
//!
//! Three engines share one sampling driver:
//!
//! - `density`: the 16-component vectorized ρ under the full generator, with
//!   observables read off at each sample;
//! - `observable9`: the projected nine-variable system;
//! - `reduced3`: the closed `(M_x, W, M_zy)` subsystem.
//!
//! Output samples sit on a uniform grid `k·sample_spacing` (plus `t_end`)
//! independent of the integration step.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use nalgebra::SVector;

use crate::error::{Error, Result};
use crate::hamiltonians::{build_liouvillian, PhysicalParams};
use crate::observable_ode::{locked_initial, project_generator, reduce_to_locked, LockedVar};
use crate::rk::{error_ratio, LinearFlow, Scalar};
use crate::spin_algebra::{
    collective, expectation, Axis, DensityState, Observable, Operator, TwoSpinBasis,
};

/// Default fixed step (s).
pub const DEFAULT_DT: f64 = 1e-7;
/// Default relative tolerance of the adaptive stepper.
pub const DEFAULT_RTOL: f64 = 1e-10;
/// Default spacing of stored samples (s).
pub const DEFAULT_SAMPLE_SPACING: f64 = 1e-5;
/// Relative slack when checking that a time span is a whole number of steps.
const GRID_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Density,
    Observable9,
    Reduced3,
}

impl Engine {
    pub fn labels(self) -> Vec<&'static str> {
        match self {
            Engine::Density | Engine::Observable9 => {
                vec!["Mz", "Mx", "My", "Mzz", "Mxx", "Myy", "Mzx", "Mzy", "Mxy"]
            }
            Engine::Reduced3 => LockedVar::ALL.iter().map(|v| v.label()).collect(),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Density => "density",
            Engine::Observable9 => "observable9",
            Engine::Reduced3 => "reduced3",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "density" => Ok(Engine::Density),
            "observable9" => Ok(Engine::Observable9),
            "reduced3" => Ok(Engine::Reduced3),
            other => Err(format!(
                "unknown engine {other:?} (expected density, observable9 or reduced3)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepControl {
    /// Classic RK4 with step `dt` (s).
    Fixed { dt: f64 },
    /// Dormand–Prince 5(4) with per-step relative tolerance.
    Adaptive { rtol: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrationSettings {
    pub t_end: f64,
    pub step: StepControl,
    pub sample_spacing: f64,
}

impl IntegrationSettings {
    pub fn fixed(t_end: f64, dt: f64, sample_spacing: f64) -> Self {
        Self {
            t_end,
            step: StepControl::Fixed { dt },
            sample_spacing,
        }
    }

    pub fn adaptive(t_end: f64, rtol: f64, sample_spacing: f64) -> Self {
        Self {
            t_end,
            step: StepControl::Adaptive { rtol },
            sample_spacing,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidStepControl(msg));
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return bad(format!("t_end = {} must be positive", self.t_end));
        }
        if !(self.sample_spacing.is_finite() && self.sample_spacing > 0.0) {
            return bad(format!(
                "sample spacing {} must be positive",
                self.sample_spacing
            ));
        }
        match self.step {
            StepControl::Fixed { dt } if !(dt.is_finite() && dt > 0.0) => {
                bad(format!("dt = {dt} must be positive"))
            }
            StepControl::Adaptive { rtol } if !(rtol.is_finite() && rtol > 0.0) => {
                bad(format!("rtol = {rtol} must be positive"))
            }
            _ => Ok(()),
        }
    }
}

/// The state right after the 90° pulse: `M_x = M₀`, everything else zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialCondition {
    pub m0: f64,
}

/// `ρ₀ = 𝟙/4 + (M₀/2) F_x`.
///
/// For `M₀ > 1/2` this is not positive semidefinite; it is used as a
/// normalized deviation-style state, which is harmless for linear dynamics.
pub fn initial_density(ic: &InitialCondition) -> Result<DensityState> {
    if !(ic.m0 > 0.0 && ic.m0 <= 1.0) {
        return Err(Error::InvalidM0(ic.m0));
    }
    let op = Operator::identity().scale(0.25) + collective(Axis::X).scale(ic.m0 / 2.0);
    Ok(DensityState::new(op, 0.0))
}

/// Trace and Hermiticity of a stored density sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityDiagnostics {
    /// `|Tr ρ − 1|`
    pub trace_error: f64,
    /// `max |ρ − ρ†|`
    pub hermiticity: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// Sample times (s), strictly increasing from 0.
    pub times: Vec<f64>,
    /// One row per sample, columns as in [`Engine::labels`].
    pub values: Vec<Vec<f64>>,
    pub engine: Engine,
    pub params: PhysicalParams,
    /// Initial moment the run started from.
    pub m0: f64,
    pub step: StepControl,
    pub steps_taken: usize,
    /// Per-sample checks; empty unless `engine == Density`.
    pub density_checks: Vec<DensityDiagnostics>,
}

impl Trajectory {
    pub fn labels(&self) -> Vec<&'static str> {
        self.engine.labels()
    }

    pub fn column_index(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| *l == label)
    }

    pub fn column(&self, label: &str) -> Option<Vec<f64>> {
        let k = self.column_index(label)?;
        Some(self.values.iter().map(|row| row[k]).collect())
    }

    pub fn mx(&self) -> Vec<f64> {
        self.column("Mx").expect("every engine reports Mx")
    }

    /// `(M_x, M_zz − M_yy, M_zy)` per sample regardless of engine.
    pub fn locked_series(&self) -> Vec<[f64; 3]> {
        match self.engine {
            Engine::Reduced3 => self.values.iter().map(|r| [r[0], r[1], r[2]]).collect(),
            _ => self
                .values
                .iter()
                .map(|r| {
                    [
                        r[Observable::X.index()],
                        r[Observable::ZZ.index()] - r[Observable::YY.index()],
                        r[Observable::ZY.index()],
                    ]
                })
                .collect(),
        }
    }

    pub fn last(&self) -> &[f64] {
        self.values
            .last()
            .expect("trajectories hold at least two samples")
    }

    /// CSV with a `t` column followed by the engine's labels, numbers in
    /// round-trip scientific notation.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t"];
        header.extend(self.labels());
        w.write_record(&header)?;
        for (t, row) in self.times.iter().zip(&self.values) {
            let mut rec = vec![format!("{t:e}")];
            rec.extend(row.iter().map(|x| format!("{x:e}")));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Integrates from the post-pulse state.
pub fn integrate(
    engine: Engine,
    params: &PhysicalParams,
    ic: &InitialCondition,
    settings: &IntegrationSettings,
) -> Result<Trajectory> {
    let rho0 = initial_density(ic)?;
    integrate_from(engine, params, &rho0, settings)
}

/// Integrates from an arbitrary initial density operator. The `reduced3`
/// engine only reads `M_x`, `M_zz − M_yy` and `M_zy` from it.
pub fn integrate_from(
    engine: Engine,
    params: &PhysicalParams,
    rho0: &DensityState,
    settings: &IntegrationSettings,
) -> Result<Trajectory> {
    settings.validate()?;
    let generator = build_liouvillian(params)?;
    let basis = TwoSpinBasis::new();
    let observables = Observable::ALL.map(|o| o.operator());
    let m_init: [f64; 9] = {
        let mut m = [0.0; 9];
        for (slot, op) in m.iter_mut().zip(&observables) {
            *slot = expectation(op, rho0)?;
        }
        m
    };
    let m0 = m_init[Observable::X.index()];

    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut density_checks = Vec::new();

    let steps_taken = match engine {
        Engine::Density => {
            let flow = LinearFlow::new(generator.matrix.0);
            drive(&flow, rho0.op.vectorize(), settings, |t, y| {
                let rho = DensityState::new(Operator::from_vector(y), t);
                if !rho.op.is_finite() {
                    return Err(Error::NonFiniteState { t });
                }
                let row = observables
                    .iter()
                    .map(|o| (*o * rho.op).trace().re)
                    .collect();
                density_checks.push(DensityDiagnostics {
                    trace_error: rho.trace_error(),
                    hermiticity: rho.op.hermiticity_residual(),
                });
                times.push(t);
                values.push(row);
                Ok(())
            })?
        }
        Engine::Observable9 => {
            let system = project_generator(&generator, &basis)?;
            let flow = LinearFlow::new(system.matrix);
            drive(&flow, SVector::from(m_init), settings, |t, y| {
                push_real(&mut times, &mut values, t, y)
            })?
        }
        Engine::Reduced3 => {
            let system = reduce_to_locked(&project_generator(&generator, &basis)?)?;
            let flow = LinearFlow::new(system.matrix);
            let mut y0 = locked_initial(m0);
            y0[1] = m_init[Observable::ZZ.index()] - m_init[Observable::YY.index()];
            y0[2] = m_init[Observable::ZY.index()];
            drive(&flow, y0, settings, |t, y| {
                push_real(&mut times, &mut values, t, y)
            })?
        }
    };

    Ok(Trajectory {
        times,
        values,
        engine,
        params: *params,
        m0,
        step: settings.step,
        steps_taken,
        density_checks,
    })
}

fn push_real<const N: usize>(
    times: &mut Vec<f64>,
    values: &mut Vec<Vec<f64>>,
    t: f64,
    y: &SVector<f64, N>,
) -> Result<()> {
    if y.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteState { t });
    }
    times.push(t);
    values.push(y.iter().copied().collect());
    Ok(())
}

/// Number of whole `step`s in `span`, or an error if it does not divide evenly.
fn whole_steps(span: f64, step: f64, what: &str) -> Result<usize> {
    let n = (span / step).round();
    if n < 1.0 || (n * step - span).abs() > GRID_SLACK * span {
        return Err(Error::InvalidStepControl(format!(
            "{what} = {span:e} s is not a whole multiple of {step:e} s"
        )));
    }
    Ok(n as usize)
}

/// Runs the stepper and calls `record` at every sample time. Returns the
/// number of accepted steps.
fn drive<T: Scalar, const N: usize>(
    flow: &LinearFlow<T, N>,
    y0: SVector<T, N>,
    settings: &IntegrationSettings,
    mut record: impl FnMut(f64, &SVector<T, N>) -> Result<()>,
) -> Result<usize> {
    let t_end = settings.t_end;
    record(0.0, &y0)?;
    match settings.step {
        StepControl::Fixed { dt } => {
            let n_steps = whole_steps(t_end, dt, "t_end")?;
            let stride = whole_steps(settings.sample_spacing, dt, "sample spacing")?;
            let mut y = y0;
            for k in 1..=n_steps {
                y = flow.rk4_step(&y, dt);
                if k % stride == 0 || k == n_steps {
                    record(k as f64 * dt, &y)?;
                }
            }
            Ok(n_steps)
        }
        StepControl::Adaptive { rtol } => {
            let atol = rtol;
            let norm = flow
                .generator
                .row_iter()
                .map(|r| r.iter().map(|z| z.modulus()).sum::<f64>())
                .fold(0.0, f64::max);
            let mut h = if norm > 0.0 {
                (0.01 / norm).min(settings.sample_spacing)
            } else {
                settings.sample_spacing
            };
            let h_min = 1e-14 * t_end;
            let mut y = y0;
            let mut t = 0.0;
            let mut steps = 0;
            let mut k = 1usize;
            loop {
                let target = (k as f64 * settings.sample_spacing).min(t_end);
                while t < target {
                    let h_try = h.min(target - t);
                    let (next, err) = flow.dopri5_step(&y, h_try);
                    let ratio = error_ratio(&err, &y, &next, rtol, atol);
                    if !ratio.is_finite() {
                        return Err(Error::NonFiniteState { t });
                    }
                    if ratio <= 1.0 {
                        y = next;
                        t = if target - t - h_try <= GRID_SLACK * h_try {
                            target
                        } else {
                            t + h_try
                        };
                        steps += 1;
                    }
                    let factor = if ratio == 0.0 {
                        5.0
                    } else {
                        (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    // Do not let a short landing step throttle the next one.
                    if ratio > 1.0 || h_try >= h {
                        h = h_try * factor;
                    }
                    if h < h_min {
                        return Err(Error::StepSizeUnderflow { t, h });
                    }
                }
                record(t, &y)?;
                if target >= t_end {
                    break;
                }
                k += 1;
            }
            Ok(steps)
        }
    }
}

/// Earliest sample time `t ≥ t₀ + window` such that every component varies by
/// less than `tol·M₀` over `[t − window, t_end]`, with the sample there.
pub fn steady_state_detect(traj: &Trajectory, window: f64, tol: f64) -> Option<(f64, Vec<f64>)> {
    let n = traj.times.len();
    let t0 = *traj.times.first()?;
    if n < 2 || traj.times[n - 1] - t0 < window {
        return None;
    }
    let width = traj.values[0].len();
    let limit = tol * traj.m0.abs();

    // Smallest start index of a settled suffix.
    let mut lo = traj.values[n - 1].clone();
    let mut hi = lo.clone();
    let mut start = n - 1;
    for i in (0..n - 1).rev() {
        let row = &traj.values[i];
        let settled = (0..width).all(|c| hi[c].max(row[c]) - lo[c].min(row[c]) < limit);
        if !settled {
            break;
        }
        for c in 0..width {
            lo[c] = lo[c].min(row[c]);
            hi[c] = hi[c].max(row[c]);
        }
        start = i;
    }

    let earliest = traj.times[start].max(t0) + window;
    let slack = GRID_SLACK * window;
    let k = traj.times.iter().position(|&t| t >= earliest - slack)?;
    Some((traj.times[k], traj.values[k].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix4;
    use num_complex::Complex64 as C64;
    use std::f64::consts::PI;

    fn standard(omega1: f64) -> PhysicalParams {
        PhysicalParams::on_resonance(2.0 * PI * omega1, 2.0 * PI * 5000.0, 1e-6, 1.0)
    }

    #[test]
    fn initial_density_examples() {
        let rho = initial_density(&InitialCondition { m0: 1.0 }).unwrap();
        assert!((expectation(&collective(Axis::X), &rho).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(expectation(&Observable::ZZ.operator(), &rho).unwrap(), 0.0);
        for o in Observable::ALL {
            if o != Observable::X {
                assert_eq!(expectation(&o.operator(), &rho).unwrap(), 0.0, "{o}");
            }
        }
        assert!(matches!(
            initial_density(&InitialCondition { m0: 0.0 }),
            Err(Error::InvalidM0(_))
        ));
        assert!(matches!(
            initial_density(&InitialCondition { m0: 1.5 }),
            Err(Error::InvalidM0(_))
        ));
    }

    #[test]
    fn initial_density_positive_for_small_m0() {
        let rho = initial_density(&InitialCondition { m0: 0.4 }).unwrap();
        let m: Matrix4<C64> = rho.op.0;
        let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let expected = [0.05, 0.25, 0.25, 0.45];
        for (e, x) in eig.iter().zip(expected) {
            assert!((e - x).abs() < 1e-14, "{eig:?}");
        }
        // m0 = 1 is indefinite.
        let rho = initial_density(&InitialCondition { m0: 1.0 }).unwrap();
        let min = rho.op.0.symmetric_eigenvalues().min();
        assert!((min + 0.25).abs() < 1e-14);
    }

    #[test]
    fn zero_generator_is_constant() {
        let p = PhysicalParams::on_resonance(0.0, 0.0, 1e-6, 1.0);
        let s = IntegrationSettings::fixed(0.05, 1e-7, 1e-3);
        for engine in [Engine::Density, Engine::Observable9, Engine::Reduced3] {
            let traj = integrate(engine, &p, &InitialCondition { m0: 1.0 }, &s).unwrap();
            assert_eq!(traj.times.len(), 51);
            assert!(traj.values.iter().all(|row| row == &traj.values[0]));
        }
    }

    #[test]
    fn pure_drive_rotates_about_x() {
        let w1 = 2.0 * PI * 2000.0;
        let p = PhysicalParams::on_resonance(w1, 0.0, 0.0, 1.0);
        let op = Operator::identity().scale(0.25)
            + collective(Axis::X).scale(0.15)
            + collective(Axis::Z).scale(0.2);
        let rho = DensityState::new(op, 0.0);
        let s = IntegrationSettings::fixed(2e-3, 1e-7, 1e-5);
        let traj = integrate_from(Engine::Observable9, &p, &rho, &s).unwrap();
        let mz0 = 0.4;
        for (t, row) in traj.times.iter().zip(&traj.values) {
            assert!((row[Observable::X.index()] - 0.3).abs() < 1e-13);
            assert!((row[Observable::Z.index()] - mz0 * (w1 * t).cos()).abs() < 1e-10);
            assert!((row[Observable::Y.index()] + mz0 * (w1 * t).sin()).abs() < 1e-10);
        }
    }

    #[test]
    fn deterministic() {
        let s = IntegrationSettings::fixed(1e-3, 1e-7, 1e-5);
        let ic = InitialCondition { m0: 1.0 };
        let a = integrate(Engine::Density, &standard(2000.0), &ic, &s).unwrap();
        let b = integrate(Engine::Density, &standard(2000.0), &ic, &s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn adaptive_agrees_with_fixed() {
        let ic = InitialCondition { m0: 1.0 };
        let fixed = integrate(
            Engine::Observable9,
            &standard(2000.0),
            &ic,
            &IntegrationSettings::fixed(5e-3, 1e-7, 1e-4),
        )
        .unwrap();
        let adaptive = integrate(
            Engine::Observable9,
            &standard(2000.0),
            &ic,
            &IntegrationSettings::adaptive(5e-3, 1e-10, 1e-4),
        )
        .unwrap();
        assert_eq!(fixed.times.len(), adaptive.times.len());
        for (a, b) in fixed.times.iter().zip(&adaptive.times) {
            assert!((a - b).abs() < 1e-15);
        }
        let worst = fixed
            .values
            .iter()
            .zip(&adaptive.values)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        assert!(worst < 1e-8, "{worst}");
        assert!(adaptive.steps_taken < fixed.steps_taken / 10);
    }

    #[test]
    fn adaptive_underflow() {
        let s = IntegrationSettings::adaptive(1e-3, 1e-30, 1e-4);
        let err = integrate(
            Engine::Observable9,
            &standard(2000.0),
            &InitialCondition { m0: 1.0 },
            &s,
        );
        assert!(matches!(err, Err(Error::StepSizeUnderflow { .. })));
    }

    #[test]
    fn step_control_validation() {
        let ic = InitialCondition { m0: 1.0 };
        let p = standard(2000.0);
        for s in [
            IntegrationSettings::fixed(0.0, 1e-7, 1e-5),
            IntegrationSettings::fixed(1e-3, -1e-7, 1e-5),
            IntegrationSettings::fixed(1e-3, 3e-7, 1e-5),
            IntegrationSettings::adaptive(1e-3, 0.0, 1e-5),
        ] {
            assert!(matches!(
                integrate(Engine::Observable9, &p, &ic, &s),
                Err(Error::InvalidStepControl(_))
            ));
        }
    }

    #[test]
    fn non_finite_state() {
        let p = PhysicalParams::on_resonance(1e300, 1e300, 1.0, 1.0);
        let s = IntegrationSettings::fixed(1e-3, 1e-4, 1e-4);
        let err = integrate(Engine::Observable9, &p, &InitialCondition { m0: 1.0 }, &s);
        assert!(matches!(err, Err(Error::NonFiniteState { .. })), "{err:?}");
    }

    #[test]
    fn sample_grid_includes_endpoint() {
        let s = IntegrationSettings::fixed(1.05e-4, 1e-7, 1e-5);
        let traj = integrate(
            Engine::Reduced3,
            &standard(2000.0),
            &InitialCondition { m0: 1.0 },
            &s,
        )
        .unwrap();
        assert_eq!(traj.times.len(), 12);
        assert!((traj.times[11] - 1.05e-4).abs() < 1e-18);
        assert!(traj.times.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(traj.times[0], 0.0);
    }

    #[test]
    fn csv_schema() {
        let s = IntegrationSettings::fixed(1e-5, 1e-7, 1e-6);
        let ic = InitialCondition { m0: 1.0 };
        let mut buf = Vec::new();
        integrate(Engine::Observable9, &standard(2000.0), &ic, &s)
            .unwrap()
            .write_csv(&mut buf)
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,Mz,Mx,My,Mzz,Mxx,Myy,Mzx,Mzy,Mxy\n"));
        assert_eq!(text.lines().count(), 12);

        let mut buf = Vec::new();
        integrate(Engine::Reduced3, &standard(2000.0), &ic, &s)
            .unwrap()
            .write_csv(&mut buf)
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,Mx,W,Mzy\n"));
        for line in text.lines().skip(1) {
            assert!(line
                .split(',')
                .all(|f| f.parse::<f64>().unwrap().is_finite()));
        }
    }

    fn synthetic(values: Vec<Vec<f64>>, dt: f64) -> Trajectory {
        Trajectory {
            times: (0..values.len()).map(|k| k as f64 * dt).collect(),
            values,
            engine: Engine::Reduced3,
            params: standard(2000.0),
            m0: 1.0,
            step: StepControl::Fixed { dt },
            steps_taken: 0,
            density_checks: Vec::new(),
        }
    }

    #[test]
    fn detect_constant_at_first_window() {
        let traj = synthetic(vec![vec![0.5, 0.1, 0.0]; 101], 1e-5);
        let (t, v) = steady_state_detect(&traj, 1e-4, 1e-6).unwrap();
        assert!((t - 1e-4).abs() < 1e-15);
        assert_eq!(v, vec![0.5, 0.1, 0.0]);
        assert!(steady_state_detect(&traj, 2e-3, 1e-6).is_none());
    }

    #[test]
    fn detect_after_transient() {
        let mut rows = vec![vec![1.0, 0.0, 0.0]; 10];
        rows.extend(vec![vec![0.2, 0.0, 0.0]; 91]);
        let traj = synthetic(rows, 1e-5);
        let (t, v) = steady_state_detect(&traj, 1e-4, 1e-3).unwrap();
        assert!((t - 2e-4).abs() < 1e-15, "{t}");
        assert_eq!(v[0], 0.2);
        // Never settles.
        let rows = (0..100).map(|k| vec![(k % 2) as f64, 0.0, 0.0]).collect();
        assert!(steady_state_detect(&synthetic(rows, 1e-5), 1e-4, 1e-3).is_none());
    }

    #[test]
    fn engine_parse() {
        for e in [Engine::Density, Engine::Observable9, Engine::Reduced3] {
            assert_eq!(e.to_string().parse::<Engine>().unwrap(), e);
        }
        assert!("rk4".parse::<Engine>().is_err());
    }
}
