// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! Self-check suite behind `spinlock verify`: generator projection against
//! the hand-written coefficient matrices, conservation along trajectories,
//! and a density-versus-observable spot check.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use nalgebra::RowVector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinlock_core::analysis::null_vectors;
use spinlock_core::hamiltonians::{build_liouvillian, PhysicalParams};
use spinlock_core::integrator::{
    integrate, Engine, InitialCondition, IntegrationSettings, Trajectory,
};
use spinlock_core::observable_ode::{
    analytic_coefficients3, analytic_coefficients9, locked_projection, project_generator,
    reduce_to_locked, CoefficientMatrix3, CoefficientMatrix9, LockedVar,
};
use spinlock_core::spin_algebra::{Observable, TwoSpinBasis};

pub const COEFFICIENT_TOL: f64 = 1e-10;
pub const ENGINE_TOL: f64 = 1e-8;
pub const TRACE_TOL: f64 = 1e-10;
pub const MOMENT_TOL: f64 = 1e-12;
pub const INVARIANT_TOL: f64 = 1e-8;
/// Length of the trajectories used by the conservation and engine checks (s).
const SPOT_T_END: f64 = 5e-3;

/// The hand-written matrices the projection is compared against. Swappable
/// so the suite itself can be tested against a corrupted copy.
#[derive(Clone, Copy)]
pub struct Transcription {
    pub nine: fn(&PhysicalParams) -> CoefficientMatrix9,
    pub three: fn(&PhysicalParams) -> CoefficientMatrix3,
}

impl Default for Transcription {
    fn default() -> Self {
        Self {
            nine: analytic_coefficients9,
            three: analytic_coefficients3,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 0x5eed,
        }
    }
}

/// Worst disagreement seen for one matrix entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub entry: String,
    pub projected: f64,
    pub transcribed: f64,
    pub rel: f64,
    pub params: PhysicalParams,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status}  {:width$}  {}", c.name, c.detail);
            for m in &c.mismatches {
                let p = &m.params;
                let _ = writeln!(
                    out,
                    "      mismatch {}: projected {:e} vs transcribed {:e} (rel {:.1e}) at omega1={:e} omega_d={:e} tau_c={:e}",
                    m.entry, m.projected, m.transcribed, m.rel, p.omega1, p.omega_d, p.tau_c
                );
            }
        }
        let _ = writeln!(
            out,
            "{} of {} checks passed",
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        );
        out
    }
}

/// Random parameters with `|ω₁τc|, |ω_dτc| < 0.1`.
pub fn random_params(rng: &mut ChaCha8Rng) -> PhysicalParams {
    let tau_c = 10f64.powf(rng.random_range(-7.0..-4.0));
    let omega1 = rng.random_range(0.001..0.1) / tau_c;
    let omega_d = rng.random_range(-0.1..0.1) / tau_c;
    PhysicalParams::on_resonance(omega1, omega_d, tau_c, rng.random_range(0.1..=1.0))
}

fn fail(name: &'static str, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        passed: false,
        detail: detail.into(),
        mismatches: Vec::new(),
    }
}

/// Compares entries, keeping the worst case per entry that exceeds the
/// tolerance. Entries that vanish in the transcription are measured against
/// its largest entry.
fn compare_entries(
    label: &str,
    names: &[String],
    projected: &[f64],
    transcribed: &[f64],
    params: &PhysicalParams,
    worst: &mut f64,
    bad: &mut BTreeMap<String, Mismatch>,
) {
    let n = names.len();
    let scale = transcribed.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for r in 0..n {
        for c in 0..n {
            // Column-major storage.
            let (a, b) = (projected[c * n + r], transcribed[c * n + r]);
            let denom = if b == 0.0 { scale } else { b.abs() };
            let rel = if denom == 0.0 {
                (a - b).abs()
            } else {
                (a - b).abs() / denom
            };
            *worst = worst.max(rel);
            if rel > COEFFICIENT_TOL {
                let entry = format!("{label}[{}, {}]", names[r], names[c]);
                let keep = bad.get(&entry).is_none_or(|m| rel > m.rel);
                if keep {
                    bad.insert(
                        entry.clone(),
                        Mismatch {
                            entry,
                            projected: a,
                            transcribed: b,
                            rel,
                            params: *params,
                        },
                    );
                }
            }
        }
    }
}

fn coefficient_check(opts: &VerifyOptions, transcription: &Transcription) -> CheckResult {
    const NAME: &str = "coefficients";
    let names9: Vec<String> = Observable::ALL.iter().map(|o| o.label()).collect();
    let names3: Vec<String> = LockedVar::ALL
        .iter()
        .map(|v| v.label().to_string())
        .collect();
    let basis = TwoSpinBasis::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut worst9, mut worst3) = (0.0f64, 0.0f64);
    let mut bad = BTreeMap::new();
    for _ in 0..opts.trials {
        let p = random_params(&mut rng);
        let projected = match build_liouvillian(&p).and_then(|l| project_generator(&l, &basis)) {
            Ok(m) => m,
            Err(e) => return fail(NAME, format!("projection failed: {e}")),
        };
        let reduced = match reduce_to_locked(&projected) {
            Ok(m) => m,
            Err(e) => return fail(NAME, format!("reduction failed: {e}")),
        };
        let t9 = (transcription.nine)(&p);
        let t3 = (transcription.three)(&p);
        compare_entries(
            "A9",
            &names9,
            projected.matrix.as_slice(),
            t9.matrix.as_slice(),
            &p,
            &mut worst9,
            &mut bad,
        );
        compare_entries(
            "A3",
            &names3,
            reduced.matrix.as_slice(),
            t3.matrix.as_slice(),
            &p,
            &mut worst3,
            &mut bad,
        );
    }
    let mismatches: Vec<Mismatch> = bad.into_values().collect();
    CheckResult {
        name: NAME,
        passed: mismatches.is_empty() && opts.trials > 0,
        detail: format!(
            "{} random draws, worst rel diff 9x9 {worst9:.1e}, 3x3 {worst3:.1e} (tol {COEFFICIENT_TOL:.0e})",
            opts.trials
        ),
        mismatches,
    }
}

fn invariant_check() -> CheckResult {
    const NAME: &str = "conserved combination";
    let basis = TwoSpinBasis::new();
    let mut worst = 0.0f64;
    for hz in [500.0, 2000.0, 4000.0] {
        let p = PhysicalParams::on_resonance(TAU * hz, TAU * 5000.0, 1e-6, 1.0);
        let a9 = match build_liouvillian(&p).and_then(|l| project_generator(&l, &basis)) {
            Ok(m) => m,
            Err(e) => return fail(NAME, e.to_string()),
        };
        let left = match reduce_to_locked(&a9).and_then(|a3| null_vectors(&a3)) {
            Ok((l, _)) => l,
            Err(e) => return fail(NAME, e.to_string()),
        };
        let ratio = 1.5 * p.omega_d / p.omega1;
        worst = worst.max((left[1] / left[0] - ratio).abs() / ratio + (left[2] / left[0]).abs());
        let lifted = RowVector3::new(1.0, ratio, 0.0) * locked_projection();
        worst = worst.max((lifted * a9.matrix).abs().max() / a9.matrix.abs().max());
    }
    CheckResult {
        name: NAME,
        passed: worst <= 1e-9,
        detail: format!("left null vector (1, 3wd/2w1, 0), worst deviation {worst:.1e}"),
        mismatches: Vec::new(),
    }
}

fn trajectories() -> Result<(Trajectory, Trajectory), String> {
    let p = PhysicalParams::on_resonance(TAU * 2000.0, TAU * 5000.0, 1e-6, 1.0);
    let s = IntegrationSettings::fixed(SPOT_T_END, 1e-7, 1e-5);
    let ic = InitialCondition { m0: 1.0 };
    let dens = integrate(Engine::Density, &p, &ic, &s).map_err(|e| e.to_string())?;
    let obs = integrate(Engine::Observable9, &p, &ic, &s).map_err(|e| e.to_string())?;
    Ok((dens, obs))
}

fn conservation_check(dens: &Trajectory, obs: &Trajectory) -> CheckResult {
    let trace = dens
        .density_checks
        .iter()
        .map(|d| d.trace_error)
        .fold(0.0, f64::max);
    let herm = dens
        .density_checks
        .iter()
        .map(|d| d.hermiticity)
        .fold(0.0, f64::max);
    let (xx, zz, yy) = (
        Observable::XX.index(),
        Observable::ZZ.index(),
        Observable::YY.index(),
    );
    let mut moments = 0.0f64;
    let mut drift = 0.0f64;
    for traj in [dens, obs] {
        let ratio = 1.5 * traj.params.omega_d / traj.params.omega1;
        let q0 = {
            let y = traj.locked_series()[0];
            y[0] + ratio * y[1]
        };
        for (row, y) in traj.values.iter().zip(traj.locked_series()) {
            moments = moments.max(row[xx].abs()).max((row[zz] + row[yy]).abs());
            drift = drift.max((y[0] + ratio * y[1] - q0).abs() / traj.m0);
        }
    }
    CheckResult {
        name: "conservation",
        passed: trace <= TRACE_TOL && herm <= TRACE_TOL && moments <= MOMENT_TOL && drift <= INVARIANT_TOL,
        detail: format!(
            "trace {trace:.1e}, hermiticity {herm:.1e}, |Mxx|,|Mzz+Myy| {moments:.1e}, invariant drift {drift:.1e}"
        ),
        mismatches: Vec::new(),
    }
}

fn engine_check(dens: &Trajectory, obs: &Trajectory) -> CheckResult {
    let worst = dens
        .values
        .iter()
        .zip(&obs.values)
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
        .fold(0.0f64, f64::max);
    CheckResult {
        name: "engine equivalence",
        passed: dens.times == obs.times && worst <= ENGINE_TOL,
        detail: format!(
            "density vs observable9 over {} ms, max diff {worst:.1e}",
            SPOT_T_END * 1e3
        ),
        mismatches: Vec::new(),
    }
}

pub fn run_checks(opts: &VerifyOptions, transcription: &Transcription) -> VerifyReport {
    let mut checks = vec![coefficient_check(opts, transcription), invariant_check()];
    match trajectories() {
        Ok((dens, obs)) => {
            checks.push(conservation_check(&dens, &obs));
            checks.push(engine_check(&dens, &obs));
        }
        Err(e) => {
            checks.push(fail("conservation", format!("integration failed: {e}")));
            checks.push(fail(
                "engine equivalence",
                format!("integration failed: {e}"),
            ));
        }
    }
    VerifyReport { checks }
}
