// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! The four subcommands. Each returns the process exit code.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use spinlock_core::analysis::{
    lock_time, steady_state_long_time, steady_state_mx, steady_state_nullspace, sweep, SteadyState,
    DEFAULT_LOCK_FRACTION,
};
use spinlock_core::error::Error;
use spinlock_core::hamiltonians::{build_liouvillian, validate_regime, PhysicalParams};
use spinlock_core::integrator::{integrate, InitialCondition};
use spinlock_core::observable_ode::{
    analytic_coefficients9, locked_initial, project_generator, reduce_to_locked,
};
use spinlock_core::spin_algebra::TwoSpinBasis;

use crate::config::{ConfigError, ConfigLayer, Preset, RunConfig};
use crate::verify::{run_checks, Transcription, VerifyOptions};
use crate::{RunArgs, SteadyArgs, VerifyArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;
pub const EXIT_RUN_FAILED: i32 = 3;

/// Errors that mean the request itself was wrong rather than the run.
fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParams(_)
            | Error::InvalidM0(_)
            | Error::UnsupportedOffResonance { .. }
            | Error::InvalidStepControl(_)
            | Error::EmptyGrid
            | Error::DuplicateGridPoint { .. }
    )
}

fn invalid(e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    EXIT_INVALID_CONFIG
}

/// Preset, then config file, then explicit flags.
pub fn load_config(args: &RunArgs) -> Result<RunConfig, ConfigError> {
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("reading {}: {e}", path.display())))?;
            ConfigLayer::parse(&text)
                .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?
        }
        None => ConfigLayer::default(),
    };
    file.overlay(args.layer()?).resolve()
}

fn output_path(cfg: &RunConfig, out_dir: Option<&Path>, kind: &str) -> PathBuf {
    if let Some(p) = &cfg.out {
        return p.clone();
    }
    let name = match cfg.preset {
        Some(p) => format!("{p}_{kind}.csv"),
        None => format!("{kind}.csv"),
    };
    out_dir.map_or_else(|| PathBuf::from(&name), |d| d.join(&name))
}

fn create(path: &Path) -> std::io::Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

pub fn simulate(args: &RunArgs) -> i32 {
    let cfg = match load_config(args) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let params = match cfg.single() {
        Ok(p) => p,
        Err(e) => return invalid(e),
    };
    if let Err(e) = params.validate() {
        return invalid(e);
    }
    for w in validate_regime(&params) {
        eprintln!("warning: {w}");
    }
    let traj = match integrate(
        cfg.engine,
        &params,
        &InitialCondition { m0: cfg.m0 },
        &cfg.settings,
    ) {
        Ok(t) => t,
        Err(e) if is_config_error(&e) => return invalid(e),
        Err(e) => {
            eprintln!("error: integration failed: {e}");
            return EXIT_RUN_FAILED;
        }
    };
    let path = output_path(&cfg, args.out_dir.as_deref(), "trajectory");
    let written = create(&path)
        .map_err(|e| e.to_string())
        .and_then(|f| traj.write_csv(f).map_err(|e| e.to_string()));
    if let Err(e) = written {
        eprintln!("error: writing {}: {e}", path.display());
        return EXIT_RUN_FAILED;
    }
    let last = traj.last();
    let mx = last[traj.column_index("Mx").expect("Mx column")];
    println!(
        "{} engine, {} samples, {} steps; final Mx = {mx:.6e}",
        cfg.engine,
        traj.times.len(),
        traj.steps_taken
    );
    if let Ok(lt) = lock_time(&traj, DEFAULT_LOCK_FRACTION) {
        println!("lock time (5% band): {lt:.6e} s");
    }
    println!("wrote {}", path.display());
    EXIT_OK
}

pub fn sweep_cmd(args: &RunArgs) -> i32 {
    let cfg = match load_config(args) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let grid = cfg.grid();
    let result = match sweep(&grid, &cfg.settings, cfg.engine) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    let path = output_path(&cfg, args.out_dir.as_deref(), "sweep");
    let written = create(&path)
        .map_err(|e| e.to_string())
        .and_then(|f| result.write_csv(f).map_err(|e| e.to_string()));
    if let Err(e) = written {
        eprintln!("error: writing {}: {e}", path.display());
        return EXIT_RUN_FAILED;
    }
    println!(
        "{:>14} {:>14} {:>10} {:>12} {:>12} {:>12}  status",
        "omega1", "omega_d", "tau_c", "Mx_closed", "Mx_numeric", "lock_time"
    );
    let show = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.6e}"));
    for r in &result.records {
        println!(
            "{:>14.6e} {:>14.6e} {:>10.3e} {:>12} {:>12} {:>12}  {}",
            r.params.omega1,
            r.params.omega_d,
            r.params.tau_c,
            show(r.mx_ss_closed),
            show(r.mx_ss_numeric),
            show(r.lock_time),
            r.status_code()
        );
    }
    println!("wrote {}", path.display());
    EXIT_OK
}

fn nullspace_for(params: &PhysicalParams) -> Result<SteadyState, Error> {
    let l = build_liouvillian(params)?;
    let system = reduce_to_locked(&project_generator(&l, &TwoSpinBasis::new())?)?;
    steady_state_nullspace(&system, &locked_initial(params.m0))
}

fn rel_diff(a: f64, b: f64) -> String {
    if b == 0.0 {
        format!("abs {:.1e}", (a - b).abs())
    } else {
        format!("rel {:.1e}", ((a - b) / b).abs())
    }
}

pub fn steady(args: &SteadyArgs) -> i32 {
    let cfg = match load_config(&args.run) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let params = match cfg.single() {
        Ok(p) => p,
        Err(e) => return invalid(e),
    };
    let closed = match steady_state_mx(&params) {
        Ok(s) => s,
        Err(Error::DegenerateParams) => {
            eprintln!("error: no steady state is defined with omega1 = omega_d = 0");
            return EXIT_INVALID_CONFIG;
        }
        Err(e) => return invalid(e),
    };
    let null = match nullspace_for(&params) {
        Ok(s) => s,
        Err(e) if is_config_error(&e) || matches!(e, Error::RankError { .. }) => return invalid(e),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_RUN_FAILED;
        }
    };
    let mut rows = vec![("closed_form", closed), ("nullspace", null)];
    if args.long_time {
        match integrate(
            cfg.engine,
            &params,
            &InitialCondition { m0: cfg.m0 },
            &cfg.settings,
        ) {
            Ok(traj) => rows.push(("long_time", steady_state_long_time(&traj))),
            Err(e) if is_config_error(&e) => return invalid(e),
            Err(e) => {
                eprintln!("error: integration failed: {e}");
                return EXIT_RUN_FAILED;
            }
        }
    }
    println!("{:<12} {:>24} {:>24} {:>24}", "source", "Mx", "W", "Mzy");
    for (name, s) in &rows {
        println!(
            "{name:<12} {:>24e} {:>24e} {:>24e}",
            s.mx_ss, s.w_ss, s.mzy_ss
        );
    }
    for (name, s) in &rows[1..] {
        println!(
            "{name} vs closed_form: Mx {}, W {}",
            rel_diff(s.mx_ss, closed.mx_ss),
            rel_diff(s.w_ss, closed.w_ss)
        );
    }
    EXIT_OK
}

pub fn verify(args: &VerifyArgs) -> i32 {
    verify_with(args, &Transcription::default())
}

/// `verify` against a given transcription.
pub fn verify_with(args: &VerifyArgs, transcription: &Transcription) -> i32 {
    let opts = VerifyOptions {
        trials: args.trials,
        seed: args.seed,
    };
    if let Some(dir) = &args.dump {
        if let Err(e) = dump_matrices(dir) {
            eprintln!("error: writing matrices to {}: {e}", dir.display());
            return EXIT_RUN_FAILED;
        }
    }
    let report = run_checks(&opts, transcription);
    print!("{}", report.render());
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Writes the projected and hand-written matrices at the `fig2` point.
fn dump_matrices(dir: &Path) -> Result<(), String> {
    let params = RunConfig::from_preset(Preset::Fig2)
        .single()
        .map_err(|e| e.to_string())?;
    let l = build_liouvillian(&params).map_err(|e| e.to_string())?;
    let projected = project_generator(&l, &TwoSpinBasis::new()).map_err(|e| e.to_string())?;
    let locked = reduce_to_locked(&projected).map_err(|e| e.to_string())?;
    fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    for (name, text) in [
        ("projected9.txt", projected.to_text()),
        (
            "transcribed9.txt",
            analytic_coefficients9(&params).to_text(),
        ),
        ("locked3.txt", locked.to_text()),
    ] {
        fs::write(dir.join(name), text).map_err(|e| e.to_string())?;
    }
    Ok(())
}
