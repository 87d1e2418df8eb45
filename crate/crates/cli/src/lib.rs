// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! `spinlock` command line: simulate, sweep, steady, verify.

pub mod commands;
pub mod config;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use spinlock_core::integrator::Engine;

use crate::config::{parse_list, ConfigError, ConfigLayer, Preset};

#[derive(Debug, Parser)]
#[command(
    name = "spinlock",
    version,
    about = "Spin-locking dynamics of a dipolar spin pair"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one parameter point and write the trajectory CSV.
    Simulate(RunArgs),
    /// Run a parameter grid and write one CSV row per point.
    Sweep(RunArgs),
    /// Print closed-form, null-space and (optionally) long-time steady states.
    Steady(SteadyArgs),
    /// Check the generator projection, conservation laws and engines.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Parameter preset (fig1, fig2, fig3).
    #[arg(long)]
    pub preset: Option<Preset>,
    /// `key = value` config file; flags override it.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Drive strength in rad/s (`N*2pi` for Hz); comma list for sweeps.
    #[arg(long, value_name = "RAD_S", allow_hyphen_values = true)]
    pub omega1: Option<String>,
    /// Dipolar coupling in rad/s (`N*2pi` for Hz); comma list for sweeps.
    #[arg(long, value_name = "RAD_S", allow_hyphen_values = true)]
    pub omega_d: Option<String>,
    /// Correlation time in s; comma list for sweeps.
    #[arg(long, value_name = "S")]
    pub tau_c: Option<String>,
    #[arg(long)]
    pub m0: Option<f64>,
    /// Integration end time (s).
    #[arg(long, value_name = "S")]
    pub t_end: Option<f64>,
    /// Fixed RK4 step (s).
    #[arg(long, value_name = "S", conflicts_with = "rtol")]
    pub dt: Option<f64>,
    /// Adaptive Dormand–Prince relative tolerance.
    #[arg(long)]
    pub rtol: Option<f64>,
    /// Spacing of stored samples (s).
    #[arg(long, value_name = "S")]
    pub sample_spacing: Option<f64>,
    /// density, observable9 or reduced3.
    #[arg(long)]
    pub engine: Option<Engine>,
    /// Output CSV path.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Directory for the default output file name.
    #[arg(long, value_name = "DIR", env = "SPINLOCK_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

impl RunArgs {
    pub fn layer(&self) -> Result<ConfigLayer, ConfigError> {
        let list = |key: &str, v: &Option<String>, freq: bool| {
            v.as_deref().map(|s| parse_list(key, s, freq)).transpose()
        };
        Ok(ConfigLayer {
            preset: self.preset,
            omega1: list("omega1", &self.omega1, true)?,
            omega_d: list("omega_d", &self.omega_d, true)?,
            tau_c: list("tau_c", &self.tau_c, false)?,
            m0: self.m0,
            engine: self.engine,
            t_end: self.t_end,
            dt: self.dt,
            rtol: self.rtol,
            sample_spacing: self.sample_spacing,
            out: self.out.clone(),
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct SteadyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Also integrate to `t_end` and report the final values.
    #[arg(long)]
    pub long_time: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Random parameter draws for the coefficient comparison.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Also write the coefficient matrices at the fig2 point to this directory.
    #[arg(long, value_name = "DIR")]
    pub dump: Option<PathBuf>,
}

pub fn run(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Sweep(a) => commands::sweep_cmd(a),
        Command::Steady(a) => commands::steady(a),
        Command::Verify(a) => commands::verify(a),
    }
}
