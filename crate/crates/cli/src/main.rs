// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

use clap::Parser;
use spinlock_cli::{run, Cli};

fn main() {
    std::process::exit(run(&Cli::parse()));
}
