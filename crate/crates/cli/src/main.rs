// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! `qecc5`: synthesis, verification, simulation and costing of five-pair codes.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "qecc5",
    version,
    about = "Five-qubit code synthesis, verification, simulation and costing"
)]
struct Cli {
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a template and write the decoder circuit and code matrix.
    Synthesize {
        /// Template file.
        template: PathBuf,
        /// Fixed unknown values; runs a single staged reduction.
        #[arg(long)]
        choices: Option<PathBuf>,
        /// Largest BXOR count accepted.
        #[arg(long, default_value_t = 6)]
        budget: usize,
        /// Seed for sampled search (default 0).
        #[arg(long, conflicts_with_all = ["exhaustive", "choices"])]
        seed: Option<u64>,
        /// Enumerate the whole staged search space; only practical on templates with few open columns.
        #[arg(long, conflicts_with = "choices")]
        exhaustive: bool,
        /// Output directory.
        #[arg(long, default_value = "synth-out")]
        out: PathBuf,
        /// Pulse costs as `single,two,three`.
        #[arg(long, default_value = "1,3,4")]
        rules: String,
    },
    /// Check a code matrix and print its syndrome table.
    VerifyMatrix { matrix: PathBuf },
    /// Check that a decoder circuit realizes a valid code matrix.
    VerifyCircuit { circuit: PathBuf, matrix: PathBuf },
    /// Run one encode, error, decode and recover cycle.
    Simulate {
        /// Decoder circuit.
        circuit: PathBuf,
        /// Syndrome index 0..16.
        #[arg(long)]
        syndrome: usize,
        /// Amplitude of |0>, e.g. `0.6` or `0.6+0.8i`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Amplitude of |1>.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Cost the encoder of a decoder circuit.
    Cost {
        circuit: PathBuf,
        #[arg(long, default_value = "1,3,4")]
        rules: String,
    },
    /// Syndrome table of a code matrix (default: the worked matrix).
    Table1 {
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Cost comparison against recorded five-qubit encoders.
    Table2 {
        /// Decoder circuit to cost (default: the synthesized worked circuit).
        #[arg(long)]
        circuit: Option<PathBuf>,
        #[arg(long, default_value = "1,3,4")]
        rules: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command, cli.json) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
