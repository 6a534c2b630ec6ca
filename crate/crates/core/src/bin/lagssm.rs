// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lagssm::experiment::{
    cmd_lagshift, cmd_matrices, cmd_reconstruct, cmd_tables, CommandReport, ExperimentConfig, ShiftDirection,
    SignalSource,
};
use lagssm::{InputModel, QuadratureConfig, WarpSpec};

#[derive(Parser)]
#[command(
    name = "lagssm",
    version,
    about = "Lag-operator state-space models and their HiPPO-LegS checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write table1.csv, table2.csv and table3.csv.
    Tables(Common),
    /// Compare the lag-operator and HiPPO-LegS reconstructions.
    Reconstruct(Common),
    /// Write one shifted basis function to lagshift.csv.
    Lagshift {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_show: Option<usize>,
        #[arg(long, value_enum)]
        direction: Option<Direction>,
    },
    /// Dump every matrix to matrices.json.
    Matrices(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum WarpArg {
    Exp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Dirac,
    Zoh,
    Foh,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Forward,
    Backward,
}

#[derive(Args)]
struct Common {
    /// JSON config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, value_enum)]
    warp: Option<WarpArg>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long, value_enum)]
    input_model: Option<ModelArg>,
    #[arg(long)]
    quad_points: Option<usize>,
    #[arg(long)]
    quad_panels: Option<usize>,
    /// lorenz, sine or csv:PATH
    #[arg(long)]
    signal: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn resolve(&self) -> lagssm::Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        if let Some(n) = self.n {
            cfg.n_basis = n;
        }
        if let Some(d) = self.delta {
            cfg.delta = d;
        }
        if self.warp.is_some() || self.tau.is_some() {
            cfg.warp = WarpSpec::exponential(self.tau.unwrap_or(cfg.warp.rate()))?;
        }
        if let Some(m) = self.input_model {
            cfg.input_model = match m {
                ModelArg::Dirac => InputModel::Dirac,
                ModelArg::Zoh => InputModel::Zoh,
                ModelArg::Foh => InputModel::Foh,
            };
        }
        if self.quad_points.is_some() || self.quad_panels.is_some() {
            cfg.quadrature = QuadratureConfig::new(
                self.quad_points.unwrap_or(cfg.quadrature.points_per_panel()),
                self.quad_panels.unwrap_or(cfg.quadrature.panels()),
            )?;
        }
        if let Some(s) = &self.signal {
            cfg.signal = s.parse::<SignalSource>()?;
        }
        if let Some(o) = &self.out {
            cfg.output_dir = o.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> lagssm::Result<CommandReport> {
    match cli.command {
        Command::Tables(c) => cmd_tables(&c.resolve()?),
        Command::Reconstruct(c) => cmd_reconstruct(&c.resolve()?),
        Command::Matrices(c) => cmd_matrices(&c.resolve()?),
        Command::Lagshift {
            common,
            n_show,
            direction,
        } => {
            let mut cfg = common.resolve()?;
            if let Some(n) = n_show {
                cfg.lagshift.n_show = Some(n);
            }
            if let Some(d) = direction {
                cfg.lagshift.direction = match d {
                    Direction::Forward => ShiftDirection::Forward,
                    Direction::Backward => ShiftDirection::Backward,
                };
            }
            cmd_lagshift(&cfg)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            for f in &report.files {
                println!("wrote {}", f.display());
            }
            for c in &report.checks {
                println!("{c}");
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
