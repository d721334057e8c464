// Copyright 2026 The qperceptron Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qperceptron::experiments::config::default_scale;
use qperceptron::experiments::{gate_count_report, run_sweep, run_verify, write_outputs, Mode, SweepConfig};
use qperceptron::perceptron::compute_angles;
use qperceptron::{taylor_coefficients, Activation, PerceptronInputs, Result, TaylorSeries64};

#[derive(Parser)]
#[command(name = "qperceptron", version, about = "Quantum perceptron with polynomial activations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep z̄ and write a CSV plus a JSON manifest per activation.
    Sweep {
        /// JSON or TOML sweep configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Activation (tanh, sigmoid, sin, swish or a JSON coefficient list).
        /// Without it or a config, all four built-ins run.
        #[arg(long)]
        activation: Option<Activation>,
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        shots: Option<Vec<u64>>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print Taylor coefficients, rotation angles and C_d.
    Angles {
        #[arg(long, default_value = "tanh")]
        activation: Activation,
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, short)]
        degree: usize,
        /// Constant added to the series.
        #[arg(long, default_value_t = 0.0)]
        shift: f64,
        #[arg(long)]
        json: bool,
    },
    /// Count gates of the lowered readout circuit over a range of degrees.
    Gates {
        #[arg(long, default_value = "tanh")]
        activation: Activation,
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long, default_value_t = 9)]
        max_degree: usize,
        /// Write the report as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite; exits nonzero when a check fails.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the outcomes as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep { config, activation, scale, degrees, shots, points, mode, seed, out } => {
            let overrides = Overrides { scale, degrees, shots, points, mode, seed };
            sweep(config, activation, overrides, out)
        }
        Command::Angles { activation, scale, degree, shift, json } => {
            let scale = scale.unwrap_or_else(|| default_scale(&activation));
            angles(&activation, scale, degree, shift, json).map(|()| true)
        }
        Command::Gates { activation, scale, min_degree, max_degree, out } => {
            let scale = scale.unwrap_or_else(|| default_scale(&activation));
            gates(&activation, scale, min_degree, max_degree, out).map(|()| true)
        }
        Command::Verify { seed, out } => verify(seed, out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

struct Overrides {
    scale: Option<f64>,
    degrees: Option<Vec<usize>>,
    shots: Option<Vec<u64>>,
    points: Option<usize>,
    mode: Option<Mode>,
    seed: Option<u64>,
}

impl Overrides {
    fn apply(&self, c: &mut SweepConfig) {
        if let Some(v) = self.scale {
            c.scale = v;
        }
        if let Some(v) = &self.degrees {
            c.degrees = v.clone();
        }
        if let Some(v) = &self.shots {
            c.shots = v.clone();
        }
        if let Some(v) = self.points {
            c.grid.points = v;
        }
        if let Some(v) = self.mode {
            c.mode = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
    }
}

fn sweep(
    config: Option<PathBuf>,
    activation: Option<Activation>,
    overrides: Overrides,
    out: Option<PathBuf>,
) -> Result<bool> {
    let configs = match (config, activation) {
        (Some(path), _) => vec![SweepConfig::load(&path)?],
        (None, Some(a)) => vec![SweepConfig::default_for(a)],
        (None, None) => [Activation::Tanh, Activation::Sigmoid, Activation::Sin, Activation::Swish]
            .into_iter()
            .map(SweepConfig::default_for)
            .collect(),
    };
    for mut c in configs {
        overrides.apply(&mut c);
        if let Some(dir) = &out {
            c.output = Some(dir.clone());
        }
        let dir = c.output.clone().unwrap_or_else(|| PathBuf::from("results"));
        let output = run_sweep(&c)?;
        let (csv, _) = write_outputs(&output, &dir, c.activation.name())?;
        println!("{} ({} mode, seed {}) -> {}", c.activation.name(), c.mode, c.seed, csv.display());
        for s in &output.summaries {
            let shots = s.shots.map_or_else(|| "-".to_string(), |v| v.to_string());
            println!("  d={:<2} S={:<8} C_d={:<10.4} mse={:.3e}", s.d, shots, s.c_d, s.mse);
        }
    }
    Ok(true)
}

fn angles(activation: &Activation, scale: f64, degree: usize, shift: f64, json: bool) -> Result<()> {
    let series: TaylorSeries64 = taylor_coefficients(activation, scale, degree, shift)?;
    let schedule = compute_angles(&series, degree)?;
    if json {
        let value = serde_json::json!({
            "activation": activation,
            "scale": scale,
            "shift": shift,
            "coefficients": series.coeffs(),
            "schedule": schedule,
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
        return Ok(());
    }
    println!("{activation}(k z) + {shift}, k = {scale}, d = {degree}");
    for (i, a) in series.coeffs().iter().enumerate() {
        println!("a_{i:<2} = {a:+.12e}");
    }
    for (i, t) in schedule.thetas.iter().enumerate() {
        println!("theta_{i:<2} = {t:+.12}");
    }
    println!("k   = {}", schedule.first_nonzero);
    println!("C_d = {:.12}", schedule.c_d);
    Ok(())
}

fn gates(activation: &Activation, scale: f64, min: usize, max: usize, out: Option<PathBuf>) -> Result<()> {
    let inputs = PerceptronInputs::uniform(0.5, vec![1.0; 4], 0.0)?;
    let degrees: Vec<usize> = (min.max(1)..=max).collect();
    let report = gate_count_report(&inputs, activation, scale, &degrees)?;
    println!("{:>3} {:>7} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}", "d", "total", "ry", "rz", "h", "x", "cx", "cz");
    for r in &report.rows {
        let c = &r.counts;
        println!("{:>3} {:>7} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}", r.d, r.total, c.ry, c.rz, c.h, c.x, c.cx, c.cz);
    }
    println!(
        "fit: {:.1} + {:.1}·(d − 1), R² = {:.5}",
        report.intercept, report.slope, report.r_squared
    );
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
    }
    Ok(())
}

fn verify(seed: u64, out: Option<PathBuf>) -> Result<bool> {
    let outcomes = run_verify(seed)?;
    for o in &outcomes {
        println!("{} {:<20} {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(&outcomes)? + "\n")?;
    }
    Ok(outcomes.iter().all(|o| o.passed))
}
