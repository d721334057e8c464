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

//! Invariant suite run by `verify`.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use super::config::{GridSpec, Mode, SweepConfig};
use super::gates::gate_count_report;
use super::output::csv_bytes;
use super::sweep::run_sweep;
use crate::circuit::{Circuit, RegisterLayout};
use crate::error::Result;
use crate::perceptron::{assemble_core, build_sv, eval_fd};
use crate::readout::{build_readout_circuit, build_readout_circuit_full, closed_form_p0, qae_estimate, shifted_series};
use crate::series::{taylor_coefficients, Activation};
use crate::sim::{rng_from_seed, simulate};
use crate::state_prep::{build_uz, PerceptronInputs};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, worst: f64, tol: f64) -> CheckOutcome {
    CheckOutcome { name, passed: worst <= tol, detail: format!("worst {worst:.3e}, tolerance {tol:.0e}") }
}

fn unit_weights(zbar: f64) -> Result<PerceptronInputs<f64>> {
    PerceptronInputs::uniform(zbar, vec![1.0; 4], 0.0)
}

fn grid(points: usize) -> Vec<f64> {
    GridSpec { min: -1.0, max: 1.0, points }.values()
}

/// The built-in activations with their scales and degree lists.
pub fn standard_cases() -> Vec<(Activation, f64, Vec<usize>)> {
    vec![
        (Activation::Tanh, 2.0, vec![3, 5, 7, 9]),
        (Activation::Sigmoid, 4.0, vec![3, 5, 7, 9]),
        (Activation::Sin, 4.0, vec![3, 5, 7, 9]),
        (Activation::Swish, 3.0, vec![4, 6, 8, 10]),
    ]
}

/// `⟨N−1|U_z|0⟩ = z` for random inputs.
pub fn check_uz_contract(seed: u64, samples: usize) -> Result<CheckOutcome> {
    let mut rng = rng_from_seed(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let mut draw = || rng.random_range(-1.0..=1.0);
        let x: Vec<f64> = (0..4).map(|_| draw()).collect();
        let w: Vec<f64> = (0..4).map(|_| draw()).collect();
        let inputs = PerceptronInputs::new(x, w, draw())?;
        let amp = simulate(&build_uz(&inputs, 3)?).amplitudes()[7];
        worst = worst.max((amp.re - inputs.z()).abs()).max(amp.im.abs());
    }
    Ok(outcome("uz-contract", worst, 1e-10))
}

/// `S_V X^⊗n |0⟩` carries `2^{-d/2} z^k` on `|2^k − 1⟩_a |N−1⟩_q`.
pub fn check_power_encoding(points: usize) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for d in [3, 5, 7, 9] {
        for zbar in grid(points) {
            let inputs = unit_weights(zbar)?;
            let mut prep = Circuit::new(RegisterLayout::new(3, d, false));
            prep.push_x_on_q()?;
            prep.append(&build_sv(&build_uz(&inputs, 3)?, 3, d)?)?;
            let state = simulate(&prep);
            let norm = 2f64.powi(d as i32).sqrt().recip();
            for k in 0..=d {
                let amp = state.amplitude(0, (1 << k) - 1, 7)?;
                worst = worst.max((amp.re - norm * inputs.z().powi(k as i32)).abs());
            }
        }
    }
    Ok(outcome("power-encoding", worst, 1e-10))
}

/// `C_d 2^{d/2} ⟨0|core|0⟩ = T_d(z)` for the built-in activations.
pub fn check_polynomial_identity(points: usize) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for (activation, scale, degrees) in standard_cases() {
        for d in degrees {
            let series = taylor_coefficients(&activation, scale, d, 0.0)?;
            for zbar in grid(points) {
                let b = assemble_core(&unit_weights(zbar)?, &series, 3, d)?;
                let amp = simulate(&b.core).amplitudes()[0].re;
                let value = b.schedule.c_d * 2f64.powi(d as i32).sqrt() * amp;
                worst = worst.max((value - series.eval(b.z)).abs());
            }
        }
    }
    Ok(outcome("polynomial-identity", worst, 1e-9))
}

/// Readout probability against `¼(1 + 2^{-d/2} f_d)²`, and the optimized
/// circuit against the fully controlled one.
pub fn check_readout(points: usize) -> Result<Vec<CheckOutcome>> {
    let mut worst_p: f64 = 0.0;
    let mut worst_state: f64 = 0.0;
    for (activation, scale, degrees) in standard_cases() {
        for d in degrees {
            let series = taylor_coefficients(&activation, scale, d, 0.0)?;
            for (i, zbar) in grid(points).into_iter().enumerate() {
                let b = assemble_core(&unit_weights(zbar)?, &series, 3, d)?;
                let optimized = simulate(&build_readout_circuit(&b)?);
                let closed = 0.25 * (1.0 + 2f64.powi(d as i32).sqrt().recip() * eval_fd(b.z, &b.schedule)).powi(2);
                worst_p = worst_p.max((optimized.amplitudes()[0].norm_sqr() - closed).abs());
                worst_p = worst_p.max((closed_form_p0(&b) - closed).abs());
                if i % 10 == 0 {
                    let full = simulate(&build_readout_circuit_full(&b)?);
                    let diff = optimized
                        .amplitudes()
                        .iter()
                        .zip(full.amplitudes())
                        .map(|(a, c)| (a - c).norm())
                        .fold(0.0, f64::max);
                    worst_state = worst_state.max(diff);
                }
            }
        }
    }
    Ok(vec![outcome("readout-identity", worst_p, 1e-10), outcome("readout-variants", worst_state, 1e-12)])
}

/// `|ã − a| ≤ π/M + π²/M²` on a γ-shifted sigmoid of degree 3.
pub fn check_qae_bound(points: usize) -> Result<CheckOutcome> {
    let series = shifted_series(&taylor_coefficients::<f64>(&Activation::Sigmoid, 4.0, 3, 0.0)?)?;
    let mut worst_ratio: f64 = 0.0;
    for m in [4, 6, 8] {
        let big_m = (1usize << m) as f64;
        let bound = PI / big_m + (PI / big_m).powi(2);
        for zbar in grid(points) {
            let b = assemble_core(&unit_weights(zbar)?, &series, 3, 3)?;
            let a = simulate(&b.core).amplitudes()[0].norm_sqr();
            let est = qae_estimate(&b, m)?;
            worst_ratio = worst_ratio.max((est.a_tilde - a).abs() / bound);
        }
    }
    Ok(CheckOutcome {
        name: "qae-bound",
        passed: worst_ratio <= 1.0,
        detail: format!("worst |ã − a| is {worst_ratio:.3} of the bound"),
    })
}

/// Lowered counts over `d = 1..=9` are close to linear.
pub fn check_gate_growth() -> Result<CheckOutcome> {
    let degrees: Vec<usize> = (1..=9).collect();
    let report = gate_count_report(&unit_weights(0.5)?, &Activation::Tanh, 2.0, &degrees)?;
    Ok(CheckOutcome {
        name: "gate-growth",
        passed: report.r_squared >= 0.99 && report.slope > 0.0,
        detail: format!(
            "slope {:.1}, count at d=1 {:.1}, R² {:.5}",
            report.slope, report.intercept, report.r_squared
        ),
    })
}

/// Two identical shot sweeps serialize to identical bytes.
pub fn check_determinism(seed: u64) -> Result<CheckOutcome> {
    let mut config = SweepConfig::default_for(Activation::Tanh);
    config.degrees = vec![3, 5];
    config.shots = vec![1 << 12, 1 << 14];
    config.grid.points = 41;
    config.mode = Mode::Shots;
    config.seed = seed;
    let first = csv_bytes(&run_sweep(&config)?.records)?;
    let second = csv_bytes(&run_sweep(&config)?.records)?;
    Ok(CheckOutcome {
        name: "determinism",
        passed: first == second,
        detail: format!("{} bytes per run", first.len()),
    })
}

/// Every check, in a fixed order.
pub fn run_verify(seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut out = vec![
        check_uz_contract(seed, 1000)?,
        check_power_encoding(21)?,
        check_polynomial_identity(41)?,
    ];
    out.extend(check_readout(41)?);
    out.push(check_qae_bound(11)?);
    out.push(check_gate_growth()?);
    out.push(check_determinism(seed)?);
    Ok(out)
}
