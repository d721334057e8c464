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

//! Grid sweeps of the perceptron output against its classical target.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Mode, SweepConfig};
use super::fit::{polyfit, polyval};
use crate::error::{Error, Result};
use crate::perceptron::{assemble_core, CoreCircuitBundle};
use crate::readout::{
    build_readout_circuit, estimate_output, output_from_probability, predicted_sigma, qae_estimate, readout_probability,
    shifted_series,
};
use crate::series::{taylor_coefficients, TaylorSeries};
use crate::sim::{sample_counts_on_stream, simulate};
use crate::state_prep::PerceptronInputs;

/// One grid point at one degree. Columns follow the CSV order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub d: usize,
    pub zbar: f64,
    pub z: f64,
    /// Exact activation `f(k z)`.
    pub y: f64,
    /// Unshifted Taylor polynomial `T_d(z)`.
    pub t_d: f64,
    pub y_q: f64,
    /// `y − T_d`.
    pub r_c: f64,
    /// `y − ỹ_q` with `ỹ_q` the degree-`d` least-squares fit of `y_q`.
    pub r_q: f64,
    /// Readout probability `P`, or `ã` in QAE mode.
    pub p: f64,
    pub sigma_pred: f64,
}

/// Per-degree summary written to the manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub d: usize,
    pub shots: Option<u64>,
    pub c_d: f64,
    /// Mean of `(R_q − R_c)²` over the gray region.
    pub mse: f64,
    pub gray_points: usize,
    /// Largest `|ỹ_q − T_d|` over the whole grid.
    pub max_fit_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepOutput {
    pub config: SweepConfig,
    pub records: Vec<SweepRecord>,
    pub summaries: Vec<DegreeSummary>,
}

struct PointSample {
    y_q: f64,
    p: f64,
    sigma_pred: f64,
}

/// Run every degree of `config`. Records are ordered by degree, then grid.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    config.validate()?;
    let mut records = Vec::new();
    let mut summaries = Vec::new();
    for index in 0..config.degrees.len() {
        let (rows, summary) = sweep_degree(config, index)?;
        records.extend(rows);
        summaries.push(summary);
    }
    Ok(SweepOutput { config: config.clone(), records, summaries })
}

/// Sweep the grid for `config.degrees[index]`.
///
/// Point `i` samples from stream `index·points + i` of the run seed, so
/// every point of every degree draws from its own sequence.
pub fn sweep_degree(config: &SweepConfig, index: usize) -> Result<(Vec<SweepRecord>, DegreeSummary)> {
    let d = config.degrees[index];
    let n = config.n();
    let shots = config.shots_for(index);
    let series: TaylorSeries<f64> = taylor_coefficients(&config.activation, config.scale, d, 0.0)?;
    let circuit_series = match config.mode {
        Mode::Qae => shifted_series(&series)?,
        _ => series.clone(),
    };
    let grid = config.grid.values();
    let offset = (index * grid.len()) as u64;

    let samples: Vec<(f64, PointSample)> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &zbar)| {
            let inputs = PerceptronInputs::uniform(zbar, config.weights.clone(), config.bias)?;
            let bundle = assemble_core(&inputs, &circuit_series, n, d)?;
            let sample = sample_point(config, &bundle, shots, offset + i as u64)?;
            Ok((inputs.z(), sample))
        })
        .collect::<Result<_>>()?;

    let z: Vec<f64> = samples.iter().map(|(z, _)| *z).collect();
    let y_q: Vec<f64> = samples.iter().map(|(_, s)| s.y_q).collect();
    let fit = polyfit(&z, &y_q, d)?;

    let mut max_fit_deviation: f64 = 0.0;
    let records: Vec<SweepRecord> = grid
        .iter()
        .zip(&samples)
        .map(|(&zbar, (z, s))| {
            let y = series.target(*z);
            let t_d = series.eval(*z);
            let fitted = polyval(&fit, *z);
            max_fit_deviation = max_fit_deviation.max((fitted - t_d).abs());
            SweepRecord { d, zbar, z: *z, y, t_d, y_q: s.y_q, r_c: y - t_d, r_q: y - fitted, p: s.p, sigma_pred: s.sigma_pred }
        })
        .collect();

    let half_width = config.gray_lambda / config.scale.abs();
    let gray_points = records.iter().filter(|r| in_gray_region(r, half_width)).count();
    let mse = mse_report(&records, half_width)?;
    let c_d = crate::perceptron::compute_angles(&circuit_series, d)?.c_d;
    Ok((records, DegreeSummary { d, shots, c_d, mse, gray_points, max_fit_deviation }))
}

fn sample_point(config: &SweepConfig, bundle: &CoreCircuitBundle<f64>, shots: Option<u64>, stream: u64) -> Result<PointSample> {
    let d = bundle.d;
    let c_d = bundle.schedule.c_d;
    match config.mode {
        Mode::ExactAmplitude => {
            let p = readout_probability(&build_readout_circuit(bundle)?);
            let sigma_pred = shots.map_or(0.0, |s| predicted_sigma(p, s, d, c_d));
            Ok(PointSample { y_q: output_from_probability(p, d, c_d), p, sigma_pred })
        }
        Mode::Shots => {
            let shots = shots.ok_or_else(|| Error::config("shots", "shots mode needs a shot budget"))?;
            let state = simulate(&build_readout_circuit(bundle)?);
            let est = estimate_output(&sample_counts_on_stream(&state, shots, config.seed, stream)?, d, c_d);
            Ok(PointSample { y_q: est.y_q, p: est.p, sigma_pred: est.sigma_pred })
        }
        Mode::Qae => {
            let est = qae_estimate(bundle, config.qae_qubits)?;
            // width of y_q over ã ± (π/M + π²/M²), halved
            let big_m = est.big_m as f64;
            let delta = std::f64::consts::PI / big_m + (std::f64::consts::PI / big_m).powi(2);
            let hi = (est.a_tilde + delta).min(1.0).sqrt();
            let lo = (est.a_tilde - delta).max(0.0).sqrt();
            let scale = 2f64.powi(d as i32).sqrt() * c_d.abs();
            Ok(PointSample { y_q: est.y_q, p: est.a_tilde, sigma_pred: 0.5 * scale * (hi - lo) })
        }
    }
}

fn in_gray_region(r: &SweepRecord, half_width: f64) -> bool {
    r.zbar.abs() <= half_width + 1e-12
}

/// Mean of `(R_q − R_c)²` over records with `|z̄| ≤ half_width`.
pub fn mse_report(records: &[SweepRecord], half_width: f64) -> Result<f64> {
    let (sum, count) = records
        .iter()
        .filter(|r| in_gray_region(r, half_width))
        .fold((0.0, 0usize), |(s, c), r| (s + (r.r_q - r.r_c).powi(2), c + 1));
    if count == 0 {
        return Err(Error::InvalidInput(format!("no record has |zbar| <= {half_width}")));
    }
    Ok(sum / count as f64)
}
