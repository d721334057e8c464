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

//! Gate counts of the lowered readout circuit as the degree grows.

use serde::Serialize;

use super::fit::linear_fit;
use crate::error::{Error, Result};
use crate::lower::{lowered_counts, GateCounts};
use crate::perceptron::assemble_core;
use crate::readout::build_readout_circuit;
use crate::series::{taylor_coefficients, Activation};
use crate::state_prep::PerceptronInputs;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateCountRow {
    pub d: usize,
    pub total: usize,
    pub counts: GateCounts,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateCountReport {
    pub rows: Vec<GateCountRow>,
    /// Extra gates per unit of `d`.
    pub slope: f64,
    /// Fitted count at `d = 1`.
    pub intercept: f64,
    pub r_squared: f64,
}

/// Count the lowered optimized readout circuit for every `d` in `degrees`
/// and fit `count ≈ intercept + slope·(d − 1)`.
pub fn gate_count_report(
    inputs: &PerceptronInputs<f64>,
    activation: &Activation,
    scale: f64,
    degrees: &[usize],
) -> Result<GateCountReport> {
    if degrees.len() < 2 {
        return Err(Error::InvalidInput("a gate-count fit needs two or more degrees".into()));
    }
    let n = inputs.min_qubits();
    let rows = degrees
        .iter()
        .map(|&d| {
            let series = taylor_coefficients(activation, scale, d, 0.0)?;
            let bundle = assemble_core(inputs, &series, n, d)?;
            let counts = lowered_counts(&build_readout_circuit(&bundle)?);
            Ok(GateCountRow { d, total: counts.total(), counts })
        })
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = rows.iter().map(|r| r.d as f64 - 1.0).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.total as f64).collect();
    let fit = linear_fit(&x, &y)?;
    Ok(GateCountReport { rows, slope: fit.slope, intercept: fit.intercept, r_squared: fit.r_squared })
}
