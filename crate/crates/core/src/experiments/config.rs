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

//! Sweep configuration, its defaults and validation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::readout::MAX_PHASE_QUBITS;
use crate::series::Activation;
use crate::state_prep::PerceptronInputs;

/// Largest `n + d + 1` a sweep may simulate.
pub const MAX_SWEEP_QUBITS: usize = 20;
/// Grid resolution of the default sweeps.
pub const DEFAULT_GRID_POINTS: usize = 201;

/// How `y_q` is obtained at each grid point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Inversion of the exact readout probability, no sampling noise.
    ExactAmplitude,
    /// Inversion of `P = m/S` from sampled measurements.
    #[default]
    Shots,
    /// Amplitude estimation on a shifted series.
    Qae,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::ExactAmplitude => "exact-amplitude",
            Mode::Shots => "shots",
            Mode::Qae => "qae",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-amplitude" | "exact" => Ok(Mode::ExactAmplitude),
            "shots" => Ok(Mode::Shots),
            "qae" => Ok(Mode::Qae),
            other => Err(Error::config("mode", format!("unknown mode `{other}` (exact-amplitude, shots, qae)"))),
        }
    }
}

/// Evenly spaced `z̄` values from `min` to `max` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.max } else { self.min + step * i as f64 })
            .collect()
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { min: -1.0, max: 1.0, points: DEFAULT_GRID_POINTS }
    }
}

fn default_qae_qubits() -> usize {
    6
}

fn default_gray_lambda() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub activation: Activation,
    pub scale: f64,
    pub degrees: Vec<usize>,
    /// Shot budget paired with each entry of `degrees`.
    #[serde(default)]
    pub shots: Vec<u64>,
    #[serde(default)]
    pub grid: GridSpec,
    pub weights: Vec<f64>,
    #[serde(default)]
    pub bias: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_qae_qubits")]
    pub qae_qubits: usize,
    /// Half-width of the MSE window is `gray_lambda / scale`.
    #[serde(default = "default_gray_lambda")]
    pub gray_lambda: f64,
    /// Size of the `q` register; the smallest that fits when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_qubits: Option<usize>,
    /// Directory receiving the CSV and manifest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// Conventional scale `k` used with each built-in activation.
pub fn default_scale(activation: &Activation) -> f64 {
    match activation {
        Activation::Tanh => 2.0,
        Activation::Sigmoid => 4.0,
        Activation::Sin => 4.0,
        Activation::Swish => 3.0,
        Activation::Custom(_) => 1.0,
    }
}

/// The default `(d, S)` pairs; swish runs one degree higher at equal `S`.
pub fn default_matrix(activation: &Activation) -> (Vec<usize>, Vec<u64>) {
    let bump = usize::from(*activation == Activation::Swish);
    let degrees = [3, 5, 7, 9].iter().map(|d| d + bump).collect();
    (degrees, vec![1 << 16, 1 << 18, 1 << 20, 1 << 22])
}

impl SweepConfig {
    /// Four inputs `x = z̄(1,1,1,1)`, unit weights, zero bias, the default
    /// matrix and grid, shots mode.
    pub fn default_for(activation: Activation) -> SweepConfig {
        let (degrees, shots) = default_matrix(&activation);
        SweepConfig {
            scale: default_scale(&activation),
            activation,
            degrees,
            shots,
            grid: GridSpec::default(),
            weights: vec![1.0; 4],
            bias: 0.0,
            seed: 1,
            mode: Mode::Shots,
            qae_qubits: default_qae_qubits(),
            gray_lambda: default_gray_lambda(),
            n_qubits: None,
            output: None,
        }
    }

    /// Read a TOML (by extension) or JSON file and validate it.
    pub fn load(path: &Path) -> Result<SweepConfig> {
        let text = std::fs::read_to_string(path)?;
        let config: SweepConfig = match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => toml::from_str(&text).map_err(|e| Error::Toml(e.to_string()))?,
            _ => serde_json::from_str(&text)?,
        };
        config.validate()?;
        Ok(config)
    }

    /// `q` register size in use.
    pub fn n(&self) -> usize {
        self.n_qubits.unwrap_or_else(|| min_qubits(self.weights.len()))
    }

    /// Shot budget for the `i`-th degree, if any.
    pub fn shots_for(&self, i: usize) -> Option<u64> {
        self.shots.get(i).copied()
    }

    pub fn validate(&self) -> Result<()> {
        if !self.scale.is_finite() || self.scale == 0.0 {
            return Err(Error::config("scale", "must be finite and nonzero"));
        }
        if self.degrees.is_empty() {
            return Err(Error::config("degrees", "at least one degree is required"));
        }
        if let Some(d) = self.degrees.iter().find(|&&d| d == 0) {
            return Err(Error::config("degrees", format!("degree {d} is below 1")));
        }
        if self.mode == Mode::Shots || !self.shots.is_empty() {
            if self.shots.len() != self.degrees.len() {
                return Err(Error::config(
                    "shots",
                    format!("{} shot budgets for {} degrees", self.shots.len(), self.degrees.len()),
                ));
            }
            if self.shots.contains(&0) {
                return Err(Error::config("shots", "shot budgets must be positive"));
            }
        }
        let g = &self.grid;
        if !(g.min.is_finite() && g.max.is_finite()) || g.min < -1.0 || g.max > 1.0 || g.min > g.max {
            return Err(Error::config("grid", format!("[{}, {}] is not a sub-interval of [-1, 1]", g.min, g.max)));
        }
        let max_d = *self.degrees.iter().max().expect("non-empty");
        if g.points < max_d + 1 {
            return Err(Error::config(
                "grid.points",
                format!("{} points cannot fit a degree-{max_d} polynomial", g.points),
            ));
        }
        if g.points > 1 && g.min == g.max {
            return Err(Error::config("grid", "min and max coincide"));
        }
        PerceptronInputs::uniform(0.0, self.weights.clone(), self.bias)
            .map_err(|e| Error::config("weights", e.to_string()))?;
        let needed = min_qubits(self.weights.len());
        let n = self.n();
        if n < needed {
            return Err(Error::config("n_qubits", format!("{n} qubits cannot hold {} weights", self.weights.len())));
        }
        if n + max_d + 1 > MAX_SWEEP_QUBITS {
            return Err(Error::config(
                "degrees",
                format!("n + d + 1 = {} exceeds the {MAX_SWEEP_QUBITS}-qubit limit", n + max_d + 1),
            ));
        }
        if self.mode == Mode::Qae && !(1..=MAX_PHASE_QUBITS).contains(&self.qae_qubits) {
            return Err(Error::config("qae_qubits", format!("must lie in 1..={MAX_PHASE_QUBITS}")));
        }
        if !(self.gray_lambda.is_finite() && self.gray_lambda > 0.0) {
            return Err(Error::config("gray_lambda", "must be positive"));
        }
        if let Activation::Custom(c) = &self.activation {
            if c.is_empty() {
                return Err(Error::config("activation", "custom activation needs coefficients"));
            }
        }
        Ok(())
    }
}

fn min_qubits(n_in: usize) -> usize {
    (n_in + 3).next_power_of_two().trailing_zeros() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        let v = GridSpec::default().values();
        assert_eq!(v.len(), 201);
        assert_eq!(v[0], -1.0);
        assert_eq!(v[200], 1.0);
        assert!((v[100]).abs() < 1e-15);
        assert_eq!(GridSpec { min: 0.25, max: 0.25, points: 1 }.values(), vec![0.25]);
    }

    #[test]
    fn default_matrix_and_scales() {
        let c = SweepConfig::default_for(Activation::Swish);
        assert_eq!(c.degrees, vec![4, 6, 8, 10]);
        assert_eq!(c.shots, vec![1 << 16, 1 << 18, 1 << 20, 1 << 22]);
        assert_eq!(c.scale, 3.0);
        assert_eq!(c.n(), 3);
        c.validate().unwrap();
        assert_eq!(SweepConfig::default_for(Activation::Tanh).degrees, vec![3, 5, 7, 9]);
    }

    fn field_of(err: Error) -> String {
        match err {
            Error::Config { field, .. } => field,
            other => panic!("expected a config error, got {other}"),
        }
    }

    #[test]
    fn validation_names_the_field() {
        let base = SweepConfig::default_for(Activation::Tanh);
        let mut c = base.clone();
        c.shots.pop();
        assert_eq!(field_of(c.validate().unwrap_err()), "shots");
        let mut c = base.clone();
        c.grid.max = 1.5;
        assert_eq!(field_of(c.validate().unwrap_err()), "grid");
        let mut c = base.clone();
        c.weights[0] = 2.0;
        assert_eq!(field_of(c.validate().unwrap_err()), "weights");
        let mut c = base.clone();
        c.grid.points = 5;
        assert_eq!(field_of(c.validate().unwrap_err()), "grid.points");
        let mut c = base.clone();
        c.degrees = vec![0];
        c.shots = vec![10];
        assert_eq!(field_of(c.validate().unwrap_err()), "degrees");
        let mut c = base;
        c.mode = Mode::ExactAmplitude;
        c.shots.clear();
        c.validate().unwrap();
    }

    #[test]
    fn mode_names_round_trip() {
        for m in [Mode::ExactAmplitude, Mode::Shots, Mode::Qae] {
            assert_eq!(m.name().parse::<Mode>().unwrap(), m);
            assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{}\"", m.name()));
        }
        assert!("fast".parse::<Mode>().is_err());
    }

    #[test]
    fn toml_and_json_parse() {
        let toml_text = r#"
            activation = "sigmoid"
            scale = 4.0
            degrees = [3]
            shots = [1024]
            weights = [1.0, 1.0, 1.0, 1.0]
            mode = "exact-amplitude"
            [grid]
            min = -1.0
            max = 1.0
            points = 11
        "#;
        let c: SweepConfig = toml::from_str(toml_text).unwrap();
        assert_eq!(c.activation, Activation::Sigmoid);
        assert_eq!(c.qae_qubits, 6);
        c.validate().unwrap();
        let json = r#"{"activation":{"custom":[0,1]},"scale":1,"degrees":[1],"weights":[0.5],"mode":"qae"}"#;
        let c: SweepConfig = serde_json::from_str(json).unwrap();
        assert_eq!(c.activation, Activation::Custom(vec![0.0, 1.0]));
        assert_eq!(c.grid.points, DEFAULT_GRID_POINTS);
        c.validate().unwrap();
        assert!(serde_json::from_str::<SweepConfig>(r#"{"activation":"tanh","scale":2,"degrees":[3],"weights":[1],"typo":1}"#).is_err());
    }
}
