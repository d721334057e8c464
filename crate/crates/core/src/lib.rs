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

//! Simulation of a quantum perceptron with polynomial activations.
//!
//! An input vector and a weight vector are amplitude-encoded so that a
//! unitary `U_z` carries `z = (w·x + b)/(N_in + 1)`. Ancilla registers then
//! raise `z` to powers and mix them into a degree-`d` polynomial whose
//! coefficients follow the Taylor series of an activation function. A
//! Hadamard test or amplitude estimation recovers the output.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the common `f64` case.

pub mod circuit;
pub mod error;
pub mod experiments;
pub mod lower;
pub mod perceptron;
pub mod readout;
pub mod scalar;
pub mod series;
pub mod sim;
pub mod state_prep;

pub use circuit::{Control, Gate, GateKind, Polarity, QubitId, Register, RegisterLayout};
pub use error::{Error, Result};
pub use lower::GateCounts;
pub use perceptron::{assemble_core, build_su, build_sv, compute_angles, eval_fd};
pub use readout::{build_readout_circuit, estimate_output, qae_estimate};
pub use scalar::Real;
pub use series::{series_eval, taylor_coefficients, Activation};
pub use sim::{sample_counts, sample_counts_on_stream, simulate, ShotHistogram};
pub use state_prep::{build_uz, EncodingLayout, PerceptronInputs};

pub type Circuit64 = circuit::Circuit<f64>;
pub type StateVector64 = sim::StateVector<f64>;
pub type TaylorSeries64 = series::TaylorSeries<f64>;
pub type AngleSchedule64 = perceptron::AngleSchedule<f64>;
pub type CoreBundle64 = perceptron::CoreCircuitBundle<f64>;
pub type Inputs64 = state_prep::PerceptronInputs<f64>;
pub type ShotEstimate64 = readout::ShotEstimate<f64>;
pub type QaeEstimate64 = readout::QaeEstimate<f64>;

pub type Circuit32 = circuit::Circuit<f32>;
pub type StateVector32 = sim::StateVector<f32>;
pub type TaylorSeries32 = series::TaylorSeries<f32>;
