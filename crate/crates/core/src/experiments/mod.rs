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

//! Sweeps, reports and the invariant suite behind the command line.

pub mod config;
pub mod fit;
pub mod gates;
pub mod output;
pub mod sweep;
pub mod verify;

pub use config::{GridSpec, Mode, SweepConfig};
pub use gates::{gate_count_report, GateCountReport};
pub use output::{csv_bytes, write_outputs};
pub use sweep::{mse_report, run_sweep, DegreeSummary, SweepOutput, SweepRecord};
pub use verify::{run_verify, CheckOutcome};
