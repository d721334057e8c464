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

use thiserror::Error;

use crate::circuit::{QubitId, RegisterLayout};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit {qubit} is outside the register layout {layout}")]
    QubitOutOfRange { qubit: QubitId, layout: RegisterLayout },
    #[error("qubit {0} is both target and control of the same gate")]
    TargetIsControl(QubitId),
    #[error("control qubit {0} is listed more than once")]
    DuplicateControl(QubitId),
    #[error("rotation angle must be finite")]
    NonFiniteAngle,
    #[error("control qubit {0} is already used inside the circuit")]
    ControlCollision(QubitId),
    #[error("register layout mismatch: circuit uses {circuit}, state has {state}")]
    LayoutMismatch { circuit: RegisterLayout, state: RegisterLayout },
    #[error("{qubits} qubits exceed the dense-matrix limit of {limit}")]
    TooManyQubits { qubits: usize, limit: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("register of {n} qubits holds {capacity} amplitudes, {required} are needed")]
    RegisterTooSmall { n: usize, capacity: usize, required: usize },
    #[error("cannot prepare a state from the zero vector")]
    ZeroVector,
    #[error("every Taylor coefficient is below the threshold: zero function")]
    ZeroFunction,
    #[error("amplitude estimation needs a non-negative polynomial: {0}")]
    NegativeSeries(String),
    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("toml: {0}")]
    Toml(String),
}

impl Error {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config { field: field.to_string(), message: message.into() }
    }
}
