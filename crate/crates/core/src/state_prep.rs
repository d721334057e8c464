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

//! Encoding vectors, real-amplitude state preparation and the `U_z` block.
//!
//! `U_z = X^⊗n · 𝒰(v_wb)† · 𝒰(v_x)` has `⟨N−1|U_z|0⟩ = (w·x + b)/(N_in + 1)`,
//! where `𝒰(v)|0⟩ = v/‖v‖`. `𝒰` is a binary tree of multi-controlled `Ry`
//! rotations, most significant qubit first, followed by a diagonal `±1`
//! layer built from `Z`, `CZ` and multi-controlled `Z` gates.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Control, Gate, QubitId, RegisterLayout};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sim::simulate;

/// Rotations with `|angle|` below this are dropped.
pub const PRUNE_ANGLE: f64 = 1e-14;

/// Inputs, weights and bias of one perceptron, each component in `[-1, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerceptronInputs<T> {
    x: Vec<T>,
    w: Vec<T>,
    b: T,
}

impl<T: Real> PerceptronInputs<T> {
    pub fn new(x: Vec<T>, w: Vec<T>, b: T) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::InvalidInput("at least one input neuron is required".into()));
        }
        if x.len() != w.len() {
            return Err(Error::InvalidInput(format!("{} inputs but {} weights", x.len(), w.len())));
        }
        let in_range = |v: T| v.is_finite() && v.abs() <= T::one();
        for (name, values) in [("x", &x), ("w", &w)] {
            if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !in_range(**v)) {
                return Err(Error::InvalidInput(format!("{name}[{i}] = {v} is outside [-1, 1]")));
            }
        }
        if !in_range(b) {
            return Err(Error::InvalidInput(format!("b = {b} is outside [-1, 1]")));
        }
        Ok(PerceptronInputs { x, w, b })
    }

    /// Inputs `x = zbar·(1, …, 1)` against weights `w`.
    pub fn uniform(zbar: T, w: Vec<T>, b: T) -> Result<Self> {
        let x = vec![zbar; w.len()];
        Self::new(x, w, b)
    }

    pub fn x(&self) -> &[T] {
        &self.x
    }

    pub fn w(&self) -> &[T] {
        &self.w
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn n_in(&self) -> usize {
        self.x.len()
    }

    /// `(w·x + b) / (N_in + 1)`, always in `[-1, 1]`.
    pub fn z(&self) -> T {
        let dot: T = self.x.iter().zip(&self.w).map(|(&x, &w)| x * w).sum();
        (dot + self.b) / T::lit((self.n_in() + 1) as f64)
    }

    /// Smallest `n` with `2^n ≥ N_in + 3`.
    pub fn min_qubits(&self) -> usize {
        let needed = self.n_in() + 3;
        needed.next_power_of_two().trailing_zeros() as usize
    }
}

/// Where the padding constants sit inside the encoding vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum EncodingLayout {
    /// `v_x = (A_x, x, 1, 0…0)`, `v_wb = (0, w, b, 0…0, A_wb)`. The padding
    /// entries never overlap, so their signs are irrelevant.
    #[default]
    PhaseFriendly,
    /// `v_x = (x, 1, A_x, 0, 0…)`, `v_wb = (w, b, 0, A_wb, 0…)`.
    Direct,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EncodingVectors<T> {
    pub v_x: Vec<T>,
    pub v_wb: Vec<T>,
    pub a_x: T,
    pub a_wb: T,
}

impl<T: Real> EncodingVectors<T> {
    /// `v_wb · v_x`.
    pub fn overlap(&self) -> T {
        self.v_x.iter().zip(&self.v_wb).map(|(&a, &b)| a * b).sum()
    }
}

fn check_register<T: Real>(inputs: &PerceptronInputs<T>, n: usize) -> Result<usize> {
    let required = inputs.n_in() + 3;
    let capacity = 1usize.checked_shl(n as u32).unwrap_or(usize::MAX);
    if n == 0 || capacity < required {
        return Err(Error::RegisterTooSmall { n, capacity, required });
    }
    Ok(capacity)
}

pub fn build_encoding_vectors<T: Real>(inputs: &PerceptronInputs<T>, n: usize) -> Result<EncodingVectors<T>> {
    build_encoding_vectors_with(inputs, n, EncodingLayout::default())
}

pub fn build_encoding_vectors_with<T: Real>(
    inputs: &PerceptronInputs<T>,
    n: usize,
    layout: EncodingLayout,
) -> Result<EncodingVectors<T>> {
    let big_n = check_register(inputs, n)?;
    let n_in = inputs.n_in();
    let norm_x: T = inputs.x.iter().map(|&v| v * v).sum();
    let norm_w: T = inputs.w.iter().map(|&v| v * v).sum();
    // radicands are non-negative for inputs in [-1, 1]; clamp rounding noise
    let a_x = (T::lit(n_in as f64) - norm_x).max(T::zero()).sqrt();
    let a_wb = (T::lit((n_in + 1) as f64) - norm_w - inputs.b * inputs.b).max(T::zero()).sqrt();

    let mut v_x = vec![T::zero(); big_n];
    let mut v_wb = vec![T::zero(); big_n];
    match layout {
        EncodingLayout::PhaseFriendly => {
            v_x[0] = a_x;
            v_x[1..=n_in].copy_from_slice(&inputs.x);
            v_x[n_in + 1] = T::one();
            v_wb[1..=n_in].copy_from_slice(&inputs.w);
            v_wb[n_in + 1] = inputs.b;
            v_wb[big_n - 1] = a_wb;
        }
        EncodingLayout::Direct => {
            v_x[..n_in].copy_from_slice(&inputs.x);
            v_x[n_in] = T::one();
            v_x[n_in + 1] = a_x;
            v_wb[..n_in].copy_from_slice(&inputs.w);
            v_wb[n_in] = inputs.b;
            v_wb[n_in + 2] = a_wb;
        }
    }
    Ok(EncodingVectors { v_x, v_wb, a_x, a_wb })
}

/// How amplitude signs are produced by [`synthesize_state_prep_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignSynthesis {
    /// Leaf rotations use signed amplitudes; the phase layer only fixes what
    /// remains (normally nothing).
    #[default]
    LeafAngles,
    /// Magnitude-only tree (except the sign of index 0) followed by a full
    /// hypergraph phase layer.
    PhaseLayer,
}

pub fn synthesize_state_prep<T: Real>(v: &[T]) -> Result<Circuit<T>> {
    synthesize_state_prep_with(v, SignSynthesis::default())
}

/// Circuit `𝒰(v)` on a `q` register of `log2(len)` qubits with
/// `𝒰(v)|0⟩ = v/‖v‖`, signs included.
pub fn synthesize_state_prep_with<T: Real>(v: &[T], signs: SignSynthesis) -> Result<Circuit<T>> {
    if v.len() < 2 || !v.len().is_power_of_two() {
        return Err(Error::InvalidInput(format!("vector length {} is not a power of two ≥ 2", v.len())));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("vector has non-finite entries".into()));
    }
    let norm = v.iter().map(|&x| x * x).sum::<T>().sqrt();
    if norm == T::zero() {
        return Err(Error::ZeroVector);
    }
    let n = v.len().trailing_zeros() as usize;
    let u: Vec<T> = v.iter().map(|&x| x / norm).collect();

    // norms[level][prefix]: 2-norm of the entries whose top `level` bits equal `prefix`
    let mut norms: Vec<Vec<T>> = vec![Vec::new(); n + 1];
    norms[n] = u.iter().map(|x| x.abs()).collect();
    for level in (0..n).rev() {
        norms[level] = norms[level + 1].chunks(2).map(|p| (p[0] * p[0] + p[1] * p[1]).sqrt()).collect();
    }

    let two = T::lit(2.0);
    let prune = T::lit(PRUNE_ANGLE);
    let mut circuit = Circuit::new(RegisterLayout::q_only(n));
    for level in 0..n {
        let target = QubitId::q(n - 1 - level);
        for prefix in 0..(1usize << level) {
            let (c0, c1) = (prefix << 1, (prefix << 1) | 1);
            let (lo, hi) = if level + 1 < n {
                (norms[level + 1][c0], norms[level + 1][c1])
            } else {
                match signs {
                    SignSynthesis::LeafAngles => (u[c0], u[c1]),
                    SignSynthesis::PhaseLayer if prefix == 0 => (u[c0], u[c1].abs()),
                    SignSynthesis::PhaseLayer => (u[c0].abs(), u[c1].abs()),
                }
            };
            let angle = two * hi.atan2(lo);
            if angle.abs() < prune {
                continue;
            }
            let controls = (0..level).map(|b| {
                let qubit = QubitId::q(n - level + b);
                if prefix >> b & 1 == 1 {
                    Control::on_one(qubit)
                } else {
                    Control::on_zero(qubit)
                }
            });
            circuit.push(Gate::ry(angle, target).with_controls(controls))?;
        }
    }

    let produced = simulate(&circuit);
    let tiny = T::lit(1e-12);
    let flips: Vec<bool> = produced
        .amplitudes()
        .iter()
        .zip(&u)
        .map(|(p, &t)| t.abs() > tiny && (p.re < T::zero()) != (t < T::zero()))
        .collect();
    for gate in phase_layer(&flips)? {
        circuit.push(gate)?;
    }
    Ok(circuit)
}

/// Diagonal `±1` layer flipping the sign of every basis index `i` with
/// `flips[i]`, as a product of `Z`, `CZ` and multi-controlled `Z` gates.
///
/// A `C^(k-1)Z` on the qubit set `S` negates every index whose bits contain
/// `S`. Sets are resolved in order of increasing weight; the gates are
/// emitted from highest weight down (they commute). Index 0 cannot be
/// negated this way and is rejected.
pub fn phase_layer<T: Real>(flips: &[bool]) -> Result<Vec<Gate<T>>> {
    if !flips.len().is_power_of_two() {
        return Err(Error::InvalidInput(format!("sign table of length {} is not a power of two", flips.len())));
    }
    if flips.first() == Some(&true) {
        return Err(Error::InvalidInput("a sign flip on |0…0⟩ is a global phase".into()));
    }
    let mut pending = flips.to_vec();
    let mut order: Vec<usize> = (1..flips.len()).collect();
    order.sort_by_key(|&i| (i.count_ones(), i));
    let mut sets = Vec::new();
    for i in order {
        if pending[i] {
            sets.push(i);
            for (j, p) in pending.iter_mut().enumerate() {
                if j & i == i {
                    *p = !*p;
                }
            }
        }
    }
    Ok(sets
        .into_iter()
        .rev()
        .map(|set| {
            let top = usize::BITS as usize - 1 - set.leading_zeros() as usize;
            let controls = (0..top).filter(|b| set >> b & 1 == 1).map(|b| Control::on_one(QubitId::q(b)));
            Gate::z(QubitId::q(top)).with_controls(controls)
        })
        .collect())
}

/// Options behind [`build_uz_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrepOptions {
    pub layout: EncodingLayout,
    pub signs: SignSynthesis,
}

pub fn build_uz<T: Real>(inputs: &PerceptronInputs<T>, n: usize) -> Result<Circuit<T>> {
    build_uz_with(inputs, n, PrepOptions::default())
}

/// `U_z = X^⊗n 𝒰(v_wb)† 𝒰(v_x)` on a `q` register of `n` qubits.
pub fn build_uz_with<T: Real>(inputs: &PerceptronInputs<T>, n: usize, options: PrepOptions) -> Result<Circuit<T>> {
    let vectors = build_encoding_vectors_with(inputs, n, options.layout)?;
    let prep_x = synthesize_state_prep_with(&vectors.v_x, options.signs)?;
    let prep_wb = synthesize_state_prep_with(&vectors.v_wb, options.signs)?;
    let mut uz = Circuit::new(RegisterLayout::q_only(n));
    uz.append(&prep_x)?;
    uz.append(&prep_wb.inverse())?;
    uz.push_x_on_q()?;
    Ok(uz)
}
