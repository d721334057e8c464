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

//! Hadamard-test readout, output inversion and amplitude estimation.

use num_complex::Complex;
use serde::Serialize;

use crate::circuit::{Circuit, Control, Gate, Polarity, QubitId, RegisterLayout};
use crate::error::{Error, Result};
use crate::perceptron::CoreCircuitBundle;
use crate::scalar::Real;
use crate::series::TaylorSeries;
use crate::sim::{simulate, ShotHistogram, StateVector};

/// Points of the `z` grid on which QAE shifts are chosen and checked.
pub const QAE_GRID_POINTS: usize = 101;
/// Margin added on top of the smallest shift that makes `T_d` non-negative.
pub const QAE_MARGIN: f64 = 0.05;
/// Largest phase register simulated by [`amplitude_estimation`].
pub const MAX_PHASE_QUBITS: usize = 14;

fn readout_layout(core: &RegisterLayout) -> RegisterLayout {
    RegisterLayout::new(core.n, core.d, true)
}

/// Readout with `S_V` left uncontrolled: `H_l`, `C_l(X^⊗n)`, `S_V`,
/// `C_l(S_U)`, `C_l(X^⊗n)`, `H_l`. On the `l = 0` branch `S_V` acts on
/// `|0⟩` and leaves it unchanged, so this matches the fully controlled form.
pub fn build_readout_circuit<T: Real>(bundle: &CoreCircuitBundle<T>) -> Result<Circuit<T>> {
    let layout = readout_layout(&bundle.layout());
    let l = QubitId::l();
    let mut c = Circuit::new(layout);
    c.push(Gate::h(l))?;
    push_controlled_x(&mut c, bundle.n)?;
    c.append(&bundle.sv)?;
    c.append(&bundle.su.add_control(l, Polarity::OnOne)?)?;
    push_controlled_x(&mut c, bundle.n)?;
    c.push(Gate::h(l))?;
    Ok(c)
}

fn push_controlled_x<T: Real>(c: &mut Circuit<T>, n: usize) -> Result<()> {
    for i in 0..n {
        c.push(Gate::x(QubitId::q(i)).controlled_by(Control::on_one(QubitId::l())))?;
    }
    Ok(())
}

/// Textbook Hadamard test `H_l C_l(core) H_l`.
pub fn build_readout_circuit_full<T: Real>(bundle: &CoreCircuitBundle<T>) -> Result<Circuit<T>> {
    let l = QubitId::l();
    let mut c = Circuit::new(readout_layout(&bundle.layout()));
    c.push(Gate::h(l))?;
    c.append(&bundle.core.add_control(l, Polarity::OnOne)?)?;
    c.push(Gate::h(l))?;
    Ok(c)
}

/// Probability of the all-zeros outcome after `readout` acts on `|0⟩`.
pub fn readout_probability<T: Real>(readout: &Circuit<T>) -> T {
    simulate(readout).amplitudes()[0].norm_sqr()
}

/// `¼ (1 + 2^{-d/2} f_d(z))²`.
pub fn closed_form_p0<T: Real>(bundle: &CoreCircuitBundle<T>) -> T {
    let s = T::one() + bundle.expected_amplitude();
    s * s / T::lit(4.0)
}

/// Output estimate from `shots` readout measurements.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShotEstimate<T> {
    pub shots: u64,
    /// Number of all-zeros outcomes.
    pub hits: u64,
    pub p: T,
    pub y_q: T,
    pub sigma_pred: T,
    /// Set when no all-zeros outcome was seen and `y_q` sits at its floor.
    pub degenerate: bool,
}

/// `y_q = 2^{d/2} (2√P − 1) C_d`.
pub fn output_from_probability<T: Real>(p: T, d: usize, c_d: T) -> T {
    let two = T::lit(2.0);
    two.powi(d as i32).sqrt() * (two * p.max(T::zero()).sqrt() - T::one()) * c_d
}

/// Delta-method standard deviation of `y_q` for a binomial `P` from `shots`
/// samples: `2^{d/2} |C_d| √((1 − P)/S)`.
pub fn predicted_sigma<T: Real>(p: T, shots: u64, d: usize, c_d: T) -> T {
    let q = (T::one() - p).max(T::zero());
    T::lit(2.0).powi(d as i32).sqrt() * c_d.abs() * (q / T::lit(shots as f64)).sqrt()
}

pub fn estimate_output<T: Real>(hist: &ShotHistogram, d: usize, c_d: T) -> ShotEstimate<T> {
    let hits = hist.count(0);
    let p = T::lit(hits as f64 / hist.shots as f64);
    ShotEstimate {
        shots: hist.shots,
        hits,
        p,
        y_q: output_from_probability(p, d, c_d),
        sigma_pred: predicted_sigma(p, hist.shots, d, c_d),
        degenerate: hits == 0,
    }
}

/// Result of simulated amplitude estimation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmplitudeEstimate<T> {
    pub m_qubits: usize,
    /// Most probable phase bin `y ≤ M/2`, its mirror `M − y` included.
    pub bin: usize,
    /// `sin²(π y / M)`.
    pub a_tilde: T,
    /// Probability of reading `bin` or `M − bin`.
    pub confidence: T,
}

/// Canonical amplitude estimation of `a = |⟨good|A|0⟩|²`.
///
/// The phase register is not simulated as qubits. The state before the
/// inverse QFT is `M^{-1/2} Σ_x |x⟩ Q^x A|0⟩`, so the distribution of the
/// readout is `P(y) = ‖M^{-1} Σ_x e^{-2πixy/M} Q^x A|0⟩‖²`, with the Grover
/// iterate `Q = −A S_0 A† S_good`. This is the exact output distribution of
/// the `m`-qubit network.
pub fn amplitude_estimation<T: Real>(
    prep: &Circuit<T>,
    good_index: usize,
    m_qubits: usize,
) -> Result<AmplitudeEstimate<T>> {
    if m_qubits == 0 || m_qubits > MAX_PHASE_QUBITS {
        return Err(Error::InvalidInput(format!(
            "phase register must have 1..={MAX_PHASE_QUBITS} qubits, got {m_qubits}"
        )));
    }
    let layout = prep.layout();
    if good_index >= layout.dim() {
        return Err(Error::IndexOutOfRange(format!("good index {good_index} in dimension {}", layout.dim())));
    }
    let inverse = prep.inverse();
    let big_m = 1usize << m_qubits;

    let mut powers: Vec<Vec<Complex<T>>> = Vec::with_capacity(big_m);
    let mut phi = simulate(prep);
    for _ in 0..big_m {
        powers.push(phi.amplitudes().to_vec());
        phi = grover_step(phi, &inverse, prep, good_index)?;
    }

    let dim = layout.dim();
    let inv_m = T::one() / T::lit(big_m as f64);
    let mut probs = Vec::with_capacity(big_m);
    for y in 0..big_m {
        let mut acc = vec![Complex::new(T::zero(), T::zero()); dim];
        for (x, phi_x) in powers.iter().enumerate() {
            let turn = ((x * y) % big_m) as f64 / big_m as f64;
            let w = Complex::from_polar(T::one(), T::lit(-2.0 * std::f64::consts::PI * turn));
            for (a, v) in acc.iter_mut().zip(phi_x) {
                *a = *a + w * v;
            }
        }
        probs.push(acc.iter().map(|a| a.norm_sqr()).sum::<T>() * inv_m * inv_m);
    }
    // y and M − y decode to the same ã; rank the pairs by their joint mass
    let mut best = (0usize, T::neg_infinity());
    for y in 0..=big_m / 2 {
        let mirror = (big_m - y) % big_m;
        let mass = if mirror == y { probs[y] } else { probs[y] + probs[mirror] };
        if mass > best.1 {
            best = (y, mass);
        }
    }
    let (bin, confidence) = best;
    let a_tilde = T::lit((std::f64::consts::PI * bin as f64 / big_m as f64).sin().powi(2));
    Ok(AmplitudeEstimate { m_qubits, bin, a_tilde, confidence })
}

fn grover_step<T: Real>(
    mut phi: StateVector<T>,
    inverse: &Circuit<T>,
    prep: &Circuit<T>,
    good_index: usize,
) -> Result<StateVector<T>> {
    let amps = phi.amplitudes_mut();
    amps[good_index] = -amps[good_index];
    phi.apply_circuit(inverse)?;
    let amps = phi.amplitudes_mut();
    amps[0] = -amps[0];
    phi.apply_circuit(prep)?;
    for a in phi.amplitudes_mut() {
        *a = -*a;
    }
    Ok(phi)
}

/// Shift `γ = max(0, −min T_d) + margin`, minimum over a 101-point grid of
/// `[−1, 1]`, for the unshifted series.
pub fn qae_shift<T: Real>(series: &TaylorSeries<T>) -> f64 {
    let base = series.shift().as_f64();
    let min = grid_minimum(series) - base;
    (-min).max(0.0) + QAE_MARGIN
}

fn grid_minimum<T: Real>(series: &TaylorSeries<T>) -> f64 {
    (0..QAE_GRID_POINTS)
        .map(|i| -1.0 + 2.0 * i as f64 / (QAE_GRID_POINTS - 1) as f64)
        .map(|z| series.eval(T::lit(z)).as_f64())
        .fold(f64::INFINITY, f64::min)
}

/// The series re-expanded with `γ` from [`qae_shift`] added to `a_0`.
pub fn shifted_series<T: Real>(series: &TaylorSeries<T>) -> Result<TaylorSeries<T>> {
    series.with_shift(qae_shift(series))
}

/// QAE output for a core built from a shifted, non-negative series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QaeEstimate<T> {
    pub m_qubits: usize,
    /// `M = 2^m`.
    pub big_m: usize,
    pub a_tilde: T,
    pub y_q: T,
    pub gamma: T,
}

/// Amplitude estimation of `a = 2^{-d} f_d(z)²` and the inversion
/// `y_q = 2^{d/2} √ã |C_d| − γ`.
///
/// The series must be non-negative on the grid, otherwise the sign of `f_d`
/// is lost by `√ã`.
pub fn qae_estimate<T: Real>(bundle: &CoreCircuitBundle<T>, m_qubits: usize) -> Result<QaeEstimate<T>> {
    let min = grid_minimum(&bundle.series);
    if min < 0.0 {
        return Err(Error::NegativeSeries(format!(
            "T_d reaches {min:.6} on [-1, 1]; rebuild it with a shift of at least {:.6}",
            qae_shift(&bundle.series)
        )));
    }
    let est = amplitude_estimation(&bundle.core, 0, m_qubits)?;
    let gamma = bundle.series.shift();
    let scale = T::lit(2.0).powi(bundle.d as i32).sqrt() * bundle.schedule.c_d.abs();
    Ok(QaeEstimate {
        m_qubits,
        big_m: 1 << m_qubits,
        a_tilde: est.a_tilde,
        y_q: scale * est.a_tilde.sqrt() - gamma,
        gamma,
    })
}
