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

//! Dense statevector simulation, dense unitaries and seeded shot sampling.

use std::collections::BTreeMap;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind, Polarity, RegisterLayout};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest register for which [`circuit_unitary`] will build a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    layout: RegisterLayout,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// `|0…0⟩` over `layout`.
    pub fn zero(layout: RegisterLayout) -> Self {
        Self::basis(layout, 0)
    }

    pub fn basis(layout: RegisterLayout, index: usize) -> Self {
        let mut amps = vec![Complex::new(T::zero(), T::zero()); layout.dim()];
        amps[index] = Complex::new(T::one(), T::zero());
        StateVector { layout, amps }
    }

    /// Wrap raw amplitudes. The vector length must match the layout; the
    /// norm is not checked.
    pub fn from_amplitudes(layout: RegisterLayout, amps: Vec<Complex<T>>) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(Error::InvalidInput(format!(
                "{} amplitudes for a layout of dimension {}",
                amps.len(),
                layout.dim()
            )));
        }
        Ok(StateVector { layout, amps })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Born probabilities `|amplitude|²`.
    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector<T>) -> Complex<T> {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).fold(Complex::new(T::zero(), T::zero()), |acc, x| acc + x)
    }

    /// Amplitude of `|l⟩_l |a_index⟩_a |q_index⟩_q`.
    pub fn amplitude(&self, l: usize, a_index: usize, q_index: usize) -> Result<Complex<T>> {
        Ok(self.amps[self.layout.basis_index(l, a_index, q_index)?])
    }

    pub fn apply_gate(&mut self, gate: &Gate<T>) -> Result<()> {
        gate.validate(&self.layout)?;
        apply_gate_unchecked(&self.layout, &mut self.amps, gate);
        Ok(())
    }

    /// Apply every gate of `circuit` in order. The circuit's layout must be
    /// contained in the state's layout.
    pub fn apply_circuit(&mut self, circuit: &Circuit<T>) -> Result<()> {
        if !self.layout.includes(&circuit.layout()) {
            return Err(Error::LayoutMismatch { circuit: circuit.layout(), state: self.layout });
        }
        for gate in circuit.gates() {
            apply_gate_unchecked(&self.layout, &mut self.amps, gate);
        }
        Ok(())
    }
}

/// Run `circuit` on `|0…0⟩` of its own layout.
pub fn simulate<T: Real>(circuit: &Circuit<T>) -> StateVector<T> {
    let mut state = StateVector::zero(circuit.layout());
    state.apply_circuit(circuit).expect("circuit fits its own layout");
    state
}

/// Apply `circuit` to `state` and return the result.
pub fn apply_circuit<T: Real>(mut state: StateVector<T>, circuit: &Circuit<T>) -> Result<StateVector<T>> {
    state.apply_circuit(circuit)?;
    Ok(state)
}

fn apply_gate_unchecked<T: Real>(layout: &RegisterLayout, amps: &mut [Complex<T>], gate: &Gate<T>) {
    let tbit = 1usize << layout.bit(gate.target);
    let mut mask = 0usize;
    let mut want = 0usize;
    for c in &gate.controls {
        let bit = 1usize << layout.bit(c.qubit);
        mask |= bit;
        if c.polarity == Polarity::OnOne {
            want |= bit;
        }
    }
    let zero = T::zero();
    let (m00, m01, m10, m11) = match gate.kind {
        GateKind::X => {
            for_each_pair(amps.len(), tbit, mask, want, |i, j| amps.swap(i, j));
            return;
        }
        GateKind::Z => {
            for_each_pair(amps.len(), tbit, mask, want, |_, j| amps[j] = -amps[j]);
            return;
        }
        GateKind::H => {
            let s = T::FRAC_1_SQRT_2();
            (Complex::new(s, zero), Complex::new(s, zero), Complex::new(s, zero), Complex::new(-s, zero))
        }
        GateKind::Ry(theta) => {
            let half = theta / T::lit(2.0);
            let (s, c) = half.sin_cos();
            (Complex::new(c, zero), Complex::new(-s, zero), Complex::new(s, zero), Complex::new(c, zero))
        }
        GateKind::Rz(theta) => {
            let half = theta / T::lit(2.0);
            let (s, c) = half.sin_cos();
            let zc = Complex::new(zero, zero);
            (Complex::new(c, -s), zc, zc, Complex::new(c, s))
        }
    };
    for_each_pair(amps.len(), tbit, mask, want, |i, j| {
        let a0 = amps[i];
        let a1 = amps[j];
        amps[i] = m00 * a0 + m01 * a1;
        amps[j] = m10 * a0 + m11 * a1;
    });
}

/// Visit `(i, i | tbit)` for every `i` with the target bit clear whose
/// control bits match `want` under `mask`.
#[inline]
fn for_each_pair(dim: usize, tbit: usize, mask: usize, want: usize, mut f: impl FnMut(usize, usize)) {
    let mut i = 0usize;
    while i < dim {
        if i & tbit != 0 {
            // jump over the block where the target bit is set
            i += tbit;
            continue;
        }
        if i & mask == want {
            f(i, i | tbit);
        }
        i += 1;
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        DenseMatrix { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        DenseMatrix { dim, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<Complex<T>> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn mul(&self, other: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut data = vec![Complex::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] = data[i * n + j] + a * other.data[k * n + j];
                }
            }
        }
        DenseMatrix { dim: n, data }
    }

    pub fn adjoint(&self) -> DenseMatrix<T> {
        let n = self.dim;
        let mut data = vec![Complex::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        DenseMatrix { dim: n, data }
    }

    /// `max |self − other|` over all entries.
    pub fn max_abs_diff(&self, other: &DenseMatrix<T>) -> T {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
    }

    /// `max |U†U − I|`.
    pub fn unitarity_defect(&self) -> T {
        self.adjoint().mul(self).max_abs_diff(&DenseMatrix::identity(self.dim))
    }
}

/// Dense matrix of `circuit`, column `j` being the circuit applied to `|j⟩`.
pub fn circuit_unitary<T: Real>(circuit: &Circuit<T>) -> Result<DenseMatrix<T>> {
    let layout = circuit.layout();
    let qubits = layout.num_qubits();
    if qubits > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits { qubits, limit: MAX_DENSE_QUBITS });
    }
    let dim = layout.dim();
    let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for col in 0..dim {
        let mut state = StateVector::basis(layout, col);
        state.apply_circuit(circuit)?;
        for (row, amp) in state.amps.iter().enumerate() {
            data[row * dim + col] = *amp;
        }
    }
    Ok(DenseMatrix { dim, data })
}

/// Measurement outcomes of `shots` full-register measurements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotHistogram {
    /// Basis index to number of hits; outcomes never observed are absent.
    pub counts: BTreeMap<usize, u64>,
    pub shots: u64,
    pub seed: u64,
    pub stream: u64,
}

impl ShotHistogram {
    pub fn count(&self, index: usize) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }
}

/// The generator behind every sampled quantity: ChaCha with 8 rounds, keyed
/// through `seed_from_u64(seed)` and positioned on `stream`.
///
/// Sweeps key every point with the run seed and use the point index as the
/// stream, so points draw from disjoint sequences and different seeds share
/// none of them.
pub fn rng_for_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// [`rng_for_stream`] on stream 0.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    rng_for_stream(seed, 0)
}

/// Draw `shots` independent outcomes from the Born distribution of `state`.
///
/// The histogram is produced as one multinomial draw, decomposed into a chain
/// of conditional binomials over basis indices in increasing order. This has
/// exactly the distribution of `shots` independent samples while costing one
/// binomial draw per populated outcome.
pub fn sample_counts<T: Real>(state: &StateVector<T>, shots: u64, seed: u64) -> Result<ShotHistogram> {
    sample_counts_on_stream(state, shots, seed, 0)
}

/// [`sample_counts`] drawing from stream `stream` of `seed`.
pub fn sample_counts_on_stream<T: Real>(
    state: &StateVector<T>,
    shots: u64,
    seed: u64,
    stream: u64,
) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::InvalidInput("shot count must be at least 1".into()));
    }
    let probs: Vec<f64> = state.amps.iter().map(|a| a.norm_sqr().as_f64()).collect();
    // suffix mass, so each conditional probability is a ratio of exact sums
    let mut tail = vec![0.0f64; probs.len() + 1];
    for i in (0..probs.len()).rev() {
        tail[i] = tail[i + 1] + probs[i];
    }
    let mut rng = rng_for_stream(seed, stream);
    let mut counts = BTreeMap::new();
    let mut remaining = shots;
    let last = probs.iter().rposition(|&p| p > 0.0);
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if p <= 0.0 {
            continue;
        }
        let hits = if Some(i) == last {
            remaining
        } else {
            let cond = (p / tail[i]).clamp(0.0, 1.0);
            Binomial::new(remaining, cond).expect("probability within [0, 1]").sample(&mut rng)
        };
        if hits > 0 {
            counts.insert(i, hits);
            remaining -= hits;
        }
    }
    Ok(ShotHistogram { counts, shots, seed, stream })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Control, QubitId};

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::<f64>::zero(RegisterLayout::q_only(1));
        s.apply_gate(&Gate::h(QubitId::q(0))).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0] - c(r)).norm() < 1e-15);
        assert!((s.amplitudes()[1] - c(r)).norm() < 1e-15);
        assert!((s.amplitude(0, 0, 1).unwrap().re - r).abs() < 1e-15);
    }

    #[test]
    fn x_on_every_qubit() {
        let mut circuit = Circuit::<f64>::new(RegisterLayout::q_only(3));
        circuit.push_x_on_q().unwrap();
        let s = simulate(&circuit);
        assert_eq!(s.amplitudes()[7], c(1.0));
        assert_eq!(s.amplitude(0, 0, 0).unwrap(), c(0.0));
    }

    #[test]
    fn zero_state_amplitude() {
        let s = StateVector::<f64>::zero(RegisterLayout::q_only(3));
        assert_eq!(s.amplitude(0, 0, 0).unwrap(), c(1.0));
        assert!(s.amplitude(0, 1, 0).is_err());
        assert!(s.amplitude(1, 0, 0).is_err());
    }

    #[test]
    fn anti_control_fires_on_zero() {
        let layout = RegisterLayout::q_only(2);
        let g = Gate::x(QubitId::q(0)).controlled_by(Control::on_zero(QubitId::q(1)));
        let mut s = StateVector::<f64>::zero(layout);
        s.apply_gate(&g).unwrap();
        assert_eq!(s.amplitudes()[1], c(1.0));
        let mut s = StateVector::<f64>::basis(layout, 2);
        s.apply_gate(&g).unwrap();
        assert_eq!(s.amplitudes()[2], c(1.0));
    }

    #[test]
    fn rotation_conventions() {
        let mut s = StateVector::<f64>::zero(RegisterLayout::q_only(1));
        s.apply_gate(&Gate::ry(std::f64::consts::FRAC_PI_2, QubitId::q(0))).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[1].re - r).abs() < 1e-15);
        let mut s = StateVector::<f64>::basis(RegisterLayout::q_only(1), 1);
        s.apply_gate(&Gate::rz(std::f64::consts::PI, QubitId::q(0))).unwrap();
        assert!((s.amplitudes()[1] - Complex::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn layout_mismatch_rejected() {
        let mut circuit = Circuit::<f64>::new(RegisterLayout::new(2, 1, false));
        circuit.push(Gate::x(QubitId::a(0))).unwrap();
        let mut s = StateVector::<f64>::zero(RegisterLayout::q_only(2));
        assert!(matches!(s.apply_circuit(&circuit), Err(Error::LayoutMismatch { .. })));
    }

    #[test]
    fn unitary_of_x_and_hh() {
        let mut x = Circuit::<f64>::new(RegisterLayout::q_only(1));
        x.push(Gate::x(QubitId::q(0))).unwrap();
        let u = circuit_unitary(&x).unwrap();
        let expected = DenseMatrix::from_rows(vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]]);
        assert_eq!(u, expected);

        let mut hh = Circuit::<f64>::new(RegisterLayout::q_only(1));
        hh.push(Gate::h(QubitId::q(0))).unwrap();
        hh.push(Gate::h(QubitId::q(0))).unwrap();
        let u = circuit_unitary(&hh).unwrap();
        assert!(u.max_abs_diff(&DenseMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn unitary_guard() {
        let c = Circuit::<f64>::new(RegisterLayout::q_only(13));
        assert!(matches!(circuit_unitary(&c), Err(Error::TooManyQubits { qubits: 13, .. })));
    }

    #[test]
    fn streams_differ() {
        let mut s = StateVector::<f64>::zero(RegisterLayout::q_only(1));
        s.apply_gate(&Gate::h(QubitId::q(0))).unwrap();
        let a = sample_counts_on_stream(&s, 1 << 16, 1, 0).unwrap();
        let b = sample_counts_on_stream(&s, 1 << 16, 1, 1).unwrap();
        let c = sample_counts_on_stream(&s, 1 << 16, 2, 0).unwrap();
        assert_eq!(a, sample_counts(&s, 1 << 16, 1).unwrap());
        assert_ne!(a.count(0), b.count(0));
        assert_ne!(a.count(0), c.count(0));
    }

    #[test]
    fn sampling_basis_state() {
        let s = StateVector::<f64>::zero(RegisterLayout::q_only(3));
        let h = sample_counts(&s, 1000, 7).unwrap();
        assert_eq!(h.count(0), 1000);
        assert_eq!(h.counts.len(), 1);
        assert!(sample_counts(&s, 0, 7).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_binomial() {
        let mut s = StateVector::<f64>::zero(RegisterLayout::q_only(1));
        s.apply_gate(&Gate::h(QubitId::q(0))).unwrap();
        let shots = 1u64 << 20;
        let h1 = sample_counts(&s, shots, 42).unwrap();
        let h2 = sample_counts(&s, shots, 42).unwrap();
        assert_eq!(h1, h2);
        assert_eq!(h1.counts.values().sum::<u64>(), shots);
        // five binomial standard errors: 5 * sqrt(0.25 / 2^20) = 5 * 2^-10 * 0.5
        let freq = h1.count(0) as f64 / shots as f64;
        assert!((freq - 0.5).abs() <= 5.0 * 0.5 / 1024.0, "freq {freq}");
    }
}
