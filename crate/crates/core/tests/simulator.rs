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

//! Circuit semantics checked against an explicit Kronecker-product oracle,
//! plus algebraic properties of controls, inverses and lowering.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use qperceptron::circuit::{Circuit, Control, Gate, GateKind, Polarity, QubitId, RegisterLayout};
use qperceptron::lower::{lower, GateCounts};
use qperceptron::sim::{circuit_unitary, simulate, StateVector};

type M = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn two_by_two(kind: GateKind<f64>) -> M {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let m = |a: [Complex64; 4]| M::from_row_slice(2, 2, &a);
    match kind {
        GateKind::X => m([c(0.0), c(1.0), c(1.0), c(0.0)]),
        GateKind::H => m([c(r), c(r), c(r), c(-r)]),
        GateKind::Z => m([c(1.0), c(0.0), c(0.0), c(-1.0)]),
        GateKind::Ry(t) => {
            let (s, co) = (t / 2.0).sin_cos();
            m([c(co), c(-s), c(s), c(co)])
        }
        GateKind::Rz(t) => {
            let e = Complex64::from_polar(1.0, t / 2.0);
            m([e.conj(), c(0.0), c(0.0), e])
        }
    }
}

/// Kronecker product over qubits, most significant bit first.
fn kron_all(factors: &[M]) -> M {
    factors.iter().rev().fold(M::from_element(1, 1, c(1.0)), |acc, f| acc.kronecker(f))
}

/// `P ⊗ G + (I − P) ⊗ I`, `P` the projector on satisfied controls.
fn oracle_gate(gate: &Gate<f64>, layout: &RegisterLayout) -> M {
    let width = layout.num_qubits();
    let id = M::identity(2, 2);
    let p0 = M::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)]);
    let p1 = M::from_row_slice(2, 2, &[c(0.0), c(0.0), c(0.0), c(1.0)]);
    let target = layout.bit(gate.target);
    let mut active = vec![id.clone(); width];
    active[target] = two_by_two(gate.kind);
    let mut projector = vec![id.clone(); width];
    for ctl in &gate.controls {
        let p = if ctl.polarity == Polarity::OnOne { &p1 } else { &p0 };
        active[layout.bit(ctl.qubit)] = p.clone();
        projector[layout.bit(ctl.qubit)] = p.clone();
    }
    let dim = layout.dim();
    kron_all(&active) + (M::identity(dim, dim) - kron_all(&projector))
}

fn oracle_circuit(circuit: &Circuit<f64>) -> M {
    let layout = circuit.layout();
    circuit.gates().iter().fold(M::identity(layout.dim(), layout.dim()), |acc, g| oracle_gate(g, &layout) * acc)
}

const LAYOUT: RegisterLayout = RegisterLayout::new(2, 1, true);

fn qubit() -> impl Strategy<Value = QubitId> {
    prop_oneof![Just(QubitId::q(0)), Just(QubitId::q(1)), Just(QubitId::a(0)), Just(QubitId::l())]
}

fn kind() -> impl Strategy<Value = GateKind<f64>> {
    prop_oneof![
        Just(GateKind::X),
        Just(GateKind::H),
        Just(GateKind::Z),
        (-6.0..6.0f64).prop_map(GateKind::Ry),
        (-6.0..6.0f64).prop_map(GateKind::Rz),
    ]
}

fn gate() -> impl Strategy<Value = Gate<f64>> {
    (kind(), qubit(), proptest::collection::vec((qubit(), any::<bool>()), 0..3)).prop_map(|(kind, target, ctl)| {
        let mut g = Gate::new(kind, target);
        for (q, on) in ctl {
            if q != target && g.controls.iter().all(|c| c.qubit != q) {
                g = g.controlled_by(if on { Control::on_one(q) } else { Control::on_zero(q) });
            }
        }
        g
    })
}

fn circuit_from(gates: Vec<Gate<f64>>, layout: RegisterLayout) -> Circuit<f64> {
    let mut c = Circuit::new(layout);
    for g in gates {
        c.push(g).unwrap();
    }
    c
}

fn max_diff(a: &M, b: &M) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn dense_to_nalgebra(circuit: &Circuit<f64>) -> M {
    let u = circuit_unitary(circuit).unwrap();
    M::from_fn(u.dim(), u.dim(), |i, j| u.get(i, j))
}

/// `max |a − e^{iφ} b|` with the phase taken from the largest entry of `b`.
fn diff_up_to_phase(a: &M, b: &M) -> f64 {
    let (idx, _) = b.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())).unwrap();
    let phase = a[idx] / b[idx];
    max_diff(a, &(b * phase))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn simulator_matches_kronecker_oracle(gates in proptest::collection::vec(gate(), 0..12)) {
        let c = circuit_from(gates, LAYOUT);
        prop_assert!(max_diff(&dense_to_nalgebra(&c), &oracle_circuit(&c)) < 1e-12);
    }

    #[test]
    fn norm_is_preserved(gates in proptest::collection::vec(gate(), 1..16), seed in any::<u64>()) {
        let c = circuit_from(gates, LAYOUT);
        let amps: Vec<Complex64> = (0..LAYOUT.dim())
            .map(|i| Complex64::new(((seed >> (i % 60)) & 7) as f64 - 3.5, (i as f64).cos()))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let amps = amps.into_iter().map(|a| a / norm).collect();
        let mut s = StateVector::from_amplitudes(LAYOUT, amps).unwrap();
        s.apply_circuit(&c).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_undoes_circuit(gates in proptest::collection::vec(gate(), 1..16)) {
        let c = circuit_from(gates, LAYOUT);
        let mut both = c.clone();
        both.append(&c.inverse()).unwrap();
        let id = M::identity(LAYOUT.dim(), LAYOUT.dim());
        prop_assert!(max_diff(&dense_to_nalgebra(&both), &id) < 1e-12);
    }

    #[test]
    fn added_control_acts_blockwise(gates in proptest::collection::vec(gate(), 1..10), on_one in any::<bool>()) {
        let inner = RegisterLayout::new(2, 1, false);
        let gates: Vec<_> = gates.into_iter().filter(|g| g.qubits().all(|q| inner.contains(q))).collect();
        let c = circuit_from(gates, inner);
        let polarity = if on_one { Polarity::OnOne } else { Polarity::OnZero };
        let controlled = c.add_control(QubitId::l(), polarity).unwrap();
        let big = dense_to_nalgebra(&controlled);
        let small = dense_to_nalgebra(&c);
        let d = inner.dim();
        let (active, idle) = if on_one { (d, 0) } else { (0, d) };
        let id = M::identity(d, d);
        prop_assert!(max_diff(&big.view((active, active), (d, d)).into_owned(), &small) < 1e-12);
        prop_assert!(max_diff(&big.view((idle, idle), (d, d)).into_owned(), &id) < 1e-12);
        prop_assert!(big.view((active, idle), (d, d)).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn lowering_preserves_unitary_up_to_phase(gates in proptest::collection::vec(gate(), 1..8)) {
        let c = circuit_from(gates, LAYOUT);
        let lowered = lower(&c);
        let counts = GateCounts::of(&lowered);
        prop_assert_eq!(counts.total(), lowered.len());
        prop_assert!(diff_up_to_phase(&dense_to_nalgebra(&lowered), &dense_to_nalgebra(&c)) < 1e-10);
    }
}

#[test]
fn hadamard_kron_convention() {
    // H on a0 (bit 2) of |0⟩ puts half the weight on index 4
    let mut c = Circuit::<f64>::new(LAYOUT);
    c.push(Gate::h(QubitId::a(0))).unwrap();
    let s = simulate(&c);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((s.amplitudes()[0].re - r).abs() < 1e-15);
    assert!((s.amplitudes()[4].re - r).abs() < 1e-15);
    let oracle = oracle_circuit(&c);
    assert!((oracle[(4, 0)].re - r).abs() < 1e-15);
}
