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

//! Lowering of multi-controlled gates to `{Ry, Rz, H, X, CX, CZ}`.
//!
//! The lowered circuit equals the input up to a global phase. It is used to
//! report gate counts; simulation always runs on the unlowered IR.
//!
//! Rules, for a gate with `k` positive controls (anti-controls are first
//! conjugated by X):
//! - `C^k R(θ)` for `R ∈ {Ry, Rz}` splits on the last control into
//!   `C^(k-1) R(θ/2) · CX · C^(k-1) R(-θ/2) · CX`, using `X R(φ) X = R(-φ)`.
//! - `C^k Z` is `C^k Rz(π)` on the target followed by a phase `i` on the
//!   all-ones state of the controls, itself lowered the same way.
//! - `C^k X = H · C^k Z · H` and `C^k H = Ry(π/4) · C^k Z · Ry(-π/4)`.

use serde::Serialize;

use crate::circuit::{Circuit, Control, Gate, GateKind, Polarity, QubitId};
use crate::scalar::Real;

/// Per-kind gate counts of a lowered circuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub ry: usize,
    pub rz: usize,
    pub h: usize,
    pub x: usize,
    pub cx: usize,
    pub cz: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.ry + self.rz + self.h + self.x + self.cx + self.cz
    }

    /// Count the gates of an already lowered circuit.
    ///
    /// Panics if a gate has more than one control or is an uncontrolled `Z`.
    pub fn of<T: Real>(circuit: &Circuit<T>) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in circuit.gates() {
            match (g.kind, g.controls.len()) {
                (GateKind::Ry(_), 0) => counts.ry += 1,
                (GateKind::Rz(_), 0) => counts.rz += 1,
                (GateKind::H, 0) => counts.h += 1,
                (GateKind::X, 0) => counts.x += 1,
                (GateKind::X, 1) => counts.cx += 1,
                (GateKind::Z, 1) => counts.cz += 1,
                _ => panic!("gate `{g}` is not in the lowered basis"),
            }
        }
        counts
    }
}

/// Lower `circuit` into one- and two-qubit gates.
pub fn lower<T: Real>(circuit: &Circuit<T>) -> Circuit<T> {
    let mut out = Circuit::new(circuit.layout());
    let mut gates = Vec::new();
    for gate in circuit.gates() {
        lower_gate(gate, &mut gates);
    }
    for g in gates {
        out.push(g).expect("lowering only touches qubits of the input gate");
    }
    out
}

/// Lower and count in one step.
pub fn lowered_counts<T: Real>(circuit: &Circuit<T>) -> GateCounts {
    GateCounts::of(&lower(circuit))
}

fn lower_gate<T: Real>(gate: &Gate<T>, out: &mut Vec<Gate<T>>) {
    let flips: Vec<QubitId> =
        gate.controls.iter().filter(|c| c.polarity == Polarity::OnZero).map(|c| c.qubit).collect();
    for &q in &flips {
        out.push(Gate::x(q));
    }
    let controls: Vec<QubitId> = gate.controls.iter().map(|c| c.qubit).collect();
    lower_positive(gate.kind, gate.target, &controls, out);
    for &q in &flips {
        out.push(Gate::x(q));
    }
}

fn cx<T: Real>(control: QubitId, target: QubitId) -> Gate<T> {
    Gate::x(target).controlled_by(Control::on_one(control))
}

fn lower_positive<T: Real>(kind: GateKind<T>, target: QubitId, controls: &[QubitId], out: &mut Vec<Gate<T>>) {
    let half = T::lit(0.5);
    match (kind, controls.len()) {
        (GateKind::Z, 0) => out.push(Gate::rz(T::PI(), target)),
        (_, 0) => out.push(Gate::new(kind, target)),
        (GateKind::Ry(theta), _) | (GateKind::Rz(theta), _) => {
            let (rest, last) = controls.split_at(controls.len() - 1);
            let rotate = |angle: T| match kind {
                GateKind::Ry(_) => GateKind::Ry(angle),
                _ => GateKind::Rz(angle),
            };
            lower_positive(rotate(theta * half), target, rest, out);
            out.push(cx(last[0], target));
            lower_positive(rotate(-theta * half), target, rest, out);
            out.push(cx(last[0], target));
        }
        (GateKind::X, 1) => out.push(cx(controls[0], target)),
        (GateKind::Z, 1) => out.push(Gate::z(target).controlled_by(Control::on_one(controls[0]))),
        (GateKind::Z, _) => {
            let mut qubits = controls.to_vec();
            qubits.push(target);
            lower_phase(T::PI(), &qubits, out);
        }
        (GateKind::X, _) => {
            out.push(Gate::h(target));
            lower_positive(GateKind::Z, target, controls, out);
            out.push(Gate::h(target));
        }
        (GateKind::H, _) => {
            let quarter = T::FRAC_PI_4();
            out.push(Gate::ry(-quarter, target));
            lower_positive(GateKind::Z, target, controls, out);
            out.push(Gate::ry(quarter, target));
        }
    }
}

/// Phase `e^{iφ}` on the all-ones state of `qubits`, up to global phase.
fn lower_phase<T: Real>(phi: T, qubits: &[QubitId], out: &mut Vec<Gate<T>>) {
    let (rest, last) = qubits.split_at(qubits.len() - 1);
    lower_positive(GateKind::Rz(phi), last[0], rest, out);
    if !rest.is_empty() {
        lower_phase(phi * T::lit(0.5), rest, out);
    }
}
