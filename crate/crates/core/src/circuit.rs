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

//! Gate and circuit intermediate representation.
//!
//! Qubits are addressed relative to one of three registers: `q` (the
//! inner-product encoding, `n` qubits), `a` (power and polynomial ancillas,
//! `d` qubits) and `l` (a single readout ancilla). A flat basis index is laid
//! out as `l·2^(n+d) + a·2^n + q`, with qubit 0 of each register as its least
//! significant bit.
//!
//! Multi-controlled gates are first-class nodes. Decomposition into one- and
//! two-qubit gates lives in [`crate::lower`] and is only used for counting.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Register {
    Q,
    A,
    L,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QubitId {
    pub register: Register,
    pub index: usize,
}

impl QubitId {
    pub const fn q(index: usize) -> Self {
        QubitId { register: Register::Q, index }
    }

    pub const fn a(index: usize) -> Self {
        QubitId { register: Register::A, index }
    }

    pub const fn l() -> Self {
        QubitId { register: Register::L, index: 0 }
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.register {
            Register::Q => write!(f, "q{}", self.index),
            Register::A => write!(f, "a{}", self.index),
            Register::L => write!(f, "l"),
        }
    }
}

/// Sizes of the three registers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub n: usize,
    pub d: usize,
    pub has_l: bool,
}

impl RegisterLayout {
    pub const fn new(n: usize, d: usize, has_l: bool) -> Self {
        RegisterLayout { n, d, has_l }
    }

    /// Layout with only the `q` register.
    pub const fn q_only(n: usize) -> Self {
        RegisterLayout { n, d: 0, has_l: false }
    }

    pub fn num_qubits(&self) -> usize {
        self.n + self.d + usize::from(self.has_l)
    }

    pub fn dim(&self) -> usize {
        1usize << self.num_qubits()
    }

    pub fn contains(&self, qubit: QubitId) -> bool {
        match qubit.register {
            Register::Q => qubit.index < self.n,
            Register::A => qubit.index < self.d,
            Register::L => self.has_l && qubit.index == 0,
        }
    }

    /// True when every qubit of `other` also exists here.
    pub fn includes(&self, other: &RegisterLayout) -> bool {
        other.n <= self.n && other.d <= self.d && (!other.has_l || self.has_l)
    }

    /// Smallest layout covering both `self` and `qubit`.
    pub fn extended_with(&self, qubit: QubitId) -> RegisterLayout {
        let mut out = *self;
        match qubit.register {
            Register::Q => out.n = out.n.max(qubit.index + 1),
            Register::A => out.d = out.d.max(qubit.index + 1),
            Register::L => out.has_l = true,
        }
        out
    }

    /// Bit position of `qubit` in the flat basis index.
    ///
    /// Positions are stable under layout growth only for the `q` register, so
    /// callers must use the layout the state was built with.
    pub fn bit(&self, qubit: QubitId) -> usize {
        match qubit.register {
            Register::Q => qubit.index,
            Register::A => self.n + qubit.index,
            Register::L => self.n + self.d,
        }
    }

    /// Flat basis index of `|l⟩|a⟩|q⟩`.
    pub fn basis_index(&self, l: usize, a: usize, q: usize) -> Result<usize> {
        if l > usize::from(self.has_l) {
            return Err(Error::IndexOutOfRange(format!("l = {l} with layout {self}")));
        }
        if a >= 1usize << self.d {
            return Err(Error::IndexOutOfRange(format!("a = {a} with d = {}", self.d)));
        }
        if q >= 1usize << self.n {
            return Err(Error::IndexOutOfRange(format!("q = {q} with n = {}", self.n)));
        }
        Ok((l << (self.n + self.d)) | (a << self.n) | q)
    }

    /// Every qubit of the layout, `q` first, then `a`, then `l`.
    pub fn qubits(&self) -> Vec<QubitId> {
        let mut out: Vec<QubitId> = (0..self.n).map(QubitId::q).collect();
        out.extend((0..self.d).map(QubitId::a));
        if self.has_l {
            out.push(QubitId::l());
        }
        out
    }
}

impl fmt::Display for RegisterLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, d={}, l={})", self.n, self.d, u8::from(self.has_l))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    /// Fires when the control is `|1⟩`.
    OnOne,
    /// Fires when the control is `|0⟩` (anti-control).
    OnZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: QubitId,
    pub polarity: Polarity,
}

impl Control {
    pub const fn on_one(qubit: QubitId) -> Self {
        Control { qubit, polarity: Polarity::OnOne }
    }

    pub const fn on_zero(qubit: QubitId) -> Self {
        Control { qubit, polarity: Polarity::OnZero }
    }
}

impl fmt::Display for Control {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bit = match self.polarity {
            Polarity::OnOne => 1,
            Polarity::OnZero => 0,
        };
        write!(f, "{}:{}", self.qubit, bit)
    }
}

/// Single-qubit operation carried by a gate.
///
/// `Ry(θ) = exp(-iθY/2)` and `Rz(θ) = exp(-iθZ/2)`. A `Z` with controls is a
/// multi-controlled phase flip and is diagonal in the computational basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateKind<T> {
    X,
    H,
    Z,
    Ry(T),
    Rz(T),
}

impl<T: Real> GateKind<T> {
    pub fn inverse(self) -> Self {
        match self {
            GateKind::Ry(t) => GateKind::Ry(-t),
            GateKind::Rz(t) => GateKind::Rz(-t),
            other => other,
        }
    }

    pub fn angle(&self) -> Option<T> {
        match *self {
            GateKind::Ry(t) | GateKind::Rz(t) => Some(t),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::Z => "z",
            GateKind::Ry(_) => "ry",
            GateKind::Rz(_) => "rz",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate<T> {
    pub kind: GateKind<T>,
    pub target: QubitId,
    pub controls: Vec<Control>,
}

impl<T: Real> Gate<T> {
    pub fn new(kind: GateKind<T>, target: QubitId) -> Self {
        Gate { kind, target, controls: Vec::new() }
    }

    pub fn x(target: QubitId) -> Self {
        Self::new(GateKind::X, target)
    }

    pub fn h(target: QubitId) -> Self {
        Self::new(GateKind::H, target)
    }

    pub fn z(target: QubitId) -> Self {
        Self::new(GateKind::Z, target)
    }

    pub fn ry(angle: T, target: QubitId) -> Self {
        Self::new(GateKind::Ry(angle), target)
    }

    pub fn rz(angle: T, target: QubitId) -> Self {
        Self::new(GateKind::Rz(angle), target)
    }

    /// Same gate with one more control appended.
    pub fn controlled_by(mut self, control: Control) -> Self {
        self.controls.push(control);
        self
    }

    pub fn with_controls(mut self, controls: impl IntoIterator<Item = Control>) -> Self {
        self.controls.extend(controls);
        self
    }

    pub fn inverse(&self) -> Self {
        Gate { kind: self.kind.inverse(), target: self.target, controls: self.controls.clone() }
    }

    /// Target and control qubits.
    pub fn qubits(&self) -> impl Iterator<Item = QubitId> + '_ {
        std::iter::once(self.target).chain(self.controls.iter().map(|c| c.qubit))
    }

    pub fn validate(&self, layout: &RegisterLayout) -> Result<()> {
        if let Some(angle) = self.kind.angle() {
            if !angle.is_finite() {
                return Err(Error::NonFiniteAngle);
            }
        }
        let mut seen = BTreeSet::new();
        for qubit in self.qubits() {
            if !layout.contains(qubit) {
                return Err(Error::QubitOutOfRange { qubit, layout: *layout });
            }
            if !seen.insert(qubit) {
                return Err(if qubit == self.target {
                    Error::TargetIsControl(qubit)
                } else {
                    Error::DuplicateControl(qubit)
                });
            }
        }
        Ok(())
    }
}

impl<T: Real> fmt::Display for Gate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if let Some(angle) = self.kind.angle() {
            write!(f, " {:.12}", angle)?;
        }
        write!(f, " {}", self.target)?;
        if !self.controls.is_empty() {
            let controls: Vec<String> = self.controls.iter().map(|c| c.to_string()).collect();
            write!(f, " ctrl={}", controls.join(","))?;
        }
        Ok(())
    }
}

/// Ordered gate list over a fixed register layout. Gates apply first to last.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit<T> {
    layout: RegisterLayout,
    gates: Vec<Gate<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(layout: RegisterLayout) -> Self {
        Circuit { layout, gates: Vec::new() }
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate<T>) -> Result<()> {
        gate.validate(&self.layout)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Append all gates of `other`, whose layout must fit inside this one.
    pub fn append(&mut self, other: &Circuit<T>) -> Result<()> {
        if !self.layout.includes(&other.layout) {
            return Err(Error::LayoutMismatch { circuit: other.layout, state: self.layout });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// Apply X to every qubit of the `q` register.
    pub fn push_x_on_q(&mut self) -> Result<()> {
        for i in 0..self.layout.n {
            self.push(Gate::x(QubitId::q(i)))?;
        }
        Ok(())
    }

    /// Reinterpret the circuit over a larger layout.
    pub fn embed(&self, layout: RegisterLayout) -> Result<Circuit<T>> {
        if !layout.includes(&self.layout) {
            return Err(Error::LayoutMismatch { circuit: self.layout, state: layout });
        }
        Ok(Circuit { layout, gates: self.gates.clone() })
    }

    /// Adjoint: reversed order, inverted gates.
    pub fn inverse(&self) -> Circuit<T> {
        Circuit { layout: self.layout, gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    /// Qubits touched by at least one gate.
    pub fn qubits_used(&self) -> BTreeSet<QubitId> {
        self.gates.iter().flat_map(|g| g.qubits()).collect()
    }

    /// Controlled version of the whole circuit: every gate gains `control`.
    ///
    /// The layout grows if `control` lies outside it. With the control in its
    /// non-firing state the result acts as the identity.
    pub fn add_control(&self, control: QubitId, polarity: Polarity) -> Result<Circuit<T>> {
        if self.gates.iter().any(|g| g.qubits().any(|q| q == control)) {
            return Err(Error::ControlCollision(control));
        }
        let layout = self.layout.extended_with(control);
        let extra = Control { qubit: control, polarity };
        let gates = self.gates.iter().cloned().map(|g| g.controlled_by(extra)).collect();
        Ok(Circuit { layout, gates })
    }
}

impl<T: Real> fmt::Display for Circuit<T> {
    /// One gate per line: `kind [angle] target [ctrl=qubit:bit,...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# layout {}", self.layout)?;
        for gate in &self.gates {
            writeln!(f, "{gate}")?;
        }
        Ok(())
    }
}
