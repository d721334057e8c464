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

//! Power encoding `S_V`, polynomial composition `S_U` and their assembly.
//!
//! With `|z⟩ = |0⟩ + z|1⟩`, `S_V X_q^⊗n |0⟩_a|0⟩_q` carries `2^{-d/2} z^k` on
//! `|2^k − 1⟩_a |N−1⟩_q`. `S_U` then mixes those powers with rotations so
//! that `⟨0|_a S_U |z⟩^⊗d = f_d(z)`, where
//!
//! ```text
//! f_0 = 1,   f_k(z) = f_{k-1}(z) cos θ_{k-1} − z^k sin θ_{k-1}
//! ```
//!
//! and the angles make `C_d f_d` equal the degree-`d` Taylor polynomial.

use serde::Serialize;

use crate::circuit::{Circuit, Control, Gate, Polarity, QubitId, RegisterLayout};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::TaylorSeries;
use crate::state_prep::{build_uz_with, PerceptronInputs, PrepOptions};

/// Rotation angles `θ_0..θ_{d-1}` and the normalization `C_d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleSchedule<T> {
    pub thetas: Vec<T>,
    pub c_d: T,
    /// Index of the first nonzero Taylor coefficient.
    pub first_nonzero: usize,
}

impl<T: Real> AngleSchedule<T> {
    pub fn degree(&self) -> usize {
        self.thetas.len()
    }
}

/// Angles for `series`, whose degree must equal `d`.
///
/// `θ_i = −π/2` for `i < k`; for `i ≥ k`, in increasing order,
/// `θ_i = atan(−(a_{i+1}/a_k) · Π_{j=k}^{i-1} cos θ_j)`.
/// `C_d = a_k / Π_{j=k}^{d-1} cos θ_j`.
pub fn compute_angles<T: Real>(series: &TaylorSeries<T>, d: usize) -> Result<AngleSchedule<T>> {
    if series.degree() != d {
        return Err(Error::InvalidInput(format!("series has degree {}, expected {d}", series.degree())));
    }
    let a = series.coeffs();
    let k = series.first_nonzero();
    let a_k = a[k];
    let mut thetas = vec![-T::FRAC_PI_2(); d];
    let mut cos_product = T::one();
    for i in k..d {
        // adding zero turns atan(-0) into +0
        let theta = (-(a[i + 1] / a_k) * cos_product).atan() + T::zero();
        thetas[i] = theta;
        cos_product = cos_product * theta.cos();
    }
    Ok(AngleSchedule { thetas, c_d: a_k / cos_product, first_nonzero: k })
}

/// Classical `f_d(z)` from the recursion.
pub fn eval_fd<T: Real>(z: T, schedule: &AngleSchedule<T>) -> T {
    let mut f = T::one();
    let mut power = T::one();
    for &theta in &schedule.thetas {
        power = power * z;
        let (s, c) = theta.sin_cos();
        f = f * c - power * s;
    }
    f
}

/// `S_V = V_{d-1} ⋯ V_0` over layout `(n, d)`.
///
/// Each `V_m` applies, in order: H on `a_m` controlled by all of `q`, X on
/// every `q` qubit controlled by `a_m`, and `U_z` controlled by `a_m`.
pub fn build_sv<T: Real>(uz: &Circuit<T>, n: usize, d: usize) -> Result<Circuit<T>> {
    let uz_layout = uz.layout();
    if uz_layout.n != n || uz_layout.d != 0 || uz_layout.has_l {
        return Err(Error::LayoutMismatch { circuit: uz_layout, state: RegisterLayout::q_only(n) });
    }
    let layout = RegisterLayout::new(n, d, false);
    let mut sv = Circuit::new(layout);
    for m in 0..d {
        let am = QubitId::a(m);
        let all_q = (0..n).map(|i| Control::on_one(QubitId::q(i)));
        sv.push(Gate::h(am).with_controls(all_q))?;
        for i in 0..n {
            sv.push(Gate::x(QubitId::q(i)).controlled_by(Control::on_one(am)))?;
        }
        sv.append(&uz.add_control(am, Polarity::OnOne)?)?;
    }
    Ok(sv)
}

/// `S_U = U_d` on the `a` register.
///
/// Step `k` applies `R(θ_{k-1})` on `a_0` anti-controlled by `a_k`, then CX
/// from `a_0` to `a_k`, where `R(θ)` maps `(α, β) ↦ (α cos θ − β sin θ, …)`,
/// i.e. `Ry(2θ)`. The last step has no `a_d` to guard: its rotation is
/// uncontrolled and its CX is omitted, which leaves `⟨0|_a` unchanged.
pub fn build_su<T: Real>(schedule: &AngleSchedule<T>, d: usize) -> Result<Circuit<T>> {
    if d < 1 {
        return Err(Error::InvalidInput("S_U needs at least one ancilla".into()));
    }
    if schedule.degree() != d {
        return Err(Error::InvalidInput(format!("schedule has {} angles, expected {d}", schedule.degree())));
    }
    let mut su = Circuit::new(RegisterLayout::new(0, d, false));
    let two = T::lit(2.0);
    let a0 = QubitId::a(0);
    for k in 1..=d {
        let rotation = Gate::ry(two * schedule.thetas[k - 1], a0);
        if k < d {
            let ak = QubitId::a(k);
            su.push(rotation.controlled_by(Control::on_zero(ak)))?;
            su.push(Gate::x(ak).controlled_by(Control::on_one(a0)))?;
        } else {
            su.push(rotation)?;
        }
    }
    Ok(su)
}

/// Core circuit `X_q^⊗n · S_U · S_V · X_q^⊗n` together with its parts.
#[derive(Clone, Debug)]
pub struct CoreCircuitBundle<T> {
    pub core: Circuit<T>,
    pub sv: Circuit<T>,
    pub su: Circuit<T>,
    pub uz: Circuit<T>,
    pub n: usize,
    pub d: usize,
    pub schedule: AngleSchedule<T>,
    pub series: TaylorSeries<T>,
    /// Classical `(w·x + b)/(N_in + 1)`, kept for comparisons only.
    pub z: T,
}

impl<T: Real> CoreCircuitBundle<T> {
    pub fn layout(&self) -> RegisterLayout {
        self.core.layout()
    }

    /// `2^{-d/2} f_d(z)`: the amplitude the core puts on `|0⟩_a|0⟩_q`.
    pub fn expected_amplitude(&self) -> T {
        T::lit(2.0).powi(-(self.d as i32)).sqrt() * eval_fd(self.z, &self.schedule)
    }
}

pub fn assemble_core<T: Real>(
    inputs: &PerceptronInputs<T>,
    series: &TaylorSeries<T>,
    n: usize,
    d: usize,
) -> Result<CoreCircuitBundle<T>> {
    assemble_core_with(inputs, series, n, d, PrepOptions::default())
}

pub fn assemble_core_with<T: Real>(
    inputs: &PerceptronInputs<T>,
    series: &TaylorSeries<T>,
    n: usize,
    d: usize,
    options: PrepOptions,
) -> Result<CoreCircuitBundle<T>> {
    let uz = build_uz_with(inputs, n, options)?;
    let schedule = compute_angles(series, d)?;
    let sv = build_sv(&uz, n, d)?;
    let su = build_su(&schedule, d)?;
    let mut core = Circuit::new(RegisterLayout::new(n, d, false));
    core.push_x_on_q()?;
    core.append(&sv)?;
    core.append(&su)?;
    core.push_x_on_q()?;
    Ok(CoreCircuitBundle { core, sv, su, uz, n, d, schedule, series: series.clone(), z: inputs.z() })
}
