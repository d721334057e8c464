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

//! Properties of the encoding, power and polynomial stages and the readout.

use proptest::prelude::*;

use qperceptron::circuit::{Circuit, RegisterLayout};
use qperceptron::perceptron::{assemble_core, assemble_core_with, build_sv, compute_angles, eval_fd};
use qperceptron::readout::{build_readout_circuit, build_readout_circuit_full, closed_form_p0, readout_probability};
use qperceptron::series::{taylor_coefficients, Activation, TaylorSeries};
use qperceptron::sim::simulate;
use qperceptron::state_prep::{
    build_uz, build_uz_with, synthesize_state_prep_with, EncodingLayout, PerceptronInputs, PrepOptions, SignSynthesis,
};

fn unit_interval() -> impl Strategy<Value = f64> {
    -1.0..=1.0f64
}

fn inputs(n_in: std::ops::Range<usize>) -> impl Strategy<Value = PerceptronInputs<f64>> {
    n_in.prop_flat_map(|n| {
        (proptest::collection::vec(unit_interval(), n), proptest::collection::vec(unit_interval(), n), unit_interval())
    })
    .prop_map(|(x, w, b)| PerceptronInputs::new(x, w, b).unwrap())
}

fn options() -> impl Strategy<Value = PrepOptions> {
    (any::<bool>(), any::<bool>()).prop_map(|(direct, phase)| PrepOptions {
        layout: if direct { EncodingLayout::Direct } else { EncodingLayout::PhaseFriendly },
        signs: if phase { SignSynthesis::PhaseLayer } else { SignSynthesis::LeafAngles },
    })
}

/// Custom series of degree `d` with `lead` leading zeros and a nonzero `a_k`.
fn custom_series() -> impl Strategy<Value = (Vec<f64>, usize)> {
    (1usize..=7)
        .prop_flat_map(|d| (Just(d), 0..d, proptest::collection::vec(-3.0..3.0f64, d + 1)))
        .prop_map(|(d, lead, mut c)| {
            for v in c.iter_mut().take(lead) {
                *v = 0.0;
            }
            if c[lead].abs() < 0.1 {
                c[lead] = 0.5;
            }
            (c, d)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn uz_element_is_normalized_affine_value(p in inputs(1..7), opts in options()) {
        let n = p.min_qubits();
        let uz = build_uz_with(&p, n, opts).unwrap();
        let amp = simulate(&uz).amplitudes()[(1 << n) - 1];
        let dot: f64 = p.x().iter().zip(p.w()).map(|(a, b)| a * b).sum();
        let z = (dot + p.b()) / (p.n_in() as f64 + 1.0);
        prop_assert!((amp.re - z).abs() < 1e-10 && amp.im.abs() < 1e-12);
    }

    #[test]
    fn state_prep_reaches_signed_vector(v in proptest::collection::vec(-1.0..1.0f64, 8), phase in any::<bool>()) {
        prop_assume!(v.iter().map(|x| x * x).sum::<f64>() > 1e-6);
        prop_assume!(v[0].abs() > 1e-3 || !phase);
        let mode = if phase { SignSynthesis::PhaseLayer } else { SignSynthesis::LeafAngles };
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let state = simulate(&synthesize_state_prep_with(&v, mode).unwrap());
        for (a, x) in state.amplitudes().iter().zip(&v) {
            prop_assert!((a.re - x / norm).abs() < 1e-10 && a.im.abs() < 1e-10);
        }
    }

    #[test]
    fn power_encoding_and_vacuum(p in inputs(4..5), d in 1usize..=6) {
        let uz = build_uz(&p, 3).unwrap();
        let sv = build_sv(&uz, 3, d).unwrap();
        prop_assert!((simulate(&sv).amplitudes()[0].re - 1.0).abs() < 1e-12);
        let mut prep = Circuit::new(RegisterLayout::new(3, d, false));
        prep.push_x_on_q().unwrap();
        prep.append(&sv).unwrap();
        let s = simulate(&prep);
        let z = p.z();
        for k in 0..=d {
            let amp = s.amplitude(0, (1 << k) - 1, 7).unwrap().re;
            prop_assert!((amp - z.powi(k as i32) / 2f64.powf(d as f64 / 2.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn recursion_reproduces_polynomial((coeffs, d) in custom_series(), z in unit_interval()) {
        let series: TaylorSeries<f64> = taylor_coefficients(&Activation::Custom(coeffs.clone()), 1.0, d, 0.0).unwrap();
        let s = compute_angles(&series, d).unwrap();
        let k = series.first_nonzero();
        prop_assert!(s.thetas[..k].iter().all(|t| *t == -std::f64::consts::FRAC_PI_2));
        prop_assert!(s.thetas[k..].iter().all(|t| t.cos() > 0.0));
        let direct: f64 = coeffs.iter().enumerate().map(|(i, a)| a * z.powi(i as i32)).sum();
        prop_assert!((s.c_d * eval_fd(z, &s) - direct).abs() < 1e-10 * (1.0 + direct.abs()));
        prop_assert!(eval_fd(z, &s).abs() / 2f64.powf(d as f64 / 2.0) <= 1.0 + 1e-12);
    }

    #[test]
    fn core_and_readout_agree_with_recursion(p in inputs(4..5), (coeffs, d) in custom_series(), opts in options()) {
        let series: TaylorSeries<f64> = taylor_coefficients(&Activation::Custom(coeffs), 1.0, d, 0.0).unwrap();
        let b = assemble_core_with(&p, &series, 3, d, opts).unwrap();
        let amp = simulate(&b.core).amplitudes()[0].re;
        prop_assert!((amp - b.expected_amplitude()).abs() < 1e-10);
        let optimized = simulate(&build_readout_circuit(&b).unwrap());
        let full = simulate(&build_readout_circuit_full(&b).unwrap());
        for (a, c) in optimized.amplitudes().iter().zip(full.amplitudes()) {
            prop_assert!((a - c).norm() < 1e-12);
        }
        prop_assert!((optimized.amplitudes()[0].norm_sqr() - closed_form_p0(&b)).abs() < 1e-10);
    }

    #[test]
    fn angles_ignore_the_inputs(p in inputs(4..5), q in inputs(4..5), d in 1usize..=7) {
        let series = taylor_coefficients::<f64>(&Activation::Tanh, 2.0, d, 0.0).unwrap();
        let a = assemble_core(&p, &series, 3, d).unwrap();
        let b = assemble_core(&q, &series, 3, d).unwrap();
        prop_assert_eq!(&a.schedule, &b.schedule);
        prop_assert_eq!(a.su.gates(), b.su.gates());
    }
}

#[test]
fn readout_probability_bounds() {
    // f_d = 0 gives 1/4; the quarter is the floor only when f_d ≥ 0
    let series = taylor_coefficients::<f64>(&Activation::Tanh, 2.0, 3, 0.0).unwrap();
    let zero = PerceptronInputs::uniform(0.0, vec![1.0; 4], 0.0).unwrap();
    let b = assemble_core(&zero, &series, 3, 3).unwrap();
    assert!((readout_probability(&build_readout_circuit(&b).unwrap()) - 0.25).abs() < 1e-12);
    for zbar in [-1.0, -0.5, 0.5, 1.0] {
        let p = PerceptronInputs::uniform(zbar, vec![1.0; 4], 0.0).unwrap();
        let b = assemble_core(&p, &series, 3, 3).unwrap();
        let prob = readout_probability(&build_readout_circuit(&b).unwrap());
        assert_eq!(prob > 0.25, b.expected_amplitude() > 0.0, "zbar {zbar}");
    }
}

#[test]
fn register_too_small_is_rejected() {
    let p = PerceptronInputs::uniform(0.1, vec![1.0; 6], 0.0).unwrap();
    assert_eq!(p.min_qubits(), 4);
    assert!(build_uz(&p, 3).is_err());
    assert!(build_uz(&p, 4).is_ok());
}
