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

//! Truncated Maclaurin series of activation functions.
//!
//! Built-in coefficients are produced by exact series recurrences over any
//! field; the public entry point runs them over `BigRational` and rounds once
//! at the end, so the only error in a coefficient is the final conversion.
//!
//! - `tanh`: from `t' = 1 − t²`, `(n+1) c_{n+1} = [n = 0] − Σ_{i+j=n} c_i c_j`.
//! - `sigmoid(z) = (1 + tanh(z/2)) / 2`.
//! - `sin`: `c_{n+2} = −c_n / ((n+1)(n+2))`.
//! - `swish(z) = z · sigmoid(z)`, a Cauchy product.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Coefficients with magnitude at or below this count as zero.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Field in which series recurrences are evaluated.
pub trait SeriesField: Clone + Num + FromPrimitive {}

impl<F: Clone + Num + FromPrimitive> SeriesField for F {}

fn int<F: SeriesField>(v: i64) -> F {
    F::from_i64(v).expect("small integers are representable")
}

/// First `order + 1` coefficients of `a · b`.
pub fn cauchy_product<F: SeriesField>(a: &[F], b: &[F], order: usize) -> Vec<F> {
    (0..=order)
        .map(|n| {
            (0..=n).fold(F::zero(), |acc, i| match (a.get(i), b.get(n - i)) {
                (Some(x), Some(y)) => acc + x.clone() * y.clone(),
                _ => acc,
            })
        })
        .collect()
}

pub fn tanh_series<F: SeriesField>(order: usize) -> Vec<F> {
    let mut c = vec![F::zero(); order + 1];
    for n in 0..order {
        let square: F = (0..=n).fold(F::zero(), |acc, i| acc + c[i].clone() * c[n - i].clone());
        let rhs = if n == 0 { F::one() - square } else { F::zero() - square };
        c[n + 1] = rhs / int(n as i64 + 1);
    }
    c
}

pub fn sigmoid_series<F: SeriesField>(order: usize) -> Vec<F> {
    let mut power = int::<F>(2);
    let mut out = Vec::with_capacity(order + 1);
    for (n, t) in tanh_series::<F>(order).into_iter().enumerate() {
        let mut s = t / power.clone();
        if n == 0 {
            s = s + F::one() / int(2);
        }
        out.push(s);
        power = power * int(2);
    }
    out
}

pub fn sin_series<F: SeriesField>(order: usize) -> Vec<F> {
    let mut c = vec![F::zero(); order + 1];
    if order >= 1 {
        c[1] = F::one();
    }
    for n in 1..order.saturating_sub(1) {
        c[n + 2] = F::zero() - c[n].clone() / int((n as i64 + 1) * (n as i64 + 2));
    }
    c
}

pub fn swish_series<F: SeriesField>(order: usize) -> Vec<F> {
    let z = [F::zero(), F::one()];
    cauchy_product(&z, &sigmoid_series::<F>(order), order)
}

/// Activation function whose Taylor polynomial is synthesized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Tanh,
    Sigmoid,
    Sin,
    Swish,
    /// User-supplied Maclaurin coefficients `c_0, c_1, …` of `f`.
    Custom(Vec<f64>),
}

impl Activation {
    pub fn name(&self) -> &'static str {
        match self {
            Activation::Tanh => "tanh",
            Activation::Sigmoid => "sigmoid",
            Activation::Sin => "sin",
            Activation::Swish => "swish",
            Activation::Custom(_) => "custom",
        }
    }

    /// `f(x)`. A custom activation is the polynomial of its coefficients.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Activation::Tanh => x.tanh(),
            Activation::Sigmoid => 1.0 / (1.0 + (-x).exp()),
            Activation::Sin => x.sin(),
            Activation::Swish => x / (1.0 + (-x).exp()),
            Activation::Custom(c) => c.iter().rev().fold(0.0, |acc, &a| acc * x + a),
        }
    }

    /// Maclaurin coefficients `c_0..=c_order` of `f` (unscaled).
    pub fn maclaurin<F: SeriesField>(&self, order: usize) -> Vec<F> {
        match self {
            Activation::Tanh => tanh_series(order),
            Activation::Sigmoid => sigmoid_series(order),
            Activation::Sin => sin_series(order),
            Activation::Swish => swish_series(order),
            Activation::Custom(c) => (0..=order)
                .map(|i| c.get(i).map_or(F::zero(), |&v| F::from_f64(v).expect("finite coefficient")))
                .collect(),
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Activation {
    type Err = Error;

    /// Parses a built-in name, or a JSON coefficient array for a custom function.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "tanh" => Ok(Activation::Tanh),
            "sigmoid" => Ok(Activation::Sigmoid),
            "sin" => Ok(Activation::Sin),
            "swish" => Ok(Activation::Swish),
            other if other.starts_with('[') => Ok(Activation::Custom(serde_json::from_str(other)?)),
            other => Err(Error::InvalidInput(format!(
                "unknown activation `{other}` (expected tanh, sigmoid, sin, swish or a JSON coefficient array)"
            ))),
        }
    }
}

/// Coefficients `a_0..=a_d` of `f(scale·z) + shift`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaylorSeries<T> {
    coeffs: Vec<T>,
    first_nonzero: usize,
    scale: T,
    shift: T,
    source: Activation,
}

impl<T: Real> TaylorSeries<T> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Index `k` of the first coefficient above [`ZERO_THRESHOLD`].
    pub fn first_nonzero(&self) -> usize {
        self.first_nonzero
    }

    /// `a_k`.
    pub fn leading(&self) -> T {
        self.coeffs[self.first_nonzero]
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn shift(&self) -> T {
        self.shift
    }

    pub fn source(&self) -> &Activation {
        &self.source
    }

    /// Horner evaluation of `Σ a_i z^i`.
    pub fn eval(&self, z: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &a| acc * z + a)
    }

    /// The exact target `f(scale·z) + shift`.
    pub fn target(&self, z: f64) -> f64 {
        self.source.eval(self.scale.as_f64() * z) + self.shift.as_f64()
    }

    /// Same series with a different constant shift.
    pub fn with_shift(&self, shift: f64) -> Result<TaylorSeries<T>> {
        taylor_coefficients(&self.source, self.scale.as_f64(), self.degree(), shift)
    }
}

/// `T_d(z)`.
pub fn series_eval<T: Real>(series: &TaylorSeries<T>, z: T) -> T {
    series.eval(z)
}

/// Degree-`d` Taylor coefficients of `source(scale·z) + shift`.
///
/// `a_i = scale^i c_i`, plus `shift` on `a_0`. Arithmetic is exact; `scale`
/// and `shift` enter as the exact rationals their `f64` values denote.
pub fn taylor_coefficients<T: Real>(source: &Activation, scale: f64, d: usize, shift: f64) -> Result<TaylorSeries<T>> {
    if d < 1 {
        return Err(Error::InvalidInput("series degree must be at least 1".into()));
    }
    if let Activation::Custom(c) = source {
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("custom coefficients must be finite".into()));
        }
    }
    let exact = |v: f64, what: &str| {
        BigRational::from_float(v).ok_or_else(|| Error::InvalidInput(format!("{what} = {v} is not finite")))
    };
    let k = exact(scale, "scale")?;
    let gamma = exact(shift, "shift")?;

    let base: Vec<BigRational> = source.maclaurin(d);
    let mut power = BigRational::from_integer(BigInt::from(1));
    let mut coeffs = Vec::with_capacity(d + 1);
    for (i, c) in base.into_iter().enumerate() {
        let mut a = c * &power;
        if i == 0 {
            a += &gamma;
        }
        let value = a.to_f64().ok_or_else(|| Error::InvalidInput(format!("coefficient a_{i} overflows f64")))?;
        coeffs.push(T::lit(value));
        power *= &k;
    }
    let first_nonzero = coeffs
        .iter()
        .position(|a| a.abs().as_f64() > ZERO_THRESHOLD)
        .ok_or(Error::ZeroFunction)?;
    Ok(TaylorSeries { coeffs, first_nonzero, scale: T::lit(scale), shift: T::lit(shift), source: source.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn assert_coeffs(series: &TaylorSeries<f64>, expected: &[f64]) {
        assert_eq!(series.coeffs().len(), expected.len());
        for (i, (a, e)) in series.coeffs().iter().zip(expected).enumerate() {
            assert!((a - e).abs() < 1e-14, "a_{i}: {a} vs {e}");
        }
    }

    #[test]
    fn exact_tanh_coefficients() {
        let t: Vec<BigRational> = tanh_series(7);
        let expected = [rat(0, 1), rat(1, 1), rat(0, 1), rat(-1, 3), rat(0, 1), rat(2, 15), rat(0, 1), rat(-17, 315)];
        assert_eq!(t, expected);
    }

    #[test]
    fn exact_sigmoid_and_swish_coefficients() {
        let s: Vec<BigRational> = sigmoid_series(5);
        assert_eq!(s, [rat(1, 2), rat(1, 4), rat(0, 1), rat(-1, 48), rat(0, 1), rat(1, 480)]);
        let w: Vec<BigRational> = swish_series(4);
        assert_eq!(w, [rat(0, 1), rat(1, 2), rat(1, 4), rat(0, 1), rat(-1, 48)]);
    }

    #[test]
    fn exact_sin_coefficients() {
        let s: Vec<BigRational> = sin_series(7);
        assert_eq!(s, [rat(0, 1), rat(1, 1), rat(0, 1), rat(-1, 6), rat(0, 1), rat(1, 120), rat(0, 1), rat(-1, 5040)]);
        assert_eq!(sin_series::<BigRational>(0), [rat(0, 1)]);
    }

    #[test]
    fn scaled_examples() {
        let tanh = taylor_coefficients::<f64>(&Activation::Tanh, 2.0, 3, 0.0).unwrap();
        assert_coeffs(&tanh, &[0.0, 2.0, 0.0, -8.0 / 3.0]);
        assert_eq!(tanh.first_nonzero(), 1);

        let sigmoid = taylor_coefficients::<f64>(&Activation::Sigmoid, 4.0, 3, 0.0).unwrap();
        assert_coeffs(&sigmoid, &[0.5, 1.0, 0.0, -4.0 / 3.0]);
        assert_eq!(sigmoid.first_nonzero(), 0);

        let sin = taylor_coefficients::<f64>(&Activation::Sin, 4.0, 3, 0.0).unwrap();
        assert_coeffs(&sin, &[0.0, 4.0, 0.0, -32.0 / 3.0]);
        assert_eq!(sin.first_nonzero(), 1);

        let swish = taylor_coefficients::<f64>(&Activation::Swish, 3.0, 4, 0.0).unwrap();
        assert_coeffs(&swish, &[0.0, 1.5, 2.25, 0.0, -27.0 / 16.0]);
        assert_eq!(swish.first_nonzero(), 1);
    }

    #[test]
    fn shift_and_custom() {
        let s = taylor_coefficients::<f64>(&Activation::Tanh, 2.0, 3, 0.25).unwrap();
        assert_eq!(s.coeffs()[0], 0.25);
        assert_eq!(s.first_nonzero(), 0);

        let custom = taylor_coefficients::<f64>(&Activation::Custom(vec![0.0, 0.0, 1.0]), 2.0, 3, 0.0).unwrap();
        assert_coeffs(&custom, &[0.0, 0.0, 4.0, 0.0]);
        assert_eq!(custom.first_nonzero(), 2);

        let zero = taylor_coefficients::<f64>(&Activation::Custom(vec![0.0, 1e-13]), 1.0, 2, 0.0);
        assert!(matches!(zero, Err(Error::ZeroFunction)));
        assert!(taylor_coefficients::<f64>(&Activation::Sin, 1.0, 0, 0.0).is_err());
    }

    #[test]
    fn horner_evaluation() {
        let tanh = taylor_coefficients::<f64>(&Activation::Tanh, 2.0, 3, 0.0).unwrap();
        assert_eq!(series_eval(&tanh, 0.0), 0.0);
        assert!((series_eval(&tanh, 0.3) - 0.528).abs() < 1e-14);
        let sin = taylor_coefficients::<f64>(&Activation::Sin, 4.0, 3, 0.0).unwrap();
        assert!((series_eval(&sin, 0.25) - (1.0 - 32.0 / 3.0 * 0.015625)).abs() < 1e-14);
        let sigmoid = taylor_coefficients::<f64>(&Activation::Sigmoid, 4.0, 5, 0.0).unwrap();
        assert_eq!(series_eval(&sigmoid, 0.0), 0.5);
    }

    #[test]
    fn float_and_rational_routes_agree() {
        for act in [Activation::Tanh, Activation::Sigmoid, Activation::Sin, Activation::Swish] {
            let exact: Vec<BigRational> = act.maclaurin(15);
            let float: Vec<f64> = act.maclaurin(15);
            for (e, f) in exact.iter().zip(&float) {
                assert!((e.to_f64().unwrap() - f).abs() <= 1e-15 * f.abs().max(1e-3), "{act}");
            }
        }
    }

    #[test]
    fn parse_activation() {
        assert_eq!("tanh".parse::<Activation>().unwrap(), Activation::Tanh);
        assert_eq!("[0, 1, 0.5]".parse::<Activation>().unwrap(), Activation::Custom(vec![0.0, 1.0, 0.5]));
        assert!("relu".parse::<Activation>().is_err());
    }
}
