// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! Explicit Runge–Kutta steppers for autonomous linear systems `y' = A y`.

use nalgebra::{ComplexField, SMatrix, SVector};
use num_complex::Complex64 as C64;

/// Scalars the steppers run on: `f64` for observables, `Complex64` for the
/// vectorized density operator.
pub trait Scalar: ComplexField<RealField = f64> + Copy {}

impl Scalar for f64 {}
impl Scalar for C64 {}

#[derive(Clone, Copy, Debug)]
pub struct LinearFlow<T: Scalar, const N: usize> {
    pub generator: SMatrix<T, N, N>,
}

// Dormand–Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b5 − b4 for the embedded error estimate.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

impl<T: Scalar, const N: usize> LinearFlow<T, N> {
    pub fn new(generator: SMatrix<T, N, N>) -> Self {
        Self { generator }
    }

    fn rhs(&self, y: &SVector<T, N>) -> SVector<T, N> {
        self.generator * y
    }

    /// Classic fourth-order step.
    pub fn rk4_step(&self, y: &SVector<T, N>, h: f64) -> SVector<T, N> {
        let half = T::from_real(0.5 * h);
        let full = T::from_real(h);
        let k1 = self.rhs(y);
        let k2 = self.rhs(&(y + k1 * half));
        let k3 = self.rhs(&(y + k2 * half));
        let k4 = self.rhs(&(y + k3 * full));
        y + (k1 + (k2 + k3) * T::from_real(2.0) + k4) * T::from_real(h / 6.0)
    }

    /// Fifth-order Dormand–Prince step and its embedded error vector.
    pub fn dopri5_step(&self, y: &SVector<T, N>, h: f64) -> (SVector<T, N>, SVector<T, N>) {
        let s = |c: f64| T::from_real(c * h);
        let k1 = self.rhs(y);
        let k2 = self.rhs(&(y + k1 * s(A21)));
        let k3 = self.rhs(&(y + k1 * s(A31) + k2 * s(A32)));
        let k4 = self.rhs(&(y + k1 * s(A41) + k2 * s(A42) + k3 * s(A43)));
        let k5 = self.rhs(&(y + k1 * s(A51) + k2 * s(A52) + k3 * s(A53) + k4 * s(A54)));
        let k6 =
            self.rhs(&(y + k1 * s(A61) + k2 * s(A62) + k3 * s(A63) + k4 * s(A64) + k5 * s(A65)));
        let next = y + k1 * s(B1) + k3 * s(B3) + k4 * s(B4) + k5 * s(B5) + k6 * s(B6);
        let k7 = self.rhs(&next);
        let err = k1 * s(E1) + k3 * s(E3) + k4 * s(E4) + k5 * s(E5) + k6 * s(E6) + k7 * s(E7);
        (next, err)
    }
}

/// Weighted max-norm of an error estimate; `<= 1` means acceptable.
pub fn error_ratio<T: Scalar, const N: usize>(
    err: &SVector<T, N>,
    old: &SVector<T, N>,
    new: &SVector<T, N>,
    rtol: f64,
    atol: f64,
) -> f64 {
    err.iter()
        .zip(old.iter().zip(new.iter()))
        .map(|(e, (a, b))| e.modulus() / (atol + rtol * a.modulus().max(b.modulus())))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{Matrix2, Vector2};

    /// Harmonic oscillator y'' = −y as a first-order system.
    fn oscillator() -> LinearFlow<f64, 2> {
        LinearFlow::new(Matrix2::new(0.0, 1.0, -1.0, 0.0))
    }

    #[test]
    fn rk4_matches_taylor_polynomial() {
        // For linear systems one RK4 step is exactly Σ_{k≤4} (hA)^k / k!.
        let f = oscillator();
        let y = Vector2::new(0.3, -1.1);
        let h = 0.37;
        let ha = f.generator * h;
        let mut term = y;
        let mut sum = y;
        for k in 1..=4 {
            term = ha * term / k as f64;
            sum += term;
        }
        assert!((f.rk4_step(&y, h) - sum).abs().max() < 1e-15);
    }

    #[test]
    fn dopri5_accuracy_and_error_estimate() {
        let f = oscillator();
        let y = Vector2::new(1.0, 0.0);
        let h = 0.1;
        let (next, err) = f.dopri5_step(&y, h);
        let exact = Vector2::new(h.cos(), -h.sin());
        let actual = (next - exact).abs().max();
        assert!(actual < 1e-8);
        // Embedded estimate is of the fourth-order error; it must not be
        // smaller than the true fifth-order error by orders of magnitude.
        assert!(err.abs().max() > actual * 0.1);
        assert!(err.abs().max() < 1e-5);
    }

    #[test]
    fn complex_scalars() {
        let f = LinearFlow::<C64, 1>::new(SMatrix::<C64, 1, 1>::new(C64::new(0.0, -1.0)));
        let y = SVector::<C64, 1>::new(C64::new(1.0, 0.0));
        let mut cur = y;
        for _ in 0..1000 {
            cur = f.rk4_step(&cur, 1e-3);
        }
        let exact = C64::new(1.0f64.cos(), -1.0f64.sin());
        assert!((cur[0] - exact).norm() < 1e-12);
    }
}
