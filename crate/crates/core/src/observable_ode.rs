// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! Linear ODEs for the nine symmetric expectation values and the three-variable
//! locked subsystem.
//!
//! With `M_B = Tr[F_B ρ]` and `ρ = Σ_C c_C B_C`, `c = G⁻¹ m`, the generator
//! projects to `dM/dt = T G⁻¹ M` where `T_AB = Tr[F_A · L(F_B)]`. Keeping the
//! observables unnormalized means the coefficients come out in the same scaling
//! as the hand-derived equations.

use std::fmt::Write as _;

use nalgebra::{Matrix3, SMatrix, SVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hamiltonians::{Liouvillian, PhysicalParams};
use crate::spin_algebra::{BasisLabel, Observable, SuperOperator, TwoSpinBasis, LDIM};

/// Limit on imaginary parts of projected traces, relative to the largest
/// generator entry (or 1, whichever is bigger).
pub const IMAGINARY_TOL: f64 = 1e-12;
/// Limit on leakage out of the symmetric sector or out of the locked
/// subsystem, relative in the same way.
pub const LEAK_TOL: f64 = 1e-10;

pub type Matrix9 = SMatrix<f64, 9, 9>;

/// `dM/dt = A·M` over `(M_z, M_x, M_y, M_zz, M_xx, M_yy, M_zx, M_zy, M_xy)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientMatrix9 {
    pub matrix: Matrix9,
    pub params: PhysicalParams,
}

impl CoefficientMatrix9 {
    pub fn entry(&self, row: Observable, col: Observable) -> f64 {
        self.matrix[(row.index(), col.index())]
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        self.matrix.complex_eigenvalues().iter().copied().collect()
    }

    /// Row-major plain text, one row per line, preceded by a `#` header naming
    /// the variables.
    pub fn to_text(&self) -> String {
        matrix_to_text(
            &Observable::ALL.map(|o| o.label()),
            self.matrix.row_iter().map(|r| r.iter().copied().collect()),
        )
    }

    /// Parses [`to_text`](Self::to_text) output. `params` are attached as given.
    pub fn from_text(text: &str, params: PhysicalParams) -> Result<Self> {
        let rows = matrix_from_text(text, 9)?;
        Ok(Self {
            matrix: Matrix9::from_fn(|r, c| rows[r][c]),
            params,
        })
    }
}

/// The reduced variables of the locked subsystem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LockedVar {
    Mx,
    /// `W = M_zz − M_yy`
    W,
    Mzy,
}

impl LockedVar {
    pub const ALL: [LockedVar; 3] = [LockedVar::Mx, LockedVar::W, LockedVar::Mzy];

    pub fn label(self) -> &'static str {
        match self {
            LockedVar::Mx => "Mx",
            LockedVar::W => "W",
            LockedVar::Mzy => "Mzy",
        }
    }
}

/// `d(M_x, W, M_zy)/dt = A·(M_x, W, M_zy)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientMatrix3 {
    pub matrix: Matrix3<f64>,
    pub params: PhysicalParams,
}

impl CoefficientMatrix3 {
    pub fn entry(&self, row: LockedVar, col: LockedVar) -> f64 {
        self.matrix[(row as usize, col as usize)]
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        self.matrix.complex_eigenvalues().iter().copied().collect()
    }

    pub fn to_text(&self) -> String {
        matrix_to_text(
            &LockedVar::ALL.map(|v| v.label().to_string()),
            self.matrix.row_iter().map(|r| r.iter().copied().collect()),
        )
    }

    pub fn from_text(text: &str, params: PhysicalParams) -> Result<Self> {
        let rows = matrix_from_text(text, 3)?;
        Ok(Self {
            matrix: Matrix3::from_fn(|r, c| rows[r][c]),
            params,
        })
    }
}

/// Conserved combination `M_x + (3ω_d / 2ω₁) W` of the locked subsystem, as
/// the left null vector `(1, 3ω_d/2ω₁, 0)`. Undefined without drive.
pub fn locked_invariant(params: &PhysicalParams) -> Option<[f64; 3]> {
    (params.omega1 != 0.0).then(|| [1.0, 1.5 * params.omega_d / params.omega1, 0.0])
}

fn matrix_to_text(header: &[String], rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = format!("# {}\n", header.join(" "));
    for row in rows {
        let line: Vec<String> = row.iter().map(|x| format!("{x:e}")).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

fn matrix_from_text(text: &str, n: usize) -> Result<Vec<Vec<f64>>> {
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>()
                        .map_err(|e| Error::MalformedMatrix(format!("{tok:?}: {e}")))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedMatrix(format!("expected {n}x{n} entries")));
    }
    Ok(rows)
}

/// Projects any superoperator onto the symmetric observables, checking that
/// nothing leaks into the identity or antisymmetric directions.
pub fn project_superoperator(op: &SuperOperator, basis: &TwoSpinBasis) -> Result<Matrix9> {
    let scale = op.max_abs().max(1.0);
    let images: Vec<_> = basis.elements.iter().map(|b| op.apply(b)).collect();
    let mut overlaps = SMatrix::<f64, LDIM, LDIM>::zeros();
    let mut worst_imag = 0.0f64;
    for (a, ba) in basis.elements.iter().enumerate() {
        for (b, image) in images.iter().enumerate() {
            let t = ba.inner(image);
            worst_imag = worst_imag.max(t.im.abs());
            overlaps[(a, b)] = t.re;
        }
    }
    if worst_imag > IMAGINARY_TOL * scale {
        return Err(Error::ClosureViolation {
            component: "imaginary part of projected traces".into(),
            magnitude: worst_imag,
        });
    }
    let full = overlaps * basis.gram_inverse();

    let outside: Vec<usize> = basis
        .labels
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.is_symmetric())
        .map(|(k, _)| k)
        .collect();
    for obs in Observable::ALL {
        let row = basis.position(obs);
        // dM/dt must not see Tr ρ or antisymmetric moments...
        for &k in &outside {
            check_leak(full[(row, k)], scale, basis.labels[k], obs)?;
        }
        // ...and L(F) must stay in the symmetric traceless sector.
        let coeffs = basis.expand(&images[row]);
        for &k in &outside {
            check_leak(coeffs[k].norm(), scale, basis.labels[k], obs)?;
        }
    }

    Ok(Matrix9::from_fn(|r, c| {
        full[(
            basis.position(Observable::ALL[r]),
            basis.position(Observable::ALL[c]),
        )]
    }))
}

fn check_leak(value: f64, scale: f64, into: BasisLabel, from: Observable) -> Result<()> {
    if value.abs() > LEAK_TOL * scale {
        return Err(Error::ClosureViolation {
            component: format!("{into:?} (from {from})"),
            magnitude: value.abs(),
        });
    }
    Ok(())
}

/// Coefficient matrix of the nine observables obtained from the generator.
pub fn project_generator(l: &Liouvillian, basis: &TwoSpinBasis) -> Result<CoefficientMatrix9> {
    Ok(CoefficientMatrix9 {
        matrix: project_superoperator(&l.matrix, basis)?,
        params: l.params,
    })
}

/// The nine coupled equations written out by hand.
pub fn analytic_coefficients9(params: &PhysicalParams) -> CoefficientMatrix9 {
    use Observable::*;
    let w1 = params.omega1;
    let wd = params.omega_d;
    let tc = params.tau_c;
    let cross = w1 * wd * tc;
    let drive2 = w1 * w1 * tc;
    let dip2 = 2.25 * wd * wd * tc;

    let mut a = Matrix9::zeros();
    let mut set = |row: Observable, col: Observable, v: f64| a[(row.index(), col.index())] += v;

    set(Z, Y, w1);
    set(Z, Z, -drive2);
    set(Z, ZX, 3.0 * cross);

    set(X, X, -dip2);
    set(X, YY, -6.0 * cross);
    set(X, ZY, -3.0 * wd);
    set(X, ZZ, 6.0 * cross);

    set(Y, XY, 3.0 * cross);
    set(Y, Y, -(drive2 + dip2));
    set(Y, Z, -w1);
    set(Y, ZX, 3.0 * wd);

    set(ZZ, X, 0.75 * cross);
    set(ZZ, YY, 2.0 * drive2);
    set(ZZ, ZY, w1);
    set(ZZ, ZZ, -2.0 * drive2);

    set(YY, X, -0.75 * cross);
    set(YY, YY, -2.0 * drive2);
    set(YY, ZY, -w1);
    set(YY, ZZ, 2.0 * drive2);

    set(ZX, XY, w1);
    set(ZX, Y, -0.75 * wd);
    set(ZX, Z, 0.75 * cross);
    set(ZX, ZX, -(drive2 + dip2));

    set(ZY, X, 0.75 * wd);
    set(ZY, YY, 2.0 * w1);
    set(ZY, ZY, -(4.0 * drive2 + dip2));
    set(ZY, ZZ, -2.0 * w1);

    set(XY, XY, -drive2);
    set(XY, Y, 0.75 * cross);
    set(XY, ZX, -w1);

    CoefficientMatrix9 {
        matrix: a,
        params: *params,
    }
}

/// The locked three-variable system written out by hand.
pub fn analytic_coefficients3(params: &PhysicalParams) -> CoefficientMatrix3 {
    let w1 = params.omega1;
    let wd = params.omega_d;
    let tc = params.tau_c;
    let cross = w1 * wd * tc;
    let drive2 = w1 * w1 * tc;
    let dip2 = 2.25 * wd * wd * tc;
    #[rustfmt::skip]
    let matrix = Matrix3::new(
        -dip2, 6.0 * cross, -3.0 * wd,
        1.5 * cross, -4.0 * drive2, 2.0 * w1,
        0.75 * wd, -2.0 * w1, -(4.0 * drive2 + dip2),
    );
    CoefficientMatrix3 {
        matrix,
        params: *params,
    }
}

/// Embedding of `(M_x, W, M_zy)` into the nine observables on the subspace
/// reached from the post-pulse state (`M_zz = −M_yy = W/2`, rest zero).
pub fn locked_embedding() -> SMatrix<f64, 9, 3> {
    let mut e = SMatrix::<f64, 9, 3>::zeros();
    e[(Observable::X.index(), 0)] = 1.0;
    e[(Observable::ZZ.index(), 1)] = 0.5;
    e[(Observable::YY.index(), 1)] = -0.5;
    e[(Observable::ZY.index(), 2)] = 1.0;
    e
}

/// Map from the nine observables to `(M_x, M_zz − M_yy, M_zy)`.
pub fn locked_projection() -> SMatrix<f64, 3, 9> {
    let mut p = SMatrix::<f64, 3, 9>::zeros();
    p[(0, Observable::X.index())] = 1.0;
    p[(1, Observable::ZZ.index())] = 1.0;
    p[(1, Observable::YY.index())] = -1.0;
    p[(2, Observable::ZY.index())] = 1.0;
    p
}

/// Restricts the nine-variable flow to `(M_x, W, M_zy)`.
pub fn reduce_to_locked(system: &CoefficientMatrix9) -> Result<CoefficientMatrix3> {
    let e = locked_embedding();
    let p = locked_projection();
    let a = system.matrix;
    let scale = a.abs().max().max(1.0);
    let complement = SMatrix::<f64, 9, 9>::identity() - e * p;

    // The reduced variables may not be driven by anything outside the subspace...
    let dependence = p * a * complement;
    let worst = dependence.abs().max();
    if worst > LEAK_TOL * scale {
        return Err(Error::ReductionLeak {
            detail: "reduced rows depend on excluded observables".into(),
            magnitude: worst,
        });
    }
    // ...and the subspace itself must be invariant.
    let escape = complement * a * e;
    let worst = escape.abs().max();
    if worst > LEAK_TOL * scale {
        return Err(Error::ReductionLeak {
            detail: "subspace feeds excluded observables".into(),
            magnitude: worst,
        });
    }

    Ok(CoefficientMatrix3 {
        matrix: p * a * e,
        params: system.params,
    })
}

/// Initial `(M_x, W, M_zy)` after the 90° pulse.
pub fn locked_initial(m0: f64) -> SVector<f64, 3> {
    SVector::<f64, 3>::new(m0, 0.0, 0.0)
}
