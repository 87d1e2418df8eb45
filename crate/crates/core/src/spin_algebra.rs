// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense operator algebra on the two-spin Hilbert space.
//!
//! States are ordered `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩` with the `I` spin as the first
//! tensor factor. Liouville-space vectors stack columns: the entry `(r, c)` of
//! an operator lands at index `4c + r`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix4, SMatrix, SVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Hilbert-space dimension of two spin-1/2 particles.
pub const DIM: usize = 4;
/// Dimension of Liouville space (vectorized 4×4 operators).
pub const LDIM: usize = DIM * DIM;

/// Tolerance for algebraic identities between O(1) operators.
pub const ALGEBRA_TOL: f64 = 1e-12;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Cartesian axis label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Spin-1/2 angular momentum matrix (half a Pauli matrix).
    pub fn half_pauli(self) -> Matrix2<C64> {
        let h = 0.5;
        match self {
            Axis::X => Matrix2::new(ZERO, ONE * h, ONE * h, ZERO),
            Axis::Y => Matrix2::new(ZERO, -I * h, I * h, ZERO),
            Axis::Z => Matrix2::new(ONE * h, ZERO, ZERO, -ONE * h),
        }
    }

    fn name(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

/// A dense 4×4 complex operator on the two-spin space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator(pub Matrix4<C64>);

impl Operator {
    pub fn zero() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn from_matrix(m: Matrix4<C64>) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    /// `a ⊗ b`, with `a` acting on the `I` spin.
    pub fn kron(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Self {
        let mut m = Matrix4::zeros();
        for (i1, j1) in index_pairs(2) {
            for (i2, j2) in index_pairs(2) {
                m[(2 * i1 + i2, 2 * j1 + j2)] = a[(i1, j1)] * b[(i2, j2)];
            }
        }
        Self(m)
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest elementwise deviation from Hermiticity.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0 * C64::new(s, 0.0))
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self(self.0 * s)
    }

    /// Hilbert–Schmidt inner product `Tr[self† · other]`.
    pub fn inner(&self, other: &Operator) -> C64 {
        (self.0.adjoint() * other.0).trace()
    }

    /// Column-stacked Liouville-space vector.
    pub fn vectorize(&self) -> SVector<C64, LDIM> {
        SVector::from_iterator(self.0.iter().copied())
    }

    pub fn from_vector(v: &SVector<C64, LDIM>) -> Self {
        Self(Matrix4::from_iterator(v.iter().copied()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

fn index_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        Operator(self.0 + rhs.0)
    }
}

impl AddAssign for Operator {
    fn add_assign(&mut self, rhs: Operator) {
        self.0 += rhs.0;
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        Operator(self.0 - rhs.0)
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator(-self.0)
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        Operator(self.0 * rhs.0)
    }
}

impl Mul<f64> for Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        self.scale(rhs)
    }
}

/// `ab − ba`.
pub fn commutator(a: &Operator, b: &Operator) -> Operator {
    Operator(a.0 * b.0 - b.0 * a.0)
}

/// Single-spin angular momentum `I_α = σ_α/2 ⊗ 𝟙`.
pub fn spin_i(axis: Axis) -> Operator {
    Operator::kron(&axis.half_pauli(), &Matrix2::identity())
}

/// Single-spin angular momentum `S_α = 𝟙 ⊗ σ_α/2`.
pub fn spin_s(axis: Axis) -> Operator {
    Operator::kron(&Matrix2::identity(), &axis.half_pauli())
}

/// `I_± = I_x ± i I_y`.
pub fn i_ladder(raise: bool) -> Operator {
    let sign = if raise { 1.0 } else { -1.0 };
    spin_i(Axis::X) + spin_i(Axis::Y).scale_c(I * sign)
}

/// `S_± = S_x ± i S_y`.
pub fn s_ladder(raise: bool) -> Operator {
    let sign = if raise { 1.0 } else { -1.0 };
    spin_s(Axis::X) + spin_s(Axis::Y).scale_c(I * sign)
}

/// Collective component `F_α = I_α + S_α`.
pub fn collective(axis: Axis) -> Operator {
    spin_i(axis) + spin_s(axis)
}

/// Exchange-symmetric bilinear: `I_α S_α` when `a == b`, else `I_α S_λ + I_λ S_α`.
pub fn bilinear(a: Axis, b: Axis) -> Operator {
    if a == b {
        spin_i(a) * spin_s(a)
    } else {
        spin_i(a) * spin_s(b) + spin_i(b) * spin_s(a)
    }
}

/// Operator that swaps the two tensor factors.
pub fn swap_operator() -> Operator {
    let mut m = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m[(2 * i + j, 2 * j + i)] = ONE;
        }
    }
    Operator(m)
}

/// The nine exchange-symmetric observables, in the order used by the
/// observable ODE system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Observable {
    Z,
    X,
    Y,
    ZZ,
    XX,
    YY,
    ZX,
    ZY,
    XY,
}

impl Observable {
    pub const ALL: [Observable; 9] = [
        Observable::Z,
        Observable::X,
        Observable::Y,
        Observable::ZZ,
        Observable::XX,
        Observable::YY,
        Observable::ZX,
        Observable::ZY,
        Observable::XY,
    ];

    /// Position in the ODE variable ordering.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn axes(self) -> (Axis, Option<Axis>) {
        use Axis::*;
        match self {
            Observable::Z => (Z, None),
            Observable::X => (X, None),
            Observable::Y => (Y, None),
            Observable::ZZ => (Z, Some(Z)),
            Observable::XX => (X, Some(X)),
            Observable::YY => (Y, Some(Y)),
            Observable::ZX => (Z, Some(X)),
            Observable::ZY => (Z, Some(Y)),
            Observable::XY => (X, Some(Y)),
        }
    }

    pub fn operator(self) -> Operator {
        match self.axes() {
            (a, None) => collective(a),
            (a, Some(b)) => bilinear(a, b),
        }
    }

    /// Column label, e.g. `Mzx`.
    pub fn label(self) -> String {
        match self.axes() {
            (a, None) => format!("M{}", a.name()),
            (a, Some(b)) => format!("M{}{}", a.name(), b.name()),
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The spin operators that the rest of the crate is built from.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    /// `I_x, I_y, I_z`
    pub i: [Operator; 3],
    /// `S_x, S_y, S_z`
    pub s: [Operator; 3],
    /// `F_x, F_y, F_z`
    pub f: [Operator; 3],
    /// `F_xx, F_yy, F_zz`
    pub f_diag: [Operator; 3],
    pub f_zx: Operator,
    pub f_zy: Operator,
    pub f_xy: Operator,
}

pub fn build_spin_operators() -> SpinOperators {
    SpinOperators {
        i: Axis::ALL.map(spin_i),
        s: Axis::ALL.map(spin_s),
        f: Axis::ALL.map(collective),
        f_diag: Axis::ALL.map(|a| bilinear(a, a)),
        f_zx: bilinear(Axis::Z, Axis::X),
        f_zy: bilinear(Axis::Z, Axis::Y),
        f_xy: bilinear(Axis::X, Axis::Y),
    }
}

/// Label of a product-basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    Identity,
    Symmetric(Observable),
    /// `I_α − S_α`
    AntiSingle(Axis),
    /// `I_α S_λ − I_λ S_α`
    AntiPair(Axis, Axis),
}

impl BasisLabel {
    pub fn is_symmetric(self) -> bool {
        matches!(self, BasisLabel::Symmetric(_))
    }

    pub fn is_antisymmetric(self) -> bool {
        matches!(self, BasisLabel::AntiSingle(_) | BasisLabel::AntiPair(..))
    }

    fn operator(self) -> Operator {
        match self {
            BasisLabel::Identity => Operator::identity(),
            BasisLabel::Symmetric(o) => o.operator(),
            BasisLabel::AntiSingle(a) => spin_i(a) - spin_s(a),
            BasisLabel::AntiPair(a, b) => spin_i(a) * spin_s(b) - spin_i(b) * spin_s(a),
        }
    }
}

/// Canonical ordering of the 16 basis elements.
pub const BASIS_ORDER: [BasisLabel; LDIM] = [
    BasisLabel::Identity,
    BasisLabel::Symmetric(Observable::X),
    BasisLabel::Symmetric(Observable::Y),
    BasisLabel::Symmetric(Observable::Z),
    BasisLabel::Symmetric(Observable::ZZ),
    BasisLabel::Symmetric(Observable::XX),
    BasisLabel::Symmetric(Observable::YY),
    BasisLabel::Symmetric(Observable::ZX),
    BasisLabel::Symmetric(Observable::ZY),
    BasisLabel::Symmetric(Observable::XY),
    BasisLabel::AntiSingle(Axis::X),
    BasisLabel::AntiSingle(Axis::Y),
    BasisLabel::AntiSingle(Axis::Z),
    BasisLabel::AntiPair(Axis::X, Axis::Y),
    BasisLabel::AntiPair(Axis::Y, Axis::Z),
    BasisLabel::AntiPair(Axis::Z, Axis::X),
];

/// Complete (non-orthonormal) operator basis built from the identity, the nine
/// symmetric observables and six exchange-antisymmetric operators.
///
/// The observables keep their natural normalization; non-uniform norms are
/// absorbed by the Gram matrix.
#[derive(Clone, Debug)]
pub struct TwoSpinBasis {
    pub labels: [BasisLabel; LDIM],
    pub elements: [Operator; LDIM],
    /// `gram[(a, b)] = Tr[B_a† B_b]`
    pub gram: SMatrix<f64, LDIM, LDIM>,
    gram_inv: SMatrix<f64, LDIM, LDIM>,
}

impl TwoSpinBasis {
    pub fn new() -> Self {
        let labels = BASIS_ORDER;
        let elements = labels.map(BasisLabel::operator);
        let gram = SMatrix::<f64, LDIM, LDIM>::from_fn(|a, b| elements[a].inner(&elements[b]).re);
        let gram_inv = gram
            .try_inverse()
            .expect("product-operator Gram matrix is nonsingular");
        Self {
            labels,
            elements,
            gram,
            gram_inv,
        }
    }

    pub fn gram_inverse(&self) -> &SMatrix<f64, LDIM, LDIM> {
        &self.gram_inv
    }

    /// Position of an observable within the basis.
    pub fn position(&self, obs: Observable) -> usize {
        self.labels
            .iter()
            .position(|l| *l == BasisLabel::Symmetric(obs))
            .expect("every observable is a basis element")
    }

    /// Complex expansion coefficients of an arbitrary operator.
    pub fn expand(&self, op: &Operator) -> SVector<C64, LDIM> {
        let overlaps = SVector::<C64, LDIM>::from_fn(|a, _| self.elements[a].inner(op));
        self.gram_inv.map(|g| C64::new(g, 0.0)) * overlaps
    }

    pub fn reconstruct(&self, coeffs: &SVector<C64, LDIM>) -> Operator {
        self.elements
            .iter()
            .zip(coeffs.iter())
            .fold(Operator::zero(), |acc, (b, c)| acc + b.scale_c(*c))
    }
}

impl Default for TwoSpinBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// A two-spin density operator at a given time (seconds).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityState {
    pub op: Operator,
    pub time: f64,
}

impl DensityState {
    pub fn new(op: Operator, time: f64) -> Self {
        Self { op, time }
    }

    pub fn trace_error(&self) -> f64 {
        (self.op.trace() - ONE).norm()
    }
}

/// Real expansion coefficients of a (Hermitian) state in the product basis.
pub fn expand_in_basis(state: &DensityState, basis: &TwoSpinBasis) -> [f64; LDIM] {
    let c = basis.expand(&state.op);
    std::array::from_fn(|k| c[k].re)
}

/// `Tr[obs · ρ]`, rejecting a complex result.
pub fn expectation(obs: &Operator, state: &DensityState) -> Result<f64> {
    let value = (*obs * state.op).trace();
    if value.im.abs() > ALGEBRA_TOL {
        return Err(Error::NonHermitianObservable { residue: value.im });
    }
    Ok(value.re)
}

/// A linear map on Liouville space acting on column-stacked operators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperOperator(pub SMatrix<C64, LDIM, LDIM>);

impl SuperOperator {
    pub fn zero() -> Self {
        Self(SMatrix::zeros())
    }

    /// `ρ ↦ Aρ`
    pub fn left(a: &Operator) -> Self {
        Self(kron4(&Matrix4::identity(), &a.0))
    }

    /// `ρ ↦ ρB`
    pub fn right(b: &Operator) -> Self {
        Self(kron4(&b.0.transpose(), &Matrix4::identity()))
    }

    /// `ρ ↦ [H, ρ]`
    pub fn commutator(h: &Operator) -> Self {
        Self(Self::left(h).0 - Self::right(h).0)
    }

    pub fn apply(&self, op: &Operator) -> Operator {
        Operator::from_vector(&(self.0 * op.vectorize()))
    }

    pub fn compose(&self, inner: &SuperOperator) -> Self {
        Self(self.0 * inner.0)
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self(self.0 * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Add for SuperOperator {
    type Output = SuperOperator;
    fn add(self, rhs: SuperOperator) -> SuperOperator {
        SuperOperator(self.0 + rhs.0)
    }
}

impl Sub for SuperOperator {
    type Output = SuperOperator;
    fn sub(self, rhs: SuperOperator) -> SuperOperator {
        SuperOperator(self.0 - rhs.0)
    }
}

fn kron4(a: &Matrix4<C64>, b: &Matrix4<C64>) -> SMatrix<C64, LDIM, LDIM> {
    SMatrix::from_fn(|r, c| a[(r / DIM, c / DIM)] * b[(r % DIM, c % DIM)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// F_zx written out entry by entry: I_z S_x + I_x S_z in the |↑↑⟩,|↑↓⟩,|↓↑⟩,|↓↓⟩ basis.
    fn f_zx_by_hand() -> Operator {
        let q = c(0.25, 0.0);
        let z = c(0.0, 0.0);
        Operator(Matrix4::new(
            z, q, q, z, //
            q, z, z, -q, //
            q, z, z, -q, //
            z, -q, -q, z,
        ))
    }

    #[test]
    fn angular_momentum_algebra() {
        for (a, b, cc) in [
            (Axis::X, Axis::Y, Axis::Z),
            (Axis::Y, Axis::Z, Axis::X),
            (Axis::Z, Axis::X, Axis::Y),
        ] {
            for spin in [spin_i, spin_s] {
                let lhs = commutator(&spin(a), &spin(b));
                let rhs = spin(cc).scale_c(I);
                assert!(lhs.max_abs_diff(&rhs) < 1e-14);
            }
        }
        for a in Axis::ALL {
            let sq = spin_i(a) * spin_i(a);
            assert!(sq.max_abs_diff(&Operator::identity().scale(0.25)) < 1e-14);
            let sq = spin_s(a) * spin_s(a);
            assert!(sq.max_abs_diff(&Operator::identity().scale(0.25)) < 1e-14);
        }
    }

    #[test]
    fn ladder_operators() {
        let ip = i_ladder(true);
        let im = i_ladder(false);
        assert!(ip.adjoint().max_abs_diff(&im) < 1e-15);
        // [I_z, I_+] = I_+
        assert!(commutator(&spin_i(Axis::Z), &ip).max_abs_diff(&ip) < 1e-15);
        let sp = s_ladder(true);
        assert!(commutator(&spin_s(Axis::Z), &sp).max_abs_diff(&sp) < 1e-15);
    }

    #[test]
    fn observables_hermitian_and_traceless() {
        let ops = build_spin_operators();
        for o in Observable::ALL {
            let op = o.operator();
            assert!(op.is_hermitian(1e-14), "{o}");
            assert!(op.trace().norm() < 1e-15, "{o}");
        }
        assert!(ops.f_zx.max_abs_diff(&f_zx_by_hand()) < 1e-15);
    }

    #[test]
    fn collective_commutator() {
        let fz = collective(Axis::Z);
        let fx = collective(Axis::X);
        let fy = collective(Axis::Y);
        assert!(commutator(&fz, &fx).max_abs_diff(&fy.scale_c(I)) < 1e-14);
        let a = bilinear(Axis::Z, Axis::Y);
        assert!(commutator(&a, &a).max_abs() == 0.0);
    }

    #[test]
    fn trace_normalizations() {
        let fx = collective(Axis::X);
        let fy = collective(Axis::Y);
        assert_abs_diff_eq!((fx * fy).trace().norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((fx * fx).trace().re, 2.0, epsilon = 1e-14);
        let h = f_zx_by_hand();
        assert_abs_diff_eq!((h * h).trace().re, 0.5, epsilon = 1e-14);
        let fxx = bilinear(Axis::X, Axis::X);
        assert_abs_diff_eq!((fxx * fxx).trace().re, 0.25, epsilon = 1e-14);
    }

    #[test]
    fn gram_structure() {
        let basis = TwoSpinBasis::new();
        let g = &basis.gram;
        assert!((g - g.transpose()).abs().max() < 1e-15);
        assert!(
            g.cholesky().is_some(),
            "Gram matrix must be positive definite"
        );

        let block = |group: &[Observable], value: f64| {
            for &a in group {
                for &b in group {
                    let expected = if a == b { value } else { 0.0 };
                    let got = g[(basis.position(a), basis.position(b))];
                    assert_abs_diff_eq!(got, expected, epsilon = 1e-14);
                }
            }
        };
        block(&[Observable::X, Observable::Y, Observable::Z], 2.0);
        block(&[Observable::XX, Observable::YY, Observable::ZZ], 0.25);
        block(&[Observable::ZX, Observable::ZY, Observable::XY], 0.5);

        for (a, la) in basis.labels.iter().enumerate() {
            for (b, lb) in basis.labels.iter().enumerate() {
                let sym_a = !la.is_antisymmetric();
                let sym_b = !lb.is_antisymmetric();
                if sym_a != sym_b {
                    assert_eq!(g[(a, b)], 0.0, "{la:?} / {lb:?}");
                }
            }
        }
    }

    #[test]
    fn exchange_symmetry() {
        let p = swap_operator();
        assert!((p * p).max_abs_diff(&Operator::identity()) < 1e-15);
        let basis = TwoSpinBasis::new();
        for (label, op) in basis.labels.iter().zip(basis.elements.iter()) {
            let swapped = p * *op * p;
            if label.is_antisymmetric() {
                assert!(swapped.max_abs_diff(&(-*op)) < 1e-15, "{label:?}");
            } else {
                assert!(swapped.max_abs_diff(op) < 1e-15, "{label:?}");
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let basis = TwoSpinBasis::new();
        let mixed = DensityState::new(Operator::identity().scale(0.25), 0.0);
        let coeffs = expand_in_basis(&mixed, &basis);
        assert_abs_diff_eq!(coeffs[0], 0.25, epsilon = 1e-15);
        assert!(coeffs[1..].iter().all(|x| x.abs() < 1e-15));

        let m0 = 1.0;
        let rho = Operator::identity().scale(0.25) + collective(Axis::X).scale(m0 / 2.0);
        let coeffs = expand_in_basis(&DensityState::new(rho, 0.0), &basis);
        assert_abs_diff_eq!(coeffs[basis.position(Observable::X)], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(coeffs[0], 0.25, epsilon = 1e-14);
    }

    #[test]
    fn expectation_examples() {
        let rho = Operator::identity().scale(0.25) + collective(Axis::X).scale(0.5);
        let state = DensityState::new(rho, 0.0);
        assert_abs_diff_eq!(
            expectation(&Operator::identity(), &state).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            expectation(&collective(Axis::X), &state).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            expectation(&bilinear(Axis::Z, Axis::Z), &state).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn non_hermitian_observable_rejected() {
        let rho = Operator::identity().scale(0.25) + collective(Axis::X).scale(0.5);
        let state = DensityState::new(rho, 0.0);
        // I_+ has ⟨I_+⟩ = ⟨I_x⟩ + i⟨I_y⟩ = 0.5 here, which is real; use i·F_x instead.
        let bad = collective(Axis::X).scale_c(I);
        assert!(matches!(
            expectation(&bad, &state),
            Err(Error::NonHermitianObservable { .. })
        ));
    }

    #[test]
    fn superoperator_matches_direct_products() {
        let a = bilinear(Axis::Z, Axis::X) + spin_i(Axis::Y).scale(0.3);
        let b = collective(Axis::Y) + bilinear(Axis::X, Axis::X);
        let rho = f_zx_by_hand() + spin_s(Axis::Z);
        assert!(SuperOperator::left(&a).apply(&rho).max_abs_diff(&(a * rho)) < 1e-15);
        assert!(
            SuperOperator::right(&b)
                .apply(&rho)
                .max_abs_diff(&(rho * b))
                < 1e-15
        );
        assert!(
            SuperOperator::commutator(&a)
                .apply(&rho)
                .max_abs_diff(&commutator(&a, &rho))
                < 1e-15
        );
    }

    #[test]
    fn vectorization_is_column_major() {
        let mut m = Matrix4::zeros();
        m[(1, 2)] = c(3.0, -1.0);
        let v = Operator(m).vectorize();
        assert_eq!(v[4 * 2 + 1], c(3.0, -1.0));
        assert_eq!(Operator::from_vector(&v), Operator(m));
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn hermitian() -> impl Strategy<Value = Operator> {
        proptest::collection::vec(-1.0f64..1.0, 32).prop_map(|v| {
            let m = Matrix4::from_fn(|r, c| C64::new(v[4 * r + c], v[16 + 4 * r + c]));
            Operator(m) + Operator(m).adjoint()
        })
    }

    proptest! {
        #[test]
        fn basis_reconstruction(op in hermitian()) {
            let basis = TwoSpinBasis::new();
            let coeffs = expand_in_basis(&DensityState::new(op, 0.0), &basis);
            let c = SVector::<C64, LDIM>::from_fn(|k, _| C64::new(coeffs[k], 0.0));
            prop_assert!(basis.reconstruct(&c).max_abs_diff(&op) < 1e-12);
        }

        #[test]
        fn commutator_antisymmetric(a in hermitian(), b in hermitian()) {
            prop_assert!((commutator(&a, &b) + commutator(&b, &a)).max_abs() < 1e-14);
        }
    }
}
