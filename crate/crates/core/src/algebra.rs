//! 2×2 building blocks: Pauli matrices, Bloch rotations, Pauli roots,
//! translation matrices and negators, plus a small dense complex matrix type.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default per-entry absolute tolerance for matrix comparisons.
pub const EPS: f64 = 1e-9;

/// Constructor outputs snap real and imaginary parts below this to zero.
const SNAP: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// One of the three Pauli axes. The discriminants follow the 1, 2, 3 numbering
/// used for the Levi-Civita symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X = 1,
    Y = 2,
    Z = 3,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> i32 {
        self as i32
    }

    pub fn from_index(i: i32) -> Option<Axis> {
        match i {
            1 => Some(Axis::X),
            2 => Some(Axis::Y),
            3 => Some(Axis::Z),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }

    pub fn from_letter(s: &str) -> Option<Axis> {
        match s {
            "x" | "X" | "1" => Some(Axis::X),
            "y" | "Y" | "2" => Some(Axis::Y),
            "z" | "Z" | "3" => Some(Axis::Z),
            _ => None,
        }
    }

    /// The axis completing `{self, other}` to `{X, Y, Z}`; `None` when equal.
    pub fn third(self, other: Axis) -> Option<Axis> {
        if self == other {
            None
        } else {
            Axis::from_index(6 - self.index() - other.index())
        }
    }

    pub fn pauli(self) -> Matrix {
        pauli(self)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Levi-Civita symbol over axis indices.
pub fn levi_civita(a: Axis, b: Axis, c: Axis) -> i32 {
    let (a, b, c) = (a.index(), b.index(), c.index());
    (a - b) * (b - c) * (c - a) / 2
}

/// Kronecker delta over axis indices.
pub fn kronecker_delta(a: Axis, b: Axis) -> i32 {
    i32::from(a == b)
}

/// A rational exponent `m/k` of a Pauli matrix, kept reduced with `k > 0`.
///
/// `σ_a^{m/k} = e^{iπm/(2k)} R_a(πm/k)`; negative numerators are daggers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct RootExponent {
    num: i64,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl RootExponent {
    pub const ZERO: RootExponent = RootExponent { num: 0, den: 1 };
    pub const ONE: RootExponent = RootExponent { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument(format!("zero denominator in {num}/{den}")));
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Ok(RootExponent {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    /// The principal `k`-th root exponent `1/k`.
    pub fn root(k: i64) -> Self {
        RootExponent::new(1, k).expect("nonzero root degree")
    }

    pub fn numer(self) -> i64 {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        let g = gcd(self.den, other.den);
        let den = self.den / g * other.den;
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        RootExponent::new(num, den).expect("positive denominators")
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Self) -> Self {
        self.add(-other)
    }

    pub fn half(self) -> Self {
        RootExponent::new(self.num, self.den * 2).expect("positive denominator")
    }

    pub fn double(self) -> Self {
        RootExponent::new(self.num * 2, self.den).expect("positive denominator")
    }

    /// Representative in `(-1, 1]`. Exact, because `σ_a^2 = I`.
    pub fn normalized(self) -> Self {
        let period = 2 * self.den;
        let mut m = self.num.rem_euclid(period);
        if m > self.den {
            m -= period;
        }
        RootExponent::new(m, self.den).expect("positive denominator")
    }

    /// Equality modulo the period 2.
    pub fn congruent(self, other: Self) -> bool {
        self.normalized() == other.normalized()
    }
}

impl std::ops::Neg for RootExponent {
    type Output = RootExponent;

    fn neg(self) -> Self {
        RootExponent {
            num: -self.num,
            den: self.den,
        }
    }
}

impl TryFrom<(i64, i64)> for RootExponent {
    type Error = Error;

    fn try_from((m, k): (i64, i64)) -> Result<Self> {
        RootExponent::new(m, k)
    }
}

impl From<RootExponent> for (i64, i64) {
    fn from(e: RootExponent) -> Self {
        (e.num, e.den)
    }
}

impl fmt::Display for RootExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A named single-qubit operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NamedOp {
    PauliRoot { axis: Axis, exp: RootExponent },
    /// `ρ_ab`; stored with `a <= b`, and `ρ_aa = I`.
    Translation { a: Axis, b: Axis },
    Negator { axis: Axis, theta: f64 },
}

impl NamedOp {
    pub fn root(axis: Axis, num: i64, den: i64) -> Self {
        NamedOp::PauliRoot {
            axis,
            exp: RootExponent::new(num, den).expect("nonzero denominator"),
        }
    }

    pub fn pauli(axis: Axis) -> Self {
        NamedOp::PauliRoot {
            axis,
            exp: RootExponent::ONE,
        }
    }

    pub fn translation(a: Axis, b: Axis) -> Self {
        NamedOp::Translation {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn hadamard() -> Self {
        NamedOp::translation(Axis::X, Axis::Z)
    }

    pub fn negator(axis: Axis, theta: f64) -> Self {
        NamedOp::Negator { axis, theta }
    }

    pub fn matrix(&self) -> Matrix {
        match *self {
            NamedOp::PauliRoot { axis, exp } => pauli_root_matrix(axis, exp),
            NamedOp::Translation { a, b } => translation_matrix(a, b),
            NamedOp::Negator { axis, theta } => {
                negator_matrix(axis, theta).expect("finite angle in a constructed op")
            }
        }
    }

    /// Root axis and exponent, when this is a Pauli root.
    pub fn as_root(&self) -> Option<(Axis, RootExponent)> {
        match *self {
            NamedOp::PauliRoot { axis, exp } => Some((axis, exp)),
            _ => None,
        }
    }

    /// True for a plain Pauli matrix `σ_a` (exponent ≡ 1).
    pub fn is_pauli(&self) -> bool {
        matches!(self.as_root(), Some((_, e)) if e.congruent(RootExponent::ONE))
    }

    pub fn is_pauli_on(&self, axis: Axis) -> bool {
        matches!(self.as_root(), Some((a, e)) if a == axis && e.congruent(RootExponent::ONE))
    }

    /// True when the op squares to the identity exactly.
    pub fn is_involution(&self) -> bool {
        match *self {
            NamedOp::PauliRoot { exp, .. } => {
                exp.congruent(RootExponent::ONE) || exp.congruent(RootExponent::ZERO)
            }
            NamedOp::Translation { .. } => true,
            NamedOp::Negator { theta, .. } => (theta.sin()).abs() < SNAP,
        }
    }

    pub fn inverse(&self) -> NamedOp {
        match *self {
            NamedOp::PauliRoot { axis, exp } => NamedOp::PauliRoot { axis, exp: -exp },
            NamedOp::Translation { .. } => *self,
            NamedOp::Negator { axis, theta } => NamedOp::Negator {
                axis,
                theta: -theta,
            },
        }
    }

    /// Structural check that `other` undoes `self`.
    pub fn is_inverse_of(&self, other: &NamedOp) -> bool {
        match (*self, *other) {
            (
                NamedOp::PauliRoot { axis: a, exp: e },
                NamedOp::PauliRoot { axis: b, exp: f },
            ) => a == b && e.add(f).congruent(RootExponent::ZERO),
            (NamedOp::Translation { .. }, NamedOp::Translation { .. }) => self == other,
            (
                NamedOp::Negator { axis: a, theta: s },
                NamedOp::Negator { axis: b, theta: t },
            ) => a == b && s == -t,
            _ => false,
        }
    }

    /// The commutative algebra `span{I, M}` the op lives in, used for
    /// structural commutation checks.
    pub(crate) fn algebra(&self) -> LocalAlgebra {
        match *self {
            NamedOp::PauliRoot { axis, .. } | NamedOp::Negator { axis, .. } => {
                LocalAlgebra::Axis(axis)
            }
            NamedOp::Translation { a, b } if a == b => LocalAlgebra::Identity,
            NamedOp::Translation { a, b } => LocalAlgebra::Translation(a, b),
        }
    }
}

/// Commutative algebra containing the local factor of a gate on one line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LocalAlgebra {
    Identity,
    Axis(Axis),
    Translation(Axis, Axis),
}

impl LocalAlgebra {
    pub(crate) fn commutes_with(self, other: LocalAlgebra) -> bool {
        self == LocalAlgebra::Identity || other == LocalAlgebra::Identity || self == other
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

pub type UnitaryMatrix = Matrix;

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("matrix rows must form a square".into()));
        }
        Ok(Matrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Matrix {
            dim: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn adjoint(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matrix sum");
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(-ONE))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        out
    }

    /// Product of a sequence, left to right as written: `ms[0] · ms[1] · …`.
    pub fn product<'a>(ms: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
        let mut iter = ms.into_iter();
        let first = iter.next().expect("empty matrix product").clone();
        iter.fold(first, |acc, m| acc.mul(m))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in comparison");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Matrix, eps: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= eps
    }

    pub fn is_unitary(&self, eps: f64) -> bool {
        self.mul(&self.adjoint()).approx_eq(&Matrix::identity(self.dim), eps)
    }

    pub fn is_hermitian(&self, eps: f64) -> bool {
        self.approx_eq(&self.adjoint(), eps)
    }

    fn snapped(mut self) -> Matrix {
        for z in &mut self.data {
            if z.re.abs() < SNAP {
                z.re = 0.0;
            }
            if z.im.abs() < SNAP {
                z.im = 0.0;
            }
        }
        self
    }

    /// Index of the entry with the largest modulus (first one on ties).
    pub(crate) fn argmax_abs(&self) -> usize {
        let mut best = 0;
        let mut best_norm = -1.0;
        for (i, z) in self.data.iter().enumerate() {
            let n = z.norm();
            if n > best_norm + 1e-15 {
                best = i;
                best_norm = n;
            }
        }
        best
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| {
                    let z = self.get(r, c);
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn pauli(a: Axis) -> Matrix {
    match a {
        Axis::X => Matrix::from_2x2(ZERO, ONE, ONE, ZERO),
        Axis::Y => Matrix::from_2x2(ZERO, -I, I, ZERO),
        Axis::Z => Matrix::from_2x2(ONE, ZERO, ZERO, -ONE),
    }
}

fn check_finite(theta: f64) -> Result<()> {
    if theta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("angle must be finite, got {theta}")))
    }
}

/// `R_a(θ) = cos(θ/2)·I − i·sin(θ/2)·σ_a`.
pub fn rotation_matrix(a: Axis, theta: f64) -> Result<Matrix> {
    check_finite(theta)?;
    let (s, c) = (theta / 2.0).sin_cos();
    let m = Matrix::identity(2)
        .scale(Complex64::new(c, 0.0))
        .add(&pauli(a).scale(Complex64::new(0.0, -s)));
    Ok(m.snapped())
}

/// `σ_a^{m/k} = e^{iπm/(2k)}·R_a(πm/k)`.
pub fn pauli_root_matrix(a: Axis, e: RootExponent) -> Matrix {
    let n = e.normalized();
    if n.is_zero() {
        return Matrix::identity(2);
    }
    if n == RootExponent::ONE {
        return pauli(a);
    }
    let x = e.as_f64();
    let phase = Complex64::from_polar(1.0, PI * x / 2.0);
    rotation_matrix(a, PI * x)
        .expect("finite angle")
        .scale(phase)
        .snapped()
}

/// `ρ_ab = (σ_a + σ_b)/√2` for `a ≠ b`, and `ρ_aa = I`.
pub fn translation_matrix(a: Axis, b: Axis) -> Matrix {
    if a == b {
        return Matrix::identity(2);
    }
    pauli(a)
        .add(&pauli(b))
        .scale(Complex64::new(FRAC_1_SQRT_2, 0.0))
        .snapped()
}

pub fn hadamard() -> Matrix {
    translation_matrix(Axis::X, Axis::Z)
}

/// `N_a(θ) = I + i·sinθ·e^{iθ}·(I − σ_a)`, which equals `e^{iθ}·R_a(2θ)`.
pub fn negator_matrix(a: Axis, theta: f64) -> Result<Matrix> {
    check_finite(theta)?;
    let coeff = I * theta.sin() * Complex64::from_polar(1.0, theta);
    let id = Matrix::identity(2);
    Ok(id.add(&id.sub(&pauli(a)).scale(coeff)).snapped())
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (m, n) = (a.dim, b.dim);
    let dim = m * n;
    let mut out = Matrix::zeros(dim);
    for ar in 0..m {
        for ac in 0..m {
            let x = a.get(ar, ac);
            if x == ZERO {
                continue;
            }
            for br in 0..n {
                for bc in 0..n {
                    out.data[(ar * n + br) * dim + ac * n + bc] = x * b.get(br, bc);
                }
            }
        }
    }
    out
}

/// Returns the phase `λ` with `A = λ·B` (entrywise within `eps`), if any.
/// `λ` is read off the largest-magnitude entry of `B`.
pub fn equal_up_to_phase(a: &Matrix, b: &Matrix, eps: f64) -> Result<Option<Complex64>> {
    if a.dim != b.dim {
        return Err(Error::InvalidArgument(format!(
            "cannot compare {}x{} with {}x{}",
            a.dim, a.dim, b.dim, b.dim
        )));
    }
    let idx = b.argmax_abs();
    let pivot = b.data[idx];
    if pivot.norm() <= eps {
        return Ok(a.data.iter().all(|z| z.norm() <= eps).then_some(ONE));
    }
    let lambda = a.data[idx] / pivot;
    if (lambda.norm() - 1.0).abs() > eps {
        return Ok(None);
    }
    let ok = a
        .data
        .iter()
        .zip(&b.data)
        .all(|(x, y)| (x - lambda * y).norm() <= eps);
    Ok(ok.then_some(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn phase(theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, theta)
    }

    #[test]
    fn rotation_by_zero_is_identity() {
        for a in Axis::ALL {
            assert!(rotation_matrix(a, 0.0).unwrap().approx_eq(&Matrix::identity(2), EPS));
        }
    }

    #[test]
    fn z_half_turn_is_z_up_to_phase() {
        let r = rotation_matrix(Axis::Z, PI).unwrap();
        assert!(r.approx_eq(&pauli(Axis::Z).scale(phase(-PI / 2.0)), EPS));
    }

    #[test]
    fn quarter_turn_squared_is_half_turn() {
        let q = rotation_matrix(Axis::X, PI / 2.0).unwrap();
        assert!(q.mul(&q).approx_eq(&rotation_matrix(Axis::X, PI).unwrap(), EPS));
    }

    #[test]
    fn rotation_rejects_non_finite_angles() {
        assert!(matches!(
            rotation_matrix(Axis::Y, f64::NAN),
            Err(Error::InvalidArgument(_))
        ));
        assert!(negator_matrix(Axis::Y, f64::INFINITY).is_err());
    }

    #[test]
    fn t_gate_is_fourth_root_of_z() {
        let t = pauli_root_matrix(Axis::Z, RootExponent::root(4));
        let expected = Matrix::from_2x2(ONE, ZERO, ZERO, phase(PI / 4.0));
        assert!(t.approx_eq(&expected, EPS));
    }

    #[test]
    fn zero_exponent_is_identity_and_one_is_exact_pauli() {
        for a in Axis::ALL {
            assert_eq!(pauli_root_matrix(a, RootExponent::ZERO), Matrix::identity(2));
            assert_eq!(pauli_root_matrix(a, RootExponent::ONE), pauli(a));
            assert_eq!(pauli_root_matrix(a, RootExponent::new(-1, 1).unwrap()), pauli(a));
        }
    }

    #[test]
    fn v_squared_is_not() {
        let v = pauli_root_matrix(Axis::X, RootExponent::root(2));
        assert!(v.mul(&v).approx_eq(&pauli(Axis::X), EPS));
    }

    #[test]
    fn hadamard_is_translation_between_x_and_z() {
        let h = Matrix::from_2x2(ONE, ONE, ONE, -ONE).scale(c(FRAC_1_SQRT_2, 0.0));
        assert!(translation_matrix(Axis::X, Axis::Z).approx_eq(&h, EPS));
        assert_eq!(translation_matrix(Axis::Y, Axis::Y), Matrix::identity(2));
    }

    #[test]
    fn translation_equals_rotation_product() {
        for (a, b) in [(Axis::X, Axis::Y), (Axis::Y, Axis::Z), (Axis::Z, Axis::X)] {
            let ra = rotation_matrix(a, PI / 2.0).unwrap();
            let rb = rotation_matrix(b, PI / 2.0).unwrap();
            let oracle = Matrix::product([&ra, &rb, &ra]).scale(phase(PI / 2.0));
            let rho = translation_matrix(a, b);
            assert!(rho.approx_eq(&oracle, EPS), "rho_{a}{b}");
            assert!(rho.is_hermitian(EPS));
            assert!(rho.mul(&rho).approx_eq(&Matrix::identity(2), EPS));
        }
    }

    #[test]
    fn negator_matches_square_root_at_quarter_pi() {
        assert!(negator_matrix(Axis::X, 0.0).unwrap().approx_eq(&Matrix::identity(2), EPS));
        let n = negator_matrix(Axis::X, PI / 4.0).unwrap();
        assert!(n.approx_eq(&pauli_root_matrix(Axis::X, RootExponent::root(2)), EPS));
    }

    #[test]
    fn negator_is_phased_rotation() {
        for a in Axis::ALL {
            for theta in [0.3, 1.1, 2.7] {
                let n = negator_matrix(a, theta).unwrap();
                let r = rotation_matrix(a, 2.0 * theta).unwrap().scale(phase(theta));
                assert!(n.approx_eq(&r, EPS));
            }
        }
    }

    #[test]
    fn kron_basics() {
        assert_eq!(kron(&Matrix::identity(2), &Matrix::identity(2)), Matrix::identity(4));
        let zi = kron(&pauli(Axis::Z), &Matrix::identity(2));
        let diag: Vec<Complex64> = (0..4).map(|i| zi.get(i, i)).collect();
        assert_eq!(diag, vec![ONE, ONE, -ONE, -ONE]);
        // X⊗I sends |10> (index 2) to |00> (index 0).
        let xi = kron(&pauli(Axis::X), &Matrix::identity(2));
        assert_eq!(xi.get(0, 2), ONE);
        assert_eq!((0..4).filter(|&r| xi.get(r, 2) != ZERO).count(), 1);
    }

    #[test]
    fn phase_equality() {
        let id = Matrix::identity(2);
        let lam = equal_up_to_phase(&id.scale(phase(PI / 7.0)), &id, EPS).unwrap().unwrap();
        assert!((lam - phase(PI / 7.0)).norm() < EPS);
        assert!(equal_up_to_phase(&pauli(Axis::X), &pauli(Axis::Z), EPS).unwrap().is_none());
        for a in Axis::ALL {
            let r = rotation_matrix(a, PI).unwrap();
            let lam = equal_up_to_phase(&pauli(a), &r, EPS).unwrap().unwrap();
            assert!((lam - I).norm() < EPS);
        }
        assert!(equal_up_to_phase(&Matrix::identity(2), &Matrix::identity(4), EPS).is_err());
    }

    #[test]
    fn exponent_reduction_and_normalization() {
        assert_eq!(RootExponent::new(2, 8).unwrap(), RootExponent::root(4));
        assert_eq!(RootExponent::new(3, -6).unwrap(), RootExponent::new(-1, 2).unwrap());
        assert_eq!(RootExponent::new(0, 5).unwrap(), RootExponent::ZERO);
        assert_eq!(RootExponent::new(5, 4).unwrap().normalized(), RootExponent::new(-3, 4).unwrap());
        assert_eq!(RootExponent::new(-1, 1).unwrap().normalized(), RootExponent::ONE);
        assert_eq!(RootExponent::new(2, 1).unwrap().normalized(), RootExponent::ZERO);
        assert!(RootExponent::new(1, 0).is_err());
    }

    #[test]
    fn levi_civita_values() {
        assert_eq!(levi_civita(Axis::X, Axis::Y, Axis::Z), 1);
        assert_eq!(levi_civita(Axis::Y, Axis::X, Axis::Z), -1);
        assert_eq!(levi_civita(Axis::X, Axis::X, Axis::Z), 0);
    }
}
