//! Two-level spin algebra: Pauli-based spin operators, eigenstates along an
//! arbitrary axis, measurement probabilities with collapse, Larmor precession
//! (classical and quantum), Zeeman splitting and the ℓ = 1 angular momentum
//! matrices with their ladder operators.

use crate::error::{QmError, Result};
use crate::quanta::PhysicalConstants;
use nalgebra::{DMatrix, Vector2};
use num_complex::Complex64;

type C = Complex64;

/// Two-component spinor in the S_z basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    pub up: C,
    pub down: C,
}

impl SpinState {
    pub fn new(up: C, down: C) -> Self {
        Self { up, down }
    }

    pub fn up_state() -> Self {
        Self::new(C::ONE, C::ZERO)
    }

    pub fn down_state() -> Self {
        Self::new(C::ZERO, C::ONE)
    }

    pub fn norm_sq(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    pub fn normalized(&self) -> Result<SpinState> {
        let n = self.norm_sq().sqrt();
        if n == 0.0 {
            return Err(QmError::ZeroNorm);
        }
        Ok(self.scaled(C::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, c: C) -> SpinState {
        Self::new(self.up * c, self.down * c)
    }

    pub fn inner(&self, other: &SpinState) -> C {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    /// True when the states differ only by a unit-modulus factor, i.e.
    /// |⟨ψ|χ⟩| = ‖ψ‖‖χ‖.
    pub fn same_physical_state(&self, other: &SpinState, tol: f64) -> bool {
        let lhs = self.inner(other).norm();
        let rhs = self.norm_sq().sqrt() * other.norm_sq().sqrt();
        (lhs - rhs).abs() <= tol * rhs.max(1.0)
    }

    fn as_vector(&self) -> Vector2<C> {
        Vector2::new(self.up, self.down)
    }

    /// ⟨ψ|M|ψ⟩ / ⟨ψ|ψ⟩.
    pub fn expectation(&self, m: &HermitianMatrix) -> f64 {
        let v = self.as_vector();
        let mv = m.matrix() * v;
        (v.adjoint() * mv)[(0, 0)].re / self.norm_sq()
    }
}

/// Small dense Hermitian matrix; construction rejects anything further than
/// 1e-12 from its own conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(DMatrix<C>);

impl HermitianMatrix {
    pub fn new(m: DMatrix<C>) -> Result<Self> {
        if !m.is_square() {
            return Err(QmError::Domain("Hermitian matrix must be square".into()));
        }
        let scale = m.norm().max(1.0);
        if (&m - m.adjoint()).norm() > 1e-12 * scale {
            return Err(QmError::Domain("matrix is not Hermitian".into()));
        }
        Ok(Self(m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C> {
        &self.0
    }

    /// Real eigenvalues, ascending, with the matching (unit) eigenvector
    /// columns.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<C>) {
        let se = self.0.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
        let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
        let mut vectors = DMatrix::<C>::zeros(self.dim(), self.dim());
        for (col, &i) in order.iter().enumerate() {
            vectors.set_column(col, &se.eigenvectors.column(i));
        }
        (values, vectors)
    }
}

/// Spatial direction by polar angles θ ∈ [0, π], φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub const Z: Direction = Direction {
        theta: 0.0,
        phi: 0.0,
    };

    pub fn x() -> Direction {
        Direction::new(std::f64::consts::FRAC_PI_2, 0.0)
    }

    pub fn y() -> Direction {
        Direction::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        [
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Pauli matrix σ_x, σ_y or σ_z.
pub fn pauli(axis: Axis) -> DMatrix<C> {
    let i = C::new(0.0, 1.0);
    match axis {
        Axis::X => DMatrix::from_row_slice(2, 2, &[C::ZERO, C::ONE, C::ONE, C::ZERO]),
        Axis::Y => DMatrix::from_row_slice(2, 2, &[C::ZERO, -i, i, C::ZERO]),
        Axis::Z => DMatrix::from_row_slice(2, 2, &[C::ONE, C::ZERO, C::ZERO, -C::ONE]),
    }
}

/// Spin operator S = (ħ/2)σ along a coordinate axis.
pub fn spin_operator(axis: Axis, hbar: f64) -> HermitianMatrix {
    HermitianMatrix(pauli(axis) * C::new(0.5 * hbar, 0.0))
}

/// Spin along an arbitrary direction u:
/// S_u = (ħ/2)[[cosθ, sinθe^{−iφ}], [sinθe^{iφ}, −cosθ]].
pub fn spin_direction_operator(dir: Direction, hbar: f64) -> HermitianMatrix {
    let (st, ct) = (dir.theta.sin(), dir.theta.cos());
    let e_miphi = C::new(0.0, -dir.phi).exp();
    let e_iphi = C::new(0.0, dir.phi).exp();
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[C::new(ct, 0.0), st * e_miphi, st * e_iphi, C::new(-ct, 0.0)],
    );
    HermitianMatrix(m * C::new(0.5 * hbar, 0.0))
}

/// The orthonormal S_u eigenpair:
/// |+⟩ = (e^{−iφ/2}cos(θ/2), e^{iφ/2}sin(θ/2)),
/// |−⟩ = (−e^{−iφ/2}sin(θ/2), e^{iφ/2}cos(θ/2)).
pub struct SpinEigenstates {
    pub plus: SpinState,
    pub minus: SpinState,
}

pub fn spin_eigenstates(dir: Direction) -> SpinEigenstates {
    let half = 0.5 * dir.theta;
    let e_m = C::new(0.0, -0.5 * dir.phi).exp();
    let e_p = C::new(0.0, 0.5 * dir.phi).exp();
    SpinEigenstates {
        plus: SpinState::new(e_m * half.cos(), e_p * half.sin()),
        minus: SpinState::new(-e_m * half.sin(), e_p * half.cos()),
    }
}

/// Born probabilities p± = |⟨±_u|ψ⟩|²/⟨ψ|ψ⟩ for measuring the spin along a
/// direction, with the post-measurement (collapsed) states.
#[derive(Debug, Clone)]
pub struct SpinMeasurement {
    pub p_plus: f64,
    pub p_minus: f64,
    pub collapsed_plus: SpinState,
    pub collapsed_minus: SpinState,
}

pub fn measure_spin(state: &SpinState, dir: Direction) -> Result<SpinMeasurement> {
    let norm_sq = state.norm_sq();
    if norm_sq == 0.0 {
        return Err(QmError::ZeroNorm);
    }
    let eig = spin_eigenstates(dir);
    Ok(SpinMeasurement {
        p_plus: eig.plus.inner(state).norm_sqr() / norm_sq,
        p_minus: eig.minus.inner(state).norm_sqr() / norm_sq,
        collapsed_plus: eig.plus,
        collapsed_minus: eig.minus,
    })
}

/// Classical precession of an angular momentum in B = (0, 0, B):
/// dS/dt = γ S×B keeps S_z and |S| fixed and rotates (S_x, S_y) at
/// ω = |γ|B with the sense set by the sign of γ.
pub fn larmor_classical(s0: [f64; 3], gamma: f64, b: f64, t: f64) -> [f64; 3] {
    let angle = gamma * b * t;
    let (s, c) = (angle.sin(), angle.cos());
    [s0[0] * c + s0[1] * s, -s0[0] * s + s0[1] * c, s0[2]]
}

/// Quantum precession of a spin that starts as |+⟩ along `dir0` in the field
/// B = (0, 0, B) with H = −γₑB S_z: the eigenphases E± = ∓γₑBħ/2 rotate the
/// azimuth to φ − ω₀t, ω₀ = γₑB, so ⟨S⟩ traces the classical solution.
#[derive(Debug, Clone)]
pub struct LarmorEvolution {
    pub state: SpinState,
    /// ⟨S_x⟩, ⟨S_y⟩, ⟨S_z⟩ at time t.
    pub expectations: [f64; 3],
}

pub fn larmor_quantum(dir0: Direction, gamma_e: f64, b: f64, t: f64, hbar: f64) -> LarmorEvolution {
    let omega0 = gamma_e * b;
    let e_plus = -0.5 * gamma_e * b * hbar;
    let e_minus = 0.5 * gamma_e * b * hbar;
    let half = 0.5 * dir0.theta;
    let up =
        C::new(0.0, -0.5 * dir0.phi).exp() * C::new(0.0, -e_plus * t / hbar).exp() * half.cos();
    let down =
        C::new(0.0, 0.5 * dir0.phi).exp() * C::new(0.0, -e_minus * t / hbar).exp() * half.sin();
    let state = SpinState::new(up, down);
    let phase = dir0.phi - omega0 * t;
    let st = dir0.theta.sin();
    LarmorEvolution {
        state,
        expectations: [
            0.5 * hbar * st * phase.cos(),
            0.5 * hbar * st * phase.sin(),
            0.5 * hbar * dir0.theta.cos(),
        ],
    }
}

/// Zeeman splitting ΔE = γₑBħ of the two spin states, with the matching
/// photon frequency ΔE/h.
#[derive(Debug, Clone, Copy)]
pub struct ZeemanSplitting {
    pub delta_e: f64,
    pub photon_frequency: f64,
}

pub fn zeeman_splitting(
    b: f64,
    gamma_e: f64,
    consts: &PhysicalConstants,
) -> Result<ZeemanSplitting> {
    if b < 0.0 {
        return Err(QmError::Domain(format!(
            "field must be non-negative, got {b}"
        )));
    }
    let delta_e = gamma_e * b * consts.hbar;
    Ok(ZeemanSplitting {
        delta_e,
        photon_frequency: delta_e / consts.h,
    })
}

/// Orbital Zeeman level: Eₙ(hydrogen) − γBħm, the m-fold splitting of a
/// degenerate level in a magnetic field.
pub fn orbital_zeeman_energy(
    n: u32,
    m_quantum: i32,
    b: f64,
    gamma: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if n < 1 || m_quantum.unsigned_abs() > n - 1 {
        return Err(QmError::QuantumNumbers(format!(
            "need |m| <= n-1, got n={n}, m={m_quantum}"
        )));
    }
    let e_n = -consts.rydberg_energy() / (n as f64 * n as f64);
    Ok(e_n - gamma * b * consts.hbar * m_quantum as f64)
}

/// The ℓ = 1 angular momentum matrices on the basis ordered by printed L_z
/// eigenvalue (+ħ, 0, −ħ): L_z = ħ·diag(1,0,−1), L² = 2ħ²·I,
/// L_x = (ħ/√2)[[0,1,0],[1,0,1],[0,1,0]] and L_y closing the algebra.
#[derive(Debug, Clone)]
pub struct L1Matrices {
    pub lz: HermitianMatrix,
    pub l_squared: HermitianMatrix,
    pub lx: HermitianMatrix,
    pub ly: HermitianMatrix,
}

pub fn l1_matrices(hbar: f64) -> L1Matrices {
    let h = C::new(hbar, 0.0);
    let s = C::new(hbar / 2.0f64.sqrt(), 0.0);
    let i = C::new(0.0, 1.0);
    let lz = DMatrix::from_row_slice(
        3,
        3,
        &[
            h,
            C::ZERO,
            C::ZERO,
            C::ZERO,
            C::ZERO,
            C::ZERO,
            C::ZERO,
            C::ZERO,
            -h,
        ],
    );
    let l2 = DMatrix::<C>::identity(3, 3) * C::new(2.0 * hbar * hbar, 0.0);
    let lx = DMatrix::from_row_slice(
        3,
        3,
        &[C::ZERO, s, C::ZERO, s, C::ZERO, s, C::ZERO, s, C::ZERO],
    );
    let ly = DMatrix::from_row_slice(
        3,
        3,
        &[
            C::ZERO,
            -i * s,
            C::ZERO,
            i * s,
            C::ZERO,
            -i * s,
            C::ZERO,
            i * s,
            C::ZERO,
        ],
    );
    L1Matrices {
        lz: HermitianMatrix(lz),
        l_squared: HermitianMatrix(l2),
        lx: HermitianMatrix(lx),
        ly: HermitianMatrix(ly),
    }
}

/// [A, B] = AB − BA.
pub fn matrix_commutator(a: &DMatrix<C>, b: &DMatrix<C>) -> Result<DMatrix<C>> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() || !a.is_square() {
        return Err(QmError::Domain(
            "commutator needs equal square matrices".into(),
        ));
    }
    Ok(a * b - b * a)
}

/// Ladder operators J± = J_x ± iJ_y of a generalized angular momentum, with
/// the residuals ‖[J_z, J±] ∓ ħJ±‖ reported back. Inputs that fail the
/// angular momentum commutation relations are rejected.
#[derive(Debug, Clone)]
pub struct LadderOperators {
    pub j_plus: DMatrix<C>,
    pub j_minus: DMatrix<C>,
    pub residual_plus: f64,
    pub residual_minus: f64,
}

pub fn ladder_operators(
    jx: &HermitianMatrix,
    jy: &HermitianMatrix,
    jz: &HermitianMatrix,
    hbar: f64,
) -> Result<LadderOperators> {
    let scale = jx.0.norm().max(jy.0.norm()).max(jz.0.norm()).max(1e-300);
    let ih = C::new(0.0, hbar);
    let residuals: Vec<f64> = [
        (matrix_commutator(&jx.0, &jy.0)?, &jz.0),
        (matrix_commutator(&jy.0, &jz.0)?, &jx.0),
        (matrix_commutator(&jz.0, &jx.0)?, &jy.0),
    ]
    .into_iter()
    .map(|(comm, partner)| (comm - partner * ih).norm() / (scale * scale / hbar).max(scale))
    .collect();
    if residuals.iter().any(|r| *r > 1e-10) {
        return Err(QmError::NotAngularMomentum(residuals));
    }
    let i = C::new(0.0, 1.0);
    let j_plus = &jx.0 + &jy.0 * i;
    let j_minus = &jx.0 - &jy.0 * i;
    let h = C::new(hbar, 0.0);
    let residual_plus = (matrix_commutator(&jz.0, &j_plus)? - &j_plus * h).norm();
    let residual_minus = (matrix_commutator(&jz.0, &j_minus)? + &j_minus * h).norm();
    Ok(LadderOperators {
        j_plus,
        j_minus,
        residual_plus,
        residual_minus,
    })
}

/// Both sides of the Pauli identity (a·σ)(b·σ) = (a·b)I + iσ·(a×b).
#[derive(Debug, Clone)]
pub struct PauliProduct {
    pub lhs: DMatrix<C>,
    pub rhs: DMatrix<C>,
}

pub fn pauli_product_check(a: [f64; 3], b: [f64; 3]) -> PauliProduct {
    let sigma = [pauli(Axis::X), pauli(Axis::Y), pauli(Axis::Z)];
    let dot_sigma = |v: [f64; 3]| -> DMatrix<C> {
        &sigma[0] * C::new(v[0], 0.0)
            + &sigma[1] * C::new(v[1], 0.0)
            + &sigma[2] * C::new(v[2], 0.0)
    };
    let lhs = dot_sigma(a) * dot_sigma(b);
    let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let i = C::new(0.0, 1.0);
    let rhs = DMatrix::<C>::identity(2, 2) * C::new(dot, 0.0) + dot_sigma(cross) * i;
    PauliProduct { lhs, rhs }
}

/// S² = S_x² + S_y² + S_z² = (3/4)ħ²·I: every spinor carries total spin ½.
pub fn s_squared(hbar: f64) -> HermitianMatrix {
    HermitianMatrix(DMatrix::<C>::identity(2, 2) * C::new(0.75 * hbar * hbar, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn pauli_spin_operators() {
        let sz = spin_operator(Axis::Z, 1.0);
        let up = SpinState::up_state();
        // S_z|↑> = +ħ/2|↑>
        let v = sz.matrix() * up.as_vector();
        assert!((v[0] - C::new(0.5, 0.0)).norm() < 1e-15 && v[1].norm() == 0.0);
        // S_x flips the basis states
        let sx = spin_operator(Axis::X, 1.0);
        let v = sx.matrix() * up.as_vector();
        assert!(v[0].norm() == 0.0 && (v[1] - C::new(0.5, 0.0)).norm() < 1e-15);
        // eigenvalues ±ħ/2 for every axis
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let (vals, _) = spin_operator(axis, 1.0).eigen();
            assert!((vals[0] + 0.5).abs() < 1e-12 && (vals[1] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn direction_operator_specializes() {
        let sx = spin_direction_operator(Direction::x(), 1.0);
        assert!((sx.matrix() - spin_operator(Axis::X, 1.0).matrix()).norm() < 1e-14);
        let sz = spin_direction_operator(Direction::Z, 1.0);
        assert!((sz.matrix() - spin_operator(Axis::Z, 1.0).matrix()).norm() < 1e-14);
    }

    #[test]
    fn direction_operator_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let dir = Direction::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
            let (vals, _) = spin_direction_operator(dir, 1.0).eigen();
            assert!((vals[0] + 0.5).abs() < 1e-10);
            assert!((vals[1] - 0.5).abs() < 1e-10);
            // the closed-form eigenstates diagonalize it
            let eig = spin_eigenstates(dir);
            let op = spin_direction_operator(dir, 1.0);
            assert!(rel(eig.plus.expectation(&op), 0.5) < 1e-12);
            assert!(rel(eig.minus.expectation(&op), -0.5) < 1e-12);
            assert!(eig.plus.inner(&eig.minus).norm() < 1e-14);
        }
    }

    #[test]
    fn eigenstates_along_main_axes() {
        let z = spin_eigenstates(Direction::Z);
        assert!(z.plus.same_physical_state(&SpinState::up_state(), 1e-12));
        assert!(z.minus.same_physical_state(&SpinState::down_state(), 1e-12));
        let x = spin_eigenstates(Direction::x());
        let expect = SpinState::new(C::new(1.0, 0.0), C::new(1.0, 0.0))
            .scaled(C::new(1.0 / 2.0f64.sqrt(), 0.0));
        assert!(x.plus.same_physical_state(&expect, 1e-12));
        let xm = SpinState::new(C::new(1.0, 0.0), C::new(-1.0, 0.0));
        assert!(x
            .minus
            .same_physical_state(&xm.normalized().unwrap(), 1e-12));
        let y = spin_eigenstates(Direction::y());
        let yp = SpinState::new(C::ONE, C::new(0.0, 1.0));
        let ym = SpinState::new(C::ONE, C::new(0.0, -1.0));
        assert!(y.plus.same_physical_state(&yp, 1e-12));
        assert!(y.minus.same_physical_state(&ym, 1e-12));
    }

    #[test]
    fn measurements_and_collapse() {
        // eigenstate measured along its own axis
        let m = measure_spin(&SpinState::up_state(), Direction::Z).unwrap();
        assert!(rel(m.p_plus, 1.0) < 1e-14 && m.p_minus.abs() < 1e-14);
        // |↑> along x: 50/50
        let m = measure_spin(&SpinState::up_state(), Direction::x()).unwrap();
        assert!(rel(m.p_plus, 0.5) < 1e-12 && rel(m.p_minus, 0.5) < 1e-12);
        // (1,1)/√2 along z: 50/50
        let s = SpinState::new(C::ONE, C::ONE).normalized().unwrap();
        let m = measure_spin(&s, Direction::Z).unwrap();
        assert!(rel(m.p_plus, 0.5) < 1e-12 && rel(m.p_minus, 0.5) < 1e-12);
        assert!(measure_spin(&SpinState::new(C::ZERO, C::ZERO), Direction::Z).is_err());
    }

    #[test]
    fn measurement_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let state = SpinState::new(
                C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
            if state.norm_sq() < 1e-3 {
                continue;
            }
            let dir = Direction::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
            let m = measure_spin(&state, dir).unwrap();
            // completeness
            assert!((m.p_plus + m.p_minus - 1.0).abs() < 1e-12);
            // repeating the measurement on the collapsed state is certain
            let again = measure_spin(&m.collapsed_plus, dir).unwrap();
            assert!(rel(again.p_plus, 1.0) < 1e-12);
            // global phase changes nothing
            let theta = rng.gen_range(0.0..2.0 * PI);
            let rotated = state.scaled(C::new(0.0, theta).exp());
            let m2 = measure_spin(&rotated, dir).unwrap();
            assert!((m.p_plus - m2.p_plus).abs() < 1e-12);
        }
    }

    #[test]
    fn classical_precession() {
        let s0 = [0.8, 0.0, 0.6];
        let gamma = 2.5;
        let b = 1.3;
        let omega = gamma * b;
        // a full period returns the start
        let s = larmor_classical(s0, gamma, b, 2.0 * PI / omega);
        for (a, e) in s.iter().zip(&s0) {
            assert!((a - e).abs() < 1e-12);
        }
        // quarter period: 90° rotation; for γ > 0 the x component feeds −y
        let s = larmor_classical(s0, gamma, b, 0.5 * PI / omega);
        assert!(s[0].abs() < 1e-12 && rel(s[1], -0.8) < 1e-12 && rel(s[2], 0.6) < 1e-15);
        // no field, no motion
        let s = larmor_classical(s0, gamma, 0.0, 9.9);
        assert_eq!(s, s0);
        // |S| conserved
        let s = larmor_classical(s0, gamma, b, 0.77);
        let n0: f64 = s0.iter().map(|x| x * x).sum();
        let n: f64 = s.iter().map(|x| x * x).sum();
        assert!(rel(n, n0) < 1e-12);
    }

    #[test]
    fn quantum_precession_matches_classical() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let dir = Direction::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
            let gamma = rng.gen_range(-3.0..3.0);
            let b = rng.gen_range(0.0..2.0);
            let t = rng.gen_range(0.0..10.0);
            let q = larmor_quantum(dir, gamma, b, t, 1.0);
            // the quantum expectations against each spin operator
            for (i, axis) in [Axis::X, Axis::Y, Axis::Z].into_iter().enumerate() {
                let direct = q.state.expectation(&spin_operator(axis, 1.0));
                assert!((direct - q.expectations[i]).abs() < 1e-12);
            }
            // classical solution started from the t = 0 expectation values
            let s0 = larmor_quantum(dir, gamma, b, 0.0, 1.0).expectations;
            let classical = larmor_classical(s0, gamma, b, t);
            for (qv, cv) in q.expectations.iter().zip(&classical) {
                assert!((qv - cv).abs() < 1e-10, "quantum {qv} vs classical {cv}");
            }
        }
    }

    #[test]
    fn quantum_precession_snapshots() {
        // θ = π/2, φ = 0, t = 0: <S> = (ħ/2, 0, 0)
        let q = larmor_quantum(Direction::x(), 1.5, 1.0, 0.0, 1.0);
        assert!(rel(q.expectations[0], 0.5) < 1e-14);
        assert!(q.expectations[1].abs() < 1e-14 && q.expectations[2].abs() < 1e-14);
        // <S_z> constant in time
        for t in [0.0, 0.3, 1.7, 4.0] {
            let q = larmor_quantum(Direction::new(0.7, 0.2), 1.5, 1.0, t, 1.0);
            assert!(rel(q.expectations[2], 0.5 * 0.7f64.cos()) < 1e-13);
        }
    }

    #[test]
    fn zeeman_sunspot() {
        let c = PhysicalConstants::si();
        let z = zeeman_splitting(0.15, 1.76e11, &c).unwrap();
        assert!(rel(z.delta_e, 2.78e-24) < 1e-2);
        assert!(rel(z.photon_frequency, 4.2e9) < 1e-2);
        let zero = zeeman_splitting(0.0, 1.76e11, &c).unwrap();
        assert!(zero.delta_e == 0.0);
        let double = zeeman_splitting(0.30, 1.76e11, &c).unwrap();
        assert!(rel(double.delta_e, 2.0 * z.delta_e) < 1e-14);
        assert!(zeeman_splitting(-0.1, 1.76e11, &c).is_err());
    }

    #[test]
    fn orbital_zeeman_levels() {
        let c = PhysicalConstants::si();
        let gamma = 8.79e10;
        let b = 0.5;
        // B = 0 leaves E_n untouched
        let e = orbital_zeeman_energy(2, 1, 0.0, gamma, &c).unwrap();
        assert!(rel(e, -c.rydberg_energy() / 4.0) < 1e-14);
        // n = 2, m ∈ {−1, 0, 1}: evenly spaced by γBħ
        let levels: Vec<f64> = (-1..=1)
            .map(|m| orbital_zeeman_energy(2, m, b, gamma, &c).unwrap())
            .collect();
        // the splitting sits ~6 orders below E_n, so the difference keeps
        // only ~10 significant digits
        let spacing = gamma * b * c.hbar;
        assert!(rel(levels[0] - levels[1], spacing) < 1e-9);
        assert!(rel(levels[1] - levels[2], spacing) < 1e-9);
        // m = 0 unshifted for any field
        let e0 = orbital_zeeman_energy(3, 0, 2.0, gamma, &c).unwrap();
        assert!(rel(e0, -c.rydberg_energy() / 9.0) < 1e-14);
        assert!(orbital_zeeman_energy(2, 2, b, gamma, &c).is_err());
    }

    #[test]
    fn l1_matrix_values() {
        let l = l1_matrices(1.0);
        // eigenvalues of L_x are −ħ, 0, ħ
        let (vals, vecs) = l.lx.eigen();
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!(vals[1].abs() < 1e-12);
        assert!((vals[2] - 1.0).abs() < 1e-12);
        // eigenvector for −ħ ∝ (1, −√2, 1); proper normalization is 1/2
        let v = vecs.column(0);
        let reference = [1.0, -(2.0f64.sqrt()), 1.0];
        let phase = v[0] / reference[0];
        for (vi, ri) in v.iter().zip(&reference) {
            assert!((vi - phase * C::new(*ri, 0.0)).norm() < 1e-10);
        }
        assert!(rel(phase.norm(), 0.5) < 1e-10);
        assert!((v.norm() - 1.0).abs() < 1e-12);
        // L² = 2ħ² on the whole space
        assert!(
            (l.l_squared.matrix() - DMatrix::<C>::identity(3, 3) * C::new(2.0, 0.0)).norm() < 1e-14
        );
    }

    #[test]
    fn l1_basis_change_is_unitary() {
        let l = l1_matrices(1.0);
        let (_, vecs) = l.lx.eigen();
        // columns ordered (+ħ, 0, −ħ) conjugate L_x into the printed L_z form
        let mut u = DMatrix::<C>::zeros(3, 3);
        u.set_column(0, &vecs.column(2));
        u.set_column(1, &vecs.column(1));
        u.set_column(2, &vecs.column(0));
        let unitary_residual = (&u * u.adjoint() - DMatrix::<C>::identity(3, 3)).norm();
        assert!(unitary_residual < 1e-12);
        let diag = u.adjoint() * l.lx.matrix() * &u;
        assert!((diag - l.lz.matrix()).norm() < 1e-12);
    }

    #[test]
    fn angular_momentum_commutators() {
        // [S_x, S_y] = iħS_z and cyclic
        let hbar = 1.0;
        let sx = spin_operator(Axis::X, hbar);
        let sy = spin_operator(Axis::Y, hbar);
        let sz = spin_operator(Axis::Z, hbar);
        let i = C::new(0.0, hbar);
        let c = matrix_commutator(sx.matrix(), sy.matrix()).unwrap();
        assert!((c - sz.matrix() * i).norm() < 1e-12);
        // same relations for the 3×3 representation
        let l = l1_matrices(hbar);
        let c = matrix_commutator(l.lx.matrix(), l.ly.matrix()).unwrap();
        assert!((c - l.lz.matrix() * i).norm() < 1e-12);
        // [L², L_x] = 0
        let c = matrix_commutator(l.l_squared.matrix(), l.lx.matrix()).unwrap();
        assert!(c.norm() < 1e-12);
        let bad = matrix_commutator(sx.matrix(), l.lx.matrix());
        assert!(bad.is_err());
    }

    #[test]
    fn ladder_operator_construction() {
        let hbar = 1.0;
        let spin = ladder_operators(
            &spin_operator(Axis::X, hbar),
            &spin_operator(Axis::Y, hbar),
            &spin_operator(Axis::Z, hbar),
            hbar,
        )
        .unwrap();
        // J₊ = ħ[[0,1],[0,0]] for spin ½
        let expected =
            DMatrix::from_row_slice(2, 2, &[C::ZERO, C::new(hbar, 0.0), C::ZERO, C::ZERO]);
        assert!((&spin.j_plus - expected).norm() < 1e-12);
        assert!(spin.residual_plus < 1e-12 && spin.residual_minus < 1e-12);

        // ℓ = 1: J₊ lifts |m=0⟩ to |m=1⟩
        let l = l1_matrices(hbar);
        let ladder = ladder_operators(&l.lx, &l.ly, &l.lz, hbar).unwrap();
        let m0 = DMatrix::from_row_slice(3, 1, &[C::ZERO, C::ONE, C::ZERO]);
        let lifted = &ladder.j_plus * m0;
        assert!(lifted[(0, 0)].norm() > 1.0 - 1e-12);
        assert!(lifted[(1, 0)].norm() < 1e-14 && lifted[(2, 0)].norm() < 1e-14);
        assert!(ladder.residual_plus < 1e-12 && ladder.residual_minus < 1e-12);

        // something that is not an angular momentum is rejected
        let not_j = HermitianMatrix::new(DMatrix::<C>::identity(2, 2)).unwrap();
        assert!(matches!(
            ladder_operators(&not_j, &not_j, &not_j, hbar),
            Err(QmError::NotAngularMomentum(_))
        ));
    }

    #[test]
    fn pauli_product_identity() {
        // σ_z² = I
        let p = pauli_product_check([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]);
        assert!((&p.lhs - DMatrix::<C>::identity(2, 2)).norm() < 1e-15);
        assert!((&p.lhs - &p.rhs).norm() < 1e-15);
        // σ_x σ_y = iσ_z
        let p = pauli_product_check([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let expected = pauli(Axis::Z) * C::new(0.0, 1.0);
        assert!((&p.lhs - expected).norm() < 1e-15);
        // random vectors
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let a = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            let b = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            let p = pauli_product_check(a, b);
            let diff = &p.lhs - &p.rhs;
            let max_diff = diff.iter().map(|c| c.norm()).fold(0.0, f64::max);
            assert!(max_diff < 1e-12);
        }
    }

    #[test]
    fn total_spin_operator() {
        let hbar = 1.0;
        let s2 = s_squared(hbar);
        // matches S_x² + S_y² + S_z²
        let built = [Axis::X, Axis::Y, Axis::Z]
            .into_iter()
            .map(|ax| {
                let m = spin_operator(ax, hbar);
                m.matrix() * m.matrix()
            })
            .reduce(|a, b| a + b)
            .unwrap();
        assert!((s2.matrix() - built).norm() < 1e-14);
        // every normalized state gives <S²> = 3/4 ħ²
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..10 {
            let s = SpinState::new(
                C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
            .normalized()
            .unwrap();
            assert!(rel(s.expectation(&s2), 0.75) < 1e-12);
        }
        let (vals, _) = s2.eigen();
        assert!(vals.iter().all(|v| rel(*v, 0.75) < 1e-12));
    }

    #[test]
    fn hermitian_construction_guard() {
        let i = C::new(0.0, 1.0);
        let not_h = DMatrix::from_row_slice(2, 2, &[C::ONE, i, i, C::ONE]);
        assert!(HermitianMatrix::new(not_h).is_err());
        let h = DMatrix::from_row_slice(2, 2, &[C::ONE, i, -i, C::ONE]);
        assert!(HermitianMatrix::new(h).is_ok());
    }
}
