//! Closed-form bound states: the particle in a box (1D and 3D), the harmonic
//! oscillator built with ladder operators, and hydrogen-like orbitals.

use crate::error::{QmError, Result};
use crate::gridops::{Grid1D, WaveFunction};
use crate::quanta::PhysicalConstants;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

// ---------------------------------------------------------------- box states

/// Stationary state ψₙ(x) = √(2/L) sin(nπx/L) of a particle in a hard box
/// [0, L], with energy Eₙ = n²π²ħ²/(2mL²).
#[derive(Debug, Clone)]
pub struct BoxState {
    pub n: u32,
    pub length: f64,
    pub mass: f64,
    pub hbar: f64,
    pub energy: f64,
}

impl BoxState {
    pub fn eval(&self, x: f64) -> f64 {
        if (0.0..=self.length).contains(&x) {
            (2.0 / self.length).sqrt() * (self.n as f64 * PI * x / self.length).sin()
        } else {
            0.0
        }
    }

    pub fn sample(&self, grid: &Grid1D) -> WaveFunction {
        WaveFunction::from_real_fn(grid.clone(), |x| self.eval(x))
    }
}

pub fn box_state(n: u32, length: f64, mass: f64, hbar: f64) -> Result<BoxState> {
    if n < 1 {
        return Err(QmError::Domain("box state needs n >= 1".into()));
    }
    if length <= 0.0 || mass <= 0.0 {
        return Err(QmError::Domain(format!(
            "box state needs positive length and mass, got L={length}, m={mass}"
        )));
    }
    let nf = n as f64;
    Ok(BoxState {
        n,
        length,
        mass,
        hbar,
        energy: nf * nf * PI * PI * hbar * hbar / (2.0 * mass * length * length),
    })
}

/// Energy of a cubic 3D box level: (ħ²π²/2mL²)(n₁² + n₂² + n₃²).
pub fn box3d_energy(n: [u32; 3], length: f64, mass: f64, hbar: f64) -> Result<f64> {
    if n.iter().any(|&ni| ni < 1) {
        return Err(QmError::Domain("3D box needs all n_i >= 1".into()));
    }
    if length <= 0.0 || mass <= 0.0 {
        return Err(QmError::Domain(
            "3D box needs positive length and mass".into(),
        ));
    }
    let sum_sq: f64 = n.iter().map(|&ni| (ni as f64) * (ni as f64)).sum();
    Ok(hbar * hbar * PI * PI / (2.0 * mass * length * length) * sum_sq)
}

// ---------------------------------------------------- oscillator eigenstates

/// Oscillator wave function as polynomial × Gaussian:
/// ψ(x) = p(x)·e^{−αx²} with α = mω/2ħ, built by repeated application of
/// a†/√(n+1) to the normalized ground state.
#[derive(Debug, Clone)]
pub struct OscillatorWaveFunction {
    pub n: u32,
    /// Polynomial coefficients, constant term first.
    pub coeffs: Vec<f64>,
    /// Gaussian exponent α in e^{−αx²}.
    pub alpha: f64,
}

impl OscillatorWaveFunction {
    pub fn eval(&self, x: f64) -> f64 {
        let mut p = 0.0;
        for &c in self.coeffs.iter().rev() {
            p = p * x + c;
        }
        p * (-self.alpha * x * x).exp()
    }

    pub fn sample(&self, grid: &Grid1D) -> WaveFunction {
        WaveFunction::from_real_fn(grid.clone(), |x| self.eval(x))
    }
}

/// ψₙ for the harmonic oscillator. ψ₀ = (mω/πħ)^¼ e^{−mωx²/2ħ};
/// ψₙ₊₁ = (1/√(n+1))·√(mω/2ħ)(x − (ħ/mω)d/dx) ψₙ, which on the
/// polynomial×Gaussian form reads p ↦ √(mω/2ħ)(2x·p − (ħ/mω)p′)/√(n+1).
pub fn sho_wavefunction(
    n: u32,
    mass: f64,
    omega: f64,
    hbar: f64,
) -> Result<OscillatorWaveFunction> {
    if mass <= 0.0 || omega <= 0.0 || hbar <= 0.0 {
        return Err(QmError::Domain(
            "oscillator needs positive mass, frequency and hbar".into(),
        ));
    }
    let alpha = mass * omega / (2.0 * hbar);
    let raise = (mass * omega / (2.0 * hbar)).sqrt();
    let inv_mw = hbar / (mass * omega);
    let mut coeffs = vec![(mass * omega / (PI * hbar)).powf(0.25)];
    for level in 0..n {
        // 2x·p − (ħ/mω)p′
        let mut next = vec![0.0; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += 2.0 * c;
            if k >= 1 {
                next[k - 1] -= inv_mw * k as f64 * c;
            }
        }
        let norm = raise / ((level + 1) as f64).sqrt();
        for c in &mut next {
            *c *= norm;
        }
        coeffs = next;
    }
    Ok(OscillatorWaveFunction { n, coeffs, alpha })
}

/// Number-basis matrices for a truncated oscillator: a, a†, N = a†a,
/// H = ħω(N + ½), X = √(ħ/2mω)(a + a†) and P = i√(mħω/2)(a† − a).
/// Truncation artifacts only reach the last row/column.
#[derive(Debug, Clone)]
pub struct OscillatorBasis {
    pub dim: usize,
    pub mass: f64,
    pub omega: f64,
    pub hbar: f64,
    pub lowering: DMatrix<Complex64>,
    pub raising: DMatrix<Complex64>,
    pub number: DMatrix<Complex64>,
    pub hamiltonian: DMatrix<Complex64>,
    pub position: DMatrix<Complex64>,
    pub momentum: DMatrix<Complex64>,
}

pub fn oscillator_basis(dim: usize, mass: f64, omega: f64, hbar: f64) -> Result<OscillatorBasis> {
    if dim < 2 {
        return Err(QmError::Domain(format!(
            "oscillator basis needs dim >= 2, got {dim}"
        )));
    }
    if mass <= 0.0 || omega <= 0.0 || hbar <= 0.0 {
        return Err(QmError::Domain(
            "oscillator needs positive mass, frequency and hbar".into(),
        ));
    }
    let mut a = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let adag = a.transpose();
    let number = &adag * &a;
    let mut hamiltonian = number.clone();
    for i in 0..dim {
        hamiltonian[(i, i)] += Complex64::new(0.5, 0.0);
    }
    hamiltonian *= Complex64::new(hbar * omega, 0.0);
    let x_scale = Complex64::new((hbar / (2.0 * mass * omega)).sqrt(), 0.0);
    let p_scale = Complex64::new(0.0, (mass * hbar * omega / 2.0).sqrt());
    let position = (&a + &adag) * x_scale;
    let momentum = (&adag - &a) * p_scale;
    Ok(OscillatorBasis {
        dim,
        mass,
        omega,
        hbar,
        lowering: a,
        raising: adag,
        number,
        hamiltonian,
        position,
        momentum,
    })
}

/// ΔX, ΔP and their product for oscillator level n, from matrix sandwiches
/// ⟨n|X²|n⟩ and ⟨n|P²|n⟩ in a truncated basis.
#[derive(Debug, Clone, Copy)]
pub struct ShoUncertainties {
    pub delta_x: f64,
    pub delta_p: f64,
    pub product: f64,
}

pub fn sho_uncertainties(n: u32, mass: f64, omega: f64, hbar: f64) -> Result<ShoUncertainties> {
    let dim = (n as usize + 2).max(2);
    let basis = oscillator_basis(dim, mass, omega, hbar)?;
    let idx = n as usize;
    let x2 = (&basis.position * &basis.position)[(idx, idx)].re;
    let p2 = (&basis.momentum * &basis.momentum)[(idx, idx)].re;
    let x1 = basis.position[(idx, idx)].re;
    let p1 = basis.momentum[(idx, idx)].re;
    let delta_x = (x2 - x1 * x1).max(0.0).sqrt();
    let delta_p = (p2 - p1 * p1).max(0.0).sqrt();
    Ok(ShoUncertainties {
        delta_x,
        delta_p,
        product: delta_x * delta_p,
    })
}

// ------------------------------------------------------- angular and radial

/// Spherical harmonic Y_ℓ^m(θ, φ) for ℓ ≤ 2, hard-coded from the standard
/// table (including the ∓ sign on Y₁^{±1}).
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if m.unsigned_abs() > l || l > 2 {
        return Err(QmError::QuantumNumbers(format!(
            "spherical harmonic table covers l <= 2, |m| <= l; got l={l}, m={m}"
        )));
    }
    let e_imphi = Complex64::new(0.0, m as f64 * phi).exp();
    let real = match (l, m) {
        (0, 0) => (1.0 / (4.0 * PI)).sqrt(),
        (1, 0) => (3.0 / (4.0 * PI)).sqrt() * theta.cos(),
        (1, 1) => -(3.0 / (8.0 * PI)).sqrt() * theta.sin(),
        (1, -1) => (3.0 / (8.0 * PI)).sqrt() * theta.sin(),
        (2, 0) => (5.0 / (16.0 * PI)).sqrt() * (3.0 * theta.cos() * theta.cos() - 1.0),
        (2, 1) | (2, -1) => (15.0 / (8.0 * PI)).sqrt() * theta.cos() * theta.sin(),
        (2, 2) | (2, -2) => (15.0 / (32.0 * PI)).sqrt() * theta.sin() * theta.sin(),
        _ => unreachable!(),
    };
    Ok(real * e_imphi)
}

/// Generalized Laguerre polynomial L_β^α(x) by the three-term recurrence
/// (k+1)L_{k+1} = (2k+1+α−x)L_k − (k+α)L_{k−1}.
pub fn laguerre(alpha: u32, beta: u32, x: f64) -> f64 {
    let a = alpha as f64;
    let mut prev = 1.0;
    if beta == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..beta {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Hydrogen-like bound state ψ_{nℓm} = N rℓ L^{2ℓ+1}_{n−ℓ−1}(2br) e^{−br} Y_ℓ^m
/// with b = 1/(n·a_eff) and a_eff = a·(m_e/mass)/Z. The radial normalization
/// ∫|R|²r²dr = 1 is fixed numerically at construction.
#[derive(Debug, Clone)]
pub struct HydrogenState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub z: u32,
    pub mass: f64,
    /// Effective Bohr radius a·(m_e/mass)/Z.
    pub a_eff: f64,
    /// Inverse length b = 1/(n·a_eff) in the exponential e^{−br}.
    pub b: f64,
    /// Binding energy −E₀Z²(mass/m_e)/n² in joules.
    pub energy: f64,
    norm: f64,
}

impl HydrogenState {
    /// Normalized radial part R(r).
    pub fn radial(&self, r: f64) -> f64 {
        self.norm * self.radial_unnormalized(r)
    }

    fn radial_unnormalized(&self, r: f64) -> f64 {
        r.powi(self.l as i32)
            * laguerre(2 * self.l + 1, self.n - self.l - 1, 2.0 * self.b * r)
            * (-self.b * r).exp()
    }

    /// Angular part Y_ℓ^m(θ, φ); table-limited to ℓ ≤ 2.
    pub fn angular(&self, theta: f64, phi: f64) -> Result<Complex64> {
        spherical_harmonic(self.l, self.m, theta, phi)
    }

    /// Full wave function R(r)·Y_ℓ^m(θ, φ).
    pub fn eval(&self, r: f64, theta: f64, phi: f64) -> Result<Complex64> {
        Ok(self.angular(theta, phi)? * self.radial(r))
    }

    pub fn energy_ev(&self, consts: &PhysicalConstants) -> f64 {
        self.energy / consts.ev
    }

    /// Peak radius n²a − na of the leading r^{n−1}e^{−r/na} term (n ≥ 2;
    /// for n = 1 the leading term peaks at the origin-adjacent maximum a_eff).
    pub fn leading_term_peak(&self) -> f64 {
        let n = self.n as f64;
        if self.n == 1 {
            self.a_eff
        } else {
            (n * n - n) * self.a_eff
        }
    }
}

pub fn hydrogen_state(
    n: u32,
    l: u32,
    m: i32,
    z: u32,
    mass: f64,
    consts: &PhysicalConstants,
) -> Result<HydrogenState> {
    if n < 1 || l >= n || m.unsigned_abs() > l {
        return Err(QmError::QuantumNumbers(format!(
            "need 1 <= n, l <= n-1, |m| <= l; got n={n}, l={l}, m={m}"
        )));
    }
    if z < 1 || mass <= 0.0 {
        return Err(QmError::Domain("need Z >= 1 and positive mass".into()));
    }
    let a_eff = consts.bohr_radius() * (consts.m_e / mass) / z as f64;
    let b = 1.0 / (n as f64 * a_eff);
    let zf = z as f64;
    let energy = -consts.rydberg_energy() * zf * zf * (mass / consts.m_e) / (n as f64 * n as f64);
    let mut state = HydrogenState {
        n,
        l,
        m,
        z,
        mass,
        a_eff,
        b,
        energy,
        norm: 1.0,
    };
    // Simpson quadrature of ∫|R|²r²dr; the integrand decays like e^{−2br}
    let r_max = (2.0 * n as f64 * (n as f64 + 10.0)) * a_eff;
    let steps = 20_000usize;
    let h = r_max / steps as f64;
    let mut integral = 0.0;
    for i in 0..=steps {
        let r = i as f64 * h;
        let f = state.radial_unnormalized(r);
        let val = f * f * r * r;
        let w = if i == 0 || i == steps {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        integral += w * val;
    }
    integral *= h / 3.0;
    state.norm = 1.0 / integral.sqrt();
    Ok(state)
}

/// Number of degenerate states of level n: Σ_{ℓ<n}(2ℓ+1) = n².
pub fn hydrogen_degeneracy(n: u32) -> u32 {
    n * n
}

/// Spectroscopic label like "2p"; ℓ ≥ 4 continues alphabetically from g.
pub fn orbital_label(n: u32, l: u32) -> Result<String> {
    if n < 1 || l >= n {
        return Err(QmError::QuantumNumbers(format!(
            "orbital label needs l <= n-1, got n={n}, l={l}"
        )));
    }
    let letter = match l {
        0 => 's',
        1 => 'p',
        2 => 'd',
        3 => 'f',
        higher => {
            let offset = higher - 4;
            if offset > 19 {
                return Err(QmError::QuantumNumbers(format!("l = {l} out of range")));
            }
            (b'g' + offset as u8) as char
        }
    };
    Ok(format!("{n}{letter}"))
}

/// Binding-energy and size scaling of a hydrogen-like atom when the orbiting
/// particle is `mass_ratio` times heavier than the electron: E₀ scales up,
/// a scales down.
#[derive(Debug, Clone, Copy)]
pub struct MassScaledAtom {
    pub binding_energy: f64,
    pub bohr_radius: f64,
}

pub fn mass_scaled_atom(mass_ratio: f64, consts: &PhysicalConstants) -> Result<MassScaledAtom> {
    if mass_ratio <= 0.0 {
        return Err(QmError::Domain(format!(
            "mass ratio must be positive, got {mass_ratio}"
        )));
    }
    Ok(MassScaledAtom {
        binding_energy: consts.rydberg_energy() * mass_ratio,
        bohr_radius: consts.bohr_radius() / mass_ratio,
    })
}
