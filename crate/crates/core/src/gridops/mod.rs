//! Wave functions on a uniform grid: inner products, operators as grid
//! actions, finite-difference Hamiltonians, eigensolving, time evolution in
//! the eigenbasis, expectation values and probability bookkeeping.

pub mod tridiag;

use crate::error::{QmError, Result};
use num_complex::Complex64;
use tridiag::SymTridiag;

/// Uniform spatial grid with `n_points >= 3` strictly increasing points.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid1D {
    // negated comparison also rejects NaN bounds
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(QmError::Domain(format!(
                "grid needs x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 3 {
            return Err(QmError::Domain(format!(
                "grid needs at least 3 points, got {n_points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.point(i)).collect()
    }

    /// True when the grid is mirror symmetric about the origin.
    pub fn is_symmetric(&self) -> bool {
        (self.x_min + self.x_max).abs() <= 1e-12 * self.dx().abs().max(self.x_max.abs())
    }
}

/// Complex-valued samples of ψ on a grid.
#[derive(Debug, Clone)]
pub struct WaveFunction {
    pub grid: Grid1D,
    pub values: Vec<Complex64>,
}

impl WaveFunction {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(QmError::GridMismatch);
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.points().iter().map(|&x| f(x)).collect();
        Self { grid, values }
    }

    pub fn from_real_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// ‖ψ‖² = Σ|ψᵢ|² dx under the trapezoid rule.
    pub fn norm_sq(&self) -> f64 {
        let n = self.values.len();
        let mut s = 0.5 * (self.values[0].norm_sqr() + self.values[n - 1].norm_sqr());
        for v in &self.values[1..n - 1] {
            s += v.norm_sqr();
        }
        s * self.grid.dx()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> WaveFunction {
        WaveFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &WaveFunction) -> Result<WaveFunction> {
        if self.grid != other.grid {
            return Err(QmError::GridMismatch);
        }
        Ok(WaveFunction {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Max boundary amplitude relative to the peak amplitude; large values
    /// mean the packet leaks out of the grid.
    pub fn boundary_leakage(&self) -> f64 {
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        self.values[0]
            .norm()
            .max(self.values[self.values.len() - 1].norm())
            / peak
    }
}

/// ⟨f,g⟩ = Σ conj(f)·g·dx with trapezoid weights; antilinear in `f`.
pub fn inner_product(f: &WaveFunction, g: &WaveFunction) -> Result<Complex64> {
    if f.grid != g.grid {
        return Err(QmError::GridMismatch);
    }
    let n = f.values.len();
    let mut s = 0.5 * (f.values[0].conj() * g.values[0] + f.values[n - 1].conj() * g.values[n - 1]);
    for i in 1..n - 1 {
        s += f.values[i].conj() * g.values[i];
    }
    Ok(s * f.grid.dx())
}

/// Rescale ψ to unit norm; the input is left untouched.
pub fn normalize(psi: &WaveFunction) -> Result<WaveFunction> {
    let norm = psi.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(QmError::ZeroNorm);
    }
    Ok(psi.scaled(Complex64::new(1.0 / norm, 0.0)))
}

/// Linear operators acting on grid samples. Derivatives use second-order
/// central differences with one-sided stencils at the boundaries; the
/// Hamiltonian assumes ψ = 0 outside the grid (hard walls).
#[derive(Debug, Clone)]
pub enum GridOperator {
    Identity,
    /// Multiplication by x.
    Position,
    /// d/dx.
    Derivative,
    /// d²/dx².
    SecondDerivative,
    /// P = −iħ d/dx.
    Momentum {
        hbar: f64,
    },
    /// Pointwise multiplication by a sampled function g(x).
    Multiply(Vec<Complex64>),
    /// H = V(X) − (ħ²/2m) d²/dx² with Dirichlet walls at the grid edges.
    Hamiltonian {
        potential: Vec<f64>,
        mass: f64,
        hbar: f64,
    },
    /// Rψ(x) = ψ(−x); needs a symmetric grid.
    Parity,
    Scale(Complex64, Box<GridOperator>),
    Sum(Box<GridOperator>, Box<GridOperator>),
    /// Composition AB: apply B first, then A.
    Product(Box<GridOperator>, Box<GridOperator>),
}

impl GridOperator {
    pub fn scaled(self, c: Complex64) -> GridOperator {
        GridOperator::Scale(c, Box::new(self))
    }

    pub fn plus(self, other: GridOperator) -> GridOperator {
        GridOperator::Sum(Box::new(self), Box::new(other))
    }

    pub fn compose(self, inner: GridOperator) -> GridOperator {
        GridOperator::Product(Box::new(self), Box::new(inner))
    }

    pub fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        let grid = psi.grid.clone();
        let dx = grid.dx();
        let vals = &psi.values;
        let out = match self {
            GridOperator::Identity => vals.clone(),
            GridOperator::Position => grid
                .points()
                .iter()
                .zip(vals)
                .map(|(&x, v)| x * v)
                .collect(),
            GridOperator::Derivative => derivative(vals, dx),
            GridOperator::SecondDerivative => second_derivative(vals, dx),
            GridOperator::Momentum { hbar } => {
                let d = derivative(vals, dx);
                let factor = Complex64::new(0.0, -hbar);
                d.into_iter().map(|v| factor * v).collect()
            }
            GridOperator::Multiply(g) => {
                if g.len() != vals.len() {
                    return Err(QmError::GridMismatch);
                }
                g.iter().zip(vals).map(|(a, b)| a * b).collect()
            }
            GridOperator::Hamiltonian {
                potential,
                mass,
                hbar,
            } => {
                if potential.len() != vals.len() {
                    return Err(QmError::GridMismatch);
                }
                let kin = hbar * hbar / (2.0 * mass * dx * dx);
                let n = vals.len();
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let left = if i > 0 { vals[i - 1] } else { Complex64::ZERO };
                    let right = if i + 1 < n {
                        vals[i + 1]
                    } else {
                        Complex64::ZERO
                    };
                    let lap = (left + right) - 2.0 * vals[i];
                    out.push(potential[i] * vals[i] - kin * lap);
                }
                out
            }
            GridOperator::Parity => {
                if !grid.is_symmetric() {
                    return Err(QmError::Domain(
                        "parity needs a grid symmetric about the origin".into(),
                    ));
                }
                vals.iter().rev().cloned().collect()
            }
            GridOperator::Scale(c, op) => {
                return Ok(op.apply(psi)?.scaled(*c));
            }
            GridOperator::Sum(a, b) => {
                return a.apply(psi)?.add(&b.apply(psi)?);
            }
            GridOperator::Product(a, b) => {
                return a.apply(&b.apply(psi)?);
            }
        };
        WaveFunction::new(grid, out)
    }
}

fn derivative(vals: &[Complex64], dx: f64) -> Vec<Complex64> {
    let n = vals.len();
    let mut out = Vec::with_capacity(n);
    if n >= 3 {
        out.push((-3.0 * vals[0] + 4.0 * vals[1] - vals[2]) / (2.0 * dx));
    } else {
        out.push((vals[1] - vals[0]) / dx);
    }
    for i in 1..n - 1 {
        out.push((vals[i + 1] - vals[i - 1]) / (2.0 * dx));
    }
    if n >= 3 {
        out.push((3.0 * vals[n - 1] - 4.0 * vals[n - 2] + vals[n - 3]) / (2.0 * dx));
    } else {
        out.push((vals[n - 1] - vals[n - 2]) / dx);
    }
    out
}

fn second_derivative(vals: &[Complex64], dx: f64) -> Vec<Complex64> {
    let n = vals.len();
    let dx2 = dx * dx;
    let mut out = Vec::with_capacity(n);
    if n >= 4 {
        out.push((2.0 * vals[0] - 5.0 * vals[1] + 4.0 * vals[2] - vals[3]) / dx2);
    } else {
        out.push(((vals[0] + vals[2]) - 2.0 * vals[1]) / dx2);
    }
    for i in 1..n - 1 {
        // (left + right) first keeps the stencil mirror symmetric in rounding
        out.push(((vals[i - 1] + vals[i + 1]) - 2.0 * vals[i]) / dx2);
    }
    if n >= 4 {
        out.push((2.0 * vals[n - 1] - 5.0 * vals[n - 2] + 4.0 * vals[n - 3] - vals[n - 4]) / dx2);
    } else {
        out.push(((vals[n - 3] + vals[n - 1]) - 2.0 * vals[n - 2]) / dx2);
    }
    out
}

/// (AB − BA) f.
pub fn commutator_apply(
    a: &GridOperator,
    b: &GridOperator,
    f: &WaveFunction,
) -> Result<WaveFunction> {
    let ab = a.apply(&b.apply(f)?)?;
    let ba = b.apply(&a.apply(f)?)?;
    ab.add(&ba.scaled(Complex64::new(-1.0, 0.0)))
}

/// Finite-difference Hamiltonian over the interior grid points, with ψ pinned
/// to zero at the two boundary points. Row i: diag ħ²/(m dx²) + Vᵢ,
/// off-diagonal −ħ²/(2m dx²).
#[derive(Debug, Clone)]
pub struct TridiagonalHamiltonian {
    pub grid: Grid1D,
    pub potential: Vec<f64>,
    pub mass: f64,
    pub hbar: f64,
    matrix: SymTridiag,
}

impl TridiagonalHamiltonian {
    pub fn diag(&self) -> &[f64] {
        &self.matrix.diag
    }

    pub fn off_diag(&self) -> &[f64] {
        &self.matrix.off
    }

    pub fn operator(&self) -> GridOperator {
        GridOperator::Hamiltonian {
            potential: self.potential.clone(),
            mass: self.mass,
            hbar: self.hbar,
        }
    }
}

/// Assemble the interior tridiagonal matrix of H = V(X) − (ħ²/2m)D².
/// `potential` is sampled on the full grid.
pub fn assemble_hamiltonian(
    grid: &Grid1D,
    potential: &[f64],
    mass: f64,
    hbar: f64,
) -> Result<TridiagonalHamiltonian> {
    if potential.len() != grid.len() {
        return Err(QmError::GridMismatch);
    }
    if mass <= 0.0 {
        return Err(QmError::Domain(format!(
            "mass must be positive, got {mass}"
        )));
    }
    if potential[1..grid.len() - 1].iter().any(|v| !v.is_finite()) {
        return Err(QmError::Domain(
            "potential must be finite at interior grid points".into(),
        ));
    }
    let dx = grid.dx();
    let kin = hbar * hbar / (2.0 * mass * dx * dx);
    let n_in = grid.len() - 2;
    let diag: Vec<f64> = (0..n_in).map(|i| 2.0 * kin + potential[i + 1]).collect();
    let off = vec![-kin; n_in.saturating_sub(1)];
    Ok(TridiagonalHamiltonian {
        grid: grid.clone(),
        potential: potential.to_vec(),
        mass,
        hbar,
        matrix: SymTridiag::new(diag, off),
    })
}

/// Eigenvalues and grid-normalized eigenvectors of a discretized Hamiltonian.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub energies: Vec<f64>,
    /// Real eigenvectors on the full grid (zero at the walls), grid-normalized.
    states: Vec<Vec<f64>>,
    pub grid: Grid1D,
    pub potential: Vec<f64>,
    pub mass: f64,
    pub hbar: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn state_values(&self, i: usize) -> &[f64] {
        &self.states[i]
    }

    pub fn state(&self, i: usize) -> WaveFunction {
        WaveFunction {
            grid: self.grid.clone(),
            values: self.states[i]
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect(),
        }
    }

    pub fn hamiltonian_operator(&self) -> GridOperator {
        GridOperator::Hamiltonian {
            potential: self.potential.clone(),
            mass: self.mass,
            hbar: self.hbar,
        }
    }

    /// Amplitude of state i at the points next to the walls, relative to its
    /// peak. Values above ~1e-6 mean the caller's domain truncates the state.
    pub fn boundary_amplitude(&self, i: usize) -> f64 {
        let v = &self.states[i];
        let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let n = v.len();
        v[1].abs().max(v[n - 2].abs()) / peak
    }

    /// True when every requested state fits the domain comfortably.
    pub fn domain_contains_states(&self) -> bool {
        (0..self.len()).all(|i| self.boundary_amplitude(i) <= 1e-6)
    }
}

/// The `k` lowest eigenpairs, energies ascending. Eigenvectors are
/// grid-normalized, with the largest-magnitude component made positive.
pub fn solve_eigen(h: &TridiagonalHamiltonian, k: usize) -> Result<Spectrum> {
    let n = h.grid.len();
    if k > n - 2 {
        return Err(QmError::Domain(format!(
            "asked for {k} states but the grid supports at most {}",
            n - 2
        )));
    }
    let energies = h.matrix.lowest_eigenvalues(k);
    let tol = 1e-10 * h.matrix.inf_norm();
    let dx = h.grid.dx();
    let mut found: Vec<(f64, Vec<f64>)> = Vec::with_capacity(k);
    let mut states = Vec::with_capacity(k);
    for &e in &energies {
        let v = h.matrix.eigenvector(e, &found);
        let res = h.matrix.residual(e, &v);
        if res > tol {
            return Err(QmError::Solver(format!(
                "residual {res:.3e} exceeds tolerance {tol:.3e} at E = {e:.6e}"
            )));
        }
        found.push((e, v.clone()));

        let mut full = vec![0.0; n];
        full[1..n - 1].copy_from_slice(&v);
        // sign convention: largest-magnitude component positive
        let mut peak = 0usize;
        for (i, x) in full.iter().enumerate() {
            if x.abs() > full[peak].abs() {
                peak = i;
            }
        }
        let mut scale = 1.0 / (dx * full.iter().map(|x| x * x).sum::<f64>()).sqrt();
        if full[peak] < 0.0 {
            scale = -scale;
        }
        for x in &mut full {
            *x *= scale;
        }
        states.push(full);
    }
    Ok(Spectrum {
        energies,
        states,
        grid: h.grid.clone(),
        potential: h.potential.clone(),
        mass: h.mass,
        hbar: h.hbar,
    })
}

/// ψ(t) = Σ cₙ e^{−iEₙt/ħ} ψₙ over the first `coefficients.len()` states.
pub fn evolve(spectrum: &Spectrum, coefficients: &[Complex64], t: f64) -> Result<WaveFunction> {
    if coefficients.len() > spectrum.len() {
        return Err(QmError::Domain(format!(
            "{} coefficients but only {} states",
            coefficients.len(),
            spectrum.len()
        )));
    }
    let n = spectrum.grid.len();
    let mut values = vec![Complex64::ZERO; n];
    for (c, (e, state)) in coefficients
        .iter()
        .zip(spectrum.energies.iter().zip(&spectrum.states))
    {
        let phase = Complex64::new(0.0, -e * t / spectrum.hbar).exp();
        let w = c * phase;
        for (out, &s) in values.iter_mut().zip(state) {
            *out += w * s;
        }
    }
    WaveFunction::new(spectrum.grid.clone(), values)
}

/// Sandwich ⟨ψ|Op|ψ⟩ / ⟨ψ|ψ⟩.
pub fn expectation(op: &GridOperator, psi: &WaveFunction) -> Result<Complex64> {
    let norm_sq = psi.norm_sq();
    if norm_sq == 0.0 {
        return Err(QmError::ZeroNorm);
    }
    let op_psi = op.apply(psi)?;
    Ok(inner_product(psi, &op_psi)? / norm_sq)
}

/// Var(O) = ⟨O²⟩ − ⟨O⟩² for a Hermitian operator; tiny negative values from
/// roundoff are clamped to zero.
pub fn variance(op: &GridOperator, psi: &WaveFunction) -> Result<f64> {
    let mean = expectation(op, psi)?.re;
    let op_psi = op.apply(psi)?;
    let mean_sq = inner_product(&op_psi, &op_psi)?.re / psi.norm_sq();
    let var = mean_sq - mean * mean;
    if var < -1e-10 {
        return Err(QmError::NegativeVariance(var));
    }
    Ok(var.max(0.0))
}

/// ΔO = √(⟨O²⟩ − ⟨O⟩²).
pub fn uncertainty(op: &GridOperator, psi: &WaveFunction) -> Result<f64> {
    Ok(variance(op, psi)?.sqrt())
}

/// Probability current j(x) = (ħ/m)·Im(ψ* ψ′).
pub fn probability_current(psi: &WaveFunction, mass: f64, hbar: f64) -> Vec<f64> {
    let d = derivative(&psi.values, psi.grid.dx());
    psi.values
        .iter()
        .zip(d)
        .map(|(v, dv)| hbar / mass * (v.conj() * dv).im)
        .collect()
}

/// P([a,b]) = ∫ₐᵇ |ψ|² dx with the interval clipped to the grid.
#[derive(Debug, Clone, Copy)]
pub struct IntervalProbability {
    pub probability: f64,
    /// Set when [a,b] reached outside the grid and was clipped.
    pub clipped: bool,
}

// negated comparison also rejects NaN interval ends
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn position_probability(psi: &WaveFunction, a: f64, b: f64) -> Result<IntervalProbability> {
    if !(a < b) {
        return Err(QmError::Domain(format!("need a < b, got [{a}, {b}]")));
    }
    let grid = &psi.grid;
    let clipped = a < grid.x_min() || b > grid.x_max();
    let lo = a.max(grid.x_min());
    let hi = b.min(grid.x_max());
    if !(lo < hi) {
        return Ok(IntervalProbability {
            probability: 0.0,
            clipped,
        });
    }
    let dx = grid.dx();
    let dens: Vec<f64> = psi.values.iter().map(|v| v.norm_sqr()).collect();
    // integrate the piecewise-linear interpolant of |ψ|² cell by cell
    let mut p = 0.0;
    let i0 = ((lo - grid.x_min()) / dx).floor() as usize;
    let i1 = (((hi - grid.x_min()) / dx).ceil() as usize).min(grid.len() - 1);
    for i in i0..i1 {
        let xl = grid.point(i);
        let xr = grid.point(i + 1);
        let l = lo.max(xl);
        let r = hi.min(xr);
        if r <= l {
            continue;
        }
        let dl = dens[i] + (dens[i + 1] - dens[i]) * (l - xl) / dx;
        let dr = dens[i] + (dens[i + 1] - dens[i]) * (r - xl) / dx;
        p += 0.5 * (dl + dr) * (r - l);
    }
    Ok(IntervalProbability {
        probability: p,
        clipped,
    })
}

/// Both sides of d⟨O⟩/dt = (i/ħ)⟨[H,O]⟩ for a state evolving in the
/// eigenbasis: the left side by a centered difference of the expectation
/// value, the right by the commutator sandwich at time t.
#[derive(Debug, Clone, Copy)]
pub struct EhrenfestCheck {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn ehrenfest_check(
    spectrum: &Spectrum,
    coefficients: &[Complex64],
    op: &GridOperator,
    t: f64,
    dt: f64,
) -> Result<EhrenfestCheck> {
    let fwd = expectation(op, &evolve(spectrum, coefficients, t + dt)?)?.re;
    let bwd = expectation(op, &evolve(spectrum, coefficients, t - dt)?)?.re;
    let lhs = (fwd - bwd) / (2.0 * dt);

    let psi = evolve(spectrum, coefficients, t)?;
    let h = spectrum.hamiltonian_operator();
    let comm = commutator_apply(&h, op, &psi)?;
    let rhs =
        (Complex64::new(0.0, 1.0 / spectrum.hbar) * inner_product(&psi, &comm)? / psi.norm_sq()).re;
    Ok(EhrenfestCheck { lhs, rhs })
}

/// Even/odd split ψ = ψ₊ + ψ₋ with ψ±(x) = (ψ(x) ± ψ(−x))/2.
#[derive(Debug, Clone)]
pub struct ParitySplit {
    pub even: WaveFunction,
    pub odd: WaveFunction,
}

pub fn parity_split(psi: &WaveFunction) -> Result<ParitySplit> {
    if !psi.grid.is_symmetric() {
        return Err(QmError::Domain(
            "parity split needs a grid symmetric about the origin".into(),
        ));
    }
    let n = psi.values.len();
    let mut even = Vec::with_capacity(n);
    let mut odd = Vec::with_capacity(n);
    for i in 0..n {
        let v = psi.values[i];
        let r = psi.values[n - 1 - i];
        even.push(0.5 * (v + r));
        odd.push(0.5 * (v - r));
    }
    Ok(ParitySplit {
        even: WaveFunction::new(psi.grid.clone(), even)?,
        odd: WaveFunction::new(psi.grid.clone(), odd)?,
    })
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

    fn random_wave(grid: &Grid1D, rng: &mut ChaCha8Rng) -> WaveFunction {
        let values = (0..grid.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        WaveFunction::new(grid.clone(), values).unwrap()
    }

    fn box_state(grid: &Grid1D, n: u32, l: f64) -> WaveFunction {
        WaveFunction::from_real_fn(grid.clone(), |x| {
            if (0.0..=l).contains(&x) {
                (2.0 / l).sqrt() * (n as f64 * PI * x / l).sin()
            } else {
                0.0
            }
        })
    }

    #[test]
    fn grid_basics() {
        let g = Grid1D::new(0.0, 1.0, 11).unwrap();
        assert!((g.dx() - 0.1).abs() < 1e-15);
        assert!((g.point(10) - 1.0).abs() < 1e-15);
        assert!(Grid1D::new(1.0, 0.0, 11).is_err());
        assert!(Grid1D::new(0.0, 1.0, 2).is_err());
        assert!(Grid1D::new(-2.0, 2.0, 11).unwrap().is_symmetric());
        assert!(!g.is_symmetric());
    }

    #[test]
    fn inner_product_box_states() {
        let grid = Grid1D::new(0.0, 1.0, 1001).unwrap();
        let psi1 = box_state(&grid, 1, 1.0);
        let psi2 = box_state(&grid, 2, 1.0);
        assert!((inner_product(&psi1, &psi1).unwrap().re - 1.0).abs() < 1e-6);
        assert!(inner_product(&psi1, &psi2).unwrap().norm() < 1e-8);
    }

    #[test]
    fn inner_product_antilinearity() {
        let grid = Grid1D::new(-1.0, 1.0, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f1 = random_wave(&grid, &mut rng);
        let f2 = random_wave(&grid, &mut rng);
        let g = random_wave(&grid, &mut rng);
        let a = Complex64::new(0.3, -1.1);
        let b = Complex64::new(-0.7, 0.2);
        let combo = f1.scaled(a).add(&f2.scaled(b)).unwrap();
        let lhs = inner_product(&combo, &g).unwrap();
        let rhs =
            a.conj() * inner_product(&f1, &g).unwrap() + b.conj() * inner_product(&f2, &g).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        // conjugate symmetry
        let gf = inner_product(&g, &f1).unwrap();
        let fg = inner_product(&f1, &g).unwrap();
        assert!((fg - gf.conj()).norm() < 1e-14);
        let other = Grid1D::new(-1.0, 1.0, 65).unwrap();
        assert!(inner_product(&f1, &random_wave(&other, &mut rng)).is_err());
    }

    #[test]
    fn normalization() {
        let grid = Grid1D::new(0.0, 2.0, 201).unwrap();
        let flat = WaveFunction::from_real_fn(grid.clone(), |_| 1.0);
        let normed = normalize(&flat).unwrap();
        assert!(rel(normed.values[50].re, 1.0 / 2.0f64.sqrt()) < 1e-12);
        assert!((normed.norm_sq() - 1.0).abs() < 1e-12);

        // A sin(nπx/L) normalizes to amplitude √(2/L)
        let grid = Grid1D::new(0.0, 3.0, 3001).unwrap();
        let raw = WaveFunction::from_real_fn(grid.clone(), |x| 5.0 * (2.0 * PI * x / 3.0).sin());
        let normed = normalize(&raw).unwrap();
        let peak = normed.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(rel(peak, (2.0f64 / 3.0).sqrt()) < 1e-4);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = random_wave(&grid, &mut rng);
        let once = normalize(&w).unwrap();
        let twice = normalize(&once).unwrap();
        for (a, b) in once.values.iter().zip(&twice.values) {
            assert!((a - b).norm() < 1e-14);
        }
        let zero = WaveFunction::from_real_fn(grid, |_| 0.0);
        assert!(matches!(normalize(&zero), Err(QmError::ZeroNorm)));
    }

    #[test]
    fn derivative_eigenfunction() {
        let grid = Grid1D::new(0.0, 1.0, 2001).unwrap();
        let psi = WaveFunction::from_real_fn(grid, |x| (7.0 * x).exp());
        let d = GridOperator::Derivative.apply(&psi).unwrap();
        for i in 200..1800 {
            assert!(rel(d.values[i].re, 7.0 * psi.values[i].re) < 1e-5);
        }
    }

    #[test]
    fn position_and_parity_operators() {
        let grid = Grid1D::new(-1.0, 1.0, 201).unwrap();
        let psi = WaveFunction::from_real_fn(grid.clone(), |x| x * x - 0.5);
        let xpsi = GridOperator::Position.apply(&psi).unwrap();
        for i in 0..grid.len() {
            let x = grid.point(i);
            assert!((xpsi.values[i].re - x * psi.values[i].re).abs() < 1e-14);
        }
        let odd = WaveFunction::from_real_fn(grid, |x| x);
        let reflected = GridOperator::Parity.apply(&odd).unwrap();
        for (r, v) in reflected.values.iter().zip(&odd.values) {
            assert!((r + v).norm() < 1e-12);
        }
        let asym = Grid1D::new(0.0, 1.0, 11).unwrap();
        let f = WaveFunction::from_real_fn(asym, |x| x);
        assert!(GridOperator::Parity.apply(&f).is_err());
    }

    #[test]
    fn operator_linearity() {
        let grid = Grid1D::new(-2.0, 2.0, 401).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = random_wave(&grid, &mut rng);
        let a = Complex64::new(0.5, 0.25);
        let combined = GridOperator::Position
            .scaled(a)
            .plus(GridOperator::SecondDerivative);
        let lhs = combined.apply(&f).unwrap();
        let rhs = GridOperator::Position
            .apply(&f)
            .unwrap()
            .scaled(a)
            .add(&GridOperator::SecondDerivative.apply(&f).unwrap())
            .unwrap();
        for (x, y) in lhs.values.iter().zip(&rhs.values) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn canonical_commutators() {
        let grid = Grid1D::new(-4.0, 4.0, 4001).unwrap();
        // [X, D] x² = −x² in the interior
        let f = WaveFunction::from_real_fn(grid.clone(), |x| x * x);
        let c = commutator_apply(&GridOperator::Position, &GridOperator::Derivative, &f).unwrap();
        // truncation of D on x³ is exactly dx²
        for i in 400..3600 {
            assert!((c.values[i].re + f.values[i].re).abs() < 1e-5);
        }
        // [X, P] = iħ on a smooth packet
        let hbar = 0.7;
        let packet = WaveFunction::from_fn(grid.clone(), |x| {
            Complex64::new(0.0, 1.3 * x).exp() * (-x * x / 2.0).exp()
        });
        let c = commutator_apply(
            &GridOperator::Position,
            &GridOperator::Momentum { hbar },
            &packet,
        )
        .unwrap();
        for i in 500..3500 {
            let expected = Complex64::new(0.0, hbar) * packet.values[i];
            assert!((c.values[i] - expected).norm() < 1e-4);
        }
        // multiplications commute
        let xs: Vec<Complex64> = grid
            .points()
            .iter()
            .map(|&x| Complex64::new(x * x, 0.0))
            .collect();
        let c = commutator_apply(
            &GridOperator::Position,
            &GridOperator::Multiply(xs),
            &packet,
        )
        .unwrap();
        assert!(c.values.iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn hamiltonian_stencil_values() {
        let grid = Grid1D::new(0.0, 2.0, 5).unwrap(); // dx = 0.5
        let v = vec![0.0; 5];
        let h = assemble_hamiltonian(&grid, &v, 1.0, 1.0).unwrap();
        for &d in h.diag() {
            assert!((d - 4.0).abs() < 1e-14);
        }
        for &o in h.off_diag() {
            assert!((o + 2.0).abs() < 1e-14);
        }
        assert!(assemble_hamiltonian(&grid, &v[..4], 1.0, 1.0).is_err());
        let bad = vec![0.0, f64::INFINITY, 0.0, 0.0, 0.0];
        assert!(assemble_hamiltonian(&grid, &bad, 1.0, 1.0).is_err());
    }

    #[test]
    fn hamiltonian_hermitian_under_inner_product() {
        let grid = Grid1D::new(-3.0, 3.0, 301).unwrap();
        let v: Vec<f64> = grid.points().iter().map(|&x| 0.5 * x * x).collect();
        let h = assemble_hamiltonian(&grid, &v, 1.0, 1.0)
            .unwrap()
            .operator();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            // hard walls: random states vanish at the boundary points
            let mut f = random_wave(&grid, &mut rng);
            let mut g = random_wave(&grid, &mut rng);
            let n = grid.len();
            f.values[0] = Complex64::ZERO;
            f.values[n - 1] = Complex64::ZERO;
            g.values[0] = Complex64::ZERO;
            g.values[n - 1] = Complex64::ZERO;
            let hf_g = inner_product(&h.apply(&f).unwrap(), &g).unwrap();
            let f_hg = inner_product(&f, &h.apply(&g).unwrap()).unwrap();
            assert!((hf_g - f_hg).norm() < 1e-9 * f.norm() * g.norm());
        }
    }

    #[test]
    fn momentum_hermitian_for_packets() {
        let grid = Grid1D::new(-10.0, 10.0, 1001).unwrap();
        let p = GridOperator::Momentum { hbar: 1.0 };
        let f = WaveFunction::from_fn(grid.clone(), |x| {
            Complex64::new(0.0, 0.8 * x).exp() * (-x * x / 2.0).exp()
        });
        let g = WaveFunction::from_fn(grid, |x| {
            Complex64::new(0.0, -1.2 * x).exp() * (-(x - 1.0) * (x - 1.0) / 3.0).exp()
        });
        let pf_g = inner_product(&p.apply(&f).unwrap(), &g).unwrap();
        let f_pg = inner_product(&f, &p.apply(&g).unwrap()).unwrap();
        assert!((pf_g - f_pg).norm() < 1e-6);
    }

    #[test]
    fn box_spectrum_converges() {
        let grid = Grid1D::new(0.0, 1.0, 2001).unwrap();
        let v = vec![0.0; grid.len()];
        let h = assemble_hamiltonian(&grid, &v, 1.0, 1.0).unwrap();
        let spectrum = solve_eigen(&h, 5).unwrap();
        for (i, &e) in spectrum.energies.iter().enumerate() {
            let n = (i + 1) as f64;
            let exact = n * n * PI * PI / 2.0;
            assert!(rel(e, exact) < 1e-3, "E_{} = {e}, exact {exact}", i + 1);
        }
        // orthonormality of the eigenvectors under the grid inner product
        for i in 0..spectrum.len() {
            for j in 0..spectrum.len() {
                let ip = inner_product(&spectrum.state(i), &spectrum.state(j))
                    .unwrap()
                    .re;
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expected).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn oscillator_spectrum() {
        let grid = Grid1D::new(-12.0, 12.0, 4001).unwrap();
        let v: Vec<f64> = grid.points().iter().map(|&x| 0.5 * x * x).collect();
        let h = assemble_hamiltonian(&grid, &v, 1.0, 1.0).unwrap();
        let spectrum = solve_eigen(&h, 2).unwrap();
        assert!(rel(spectrum.energies[0], 0.5) < 1e-3);
        assert!(rel(spectrum.energies[1], 1.5) < 1e-3);
    }

    #[test]
    fn electron_in_10nm_box() {
        let c = crate::quanta::PhysicalConstants::si();
        let l = 10e-9;
        let grid = Grid1D::new(0.0, l, 2001).unwrap();
        let v = vec![0.0; grid.len()];
        let h = assemble_hamiltonian(&grid, &v, c.m_e, c.hbar).unwrap();
        let spectrum = solve_eigen(&h, 2).unwrap();
        let e2_ev = spectrum.energies[1] / c.ev;
        assert!(rel(e2_ev, 1.51e-2) < 5e-3);
    }

    #[test]
    fn spectrum_shift_by_constant() {
        let grid = Grid1D::new(0.0, 1.0, 301).unwrap();
        let v0 = vec![0.0; grid.len()];
        let c = 7.5;
        let vc = vec![c; grid.len()];
        let s0 = solve_eigen(&assemble_hamiltonian(&grid, &v0, 1.0, 1.0).unwrap(), 4).unwrap();
        let sc = solve_eigen(&assemble_hamiltonian(&grid, &vc, 1.0, 1.0).unwrap(), 4).unwrap();
        for i in 0..4 {
            assert!((sc.energies[i] - s0.energies[i] - c).abs() < 1e-10);
            for (a, b) in sc.state_values(i).iter().zip(s0.state_values(i)) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn convergence_is_second_order() {
        let exact = PI * PI / 2.0;
        let mut errors = Vec::new();
        for n in [251usize, 501] {
            let grid = Grid1D::new(0.0, 1.0, n).unwrap();
            let v = vec![0.0; n];
            let s = solve_eigen(&assemble_hamiltonian(&grid, &v, 1.0, 1.0).unwrap(), 1).unwrap();
            errors.push((s.energies[0] - exact).abs());
        }
        let ratio = errors[0] / errors[1];
        assert!((3.2..4.8).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn truncation_warning_for_tight_domains() {
        // oscillator states fit [-12, 12] but not [-3, 3]
        let wide = Grid1D::new(-12.0, 12.0, 1201).unwrap();
        let v: Vec<f64> = wide.points().iter().map(|&x| 0.5 * x * x).collect();
        let s = solve_eigen(&assemble_hamiltonian(&wide, &v, 1.0, 1.0).unwrap(), 3).unwrap();
        assert!(s.domain_contains_states());
        let tight = Grid1D::new(-3.0, 3.0, 301).unwrap();
        let v: Vec<f64> = tight.points().iter().map(|&x| 0.5 * x * x).collect();
        let s = solve_eigen(&assemble_hamiltonian(&tight, &v, 1.0, 1.0).unwrap(), 3).unwrap();
        assert!(!s.domain_contains_states());
        assert!(s.boundary_amplitude(2) > 1e-6);
    }

    #[test]
    fn too_many_states_rejected() {
        let grid = Grid1D::new(0.0, 1.0, 10).unwrap();
        let v = vec![0.0; 10];
        let h = assemble_hamiltonian(&grid, &v, 1.0, 1.0).unwrap();
        assert!(solve_eigen(&h, 9).is_err());
        assert!(solve_eigen(&h, 8).is_ok());
    }

    #[test]
    fn evolution_phases() {
        let grid = Grid1D::new(-12.0, 12.0, 1201).unwrap();
        let v: Vec<f64> = grid.points().iter().map(|&x| 0.5 * x * x).collect();
        let h = assemble_hamiltonian(&grid, &v, 1.0, 1.0).unwrap();
        let spectrum = solve_eigen(&h, 3).unwrap();

        // single eigenstate keeps |ψ| pointwise
        let single = evolve(&spectrum, &[Complex64::ONE], 3.7).unwrap();
        for (a, b) in single.values.iter().zip(&spectrum.state(0).values) {
            assert!((a.norm() - b.norm()).abs() < 1e-12);
        }

        // equal mix of |0> and |1>: <H> stays (E0+E1)/2 = ħω
        let c = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
        let hop = spectrum.hamiltonian_operator();
        for t in [0.0, 0.4, 2.9] {
            let psi = evolve(&spectrum, &[c, c], t).unwrap();
            let mean_e = expectation(&hop, &psi).unwrap().re;
            assert!(rel(mean_e, 0.5 * (spectrum.energies[0] + spectrum.energies[1])) < 1e-9);
            assert!(rel(mean_e, 1.0) < 1e-3);
            // norm conservation
            assert!((psi.norm() - 1.0).abs() < 1e-12);
        }

        // t = 0 reconstructs the plain sum
        let psi0 = evolve(&spectrum, &[c, c], 0.0).unwrap();
        let direct = spectrum
            .state(0)
            .scaled(c)
            .add(&spectrum.state(1).scaled(c))
            .unwrap();
        for (a, b) in psi0.values.iter().zip(&direct.values) {
            assert!((a - b).norm() < 1e-14);
        }

        assert!(evolve(&spectrum, &[c; 4], 0.0).is_err());
    }

    #[test]
    fn expectation_values() {
        // symmetric states have <X> = 0
        let grid = Grid1D::new(-6.0, 6.0, 1201).unwrap();
        let gauss = WaveFunction::from_real_fn(grid.clone(), |x| (-x * x / 2.0).exp());
        assert!(
            expectation(&GridOperator::Position, &gauss)
                .unwrap()
                .re
                .abs()
                < 1e-10
        );

        // eigenstate sandwich gives the eigenvalue
        let v = vec![0.0; 501];
        let bgrid = Grid1D::new(0.0, 1.0, 501).unwrap();
        let h = assemble_hamiltonian(&bgrid, &v, 1.0, 1.0).unwrap();
        let s = solve_eigen(&h, 2).unwrap();
        let e = expectation(&s.hamiltonian_operator(), &s.state(1))
            .unwrap()
            .re;
        assert!(rel(e, s.energies[1]) < 1e-8);

        // box ground state: <X> = L/2
        let psi1 = box_state(&bgrid, 1, 1.0);
        let x = expectation(&GridOperator::Position, &psi1).unwrap().re;
        assert!(rel(x, 0.5) < 1e-8);
    }

    #[test]
    fn uncertainties() {
        // Gaussian probability density with σ = 1: |ψ|² = exp(-x²/2)/√(2π)
        let grid = Grid1D::new(-10.0, 10.0, 2001).unwrap();
        let psi = normalize(&WaveFunction::from_real_fn(grid, |x| (-x * x / 4.0).exp())).unwrap();
        let dx = uncertainty(&GridOperator::Position, &psi).unwrap();
        assert!(rel(dx, 1.0) < 1e-3);

        // uniform on [-1/2, 1/2]: Var(x) = 1/12
        let ugrid = Grid1D::new(-0.5, 0.5, 4001).unwrap();
        let uniform = normalize(&WaveFunction::from_real_fn(ugrid, |_| 1.0)).unwrap();
        let var = variance(&GridOperator::Position, &uniform).unwrap();
        assert!(rel(var, 1.0 / 12.0) < 1e-4);

        // narrow spike: ΔX shrinks with the width
        let sgrid = Grid1D::new(-1.0, 1.0, 8001).unwrap();
        let widths = [0.1, 0.01];
        let mut deltas = Vec::new();
        for w in widths {
            let spike = normalize(&WaveFunction::from_real_fn(sgrid.clone(), |x| {
                (-x * x / (2.0 * w * w)).exp()
            }))
            .unwrap();
            deltas.push(uncertainty(&GridOperator::Position, &spike).unwrap());
        }
        assert!(deltas[1] < 0.2 * deltas[0]);
    }

    #[test]
    fn probability_currents() {
        let grid = Grid1D::new(0.0, 20.0, 2001).unwrap();
        let (amp, k, mass, hbar) = (1.3, 2.0, 1.5, 1.0);
        let wave = WaveFunction::from_fn(grid.clone(), |x| amp * Complex64::new(0.0, k * x).exp());
        let j = probability_current(&wave, mass, hbar);
        let expected = hbar * k * amp * amp / mass;
        // central differences bias the plane-wave current by (k dx)²/6
        for ji in &j[100..1900] {
            assert!(rel(*ji, expected) < 1e-4);
        }
        // real-valued ψ carries no current
        let real = WaveFunction::from_real_fn(grid, |x| (k * x).sin());
        assert!(probability_current(&real, mass, hbar)
            .iter()
            .all(|j| j.abs() < 1e-12));
    }

    #[test]
    fn interval_probabilities() {
        let grid = Grid1D::new(0.0, 1.0, 2001).unwrap();
        let psi1 = box_state(&grid, 1, 1.0);
        let whole = position_probability(&psi1, 0.0, 1.0).unwrap();
        assert!((whole.probability - 1.0).abs() < 1e-6);
        assert!(!whole.clipped);
        let half = position_probability(&psi1, 0.0, 0.5).unwrap();
        assert!(rel(half.probability, 0.5) < 1e-6);
        let quarter = position_probability(&psi1, 0.0, 0.25).unwrap();
        assert!(rel(quarter.probability, 0.25 - (0.5 * PI).sin() / (2.0 * PI)) < 1e-5);
        assert!(rel(quarter.probability, 0.0908) < 1e-2);
        let outside = position_probability(&psi1, -1.0, 2.0).unwrap();
        assert!(outside.clipped);
        assert!((outside.probability - 1.0).abs() < 1e-6);
        assert!(position_probability(&psi1, 0.5, 0.5).is_err());
    }

    #[test]
    fn ehrenfest_theorem() {
        let grid = Grid1D::new(-12.0, 12.0, 1601).unwrap();
        let v: Vec<f64> = grid.points().iter().map(|&x| 0.5 * x * x).collect();
        let h = assemble_hamiltonian(&grid, &v, 1.0, 1.0).unwrap();
        let spectrum = solve_eigen(&h, 2).unwrap();
        let c = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);

        // identity: both sides vanish (norm conservation)
        let id = ehrenfest_check(&spectrum, &[c, c], &GridOperator::Identity, 0.3, 1e-4).unwrap();
        assert!(id.lhs.abs() < 1e-8 && id.rhs.abs() < 1e-10);

        // energy conservation: [H, H] = 0
        let hh = ehrenfest_check(
            &spectrum,
            &[c, c],
            &spectrum.hamiltonian_operator(),
            0.3,
            1e-4,
        )
        .unwrap();
        assert!(hh.lhs.abs() < 1e-6 && hh.rhs.abs() < 1e-6);

        // position on the (|0>+|1>)/√2 superposition
        let x = ehrenfest_check(&spectrum, &[c, c], &GridOperator::Position, 0.3, 1e-4).unwrap();
        assert!(rel(x.lhs, x.rhs) < 1e-4, "lhs {} rhs {}", x.lhs, x.rhs);
    }

    #[test]
    fn parity_decomposition() {
        let grid = Grid1D::new(-5.0, 5.0, 1001).unwrap();
        let a = 2.0;
        let psi = WaveFunction::from_fn(grid.clone(), |x| Complex64::new(0.0, a * x).exp());
        let split = parity_split(&psi).unwrap();
        for (i, &x) in grid.points().iter().enumerate() {
            let even_exp = Complex64::new((a * x).cos(), 0.0);
            let odd_exp = Complex64::new(0.0, (a * x).sin());
            assert!((split.even.values[i] - even_exp).norm() < 1e-10);
            assert!((split.odd.values[i] - odd_exp).norm() < 1e-10);
        }
        // even + odd = ψ and R(even) = even, R(odd) = −odd
        let back = split.even.add(&split.odd).unwrap();
        for (x, y) in back.values.iter().zip(&psi.values) {
            assert!((x - y).norm() < 1e-14);
        }
        let r_even = GridOperator::Parity.apply(&split.even).unwrap();
        let r_odd = GridOperator::Parity.apply(&split.odd).unwrap();
        for i in 0..grid.len() {
            assert!((r_even.values[i] - split.even.values[i]).norm() < 1e-12);
            assert!((r_odd.values[i] + split.odd.values[i]).norm() < 1e-12);
        }

        // an even input has no odd part
        let even_in = WaveFunction::from_real_fn(grid.clone(), |x| (x * x).cos());
        let s = parity_split(&even_in).unwrap();
        assert!(s.odd.values.iter().all(|v| v.norm() < 1e-13));

        // [R, D²] = 0 for smooth functions (mirror-symmetric stencils)
        let smooth = WaveFunction::from_real_fn(grid, |x| (-x * x / 3.0).exp() * (1.3 * x).sin());
        let c = commutator_apply(
            &GridOperator::Parity,
            &GridOperator::SecondDerivative,
            &smooth,
        )
        .unwrap();
        assert!(c.values.iter().all(|v| v.norm() < 1e-9));
    }
}
