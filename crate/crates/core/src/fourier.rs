//! Fourier series, the momentum representation ψ(p) with its 1/√(2πħ)
//! convention, delta-function approximants and completeness checks.
//!
//! The transform is a direct trapezoid quadrature of the defining integral,
//! O(N·M); fast enough at desk scale and bit-faithful to the convention.
//! Periods other than 2π for the series are rescaled by the caller.

use crate::error::{QmError, Result};
use crate::gridops::{inner_product, Grid1D, WaveFunction};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Truncated Fourier series f(x) ≈ a₀/2 + Σ aₙcos(nx) + bₙsin(nx) over a
/// 2π period.
#[derive(Debug, Clone)]
pub struct FourierSeries {
    pub a0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl FourierSeries {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn reconstruct(&self, x: f64) -> f64 {
        let mut s = 0.5 * self.a0;
        for (n, (&an, &bn)) in self.a.iter().zip(&self.b).enumerate() {
            let nf = (n + 1) as f64;
            s += an * (nf * x).cos() + bn * (nf * x).sin();
        }
        s
    }
}

/// Coefficients aₖ = (1/π)∫f cos(kx)dx, bₖ likewise with sin, from `samples`
/// at the N uniform points x_j = −π + 2πj/N of one period.
pub fn fourier_series(samples: &[f64], k_max: usize) -> Result<FourierSeries> {
    let n = samples.len();
    if n < 8 * k_max.max(1) {
        return Err(QmError::Resolution(format!(
            "need at least {} samples for order {k_max}, got {n}",
            8 * k_max.max(1)
        )));
    }
    let dx = TAU / n as f64;
    let mut a = vec![0.0; k_max];
    let mut b = vec![0.0; k_max];
    let mut a0 = 0.0;
    for (j, &f) in samples.iter().enumerate() {
        let x = -PI + j as f64 * dx;
        a0 += f;
        for k in 1..=k_max {
            let kx = k as f64 * x;
            a[k - 1] += f * kx.cos();
            b[k - 1] += f * kx.sin();
        }
    }
    let w = dx / PI;
    for v in a.iter_mut().chain(b.iter_mut()) {
        *v *= w;
    }
    Ok(FourierSeries { a0: a0 * w, a, b })
}

/// Momentum-space samples ψ(p) on a uniform grid symmetric about p = 0.
#[derive(Debug, Clone)]
pub struct MomentumWaveFunction {
    pub p: Vec<f64>,
    pub values: Vec<Complex64>,
    pub hbar: f64,
}

impl MomentumWaveFunction {
    pub fn dp(&self) -> f64 {
        self.p[1] - self.p[0]
    }

    /// Σ|ψ(p)|² dp under the trapezoid rule.
    pub fn norm_sq(&self) -> f64 {
        let n = self.values.len();
        let mut s = 0.5 * (self.values[0].norm_sqr() + self.values[n - 1].norm_sqr());
        for v in &self.values[1..n - 1] {
            s += v.norm_sqr();
        }
        s * self.dp()
    }

    /// ⟨p⟩ over the density |ψ(p)|²/‖ψ‖².
    pub fn mean_momentum(&self) -> f64 {
        self.moment(1) / self.norm_sq()
    }

    /// Δp = √(⟨p²⟩ − ⟨p⟩²).
    pub fn momentum_uncertainty(&self) -> f64 {
        let norm = self.norm_sq();
        let mean = self.moment(1) / norm;
        (self.moment(2) / norm - mean * mean).max(0.0).sqrt()
    }

    fn moment(&self, power: i32) -> f64 {
        let n = self.values.len();
        let term = |i: usize| self.p[i].powi(power) * self.values[i].norm_sqr();
        let mut s = 0.5 * (term(0) + term(n - 1));
        for i in 1..n - 1 {
            s += term(i);
        }
        s * self.dp()
    }
}

/// ψ(p) = (1/√(2πħ)) ∫ ψ(x) e^{−ipx/ħ} dx by trapezoid quadrature, on a
/// momentum grid spanning ±πħ/dx with as many points as the spatial grid.
pub fn fourier_transform(psi: &WaveFunction, hbar: f64) -> MomentumWaveFunction {
    let n = psi.grid.len();
    let dx = psi.grid.dx();
    let x0 = psi.grid.x_min();
    let p_max = PI * hbar / dx;
    let dp = 2.0 * p_max / (n - 1) as f64;
    let prefactor = dx / (TAU * hbar).sqrt();

    let mut p_grid = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let p = -p_max + i as f64 * dp;
        p_grid.push(p);
        // e^{−ip x_j/ħ} advanced by complex multiplication along the row
        let step = Complex64::new(0.0, -p * dx / hbar).exp();
        let mut phase = Complex64::new(0.0, -p * x0 / hbar).exp();
        let mut acc = Complex64::ZERO;
        for (j, v) in psi.values.iter().enumerate() {
            let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
            acc += w * v * phase;
            phase *= step;
        }
        values.push(prefactor * acc);
    }
    MomentumWaveFunction {
        p: p_grid,
        values,
        hbar,
    }
}

/// ψ(x) = (1/√(2πħ)) ∫ ψ(p) e^{+ipx/ħ} dp on the supplied spatial grid.
pub fn inverse_fourier_transform(phi: &MomentumWaveFunction, grid: &Grid1D) -> WaveFunction {
    let m = phi.values.len();
    let dp = phi.dp();
    let hbar = phi.hbar;
    let prefactor = dp / (TAU * hbar).sqrt();
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let x = grid.point(i);
        let step = Complex64::new(0.0, x * dp / hbar).exp();
        let mut phase = Complex64::new(0.0, x * phi.p[0] / hbar).exp();
        let mut acc = Complex64::ZERO;
        for (j, v) in phi.values.iter().enumerate() {
            let w = if j == 0 || j == m - 1 { 0.5 } else { 1.0 };
            acc += w * v * phase;
            phase *= step;
        }
        values.push(prefactor * acc);
    }
    WaveFunction {
        grid: grid.clone(),
        values,
    }
}

/// Closed form of the box-state momentum representation
/// ψₙ(p) = (1/2i)√(1/πħL)·[(e^{ic₁L}−1)/(ic₁) − (e^{ic₂L}−1)/(ic₂)]
/// with c₁ = −p/ħ + nπ/L and c₂ = −p/ħ − nπ/L; the removable singularities
/// at c₁, c₂ = 0 go through a series limit.
pub fn box_momentum_rep(n: u32, length: f64, p: f64, hbar: f64) -> Result<Complex64> {
    if n < 1 || length <= 0.0 {
        return Err(QmError::Domain(
            "box momentum representation needs n >= 1 and L > 0".into(),
        ));
    }
    let c1 = -p / hbar + n as f64 * PI / length;
    let c2 = -p / hbar - n as f64 * PI / length;
    let bracket = phase_integral(c1, length) - phase_integral(c2, length);
    let amp = (1.0 / (PI * hbar * length)).sqrt();
    Ok(bracket * amp / Complex64::new(0.0, 2.0))
}

/// ∫₀^L e^{icx} dx = (e^{icL} − 1)/(ic), with the c → 0 limit L(1 + icL/2 − …).
fn phase_integral(c: f64, length: f64) -> Complex64 {
    let z = c * length;
    if z.abs() < 1e-6 {
        let iz = Complex64::new(0.0, z);
        length * (Complex64::ONE + iz / 2.0 + iz * iz / 6.0 + iz * iz * iz / 24.0)
    } else {
        (Complex64::new(0.0, z).exp() - 1.0) / Complex64::new(0.0, c)
    }
}

/// The kernel 2 sin(Ky)/y of the truncated plane-wave integral; its y → 0
/// value is 2K and (1/2π)∫ of it tends to 1 as K grows.
pub fn dirichlet_kernel(k: f64, y: f64) -> f64 {
    if (k * y).abs() < 1e-8 {
        let z = k * y;
        2.0 * k * (1.0 - z * z / 6.0)
    } else {
        2.0 * (k * y).sin() / y
    }
}

/// Rectangle approximant χₙ of the delta function: height ≈ n over width
/// ≈ 1/n, edges snapped to grid nodes so the trapezoid integral is exactly 1.
pub fn delta_approximant(grid: &Grid1D, n: u32) -> Result<WaveFunction> {
    if n < 1 {
        return Err(QmError::Domain("delta approximant needs n >= 1".into()));
    }
    if !grid.is_symmetric() {
        return Err(QmError::Domain(
            "delta approximant needs a grid symmetric about the origin".into(),
        ));
    }
    let dx = grid.dx();
    let half_width = 0.5 / n as f64;
    let lo = ((-half_width - grid.x_min()) / dx).round() as usize;
    let hi = ((half_width - grid.x_min()) / dx).round() as usize;
    if hi <= lo || hi - lo < 8 {
        return Err(QmError::Resolution(format!(
            "grid resolves the width 1/{n} rectangle with only {} cells (need >= 8)",
            hi.saturating_sub(lo)
        )));
    }
    // all rectangle samples sit at interior grid points with unit trapezoid
    // weight, so h·dx·(hi−lo+1) = 1 makes the integral exact
    let height = 1.0 / (dx * (hi - lo + 1) as f64);
    let mut values = vec![Complex64::ZERO; grid.len()];
    for v in values.iter_mut().take(hi + 1).skip(lo) {
        *v = Complex64::new(height, 0.0);
    }
    WaveFunction::new(grid.clone(), values)
}

/// ‖test − Σᵢ ⟨basisᵢ|test⟩ basisᵢ‖: how much of `test` escapes the span of
/// an orthonormal basis.
pub fn completeness_residual(basis: &[WaveFunction], test: &WaveFunction) -> Result<f64> {
    let mut residual = test.clone();
    for b in basis {
        let c = inner_product(b, test)?;
        residual = residual.add(&b.scaled(-c))?;
    }
    Ok(residual.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::box_state;
    use crate::gridops::{normalize, uncertainty, GridOperator};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn gaussian_packet(grid: &Grid1D, sigma: f64, x0: f64, k0: f64) -> WaveFunction {
        normalize(&WaveFunction::from_fn(grid.clone(), |x| {
            Complex64::new(0.0, k0 * x).exp() * (-(x - x0) * (x - x0) / (4.0 * sigma * sigma)).exp()
        }))
        .unwrap()
    }

    #[test]
    fn square_wave_series() {
        let n = 4096;
        let samples: Vec<f64> = (0..n)
            .map(|j| {
                let x = -PI + TAU * j as f64 / n as f64;
                if x == 0.0 || x == -PI {
                    0.0
                } else if x < 0.0 {
                    -1.0
                } else {
                    1.0
                }
            })
            .collect();
        let series = fourier_series(&samples, 8).unwrap();
        // bₖ = (2/πk)(1 − cos kπ): 4/πk for odd k, 0 for even
        assert!(rel(series.b[0], 4.0 / PI) < 1e-4);
        assert!(rel(series.b[2], 4.0 / (3.0 * PI)) < 1e-4);
        for k in [1usize, 3, 5, 7] {
            assert!(series.b[k].abs() < 1e-6, "b_{} = {}", k + 1, series.b[k]);
        }
        assert!(series.a0.abs() < 1e-6);
        for ak in &series.a {
            assert!(ak.abs() < 1e-6);
        }
    }

    #[test]
    fn series_orthogonality_and_dc() {
        let n = 1024;
        let sin3: Vec<f64> = (0..n)
            .map(|j| (3.0 * (-PI + TAU * j as f64 / n as f64)).sin())
            .collect();
        let series = fourier_series(&sin3, 5).unwrap();
        assert!(rel(series.b[2], 1.0) < 1e-10);
        for (k, bk) in series.b.iter().enumerate() {
            if k != 2 {
                assert!(bk.abs() < 1e-10);
            }
        }
        let flat = vec![1.0; 64];
        let series = fourier_series(&flat, 3).unwrap();
        assert!(rel(0.5 * series.a0, 1.0) < 1e-12);
        assert!(fourier_series(&flat, 9).is_err());
    }

    #[test]
    fn series_reconstruction_improves_with_order() {
        // sawtooth f(x) = x on (−π, π)
        let n = 2048;
        let samples: Vec<f64> = (0..n).map(|j| -PI + TAU * j as f64 / n as f64).collect();
        let mut errors = Vec::new();
        for k in [4usize, 16, 64] {
            let series = fourier_series(&samples, k).unwrap();
            let err: f64 = (0..200)
                .map(|i| {
                    let x = -2.5 + 5.0 * i as f64 / 199.0;
                    (series.reconstruct(x) - x).abs()
                })
                .fold(0.0, f64::max);
            errors.push(err);
        }
        assert!(errors[0] > errors[1] && errors[1] > errors[2]);
    }

    #[test]
    fn gaussian_transform_pair() {
        let grid = Grid1D::new(-25.0, 25.0, 1501).unwrap();
        for sigma in [0.5, 1.0, 2.0] {
            let psi = gaussian_packet(&grid, sigma, 0.0, 0.0);
            let phi = fourier_transform(&psi, 1.0);
            let fitted = phi.momentum_uncertainty();
            assert!(rel(fitted, 0.5 / sigma) < 1e-2, "sigma={sigma}: {fitted}");
            // Parseval
            assert!((phi.norm_sq() - psi.norm_sq()).abs() < 1e-6);
            // ΔXΔP = ħ/2 for the Gaussian
            let dx = uncertainty(&GridOperator::Position, &psi).unwrap();
            assert!(rel(dx * fitted, 0.5) < 1e-2);
        }
    }

    #[test]
    fn round_trip_reconstructs_packet() {
        let grid = Grid1D::new(-20.0, 20.0, 1001).unwrap();
        let psi = gaussian_packet(&grid, 1.3, 0.7, -2.0);
        let phi = fourier_transform(&psi, 1.0);
        let back = inverse_fourier_transform(&phi, &grid);
        let max_err = psi
            .values
            .iter()
            .zip(&back.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(max_err < 1e-6, "round trip error {max_err}");
    }

    #[test]
    fn momentum_shift_theorem() {
        let grid = Grid1D::new(-25.0, 25.0, 1201).unwrap();
        let base = gaussian_packet(&grid, 1.0, 0.0, 0.0);
        let p0 = 1.5;
        let shifted = WaveFunction::from_fn(grid.clone(), |x| {
            Complex64::new(0.0, p0 * x).exp()
                * base.values[((x - grid.x_min()) / grid.dx()).round() as usize]
        });
        let phi0 = fourier_transform(&base, 1.0);
        let phi1 = fourier_transform(&shifted, 1.0);
        assert!((phi1.mean_momentum() - phi0.mean_momentum() - p0).abs() < 1e-9);
    }

    #[test]
    fn rectangle_transforms_to_sinc() {
        let grid = Grid1D::new(-8.0, 8.0, 4097).unwrap();
        let n = 4u32;
        let chi = delta_approximant(&grid, n).unwrap();
        let phi = fourier_transform(&normalize(&chi).unwrap(), 1.0);
        // |ψ(p)| of a centered rectangle follows |sin(pw/2)/(pw/2)|; the
        // snapped width is 1/height since the rectangle integrates to 1
        let w = 1.0 / chi.values[grid.len() / 2].re;
        let center = phi.values[phi.p.len() / 2].norm();
        for (i, &p) in phi.p.iter().enumerate() {
            if p.abs() > 60.0 {
                continue;
            }
            let arg = 0.5 * p * w;
            let sinc = if arg.abs() < 1e-12 {
                1.0
            } else {
                arg.sin() / arg
            };
            assert!(
                (phi.values[i].norm() - center * sinc.abs()).abs() < 2e-2 * center,
                "p={p}"
            );
        }
    }

    #[test]
    fn box_momentum_representation() {
        let value = box_momentum_rep(1, 1.0, 0.0, 1.0).unwrap();
        let expected = 2.0 / PI * PI.powf(-0.5);
        assert!(rel(value.norm(), expected) < 1e-12);
        assert!(rel(value.norm(), 0.3592) < 1e-3);

        // numeric-transform oracle: sampled box state, |ψ(p)| pointwise
        let grid = Grid1D::new(0.0, 1.0, 2001).unwrap();
        let sampled = box_state(1, 1.0, 1.0, 1.0).unwrap().sample(&grid);
        let phi = fourier_transform(&sampled, 1.0);
        let mut max_err = 0.0f64;
        for (i, &p) in phi.p.iter().enumerate() {
            if p.abs() > 200.0 {
                continue;
            }
            let closed = box_momentum_rep(1, 1.0, p, 1.0).unwrap();
            max_err = max_err.max((phi.values[i].norm() - closed.norm()).abs());
        }
        assert!(max_err < 1e-4, "max |ψ(p)| deviation {max_err}");

        // Parseval: ∫|ψₙ(p)|²dp = 1, quadrature over a wide p range
        let n_p = 40_000;
        let p_lim = 500.0;
        let dp = 2.0 * p_lim / n_p as f64;
        let mut norm = 0.0;
        for i in 0..=n_p {
            let p = -p_lim + i as f64 * dp;
            let w = if i == 0 || i == n_p { 0.5 } else { 1.0 };
            norm += w * box_momentum_rep(2, 1.0, p, 1.0).unwrap().norm_sqr();
        }
        norm *= dp;
        assert!((norm - 1.0).abs() < 1e-4, "Parseval integral {norm}");
    }

    #[test]
    fn dirichlet_kernel_limits() {
        assert!(rel(dirichlet_kernel(5.0, 0.0), 10.0) < 1e-12);
        assert!(dirichlet_kernel(1.0, PI).abs() < 1e-12);
        // (1/2π)∫ 2sin(Ky)/y dy → 1 with growing K
        let mut prev_err = f64::INFINITY;
        for k in [5.0, 50.0, 500.0] {
            let n = 2_000_000;
            let y_lim = 300.0;
            let dy = 2.0 * y_lim / n as f64;
            let mut s = 0.0;
            for i in 0..=n {
                let y = -y_lim + i as f64 * dy;
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                s += w * dirichlet_kernel(k, y);
            }
            let integral = s * dy / TAU;
            let err = (integral - 1.0).abs();
            assert!(err < prev_err);
            prev_err = err;
        }
        assert!(prev_err < 1e-3);
    }

    #[test]
    fn delta_approximants_integrate_to_one() {
        let grid = Grid1D::new(-2.0, 2.0, 4001).unwrap();
        for n in [1u32, 4, 16] {
            let chi = delta_approximant(&grid, n).unwrap();
            let dx = grid.dx();
            let trapz: f64 = dx
                * (0.5 * (chi.values[0].re + chi.values[grid.len() - 1].re)
                    + chi.values[1..grid.len() - 1]
                        .iter()
                        .map(|v| v.re)
                        .sum::<f64>());
            assert!((trapz - 1.0).abs() < 1e-12, "n={n}: {trapz}");
        }
        // sifting: ∫x²χₙ → 0, ∫cos(x)χ₁₆ ≈ 1
        let weighted = |f: &dyn Fn(f64) -> f64, chi: &WaveFunction| -> f64 {
            let dx = grid.dx();
            let last = grid.len() - 1;
            let s: f64 = grid
                .points()
                .iter()
                .zip(&chi.values)
                .enumerate()
                .map(|(i, (x, v))| {
                    let w = if i == 0 || i == last { 0.5 } else { 1.0 };
                    w * f(*x) * v.re
                })
                .sum();
            s * dx
        };
        let mut prev = f64::INFINITY;
        for n in [1u32, 4, 16] {
            let chi = delta_approximant(&grid, n).unwrap();
            let x2 = weighted(&|x| x * x, &chi);
            assert!(x2 < prev);
            prev = x2;
        }
        let chi16 = delta_approximant(&grid, 16).unwrap();
        let cos_int = weighted(&|x| x.cos(), &chi16);
        assert!((cos_int - 1.0).abs() < 1e-3, "{cos_int}");

        // unresolvable width errors out
        let coarse = Grid1D::new(-2.0, 2.0, 41).unwrap();
        assert!(matches!(
            delta_approximant(&coarse, 16),
            Err(QmError::Resolution(_))
        ));
    }

    #[test]
    fn completeness_of_box_states() {
        let grid = Grid1D::new(0.0, 1.0, 1601).unwrap();
        let basis: Vec<WaveFunction> = (1..=50)
            .map(|n| normalize(&box_state(n, 1.0, 1.0, 1.0).unwrap().sample(&grid)).unwrap())
            .collect();
        let target = gaussian_packet(&grid, 0.05, 0.5, 0.0);
        let residual = completeness_residual(&basis, &target).unwrap();
        assert!(residual < 1e-3, "residual {residual}");

        // a basis element reconstructs itself
        assert!(completeness_residual(&basis, &basis[3]).unwrap() < 1e-10);

        // a function orthogonal to the whole basis keeps its norm: the box
        // states are all zero at the walls, so a spike at the wall is orthogonal
        let mut spike_values = vec![Complex64::ZERO; grid.len()];
        spike_values[0] = Complex64::new(1.0, 0.0);
        let spike = WaveFunction::new(grid.clone(), spike_values).unwrap();
        let r = completeness_residual(&basis, &spike).unwrap();
        assert!(rel(r, spike.norm()) < 1e-10);
    }

    #[test]
    fn uncertainty_floor_for_random_packets() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        use rand_chacha::ChaCha8Rng;
        let grid = Grid1D::new(-30.0, 30.0, 1024).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(20260809);
        for trial in 0..100 {
            let bumps = rng.gen_range(1..=3);
            let mut psi = WaveFunction::from_real_fn(grid.clone(), |_| 0.0);
            for _ in 0..bumps {
                let sigma = rng.gen_range(0.6..2.5);
                let x0 = rng.gen_range(-5.0..5.0);
                let k0 = rng.gen_range(-3.0..3.0);
                let amp = Complex64::new(rng.gen_range(0.2..1.0), rng.gen_range(-0.5..0.5));
                let bump = WaveFunction::from_fn(grid.clone(), |x| {
                    amp * Complex64::new(0.0, k0 * x).exp()
                        * (-(x - x0) * (x - x0) / (4.0 * sigma * sigma)).exp()
                });
                psi = psi.add(&bump).unwrap();
            }
            let psi = normalize(&psi).unwrap();
            assert!(psi.boundary_leakage() < 1e-3);
            let dx = uncertainty(&GridOperator::Position, &psi).unwrap();
            let dp = fourier_transform(&psi, 1.0).momentum_uncertainty();
            assert!(
                dx * dp >= 0.5 * (1.0 - 1e-6),
                "trial {trial}: ΔXΔP = {}",
                dx * dp
            );
        }
    }
}
