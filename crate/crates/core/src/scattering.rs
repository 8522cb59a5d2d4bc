//! Stationary scattering on piecewise-constant potentials: step reflection
//! and transmission, barrier tunneling with its wide-barrier limit, a
//! general transfer-matrix solver, and finite-well bound states.
//!
//! Geometry convention: a single barrier of height V spans (−a, a), so the
//! printed "length" of a barrier is 2a and the closed forms carry 2μa.
//! The incident amplitude is normalized to A₁ = 1 throughout.

use crate::error::{QmError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Propagation character of a constant-potential region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// E > V: oscillating solutions e^{±ikx} with k = √(2m(E−V))/ħ.
    Propagating { k: f64 },
    /// E < V: damped/blowing solutions e^{±μx} with μ = √(2m(V−E))/ħ.
    Evanescent { mu: f64 },
    /// E = V: flat/linear solutions.
    Degenerate,
}

pub fn wavenumbers(e: f64, v: f64, mass: f64, hbar: f64) -> Result<Regime> {
    if mass <= 0.0 || hbar <= 0.0 {
        return Err(QmError::Domain("need positive mass and hbar".into()));
    }
    Ok(if e > v {
        Regime::Propagating {
            k: (2.0 * mass * (e - v)).sqrt() / hbar,
        }
    } else if e < v {
        Regime::Evanescent {
            mu: (2.0 * mass * (v - e)).sqrt() / hbar,
        }
    } else {
        Regime::Degenerate
    })
}

/// Outcome of a stationary scattering problem with unit incident amplitude.
#[derive(Debug, Clone)]
pub struct ScatterResult {
    pub energy: f64,
    /// Wavenumber of the incoming region.
    pub k_left: f64,
    /// Wavenumber of the outgoing region (0 when the channel is closed).
    pub k_right: f64,
    /// Reflected amplitude B₁.
    pub reflected_amplitude: Complex64,
    /// Transmitted amplitude (A₂ for the step, A₃ for the barrier).
    pub transmitted_amplitude: Complex64,
    /// Reflection probability R = |B₁|².
    pub reflection: f64,
    /// Transmission probability T = (k_right/k_left)|A|².
    pub transmission: f64,
    /// Incoming, reflected and transmitted probability currents.
    pub currents: [f64; 3],
}

/// Current of a plane wave A e^{ikx}: j = ħk|A|²/m.
pub fn plane_wave_current(amplitude: Complex64, k: f64, mass: f64, hbar: f64) -> f64 {
    hbar * k * amplitude.norm_sqr() / mass
}

/// A particle of energy E coming from the V = 0 side onto a step of height
/// `v_right` (which may be negative, a drop). Above the step
/// B₁ = (k₁−k₂)/(k₁+k₂), A₂ = 2k₁/(k₁+k₂); below it R = 1 and the
/// transmitted side holds only the evanescent tail.
pub fn step_scatter(e: f64, v_right: f64, mass: f64, hbar: f64) -> Result<ScatterResult> {
    if e <= 0.0 {
        return Err(QmError::Domain(format!(
            "incident energy must be positive, got {e}"
        )));
    }
    let k1 = (2.0 * mass * e).sqrt() / hbar;
    match wavenumbers(e, v_right, mass, hbar)? {
        Regime::Propagating { k: k2 } => {
            let b1 = (k1 - k2) / (k1 + k2);
            let a2 = 2.0 * k1 / (k1 + k2);
            let reflection = b1 * b1;
            let transmission = k2 / k1 * a2 * a2;
            let j_in = plane_wave_current(Complex64::ONE, k1, mass, hbar);
            Ok(ScatterResult {
                energy: e,
                k_left: k1,
                k_right: k2,
                reflected_amplitude: Complex64::new(b1, 0.0),
                transmitted_amplitude: Complex64::new(a2, 0.0),
                reflection,
                transmission,
                currents: [j_in, reflection * j_in, transmission * j_in],
            })
        }
        regime => {
            // E <= V: matching 1 + B = A, ik(1 − B) = −μA gives |B| = 1
            let mu = match regime {
                Regime::Evanescent { mu } => mu,
                _ => 0.0,
            };
            let ik = Complex64::new(0.0, k1);
            let b1 = (ik + mu) / (ik - mu);
            let a2 = 1.0 + b1;
            let j_in = plane_wave_current(Complex64::ONE, k1, mass, hbar);
            Ok(ScatterResult {
                energy: e,
                k_left: k1,
                k_right: 0.0,
                reflected_amplitude: b1,
                transmitted_amplitude: a2,
                reflection: 1.0,
                transmission: 0.0,
                currents: [j_in, j_in, 0.0],
            })
        }
    }
}

/// Tunneling through a barrier of height V on (−a, a). Below the barrier
/// T = (2k/μ)² / [(1−k²/μ²)² sinh²(2μa) + (2k/μ)² cosh²(2μa)]; above it the
/// continuation μ → ik₂ turns sinh/cosh into sin/cos. E = V goes through the
/// κ → 0 limit T = 1/(1 + (ka)²).
pub fn barrier_transmission(
    e: f64,
    v: f64,
    half_width: f64,
    mass: f64,
    hbar: f64,
) -> Result<ScatterResult> {
    if e <= 0.0 {
        return Err(QmError::Domain(format!(
            "incident energy must be positive, got {e}"
        )));
    }
    if half_width <= 0.0 {
        return Err(QmError::Domain(format!(
            "barrier half-width must be positive, got {half_width}"
        )));
    }
    let k = (2.0 * mass * e).sqrt() / hbar;
    let transmission = match wavenumbers(e, v, mass, hbar)? {
        Regime::Evanescent { mu } => {
            let s = (2.0 * mu * half_width).sinh();
            let c = (2.0 * mu * half_width).cosh();
            let r = 2.0 * k / mu;
            let q = 1.0 - (k * k) / (mu * mu);
            r * r / (q * q * s * s + r * r * c * c)
        }
        Regime::Propagating { k: k2 } => {
            let s = (2.0 * k2 * half_width).sin();
            let c = (2.0 * k2 * half_width).cos();
            let r = 2.0 * k / k2;
            let q = 1.0 + (k * k) / (k2 * k2);
            r * r / (q * q * s * s + r * r * c * c)
        }
        Regime::Degenerate => 1.0 / (1.0 + k * k * half_width * half_width),
    };
    let reflection = 1.0 - transmission;
    let j_in = plane_wave_current(Complex64::ONE, k, mass, hbar);
    Ok(ScatterResult {
        energy: e,
        k_left: k,
        k_right: k,
        reflected_amplitude: Complex64::new(reflection.sqrt(), 0.0),
        transmitted_amplitude: Complex64::new(transmission.sqrt(), 0.0),
        reflection,
        transmission,
        currents: [j_in, reflection * j_in, transmission * j_in],
    })
}

/// Wide-barrier approximation T ≈ 4 e^{−4μa}(E/V)(1 − E/V), carried in log
/// space so widths that underflow T remain meaningful.
#[derive(Debug, Clone, Copy)]
pub struct WideBarrier {
    /// The approximate transmission; 0.0 when it underflows.
    pub transmission: f64,
    pub log10_transmission: f64,
    /// Set when μa < 1 and the approximation is not trustworthy.
    pub narrow_warning: bool,
}

pub fn barrier_transmission_wide(
    e: f64,
    v: f64,
    half_width: f64,
    mass: f64,
    hbar: f64,
) -> Result<WideBarrier> {
    if e <= 0.0 || half_width <= 0.0 {
        return Err(QmError::Domain(
            "need positive energy and half-width".into(),
        ));
    }
    let mu = match wavenumbers(e, v, mass, hbar)? {
        Regime::Evanescent { mu } => mu,
        _ => {
            return Err(QmError::Domain(format!(
                "wide-barrier formula assumes E < V, got E={e}, V={v}"
            )))
        }
    };
    let prefactor = 4.0 * (e / v) * (1.0 - e / v);
    let ln_t = prefactor.ln() - 4.0 * mu * half_width;
    Ok(WideBarrier {
        transmission: ln_t.exp(),
        log10_transmission: ln_t / std::f64::consts::LN_10,
        narrow_warning: mu * half_width < 1.0,
    })
}

/// Piecewise-constant potential: `values[i]` holds on
/// (breakpoints[i−1], breakpoints[i]), with semi-infinite outer segments.
#[derive(Debug, Clone)]
pub struct PiecewisePotential {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewisePotential {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(QmError::Domain(format!(
                "{} breakpoints need {} segment values, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(QmError::Domain(
                "breakpoints must be strictly ascending".into(),
            ));
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    /// A step from 0 to `v_right` at x = 0.
    pub fn step(v_right: f64) -> Self {
        Self {
            breakpoints: vec![0.0],
            values: vec![0.0, v_right],
        }
    }

    /// A single barrier of height `v` on (−a, a).
    pub fn barrier(v: f64, half_width: f64) -> Self {
        Self {
            breakpoints: vec![-half_width, half_width],
            values: vec![0.0, v, 0.0],
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// General scattering off a piecewise-constant potential by composing the
/// 2×2 continuity conditions (ψ and ψ′) at every breakpoint. Both asymptotic
/// regions must be propagating.
pub fn transfer_matrix_scatter(
    potential: &PiecewisePotential,
    e: f64,
    mass: f64,
    hbar: f64,
) -> Result<ScatterResult> {
    if e <= 0.0 {
        return Err(QmError::Domain(format!(
            "incident energy must be positive, got {e}"
        )));
    }
    let v = &potential.values;
    let n_seg = v.len();
    if e <= v[0] || e <= v[n_seg - 1] {
        return Err(QmError::NoChannel(format!(
            "E = {e} does not propagate in the asymptotic regions (V = {} and {})",
            v[0],
            v[n_seg - 1]
        )));
    }
    // complex wavevector per segment: q = sqrt(2m(E−V))/ħ, evanescent → iμ
    let q: Vec<Complex64> = v
        .iter()
        .map(|&vi| Complex64::new(2.0 * mass * (e - vi) / (hbar * hbar), 0.0).sqrt())
        .collect();

    // total 2×2 map (A₁, B₁) -> (A_N, B_N) across all breakpoints
    let mut m = [
        [Complex64::ONE, Complex64::ZERO],
        [Complex64::ZERO, Complex64::ONE],
    ];
    for (j, &xb) in potential.breakpoints.iter().enumerate() {
        let qi = q[j];
        let qo = q[j + 1];
        let i = Complex64::new(0.0, 1.0);
        let half = Complex64::new(0.5, 0.0);
        let ratio = qi / qo;
        let step = [
            [
                half * (1.0 + ratio) * (i * (qi - qo) * xb).exp(),
                half * (1.0 - ratio) * (-i * (qi + qo) * xb).exp(),
            ],
            [
                half * (1.0 - ratio) * (i * (qi + qo) * xb).exp(),
                half * (1.0 + ratio) * (-i * (qi - qo) * xb).exp(),
            ],
        ];
        m = mat_mul(&step, &m);
    }
    // incident A₁ = 1, no incoming wave from the right: B_N = 0
    // (A_N, 0) = M (1, B₁)  =>  B₁ = −M₁₀/M₁₁ and A_N = det(M)/M₁₁;
    // each interface matrix has determinant q_in/q_out, so det(M) telescopes
    // to q₁/q_N, which avoids the cancellation in M₀₀ + M₀₁B₁
    if m[1][1].norm() == 0.0 {
        return Err(QmError::Solver("singular transfer matrix".into()));
    }
    let b1 = -m[1][0] / m[1][1];
    let a_n = q[0] / q[n_seg - 1] / m[1][1];
    let k1 = q[0].re;
    let kn = q[n_seg - 1].re;
    let reflection = b1.norm_sqr();
    let transmission = kn / k1 * a_n.norm_sqr();
    let j_in = plane_wave_current(Complex64::ONE, k1, mass, hbar);
    Ok(ScatterResult {
        energy: e,
        k_left: k1,
        k_right: kn,
        reflected_amplitude: b1,
        transmitted_amplitude: a_n,
        reflection,
        transmission,
        currents: [
            j_in,
            reflection * j_in,
            plane_wave_current(a_n, kn, mass, hbar),
        ],
    })
}

fn mat_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Bound states of the square well V(x) = −V on (−L, L), zero outside, as
/// energies in (−V, 0), ascending. States alternate even/odd parity; the
/// even branch always holds at least one state.
pub fn finite_well_bound_states(
    depth: f64,
    half_width: f64,
    mass: f64,
    hbar: f64,
) -> Result<Vec<f64>> {
    if depth <= 0.0 || half_width <= 0.0 {
        return Err(QmError::Domain("need positive depth and half-width".into()));
    }
    // ξ = kL inside, η = κL outside, ξ² + η² = R₀²;
    // even: ξ tan ξ = η, odd: −ξ cot ξ = η
    let r0 = (2.0 * mass * depth).sqrt() * half_width / hbar;
    let mut roots: Vec<(f64, bool)> = Vec::new();
    let eta = |xi: f64| (r0 * r0 - xi * xi).sqrt();
    let even = |xi: f64| xi * xi.tan() - eta(xi);
    let odd = |xi: f64| -xi / xi.tan() - eta(xi);

    // even roots live in [kπ, kπ + π/2), odd roots in [kπ + π/2, (k+1)π)
    let mut k = 0usize;
    loop {
        let base = k as f64 * PI;
        if base >= r0 {
            break;
        }
        let lo = base;
        let hi = (base + 0.5 * PI).min(r0);
        if let Some(xi) = bisect_root(&even, lo + 1e-12, hi - 1e-12) {
            roots.push((xi, true));
        }
        let lo = base + 0.5 * PI;
        let hi = (base + PI).min(r0);
        if lo < r0 {
            if let Some(xi) = bisect_root(&odd, lo + 1e-12, hi - 1e-12) {
                roots.push((xi, false));
            }
        }
        k += 1;
    }
    roots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(roots
        .into_iter()
        .map(|(xi, _)| {
            let k_in = xi / half_width;
            hbar * hbar * k_in * k_in / (2.0 * mass) - depth
        })
        .collect())
}

#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn bisect_root(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    if !(lo < hi) {
        return None;
    }
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || hi - lo < 1e-15 * hi.abs().max(1.0) {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
