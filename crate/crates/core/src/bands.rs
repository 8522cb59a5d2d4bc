//! Kronig-Penney periodic potential: the dispersion function f(E) whose
//! |f| ≤ 1 condition selects the allowed energies, band/gap extraction by
//! scan + bisection, and the Bloch wavenumber cos(Kc) = f(E).

use crate::error::{QmError, Result};

/// Kronig-Penney geometry: barriers of height V and width b separated by
/// free stretches of width 2a; the lattice period is c = 2a + b.
#[derive(Debug, Clone, Copy)]
pub struct KPParams {
    pub a: f64,
    pub b: f64,
    pub v: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl KPParams {
    pub fn new(a: f64, b: f64, v: f64, mass: f64, hbar: f64) -> Result<Self> {
        if a <= 0.0 || b <= 0.0 || mass <= 0.0 || hbar <= 0.0 {
            return Err(QmError::Domain(
                "Kronig-Penney needs positive a, b, mass and hbar".into(),
            ));
        }
        // V = 0 is allowed as the exactly-free limit f = cos(kc)
        if v < 0.0 {
            return Err(QmError::Domain(format!(
                "barrier height must be non-negative, got {v}"
            )));
        }
        Ok(Self {
            a,
            b,
            v,
            mass,
            hbar,
        })
    }

    /// Lattice period c = 2a + b.
    pub fn period(&self) -> f64 {
        2.0 * self.a + self.b
    }
}

/// The dispersion function
/// f(E) = cos(2ka)cosh(κb) + ((κ²−k²)/2κk)·sin(2ka)sinh(κb), κ² = 2m(V−E)/ħ²,
/// continued analytically through E = V (κ → ik₂ flips cosh/sinh into
/// cos/sin). Energies with |f(E)| ≤ 1 support Bloch waves.
pub fn kp_dispersion(e: f64, params: &KPParams) -> Result<f64> {
    if e <= 0.0 {
        return Err(QmError::Domain(format!("energy must be positive, got {e}")));
    }
    let two_m_over_h2 = 2.0 * params.mass / (params.hbar * params.hbar);
    let k = (two_m_over_h2 * e).sqrt();
    // signed κ²; negative above the barrier
    let s = two_m_over_h2 * (params.v - e);
    let b = params.b;
    let two_ka = 2.0 * k * params.a;

    // cosh(κb) and sinh(κb)/κ as functions of s = κ², valid on both sides;
    // the series covers the removable singularity at E = V
    let (cosh_term, sinh_over_kappa) = if (s * b * b).abs() < 1e-4 {
        let x = s * b * b;
        (
            1.0 + x / 2.0 + x * x / 24.0 + x * x * x / 720.0,
            b * (1.0 + x / 6.0 + x * x / 120.0 + x * x * x / 5040.0),
        )
    } else if s > 0.0 {
        let kappa = s.sqrt();
        ((kappa * b).cosh(), (kappa * b).sinh() / kappa)
    } else {
        let k2 = (-s).sqrt();
        ((k2 * b).cos(), (k2 * b).sin() / k2)
    };
    // sin(2ka)/k stays finite as k → 0
    let sin_over_k = if two_ka.abs() < 1e-8 {
        2.0 * params.a * (1.0 - two_ka * two_ka / 6.0)
    } else {
        two_ka.sin() / k
    };
    Ok(two_ka.cos() * cosh_term + 0.5 * (s - k * k) * sinh_over_kappa * sin_over_k)
}

/// Allowed-energy intervals and the gaps between them over a scanned range.
#[derive(Debug, Clone)]
pub struct BandStructure {
    /// Allowed intervals [E_lo, E_hi], ascending and disjoint.
    pub bands: Vec<(f64, f64)>,
    /// Forbidden intervals between and around the bands, within the scan.
    pub gaps: Vec<(f64, f64)>,
    pub e_max: f64,
    pub n_scan: usize,
    /// Largest ||f(E)| − 1| left at a reported interior band edge.
    pub edge_residual: f64,
}

/// Scan g(E) = |f(E)| − 1 on `n_scan` points up to `e_max` and refine every
/// sign change by bisection. Intervals with |f| ≤ 1 are the bands.
pub fn kp_bands(params: &KPParams, e_max: f64, n_scan: usize) -> Result<BandStructure> {
    if e_max <= 0.0 || n_scan < 2 {
        return Err(QmError::Domain(
            "band scan needs a positive range and at least 2 points".into(),
        ));
    }
    let g = |e: f64| -> Result<f64> { Ok(kp_dispersion(e, params)?.abs() - 1.0) };
    let de = e_max / n_scan as f64;
    let mut edges: Vec<f64> = Vec::new();
    let mut prev_e = de * 1e-6;
    let mut prev_g = g(prev_e)?;
    let mut edge_residual = 0.0f64;
    for i in 1..=n_scan {
        let e = de * i as f64;
        let cur_g = g(e)?;
        if prev_g == 0.0 {
            edges.push(prev_e);
        } else if prev_g.signum() != cur_g.signum() {
            // bisect down to 1e-10·e_max in energy, then keep pushing toward
            // a small |g| so the reported edge sits on |f| = 1
            let (mut lo, mut hi, mut flo) = (prev_e, e, prev_g);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = g(mid)?;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-10 * e_max && fm.abs() < 1e-9 {
                    break;
                }
            }
            let edge = 0.5 * (lo + hi);
            edge_residual = edge_residual.max(g(edge)?.abs());
            edges.push(edge);
        }
        prev_e = e;
        prev_g = cur_g;
    }

    let mut bands = Vec::new();
    let mut gaps = Vec::new();
    let scan_lo = de * 1e-6;
    let mut boundaries = vec![scan_lo];
    boundaries.extend(edges);
    boundaries.push(e_max);
    for w in boundaries.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid)? <= 0.0 {
            bands.push((lo, hi));
        } else {
            gaps.push((lo, hi));
        }
    }
    Ok(BandStructure {
        bands,
        gaps,
        e_max,
        n_scan,
        edge_residual,
    })
}

/// Bloch wavenumber K = arccos(f(E))/c on the principal branch [0, π/c].
/// Energies in a gap produce a `GapEnergy` error.
pub fn bloch_k(e: f64, params: &KPParams) -> Result<f64> {
    let f = kp_dispersion(e, params)?;
    if f.abs() > 1.0 + 1e-12 {
        return Err(QmError::GapEnergy {
            energy: e,
            dispersion: f,
        });
    }
    Ok(f.clamp(-1.0, 1.0).acos() / params.period())
}
