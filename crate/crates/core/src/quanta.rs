//! Physical constants and the closed-form relations of old quantum theory:
//! photon and de Broglie kinematics, the photoelectric effect, two-slit
//! fringe positions, Bohr orbits and the Rydberg formula.

use crate::error::{QmError, Result};
use std::f64::consts::{PI, TAU};

/// Fundamental constants, SI by default (CODATA values at the precision the
/// formulas here need). `hbar` and `ev` are derived from `h` and `q_e` so the
/// defining identities hold to machine precision.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalConstants {
    /// Planck constant (J·s)
    pub h: f64,
    /// Reduced Planck constant ħ = h/2π (J·s)
    pub hbar: f64,
    /// Electron mass (kg)
    pub m_e: f64,
    /// Proton mass (kg)
    pub m_p: f64,
    /// Neutron mass (kg)
    pub m_n: f64,
    /// Elementary charge (C)
    pub q_e: f64,
    /// Coulomb constant k = 1/4πε₀ (N·m²/C²)
    pub k_coulomb: f64,
    /// Boltzmann constant (J/K)
    pub k_boltzmann: f64,
    /// Boltzmann constant (eV/K)
    pub k_boltzmann_ev: f64,
    /// Speed of light (m/s)
    pub c: f64,
    /// One electron volt (J)
    pub ev: f64,
    /// Vacuum permittivity (F/m)
    pub eps0: f64,
    /// Vacuum permeability (N/A²)
    pub mu0: f64,
}

impl PhysicalConstants {
    /// CODATA-style SI values.
    pub fn si() -> Self {
        let h = 6.626_070_15e-34;
        let q_e = 1.602_176_634e-19;
        let k_boltzmann = 1.380_649e-23;
        Self {
            h,
            hbar: h / TAU,
            m_e: 9.109_383_701_5e-31,
            m_p: 1.672_621_923_69e-27,
            m_n: 1.674_927_498_04e-27,
            q_e,
            k_coulomb: 8.987_551_792_3e9,
            k_boltzmann,
            k_boltzmann_ev: k_boltzmann / q_e,
            c: 2.997_924_58e8,
            ev: q_e,
            eps0: 8.854_187_812_8e-12,
            mu0: 1.256_637_062_12e-6,
        }
    }

    /// Natural units for algebraic checks: ħ = m = e = k = c = 1.
    pub fn natural() -> Self {
        Self {
            h: TAU,
            hbar: 1.0,
            m_e: 1.0,
            m_p: 1.0,
            m_n: 1.0,
            q_e: 1.0,
            k_coulomb: 1.0,
            k_boltzmann: 1.0,
            k_boltzmann_ev: 1.0,
            c: 1.0,
            ev: 1.0,
            eps0: 1.0 / (4.0 * PI),
            mu0: 4.0 * PI,
        }
    }

    /// Planck constant in eV·s.
    pub fn h_ev(&self) -> f64 {
        self.h / self.ev
    }

    /// Bohr radius a = ħ²/(m_e k e²).
    pub fn bohr_radius(&self) -> f64 {
        self.hbar * self.hbar / (self.m_e * self.k_coulomb * self.q_e * self.q_e)
    }

    /// Hydrogen binding energy E₀ = m_e k² e⁴ / 2ħ² (J), ≈ 13.6 eV in SI.
    pub fn rydberg_energy(&self) -> f64 {
        let ke2 = self.k_coulomb * self.q_e * self.q_e;
        self.m_e * ke2 * ke2 / (2.0 * self.hbar * self.hbar)
    }

    /// Rydberg constant R_H = E₀/(h c) (1/m).
    pub fn rydberg_constant(&self) -> f64 {
        self.rydberg_energy() / (self.h * self.c)
    }
}

/// Unit system selector. `Custom` injects per-constant overrides.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitSystem {
    Si,
    Natural,
    Custom(PhysicalConstants),
}

impl UnitSystem {
    pub fn constants(&self) -> PhysicalConstants {
        match self {
            UnitSystem::Si => PhysicalConstants::si(),
            UnitSystem::Natural => PhysicalConstants::natural(),
            UnitSystem::Custom(c) => c.clone(),
        }
    }
}

/// Kinematics of a photon of given frequency: E = hν, p = E/c, λ = c/ν,
/// together with the angular forms E = ħω, p = ħk.
#[derive(Debug, Clone, Copy)]
pub struct PhotonProps {
    pub energy: f64,
    pub momentum: f64,
    pub wavelength: f64,
    pub omega: f64,
    pub wavenumber: f64,
}

pub fn photon_props(frequency: f64, consts: &PhysicalConstants) -> Result<PhotonProps> {
    if frequency <= 0.0 || !frequency.is_finite() {
        return Err(QmError::Domain(format!(
            "photon frequency must be positive, got {frequency}"
        )));
    }
    let energy = consts.h * frequency;
    let wavelength = consts.c / frequency;
    Ok(PhotonProps {
        energy,
        momentum: energy / consts.c,
        wavelength,
        omega: TAU * frequency,
        wavenumber: TAU / wavelength,
    })
}

/// De Broglie wave of a massive particle: λ = h/(mv).
#[derive(Debug, Clone, Copy)]
pub struct MatterWave {
    pub momentum: f64,
    pub wavelength: f64,
    pub wavenumber: f64,
}

pub fn matter_wave(mass: f64, speed: f64, consts: &PhysicalConstants) -> Result<MatterWave> {
    if mass <= 0.0 || speed <= 0.0 {
        return Err(QmError::Domain(format!(
            "matter wave needs positive mass and speed, got m={mass}, v={speed}"
        )));
    }
    let momentum = mass * speed;
    let wavelength = consts.h / momentum;
    Ok(MatterWave {
        momentum,
        wavelength,
        wavenumber: TAU / wavelength,
    })
}

/// Kinetic energy K = hν − Φ of a photoelectron, in eV. Below threshold the
/// error carries the frequency Φ/h at which electrons start to be stripped.
pub fn photoelectric_kinetic(
    frequency: f64,
    work_function_ev: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if frequency <= 0.0 || work_function_ev <= 0.0 {
        return Err(QmError::Domain(format!(
            "need positive frequency and work function, got f={frequency}, phi={work_function_ev}"
        )));
    }
    let kinetic = consts.h_ev() * frequency - work_function_ev;
    if kinetic <= 0.0 {
        return Err(QmError::BelowThreshold {
            threshold_hz: photoelectric_threshold(work_function_ev, consts),
        });
    }
    Ok(kinetic)
}

/// Threshold frequency Φ/h for the photoelectric effect.
pub fn photoelectric_threshold(work_function_ev: f64, consts: &PhysicalConstants) -> f64 {
    work_function_ev / consts.h_ev()
}

/// Bright-band positions of a two-slit pattern in the small-angle regime.
#[derive(Debug, Clone)]
pub struct FringePattern {
    /// x_n = nλL/d for n = −n_max..n_max, ascending.
    pub positions: Vec<f64>,
    /// Spacing λL/d between adjacent maxima.
    pub spacing: f64,
    /// Set when x_max/L > 0.2 and the small-angle approximation is dubious.
    pub small_angle_warning: bool,
}

pub fn fringe_positions(
    wavelength: f64,
    screen_distance: f64,
    slit_separation: f64,
    n_max: u32,
) -> Result<FringePattern> {
    if slit_separation <= 0.0 || screen_distance <= 0.0 {
        return Err(QmError::Domain(format!(
            "need positive slit separation and screen distance, got d={slit_separation}, L={screen_distance}"
        )));
    }
    if wavelength <= 0.0 {
        return Err(QmError::Domain(format!(
            "need positive wavelength, got {wavelength}"
        )));
    }
    let spacing = wavelength * screen_distance / slit_separation;
    let positions: Vec<f64> = (-(n_max as i64)..=n_max as i64)
        .map(|n| n as f64 * spacing)
        .collect();
    let x_max = n_max as f64 * spacing;
    Ok(FringePattern {
        positions,
        spacing,
        small_angle_warning: x_max / screen_distance > 0.2,
    })
}

/// A circular Bohr orbit: r = n²a, v = ke²/nħ, E = −E₀/n².
#[derive(Debug, Clone, Copy)]
pub struct BohrOrbit {
    pub n: u32,
    pub radius: f64,
    pub speed: f64,
    pub energy: f64,
}

pub fn bohr_orbit(n: u32, consts: &PhysicalConstants) -> Result<BohrOrbit> {
    if n < 1 {
        return Err(QmError::Domain("Bohr orbit needs n >= 1".into()));
    }
    let nf = n as f64;
    let ke2 = consts.k_coulomb * consts.q_e * consts.q_e;
    Ok(BohrOrbit {
        n,
        radius: nf * nf * consts.bohr_radius(),
        speed: ke2 / (nf * consts.hbar),
        energy: -consts.rydberg_energy() / (nf * nf),
    })
}

/// Upper level of a Rydberg transition; `Ionized` is the n = ∞ sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperLevel {
    Bound(u32),
    Ionized,
}

/// Wavelength of the n₁ → n₂ hydrogen transition, 1/λ = R_H(1/n₁² − 1/n₂²).
/// `UpperLevel::Ionized` gives the ionization edge of level n₁.
pub fn rydberg_wavelength(n1: u32, n2: UpperLevel, consts: &PhysicalConstants) -> Result<f64> {
    if n1 < 1 {
        return Err(QmError::Domain("Rydberg transition needs n1 >= 1".into()));
    }
    let inv_n2_sq = match n2 {
        UpperLevel::Bound(n2) => {
            if n2 <= n1 {
                return Err(QmError::Domain(format!(
                    "Rydberg transition needs n1 < n2, got n1={n1}, n2={n2}"
                )));
            }
            1.0 / (n2 as f64 * n2 as f64)
        }
        UpperLevel::Ionized => 0.0,
    };
    let inv_lambda = consts.rydberg_constant() * (1.0 / (n1 as f64 * n1 as f64) - inv_n2_sq);
    Ok(1.0 / inv_lambda)
}

/// c derived from the stored permittivity and permeability, 1/√(μ₀ε₀).
pub fn light_speed_check(consts: &PhysicalConstants) -> f64 {
    1.0 / (consts.mu0 * consts.eps0).sqrt()
}
