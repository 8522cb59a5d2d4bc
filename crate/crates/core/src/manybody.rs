//! Multi-particle product states, exchange symmetry and (anti)symmetrization,
//! Pauli exclusion, shell filling, and the Maxwell-Boltzmann / Bose-Einstein /
//! Fermi-Dirac occupation statistics with their chemical potential.

use crate::error::{QmError, Result};
use crate::quanta::PhysicalConstants;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Single-particle state label within a declared orthonormal basis.
pub type Label = String;

/// Permutation expansions are capped here to bound the factorial blow-up.
pub const MAX_PARTICLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    None,
    Symmetric,
    Antisymmetric,
}

/// Linear combination of product states Σ amp·|l₁⟩|l₂⟩…|l_N⟩ over an
/// orthonormal single-particle basis. Terms are kept merged and sorted; the
/// zero state is an explicit flag, never an empty term list by accident.
#[derive(Debug, Clone)]
pub struct ManyBodyState {
    terms: Vec<(Complex64, Vec<Label>)>,
    pub symmetry: Symmetry,
    pub particle_count: usize,
}

impl ManyBodyState {
    pub fn from_terms(
        terms: Vec<(Complex64, Vec<Label>)>,
        symmetry: Symmetry,
        particle_count: usize,
    ) -> Result<Self> {
        if terms.iter().any(|(_, f)| f.len() != particle_count) {
            return Err(QmError::Domain(
                "every term must carry one label per particle".into(),
            ));
        }
        Ok(Self {
            terms: merge(terms),
            symmetry,
            particle_count,
        })
    }

    /// Single product state |l₁⟩|l₂⟩…⟩ with unit amplitude.
    pub fn product(labels: Vec<Label>) -> Self {
        let n = labels.len();
        Self {
            terms: vec![(Complex64::ONE, labels)],
            symmetry: Symmetry::None,
            particle_count: n,
        }
    }

    /// True when every amplitude cancelled exactly.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Complex64, Vec<Label>)] {
        &self.terms
    }

    /// Σ|amp|² over the orthonormal product terms.
    pub fn norm_sq(&self) -> f64 {
        self.terms.iter().map(|(a, _)| a.norm_sqr()).sum()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            terms: merge(self.terms.iter().map(|(a, f)| (a * c, f.clone())).collect()),
            symmetry: self.symmetry,
            particle_count: self.particle_count,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.particle_count != other.particle_count {
            return Err(QmError::Domain("particle counts differ".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self {
            terms: merge(terms),
            symmetry: Symmetry::None,
            particle_count: self.particle_count,
        })
    }

    /// ⟨self|other⟩ assuming orthonormal single-particle labels.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let map: BTreeMap<&[Label], Complex64> =
            self.terms.iter().map(|(a, f)| (f.as_slice(), *a)).collect();
        other
            .terms
            .iter()
            .filter_map(|(b, f)| map.get(f.as_slice()).map(|a| a.conj() * b))
            .sum()
    }

    /// True when the states are proportional by a unit-modulus factor.
    pub fn same_physical_state(&self, other: &Self, tol: f64) -> bool {
        let lhs = self.inner(other).norm();
        let rhs = (self.norm_sq() * other.norm_sq()).sqrt();
        (lhs - rhs).abs() <= tol * rhs.max(1.0)
    }
}

fn merge(terms: Vec<(Complex64, Vec<Label>)>) -> Vec<(Complex64, Vec<Label>)> {
    let mut map: BTreeMap<Vec<Label>, Complex64> = BTreeMap::new();
    for (a, f) in terms {
        *map.entry(f).or_insert(Complex64::ZERO) += a;
    }
    map.into_iter()
        .filter(|(_, a)| a.norm_sqr() != 0.0)
        .map(|(f, a)| (a, f))
        .collect()
}

/// Exchange operator P_{ij}: swap the states of particles i and j in every
/// term. Applying it twice is the identity.
pub fn exchange(state: &ManyBodyState, i: usize, j: usize) -> Result<ManyBodyState> {
    let n = state.particle_count;
    if i >= n || j >= n {
        return Err(QmError::Domain(format!(
            "exchange indices ({i}, {j}) out of range for {n} particles"
        )));
    }
    if i == j {
        return Err(QmError::Domain(
            "exchange needs two distinct particles".into(),
        ));
    }
    let terms = state
        .terms
        .iter()
        .map(|(a, f)| {
            let mut g = f.clone();
            g.swap(i, j);
            (*a, g)
        })
        .collect();
    Ok(ManyBodyState {
        terms: merge(terms),
        symmetry: state.symmetry,
        particle_count: n,
    })
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, f64)> {
    // Heap's algorithm; each step is one transposition, so the sign just
    // alternates along the walk
    let mut result = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1.0;
    result.push((idx.clone(), sign));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                idx.swap(0, i);
            } else {
                idx.swap(c[i], i);
            }
            sign = -sign;
            result.push((idx.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    result
}

/// Antisymmetrized combination Σ_π sign(π)·∏|l_{π(k)}⟩ / √(N!). Duplicate
/// labels cancel pairwise to the exact zero state (Pauli exclusion).
pub fn antisymmetrize(labels: &[Label]) -> Result<ManyBodyState> {
    let n = labels.len();
    if n == 0 || n > MAX_PARTICLES {
        return Err(QmError::Domain(format!(
            "antisymmetrize supports 1..={MAX_PARTICLES} particles, got {n}"
        )));
    }
    let weight = 1.0 / factorial(n).sqrt();
    let terms = permutations_with_sign(n)
        .into_iter()
        .map(|(perm, sign)| {
            let factors: Vec<Label> = perm.iter().map(|&k| labels[k].clone()).collect();
            (Complex64::new(sign * weight, 0.0), factors)
        })
        .collect();
    Ok(ManyBodyState {
        terms: merge(terms),
        symmetry: Symmetry::Antisymmetric,
        particle_count: n,
    })
}

/// Symmetrized combination Σ_π ∏|l_{π(k)}⟩ normalized to 1, with the
/// repeated-label multiplicities accounted for: weight 1/√(N!·∏ n_label!).
pub fn symmetrize(labels: &[Label]) -> Result<ManyBodyState> {
    let n = labels.len();
    if n == 0 || n > MAX_PARTICLES {
        return Err(QmError::Domain(format!(
            "symmetrize supports 1..={MAX_PARTICLES} particles, got {n}"
        )));
    }
    let mut counts: BTreeMap<&Label, usize> = BTreeMap::new();
    for l in labels {
        *counts.entry(l).or_insert(0) += 1;
    }
    let multiplicity: f64 = counts.values().map(|&c| factorial(c)).product();
    let weight = 1.0 / (factorial(n) * multiplicity).sqrt();
    let terms = permutations_with_sign(n)
        .into_iter()
        .map(|(perm, _)| {
            let factors: Vec<Label> = perm.iter().map(|&k| labels[k].clone()).collect();
            (Complex64::new(weight, 0.0), factors)
        })
        .collect();
    Ok(ManyBodyState {
        terms: merge(terms),
        symmetry: Symmetry::Symmetric,
        particle_count: n,
    })
}

/// Apply the antisymmetrizer Â = (1/N!)Σ_π sign(π)·π to an arbitrary state.
/// Â is a projector: antisymmetric states pass through unchanged.
pub fn project_antisymmetric(state: &ManyBodyState) -> Result<ManyBodyState> {
    let n = state.particle_count;
    if n > MAX_PARTICLES {
        return Err(QmError::Domain(format!(
            "projection capped at {MAX_PARTICLES} particles"
        )));
    }
    let scale = 1.0 / factorial(n);
    let mut terms = Vec::new();
    for (perm, sign) in permutations_with_sign(n) {
        for (a, f) in &state.terms {
            let factors: Vec<Label> = perm.iter().map(|&k| f[k].clone()).collect();
            terms.push((a * sign * scale, factors));
        }
    }
    Ok(ManyBodyState {
        terms: merge(terms),
        symmetry: Symmetry::Antisymmetric,
        particle_count: n,
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Two identical fermions in the same oscillator: energy ħω(n+m+1) and the
/// antisymmetrized pair state, which vanishes identically when n = m.
#[derive(Debug, Clone)]
pub struct TwoOscillatorState {
    pub energy: f64,
    pub state: ManyBodyState,
    pub pauli_forbidden: bool,
}

impl TwoOscillatorState {
    /// Time evolution multiplies the whole state by e^{−iEt/ħ}.
    pub fn phase_at(&self, t: f64, hbar: f64) -> Complex64 {
        Complex64::new(0.0, -self.energy * t / hbar).exp()
    }
}

pub fn two_oscillator_eigen(n: u32, m: u32, omega: f64, hbar: f64) -> Result<TwoOscillatorState> {
    let labels = vec![n.to_string(), m.to_string()];
    let state = antisymmetrize(&labels)?;
    Ok(TwoOscillatorState {
        energy: hbar * omega * (n as f64 + m as f64 + 1.0),
        pauli_forbidden: state.is_zero(),
        state,
    })
}

// ----------------------------------------------------------- statistics

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    MaxwellBoltzmann,
    BoseEinstein,
    FermiDirac,
}

/// Occupation model: statistics, temperature and chemical potential.
/// Energies and μ are in eV; k_B is carried in eV/K.
#[derive(Debug, Clone)]
pub struct OccupationModel {
    pub statistics: Statistics,
    pub temperature: f64,
    pub mu: f64,
    pub k_boltzmann_ev: f64,
}

impl OccupationModel {
    pub fn new(statistics: Statistics, temperature: f64, mu: f64) -> Result<Self> {
        if temperature <= 0.0 {
            return Err(QmError::Domain(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        Ok(Self {
            statistics,
            temperature,
            mu,
            k_boltzmann_ev: PhysicalConstants::si().k_boltzmann_ev,
        })
    }

    pub fn kt(&self) -> f64 {
        self.k_boltzmann_ev * self.temperature
    }
}

/// Mean occupation of a level at energy `e` (eV). Maxwell-Boltzmann returns
/// the unnormalized e^{−E/kT} (ratios only); Bose-Einstein needs E > μ.
pub fn occupation(e: f64, model: &OccupationModel) -> Result<f64> {
    let kt = model.kt();
    match model.statistics {
        Statistics::MaxwellBoltzmann => Ok((-e / kt).exp()),
        Statistics::BoseEinstein => {
            if e <= model.mu {
                return Err(QmError::Domain(format!(
                    "Bose-Einstein occupation diverges for E <= mu (E={e}, mu={})",
                    model.mu
                )));
            }
            Ok(1.0 / (((e - model.mu) / kt).exp() - 1.0))
        }
        Statistics::FermiDirac => Ok(fermi_dirac((e - model.mu) / kt)),
    }
}

/// 1/(e^x + 1) through the odd tanh form ½(1 − tanh(x/2)), which makes the
/// particle-hole identity n(x) + n(−x) = 1 hold exactly.
fn fermi_dirac(x: f64) -> f64 {
    0.5 - 0.5 * (0.5 * x).tanh()
}

/// Population ratio nᵢ/nⱼ = e^{−(Eᵢ−Eⱼ)/kT}; energies in eV.
pub fn boltzmann_ratio(e_i: f64, e_j: f64, temperature: f64) -> Result<f64> {
    if temperature <= 0.0 {
        return Err(QmError::Domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    let kt = PhysicalConstants::si().k_boltzmann_ev * temperature;
    Ok((-(e_i - e_j) / kt).exp())
}

/// Chemical potential from Σ gᵢ·n(Eᵢ; μ) = N by bracketed bisection;
/// unique for Fermi-Dirac by monotonicity, and kept below the lowest level
/// for Bose-Einstein. Levels are (energy eV, degeneracy).
pub fn solve_chemical_potential(
    levels: &[(f64, f64)],
    n_particles: f64,
    temperature: f64,
    statistics: Statistics,
) -> Result<f64> {
    if levels.is_empty() || n_particles <= 0.0 {
        return Err(QmError::Infeasible(
            "need at least one level and a positive particle count".into(),
        ));
    }
    let kt = PhysicalConstants::si().k_boltzmann_ev * temperature;
    if kt <= 0.0 {
        return Err(QmError::Domain("temperature must be positive".into()));
    }
    let e_min = levels.iter().map(|l| l.0).fold(f64::INFINITY, f64::min);
    let e_max = levels.iter().map(|l| l.0).fold(f64::NEG_INFINITY, f64::max);
    let total = |mu: f64| -> f64 {
        levels
            .iter()
            .map(|&(e, g)| {
                g * match statistics {
                    Statistics::FermiDirac => fermi_dirac((e - mu) / kt),
                    Statistics::BoseEinstein => 1.0 / (((e - mu) / kt).exp() - 1.0),
                    Statistics::MaxwellBoltzmann => ((mu - e) / kt).exp(),
                }
            })
            .sum()
    };
    let (mut lo, mut hi) = match statistics {
        Statistics::FermiDirac => {
            let capacity: f64 = levels.iter().map(|l| l.1).sum();
            if n_particles >= capacity {
                return Err(QmError::Infeasible(format!(
                    "{n_particles} fermions cannot fit {capacity} available states"
                )));
            }
            let mut lo = e_min - 10.0 * kt;
            let mut hi = e_max + 10.0 * kt;
            while total(lo) > n_particles {
                lo -= 10.0 * kt;
            }
            while total(hi) < n_particles {
                hi += 10.0 * kt;
            }
            (lo, hi)
        }
        Statistics::BoseEinstein | Statistics::MaxwellBoltzmann => {
            // occupation of every level grows with μ; for BE keep μ < E_min
            let hi = match statistics {
                Statistics::BoseEinstein => e_min - 1e-15 * kt.max(e_min.abs()).max(1.0),
                _ => e_max + 700.0 * kt,
            };
            let mut lo = e_min - 10.0 * kt;
            while total(lo) > n_particles {
                lo -= 10.0 * kt;
            }
            (lo, hi)
        }
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) >= n_particles {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo).abs() <= 1e-14 * hi.abs().max(1.0) {
            break;
        }
    }
    let mu = 0.5 * (lo + hi);
    if (total(mu) - n_particles).abs() > 1e-10 * n_particles {
        return Err(QmError::Solver(format!(
            "chemical potential bisection left residual {:.3e}",
            total(mu) - n_particles
        )));
    }
    Ok(mu)
}

/// Fermi energy of N free fermions in volume V:
/// E_F = (ħ²/2m)(3π²N/V)^{2/3} (joules).
pub fn fermi_energy(n_particles: f64, volume: f64, mass: f64, hbar: f64) -> Result<f64> {
    if n_particles <= 0.0 || volume <= 0.0 || mass <= 0.0 {
        return Err(QmError::Domain(
            "need positive particle count, volume and mass".into(),
        ));
    }
    let density = n_particles / volume;
    Ok(hbar * hbar / (2.0 * mass) * (3.0 * PI * PI * density).powf(2.0 / 3.0))
}

/// Number of (n₁,n₂,n₃) lattice states with |n| ≤ r in the positive octant,
/// doubled for spin: the continuum estimate is N(R) = (1/8)(4π/3)R³·2.
pub fn fermi_sphere_count(radius: f64) -> u64 {
    let r2 = radius * radius;
    let r_int = radius.floor() as i64;
    let mut count = 0u64;
    for n1 in 1..=r_int {
        for n2 in 1..=r_int {
            let rem = r2 - (n1 * n1 + n2 * n2) as f64;
            if rem < 1.0 {
                continue;
            }
            count += rem.sqrt().floor() as u64;
        }
    }
    2 * count
}

/// Hydrogenic shell filling: (n, ℓ) subshells in order of n then ℓ, capacity
/// 2(2ℓ+1). No Madelung reordering, so labels drift from real chemistry
/// beyond argon.
pub fn fill_shells(electron_count: u32) -> Result<Vec<(String, u32)>> {
    if electron_count < 1 {
        return Err(QmError::Domain("need at least one electron".into()));
    }
    let mut remaining = electron_count;
    let mut config = Vec::new();
    let mut n = 1u32;
    while remaining > 0 {
        for l in 0..n {
            if remaining == 0 {
                break;
            }
            let capacity = 2 * (2 * l + 1);
            let filled = remaining.min(capacity);
            config.push((crate::analytic::orbital_label(n, l)?, filled));
            remaining -= filled;
        }
        n += 1;
    }
    Ok(config)
}
