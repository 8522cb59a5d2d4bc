//! Command-line surface for the qmkit library: every subsystem exposed as a
//! subcommand with table, CSV or JSON output at a configurable precision.
//! Identical flags and inputs produce byte-identical output.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use output::{fmt_num, write_out};
use qmkit::analytic;
use qmkit::bands::{bloch_k, kp_bands, kp_dispersion, KPParams};
use qmkit::exercises::{self, Check};
use qmkit::fourier;
use qmkit::gridops::{self, Grid1D, WaveFunction};
use qmkit::manybody::{self, Statistics};
use qmkit::quanta::{self, PhysicalConstants, UnitSystem, UpperLevel};
use qmkit::scattering;
use qmkit::spin::{self, Direction};
use serde_json::json;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qmkit", version, about = "Quantum mechanics numerics toolkit")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Unit system for the constants table
    #[arg(long, global = true, value_enum, default_value_t = Units::Si)]
    units: Units,
    /// Output format
    #[arg(long = "out", global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Significant digits for printed numbers (3..=17)
    #[arg(long, global = true, default_value_t = 9)]
    precision: usize,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Units {
    Si,
    Natural,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

impl RunConfig {
    fn constants(&self) -> PhysicalConstants {
        match self.units {
            Units::Si => UnitSystem::Si.constants(),
            Units::Natural => UnitSystem::Natural.constants(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dump the physical constants table
    Constants {
        /// Shortcut for --out json
        #[arg(long)]
        json: bool,
    },
    /// Old quantum theory closed forms
    #[command(subcommand)]
    Quanta(QuantaCmd),
    /// Finite-difference eigensolver for a 1D potential
    Solve {
        /// box, sho, or a CSV file of x,V rows
        #[arg(long, default_value = "box")]
        potential: String,
        #[arg(long, default_value_t = 2001)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        states: usize,
        /// Box length (box potential)
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        /// Domain edges (sho potential)
        #[arg(long, default_value_t = -12.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 12.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long)]
        mass: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Write each eigenstate to PREFIX_<n>.csv as x,re,im rows
        #[arg(long)]
        dump_states: Option<String>,
    },
    /// Hydrogen-like orbital sampler
    Hydrogen {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 0)]
        m: i32,
        #[arg(long, default_value_t = 1)]
        z: u32,
        /// Radial samples START:STOP:COUNT in units of the effective Bohr radius
        #[arg(long, default_value = "0:20:400")]
        sample_r: String,
        /// Polar angle of the sampled slice
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
    },
    /// Harmonic oscillator levels and number-basis matrices
    Sho {
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        dim: usize,
        /// Dump the a, a†, N, H, X, P matrices as JSON
        #[arg(long)]
        matrices: bool,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long)]
        mass: Option<f64>,
    },
    /// Fourier transform a sampled wave function to momentum space
    Transform {
        /// CSV of x,re,im rows (as written by solve --dump-states)
        #[arg(long = "in")]
        input: std::path::PathBuf,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        /// Print position- and momentum-space norms instead of samples
        #[arg(long)]
        parseval: bool,
    },
    /// Reflection and transmission off piecewise-constant potentials
    #[command(subcommand)]
    Scatter(ScatterCmd),
    /// Spin precession and measurement
    #[command(subcommand)]
    Spin(SpinCmd),
    /// Occupation statistics
    #[command(subcommand)]
    Stats(StatsCmd),
    /// Exchange symmetry of identical particles
    #[command(subcommand)]
    Manybody(ManybodyCmd),
    /// Kronig-Penney band structure
    Bands {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 0.3)]
        b: f64,
        #[arg(long = "V", default_value_t = 10.0)]
        height: f64,
        #[arg(long, default_value_t = 60.0)]
        e_max: f64,
        #[arg(long, default_value_t = 8000)]
        scan: usize,
        /// Natural units by default
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },
    /// Re-run the catalogued worked exercises against their oracles
    Exercises {
        #[arg(long)]
        chapter: Option<u8>,
    },
}

#[derive(Subcommand)]
enum QuantaCmd {
    /// E, p, λ, ω, k of a photon
    Photon {
        #[arg(long)]
        frequency: f64,
    },
    /// De Broglie wave of a massive particle
    MatterWave {
        #[arg(long, value_enum, default_value_t = Particle::Electron)]
        particle: Particle,
        #[arg(long)]
        mass: Option<f64>,
        #[arg(long)]
        speed: f64,
    },
    /// Photoelectron kinetic energy
    Photoelectric {
        /// Work function (eV)
        #[arg(long)]
        phi: f64,
        #[arg(long)]
        frequency: f64,
    },
    /// Two-slit bright-band positions
    Fringes {
        #[arg(long)]
        wavelength: f64,
        #[arg(long, default_value_t = 1.0)]
        screen_distance: f64,
        #[arg(long)]
        slit_separation: f64,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
    /// Bohr orbit radius, speed and energy
    Bohr {
        #[arg(long)]
        n: u32,
    },
    /// Rydberg transition wavelength; --n2 inf gives the ionization edge
    Rydberg {
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: String,
    },
    /// c derived from the stored permittivity and permeability
    LightSpeed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Particle {
    Electron,
    Proton,
    Neutron,
}

#[derive(Subcommand)]
enum ScatterCmd {
    Step {
        #[arg(long)]
        energy: f64,
        #[arg(long = "V", allow_negative_numbers = true)]
        height: f64,
        #[arg(long)]
        mass: Option<f64>,
    },
    Barrier {
        #[arg(long)]
        energy: Option<f64>,
        #[arg(long = "V")]
        height: f64,
        /// Full barrier length (the barrier spans (−width/2, width/2))
        #[arg(long)]
        width: f64,
        #[arg(long)]
        mass: Option<f64>,
        /// Transmission sweep E0:E1:N printed as E,R,T,log10T rows
        #[arg(long)]
        sweep: Option<String>,
    },
    Well {
        #[arg(long)]
        depth: f64,
        #[arg(long)]
        half_width: f64,
        #[arg(long)]
        mass: Option<f64>,
    },
}

#[derive(Subcommand)]
enum SpinCmd {
    /// Spin expectation values precessing in a z-field, t,Sx,Sy,Sz rows
    Larmor {
        #[arg(long, default_value_t = PI / 2.0)]
        theta: f64,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long = "B")]
        field: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        /// Time samples T0:T1:N
        #[arg(long, default_value = "0:10:101")]
        times: String,
    },
    /// Born probabilities for a spin measurement
    Measure {
        /// Amplitudes "a,b" (real) or "a_re,a_im,b_re,b_im"
        #[arg(long, allow_hyphen_values = true)]
        state: String,
        /// x, y, z, or "theta,phi"
        #[arg(long, default_value = "z")]
        axis: String,
    },
}

#[derive(Subcommand)]
enum StatsCmd {
    /// Mean occupation over an energy range, E,n rows
    Occupation {
        #[arg(long, value_enum)]
        kind: StatKind,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long = "T")]
        temperature: f64,
        /// Energy samples E0:E1:N in eV
        #[arg(long = "E", default_value = "0:1:101", allow_hyphen_values = true)]
        energies: String,
    },
    /// Chemical potential fixing the total particle number
    Mu {
        /// Levels as E:g pairs, e.g. "0:2,0.5:6,1.2:10" (eV)
        #[arg(long, allow_hyphen_values = true)]
        levels: String,
        #[arg(long = "N")]
        count: f64,
        #[arg(long = "T")]
        temperature: f64,
        #[arg(long, value_enum, default_value_t = StatKind::Fd)]
        kind: StatKind,
    },
    /// Fermi energy of a free-electron gas
    Fermi {
        /// Particle density N/V in 1/m³
        #[arg(long)]
        density: f64,
        #[arg(long)]
        mass: Option<f64>,
    },
    /// Boltzmann population ratio between two levels
    Ratio {
        #[arg(long, allow_negative_numbers = true)]
        e1: f64,
        #[arg(long, allow_negative_numbers = true)]
        e2: f64,
        #[arg(long = "T")]
        temperature: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatKind {
    Mb,
    Be,
    Fd,
}

impl From<StatKind> for Statistics {
    fn from(k: StatKind) -> Self {
        match k {
            StatKind::Mb => Statistics::MaxwellBoltzmann,
            StatKind::Be => Statistics::BoseEinstein,
            StatKind::Fd => Statistics::FermiDirac,
        }
    }
}

#[derive(Subcommand)]
enum ManybodyCmd {
    /// Antisymmetrized fermion state as a JSON term list
    Antisym {
        /// Comma-separated single-particle labels
        #[arg(long)]
        labels: String,
    },
    /// Symmetrized boson state as a JSON term list
    Sym {
        #[arg(long)]
        labels: String,
    },
    /// Hydrogenic shell filling
    Shells {
        #[arg(long = "Z")]
        z: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(3..=17).contains(&cli.config.precision) {
        eprintln!("error: --precision must be in 3..=17");
        return ExitCode::from(2);
    }
    match run(&cli.config, &cli.command) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn parse_range(spec: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("range must be START:STOP:COUNT, got '{spec}'"));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| format!("bad start '{}'", parts[0]))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| format!("bad stop '{}'", parts[1]))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad count '{}'", parts[2]))?;
    if count < 2 {
        return Err("range count must be at least 2".into());
    }
    Ok((start, stop, count))
}

fn range_points(start: f64, stop: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}

fn table(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in pairs {
        let _ = writeln!(s, "{k:width$} = {v}");
    }
    s
}

fn run(cfg: &RunConfig, cmd: &Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let c = cfg.constants();
    let p = cfg.precision;
    let out = match cmd {
        Command::Constants { json } => {
            if *json || cfg.format == Format::Json {
                let value = json!({
                    "h": c.h, "hbar": c.hbar,
                    "m_e": c.m_e, "m_p": c.m_p, "m_n": c.m_n,
                    "q_e": c.q_e, "k_coulomb": c.k_coulomb,
                    "k_boltzmann": c.k_boltzmann, "k_boltzmann_ev": c.k_boltzmann_ev,
                    "c": c.c, "ev": c.ev, "eps0": c.eps0, "mu0": c.mu0,
                    "bohr_radius": c.bohr_radius(),
                    "rydberg_energy": c.rydberg_energy(),
                });
                format!("{}\n", serde_json::to_string_pretty(&value)?)
            } else {
                table(&[
                    ("h", fmt_num(c.h, p)),
                    ("hbar", fmt_num(c.hbar, p)),
                    ("m_e", fmt_num(c.m_e, p)),
                    ("m_p", fmt_num(c.m_p, p)),
                    ("m_n", fmt_num(c.m_n, p)),
                    ("q_e", fmt_num(c.q_e, p)),
                    ("k_coulomb", fmt_num(c.k_coulomb, p)),
                    ("k_boltzmann", fmt_num(c.k_boltzmann, p)),
                    ("k_boltzmann_ev", fmt_num(c.k_boltzmann_ev, p)),
                    ("c", fmt_num(c.c, p)),
                    ("ev", fmt_num(c.ev, p)),
                    ("eps0", fmt_num(c.eps0, p)),
                    ("mu0", fmt_num(c.mu0, p)),
                    ("bohr_radius", fmt_num(c.bohr_radius(), p)),
                    ("rydberg_energy", fmt_num(c.rydberg_energy(), p)),
                ])
            }
        }
        Command::Quanta(q) => run_quanta(cfg, &c, q)?,
        Command::Solve {
            potential,
            points,
            states,
            length,
            x_min,
            x_max,
            mass,
            omega,
            dump_states,
        } => {
            let mass = mass.unwrap_or(match cfg.units {
                Units::Si => c.m_e,
                Units::Natural => 1.0,
            });
            let (grid, v): (Grid1D, Vec<f64>) = match potential.as_str() {
                "box" => {
                    let grid = Grid1D::new(0.0, *length, *points)?;
                    (grid, vec![0.0; *points])
                }
                "sho" => {
                    let grid = Grid1D::new(*x_min, *x_max, *points)?;
                    let v = grid
                        .points()
                        .iter()
                        .map(|&x| 0.5 * mass * omega * omega * x * x)
                        .collect();
                    (grid, v)
                }
                path => read_potential_csv(path)?,
            };
            let h = gridops::assemble_hamiltonian(&grid, &v, mass, c.hbar)?;
            let spectrum = gridops::solve_eigen(&h, *states)?;
            if !spectrum.domain_contains_states() {
                eprintln!("warning: some states reach the domain walls; widen the grid");
            }
            if let Some(prefix) = dump_states {
                for i in 0..spectrum.len() {
                    let psi = spectrum.state(i);
                    let mut csv = String::from("x,re,im\n");
                    for (j, &x) in psi.grid.points().iter().enumerate() {
                        let _ = writeln!(
                            csv,
                            "{},{},{}",
                            fmt_num(x, p),
                            fmt_num(psi.values[j].re, p),
                            fmt_num(psi.values[j].im, p)
                        );
                    }
                    std::fs::write(format!("{prefix}_{i}.csv"), csv)?;
                }
            }
            match cfg.format {
                Format::Json => {
                    let value = json!({
                        "energies": spectrum.energies,
                        "grid": {
                            "x_min": grid.x_min(),
                            "x_max": grid.x_max(),
                            "n_points": grid.len(),
                        },
                        "mass": mass,
                        "hbar": c.hbar,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&value)?)
                }
                Format::Csv => {
                    let mut s = String::from("n,energy\n");
                    for (i, e) in spectrum.energies.iter().enumerate() {
                        let _ = writeln!(s, "{},{}", i + 1, fmt_num(*e, p));
                    }
                    s
                }
                Format::Table => {
                    let pairs: Vec<(String, String)> = spectrum
                        .energies
                        .iter()
                        .enumerate()
                        .map(|(i, e)| (format!("E_{}", i + 1), fmt_num(*e, p)))
                        .collect();
                    let refs: Vec<(&str, String)> =
                        pairs.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
                    table(&refs)
                }
            }
        }
        Command::Hydrogen {
            n,
            l,
            m,
            z,
            sample_r,
            theta,
        } => {
            let state = analytic::hydrogen_state(*n, *l, *m, *z, c.m_e, &c)?;
            // values are in Bohr radii either way, so "0:20a:400" = "0:20:400"
            let (start, stop, count) = parse_range(&sample_r.replace('a', ""))?;
            let mut s = format!(
                "# {} state, E = {} eV, a_eff = {} m\nr,radial,abs_psi_sq\n",
                analytic::orbital_label(*n, *l)?,
                fmt_num(state.energy_ev(&c), p),
                fmt_num(state.a_eff, p)
            );
            for r_in_a in range_points(start, stop, count) {
                let r = (r_in_a * state.a_eff).max(1e-3 * state.a_eff);
                let radial = state.radial(r);
                let psi = state.eval(r, *theta, 0.0)?;
                let _ = writeln!(
                    s,
                    "{},{},{}",
                    fmt_num(r, p),
                    fmt_num(radial, p),
                    fmt_num(psi.norm_sqr(), p)
                );
            }
            s
        }
        Command::Sho {
            n,
            dim,
            matrices,
            omega,
            mass,
        } => {
            let mass = mass.unwrap_or(match cfg.units {
                Units::Si => c.m_e,
                Units::Natural => 1.0,
            });
            let dim = (*dim).max(*n as usize + 2);
            let basis = analytic::oscillator_basis(dim, mass, *omega, c.hbar)?;
            if *matrices || cfg.format == Format::Json {
                let dump = |m: &qmkit::nalgebra::DMatrix<Complex64>| -> Vec<Vec<[f64; 2]>> {
                    (0..m.nrows())
                        .map(|i| {
                            (0..m.ncols())
                                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                                .collect()
                        })
                        .collect()
                };
                let value = json!({
                    "dim": dim,
                    "mass": mass,
                    "omega": omega,
                    "hbar": c.hbar,
                    "lowering": dump(&basis.lowering),
                    "raising": dump(&basis.raising),
                    "number": dump(&basis.number),
                    "hamiltonian": dump(&basis.hamiltonian),
                    "position": dump(&basis.position),
                    "momentum": dump(&basis.momentum),
                });
                format!("{}\n", serde_json::to_string_pretty(&value)?)
            } else {
                let u = analytic::sho_uncertainties(*n, mass, *omega, c.hbar)?;
                table(&[
                    ("n", n.to_string()),
                    ("energy", fmt_num(c.hbar * omega * (*n as f64 + 0.5), p)),
                    ("delta_x", fmt_num(u.delta_x, p)),
                    ("delta_p", fmt_num(u.delta_p, p)),
                    ("product", fmt_num(u.product, p)),
                    ("hbar_over_2", fmt_num(0.5 * c.hbar, p)),
                ])
            }
        }
        Command::Transform {
            input,
            hbar,
            parseval,
        } => {
            let psi = read_wavefunction_csv(input)?;
            let phi = fourier::fourier_transform(&psi, *hbar);
            if psi.boundary_leakage() > 1e-3 {
                eprintln!(
                    "warning: wave function carries {:.2e} of its peak at the grid boundary",
                    psi.boundary_leakage()
                );
            }
            if *parseval {
                table(&[
                    ("position_norm_sq", fmt_num(psi.norm_sq(), p)),
                    ("momentum_norm_sq", fmt_num(phi.norm_sq(), p)),
                ])
            } else {
                let mut s = String::from("p,re,im\n");
                for (i, &pv) in phi.p.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "{},{},{}",
                        fmt_num(pv, p),
                        fmt_num(phi.values[i].re, p),
                        fmt_num(phi.values[i].im, p)
                    );
                }
                s
            }
        }
        Command::Scatter(sc) => run_scatter(cfg, &c, sc)?,
        Command::Spin(sp) => run_spin(cfg, &c, sp)?,
        Command::Stats(st) => run_stats(cfg, &c, st)?,
        Command::Manybody(mb) => run_manybody(cfg, mb)?,
        Command::Bands {
            a,
            b,
            height,
            e_max,
            scan,
            mass,
            hbar,
        } => {
            let params = KPParams::new(*a, *b, *height, *mass, *hbar)?;
            let bs = kp_bands(&params, *e_max, *scan)?;
            if bs.bands.is_empty() {
                eprintln!("warning: no allowed states found below E = {e_max}");
            }
            match cfg.format {
                Format::Csv => {
                    let mut s = String::from("E,f\n");
                    for e in range_points(*e_max / *scan as f64, *e_max, (*scan).min(4000)) {
                        let _ = writeln!(
                            s,
                            "{},{}",
                            fmt_num(e, p),
                            fmt_num(kp_dispersion(e, &params)?, p)
                        );
                    }
                    s
                }
                _ => {
                    let value = json!({
                        "period": params.period(),
                        "bands": bs.bands,
                        "gaps": bs.gaps,
                        "edge_residual": bs.edge_residual,
                        "bloch_k_at_band_mids": bs
                            .bands
                            .iter()
                            .map(|&(lo, hi)| bloch_k(0.5 * (lo + hi), &params).unwrap_or(f64::NAN))
                            .collect::<Vec<f64>>(),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&value)?)
                }
            }
        }
        Command::Exercises { chapter } => {
            let rows = exercises::run(*chapter);
            let mut s = String::new();
            let mut failures = 0usize;
            match cfg.format {
                Format::Csv => {
                    let _ = writeln!(s, "id,computed,expected,deviation,passed");
                    for r in &rows {
                        if !r.passed {
                            failures += 1;
                        }
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{}",
                            r.id,
                            fmt_num(r.computed, p),
                            fmt_num(r.expected, p),
                            fmt_num(r.deviation, p),
                            r.passed
                        );
                    }
                }
                _ => {
                    let _ = writeln!(
                        s,
                        "{:<28} {:>16} {:>16} {:>12}  status",
                        "exercise", "computed", "expected", "deviation"
                    );
                    for r in &rows {
                        if !r.passed {
                            failures += 1;
                        }
                        let mode = match r.check {
                            Check::Rel(_) | Check::Abs(_) => "",
                            Check::AtLeast => " (>=)",
                            Check::AtMost => " (<=)",
                        };
                        let _ = writeln!(
                            s,
                            "{:<28} {:>16} {:>16} {:>12}  {}{}",
                            r.id,
                            fmt_num(r.computed, 6.min(p)),
                            fmt_num(r.expected, 6.min(p)),
                            fmt_num(r.deviation, 3),
                            if r.passed { "pass" } else { "FAIL" },
                            mode,
                        );
                    }
                    let _ = writeln!(s, "{} exercises, {} failed", rows.len(), failures);
                }
            }
            write_out(cfg.output.as_deref(), &s)?;
            return Ok(if failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            });
        }
    };
    write_out(cfg.output.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

fn particle_mass(particle: Particle, c: &PhysicalConstants) -> f64 {
    match particle {
        Particle::Electron => c.m_e,
        Particle::Proton => c.m_p,
        Particle::Neutron => c.m_n,
    }
}

fn run_quanta(
    cfg: &RunConfig,
    c: &PhysicalConstants,
    cmd: &QuantaCmd,
) -> Result<String, Box<dyn std::error::Error>> {
    let p = cfg.precision;
    Ok(match cmd {
        QuantaCmd::Photon { frequency } => {
            let ph = quanta::photon_props(*frequency, c)?;
            table(&[
                ("energy", fmt_num(ph.energy, p)),
                ("energy_ev", fmt_num(ph.energy / c.ev, p)),
                ("momentum", fmt_num(ph.momentum, p)),
                ("wavelength", fmt_num(ph.wavelength, p)),
                ("omega", fmt_num(ph.omega, p)),
                ("k", fmt_num(ph.wavenumber, p)),
            ])
        }
        QuantaCmd::MatterWave {
            particle,
            mass,
            speed,
        } => {
            let m = mass.unwrap_or_else(|| particle_mass(*particle, c));
            let w = quanta::matter_wave(m, *speed, c)?;
            table(&[
                ("momentum", fmt_num(w.momentum, p)),
                ("wavelength", fmt_num(w.wavelength, p)),
                ("k", fmt_num(w.wavenumber, p)),
            ])
        }
        QuantaCmd::Photoelectric { phi, frequency } => {
            let threshold = quanta::photoelectric_threshold(*phi, c);
            let kinetic = quanta::photoelectric_kinetic(*frequency, *phi, c)?;
            table(&[
                ("kinetic_ev", fmt_num(kinetic, p)),
                ("threshold_hz", fmt_num(threshold, p)),
            ])
        }
        QuantaCmd::Fringes {
            wavelength,
            screen_distance,
            slit_separation,
            n_max,
        } => {
            let f =
                quanta::fringe_positions(*wavelength, *screen_distance, *slit_separation, *n_max)?;
            if f.small_angle_warning {
                eprintln!("warning: x_max/L > 0.2, the small-angle approximation is strained");
            }
            let mut s = format!("# spacing = {}\nn,x\n", fmt_num(f.spacing, p));
            for (i, x) in f.positions.iter().enumerate() {
                let n = i as i64 - *n_max as i64;
                let _ = writeln!(s, "{n},{}", fmt_num(*x, p));
            }
            s
        }
        QuantaCmd::Bohr { n } => {
            let orbit = quanta::bohr_orbit(*n, c)?;
            table(&[
                ("radius", fmt_num(orbit.radius, p)),
                ("speed", fmt_num(orbit.speed, p)),
                ("energy", fmt_num(orbit.energy, p)),
                ("energy_ev", fmt_num(orbit.energy / c.ev, p)),
            ])
        }
        QuantaCmd::Rydberg { n1, n2 } => {
            let upper = if n2 == "inf" {
                UpperLevel::Ionized
            } else {
                UpperLevel::Bound(n2.parse()?)
            };
            let lambda = quanta::rydberg_wavelength(*n1, upper, c)?;
            table(&[
                ("wavelength", fmt_num(lambda, p)),
                ("photon_energy_ev", fmt_num(c.h * c.c / lambda / c.ev, p)),
            ])
        }
        QuantaCmd::LightSpeed => {
            let derived = quanta::light_speed_check(c);
            table(&[
                ("c_derived", fmt_num(derived, p)),
                ("c_stored", fmt_num(c.c, p)),
                ("relative_diff", fmt_num((derived - c.c).abs() / c.c, p)),
            ])
        }
    })
}

fn run_scatter(
    cfg: &RunConfig,
    c: &PhysicalConstants,
    cmd: &ScatterCmd,
) -> Result<String, Box<dyn std::error::Error>> {
    let p = cfg.precision;
    let default_mass = |m: &Option<f64>| {
        m.unwrap_or(match cfg.units {
            Units::Si => c.m_e,
            Units::Natural => 1.0,
        })
    };
    Ok(match cmd {
        ScatterCmd::Step {
            energy,
            height,
            mass,
        } => {
            // energies arrive in eV under SI units; c.ev = 1 in natural units
            let s =
                scattering::step_scatter(energy * c.ev, height * c.ev, default_mass(mass), c.hbar)?;
            table(&[
                ("R", fmt_num(s.reflection, p)),
                ("T", fmt_num(s.transmission, p)),
                ("k_left", fmt_num(s.k_left, p)),
                ("k_right", fmt_num(s.k_right, p)),
                ("j_in", fmt_num(s.currents[0], p)),
                ("j_reflected", fmt_num(s.currents[1], p)),
                ("j_transmitted", fmt_num(s.currents[2], p)),
            ])
        }
        ScatterCmd::Barrier {
            energy,
            height,
            width,
            mass,
            sweep,
        } => {
            let m = default_mass(mass);
            let a = 0.5 * width;
            if let Some(spec) = sweep {
                let (e0, e1, n) = parse_range(spec)?;
                let mut s = String::from("E,R,T,log10T\n");
                for e in range_points(e0, e1, n) {
                    if e <= 0.0 {
                        continue;
                    }
                    let r =
                        scattering::barrier_transmission(e * c.ev, height * c.ev, a, m, c.hbar)?;
                    let _ = writeln!(
                        s,
                        "{},{},{},{}",
                        fmt_num(e, p),
                        fmt_num(r.reflection, p),
                        fmt_num(r.transmission, p),
                        fmt_num(r.transmission.log10(), p)
                    );
                }
                s
            } else {
                let e = energy.ok_or("barrier needs --energy or --sweep")?;
                let r = scattering::barrier_transmission(e * c.ev, height * c.ev, a, m, c.hbar)?;
                let mut rows = vec![
                    ("R", fmt_num(r.reflection, p)),
                    ("T", fmt_num(r.transmission, p)),
                ];
                if e < *height {
                    let wide = scattering::barrier_transmission_wide(
                        e * c.ev,
                        height * c.ev,
                        a,
                        m,
                        c.hbar,
                    )?;
                    if wide.narrow_warning {
                        eprintln!("warning: mu*a < 1, the wide-barrier estimate is unreliable");
                    }
                    rows.push(("T_wide_approx", fmt_num(wide.transmission, p)));
                    rows.push(("log10_T_wide", fmt_num(wide.log10_transmission, p)));
                }
                table(&rows)
            }
        }
        ScatterCmd::Well {
            depth,
            half_width,
            mass,
        } => {
            let levels = scattering::finite_well_bound_states(
                depth * c.ev,
                *half_width,
                default_mass(mass),
                c.hbar,
            )?;
            let mut s = String::from("n,energy,above_bottom\n");
            for (i, e) in levels.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{},{},{}",
                    i + 1,
                    fmt_num(e / c.ev, p),
                    fmt_num(e / c.ev + depth, p)
                );
            }
            s
        }
    })
}

fn run_spin(
    cfg: &RunConfig,
    c: &PhysicalConstants,
    cmd: &SpinCmd,
) -> Result<String, Box<dyn std::error::Error>> {
    let p = cfg.precision;
    Ok(match cmd {
        SpinCmd::Larmor {
            theta,
            phi,
            field,
            gamma,
            times,
        } => {
            let (t0, t1, n) = parse_range(times)?;
            let dir = Direction::new(*theta, *phi);
            let mut s = String::from("t,Sx,Sy,Sz\n");
            for t in range_points(t0, t1, n) {
                let ev = spin::larmor_quantum(dir, *gamma, *field, t, c.hbar).expectations;
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    fmt_num(t, p),
                    fmt_num(ev[0], p),
                    fmt_num(ev[1], p),
                    fmt_num(ev[2], p)
                );
            }
            s
        }
        SpinCmd::Measure { state, axis } => {
            let nums: Vec<f64> = state
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()?;
            let spinor = match nums.len() {
                2 => {
                    spin::SpinState::new(Complex64::new(nums[0], 0.0), Complex64::new(nums[1], 0.0))
                }
                4 => spin::SpinState::new(
                    Complex64::new(nums[0], nums[1]),
                    Complex64::new(nums[2], nums[3]),
                ),
                _ => return Err("state needs 2 or 4 comma-separated numbers".into()),
            };
            let dir = match axis.as_str() {
                "x" => Direction::x(),
                "y" => Direction::y(),
                "z" => Direction::Z,
                other => {
                    let parts: Vec<f64> = other
                        .split(',')
                        .map(|x| x.trim().parse::<f64>())
                        .collect::<Result<_, _>>()?;
                    if parts.len() != 2 {
                        return Err("axis must be x, y, z or 'theta,phi'".into());
                    }
                    Direction::new(parts[0], parts[1])
                }
            };
            let m = spin::measure_spin(&spinor, dir)?;
            table(&[
                ("p_plus", fmt_num(m.p_plus, p)),
                ("p_minus", fmt_num(m.p_minus, p)),
                ("collapsed_plus_up_re", fmt_num(m.collapsed_plus.up.re, p)),
                ("collapsed_plus_up_im", fmt_num(m.collapsed_plus.up.im, p)),
                (
                    "collapsed_plus_down_re",
                    fmt_num(m.collapsed_plus.down.re, p),
                ),
                (
                    "collapsed_plus_down_im",
                    fmt_num(m.collapsed_plus.down.im, p),
                ),
            ])
        }
    })
}

fn run_stats(
    cfg: &RunConfig,
    c: &PhysicalConstants,
    cmd: &StatsCmd,
) -> Result<String, Box<dyn std::error::Error>> {
    let p = cfg.precision;
    Ok(match cmd {
        StatsCmd::Occupation {
            kind,
            mu,
            temperature,
            energies,
        } => {
            let (e0, e1, n) = parse_range(energies)?;
            let model = manybody::OccupationModel::new((*kind).into(), *temperature, *mu)?;
            let mut s = String::from("E,n\n");
            for e in range_points(e0, e1, n) {
                match manybody::occupation(e, &model) {
                    Ok(occ) => {
                        let _ = writeln!(s, "{},{}", fmt_num(e, p), fmt_num(occ, p));
                    }
                    Err(_) => {
                        let _ = writeln!(s, "{},nan", fmt_num(e, p));
                    }
                }
            }
            s
        }
        StatsCmd::Mu {
            levels,
            count,
            temperature,
            kind,
        } => {
            let parsed: Vec<(f64, f64)> = levels
                .split(',')
                .map(|pair| {
                    let mut it = pair.split(':');
                    let e: f64 = it.next().ok_or("bad level")?.trim().parse()?;
                    let g: f64 = it
                        .next()
                        .map(|g| g.trim().parse())
                        .transpose()?
                        .unwrap_or(1.0);
                    Ok::<(f64, f64), Box<dyn std::error::Error>>((e, g))
                })
                .collect::<Result<_, _>>()?;
            let mu =
                manybody::solve_chemical_potential(&parsed, *count, *temperature, (*kind).into())?;
            table(&[("mu_ev", fmt_num(mu, p))])
        }
        StatsCmd::Fermi { density, mass } => {
            let m = mass.unwrap_or(c.m_e);
            let e_f = manybody::fermi_energy(*density, 1.0, m, c.hbar)?;
            table(&[
                ("fermi_energy", fmt_num(e_f, p)),
                ("fermi_energy_ev", fmt_num(e_f / c.ev, p)),
            ])
        }
        StatsCmd::Ratio {
            e1,
            e2,
            temperature,
        } => {
            let ratio = manybody::boltzmann_ratio(*e1, *e2, *temperature)?;
            table(&[("ratio", fmt_num(ratio, p))])
        }
    })
}

fn run_manybody(_cfg: &RunConfig, cmd: &ManybodyCmd) -> Result<String, Box<dyn std::error::Error>> {
    let parse_labels =
        |spec: &str| -> Vec<String> { spec.split(',').map(|l| l.trim().to_string()).collect() };
    Ok(match cmd {
        ManybodyCmd::Antisym { labels } => {
            let state = manybody::antisymmetrize(&parse_labels(labels))?;
            state_json(&state)?
        }
        ManybodyCmd::Sym { labels } => {
            let state = manybody::symmetrize(&parse_labels(labels))?;
            state_json(&state)?
        }
        ManybodyCmd::Shells { z } => {
            let config = manybody::fill_shells(*z)?;
            let mut s = String::new();
            for (label, occ) in &config {
                let _ = write!(s, "{label}^{occ} ");
            }
            s.push('\n');
            s
        }
    })
}

fn state_json(
    state: &qmkit::manybody::ManyBodyState,
) -> Result<String, Box<dyn std::error::Error>> {
    let terms: Vec<serde_json::Value> = state
        .terms()
        .iter()
        .map(|(amp, factors)| {
            json!({
                "amplitude": [amp.re, amp.im],
                "factors": factors,
            })
        })
        .collect();
    let value = json!({
        "particle_count": state.particle_count,
        "is_zero": state.is_zero(),
        "norm_sq": state.norm_sq(),
        "terms": terms,
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
}

fn read_potential_csv(path: &str) -> Result<(Grid1D, Vec<f64>), Box<dyn std::error::Error>> {
    let content = std::fs::read_to_string(path)?;
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for line in content.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('x') {
            continue;
        }
        let mut parts = line.split(',');
        let x: f64 = parts.next().ok_or("missing x column")?.trim().parse()?;
        let v: f64 = parts.next().ok_or("missing V column")?.trim().parse()?;
        xs.push(x);
        vs.push(v);
    }
    if xs.len() < 3 {
        return Err("potential file needs at least 3 rows".into());
    }
    let dx = xs[1] - xs[0];
    for w in xs.windows(2) {
        if ((w[1] - w[0]) - dx).abs() > 1e-9 * dx.abs() {
            return Err("potential file must sample a uniform grid".into());
        }
    }
    let grid = Grid1D::new(xs[0], *xs.last().unwrap(), xs.len())?;
    Ok((grid, vs))
}

fn read_wavefunction_csv(
    path: &std::path::Path,
) -> Result<WaveFunction, Box<dyn std::error::Error>> {
    let content = std::fs::read_to_string(path)?;
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for line in content.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('x') {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() < 3 {
            return Err("wave function file needs x,re,im columns".into());
        }
        xs.push(parts[0].trim().parse::<f64>()?);
        values.push(Complex64::new(
            parts[1].trim().parse::<f64>()?,
            parts[2].trim().parse::<f64>()?,
        ));
    }
    if xs.len() < 3 {
        return Err("wave function file needs at least 3 rows".into());
    }
    let grid = Grid1D::new(xs[0], *xs.last().unwrap(), xs.len())?;
    Ok(WaveFunction::new(grid, values)?)
}
