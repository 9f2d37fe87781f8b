//! Command-line schema. Every numeric flag has a default and a checked range.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, TAU};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Parser)]
#[command(name = "qfoundry", version, about = "Deterministic numerical experiments on quantum foundations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Seed for every Monte Carlo draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output directory (default: current directory). QFOUNDRY_OUT overrides it.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Both)]
    pub format: Format,
    /// Unit system for experiments with dimensionful output.
    #[arg(long, global = true, value_enum, default_value_t = Units::Natural)]
    pub units: Units,
    /// Replacement SI constants file (name=value lines).
    #[arg(long, global = true, value_name = "FILE")]
    pub constants: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn json(self) -> bool {
        self != Format::Csv
    }

    pub fn csv(self) -> bool {
        self != Format::Json
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Natural,
    Si,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Mach-Zehnder detector probabilities.
    Mz(MzArgs),
    /// Cat, observer and environment chain.
    Cat(CatArgs),
    /// Survival under repeated measurement.
    Zeno(ZenoArgs),
    /// Coherence of a detector record against environment overlap.
    Decohere(DecohereArgs),
    /// Singlet correlations against a local hidden variable model.
    Bell(BellArgs),
    /// Four-agent extended Wigner's friend protocol.
    Frwigner(NoArgs),
    /// Branch weights under repeated lethal measurements.
    Immortal(ImmortalArgs),
    /// Entanglement entropy of a harmonic chain.
    Gaussent(GaussentArgs),
    /// Schwarzschild thermodynamics.
    Hawking(HawkingArgs),
    /// Thermal reduction of the Unruh state.
    Unruh(UnruhArgs),
    /// Peak of the scattering barrier against angular momentum.
    Barrier(BarrierArgs),
    /// Haar-average subsystem entropy and information.
    Pagecurve(PageArgs),
    /// Thermofield double and its Gibbs reduction.
    Tfd(TfdArgs),
    /// Geodesic entropy in AdS3.
    Rt(RtArgs),
    /// AdS scaling dimensions.
    Dim(DimArgs),
    /// Page-Wootters photon clock.
    Clock(ClockArgs),
    /// Pilot-wave trajectories.
    Bohm(BohmArgs),
    /// Print the experiment catalog.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Re-run the experiment recorded in a manifest.
    Replay { manifest: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Mz(_) => "mz",
            Command::Cat(_) => "cat",
            Command::Zeno(_) => "zeno",
            Command::Decohere(_) => "decohere",
            Command::Bell(_) => "bell",
            Command::Frwigner(_) => "frwigner",
            Command::Immortal(_) => "immortal",
            Command::Gaussent(_) => "gaussent",
            Command::Hawking(_) => "hawking",
            Command::Unruh(_) => "unruh",
            Command::Barrier(_) => "barrier",
            Command::Pagecurve(_) => "pagecurve",
            Command::Tfd(_) => "tfd",
            Command::Rt(_) => "rt",
            Command::Dim(_) => "dim",
            Command::Clock(_) => "clock",
            Command::Bohm(_) => "bohm",
            Command::List { .. } => "list",
            Command::Replay { .. } => "replay",
        }
    }

    /// The parameter record written to the manifest.
    pub fn params(&self) -> serde_json::Value {
        fn v<S: Serialize>(s: &S) -> serde_json::Value {
            serde_json::to_value(s).unwrap_or(serde_json::Value::Null)
        }
        match self {
            Command::Mz(a) => v(a),
            Command::Cat(a) => v(a),
            Command::Zeno(a) => v(a),
            Command::Decohere(a) => v(a),
            Command::Bell(a) => v(a),
            Command::Frwigner(a) => v(a),
            Command::Immortal(a) => v(a),
            Command::Gaussent(a) => v(a),
            Command::Hawking(a) => v(a),
            Command::Unruh(a) => v(a),
            Command::Barrier(a) => v(a),
            Command::Pagecurve(a) => v(a),
            Command::Tfd(a) => v(a),
            Command::Rt(a) => v(a),
            Command::Dim(a) => v(a),
            Command::Clock(a) => v(a),
            Command::Bohm(a) => v(a),
            Command::List { json } => serde_json::json!({ "json": json }),
            Command::Replay { manifest } => serde_json::json!({ "manifest": manifest }),
        }
    }
}

fn check(x: f64, lo: f64, hi: f64, open_lo: bool) -> Result<f64, String> {
    let above = if open_lo { x > lo } else { x >= lo };
    if above && x <= hi {
        Ok(x)
    } else {
        let left = if open_lo { '(' } else { '[' };
        Err(format!("{x} is outside {left}{lo}, {hi}]"))
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number"))
}

/// Closed range `[lo, hi]`.
fn ranged(lo: f64, hi: f64) -> impl Fn(&str) -> Result<f64, String> + Clone + Send + Sync + 'static {
    move |s| check(parse_f64(s)?, lo, hi, false)
}

/// Half-open range `(0, hi]`.
fn positive(hi: f64) -> impl Fn(&str) -> Result<f64, String> + Clone + Send + Sync + 'static {
    move |s| check(parse_f64(s)?, 0.0, hi, true)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NoArgs {}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MzArgs {
    /// Remove the second beam splitter.
    #[arg(long)]
    pub no_bs2: bool,
    /// Transmission amplitude of each splitter (before normalization).
    #[arg(long, default_value_t = 1.0, value_parser = ranged(0.0, 1e6))]
    pub transmission: f64,
    /// Reflection amplitude magnitude.
    #[arg(long, default_value_t = 1.0, value_parser = ranged(0.0, 1e6))]
    pub reflection: f64,
    /// Reflection phase in degrees.
    #[arg(long, default_value_t = 90.0, value_parser = ranged(-360.0, 360.0))]
    pub phase: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CatArgs {
    /// Amplitude of the alive branch; the dead branch gets √(1−α²).
    #[arg(long, default_value_t = FRAC_1_SQRT_2, value_parser = ranged(0.0, 1.0))]
    pub alpha: f64,
    /// Overlap ⟨E−|E+⟩ of the environment states.
    #[arg(long, default_value_t = 0.0, value_parser = ranged(0.0, 1.0))]
    pub kappa: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZenoArgs {
    /// Total evolution time under H = σx.
    #[arg(long, default_value_t = FRAC_PI_2, value_parser = positive(1e3))]
    pub time: f64,
    /// Measurements run over N = 2^0 … 2^max-power.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=24))]
    pub max_power: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DecohereArgs {
    #[arg(long, default_value_t = FRAC_1_SQRT_2, value_parser = ranged(0.0, 1.0))]
    pub alpha: f64,
    /// Environment overlaps |κ| to scan.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.25, 0.5, 1.0], value_parser = ranged(0.0, 1.0))]
    pub kappas: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LhvKind {
    /// f = sign(a·λ), λ uniform on the sphere.
    Sign,
    /// Response rule drawn from the seed.
    Randomized,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BellArgs {
    /// Direction a, in-plane angle in degrees.
    #[arg(long, default_value_t = 0.0, value_parser = ranged(-360.0, 360.0))]
    pub a: f64,
    /// Direction b in degrees.
    #[arg(long, default_value_t = 90.0, value_parser = ranged(-360.0, 360.0))]
    pub b: f64,
    /// Direction c in degrees.
    #[arg(long, default_value_t = 45.0, value_parser = ranged(-360.0, 360.0))]
    pub theta: f64,
    #[arg(long, value_enum, default_value_t = LhvKind::Sign)]
    pub model: LhvKind,
    /// Hidden-variable draws per correlation.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(2..=1_000_000_000))]
    pub samples: u64,
    /// Angle step of the correlation curve, degrees.
    #[arg(long, default_value_t = 5.0, value_parser = ranged(0.5, 90.0))]
    pub step: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ImmortalArgs {
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=127))]
    pub rounds: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryArg {
    Periodic,
    Open,
}

/// Block sizes as a comma list with `lo-hi` ranges, e.g. `1-10,20,40`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Sizes(pub Vec<usize>);

impl FromStr for Sizes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || format!("bad size `{tok}`");
            match tok.split_once('-') {
                Some((a, b)) => {
                    let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                    if a > b {
                        return Err(bad());
                    }
                    out.extend(a..=b);
                }
                None => out.push(tok.parse().map_err(|_| bad())?),
            }
        }
        if out.is_empty() || out.contains(&0) {
            return Err("sizes must be a nonempty list of positive integers".into());
        }
        out.sort_unstable();
        out.dedup();
        Ok(Sizes(out))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GaussentArgs {
    /// Number of oscillators.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(3..=2000))]
    pub sites: u64,
    /// On-site mass term m (couplings are 1).
    #[arg(long, default_value_t = 1e-6, value_parser = ranged(0.0, 1e3))]
    pub mass: f64,
    /// Block sizes ℓ (default 1 to sites/2).
    #[arg(long, value_parser = Sizes::from_str)]
    pub sizes: Option<Sizes>,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Periodic)]
    pub boundary: BoundaryArg,
    /// Fit window for the slope of S against ln ℓ.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=1000))]
    pub fit_lo: u64,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(2..=1000))]
    pub fit_hi: u64,
    /// Also compare the λ formula with the Fock-space oracle on small models.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HawkingArgs {
    /// Mass in natural units.
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e30))]
    pub mass: f64,
    /// Newton constant in natural units.
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e30))]
    pub g: f64,
    /// Mass in solar masses (SI units).
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e15))]
    pub mass_solar: f64,
    /// Relative mass step of the first-law check.
    #[arg(long, default_value_t = 1e-6, value_parser = positive(1e-3))]
    pub delta: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct UnruhArgs {
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e6))]
    pub omega: f64,
    /// Proper acceleration.
    #[arg(long, default_value_t = TAU, value_parser = positive(1e6))]
    pub accel: f64,
    /// Highest occupation number kept.
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(10..=400))]
    pub n_max: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BarrierArgs {
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=500))]
    pub l_max: u32,
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e30))]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e30))]
    pub g: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e15))]
    pub mass_solar: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PageArgs {
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..=14))]
    pub qubits: u64,
    /// Haar states per curve point.
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(2..=1_000_000))]
    pub samples: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TfdArgs {
    /// Energy levels.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 1.0], value_parser = ranged(-1e6, 1e6))]
    pub spectrum: Vec<f64>,
    /// Inverse temperature.
    #[arg(long, default_value_t = 3f64.ln(), value_parser = positive(1e6))]
    pub beta: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RtArgs {
    /// AdS radius R.
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e6))]
    pub radius: f64,
    /// Three-dimensional Newton constant.
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e6))]
    pub g3: f64,
    /// Interval length l.
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e6))]
    pub interval: f64,
    /// Ratios l/a of interval to cutoff.
    #[arg(long, value_delimiter = ',', default_values_t = [10.0, 100.0, 1000.0], value_parser = ranged(10.0, 1e12))]
    pub ratios: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DimArgs {
    /// Boundary dimension.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub d: u32,
    /// Values of m²L².
    #[arg(long = "m2l2", value_delimiter = ',', allow_hyphen_values = true,
          default_values_t = [-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 5.0], value_parser = ranged(-1e6, 1e6))]
    pub m2l2: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClockArgs {
    /// Clock frequency ω.
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e3))]
    pub omega: f64,
    /// Points on the τ grid over one period.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(2..=100_000))]
    pub points: u64,
    /// Global times at which the conditional probabilities are taken.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true,
          default_values_t = [0.0, 0.37, 1.91], value_parser = ranged(-1e6, 1e6))]
    pub plate_times: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialArg {
    Free,
    Harmonic,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BohmArgs {
    #[arg(long, default_value_t = 2048, value_parser = clap::value_parser!(u64).range(64..=1_000_000))]
    pub points: u64,
    #[arg(long, default_value_t = -40.0, allow_negative_numbers = true, value_parser = ranged(-1e6, 1e6))]
    pub x_min: f64,
    #[arg(long, default_value_t = 40.0, allow_negative_numbers = true, value_parser = ranged(-1e6, 1e6))]
    pub x_max: f64,
    /// Packet centre.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_parser = ranged(-1e6, 1e6))]
    pub x0: f64,
    /// Initial width σ₀.
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e6))]
    pub sigma: f64,
    /// Mean wavenumber k₀.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_parser = ranged(-1e3, 1e3))]
    pub k0: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e6))]
    pub mass: f64,
    #[arg(long, value_enum, default_value_t = PotentialArg::Free)]
    pub potential: PotentialArg,
    /// Trap frequency for the harmonic preset.
    #[arg(long, default_value_t = 1.0, value_parser = positive(1e3))]
    pub omega: f64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..=10_000_000))]
    pub n_traj: u64,
    /// Crank-Nicolson step (rounded down so an even step count hits t-final).
    #[arg(long, default_value_t = 0.005, value_parser = positive(1.0))]
    pub dt: f64,
    /// End time. Default: the time at which a free packet's width triples,
    /// or one trap period for the harmonic preset.
    #[arg(long, value_parser = positive(1e6))]
    pub t_final: Option<f64>,
    /// Trajectories written to the path CSV.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(0..=10_000))]
    pub record: u64,
    /// Keep every n-th RK4 step in the path CSV.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
    pub record_every: u64,
}
