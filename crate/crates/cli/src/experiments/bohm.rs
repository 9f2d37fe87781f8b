use qfoundry::pilot::{
    gaussian_quantum_potential, harmonic_potential, ks_distance, quantum_potential, run_trajectories, Grid1D,
    TrajectoryOptions, WaveField,
};

use super::Context;
use crate::args::{BohmArgs, PotentialArg};
use crate::error::CliError;
use crate::report::{Curve, ExperimentReport, Unit};

const HISTOGRAM_BINS: usize = 128;

/// Largest deviation of the finite-difference quantum potential from the
/// closed form within four widths of the centre.
fn quantum_potential_error(x_min: f64, x_max: f64, points: usize, a: &BohmArgs) -> Result<f64, CliError> {
    let grid = Grid1D::new(x_min, x_max, points)?;
    let f = WaveField::gaussian(grid, a.x0, a.sigma, 0.0, a.mass, vec![0.0; points])?;
    let u = quantum_potential(&f);
    Ok(grid
        .xs()
        .iter()
        .enumerate()
        .filter(|(_, &x)| (x - a.x0).abs() <= 4.0 * a.sigma)
        .map(|(i, &x)| (u.values[i] - gaussian_quantum_potential(x, a.x0, a.sigma, a.mass)).abs())
        .fold(0.0, f64::max))
}

pub fn bohm(a: &BohmArgs, ctx: &Context) -> Result<ExperimentReport, CliError> {
    if a.x_max.partial_cmp(&a.x_min) != Some(std::cmp::Ordering::Greater) {
        return Err(CliError::usage("x-max must exceed x-min"));
    }
    let n = a.points as usize;
    let grid = Grid1D::new(a.x_min, a.x_max, n)?;
    let potential = match a.potential {
        PotentialArg::Free => vec![0.0; n],
        PotentialArg::Harmonic => harmonic_potential(&grid, a.mass, a.omega),
    };
    let field = WaveField::gaussian(grid, a.x0, a.sigma, a.k0, a.mass, potential)?;
    let spread_time = 2.0 * a.mass * a.sigma * a.sigma;
    let t_final = a.t_final.unwrap_or(match a.potential {
        PotentialArg::Free => spread_time * 8f64.sqrt(),
        PotentialArg::Harmonic => std::f64::consts::TAU / a.omega,
    });
    let mut steps = (t_final / a.dt).ceil().max(2.0) as usize;
    steps += steps % 2;
    let dt = t_final / steps as f64;

    let opts = TrajectoryOptions { record: a.record as usize, record_every: a.record_every as usize };
    let (ens, last) = run_trajectories(&field, dt, steps, a.n_traj as usize, ctx.seed, &opts)?;
    let ks_initial = ks_distance(&ens.initial, &field);
    let ks_final = ks_distance(&ens.positions, &last);
    let drift = (last.norm() - field.norm()).abs() * 1000.0 / steps as f64;

    // same stencil on a grid and its midpoint refinement
    let half = 20.0 * a.sigma;
    let coarse = quantum_potential_error(a.x0 - half, a.x0 + half, 401, a)?;
    let fine = quantum_potential_error(a.x0 - half, a.x0 + half, 801, a)?;
    let order = (coarse / fine).log2();

    let mut r = ExperimentReport::new("bohm");
    r.scalar("t_final", t_final, Unit::Natural);
    r.scalar("steps", steps as f64, Unit::Dimensionless);
    r.scalar("dt", dt, Unit::Natural);
    r.scalar("ks_initial", ks_initial, Unit::Dimensionless);
    r.scalar("ks_final", ks_final, Unit::Dimensionless);
    r.scalar("width_initial", field.width(), Unit::Natural);
    r.scalar("width_final", last.width(), Unit::Natural);
    if a.potential == PotentialArg::Free {
        r.scalar("width_closed_form", a.sigma * (1.0 + (t_final / spread_time).powi(2)).sqrt(), Unit::Natural);
    }
    r.scalar("ensemble_mean", ens.mean_position(), Unit::Natural);
    r.scalar("born_mean", last.mean_position(), Unit::Natural);
    r.scalar("norm_drift_per_1000_steps", drift, Unit::Dimensionless);
    r.scalar("quantum_potential_error", coarse, Unit::Natural);
    r.scalar("quantum_potential_order", order, Unit::Dimensionless);

    // the 1% critical value of the KS statistic, floored at 0.02
    let ks_tol = (1.63 / (a.n_traj as f64).sqrt()).max(0.02);
    r.within("equivariance", ks_final, ks_tol, "KS distance of the evolved ensemble from |psi|^2");
    r.within("norm_drift", drift, 1e-8, "Crank-Nicolson norm drift per 1000 steps");
    r.within("quantum_potential_order", (order - 2.0).abs(), 0.2, "finite-difference Q converges at second order");
    r.check("no_crossing", ens.order_preserved(), 0.0, 0.0, "trajectories keep their order");

    let names: Vec<String> = std::iter::once("t".to_string())
        .chain((0..ens.paths.first().map_or(0, Vec::len)).map(|k| format!("x{k}")))
        .collect();
    let cols: Vec<(&str, Unit)> = names.iter().map(|s| (s.as_str(), Unit::Natural)).collect();
    let mut paths = Curve::new("paths", &cols);
    for (t, xs) in ens.times.iter().zip(&ens.paths) {
        paths.push(std::iter::once(*t).chain(xs.iter().copied()).collect());
    }
    r.curve(paths);

    let width = (a.x_max - a.x_min) / HISTOGRAM_BINS as f64;
    let bin = |x: f64| (((x - a.x_min) / width) as usize).min(HISTOGRAM_BINS - 1);
    let mut counts = vec![0usize; HISTOGRAM_BINS];
    for &x in &ens.positions {
        counts[bin(x)] += 1;
    }
    let (mut born, mut hits) = (vec![0.0; HISTOGRAM_BINS], vec![0usize; HISTOGRAM_BINS]);
    for (x, rho) in grid.xs().into_iter().zip(last.density()) {
        born[bin(x)] += rho;
        hits[bin(x)] += 1;
    }
    let mut hist = Curve::new("density", &[("x", Unit::Natural), ("born", Unit::Natural), ("ensemble", Unit::Natural)]);
    for k in 0..HISTOGRAM_BINS {
        let centre = a.x_min + (k as f64 + 0.5) * width;
        let b = if hits[k] > 0 { born[k] / hits[k] as f64 } else { 0.0 };
        hist.push(vec![centre, b, counts[k] as f64 / (ens.positions.len() as f64 * width)]);
    }
    r.curve(hist);
    Ok(r)
}
