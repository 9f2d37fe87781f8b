use qfoundry::blackhole::page_curve_mc;
use qfoundry::gaussian::{
    bombelli_entropy, chain_scan, fock_oracle_entropy, ground_state_w, log_slope, three_oscillator_ring,
    two_oscillators, Boundary, FockOptions, TracedRegion,
};

use super::Context;
use crate::args::{BoundaryArg, GaussentArgs, PageArgs};
use crate::error::CliError;
use crate::report::{Curve, ExperimentReport, Unit};

/// Block sizes compared by the saturation check.
const SATURATION_BLOCKS: (usize, usize) = (20, 40);

pub fn gaussent(a: &GaussentArgs) -> Result<ExperimentReport, CliError> {
    let sites = a.sites as usize;
    let sizes = match &a.sizes {
        Some(s) => s.0.clone(),
        None => (1..=sites / 2).collect(),
    };
    if let Some(bad) = sizes.iter().find(|&&l| l >= sites) {
        return Err(CliError::usage(format!("block size {bad} must be below the {sites} sites")));
    }
    let boundary = match a.boundary {
        BoundaryArg::Periodic => Boundary::Periodic,
        BoundaryArg::Open => Boundary::Open,
    };
    let points = chain_scan(a.mass, sites, &sizes, boundary)?;

    let mut r = ExperimentReport::new("gaussent");
    let mut curve = Curve::new("entropy", &[("length", Unit::Dimensionless), ("entropy", Unit::Nats)]);
    for p in &points {
        curve.push(vec![p.length as f64, p.entropy]);
    }
    r.curve(curve);

    // one boundary point for an open chain, two for a ring
    let expected = match boundary {
        Boundary::Periodic => 1.0 / 3.0,
        Boundary::Open => 1.0 / 6.0,
    };
    let correlation_length = if a.mass > 0.0 { 1.0 / a.mass } else { f64::INFINITY };
    match log_slope(&points, a.fit_lo as usize, a.fit_hi as usize) {
        Ok(slope) => {
            r.scalar("log_slope", slope, Unit::Nats);
            r.scalar("central_charge", slope / expected, Unit::Dimensionless);
            if correlation_length >= sites as f64 {
                r.within(
                    "log_law",
                    (slope - expected).abs() / expected,
                    0.1,
                    "slope of S against ln l matches c/3 (ring) or c/6 (open) with c = 1",
                );
            }
        }
        Err(_) => r.note("fewer than two block sizes inside the fit window; no slope"),
    }
    r.scalar("correlation_length", correlation_length, Unit::Dimensionless);
    let at = |l: usize| points.iter().find(|p| p.length == l).map(|p| p.entropy);
    let (lo, hi) = SATURATION_BLOCKS;
    if correlation_length <= lo as f64 / 2.0 {
        if let (Some(s_lo), Some(s_hi)) = (at(lo), at(hi)) {
            let change = (s_hi - s_lo).abs() / s_lo;
            r.scalar("saturation_change", change, Unit::Dimensionless);
            r.within("saturation", change, 0.01, "massive chain: S(40) within 1% of S(20)");
        }
    }

    if a.oracle {
        let opts = FockOptions::default();
        let mut table = Curve::new(
            "oracle",
            &[
                ("modes", Unit::Dimensionless),
                ("coupling", Unit::Dimensionless),
                ("closed_form", Unit::Nats),
                ("fock", Unit::Nats),
                ("fock_cutoff", Unit::Dimensionless),
            ],
        );
        let mut worst = 0.0f64;
        for step in 1..=9 {
            let eps = 0.1 * step as f64;
            for (v, traced) in [(two_oscillators(1.0, eps), vec![1]), (three_oscillator_ring(1.0, eps), vec![2])] {
                let model = ground_state_w(&v)?;
                let region = TracedRegion::new(traced, model.size())?;
                let exact = bombelli_entropy(&model, &region)?;
                let fock = fock_oracle_entropy(&model, &region, &opts)?;
                worst = worst.max((exact - fock.entropy).abs());
                table.push(vec![model.size() as f64, eps, exact, fock.entropy, fock.n_max as f64]);
            }
        }
        // two more three-mode cases with the larger block traced
        for (eps, traced) in [(0.25, vec![1, 2]), (0.75, vec![0, 2])] {
            let model = ground_state_w(&three_oscillator_ring(1.0, eps))?;
            let region = TracedRegion::new(traced, 3)?;
            let exact = bombelli_entropy(&model, &region)?;
            let fock = fock_oracle_entropy(&model, &region, &opts)?;
            worst = worst.max((exact - fock.entropy).abs());
            table.push(vec![3.0, eps, exact, fock.entropy, fock.n_max as f64]);
        }
        r.scalar("oracle_max_difference", worst, Unit::Nats);
        r.within("oracle", worst, 1e-6, "closed form matches the truncated Fock-space entropy");
        r.curve(table);
    }
    Ok(r)
}

pub fn pagecurve(a: &PageArgs, ctx: &Context) -> Result<ExperimentReport, CliError> {
    let n = a.qubits as usize;
    let pts = page_curve_mc(n, a.samples as usize, ctx.seed)?;
    let mut curve = Curve::new(
        "page",
        &[
            ("m", Unit::Dimensionless),
            ("mean_entropy", Unit::Nats),
            ("information", Unit::Nats),
            ("stderr", Unit::Nats),
            ("thermal_entropy", Unit::Nats),
            ("page_average", Unit::Nats),
        ],
    );
    for p in &pts {
        curve.push(vec![p.m as f64, p.mean_entropy, p.information, p.stderr, p.thermal_entropy, p.page_average]);
    }
    let mut r = ExperimentReport::new("pagecurve");
    let s: Vec<f64> = pts.iter().map(|p| p.mean_entropy).collect();
    let peak = (0..s.len()).fold(0, |best, k| if s[k] > s[best] { k } else { best });
    r.scalar("page_point", pts[peak].m as f64, Unit::Dimensionless);
    r.scalar("max_entropy", s[peak], Unit::Nats);
    // unimodal: rises to the peak, then falls
    let rising = s[..=peak].windows(2).all(|w| w[1] > w[0]);
    let falling = s[peak..].windows(2).all(|w| w[1] < w[0]);
    let half = n / 2;
    let at_half = pts[peak].m == half || (n % 2 == 1 && pts[peak].m == half + 1);
    r.check("unimodal", rising && falling && at_half, pts[peak].m as f64, half as f64, "single maximum at m = n/2");

    // S(m) and S(n − m) come from the same pure states; exact ties pass
    let (mut worst_sym, mut symmetric) = (0.0f64, true);
    for p in &pts {
        let q = &pts[n - p.m];
        let diff = (p.mean_entropy - q.mean_entropy).abs();
        let sigma = (p.stderr.powi(2) + q.stderr.powi(2)).sqrt();
        symmetric &= diff == 0.0 || diff < 3.0 * sigma;
        worst_sym = worst_sym.max(diff - 3.0 * sigma);
    }
    r.check("symmetric", symmetric, worst_sym, 0.0, "|S(m) - S(n-m)| < 3 sigma");
    if n >= 4 {
        let target = 0.95 * 2.0 * std::f64::consts::LN_2;
        r.check("near_maximal_m2", s[2] >= target, s[2], target, "S(2) >= 0.95 * 2 ln 2");
    }
    let worst_info = pts.iter().map(|p| p.information + 3.0 * p.stderr).fold(f64::INFINITY, f64::min);
    r.check("information_nonnegative", worst_info >= 0.0, worst_info, 0.0, "I(m) >= -3 sigma");
    let page_dev =
        pts.iter().map(|p| (p.mean_entropy - p.page_average).abs() - 3.0 * p.stderr).fold(f64::NEG_INFINITY, f64::max);
    r.scalar("page_average_excess", page_dev, Unit::Nats);
    r.curve(curve);
    Ok(r)
}
