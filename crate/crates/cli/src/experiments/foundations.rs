//! Measurement, nonlocality, gedanken experiments and the photon clock.

use num_complex::Complex64;
use qfoundry::bell::{bell_check, lhv_bell_check, lhv_correlation, singlet_correlation, Direction, LhvModel};
use qfoundry::clock::{photon_clock_model, photon_clock_table, super_observer_invariance, tau_grid};
use qfoundry::gedanken::{cat_chain, fr_protocol, mach_zehnder, quantum_immortality, InterferometerConfig};
use qfoundry::measurement::{
    decohere as decohere_chain, energy_variance, zeno_survival, zeno_survival_estimate, zeno_timescale,
    DecoherenceChain,
};
use qfoundry::{HilbertPartition, Operator, StateVector};
use serde_json::json;

use super::{matrix_record, max_off_diagonal, Context};
use crate::args::{BellArgs, CatArgs, ClockArgs, DecohereArgs, ImmortalArgs, LhvKind, MzArgs, ZenoArgs};
use crate::error::CliError;
use crate::report::{Curve, ExperimentReport, Unit};

const EXACT: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Second amplitude of a normalized real pair.
fn partner(alpha: f64) -> f64 {
    (1.0 - alpha * alpha).max(0.0).sqrt()
}

pub fn mz(a: &MzArgs) -> Result<ExperimentReport, CliError> {
    let config = |phase_deg: f64| InterferometerConfig {
        bs2_present: !a.no_bs2,
        reflection: Complex64::from_polar(a.reflection, phase_deg.to_radians()),
        transmission: c(a.transmission),
    };
    let p = mach_zehnder(&config(a.phase))?;
    let mut r = ExperimentReport::new("mz");
    r.scalar("p_d1", p.p_d1, Unit::Dimensionless);
    r.scalar("p_d2", p.p_d2, Unit::Dimensionless);
    r.within("probability_sum", (p.p_d1 + p.p_d2 - 1.0).abs(), EXACT, "P(D1) + P(D2) = 1");
    let cfg = config(a.phase);
    r.record(
        "interferometer",
        &json!({
            "bs2_present": cfg.bs2_present,
            "transmission": [cfg.transmission.re, cfg.transmission.im],
            "reflection": [cfg.reflection.re, cfg.reflection.im],
            "detectors": p,
        }),
    )?;
    // t = cos θ, r = i sin θ keeps the splitter unitary
    let mut scan = Curve::new(
        "splitter_scan",
        &[("reflectivity", Unit::Dimensionless), ("p_d1", Unit::Dimensionless), ("p_d2", Unit::Dimensionless)],
    );
    for k in 0..=20 {
        let theta = std::f64::consts::FRAC_PI_2 * k as f64 / 20.0;
        let q = mach_zehnder(&InterferometerConfig {
            bs2_present: !a.no_bs2,
            reflection: Complex64::new(0.0, theta.sin()),
            transmission: c(theta.cos()),
        })?;
        scan.push(vec![theta.sin().powi(2), q.p_d1, q.p_d2]);
    }
    r.curve(scan);
    Ok(r)
}

pub fn cat(a: &CatArgs) -> Result<ExperimentReport, CliError> {
    let beta = partner(a.alpha);
    let rec = cat_chain(c(a.alpha), c(beta), c(a.kappa))?;
    let m = rec.rho_r.matrix();
    let last = m.nrows() - 1;
    let coherence = m[(0, last)].norm();
    let predicted = a.alpha * beta * a.kappa;
    let mut r = ExperimentReport::new("cat");
    r.scalar("beta", beta, Unit::Dimensionless);
    r.scalar("coherence", coherence, Unit::Dimensionless);
    r.scalar("purity_rho_r", rec.rho_r.purity(), Unit::Dimensionless);
    r.within(
        "coherence_law",
        (coherence - predicted).abs(),
        EXACT,
        "|<alive,happy|rho_r|dead,sad>| = alpha beta kappa",
    );
    r.within("global_purity", (rec.rho_e.purity() - 1.0).abs(), EXACT, "cat, observer and environment stay pure");
    r.record("labels", &rec.labels)?;
    r.record("rho_r", &matrix_record(m))?;
    Ok(r)
}

pub fn zeno(a: &ZenoArgs) -> Result<ExperimentReport, CliError> {
    let q = HilbertPartition::single(2, "Q")?;
    let psi0 = StateVector::<f64>::basis(q, 0)?;
    let h = Operator::<f64>::pauli_x("Q");
    let variance = energy_variance(&psi0, &h)?;
    let tau = zeno_timescale(&psi0, &h)?.finite();

    let mut curve = Curve::new(
        "survival",
        &[("n", Unit::Dimensionless), ("survival", Unit::Dimensionless), ("quadratic_estimate", Unit::Dimensionless)],
    );
    let mut survival = Vec::new();
    for k in 0..=a.max_power {
        let n = 1u32 << k;
        let p = zeno_survival(&psi0, &h, a.time, n)?;
        let est = tau.map(|tau| zeno_survival_estimate(a.time, n, tau)).unwrap_or(1.0);
        curve.push(vec![n as f64, p, est]);
        survival.push(p);
    }
    let mut r = ExperimentReport::new("zeno");
    let min_step = survival.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    r.check("monotone", min_step > 0.0, min_step, 0.0, "survival strictly increases with N");
    if a.max_power >= 12 {
        let p4096 = survival[12];
        r.scalar("survival_4096", p4096, Unit::Dimensionless);
        r.check("frozen_at_4096", p4096 > 0.999, p4096, 0.999, "survival at N = 4096 exceeds 0.999");
    }
    // 1 − P(t) = ΔE² t² + O(t⁴) for a single measurement
    let t_short = 1e-4;
    let coefficient = (1.0 - zeno_survival(&psi0, &h, t_short, 1)?) / (t_short * t_short);
    r.scalar("energy_variance", variance, Unit::Natural);
    r.scalar("short_time_coefficient", coefficient, Unit::Natural);
    if let Some(tau) = tau {
        r.scalar("zeno_time", tau, Unit::Natural);
    }
    r.within(
        "short_time_quadratic",
        (coefficient - variance).abs() / variance.max(f64::MIN_POSITIVE),
        1e-6,
        "(1 - P(t))/t^2 -> energy variance",
    );
    r.curve(curve);
    Ok(r)
}

pub fn decohere(a: &DecohereArgs) -> Result<ExperimentReport, CliError> {
    let beta = partner(a.alpha);
    let mut curve = Curve::new(
        "coherence",
        &[("kappa", Unit::Dimensionless), ("off_diagonal", Unit::Dimensionless), ("linear_law", Unit::Dimensionless)],
    );
    let mut r = ExperimentReport::new("decohere");
    let mut worst = 0.0f64;
    for &kappa in &a.kappas {
        let chain = DecoherenceChain::with_overlap(c(a.alpha), c(beta), c(kappa))?;
        let rec = decohere_chain(&chain)?;
        let law = a.alpha * beta * kappa;
        worst = worst.max((rec.coherence - law).abs());
        curve.push(vec![kappa, rec.coherence, law]);
        if kappa == 0.0 {
            let completed = chain.completed_measurement()?;
            r.within(
                "kappa0_completed_measurement",
                rec.reduced.distance(&completed),
                EXACT,
                "orthogonal environment reproduces the completed measurement",
            );
            r.within("kappa0_off_diagonals", max_off_diagonal(rec.reduced.matrix()), EXACT, "all off-diagonals vanish");
            r.record("rho_r_kappa0", &matrix_record(rec.reduced.matrix()))?;
        }
    }
    r.within("linear_in_kappa", worst, 1e-10, "off-diagonal = |alpha beta| |kappa|");
    r.curve(curve);
    Ok(r)
}

pub fn bell(a: &BellArgs, ctx: &Context) -> Result<ExperimentReport, CliError> {
    let dir = |deg: f64| Direction::<f64>::in_plane(deg.to_radians());
    let (da, db, dc) = (dir(a.a), dir(a.b), dir(a.theta));
    let model = match a.model {
        LhvKind::Sign => LhvModel::sign(),
        LhvKind::Randomized => LhvModel::randomized(ctx.seed, 0),
    };
    let quantum = bell_check(&da, &db, &dc, |x, y| singlet_correlation(x, y).value())?;
    let lhv = lhv_bell_check(&model, &da, &db, &dc, a.samples, ctx.seed)?;

    let mut r = ExperimentReport::new("bell");
    r.scalar("quantum_lhs", quantum.lhs, Unit::Dimensionless);
    r.scalar("quantum_rhs", quantum.rhs, Unit::Dimensionless);
    r.scalar("lhv_lhs", lhv.lhs, Unit::Dimensionless);
    r.scalar("lhv_rhs", lhv.rhs, Unit::Dimensionless);
    r.scalar("lhv_sigma", lhv.sigma, Unit::Dimensionless);
    r.check(
        "violated",
        quantum.violated,
        quantum.lhs - quantum.rhs,
        0.0,
        "singlet breaks |P(a,b) - P(a,c)| <= 1 + P(b,c)",
    );
    let excess = lhv.lhs - lhv.rhs;
    r.check(
        "lhv_satisfies",
        excess <= 3.0 * lhv.sigma,
        excess,
        3.0 * lhv.sigma,
        "hidden-variable estimate obeys the inequality within 3 sigma",
    );
    r.record("lhv", &lhv)?;
    r.record("model", &model)?;

    let mut curve = Curve::new(
        "correlation",
        &[
            ("theta", Unit::Degree),
            ("quantum", Unit::Dimensionless),
            ("lhv", Unit::Dimensionless),
            ("lhv_stderr", Unit::Dimensionless),
        ],
    );
    let origin = dir(0.0);
    let steps = (180.0 / a.step).floor() as usize;
    for k in 0..=steps {
        let theta = k as f64 * a.step;
        let d = dir(theta);
        let q = singlet_correlation(&origin, &d).value();
        // independent draws per angle
        let est = lhv_correlation(&model, &origin, &d, a.samples, ctx.seed.wrapping_add(1 + k as u64))?;
        curve.push(vec![theta, q, est.mean, est.stderr]);
    }
    r.curve(curve);
    Ok(r)
}

pub fn frwigner() -> Result<ExperimentReport, CliError> {
    let t = fr_protocol::<f64>()?;
    let o = t.outcomes;
    let total: f64 = o.iter().flatten().sum();
    let names = ["ok", "fail"];
    let mut r = ExperimentReport::new("frwigner");
    let mut table = Curve::new(
        "outcomes",
        &[
            ("friend1_fail", Unit::Dimensionless),
            ("friend2_fail", Unit::Dimensionless),
            ("probability", Unit::Dimensionless),
        ],
    );
    for (x, row) in o.iter().enumerate() {
        for (y, &p) in row.iter().enumerate() {
            r.scalar(&format!("p_{}_{}", names[x], names[y]), p, Unit::Dimensionless);
            table.push(vec![x as f64, y as f64, p]);
            r.note(format!("P({}, {}) = {p:.15}", names[x], names[y]));
        }
    }
    r.within("p_ok_ok", (o[0][0] - 1.0 / 12.0).abs(), EXACT, "P(ok, ok) = 1/12");
    r.within("normalized", (total - 1.0).abs(), EXACT, "outcome probabilities sum to 1");
    r.within("state_chain", t.fixture_deviation, 1e-12, "reconstructed states match the written expansions");
    for (k, imp) in t.implications.iter().enumerate() {
        r.within(
            &format!("implication_{}", k + 1),
            (imp.probability - 1.0).abs(),
            EXACT,
            &format!("{} => {}", imp.premise, imp.conclusion),
        );
        r.note(format!("{} => {} (probability {})", imp.premise, imp.conclusion, imp.probability));
    }
    r.scalar("assistant_disturbance", t.assistant_disturbance, Unit::Dimensionless);
    r.scalar("wigner_disturbance", t.wigner_disturbance, Unit::Dimensionless);
    r.record("outcomes", &o)?;
    r.record("memory_outcomes", &t.memory_outcomes)?;
    r.record("implications", &t.implications)?;
    for n in &t.notes {
        r.note(n.clone());
    }
    r.curve(table);
    Ok(r)
}

pub fn immortal(a: &ImmortalArgs) -> Result<ExperimentReport, CliError> {
    let mut curve = Curve::new(
        "branches",
        &[
            ("round", Unit::Dimensionless),
            ("copenhagen_survival", Unit::Dimensionless),
            ("surviving_branch_weight", Unit::Dimensionless),
            ("conditional_survival", Unit::Dimensionless),
            ("branch_count", Unit::Dimensionless),
        ],
    );
    let mut last = None;
    for n in 1..=a.rounds {
        let im = quantum_immortality(n)?;
        curve.push(vec![
            n as f64,
            im.copenhagen_survival,
            im.surviving_branch_weight,
            im.conditional_survival,
            im.branch_count as f64,
        ]);
        last = Some(im);
    }
    let im = last.ok_or_else(|| CliError::usage("rounds must be at least 1"))?;
    let mut r = ExperimentReport::new("immortal");
    r.scalar("copenhagen_survival", im.copenhagen_survival, Unit::Dimensionless);
    r.scalar("conditional_survival", im.conditional_survival, Unit::Dimensionless);
    r.within(
        "branch_weight",
        (im.surviving_branch_weight - im.copenhagen_survival).abs(),
        0.0,
        "surviving branch carries the Born weight 2^-n",
    );
    r.within(
        "observer_continuity",
        (im.conditional_survival - 1.0).abs(),
        0.0,
        "conditioned on continuity the observer survives",
    );
    r.record("final", &im)?;
    r.curve(curve);
    Ok(r)
}

pub fn clock(a: &ClockArgs) -> Result<ExperimentReport, CliError> {
    let u = photon_clock_model(a.omega)?;
    let taus = tau_grid(a.omega, a.points as usize);
    let rows = photon_clock_table(&u, &taus, &a.plate_times)?;
    let mut curve = Curve::new(
        "conditional",
        &[
            ("tau", Unit::Natural),
            ("p_given_h", Unit::Dimensionless),
            ("p_given_v", Unit::Dimensionless),
            ("closed_form_h", Unit::Dimensionless),
            ("closed_form_v", Unit::Dimensionless),
        ],
    );
    let mut worst = 0.0f64;
    for row in &rows {
        worst = worst.max((row.p_given_h - row.closed_form_h).abs()).max((row.p_given_v - row.closed_form_v).abs());
        curve.push(vec![row.tau, row.p_given_h, row.p_given_v, row.closed_form_h, row.closed_form_v]);
    }
    let constraint = u.constraint_norm()?;
    let mut probe = a.plate_times.clone();
    probe.extend([0.5, 1.3, 7.9, 100.0]);
    let invariance = super_observer_invariance(&u, &probe)?;
    let mut r = ExperimentReport::new("clock");
    r.scalar("constraint_norm", constraint, Unit::Natural);
    r.scalar("max_deviation", worst, Unit::Dimensionless);
    r.scalar("super_observer_deviation", invariance, Unit::Dimensionless);
    r.within("constraint", constraint, 1e-12, "||H|Psi>|| vanishes");
    r.within("closed_form", worst, 1e-9, "P(V | clock x at tau) = cos^2(omega tau + phi)");
    r.within("super_observer", invariance, 1e-10, "global state is static");
    r.curve(curve);
    Ok(r)
}
