//! Black-hole thermodynamics, the Unruh state and the holographic checks.

use qfoundry::blackhole::{
    barrier_scaling, bose_einstein_occupation, first_law_check, geometric_entropy, rt_entropy, scaling_dimension,
    schwarzschild_thermo, thermofield_double, unruh_state, AdsParams, SchwarzschildParams, UnruhMode,
};
use qfoundry::qstate::von_neumann_entropy;
use qfoundry::units::UnitSystem;

use super::{max_off_diagonal, Context};
use crate::args::{BarrierArgs, DimArgs, HawkingArgs, RtArgs, TfdArgs, UnruhArgs};
use crate::error::CliError;
use crate::report::{Curve, ExperimentReport, Unit};

fn params(ctx: &Context, mass: f64, g: f64, mass_solar: f64) -> Result<SchwarzschildParams, CliError> {
    let k = &ctx.constants.values;
    Ok(match ctx.unit_system() {
        UnitSystem::Natural => SchwarzschildParams::new(mass, g, UnitSystem::Natural)?,
        UnitSystem::Si => SchwarzschildParams::new(mass_solar * k.m_sun, k.g, UnitSystem::Si)?,
    })
}

pub fn hawking(a: &HawkingArgs, ctx: &Context) -> Result<ExperimentReport, CliError> {
    let k = &ctx.constants.values;
    let p = params(ctx, a.mass, a.g, a.mass_solar)?;
    let si = p.units == UnitSystem::Si;
    let (u_len, u_area, u_temp, u_mass, u_acc) = if si {
        (Unit::Meter, Unit::SquareMeter, Unit::Kelvin, Unit::Kilogram, Unit::Acceleration)
    } else {
        (Unit::Natural, Unit::Natural, Unit::Natural, Unit::Natural, Unit::Natural)
    };
    let th = schwarzschild_thermo(&p, k);
    let first = first_law_check(&p, k, a.delta)?;

    let mut r = ExperimentReport::new("hawking");
    r.scalar("mass", p.mass, u_mass);
    r.scalar("schwarzschild_radius", th.r_s, u_len);
    r.scalar("horizon_area", th.area, u_area);
    r.scalar("hawking_temperature", th.t_hawking, u_temp);
    r.scalar("entropy", th.entropy, Unit::Nats);
    r.scalar("entropy_from_mass", th.entropy_from_mass, Unit::Nats);
    r.scalar("surface_gravity", th.surface_gravity, u_acc);
    r.scalar("redshifted_unruh_temperature", th.t_unruh_local, u_temp);
    r.scalar("rindler_temperature", th.t_rindler, Unit::Natural);
    r.scalar("first_law_relative_error", first.relative_error, Unit::Dimensionless);
    r.within("area_law", th.entropy_mismatch(), 1e-12, "A/4G agrees with 4 pi G M^2");
    r.within("first_law", first.relative_error, 1e-6, "finite-difference dS = dM / T");
    r.within(
        "redshift_chain",
        (th.t_unruh_local - th.t_hawking).abs() / th.t_hawking,
        1e-12,
        "redshifted Rindler temperature equals the Hawking temperature",
    );

    let mut table = Curve::new(
        "thermo",
        &[("mass", u_mass), ("schwarzschild_radius", u_len), ("hawking_temperature", u_temp), ("entropy", Unit::Nats)],
    );
    for e in -3..=3 {
        let q = SchwarzschildParams::new(p.mass * 2f64.powi(e), p.g, p.units)?;
        let t = schwarzschild_thermo(&q, k);
        table.push(vec![q.mass, t.r_s, t.t_hawking, t.entropy]);
    }
    r.curve(table);
    Ok(r)
}

pub fn unruh(a: &UnruhArgs) -> Result<ExperimentReport, CliError> {
    let mode = UnruhMode::new(a.omega, a.accel, a.n_max as usize)?;
    let st = unruh_state(&mode)?;
    let q = mode.ratio();
    let p = &st.occupation;

    let mut worst_ratio = 0.0f64;
    for w in p.windows(2) {
        // beyond this the levels are subnormal and carry no ratio information
        if w[1] > 1e-290 {
            worst_ratio = worst_ratio.max((w[1] / w[0] - q).abs());
        }
    }
    let be = bose_einstein_occupation(a.omega, a.accel);
    let d = (a.n_max + 1) as f64;
    // mean of the truncated geometric law is n̄ − d q^d / (1 − q^d)
    let qd = st.truncation_tail * q;
    let truncation = d * qd / (1.0 - qd);
    let rho_l = st.state.reduced(&["L"])?;
    let s_r = von_neumann_entropy(&st.rho_r);
    let thermal = geometric_entropy(q);

    let mut r = ExperimentReport::new("unruh");
    r.scalar("boltzmann_ratio", q, Unit::Dimensionless);
    r.scalar("mean_occupation", st.mean_occupation, Unit::Dimensionless);
    r.scalar("bose_einstein", be, Unit::Dimensionless);
    r.scalar("entropy", st.entropy, Unit::Nats);
    r.scalar("thermal_entropy", thermal, Unit::Nats);
    r.scalar("truncation_tail", st.truncation_tail, Unit::Dimensionless);
    r.within("boltzmann_ratios", worst_ratio, 1e-10, "p(n+1)/p(n) = exp(-2 pi omega / a)");
    r.within(
        "mean_occupation",
        (st.mean_occupation - be).abs(),
        truncation + 1e-12 * be.max(1.0),
        "mean occupation matches 1/(exp(2 pi omega/a) - 1) up to truncation",
    );
    r.within("diagonal", max_off_diagonal(st.rho_r.matrix()), 1e-12, "rho_R is diagonal in the number basis");
    r.within("spectral_entropy", (s_r - st.entropy).abs(), 1e-10, "von Neumann entropy of rho_R equals -sum p ln p");
    r.within("complement", (s_r - von_neumann_entropy(&rho_l)).abs(), 1e-10, "S(rho_R) = S(rho_L)");
    if let Some(w) = &st.warning {
        r.note(w.clone());
    }
    let mut curve = Curve::new(
        "occupation",
        &[("n", Unit::Dimensionless), ("p", Unit::Dimensionless), ("thermal", Unit::Dimensionless)],
    );
    for (n, &pn) in p.iter().enumerate() {
        curve.push(vec![n as f64, pn, (1.0 - q) * q.powi(n as i32)]);
    }
    r.curve(curve);
    Ok(r)
}

pub fn barrier(a: &BarrierArgs, ctx: &Context) -> Result<ExperimentReport, CliError> {
    let k = &ctx.constants.values;
    let p = params(ctx, a.mass, a.g, a.mass_solar)?;
    let si = p.units == UnitSystem::Si;
    let (u_len, u_v) = if si { (Unit::Meter, Unit::InverseSquareMeter) } else { (Unit::Natural, Unit::Natural) };
    let r_s = p.schwarzschild_radius(k);
    let fit = barrier_scaling(a.l_max, &p, k)?;

    let mut curve = Curve::new(
        "peaks",
        &[("l", Unit::Dimensionless), ("r_peak", u_len), ("r_peak_over_r_s", Unit::Dimensionless), ("v_max", u_v)],
    );
    let mut worst_root = 0.0f64;
    for b in &fit.peaks {
        curve.push(vec![b.l as f64, b.r_peak, b.r_peak / r_s, b.v_max]);
        // stationary points solve 4 s² u² − 3 s (1 − L) u − 2L = 0 with u = 1/r
        let ll = (b.l as f64) * (b.l as f64 + 1.0);
        let (qa, qb, qc) = (4.0 * r_s * r_s, -3.0 * r_s * (1.0 - ll), -2.0 * ll);
        let u = if b.l == 0 { 3.0 / (4.0 * r_s) } else { (-qb + (qb * qb - 4.0 * qa * qc).sqrt()) / (2.0 * qa) };
        worst_root = worst_root.max((b.r_peak * u - 1.0).abs());
    }
    let rising = fit.peaks.windows(2).all(|w| w[1].v_max > w[0].v_max);

    let mut r = ExperimentReport::new("barrier");
    r.scalar("schwarzschild_radius", r_s, u_len);
    r.scalar("slope", fit.slope, u_v);
    r.scalar("intercept", fit.intercept, u_v);
    r.scalar("r_squared", fit.r_squared, Unit::Dimensionless);
    r.scalar("l0_peak_over_r_s", fit.peaks[0].r_peak / r_s, Unit::Dimensionless);
    if !si {
        r.scalar("slope_over_t_hawking_squared", fit.coefficient, Unit::Dimensionless);
    }
    r.check(
        "linear_in_l2_plus_1",
        fit.r_squared >= 0.999,
        fit.r_squared,
        0.999,
        "V_max against l^2 + 1 has r^2 >= 0.999",
    );
    r.within("peak_location", worst_root, 1e-10, "maximizer matches the stationary-point quadratic");
    r.check("ordering", rising, 0.0, 0.0, "barrier height grows with l");
    r.curve(curve);
    Ok(r)
}

pub fn tfd(a: &TfdArgs) -> Result<ExperimentReport, CliError> {
    if a.spectrum.is_empty() {
        return Err(CliError::usage("spectrum must not be empty"));
    }
    let t = thermofield_double(&a.spectrum, a.beta)?;
    let m = t.rho_a.matrix();
    let mut dev = max_off_diagonal(m);
    for (i, &g) in t.gibbs.iter().enumerate() {
        dev = dev.max((m[(i, i)].re - g).abs());
    }
    let shannon: f64 = t.gibbs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum();

    let mut r = ExperimentReport::new("tfd");
    r.scalar("entropy", t.entropy, Unit::Nats);
    r.scalar("gibbs_entropy", shannon, Unit::Nats);
    r.within("gibbs_reduction", dev, 1e-12, "Tr_B |TFD><TFD| = exp(-beta H)/Z");
    r.within("entropy", (t.entropy - shannon).abs(), 1e-12, "entanglement entropy equals the Gibbs entropy");
    let mut levels = a.spectrum.clone();
    levels.sort_by(f64::total_cmp);
    if levels.len() >= 2 {
        let gap = levels[1] - levels[0];
        r.scalar("gap", gap, Unit::Natural);
        if gap > 0.0 && a.beta * gap >= 40.0 {
            r.within("zero_temperature", t.entropy, 1e-12, "beta * gap >= 40 leaves a product of ground states");
        }
    }
    let mut curve = Curve::new(
        "levels",
        &[("energy", Unit::Natural), ("gibbs", Unit::Dimensionless), ("rho_a_diagonal", Unit::Dimensionless)],
    );
    for (i, (&e, &g)) in a.spectrum.iter().zip(&t.gibbs).enumerate() {
        curve.push(vec![e, g, m[(i, i)].re]);
    }
    r.curve(curve);
    Ok(r)
}

pub fn rt(a: &RtArgs) -> Result<ExperimentReport, CliError> {
    let mut curve = Curve::new(
        "geodesic",
        &[
            ("l_over_a", Unit::Dimensionless),
            ("length_numeric", Unit::Natural),
            ("length_analytic", Unit::Natural),
            ("relative_error", Unit::Dimensionless),
            ("entropy", Unit::Nats),
            ("cft_entropy", Unit::Nats),
        ],
    );
    let mut r = ExperimentReport::new("rt");
    let mut identity = 0.0f64;
    let mut central = None;
    for &ratio in &a.ratios {
        let p = AdsParams::new(a.radius, a.g3, a.interval / ratio, a.interval)?;
        let e = rt_entropy(&p)?;
        curve.push(vec![ratio, e.length_numeric, e.length_analytic, e.relative_error, e.entropy, e.cft_entropy]);
        r.within(
            &format!("quadrature_{ratio}"),
            e.relative_error,
            1e-3,
            &format!("geodesic length within 0.1% of 2R ln(l/a) at l/a = {ratio}"),
        );
        identity = identity.max((e.entropy - e.cft_entropy).abs() / e.cft_entropy.abs().max(1.0));
        central = Some(e.central_charge);
    }
    if let Some(c) = central {
        r.scalar("central_charge", c, Unit::Dimensionless);
    }
    r.within("cft_identity", identity, 1e-12, "L/4G = (c/3) ln(l/a)");
    r.curve(curve);
    Ok(r)
}

pub fn dim(a: &DimArgs) -> Result<ExperimentReport, CliError> {
    let d = a.d as f64;
    let mut curve = Curve::new("dimension", &[("m2l2", Unit::Dimensionless), ("delta", Unit::Dimensionless)]);
    let (mut worst, mut floor) = (0.0f64, true);
    let mut r = ExperimentReport::new("dim");
    for &m in &a.m2l2 {
        let delta = scaling_dimension(a.d, m)?;
        curve.push(vec![m, delta]);
        worst = worst.max((delta * (delta - d) - m).abs() / m.abs().max(1.0));
        floor &= delta >= d / 2.0;
        if m == 0.0 {
            r.within("massless", (delta - d).abs(), 1e-12, "m = 0 gives delta = d");
        }
    }
    r.scalar("bf_bound", -d * d / 4.0, Unit::Dimensionless);
    r.within("mass_relation", worst, 1e-12, "delta (delta - d) = m^2 L^2");
    r.check("above_half_d", floor, 0.0, 0.0, "delta >= d/2");
    r.curve(curve);
    Ok(r)
}
