//! Acceptance suite: one test per criterion, each printing a single
//! `PASS`/`FAIL` line with the measured quantities and runtime.
//!
//! Experiments are driven through the command-line schema so the whole
//! pipeline is exercised; the expected values are computed here from closed
//! forms, not read back from the library.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI};
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::Parser;
use qfoundry::bell::ghz;
use qfoundry::linalg::kron;
use qfoundry::qstate::{haar_random_state_indexed, haar_random_unitary, subsystem_entropy, von_neumann_entropy};
use qfoundry::{DensityMatrix, HilbertPartition, StateVector};
use qfoundry_cli::report::ExperimentReport;
use qfoundry_cli::Cli;

// Criteria carry runtime bounds, so they run one at a time.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(args: &[&str]) -> ExperimentReport {
    let cli = Cli::try_parse_from(std::iter::once("qfoundry").chain(args.iter().copied()))
        .unwrap_or_else(|e| panic!("arguments {args:?} do not parse: {e}"));
    qfoundry_cli::report_for(&cli).unwrap_or_else(|e| panic!("{args:?} failed: {e}"))
}

fn scalar(r: &ExperimentReport, name: &str) -> f64 {
    r.get_scalar(name).unwrap_or_else(|| panic!("{} report has no scalar {name}", r.subcommand))
}

fn column(r: &ExperimentReport, curve: &str, col: &str) -> Vec<f64> {
    r.get_curve(curve)
        .and_then(|c| c.column(col))
        .unwrap_or_else(|| panic!("{} report has no column {curve}.{col}", r.subcommand))
}

/// Prints the verdict line straight to stderr so it survives output capture,
/// then fails the test if any check failed.
fn verdict(id: u32, title: &str, checks: &[(bool, String)], elapsed: Duration, limit: Duration) {
    let on_time = elapsed < limit;
    let ok = on_time && checks.iter().all(|c| c.0);
    let mut detail: Vec<String> =
        checks.iter().map(|(pass, d)| if *pass { d.clone() } else { format!("[failed] {d}") }).collect();
    detail.push(format!(
        "runtime {:.3}s < {:.0}s{}",
        elapsed.as_secs_f64(),
        limit.as_secs_f64(),
        if on_time { "" } else { " [failed]" }
    ));
    let line = format!("{} criterion {id:>2} {title}: {}\n", if ok { "PASS" } else { "FAIL" }, detail.join("; "));
    emit(&line);
    assert!(ok, "{}", line.trim_end());
}

// The test harness captures `io::stderr`, so write to the descriptor itself.
#[cfg(unix)]
fn emit(line: &str) {
    use std::os::fd::FromRawFd;
    let mut fd = std::mem::ManuallyDrop::new(unsafe { std::fs::File::from_raw_fd(2) });
    let _ = fd.write_all(line.as_bytes());
}

#[cfg(not(unix))]
fn emit(line: &str) {
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_01_fr_outcome_table() {
    let _g = serial();
    let t = Instant::now();
    let r = report(&["frwigner"]);
    let ok_ok = scalar(&r, "p_ok_ok");
    let total: f64 = ["p_ok_ok", "p_ok_fail", "p_fail_ok", "p_fail_fail"].iter().map(|n| scalar(&r, n)).sum();
    verdict(
        1,
        "FR exactness",
        &[
            ((ok_ok - 1.0 / 12.0).abs() <= 1e-12, format!("P(ok,ok) = {ok_ok:.17} vs 1/12")),
            ((total - 1.0).abs() <= 1e-12, format!("sum = {total:.17}")),
        ],
        t.elapsed(),
        secs(1),
    );
}

#[test]
fn criterion_02_bell_violation() {
    let _g = serial();
    let t = Instant::now();
    let r = report(&["bell", "--a", "0", "--b", "90", "--theta", "45", "--samples", "100000", "--seed", "7"]);
    let (lhs, rhs) = (scalar(&r, "quantum_lhs"), scalar(&r, "quantum_rhs"));
    let (l_lhs, l_rhs, sigma) = (scalar(&r, "lhv_lhs"), scalar(&r, "lhv_rhs"), scalar(&r, "lhv_sigma"));
    verdict(
        2,
        "Bell violation",
        &[
            ((lhs - FRAC_1_SQRT_2).abs() <= 1e-12, format!("quantum lhs = {lhs:.15} vs 1/sqrt2")),
            ((rhs - (1.0 - FRAC_1_SQRT_2)).abs() <= 1e-12, format!("quantum rhs = {rhs:.15} vs 1 - 1/sqrt2")),
            (lhs > rhs, "violated = true".into()),
            (
                l_lhs <= l_rhs + 3.0 * sigma,
                format!("LHV lhs - rhs = {:.5} <= 3 sigma = {:.5}", l_lhs - l_rhs, 3.0 * sigma),
            ),
        ],
        t.elapsed(),
        secs(5),
    );
}

#[test]
fn criterion_03_zeno_freezing() {
    let _g = serial();
    let t = Instant::now();
    let r = report(&["zeno", "--time", &format!("{}", PI / 2.0), "--max-power", "12"]);
    let n = column(&r, "survival", "n");
    let p = column(&r, "survival", "survival");
    // H = σx from |0⟩: each interval keeps cos²(t/N)
    let closed = n.iter().map(|&n| (PI / 2.0 / n).cos().powi(2).powf(n));
    let worst = p.iter().zip(closed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let monotone = p.windows(2).all(|w| w[1] > w[0]);
    let p4096 = p[n.iter().position(|&x| x == 4096.0).expect("N = 4096 present")];
    let quad = r.get_verdict("short_time_quadratic").expect("quadratic check").value;
    verdict(
        3,
        "Zeno freezing",
        &[
            (monotone, "survival strictly increasing in N = 2^k".into()),
            (p4096 > 0.999, format!("P(4096) = {p4096:.6}")),
            (quad <= 1e-6, format!("short-time coefficient vs variance relative error {quad:.2e}")),
            (worst <= 1e-12, format!("closed form (cos^2(t/N))^N deviation {worst:.1e}")),
        ],
        t.elapsed(),
        secs(1),
    );
}

#[test]
fn criterion_04_decoherence_identity() {
    let _g = serial();
    let t = Instant::now();
    let r = report(&["decohere", "--kappas", "0,0.25,0.5,1"]);
    let kappa = column(&r, "coherence", "kappa");
    let off = column(&r, "coherence", "off_diagonal");
    // α = β = 1/√2
    let linear = kappa.iter().zip(&off).map(|(k, o)| (o - 0.5 * k).abs()).fold(0.0, f64::max);
    let k0 = r.get_verdict("kappa0_off_diagonals").expect("kappa = 0 check").value;
    let completed = r.get_verdict("kappa0_completed_measurement").expect("kappa = 0 check").value;
    verdict(
        4,
        "Decoherence identity",
        &[
            (k0 < 1e-12, format!("kappa = 0 off-diagonals {k0:.1e}")),
            (completed < 1e-12, format!("kappa = 0 distance to completed measurement {completed:.1e}")),
            (linear <= 1e-10, format!("|off-diagonal - |kappa|/2| <= {linear:.1e}")),
        ],
        t.elapsed(),
        secs(1),
    );
}

#[test]
fn criterion_05_gaussian_oracle() {
    let _g = serial();
    let t = Instant::now();
    let r = report(&["gaussent", "--oracle", "--sites", "8", "--sizes", "1-4", "--fit-lo", "1", "--fit-hi", "4"]);
    let exact = column(&r, "oracle", "closed_form");
    let fock = column(&r, "oracle", "fock");
    let worst = exact.iter().zip(&fock).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    verdict(
        5,
        "Gaussian oracle equivalence",
        &[
            (exact.len() == 20, format!("{} models", exact.len())),
            (worst <= 1e-6, format!("max |S_closed - S_fock| = {worst:.2e}")),
        ],
        t.elapsed(),
        secs(30),
    );
}

#[test]
fn criterion_06_log_law_and_saturation() {
    let _g = serial();
    let t = Instant::now();
    let critical =
        report(&["gaussent", "--sites", "200", "--mass", "1e-6", "--boundary", "periodic", "--sizes", "1-100"]);
    let slope = scalar(&critical, "log_slope");
    let massive = report(&["gaussent", "--sites", "200", "--mass", "1", "--sizes", "20,40"]);
    let l = column(&massive, "entropy", "length");
    let s = column(&massive, "entropy", "entropy");
    let s20 = s[l.iter().position(|&x| x == 20.0).unwrap()];
    let s40 = s[l.iter().position(|&x| x == 40.0).unwrap()];
    let change = (s40 - s20).abs() / s20;
    verdict(
        6,
        "Log law",
        &[
            ((slope - 1.0 / 3.0).abs() <= 0.1 / 3.0, format!("slope {slope:.4} vs 1/3")),
            (change <= 0.01, format!("massive S(40)/S(20) - 1 = {change:.2e}")),
        ],
        t.elapsed(),
        secs(60),
    );
}

#[test]
fn criterion_07_black_hole_thermodynamics() {
    let _g = serial();
    let t = Instant::now();
    let nat = report(&["hawking", "--units", "natural", "--mass", "1", "--g", "1"]);
    let s_area = scalar(&nat, "entropy");
    let s_mass = 4.0 * PI;
    let first = scalar(&nat, "first_law_relative_error");
    let si = report(&["hawking", "--units", "si", "--mass-solar", "1"]);
    let t_h = scalar(&si, "hawking_temperature");
    let si_first = scalar(&si, "first_law_relative_error");
    verdict(
        7,
        "Black-hole thermodynamics",
        &[
            ((s_area - s_mass).abs() / s_mass <= 1e-12, format!("A/4G = {s_area:.15} vs 4 pi G M^2")),
            ((t_h - 6.2e-8).abs() / 6.2e-8 <= 0.01, format!("solar T_H = {t_h:.4e} K")),
            (
                first <= 1e-6 && si_first <= 1e-6,
                format!("first law relative error {first:.2e} (natural), {si_first:.2e} (SI)"),
            ),
        ],
        t.elapsed(),
        secs(1),
    );
}

#[test]
fn criterion_08_unruh_thermality() {
    let _g = serial();
    let t = Instant::now();
    let (omega, accel, n_max) = (1.0f64, 2.0 * PI, 60usize);
    let r = report(&["unruh", "--omega", "1", "--accel", &format!("{accel}"), "--n-max", "60"]);
    let p = column(&r, "occupation", "p");
    let q = (-2.0 * PI * omega / accel).exp();
    let worst = p.windows(2).filter(|w| w[1] > 1e-290).map(|w| (w[1] / w[0] - q).abs()).fold(0.0, f64::max);
    let mean = scalar(&r, "mean_occupation");
    let be = 1.0 / ((2.0 * PI * omega / accel).exp() - 1.0);
    // a truncated geometric law loses d q^d / (1 − q^d) from its mean
    let d = (n_max + 1) as f64;
    let truncation = d * q.powf(d) / (1.0 - q.powf(d));
    verdict(
        8,
        "Unruh thermality",
        &[
            (p.len() == n_max + 1, format!("{} levels", p.len())),
            (worst <= 1e-10, format!("max |p(n+1)/p(n) - e^(-2 pi w/a)| = {worst:.1e}")),
            ((mean - be).abs() <= truncation + 1e-12, format!("mean occupation {mean:.15} vs Bose-Einstein {be:.15}")),
        ],
        t.elapsed(),
        secs(1),
    );
}

#[test]
fn criterion_09_page_curve() {
    let _g = serial();
    let t = Instant::now();
    let r = report(&["pagecurve", "--qubits", "10", "--samples", "500"]);
    let s = column(&r, "page", "mean_entropy");
    let se = column(&r, "page", "stderr");
    let info = column(&r, "page", "information");
    let peak = (0..s.len()).fold(0, |b, k| if s[k] > s[b] { k } else { b });
    let unimodal = s[..=peak].windows(2).all(|w| w[1] > w[0]) && s[peak..].windows(2).all(|w| w[1] < w[0]);
    let sym = (0..=10).all(|m| {
        let diff = (s[m] - s[10 - m]).abs();
        diff == 0.0 || diff < 3.0 * (se[m].powi(2) + se[10 - m].powi(2)).sqrt()
    });
    let info_ok = info.iter().zip(&se).all(|(i, e)| *i >= -3.0 * e);
    verdict(
        9,
        "Page curve",
        &[
            (unimodal && peak == 5, format!("unimodal with maximum at m = {peak}")),
            (sym, "|S(m) - S(10-m)| < 3 sigma".into()),
            (s[2] >= 0.95 * 2.0 * LN_2, format!("S(2) = {:.4} >= {:.4}", s[2], 0.95 * 2.0 * LN_2)),
            (info_ok, "I(m) >= -3 sigma".into()),
        ],
        t.elapsed(),
        secs(120),
    );
}

#[test]
fn criterion_10_rt_geodesic() {
    let _g = serial();
    let t = Instant::now();
    let r = report(&["rt", "--radius", "1", "--g3", "1", "--interval", "1", "--ratios", "10,100,1000"]);
    let ratios = column(&r, "geodesic", "l_over_a");
    let numeric = column(&r, "geodesic", "length_numeric");
    let entropy = column(&r, "geodesic", "entropy");
    let mut checks = Vec::new();
    for (k, &la) in ratios.iter().enumerate() {
        let analytic = 2.0 * la.ln();
        let rel = (numeric[k] - analytic).abs() / analytic;
        checks.push((rel < 1e-3, format!("l/a = {la}: length error {:.3}%", 100.0 * rel)));
    }
    // c = 3R/2G = 3/2, so (c/3) ln(l/a) = ln(l/a)/2
    let identity = ratios.iter().zip(&entropy).map(|(la, s)| (s - 0.5 * la.ln()).abs()).fold(0.0, f64::max);
    checks.push((identity <= 1e-12, format!("S_A vs (c/3) ln(l/a) {identity:.1e}")));
    verdict(10, "RT geodesic", &checks, t.elapsed(), secs(1));
}

#[test]
fn criterion_11_page_wootters() {
    let _g = serial();
    let t = Instant::now();
    let omega = 1.0f64;
    let r = report(&["clock", "--omega", "1", "--points", "50"]);
    let tau = column(&r, "conditional", "tau");
    let ph = column(&r, "conditional", "p_given_h");
    let pv = column(&r, "conditional", "p_given_v");
    let mut worst = 0.0f64;
    for k in 0..tau.len() {
        worst = worst.max((ph[k] - (omega * tau[k]).cos().powi(2)).abs());
        worst = worst.max((pv[k] - (omega * tau[k] + PI / 2.0).cos().powi(2)).abs());
    }
    let constraint = scalar(&r, "constraint_norm");
    let invariance = scalar(&r, "super_observer_deviation");
    verdict(
        11,
        "Page-Wootters",
        &[
            (constraint < 1e-12, format!("constraint norm {constraint:.1e}")),
            (
                tau.len() == 50 && worst <= 1e-9,
                format!("{} points, max |P - cos^2(w tau + phi)| = {worst:.1e}", tau.len()),
            ),
            (invariance < 1e-10, format!("super-observer deviation {invariance:.1e}")),
        ],
        t.elapsed(),
        secs(1),
    );
}

#[test]
fn criterion_12_pilot_wave_equivariance() {
    let _g = serial();
    let t = Instant::now();
    let r =
        report(&["bohm", "--potential", "free", "--sigma", "1", "--k0", "0", "--n-traj", "10000", "--points", "2048"]);
    let ks = scalar(&r, "ks_final");
    let growth = scalar(&r, "width_final") / scalar(&r, "width_initial");
    let drift = scalar(&r, "norm_drift_per_1000_steps");
    let order = scalar(&r, "quantum_potential_order");
    verdict(
        12,
        "Pilot-wave equivariance",
        &[
            ((growth - 3.0).abs() < 0.03, format!("width grew by {growth:.4}")),
            (ks < 0.02, format!("KS distance {ks:.4} over 10^4 trajectories")),
            (drift < 1e-8, format!("norm drift {drift:.1e} per 1000 steps")),
            ((order - 2.0).abs() <= 0.2, format!("quantum potential convergence order {order:.3}")),
        ],
        t.elapsed(),
        secs(120),
    );
}

fn random_mixed(seed: u64, index: u64) -> DensityMatrix<f64> {
    let p = HilbertPartition::new(vec![2; 5], vec!["A", "B", "C", "E1", "E2"]).unwrap();
    haar_random_state_indexed::<f64>(&p, seed, index).reduced(&["A", "B", "C"]).unwrap()
}

#[test]
fn criterion_13_entropy_properties() {
    let _g = serial();
    let t = Instant::now();
    const N: u64 = 1000;
    let tol = 1e-10;
    let (mut ssa, mut sub, mut comp, mut ghz_ok) = (0u64, 0u64, 0u64, 0u64);
    for k in 0..N {
        let rho = random_mixed(101, k);
        let s = |l: &[&str]| subsystem_entropy(&rho, l).unwrap();
        let (ab, bc, b, abc) = (s(&["A", "B"]), s(&["B", "C"]), s(&["B"]), von_neumann_entropy(&rho));
        ssa += u64::from(ab + bc >= b + abc - tol);
        sub += u64::from(ab <= s(&["A"]) + b + tol);
    }
    let p = HilbertPartition::new(vec![2, 3, 2], vec!["A", "B", "C"]).unwrap();
    for k in 0..N {
        let psi = haar_random_state_indexed::<f64>(&p, 103, k);
        let a = von_neumann_entropy(&psi.reduced(&["A"]).unwrap());
        let bc = von_neumann_entropy(&psi.reduced(&["B", "C"]).unwrap());
        comp += u64::from((a - bc).abs() < 1e-9);
    }
    let g = ghz::<f64>();
    for k in 0..N {
        let u = kron(
            &kron(&haar_random_unitary(2, 107, 3 * k), &haar_random_unitary(2, 107, 3 * k + 1)),
            &haar_random_unitary(2, 107, 3 * k + 2),
        );
        let psi = StateVector::new(&u * g.amplitudes(), g.partition().clone()).unwrap();
        let pair = psi.reduced(&["A", "B"]).unwrap();
        let single = psi.reduced(&["C"]).unwrap();
        let half = DensityMatrix::maximally_mixed(single.partition().clone());
        let ok = (von_neumann_entropy(&pair) - LN_2).abs() < 1e-12
            && pair.min_partial_transpose_eigenvalue(&["B"]).unwrap() >= -1e-12
            && single.distance(&half) < 1e-12;
        ghz_ok += u64::from(ok);
    }
    verdict(
        13,
        "Entropy property suite",
        &[
            (ssa == N, format!("strong subadditivity {ssa}/{N}")),
            (sub == N, format!("subadditivity {sub}/{N}")),
            (comp == N, format!("complement symmetry {comp}/{N}")),
            (ghz_ok == N, format!("GHZ reductions {ghz_ok}/{N}")),
        ],
        t.elapsed(),
        secs(60),
    );
}

fn payloads(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| !p.to_string_lossy().ends_with(".manifest.json"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn criterion_14_determinism() {
    let _g = serial();
    let t = Instant::now();
    let runs: &[&[&str]] = &[
        &["mz"],
        &["cat", "--kappa", "0.3"],
        &["zeno"],
        &["decohere"],
        &["bell", "--samples", "20000", "--model", "randomized"],
        &["frwigner"],
        &["immortal"],
        &["gaussent", "--sites", "60", "--sizes", "1-30", "--fit-hi", "20"],
        &["hawking", "--units", "si"],
        &["unruh"],
        &["barrier"],
        &["pagecurve", "--samples", "100"],
        &["tfd", "--spectrum", "0,0.5,2"],
        &["rt"],
        &["dim"],
        &["clock"],
        &["bohm", "--n-traj", "500", "--points", "512", "--x-min", "-20", "--x-max", "20", "--t-final", "1"],
    ];
    // an inherited override would send every run to the same place
    std::env::remove_var(qfoundry_cli::OUT_ENV);
    let root = tempfile::tempdir().unwrap();
    let mut checks = Vec::new();
    for (k, args) in runs.iter().enumerate() {
        let seed = format!("{}", 11 + k);
        let dirs: Vec<_> = ["a", "b", "c"].iter().map(|d| root.path().join(format!("{k}{d}"))).collect();
        let argv = |dir: &Path| {
            let mut v: Vec<String> = vec!["qfoundry".into()];
            v.extend(args.iter().map(|s| s.to_string()));
            v.extend(["--seed".into(), seed.clone(), "--out".into(), dir.display().to_string()]);
            v
        };
        let first = qfoundry_cli::run(argv(&dirs[0]));
        let second = qfoundry_cli::run(argv(&dirs[1]));
        let manifest = dirs[0].join(format!("{}.manifest.json", args[0]));
        let replayed = qfoundry_cli::run([
            "qfoundry",
            "replay",
            &manifest.display().to_string(),
            "--out",
            &dirs[2].display().to_string(),
        ]);
        let (a, b, c) = (payloads(&dirs[0]), payloads(&dirs[1]), payloads(&dirs[2]));
        let same = !a.is_empty() && a == b && a == c && first == second && first == replayed;
        checks.push((same, format!("{} ({} files, exit {first})", args[0], a.len())));
    }
    verdict(14, "Determinism", &checks, t.elapsed(), secs(120));
}
