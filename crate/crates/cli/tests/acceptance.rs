//! Acceptance gate. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line each; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dunkl_amp::amplifier::{build_hamiltonian_su11, numerical_spectrum, parity_decompose};
use dunkl_amp::expm::unitarity_residual;
use dunkl_amp::fock::{build_annihilation, build_reflection};
use dunkl_amp::stats::{
    closed_form_statistics, g2, g2_undeformed, mandel_q, mandel_q_undeformed, oracle_statistics, oracle_statistics_for,
    vacuum_g2_undeformed, OracleConfig,
};
use dunkl_amp::transforms::{
    bogoliubov_diagonal_form, displacement_operator, solve_squeeze, tilt_hamiltonian, tilt_hamiltonian_with,
    SqueezeParams,
};
use dunkl_amp::verify::{check_anticommutator, check_casimir_spectrum, check_deformed_heisenberg, check_su11};
use dunkl_amp::{DunklError, ModelParams64};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const BIN: &str = env!("CARGO_BIN_EXE_dunkl-amp");

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail}; {elapsed:.2?}"))
}

fn err(e: DunklError) -> String {
    e.to_string()
}

/// omega = 1, |f| = 0.3, theta in {0, pi/3}, mu in {0, 0.2, 0.7}, D = 256.
fn amplifier_set() -> Vec<ModelParams64> {
    let mut set = Vec::new();
    for theta in [0.0, PI / 3.0] {
        for mu in [0.0, 0.2, 0.7] {
            set.push(ModelParams64::new(mu, 1.0, 0.3, theta, 256).unwrap());
        }
    }
    set
}

fn algebra_suite() -> Outcome {
    let mut worst = 0.0f64;
    for mu in [-0.4, 0.0, 0.25, 0.5, 1.0, 2.0] {
        for dim in [16, 64, 256] {
            let p = ModelParams64::free(mu, dim).map_err(err)?;
            let checks = [
                ("deformed_heisenberg", check_deformed_heisenberg(&p)),
                ("su11_commutators", check_su11(&p)),
                ("casimir_spectrum", check_casimir_spectrum(&p)),
                ("anticommutator", check_anticommutator(&p)),
            ];
            for (name, res) in checks {
                ensure(res < 1e-10, || format!("{name} at mu={mu}, D={dim}: {res:e}"))?;
                worst = worst.max(res);
            }
        }
    }
    Ok(format!("max residual {worst:.2e}"))
}

fn spectrum() -> Outcome {
    let mut worst_rel = 0.0f64;
    let mut worst_gap = 0.0f64;
    for p in amplifier_set() {
        let omega_mu = p.rabi_frequency().map_err(err)?;
        ensure((omega_mu - 1.6).abs() < 1e-15, || format!("Omega = {omega_mu}"))?;
        let levels = numerical_spectrum(&p).map_err(err)?;
        let lowest = &levels.eigenvalues[..64];
        for (n, e) in lowest.iter().enumerate() {
            let exact = 0.5 * omega_mu * (n as f64 + p.mu() + 0.5);
            let rel = ((e - exact) / exact).abs();
            ensure(rel < 1e-8, || format!("E_{n} at mu={}, theta={}: rel error {rel:e}", p.mu(), p.f_phase()))?;
            worst_rel = worst_rel.max(rel);
        }
        for w in lowest.windows(2) {
            let dev = (w[1] - w[0] - 0.8).abs();
            ensure(dev < 1e-8, || format!("gap deviation {dev:e} at mu={}", p.mu()))?;
            worst_gap = worst_gap.max(dev);
        }
        ensure(levels.sectors_interleave(), || format!("sectors do not interleave at mu={}", p.mu()))?;
        let alternating =
            levels.parity_labels[..64].iter().enumerate().all(|(n, &s)| s == if n % 2 == 0 { 1 } else { -1 });
        ensure(alternating, || format!("parity labels do not alternate at mu={}", p.mu()))?;
    }
    Ok(format!("max rel error {worst_rel:.2e}, max gap deviation {worst_gap:.2e}"))
}

fn tilting() -> Outcome {
    let mut worst = 0.0f64;
    let mut weakest_control = f64::INFINITY;
    for p in amplifier_set() {
        let rep = tilt_hamiltonian(&p).map_err(err)?;
        ensure(rep.offdiag_residual < 1e-8, || format!("off-diagonal {:e} at mu={}", rep.offdiag_residual, p.mu()))?;
        ensure(rep.diag_rel_residual < 1e-8, || format!("diagonal {:e} at mu={}", rep.diag_rel_residual, p.mu()))?;
        worst = worst.max(rep.offdiag_residual).max(rep.diag_rel_residual);

        let wrong = solve_squeeze(&p).map_err(err)?.with_phase(p.f_phase() + 0.1);
        let control = tilt_hamiltonian_with(&p, &wrong).map_err(err)?;
        ensure(control.offdiag_residual > 1e-3, || format!("negative control only {:e}", control.offdiag_residual))?;
        weakest_control = weakest_control.min(control.offdiag_residual);
    }
    Ok(format!("max residual {worst:.2e}; wrong-phase residual >= {weakest_control:.2e}"))
}

fn method_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for p in amplifier_set() {
        let sq = solve_squeeze(&p).map_err(err)?;
        ensure(sq.tau == 2.0 * sq.r, || format!("tau {} != 2r {}", sq.tau, 2.0 * sq.r))?;
        let rep = bogoliubov_diagonal_form(&p).map_err(err)?;
        ensure(rep.residual < 1e-8, || format!("entrywise residual {:e} at mu={}", rep.residual, p.mu()))?;
        ensure(rep.level_rel_residual < 1e-8, || format!("levels {:e} at mu={}", rep.level_rel_residual, p.mu()))?;
        let levels = numerical_spectrum(&p).map_err(err)?;
        for (n, q) in rep.quasi_levels.iter().enumerate().take(64) {
            let rel = ((q - levels.eigenvalues[n]) / levels.eigenvalues[n]).abs();
            ensure(rel < 1e-8, || format!("quasi level {n} vs numerical spectrum: {rel:e}"))?;
            worst = worst.max(rel);
        }
        worst = worst.max(rep.residual).max(rep.level_rel_residual);
    }
    Ok(format!("max residual {worst:.2e}"))
}

fn statistics_oracle() -> Outcome {
    let mut worst = 0.0f64;
    let mut max_dim = 0;
    let config = OracleConfig::default();
    for n in 0..=6 {
        for mu in [0.0, 0.25, 0.5, 1.0] {
            for r in [0.1, 0.35, 0.7] {
                let closed = closed_form_statistics(n, mu, r).map_err(err)?;
                let sq = SqueezeParams::from_rapidity(r, 0.0);
                let oracle = oracle_statistics_for(n, mu, &sq, &config).map_err(err)?;
                let diff = closed.max_abs_diff(&oracle);
                ensure(diff < 1e-6, || format!("n={n}, mu={mu}, r={r}: {diff:e}"))?;
                let dim = oracle.dim.unwrap_or(0);
                ensure(dim <= 2048, || format!("oracle needed D={dim}"))?;
                worst = worst.max(diff);
                max_dim = max_dim.max(dim);
            }
        }
    }
    Ok(format!("84 points, max |closed - oracle| {worst:.2e}, max D {max_dim}"))
}

fn limit_values() -> Outcome {
    for r in [0.1f64, 0.35, 0.7, 1.0, 2.0] {
        for mu in [-0.4f64, 0.0, 0.25, 0.5, 1.0, 2.0] {
            let q = mandel_q(0, mu, r).ok_or("vacuum Q undefined")?;
            ensure((q - (2.0 * r).cosh()).abs() < 1e-12, || {
                format!("Q0 at mu={mu}, r={r}: {q} vs {}", (2.0 * r).cosh())
            })?;
        }
        let g = g2(0, 0.0, r).ok_or("vacuum g2 undefined")?;
        let coth = 1.0 / r.tanh();
        ensure((g - (coth * coth + 2.0)).abs() < 1e-12, || format!("g2(0,0,{r}) = {g}"))?;
        ensure(g >= 3.0 && vacuum_g2_undeformed(r) >= 3.0, || format!("g2(0,0,{r}) = {g} below 3"))?;
        for n in 0..=6 {
            let q = mandel_q(n, 0.0, r).ok_or("Q undefined")?;
            ensure((q - mandel_q_undeformed(n, r)).abs() < 1e-12, || format!("undeformed Q at n={n}, r={r}"))?;
            let g = g2(n, 0.0, r).ok_or("g2 undefined")?;
            ensure((g - g2_undeformed(n, r)).abs() < 1e-12, || format!("undeformed g2 at n={n}, r={r}"))?;
        }
    }
    for theta in [0.0, PI / 3.0] {
        let p = ModelParams64::new(0.0, 1.0, 0.3, theta, 256).unwrap();
        let omega_mu = p.rabi_frequency().map_err(err)?;
        let levels = numerical_spectrum(&p).map_err(err)?;
        for n in 0..64 {
            let standard = (n as f64 + 0.5) * 0.5 * omega_mu;
            ensure((levels.closed_form[n] - standard).abs() < 1e-12, || format!("closed form level {n}"))?;
            let rel = ((levels.eigenvalues[n] - standard) / standard).abs();
            ensure(rel < 1e-12, || format!("numerical level {n} at mu=0: {rel:e}"))?;
        }
    }
    Ok("vacuum Q, vacuum g2, undeformed forms and undeformed spectrum within 1e-12".into())
}

fn unitarity_and_parity() -> Outcome {
    let mut worst = 0.0f64;
    for p in amplifier_set() {
        let sq = solve_squeeze(&p).map_err(err)?;
        let d = displacement_operator(&sq, &p).map_err(err)?;
        let u = unitarity_residual(&d);
        ensure(u < 1e-12, || format!("unitarity {u:e} at mu={}", p.mu()))?;
        let h = build_hamiltonian_su11(&p);
        let c = h.commutator(&build_reflection(p.dim())).max_abs();
        ensure(c < 1e-12, || format!("[H, R] = {c:e} at mu={}", p.mu()))?;
        worst = worst.max(u).max(c);
        let a = build_annihilation(&p);
        ensure(matches!(parity_decompose(&a), Err(DunklError::ParityNotConserved { .. })), || {
            "parity_decompose accepted the annihilation operator".into()
        })?;
    }
    Ok(format!("max residual {worst:.2e}; annihilation operator rejected"))
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stability_guard() -> Outcome {
    let unstable = [(1.0, 0.5), (1.0, 0.7), (0.4, 0.2)];
    for (omega, f) in unstable {
        let p = ModelParams64::new(0.3, omega, f, 0.2, 32).map_err(err)?;
        let is_unstable = |r: Result<(), DunklError>| matches!(r, Err(DunklError::Unstable { .. }));
        let entry_points = [
            ("numerical_spectrum", is_unstable(numerical_spectrum(&p).map(|_| ()))),
            ("rabi_frequency", is_unstable(p.rabi_frequency().map(|_| ()))),
            ("solve_squeeze", is_unstable(solve_squeeze(&p).map(|_| ()))),
            ("tilt_hamiltonian", is_unstable(tilt_hamiltonian(&p).map(|_| ()))),
            ("bogoliubov_diagonal_form", is_unstable(bogoliubov_diagonal_form(&p).map(|_| ()))),
            ("oracle_statistics", is_unstable(oracle_statistics(0, &p).map(|_| ()))),
        ];
        for (name, ok) in entry_points {
            ensure(ok, || format!("{name} accepted omega={omega}, |f|={f}"))?;
        }
    }
    for mu in [-0.5, -0.7] {
        ensure(ModelParams64::new(mu, 1.0, 0.1, 0.0, 32).is_err(), || format!("mu={mu} accepted"))?;
        ensure(closed_form_statistics(0, mu, 0.3).is_err(), || format!("statistics accepted mu={mu}"))?;
    }

    let commands = ["verify", "spectrum", "tilt", "bogoliubov", "stats", "sweep"];
    for cmd in commands {
        let out = run_cli(&[cmd, "--omega", "1", "--f-mag", "0.5", "--dim", "32"]);
        let stderr = String::from_utf8_lossy(&out.stderr);
        ensure(out.status.code() == Some(2), || format!("`{cmd}` with omega = 2|f| exited {:?}", out.status.code()))?;
        ensure(stderr.contains("stability condition omega > 2|f| violated"), || format!("`{cmd}` stderr: {stderr}"))?;
        let out = run_cli(&[cmd, "--mu=-0.5", "--dim", "32"]);
        ensure(out.status.code() == Some(2), || format!("`{cmd}` with mu=-0.5 exited {:?}", out.status.code()))?;
    }
    Ok(format!("library and all {} subcommands refuse", commands.len()))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("sweep.conf");
    fs::write(
        &config,
        "# sweep grid\nmu_list = 0, 0.25, 0.5, 1.0\nr_list = 0.1, 0.35, 0.7\nn_list = 0,1,2,3,4,5,6\nsource = both\n",
    )
    .map_err(|e| e.to_string())?;
    for format in ["csv", "json"] {
        let mut files = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("run{run}.{format}"));
            let out = run_cli(&[
                "sweep",
                "--config",
                config.to_str().unwrap(),
                "--format",
                format,
                "--out",
                path.to_str().unwrap(),
            ]);
            ensure(out.status.success(), || {
                format!("sweep exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
            })?;
            files.push(fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(!files[0].is_empty() && files[0] == files[1], || format!("{format} outputs differ"))?;
    }
    Ok("csv and json sweeps byte-identical across runs (168 rows each)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("algebra suite", || timed(Duration::from_secs(5), algebra_suite)),
        ("spectrum", || timed(Duration::from_secs(10), spectrum)),
        ("tilting diagonalization", tilting),
        ("method equivalence", method_equivalence),
        ("statistics closed form vs oracle", || timed(Duration::from_secs(60), statistics_oracle)),
        ("limit values", limit_values),
        ("unitarity and parity", unitarity_and_parity),
        ("stability guard", stability_guard),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
