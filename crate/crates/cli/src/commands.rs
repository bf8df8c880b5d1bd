//! One function per subcommand. Each writes its records and returns the
//! names of the checks that missed their tolerance.

use std::io::Write;

use dunkl_amp::amplifier::numerical_spectrum;
use dunkl_amp::stats::{closed_form_statistics, oracle_statistics_for, OracleConfig};
use dunkl_amp::transforms::{bogoliubov_diagonal_form, solve_squeeze, tilt_hamiltonian_with, SqueezeParams};
use dunkl_amp::verify::verify_all;
use dunkl_amp::{DunklError, ModelParams64, StatRecord64};
use rayon::prelude::*;

use crate::config::{Settings, Source};
use crate::output::{Cell, RecordWriter};
use crate::CliError;

pub const IDENTITY_TOL: f64 = 1e-10;
pub const SPECTRUM_TOL: f64 = 1e-8;
pub const TRANSFORM_TOL: f64 = 1e-8;
pub const COEFFICIENT_TOL: f64 = 1e-10;
pub const ORACLE_TOL: f64 = 1e-6;

/// Grid points computed in parallel before a chunk is written and flushed.
const SWEEP_CHUNK: usize = 32;

pub const STAT_COLUMNS: &[&str] = &["n", "mu", "r", "mean_n", "variance", "mandel_q", "g2", "provenance", "tail_mass"];

pub type Failures = Vec<String>;

/// Validated and stability-checked model parameters.
pub fn model_params(s: &Settings) -> Result<ModelParams64, DunklError> {
    let params = ModelParams64::new(s.mu, s.omega, s.f_mag, s.f_phase, s.dim)?;
    params.require_stable()?;
    Ok(params)
}

fn check(failures: &mut Failures, name: &str, value: f64, tol: f64) {
    // NaN fails too
    if value.is_nan() || value >= tol {
        failures.push(format!("{name}: {value:e} exceeds {tol:e}"));
    }
}

pub fn verify<W: Write>(s: &Settings, out: W) -> Result<Failures, CliError> {
    let params = model_params(s)?;
    let mut w = RecordWriter::new(out, s.format, &["identity", "mu", "dim", "residual", "pass"])?;
    let mut failures = Failures::new();
    for id in verify_all(&params) {
        let pass = id.residual < IDENTITY_TOL;
        w.row(&[id.name.into(), s.mu.into(), s.dim.into(), id.residual.into(), pass.into()])?;
        check(&mut failures, id.name, id.residual, IDENTITY_TOL);
    }
    w.finish()?;
    Ok(failures)
}

pub fn spectrum<W: Write>(s: &Settings, out: W) -> Result<Failures, CliError> {
    let params = model_params(s)?;
    let levels = numerical_spectrum(&params)?;
    let gap = 0.5 * params.rabi_frequency()?;
    let ladder = levels.ladder_form_levels();
    let mut w =
        RecordWriter::new(out, s.format, &["n", "parity", "eigenvalue", "closed_form", "rel_error", "ladder_form"])?;
    for (n, ladder_level) in ladder.iter().enumerate() {
        let (e, exact) = (levels.level(n), levels.closed_form[n]);
        let parity: i8 = if n % 2 == 0 { 1 } else { -1 };
        w.row(&[
            n.into(),
            parity.into(),
            e.into(),
            exact.into(),
            ((e - exact) / exact).abs().into(),
            (*ladder_level).into(),
        ])?;
    }
    w.finish()?;
    let mut failures = Failures::new();
    check(&mut failures, "spectrum_closed_form", levels.max_rel_error, SPECTRUM_TOL);
    check(&mut failures, "uniform_gaps", levels.max_gap_rel_error(gap), SPECTRUM_TOL);
    if !levels.sectors_interleave() {
        failures.push("sector_interleaving: even and odd levels do not interleave".into());
    }
    log::info!("trusted levels {}, max relative error {:e}", levels.trusted_count, levels.max_rel_error);
    Ok(failures)
}

pub fn tilt<W: Write>(s: &Settings, out: W) -> Result<Failures, CliError> {
    let params = model_params(s)?;
    let mut sq = solve_squeeze(&params)?;
    if let Some(phi) = s.phi {
        sq = sq.with_phase(phi);
    }
    let rep = tilt_hamiltonian_with(&params, &sq)?;
    let mut failures = Failures::new();
    check(&mut failures, "tilt_offdiagonal", rep.offdiag_residual, TRANSFORM_TOL);
    check(&mut failures, "tilt_diagonal", rep.diag_rel_residual, TRANSFORM_TOL);
    let mut w = RecordWriter::new(
        out,
        s.format,
        &["mu", "dim", "tau", "r", "phi", "interior", "offdiag_residual", "diag_rel_residual", "pass"],
    )?;
    w.row(&[
        s.mu.into(),
        s.dim.into(),
        sq.tau.into(),
        sq.r.into(),
        sq.phi.into(),
        rep.interior.into(),
        rep.offdiag_residual.into(),
        rep.diag_rel_residual.into(),
        failures.is_empty().into(),
    ])?;
    w.finish()?;
    Ok(failures)
}

pub fn bogoliubov<W: Write>(s: &Settings, out: W) -> Result<Failures, CliError> {
    let params = model_params(s)?;
    let rep = bogoliubov_diagonal_form(&params)?;
    let omega_mu = params.rabi_frequency()?;
    let mut failures = Failures::new();
    check(&mut failures, "bogoliubov_entrywise", rep.residual, TRANSFORM_TOL);
    check(&mut failures, "bogoliubov_levels", rep.level_rel_residual, TRANSFORM_TOL);
    check(&mut failures, "pair_coefficient", rep.coefficient_residual, COEFFICIENT_TOL);
    check(&mut failures, "quasiparticle_frequency", rep.frequency_residual / omega_mu, COEFFICIENT_TOL);
    let mut w = RecordWriter::new(
        out,
        s.format,
        &[
            "mu",
            "dim",
            "r",
            "interior",
            "residual",
            "level_rel_residual",
            "coefficient_residual",
            "frequency_residual",
            "pass",
        ],
    )?;
    w.row(&[
        s.mu.into(),
        s.dim.into(),
        rep.squeeze.r.into(),
        rep.interior.into(),
        rep.residual.into(),
        rep.level_rel_residual.into(),
        rep.coefficient_residual.into(),
        rep.frequency_residual.into(),
        failures.is_empty().into(),
    ])?;
    w.finish()?;
    Ok(failures)
}

fn stat_cells(rec: &StatRecord64) -> Vec<Cell> {
    vec![
        rec.n.into(),
        rec.mu.into(),
        rec.r.into(),
        rec.mean_n.into(),
        rec.variance.into(),
        rec.mandel_q.into(),
        rec.g2.into(),
        rec.provenance.as_str().into(),
        rec.tail_mass.into(),
    ]
}

/// Records for one grid point, closed form first.
fn stat_point(n: usize, mu: f64, r: f64, phi: f64, source: Source) -> Result<Vec<StatRecord64>, DunklError> {
    let mut records = Vec::with_capacity(2);
    if source != Source::Oracle {
        records.push(closed_form_statistics(n, mu, r)?);
    }
    if source != Source::ClosedForm {
        let sq = SqueezeParams::from_rapidity(r, phi);
        records.push(oracle_statistics_for(n, mu, &sq, &OracleConfig::default())?);
    }
    Ok(records)
}

fn compare(records: &[StatRecord64], failures: &mut Failures) {
    if let [closed, oracle] = records {
        let diff = closed.max_abs_diff(oracle);
        let name = format!("stats_oracle_agreement (n={}, mu={}, r={})", closed.n, closed.mu, closed.r);
        check(failures, &name, diff, ORACLE_TOL);
    }
}

fn checked_rapidity(r: f64) -> Result<f64, CliError> {
    if r.is_finite() && r >= 0.0 {
        Ok(r)
    } else {
        Err(CliError::Input(format!("squeezing rapidity r must be finite and >= 0, got {r}")))
    }
}

/// `--r` when given, otherwise the rapidity solved from omega and |f|.
fn rapidity(s: &Settings, params: &ModelParams64) -> Result<f64, CliError> {
    match s.r {
        Some(r) => checked_rapidity(r),
        None => Ok(solve_squeeze(params)?.r),
    }
}

pub fn stats<W: Write>(s: &Settings, out: W) -> Result<Failures, CliError> {
    let params = model_params(s)?;
    let r = rapidity(s, &params)?;
    let records = stat_point(s.n, s.mu, r, params.f_phase(), s.source)?;
    let mut failures = Failures::new();
    compare(&records, &mut failures);
    let mut w = RecordWriter::new(out, s.format, STAT_COLUMNS)?;
    for rec in &records {
        w.row(&stat_cells(rec))?;
    }
    w.finish()?;
    Ok(failures)
}

/// Grid order is mu, then r, then n (innermost). Points are computed in
/// parallel chunks and written in grid order, flushing after every chunk.
pub fn sweep<W: Write>(s: &Settings, out: W) -> Result<Failures, CliError> {
    let params = model_params(s)?;
    let mus = s.mu_list.clone().unwrap_or_else(|| vec![s.mu]);
    for &mu in &mus {
        params.with_mu(mu)?;
    }
    let rs = match &s.r_list {
        Some(list) => list.iter().map(|&r| checked_rapidity(r)).collect::<Result<Vec<_>, _>>()?,
        None => vec![rapidity(s, &params)?],
    };
    let ns = s.n_list.clone().unwrap_or_else(|| vec![s.n]);
    let mut grid = Vec::with_capacity(mus.len() * rs.len() * ns.len());
    for &mu in &mus {
        for &r in &rs {
            grid.extend(ns.iter().map(|&n| (mu, r, n)));
        }
    }
    log::info!("sweep over {} grid points", grid.len());

    let phi = params.f_phase();
    let mut failures = Failures::new();
    let mut w = RecordWriter::new(out, s.format, STAT_COLUMNS)?;
    for chunk in grid.chunks(SWEEP_CHUNK) {
        let results: Vec<_> = chunk.par_iter().map(|&(mu, r, n)| stat_point(n, mu, r, phi, s.source)).collect();
        for records in results {
            let records = records?;
            compare(&records, &mut failures);
            for rec in &records {
                w.row(&stat_cells(rec))?;
            }
        }
        w.flush()?;
    }
    w.finish()?;
    Ok(failures)
}
