//! Photon statistics of the squeezed number states `D(xi)|n>`.
//!
//! Closed forms are evaluated directly. Two independent oracles build the
//! same quantities from raw Fock-space actions: one applies the displacement
//! operator to `|n>`, the other writes `a` in terms of quasiparticle operators
//! and evaluates on quasiparticle number states.

use std::fmt;

use num_complex::Complex;

use crate::error::{DunklError, Result};
use crate::fock::{build_su11_generators, dunkl_number, Ladder};
use crate::matrix::{expectation, fock_state, StateVector};
use crate::params::{check_mu, ModelParams};
use crate::scalar::Real;
use crate::transforms::{solve_squeeze, squeezed_number_state, SqueezeParams};

/// Mean photon number below which `Q` and `g2` are undefined.
pub const VACUUM_MEAN: f64 = 1e-12;

/// `cosh^2(r) [n] + sinh^2(r) [n+1]`.
pub fn mean_photon<T: Real>(n: usize, mu: T, r: T) -> T {
    let (c, s) = (r.cosh(), r.sinh());
    c * c * dunkl_number(n, mu) + s * s * dunkl_number(n + 1, mu)
}

/// `[n][n-1]`, with the `n = 0` product taken as zero since `[0] = 0`.
fn lowering_pair<T: Real>(n: usize, mu: T) -> T {
    if n == 0 {
        T::zero()
    } else {
        dunkl_number(n, mu) * dunkl_number(n - 1, mu)
    }
}

fn raising_pair<T: Real>(n: usize, mu: T) -> T {
    dunkl_number(n + 1, mu) * dunkl_number(n + 2, mu)
}

/// `(1/4) sinh^2(2r) ([n][n-1] + [n+1][n+2])`.
pub fn photon_variance<T: Real>(n: usize, mu: T, r: T) -> T {
    let s2 = (r + r).sinh();
    T::lit(0.25) * s2 * s2 * (lowering_pair(n, mu) + raising_pair(n, mu))
}

/// Mandel `Q = variance / mean - 1`; `None` for the unsqueezed vacuum.
pub fn mandel_q<T: Real>(n: usize, mu: T, r: T) -> Option<T> {
    let mean = mean_photon(n, mu, r);
    (mean >= T::lit(VACUUM_MEAN)).then(|| photon_variance(n, mu, r) / mean - T::one())
}

/// `g2(0) = <(a^dagger)^2 a^2> / <N>^2`; `None` for the unsqueezed vacuum.
pub fn g2<T: Real>(n: usize, mu: T, r: T) -> Option<T> {
    let mean = mean_photon(n, mu, r);
    if mean < T::lit(VACUUM_MEAN) {
        return None;
    }
    let (c, s) = (r.cosh(), r.sinh());
    let s2 = (r + r).sinh();
    let cross = T::from_index(2 * n + 1) + mu + mu;
    let numerator =
        c.powi(4) * lowering_pair(n, mu) + T::lit(0.25) * s2 * s2 * cross * cross + s.powi(4) * raising_pair(n, mu);
    Some(numerator / (mean * mean))
}

/// Undeformed Mandel parameter written with plain integers.
pub fn mandel_q_undeformed<T: Real>(n: usize, r: T) -> T {
    let nf = T::from_index(n);
    let (c, s) = (r.cosh(), r.sinh());
    let s2 = (r + r).sinh();
    let pairs = nf * (nf - T::one()) + (nf + T::one()) * (nf + T::lit(2.0));
    s2 * s2 / T::lit(4.0) * (pairs / (nf * c * c + (nf + T::one()) * s * s)) - T::one()
}

/// Undeformed `g2(0)` written with plain integers.
pub fn g2_undeformed<T: Real>(n: usize, r: T) -> T {
    let nf = T::from_index(n);
    let (c, s) = (r.cosh(), r.sinh());
    let s2 = (r + r).sinh();
    let cross = T::lit(2.0) * nf + T::one();
    let numerator = nf * (nf - T::one()) * c.powi(4)
        + T::lit(0.25) * cross * cross * s2 * s2
        + (nf + T::one()) * (nf + T::lit(2.0)) * s.powi(4);
    let mean = nf * c * c + (nf + T::one()) * s * s;
    numerator / (mean * mean)
}

/// Squeezed vacuum: `Q = cosh(2r)` for every `mu`.
pub fn vacuum_mandel_q<T: Real>(r: T) -> T {
    (r + r).cosh()
}

/// Undeformed squeezed vacuum: `g2 = coth^2(r) + 2`.
pub fn vacuum_g2_undeformed<T: Real>(r: T) -> T {
    let coth = T::one() / r.tanh();
    coth * coth + T::lit(2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    /// Raw matrix expectations on `D(xi)|n>`.
    Oracle,
    /// Raw matrix expectations through the inverse Bogoliubov relations.
    BogoliubovOracle,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed_form",
            Provenance::Oracle => "oracle",
            Provenance::BogoliubovOracle => "bogoliubov_oracle",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Photon statistics of `D(xi)|n>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatRecord<T> {
    pub n: usize,
    pub mu: T,
    pub r: T,
    pub mean_n: T,
    pub variance: T,
    /// `None` when `mean_n < 1e-12`.
    pub mandel_q: Option<T>,
    /// `None` when `mean_n < 1e-12`.
    pub g2: Option<T>,
    pub provenance: Provenance,
    /// Top-decile probability of the oracle state; `None` for closed forms.
    pub tail_mass: Option<T>,
    /// Truncation the oracle settled on; `None` for closed forms.
    pub dim: Option<usize>,
}

impl<T: Real> StatRecord<T> {
    /// Largest absolute difference over mean, variance, Q and g2. An undefined
    /// statistic on one side and a defined one on the other counts as infinite.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let opt = |a: Option<T>, b: Option<T>| match (a, b) {
            (Some(x), Some(y)) => (x - y).abs(),
            (None, None) => T::zero(),
            _ => T::infinity(),
        };
        (self.mean_n - other.mean_n)
            .abs()
            .max((self.variance - other.variance).abs())
            .max(opt(self.mandel_q, other.mandel_q))
            .max(opt(self.g2, other.g2))
    }
}

pub fn closed_form_statistics<T: Real>(n: usize, mu: T, r: T) -> Result<StatRecord<T>> {
    check_mu(mu)?;
    Ok(StatRecord {
        n,
        mu,
        r,
        mean_n: mean_photon(n, mu, r),
        variance: photon_variance(n, mu, r),
        mandel_q: mandel_q(n, mu, r),
        g2: g2(n, mu, r),
        provenance: Provenance::ClosedForm,
        tail_mass: None,
        dim: None,
    })
}

fn record_from_moments<T: Real>(
    n: usize,
    mu: T,
    r: T,
    moments: [T; 3],
    provenance: Provenance,
    tail_mass: Option<T>,
    dim: Option<usize>,
) -> StatRecord<T> {
    let [mean, second, pair] = moments;
    let variance = second - mean * mean;
    let defined = mean >= T::lit(VACUUM_MEAN);
    StatRecord {
        n,
        mu,
        r,
        mean_n: mean,
        variance,
        mandel_q: defined.then(|| variance / mean - T::one()),
        g2: defined.then(|| pair / (mean * mean)),
        provenance,
        tail_mass,
        dim,
    }
}

/// Truncation schedule for the displacement oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub start_dim: usize,
    pub max_dim: usize,
    pub tail_limit: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { start_dim: 256, max_dim: 2048, tail_limit: 1e-8 }
    }
}

fn norm_sqr<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Oracle statistics for the squeezing solved from `params`, starting the
/// truncation schedule at `params.dim()`.
pub fn oracle_statistics<T: Real>(n: usize, params: &ModelParams<T>) -> Result<StatRecord<T>> {
    let sq = solve_squeeze(params)?;
    let config = OracleConfig { start_dim: params.dim(), ..OracleConfig::default() };
    oracle_statistics_for(n, params.mu(), &sq, &config)
}

/// Builds `D(xi)|n>` and evaluates `<N>`, `<N^2>` and `<(a^dagger)^2 a^2>` as
/// raw expectations. The truncation doubles from `config.start_dim` until the
/// state's tail mass is below `config.tail_limit`.
pub fn oracle_statistics_for<T: Real>(
    n: usize,
    mu: T,
    sq: &SqueezeParams<T>,
    config: &OracleConfig,
) -> Result<StatRecord<T>> {
    check_mu(mu)?;
    let limit = T::lit(config.tail_limit);
    let mut dim = config.start_dim.max(4);
    while dim <= n {
        dim *= 2;
    }
    dim += dim % 2;
    loop {
        let state = squeezed_number_state(n, mu, sq, dim)?;
        let ladder = Ladder::new(mu, dim);
        let tail = StateVector::new(state.clone()).tail_mass();
        if tail <= limit {
            let lowered = ladder.lower(&state);
            let mean = norm_sqr(&lowered);
            let second = norm_sqr(&ladder.raise(&lowered));
            let pair = norm_sqr(&ladder.lower(&lowered));
            return Ok(record_from_moments(
                n,
                mu,
                sq.r,
                [mean, second, pair],
                Provenance::Oracle,
                Some(tail),
                Some(dim),
            ));
        }
        if dim * 2 > config.max_dim {
            return Err(DunklError::TruncationRejected {
                tail_mass: tail.to_f64().unwrap_or(f64::NAN),
                limit: config.tail_limit,
                dim,
            });
        }
        dim *= 2;
    }
}

/// Oracle through the inverse relation `a = u^* b - v b^dagger`, evaluated on
/// quasiparticle number states. `b` and `b^dagger` act on those exactly as the
/// Dunkl ladder acts on `|n>`, so no exponential is involved.
pub fn bogoliubov_oracle_statistics<T: Real>(n: usize, mu: T, sq: &SqueezeParams<T>) -> Result<StatRecord<T>> {
    check_mu(mu)?;
    let dim = (n + 16) + (n % 2);
    let ladder = Ladder::new(mu, dim);
    let (u, v) = (sq.u(), sq.v());
    // physical a and a^dagger in quasiparticle operators
    let a = |x: &[Complex<T>]| -> Vec<Complex<T>> {
        let b = ladder.lower(x);
        let b_dag = ladder.raise(x);
        b.into_iter().zip(b_dag).map(|(p, q)| p * u.conj() - q * v).collect()
    };
    let a_dag = |x: &[Complex<T>]| -> Vec<Complex<T>> {
        let b = ladder.lower(x);
        let b_dag = ladder.raise(x);
        b_dag.into_iter().zip(b).map(|(q, p)| q * u - p * v.conj()).collect()
    };
    let start = fock_state::<T>(n, dim)?.into_amplitudes();
    let lowered = a(&start);
    let mean = norm_sqr(&lowered);
    let second = norm_sqr(&a_dag(&lowered));
    let pair = norm_sqr(&a(&lowered));
    Ok(record_from_moments(n, mu, sq.r, [mean, second, pair], Provenance::BogoliubovOracle, None, None))
}

/// One bracket of the statistics derivation evaluated on `|n>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub name: &'static str,
    pub numeric: T,
    pub closed_form: T,
}

impl<T: Real> Bracket<T> {
    pub fn residual(&self) -> T {
        (self.numeric - self.closed_form).abs()
    }
}

/// `4<K0^2>`, `4<K+ K->` and `4<K- K+>` on `|n>` from the dense generators,
/// next to `(2n+1+2mu)^2/4`, `[n][n-1]` and `[n+1][n+2]`.
pub fn intermediate_checks<T: Real>(n: usize, mu: T) -> Result<Vec<Bracket<T>>> {
    let dim = (n + 6).max(8);
    let params = ModelParams::free(mu, dim + dim % 2)?;
    let g = build_su11_generators(&params);
    let state = fock_state(n, params.dim())?;
    let four = T::lit(4.0);
    let cross = T::from_index(2 * n + 1) + mu + mu;
    Ok(vec![
        Bracket {
            name: "4<K0^2>",
            numeric: expectation(&g.k0.matmul(&g.k0), &state)?.re * four,
            closed_form: T::lit(0.25) * cross * cross,
        },
        Bracket {
            name: "4<K+K->",
            numeric: expectation(&g.k_plus.matmul(&g.k_minus), &state)?.re * four,
            closed_form: lowering_pair(n, mu),
        },
        Bracket {
            name: "4<K-K+>",
            numeric: expectation(&g.k_minus.matmul(&g.k_plus), &state)?.re * four,
            closed_form: raising_pair(n, mu),
        },
    ])
}
