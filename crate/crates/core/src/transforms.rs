//! su(1,1) tilting and generalized Bogoliubov transformations.
//!
//! Both diagonalize the amplifier once `tanh(tau) = tanh(2r) = 2|f| / omega`
//! and the transformation phase equals the pump phase.
//!
//! Transformed operators are only trusted on the leading Fock levels whose
//! squeezed images stay clear of the truncation edge: a column `n` of the
//! truncated `D(xi)` counts as trusted when its top-decile probability is below
//! [`INTERIOR_TAIL`]. That interior is what every residual here is taken over.

use num_complex::Complex;

use crate::amplifier::{build_hamiltonian_su11, closed_form_spectrum};
use crate::error::{DunklError, Result};
use crate::expm::{expm, expm_action};
use crate::fock::{build_annihilation, build_reflection, build_su11_generators, k0_eigenvalue, parity_sign, Ladder};
use crate::matrix::{fock_state, FockMatrix};
use crate::params::ModelParams;
use crate::scalar::{top_decile, Real};
use crate::verify::bargmann_index;

/// Column tail mass below which a level of `D(xi)` is trusted.
pub const INTERIOR_TAIL: f64 = 1e-20;
/// Predicted tail mass above which the displacement operator is refused.
pub const TAIL_LIMIT: f64 = 1e-8;
/// `tanh(tau)` above which squeezing is flagged as strong.
pub const STRONG_SQUEEZE: f64 = 0.95;

/// Squeezing parameters shared by both transformations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams<T> {
    /// Tilting rapidity.
    pub tau: T,
    /// Bogoliubov rapidity, `tau / 2`.
    pub r: T,
    /// Transformation phase.
    pub phi: T,
    /// Displacement argument `-(tau/2) exp(-i phi)`.
    pub xi: Complex<T>,
}

impl<T: Real> SqueezeParams<T> {
    pub fn from_rapidity(r: T, phi: T) -> Self {
        let tau = r + r;
        Self { tau, r, phi, xi: Complex::from_polar(-r, -phi) }
    }

    /// Same rapidity, different phase.
    pub fn with_phase(&self, phi: T) -> Self {
        Self::from_rapidity(self.r, phi)
    }

    /// `zeta = -tanh(tau/2) exp(-i phi)`.
    pub fn zeta(&self) -> Complex<T> {
        Complex::from_polar(-self.r.tanh(), -self.phi)
    }

    /// Bogoliubov coefficient `u = cosh r`.
    pub fn u(&self) -> Complex<T> {
        Complex::new(self.r.cosh(), T::zero())
    }

    /// Bogoliubov coefficient `v = exp(-i phi) sinh r`.
    pub fn v(&self) -> Complex<T> {
        Complex::from_polar(self.r.sinh(), -self.phi)
    }
}

/// `tau = atanh(2|f| / omega)`, `r = tau / 2`, `phi = theta`.
pub fn solve_squeeze<T: Real>(params: &ModelParams<T>) -> Result<SqueezeParams<T>> {
    params.require_stable()?;
    let t = (params.f_mag() + params.f_mag()) / params.omega();
    if t > T::lit(STRONG_SQUEEZE) {
        log::warn!("strong squeezing: tanh(tau) = {t} exceeds {STRONG_SQUEEZE}; truncation error grows quickly");
    }
    let tau = t.atanh();
    Ok(SqueezeParams::from_rapidity(tau * T::lit(0.5), params.f_phase()))
}

/// Untruncated probability that the squeezed lowest state of each parity
/// sector has in the top decile of a `dim`-level basis; the larger of the two.
///
/// The squeezed lowest-weight state of an su(1,1) sector with Bargmann index
/// `k` has negative-binomial weights
/// `(1-p)^(2k) Gamma(2k+m) / (m! Gamma(2k)) p^m`, `p = tanh^2 r`.
pub fn predicted_tail_mass<T: Real>(r: T, mu: T, dim: usize) -> T {
    let p = r.tanh().powi(2);
    if p == T::zero() {
        return T::zero();
    }
    let start = dim - top_decile(dim);
    [0usize, 1]
        .into_iter()
        .map(|parity| {
            let first_level = if start <= parity { 0 } else { (start - parity).div_ceil(2) };
            negative_binomial_tail(bargmann_index(parity, mu) * T::lit(2.0), p, first_level)
        })
        .fold(T::zero(), T::max)
}

/// `sum_{m >= first} (1-p)^s Gamma(s+m) / (m! Gamma(s)) p^m`.
fn negative_binomial_tail<T: Real>(shape: T, p: T, first: usize) -> T {
    let ln_p = p.ln();
    let mut ln_w = shape * (T::one() - p).ln();
    for m in 0..first {
        ln_w = ln_w + ((shape + T::from_index(m)) / T::from_index(m + 1)).ln() + ln_p;
    }
    let mut sum = T::zero();
    let mut w = ln_w.exp();
    let mut m = first;
    let cutoff = T::lit(1e-18);
    loop {
        sum = sum + w;
        let ratio = (shape + T::from_index(m)) / T::from_index(m + 1) * p;
        w = w * ratio;
        m += 1;
        // ratio < 1 eventually; stop once the geometric remainder is negligible
        if ratio < T::one() && w / (T::one() - ratio) <= cutoff * sum.max(T::min_positive_value()) {
            break;
        }
        if m > first + 10_000_000 {
            break;
        }
    }
    sum
}

/// `D(xi) = exp(xi K+ - xi^* K-)`.
///
/// Refused when [`predicted_tail_mass`] exceeds [`TAIL_LIMIT`] at `params.dim()`.
pub fn displacement_operator<T: Real>(sq: &SqueezeParams<T>, params: &ModelParams<T>) -> Result<FockMatrix<T>> {
    let tail = predicted_tail_mass(sq.r, params.mu(), params.dim());
    if tail > T::lit(TAIL_LIMIT) {
        return Err(DunklError::TruncationRejected {
            tail_mass: tail.to_f64().unwrap_or(f64::NAN),
            limit: TAIL_LIMIT,
            dim: params.dim(),
        });
    }
    let g = build_su11_generators(params);
    let generator = &g.k_plus.scale(sq.xi) - &g.k_minus.scale(sq.xi.conj());
    expm(&generator)
}

/// Number of leading columns of `u` whose top-decile mass is below [`INTERIOR_TAIL`].
pub fn trusted_interior<T: Real>(u: &FockMatrix<T>) -> usize {
    let d = u.dim();
    let start = d - top_decile(d);
    let limit = T::lit(INTERIOR_TAIL);
    (0..d).take_while(|&n| (start..d).map(|m| u[(m, n)].norm_sqr()).sum::<T>() < limit).count()
}

fn column_tail<T: Real>(u: &FockMatrix<T>, n: usize) -> T {
    let d = u.dim();
    (d - top_decile(d)..d).map(|m| u[(m, n)].norm_sqr()).sum()
}

fn require_interior<T: Real>(u: &FockMatrix<T>) -> Result<usize> {
    let interior = trusted_interior(u);
    if interior == 0 {
        return Err(DunklError::TruncationRejected {
            tail_mass: column_tail(u, 0).to_f64().unwrap_or(f64::NAN),
            limit: INTERIOR_TAIL,
            dim: u.dim(),
        });
    }
    Ok(interior)
}

#[derive(Debug, Clone)]
pub struct TiltReport<T> {
    /// `D^dagger H D` over the full truncation.
    pub tilted: FockMatrix<T>,
    pub squeeze: SqueezeParams<T>,
    /// Leading levels the residuals are taken over.
    pub interior: usize,
    /// Max-abs off-diagonal entry of the tilted Hamiltonian on the interior.
    pub offdiag_residual: T,
    /// Max relative deviation of the interior diagonal from `Omega * K0`.
    pub diag_rel_residual: T,
}

/// Tilts the su(1,1)-form Hamiltonian with the solved squeezing parameters.
pub fn tilt_hamiltonian<T: Real>(params: &ModelParams<T>) -> Result<TiltReport<T>> {
    let sq = solve_squeeze(params)?;
    tilt_hamiltonian_with(params, &sq)
}

/// Tilts with caller-chosen squeezing parameters (wrong phases included).
pub fn tilt_hamiltonian_with<T: Real>(params: &ModelParams<T>, sq: &SqueezeParams<T>) -> Result<TiltReport<T>> {
    let omega_mu = params.rabi_frequency()?;
    let h = build_hamiltonian_su11(params);
    let d = displacement_operator(sq, params)?;
    let interior = require_interior(&d)?;
    let tilted = d.dagger().matmul(&h).matmul(&d);
    let offdiag_residual = tilted.block_max_offdiag(interior);
    let diag_rel_residual = (0..interior)
        .map(|n| {
            let target = omega_mu * k0_eigenvalue(n, params.mu());
            ((tilted[(n, n)].re - target) / target).abs().max(tilted[(n, n)].im.abs() / target.abs())
        })
        .fold(T::zero(), T::max);
    Ok(TiltReport { tilted, squeeze: *sq, interior, offdiag_residual, diag_rel_residual })
}

/// Quasiparticle operators `b = u a + v a^dagger` and `b^dagger`.
pub fn bogoliubov_operators<T: Real>(sq: &SqueezeParams<T>, params: &ModelParams<T>) -> (FockMatrix<T>, FockMatrix<T>) {
    let a = build_annihilation(params);
    let ad = a.dagger();
    let b = &a.scale(sq.u()) + &ad.scale(sq.v());
    let b_dag = b.dagger();
    (b, b_dag)
}

/// `B = f u^2 + f^* (v^*)^2 - omega u v^*`, the pair-term coefficient after
/// substituting the inverse transformation.
pub fn pair_coefficient<T: Real>(sq: &SqueezeParams<T>, params: &ModelParams<T>) -> Complex<T> {
    let f = params.pump();
    let (u, v) = (sq.u(), sq.v());
    f * u * u + f.conj() * v.conj() * v.conj() - u * v.conj() * params.omega()
}

/// `A = omega (u^2 + |v|^2) - 2 f u v - 2 f^* u v^*`, the quasiparticle frequency.
pub fn quasiparticle_frequency<T: Real>(sq: &SqueezeParams<T>, params: &ModelParams<T>) -> Complex<T> {
    let f = params.pump();
    let (u, v) = (sq.u(), sq.v());
    let two = T::lit(2.0);
    (u * u + v.norm_sqr()) * params.omega() - f * u * v * two - f.conj() * u * v.conj() * two
}

#[derive(Debug, Clone)]
pub struct BogoliubovReport<T> {
    /// `(Omega/2)(b^dagger b + 1/2 + mu R)`.
    pub h_quasi: FockMatrix<T>,
    pub squeeze: SqueezeParams<T>,
    pub interior: usize,
    /// `max |H_quasi - H|` on the interior, `H` the su(1,1)-form Hamiltonian.
    pub residual: T,
    /// `|B|`.
    pub coefficient_residual: T,
    /// `|A - Omega/2|`.
    pub frequency_residual: T,
    /// Diagonal of `H_quasi` in the quasiparticle number basis `D(xi)|n>`,
    /// for `n < interior`.
    pub quasi_levels: Vec<T>,
    /// Max relative deviation of `quasi_levels` from `E_n`.
    pub level_rel_residual: T,
}

pub fn bogoliubov_diagonal_form<T: Real>(params: &ModelParams<T>) -> Result<BogoliubovReport<T>> {
    let omega_mu = params.rabi_frequency()?;
    let sq = solve_squeeze(params)?;
    let (b, b_dag) = bogoliubov_operators(&sq, params);
    let dim = params.dim();
    let shift = FockMatrix::from_real_diagonal((0..dim).map(|n| T::lit(0.5) + params.mu() * parity_sign::<T>(n)));
    let h_quasi = (&b_dag.matmul(&b) + &shift).scale_real(omega_mu * T::lit(0.5));

    let d = displacement_operator(&sq, params)?;
    let interior = require_interior(&d)?;
    let h = build_hamiltonian_su11(params);
    let residual = (&h_quasi - &h).block_max_abs(interior);

    let in_quasi_basis = d.dagger().matmul(&h_quasi).matmul(&d);
    let quasi_levels: Vec<T> = (0..interior).map(|n| in_quasi_basis[(n, n)].re).collect();
    let exact = closed_form_spectrum(params, interior)?;
    let level_rel_residual =
        quasi_levels.iter().zip(&exact).map(|(q, e)| ((*q - *e) / *e).abs()).fold(T::zero(), T::max);

    Ok(BogoliubovReport {
        h_quasi,
        squeeze: sq,
        interior,
        residual,
        coefficient_residual: pair_coefficient(&sq, params).norm(),
        frequency_residual: (quasiparticle_frequency(&sq, params) - omega_mu * T::lit(0.5)).norm(),
        quasi_levels,
        level_rel_residual,
    })
}

/// `max |[D, R]|`.
pub fn parity_residual<T: Real>(d: &FockMatrix<T>) -> T {
    d.commutator(&build_reflection::<T>(d.dim())).max_abs()
}

/// `D(xi)|n>` in a `dim`-level truncation, by the action of the exponential.
pub fn squeezed_number_state<T: Real>(n: usize, mu: T, sq: &SqueezeParams<T>, dim: usize) -> Result<Vec<Complex<T>>> {
    let ladder = Ladder::new(mu, dim);
    let start = fock_state::<T>(n, dim)?.into_amplitudes();
    let half = T::lit(0.5);
    let (up, down) = (sq.xi * half, -sq.xi.conj() * half);
    let apply = |v: &[Complex<T>]| -> Vec<Complex<T>> {
        let raised = ladder.raise(&ladder.raise(v));
        let lowered = ladder.lower(&ladder.lower(v));
        raised.into_iter().zip(lowered).map(|(x, y)| x * up + y * down).collect()
    };
    let bound = ladder.quadratic_norm_bound(up.norm(), down.norm());
    expm_action(apply, bound, &start)
}
