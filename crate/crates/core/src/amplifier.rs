//! The Dunkl parametric amplifier: Hamiltonian, exact and numerical spectra,
//! and parity decomposition.

use num_complex::Complex;

use crate::error::{DunklError, Result};
use crate::fock::{build_annihilation, build_reflection, build_su11_generators, parity_sign};
use crate::matrix::{FockMatrix, StateVector};
use crate::params::ModelParams;
use crate::scalar::Real;
use crate::transforms::{solve_squeeze, squeezed_number_state};
use crate::tridiag::hermitian_tridiagonal_eigenvalues;
use crate::verify::SU11_MARGIN;

/// `H = omega a^dagger a + f a^2 + f^* (a^dagger)^2`.
pub fn build_hamiltonian_ladder<T: Real>(params: &ModelParams<T>) -> FockMatrix<T> {
    let a = build_annihilation(params);
    let ad = a.dagger();
    let f = params.pump();
    let number = ad.matmul(&a).scale_real(params.omega());
    &(&number + &a.matmul(&a).scale(f)) + &ad.matmul(&ad).scale(f.conj())
}

/// `H = 2 omega K0 + 2 f K- + 2 f^* K+`.
///
/// Equals [`build_hamiltonian_ladder`] plus the diagonal `omega (1/2 + mu R)`.
pub fn build_hamiltonian_su11<T: Real>(params: &ModelParams<T>) -> FockMatrix<T> {
    let g = build_su11_generators(params);
    let two = T::lit(2.0);
    let f2 = params.pump() * two;
    &(&g.k0.scale_real(two * params.omega()) + &g.k_minus.scale(f2)) + &g.k_plus.scale(f2.conj())
}

/// Per-level offset `omega (1/2 + mu (-1)^n)` between the two Hamiltonian forms.
pub fn form_offset<T: Real>(params: &ModelParams<T>, n: usize) -> T {
    params.omega() * (T::lit(0.5) + params.mu() * parity_sign::<T>(n))
}

/// `E_n = (1/2) Omega (n + mu + 1/2)` for `n < count`.
pub fn closed_form_spectrum<T: Real>(params: &ModelParams<T>, count: usize) -> Result<Vec<T>> {
    let omega_mu = params.rabi_frequency()?;
    let half = T::lit(0.5);
    Ok((0..count).map(|n| half * omega_mu * (T::from_index(n) + params.mu() + half)).collect())
}

/// Numerical spectrum of the su(1,1)-form Hamiltonian checked against the
/// closed form.
#[derive(Debug, Clone)]
pub struct SpectrumResult<T> {
    /// Full spectrum, ascending.
    pub eigenvalues: Vec<T>,
    /// Sector of each entry of `eigenvalues`: `+1` even, `-1` odd.
    pub parity_labels: Vec<i8>,
    pub even: Vec<T>,
    pub odd: Vec<T>,
    /// `E_n` for `n < trusted_count`.
    pub closed_form: Vec<T>,
    pub trusted_count: usize,
    pub max_rel_error: T,
    omega: T,
    mu: T,
}

impl<T: Real> SpectrumResult<T> {
    /// Numerical level `n` matched by sector order: even `n` is the `n/2`-th
    /// even eigenvalue, odd `n` the `(n-1)/2`-th odd one.
    pub fn level(&self, n: usize) -> T {
        if n.is_multiple_of(2) {
            self.even[n / 2]
        } else {
            self.odd[n / 2]
        }
    }

    /// Matched levels `0..trusted_count`.
    pub fn trusted_levels(&self) -> Vec<T> {
        (0..self.trusted_count).map(|n| self.level(n)).collect()
    }

    /// Trusted levels of the ladder-form Hamiltonian, i.e. with the
    /// `omega (1/2 + mu (-1)^n)` offset removed.
    pub fn ladder_form_levels(&self) -> Vec<T> {
        (0..self.trusted_count)
            .map(|n| self.level(n) - self.omega * (T::lit(0.5) + self.mu * parity_sign::<T>(n)))
            .collect()
    }

    /// `even_m < odd_m < even_{m+1}` for every sector pair.
    pub fn sectors_interleave(&self) -> bool {
        let m_max = self.even.len().min(self.odd.len());
        (0..m_max).all(|m| self.even[m] < self.odd[m] && (m + 1 >= self.even.len() || self.odd[m] < self.even[m + 1]))
    }

    /// Largest `|gap / expected - 1|` between consecutive trusted levels.
    pub fn max_gap_rel_error(&self, expected_gap: T) -> T {
        let levels = self.trusted_levels();
        levels.windows(2).map(|w| ((w[1] - w[0]) / expected_gap - T::one()).abs()).fold(T::zero(), T::max)
    }
}

/// Each parity block of the su(1,1)-form Hamiltonian is Hermitian tridiagonal
/// in the sector index; both are diagonalized independently, then merged.
/// The trusted levels (see [`trusted_level_count`]) are compared with the
/// closed form.
pub fn numerical_spectrum<T: Real>(params: &ModelParams<T>) -> Result<SpectrumResult<T>> {
    params.require_stable()?;
    let h = build_hamiltonian_su11(params);
    let (even_block, odd_block) = parity_decompose(&h)?;
    let even = sector_eigenvalues(&even_block)?;
    let odd = sector_eigenvalues(&odd_block)?;

    let mut labelled: Vec<(T, i8)> = even.iter().map(|&e| (e, 1)).chain(odd.iter().map(|&e| (e, -1))).collect();
    labelled.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));
    let (eigenvalues, parity_labels) = labelled.into_iter().unzip();

    let trusted_count = trusted_level_count(params)?;
    let closed_form = closed_form_spectrum(params, trusted_count)?;
    let mut result = SpectrumResult {
        eigenvalues,
        parity_labels,
        even,
        odd,
        closed_form,
        trusted_count,
        max_rel_error: T::zero(),
        omega: params.omega(),
        mu: params.mu(),
    };
    result.max_rel_error = (0..trusted_count)
        .map(|n| ((result.level(n) - result.closed_form[n]) / result.closed_form[n]).abs())
        .fold(T::zero(), T::max);
    Ok(result)
}

/// Top-decile probability of the eigenvector `D(xi)|n>` above which level `n`
/// is no longer trusted. Truncation shifts such levels by more than about
/// 1e-10 relative.
pub const TRUSTED_TAIL: f64 = 1e-12;

/// `min(dim / 4, number of leading levels whose eigenvector tail mass is
/// below TRUSTED_TAIL)`. Strong squeezing spreads `D(xi)|n>` over a range
/// growing with `n`, so at small `dim` fewer than `dim / 4` levels survive.
pub fn trusted_level_count<T: Real>(params: &ModelParams<T>) -> Result<usize> {
    let cap = params.dim() / 4;
    let sq = solve_squeeze(params)?;
    let limit = T::lit(TRUSTED_TAIL);
    let trusted = |n: usize| -> Result<bool> {
        let state = squeezed_number_state(n, params.mu(), &sq, params.dim())?;
        Ok(StateVector::new(state).tail_mass() < limit)
    };
    if cap == 0 || trusted(cap - 1)? {
        return Ok(cap);
    }
    // tail mass grows with n: bisect for the first untrusted level
    let (mut lo, mut hi) = (0, cap - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if trusted(mid)? {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    log::warn!("trusted levels reduced to {lo} of {cap} at dim {}", params.dim());
    Ok(lo)
}

fn sector_eigenvalues<T: Real>(block: &FockMatrix<T>) -> Result<Vec<T>> {
    let d = block.dim();
    let diag: Vec<Complex<T>> = block.diagonal();
    let off: Vec<Complex<T>> = (0..d.saturating_sub(1)).map(|m| block[(m + 1, m)]).collect();
    hermitian_tridiagonal_eigenvalues(&diag, &off)
}

/// Splits `M` into its even-even and odd-odd blocks. Fails when `M` mixes
/// parities, i.e. `max |[M, R]| > tol`.
pub fn parity_decompose<T: Real>(m: &FockMatrix<T>) -> Result<(FockMatrix<T>, FockMatrix<T>)> {
    let residual = m.commutator(&build_reflection::<T>(m.dim())).max_abs();
    if residual > T::structural_tol() {
        return Err(DunklError::ParityNotConserved { residual: residual.to_f64().unwrap_or(f64::NAN) });
    }
    let half = m.dim() / 2;
    let even = FockMatrix::from_fn(half, |i, j| m[(2 * i, 2 * j)]);
    let odd = FockMatrix::from_fn(half, |i, j| m[(2 * i + 1, 2 * j + 1)]);
    Ok((even, odd))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonconservationReport<T> {
    /// `max |[H, N] - (4 f K- - 4 f^* K+)|` on the su(1,1) interior.
    pub residual: T,
    /// `max |[H, N]|` on the same interior.
    pub commutator_norm: T,
}

pub fn check_number_nonconservation<T: Real>(params: &ModelParams<T>) -> NonconservationReport<T> {
    let h = build_hamiltonian_su11(params);
    let a = build_annihilation(params);
    let number = a.dagger().matmul(&a);
    let g = build_su11_generators(params);
    let f4 = params.pump() * T::lit(4.0);
    let commutator = h.commutator(&number);
    let expected = &g.k_minus.scale(f4) - &g.k_plus.scale(f4.conj());
    let size = params.dim() - SU11_MARGIN;
    NonconservationReport {
        residual: (&commutator - &expected).block_max_abs(size),
        commutator_norm: commutator.block_max_abs(size),
    }
}
