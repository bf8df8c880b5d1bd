//! Dunkl ladder operators, reflection, su(1,1) generators and Casimir on the
//! truncated Fock basis.
//!
//! The ladder action is `a|n> = sqrt([n]_mu) |n-1>` with all matrix elements
//! real and non-negative. Quadratic operators are built as products of the
//! truncated ladder matrices, so identities that need a level above `dim - 1`
//! fail near the bottom-right corner; see [`crate::verify`] for the trusted
//! interiors. `K0` is the one exception: its corner entry is set analytically.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{DunklError, Result};
use crate::matrix::{FockMatrix, StateVector};
use crate::params::{check_mu, ModelParams};
use crate::scalar::Real;

/// Deformed integer `[n]_mu`: `n` for even `n`, `n + 2 mu` for odd `n`.
#[inline]
pub fn dunkl_number<T: Real>(n: usize, mu: T) -> T {
    let base = T::from_index(n);
    if n.is_multiple_of(2) {
        base
    } else {
        base + mu + mu
    }
}

/// [`dunkl_number`] for unchecked input.
pub fn checked_dunkl_number<T: Real>(n: i64, mu: T) -> Result<T> {
    if n < 0 {
        return Err(DunklError::Domain(format!("Dunkl number needs n >= 0, got {n}")));
    }
    check_mu(mu)?;
    Ok(dunkl_number(n as usize, mu))
}

/// `(-1)^n`.
#[inline]
pub fn parity_sign<T: Real>(n: usize) -> T {
    if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

/// Diagonal of `K0`: `(1/2)([n]_mu + 1/2 + mu (-1)^n)`.
pub fn k0_eigenvalue<T: Real>(n: usize, mu: T) -> T {
    T::lit(0.5) * (dunkl_number(n, mu) + T::lit(0.5) + mu * parity_sign::<T>(n))
}

/// `a_mu`: entry `(n-1, n)` is `sqrt([n]_mu)`.
pub fn build_annihilation<T: Real>(params: &ModelParams<T>) -> FockMatrix<T> {
    let dim = params.dim();
    let mut a = FockMatrix::zeros(dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex::new(dunkl_number(n, params.mu()).sqrt(), T::zero());
    }
    a
}

/// `a_mu^dagger`, the exact conjugate transpose of [`build_annihilation`].
pub fn build_creation<T: Real>(params: &ModelParams<T>) -> FockMatrix<T> {
    build_annihilation(params).dagger()
}

/// Reflection `R = diag(+1, -1, +1, ...)`.
pub fn build_reflection<T: Real>(dim: usize) -> FockMatrix<T> {
    FockMatrix::from_real_diagonal((0..dim).map(parity_sign::<T>))
}

/// `N_mu = a^dagger a`.
pub fn build_number<T: Real>(params: &ModelParams<T>) -> FockMatrix<T> {
    let a = build_annihilation(params);
    a.dagger().matmul(&a)
}

/// The three su(1,1) generators.
#[derive(Debug, Clone)]
pub struct Su11Generators<T> {
    pub k0: FockMatrix<T>,
    pub k_plus: FockMatrix<T>,
    pub k_minus: FockMatrix<T>,
}

/// `K+ = (a^dagger)^2 / 2`, `K- = a^2 / 2`, `K0 = (a^dagger a + a a^dagger) / 4`.
///
/// The truncated `a a^dagger` is missing `[dim]_mu` in its last diagonal
/// entry; `K0[(dim-1, dim-1)]` is overwritten with the exact eigenvalue.
pub fn build_su11_generators<T: Real>(params: &ModelParams<T>) -> Su11Generators<T> {
    let a = build_annihilation(params);
    let ad = a.dagger();
    let half = T::lit(0.5);
    let mut k0 = (&ad.matmul(&a) + &a.matmul(&ad)).scale_real(T::lit(0.25));
    let top = params.dim() - 1;
    k0[(top, top)] = Complex::new(k0_eigenvalue(top, params.mu()), T::zero());
    Su11Generators { k0, k_plus: ad.matmul(&ad).scale_real(half), k_minus: a.matmul(&a).scale_real(half) }
}

/// Casimir `C = K0^2 - K0 - K+ K-`.
pub fn build_casimir<T: Real>(params: &ModelParams<T>) -> FockMatrix<T> {
    casimir_from(&build_su11_generators(params))
}

pub(crate) fn casimir_from<T: Real>(g: &Su11Generators<T>) -> FockMatrix<T> {
    &(&g.k0.matmul(&g.k0) - &g.k0) - &g.k_plus.matmul(&g.k_minus)
}

/// Matrix-free ladder operator for `O(dim)` actions on state vectors.
///
/// Truncation semantics match the dense matrices exactly: raising `|dim-1>`
/// gives zero.
#[derive(Debug, Clone)]
pub struct Ladder<T> {
    /// `coeff[n] = sqrt([n]_mu)`; `coeff[0] = 0`.
    coeff: Vec<T>,
}

impl<T: Real> Ladder<T> {
    pub fn new(mu: T, dim: usize) -> Self {
        Self { coeff: (0..dim).map(|n| dunkl_number(n, mu).sqrt()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coeff.len()
    }

    /// `a |v>`.
    pub fn lower(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let d = self.dim();
        let mut out = vec![Complex::zero(); d];
        for n in 1..d {
            out[n - 1] = v[n] * self.coeff[n];
        }
        out
    }

    /// `a^dagger |v>`.
    pub fn raise(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let d = self.dim();
        let mut out = vec![Complex::zero(); d];
        for n in 1..d {
            out[n] = v[n - 1] * self.coeff[n];
        }
        out
    }

    /// Upper bound on the induced 1-norm of `c1 (a^dagger)^2 + c2 a^2`.
    pub fn quadratic_norm_bound(&self, c1: T, c2: T) -> T {
        let d = self.dim();
        let mut best = T::zero();
        for n in 0..d {
            let up = if n + 2 < d { self.coeff[n + 1] * self.coeff[n + 2] } else { T::zero() };
            let down = if n >= 2 { self.coeff[n] * self.coeff[n - 1] } else { T::zero() };
            best = best.max(c1.abs() * up + c2.abs() * down);
        }
        best
    }
}

impl<T: Real> StateVector<T> {
    /// Parity eigenvalue if the state lies in a single sector.
    pub fn parity(&self) -> Option<i8> {
        let even = self.amplitudes().iter().step_by(2).any(|z| !z.is_zero());
        let odd = self.amplitudes().iter().skip(1).step_by(2).any(|z| !z.is_zero());
        match (even, odd) {
            (true, false) => Some(1),
            (false, true) => Some(-1),
            _ => None,
        }
    }
}
