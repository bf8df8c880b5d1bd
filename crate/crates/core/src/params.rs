//! Physical parameters of the amplifier and the truncation dimension.

use num_complex::Complex;

use crate::error::{DunklError, Result};
use crate::scalar::Real;

/// Default Fock truncation.
pub const DEFAULT_DIM: usize = 128;

/// Deformation `mu`, frequency `omega`, pump `f = f_mag * exp(i f_phase)` and
/// truncation `dim`.
///
/// Construction validates everything except stability, which only matters for
/// spectral and transform operations; those call [`ModelParams::require_stable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    mu: T,
    omega: T,
    f_mag: T,
    f_phase: T,
    dim: usize,
}

impl<T: Real> ModelParams<T> {
    /// `f_phase` is reduced into `[0, 2pi)`.
    pub fn new(mu: T, omega: T, f_mag: T, f_phase: T, dim: usize) -> Result<Self> {
        check_mu(mu)?;
        if !(omega.is_finite() && omega > T::zero()) {
            return Err(DunklError::InvalidParams(format!("omega must be finite and > 0, got {omega}")));
        }
        if !(f_mag.is_finite() && f_mag >= T::zero()) {
            return Err(DunklError::InvalidParams(format!("f_mag must be finite and >= 0, got {f_mag}")));
        }
        if !f_phase.is_finite() {
            return Err(DunklError::InvalidParams(format!("f_phase must be finite, got {f_phase}")));
        }
        check_dim(dim)?;
        let two_pi = T::TAU();
        let mut phase = f_phase % two_pi;
        if phase < T::zero() {
            phase = phase + two_pi;
        }
        if phase >= two_pi {
            phase = T::zero();
        }
        Ok(Self { mu, omega, f_mag, f_phase: phase, dim })
    }

    /// Unpumped oscillator (`omega = 1`, `f = 0`).
    pub fn free(mu: T, dim: usize) -> Result<Self> {
        Self::new(mu, T::one(), T::zero(), T::zero(), dim)
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn f_mag(&self) -> T {
        self.f_mag
    }

    pub fn f_phase(&self) -> T {
        self.f_phase
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Complex pump amplitude `f`.
    pub fn pump(&self) -> Complex<T> {
        Complex::from_polar(self.f_mag, self.f_phase)
    }

    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, ..*self })
    }

    pub fn with_mu(&self, mu: T) -> Result<Self> {
        check_mu(mu)?;
        Ok(Self { mu, ..*self })
    }

    pub fn with_phase(&self, f_phase: T) -> Result<Self> {
        Self::new(self.mu, self.omega, self.f_mag, f_phase, self.dim)
    }

    pub fn is_stable(&self) -> bool {
        self.omega > (self.f_mag + self.f_mag)
    }

    pub fn require_stable(&self) -> Result<()> {
        if self.is_stable() {
            Ok(())
        } else {
            Err(DunklError::Unstable {
                omega: self.omega.to_f64().unwrap_or(f64::NAN),
                f_mag: self.f_mag.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    /// Level spacing scale `2 sqrt(omega^2 - 4|f|^2)`.
    pub fn rabi_frequency(&self) -> Result<T> {
        self.require_stable()?;
        let four = T::lit(4.0);
        Ok((self.omega * self.omega - four * self.f_mag * self.f_mag).sqrt() * T::lit(2.0))
    }
}

pub(crate) fn check_mu<T: Real>(mu: T) -> Result<()> {
    if mu.is_finite() && mu > T::lit(-0.5) {
        Ok(())
    } else {
        Err(DunklError::InvalidParams(format!("mu must be finite and > -1/2, got {mu}")))
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 4 || !dim.is_multiple_of(2) {
        return Err(DunklError::InvalidParams(format!("dim must be even and >= 4, got {dim}")));
    }
    Ok(())
}
