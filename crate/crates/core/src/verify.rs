//! Numerical checks of the deformed Heisenberg and su(1,1) identities.
//!
//! Every identity is checked on the leading block that excludes as many top
//! levels as the identity has ladder steps. Residuals are max-abs entrywise so a
//! failure points at a specific Fock level.

use crate::fock::{
    build_annihilation, build_reflection, build_su11_generators, casimir_from, parity_sign, Su11Generators,
};
use crate::matrix::FockMatrix;
use crate::params::ModelParams;
use crate::scalar::Real;

/// Margin for identities linear or bilinear in the ladder operators.
pub const LADDER_MARGIN: usize = 2;
/// Margin for commutators of su(1,1) generators.
pub const SU11_MARGIN: usize = 4;
/// Margin for products of two quadratics.
pub const QUARTIC_MARGIN: usize = 8;

/// A residual matrix restricted to its trusted leading block.
#[derive(Debug, Clone)]
pub struct InteriorBlock<T> {
    matrix: FockMatrix<T>,
    margin: usize,
}

impl<T: Real> InteriorBlock<T> {
    pub fn new(matrix: FockMatrix<T>, margin: usize) -> Self {
        Self { matrix, margin }
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Side of the trusted block.
    pub fn size(&self) -> usize {
        self.matrix.dim().saturating_sub(self.margin)
    }

    pub fn matrix(&self) -> &FockMatrix<T> {
        &self.matrix
    }

    pub fn max_abs(&self) -> T {
        self.matrix.block_max_abs(self.size())
    }
}

/// `1 + 2 mu R` as a matrix.
fn deformed_unit<T: Real>(params: &ModelParams<T>) -> FockMatrix<T> {
    let mu = params.mu();
    FockMatrix::from_real_diagonal((0..params.dim()).map(|n| T::one() + (mu + mu) * parity_sign::<T>(n)))
}

/// `[a, a^dagger] - (1 + 2 mu R)` with a configurable margin, together with
/// `[a, R] - 2aR` and `[a^dagger, R] - 2 a^dagger R` on margin `min(margin, 1)`.
pub fn check_deformed_heisenberg_with_margin<T: Real>(params: &ModelParams<T>, margin: usize) -> T {
    let a = build_annihilation(params);
    let ad = a.dagger();
    let r = build_reflection::<T>(params.dim());
    let two = T::lit(2.0);

    let heis = &a.commutator(&ad) - &deformed_unit(params);
    let ar = &a.commutator(&r) - &a.matmul(&r).scale_real(two);
    let adr = &ad.commutator(&r) - &ad.matmul(&r).scale_real(two);

    let r_margin = margin.min(1);
    InteriorBlock::new(heis, margin)
        .max_abs()
        .max(InteriorBlock::new(ar, r_margin).max_abs())
        .max(InteriorBlock::new(adr, r_margin).max_abs())
}

pub fn check_deformed_heisenberg<T: Real>(params: &ModelParams<T>) -> T {
    check_deformed_heisenberg_with_margin(params, LADDER_MARGIN)
}

fn su11_residual<T: Real>(g: &Su11Generators<T>) -> T {
    let two = T::lit(2.0);
    let r1 = &g.k0.commutator(&g.k_plus) - &g.k_plus;
    let r2 = &g.k0.commutator(&g.k_minus) + &g.k_minus;
    let r3 = &g.k_minus.commutator(&g.k_plus) - &g.k0.scale_real(two);
    [r1, r2, r3].into_iter().map(|m| InteriorBlock::new(m, SU11_MARGIN).max_abs()).fold(T::zero(), T::max)
}

/// `[K0, K+] = K+`, `[K0, K-] = -K-`, `[K-, K+] = 2 K0`.
pub fn check_su11<T: Real>(params: &ModelParams<T>) -> T {
    su11_residual(&build_su11_generators(params))
}

/// Casimir against `mu^2/4 - mu R/4 - 3/16` and against `k(k-1)` with the
/// Bargmann index of each parity sector.
pub fn check_casimir_spectrum<T: Real>(params: &ModelParams<T>) -> T {
    let c = casimir_from(&build_su11_generators(params));
    let mu = params.mu();
    let quarter = T::lit(0.25);
    let from_reflection = FockMatrix::from_real_diagonal(
        (0..params.dim()).map(|n| mu * mu * quarter - mu * quarter * parity_sign::<T>(n) - T::lit(3.0 / 16.0)),
    );
    let from_index = FockMatrix::from_real_diagonal((0..params.dim()).map(|n| {
        let k = bargmann_index(n, mu);
        k * (k - T::one())
    }));
    InteriorBlock::new(&c - &from_reflection, SU11_MARGIN)
        .max_abs()
        .max(InteriorBlock::new(&c - &from_index, SU11_MARGIN).max_abs())
}

/// `k+ = 1/4 + mu/2` for even `n`, `k- = 3/4 + mu/2` for odd `n`.
pub fn bargmann_index<T: Real>(n: usize, mu: T) -> T {
    let base = if n.is_multiple_of(2) { T::lit(0.25) } else { T::lit(0.75) };
    base + mu * T::lit(0.5)
}

/// `{K+, K-} = 2 K0^2 - 2C`.
pub fn check_anticommutator<T: Real>(params: &ModelParams<T>) -> T {
    let g = build_su11_generators(params);
    let c = casimir_from(&g);
    let two = T::lit(2.0);
    let res = &(&g.k_plus.anticommutator(&g.k_minus) - &g.k0.matmul(&g.k0).scale_real(two)) + &c.scale_real(two);
    InteriorBlock::new(res, SU11_MARGIN).max_abs()
}

/// Largest `|[C, K]|` over the three generators on levels `n <= dim - 5`.
pub fn check_casimir_central<T: Real>(params: &ModelParams<T>) -> T {
    let g = build_su11_generators(params);
    let c = casimir_from(&g);
    [&g.k0, &g.k_plus, &g.k_minus]
        .into_iter()
        .map(|k| InteriorBlock::new(c.commutator(k), SU11_MARGIN).max_abs())
        .fold(T::zero(), T::max)
}

/// One named identity residual.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResidual<T> {
    pub name: &'static str,
    pub residual: T,
}

/// The full algebra suite in a fixed order.
pub fn verify_all<T: Real>(params: &ModelParams<T>) -> Vec<IdentityResidual<T>> {
    vec![
        IdentityResidual { name: "deformed_heisenberg", residual: check_deformed_heisenberg(params) },
        IdentityResidual { name: "su11_commutators", residual: check_su11(params) },
        IdentityResidual { name: "casimir_spectrum", residual: check_casimir_spectrum(params) },
        IdentityResidual { name: "anticommutator", residual: check_anticommutator(params) },
    ]
}
