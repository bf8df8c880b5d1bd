//! Matrix exponential by scaling and squaring with a truncated Taylor series.
//!
//! The scaled matrix has 1-norm at most [`SCALED_NORM`]; the series stops once
//! a term falls below [`SERIES_CUTOFF`] relative to the partial sum.

use num_complex::Complex;

use crate::error::{DunklError, Result};
use crate::matrix::FockMatrix;
use crate::scalar::Real;

pub const SCALED_NORM: f64 = 0.5;
pub const SERIES_CUTOFF: f64 = 1e-16;
const MAX_TERMS: usize = 64;

/// Induced 1-norm (max column sum).
pub fn norm1<T: Real>(m: &FockMatrix<T>) -> T {
    let d = m.dim();
    let mut cols = vec![T::zero(); d];
    for i in 0..d {
        for (c, z) in cols.iter_mut().zip(m.row(i)) {
            *c = *c + z.norm();
        }
    }
    cols.into_iter().fold(T::zero(), T::max)
}

/// Number of halvings that bring `norm` to at most [`SCALED_NORM`].
pub fn squarings_for<T: Real>(norm: T) -> u32 {
    let target = T::lit(SCALED_NORM);
    let mut s = 0;
    let mut scaled = norm;
    while scaled > target {
        scaled = scaled * T::lit(0.5);
        s += 1;
    }
    s
}

/// `exp(A)`.
pub fn expm<T: Real>(a: &FockMatrix<T>) -> Result<FockMatrix<T>> {
    let d = a.dim();
    let norm = norm1(a);
    if !norm.is_finite() {
        return Err(DunklError::ExpmConvergence { norm: f64::INFINITY, squarings: 0, terms: 0 });
    }
    let squarings = squarings_for(norm);
    let scaled = a.scale_real(T::lit(0.5).powi(squarings as i32));

    let mut result = FockMatrix::identity(d);
    let mut term = FockMatrix::identity(d);
    let cutoff = T::lit(SERIES_CUTOFF);
    let mut converged = false;
    let mut terms = 0;
    for k in 1..=MAX_TERMS {
        term = term.matmul(&scaled).scale_real(T::one() / T::from_index(k));
        result = &result + &term;
        terms = k;
        if norm1(&term) <= cutoff * norm1(&result) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(DunklError::ExpmConvergence { norm: norm.to_f64().unwrap_or(f64::NAN), squarings, terms });
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}

/// `exp(A) v` for an operator given only through its action, with `norm_bound`
/// an upper bound on `||A||_1`. Uses `ceil(norm_bound / SCALED_NORM)` Taylor
/// steps of `exp(A / s)`.
pub fn expm_action<T: Real>(
    apply: impl Fn(&[Complex<T>]) -> Vec<Complex<T>>,
    norm_bound: T,
    v: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let steps = (norm_bound / T::lit(SCALED_NORM)).ceil().max(T::one());
    let steps_usize = steps.to_usize().ok_or(DunklError::ExpmConvergence {
        norm: norm_bound.to_f64().unwrap_or(f64::NAN),
        squarings: 0,
        terms: 0,
    })?;
    let inv_steps = T::one() / steps;
    let cutoff = T::lit(SERIES_CUTOFF);
    let vec_norm = |x: &[Complex<T>]| x.iter().map(|z| z.norm()).sum::<T>();

    let mut acc = v.to_vec();
    for _ in 0..steps_usize {
        let mut term = acc.clone();
        let mut converged = false;
        for k in 1..=MAX_TERMS {
            let scale = inv_steps / T::from_index(k);
            term = apply(&term).into_iter().map(|z| z * scale).collect();
            for (a, t) in acc.iter_mut().zip(&term) {
                *a = *a + t;
            }
            if vec_norm(&term) <= cutoff * vec_norm(&acc) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(DunklError::ExpmConvergence {
                norm: norm_bound.to_f64().unwrap_or(f64::NAN),
                squarings: 0,
                terms: MAX_TERMS,
            });
        }
    }
    Ok(acc)
}

/// `max |U^dagger U - I|`.
pub fn unitarity_residual<T: Real>(u: &FockMatrix<T>) -> T {
    (&u.dagger().matmul(u) - &FockMatrix::identity(u.dim())).max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn is_identity<T: Real>(m: &FockMatrix<T>) -> bool {
        (0..m.dim()).all(|i| (0..m.dim()).all(|j| m[(i, j)] == if i == j { Complex::one() } else { Complex::zero() }))
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let e = expm(&FockMatrix::<f64>::zeros(6)).unwrap();
        assert!(is_identity(&e));
    }

    #[test]
    fn diagonal_exponential() {
        let a = FockMatrix::from_real_diagonal([0.3, -2.0, 5.5]);
        let e = expm(&a).unwrap();
        for (n, x) in [0.3f64, -2.0, 5.5].iter().enumerate() {
            assert!((e[(n, n)].re - x.exp()).abs() < 1e-13 * x.exp());
        }
    }

    #[test]
    fn rotation_generator() {
        // exp([[0, -t], [t, 0]]) = [[cos t, -sin t], [sin t, cos t]]
        let t = 7.3;
        let mut a = FockMatrix::zeros(2);
        a[(0, 1)] = c(-t, 0.0);
        a[(1, 0)] = c(t, 0.0);
        let e = expm(&a).unwrap();
        assert!((e[(0, 0)].re - t.cos()).abs() < 1e-13);
        assert!((e[(1, 0)].re - t.sin()).abs() < 1e-13);
        assert!(unitarity_residual(&e) < 1e-13);
    }

    #[test]
    fn nilpotent_is_exact_polynomial() {
        let mut a = FockMatrix::zeros(3);
        a[(0, 1)] = c(2.0, 0.0);
        a[(1, 2)] = c(3.0, 0.0);
        let e = expm(&a).unwrap();
        assert!((e[(0, 2)].re - 3.0).abs() < 1e-13);
        assert!((e[(0, 1)].re - 2.0).abs() < 1e-13);
    }

    #[test]
    fn action_matches_dense_exponential() {
        let a = FockMatrix::from_fn(5, |i, j| {
            if i.abs_diff(j) == 1 {
                c(0.3 * (i + j) as f64, if i < j { 0.7 } else { -0.7 })
            } else {
                c(0.0, 0.0)
            }
        });
        let a = &a - &a.dagger();
        let e = expm(&a).unwrap();
        let v: Vec<Complex<f64>> = (0..5).map(|n| c(1.0 / (n + 1) as f64, 0.2)).collect();
        let apply = |x: &[Complex<f64>]| -> Vec<Complex<f64>> {
            (0..5).map(|i| (0..5).map(|j| a[(i, j)] * x[j]).sum()).collect()
        };
        let w = expm_action(apply, norm1(&a), &v).unwrap();
        for i in 0..5 {
            let dense: Complex<f64> = (0..5).map(|j| e[(i, j)] * v[j]).sum();
            assert!((dense - w[i]).norm() < 1e-13);
        }
    }

    #[test]
    fn squaring_count() {
        assert_eq!(squarings_for(0.4f64), 0);
        assert_eq!(squarings_for(0.5f64), 0);
        assert_eq!(squarings_for(1.0f64), 1);
        assert_eq!(squarings_for(45.0f64), 7);
    }
}
