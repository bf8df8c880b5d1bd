//! Eigenvalues of real symmetric and Hermitian tridiagonal matrices.

use num_complex::Complex;

use crate::error::{DunklError, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues, ascending, of the symmetric tridiagonal matrix with diagonal
/// `diag` and sub-diagonal `off` (`off[i]` couples `i` and `i + 1`).
///
/// Implicit QL with Wilkinson shifts.
pub fn symmetric_tridiagonal_eigenvalues<T: Real>(diag: &[T], off: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    assert_eq!(off.len() + 1, n, "off-diagonal must have length n - 1");
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(T::zero());
    let two = T::lit(2.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() + dd == dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(DunklError::Eigensolver { index: l, iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let signed_r = if g >= T::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + signed_r);
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    if d.iter().any(|x| !x.is_finite()) {
        return Err(DunklError::Eigensolver { index: 0, iterations: 0 });
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

/// Eigenvalues, ascending, of a Hermitian tridiagonal matrix.
///
/// The diagonal unitary that makes every off-diagonal real and non-negative
/// is applied implicitly: only the magnitudes `|off[i]|` enter the solve.
/// Imaginary parts of `diag` are ignored.
pub fn hermitian_tridiagonal_eigenvalues<T: Real>(diag: &[Complex<T>], off: &[Complex<T>]) -> Result<Vec<T>> {
    let d: Vec<T> = diag.iter().map(|z| z.re).collect();
    let e: Vec<T> = off.iter().map(|z| z.norm()).collect();
    symmetric_tridiagonal_eigenvalues(&d, &e)
}
