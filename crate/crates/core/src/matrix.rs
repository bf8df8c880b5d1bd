//! Dense complex operators and state vectors over the truncated Fock basis.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{DunklError, Result};
use crate::scalar::{top_decile, Real};

/// Square operator on `{|0>, ..., |dim-1>}`, stored row-major.
///
/// Row index is the bra, column index the ket: entry `(m, n)` is `<m|M|n>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> FockMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_real_diagonal((0..dim).map(|_| T::one()))
    }

    pub fn from_real_diagonal<I: IntoIterator<Item = T>>(diag: I) -> Self {
        let diag: Vec<T> = diag.into_iter().collect();
        let mut m = Self::zeros(diag.len());
        for (n, d) in diag.into_iter().enumerate() {
            m[(n, n)] = Complex::new(d, T::zero());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.dim).map(|n| self[(n, n)]).collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|&z| z * c).collect() }
    }

    pub fn scale_real(&self, c: T) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|&z| z * c).collect() }
    }

    /// Matrix product. Zero entries of `self` are skipped, so banded and
    /// parity-blocked operands cost proportionally to their nonzero count.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let d = self.dim;
        let mut out = vec![Complex::zero(); d * d];
        for i in 0..d {
            let out_row = &mut out[i * d..(i + 1) * d];
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o = *o + a * b;
                }
            }
        }
        Self { dim: d, entries: out }
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) + &rhs.matmul(self)
    }

    pub fn max_abs(&self) -> T {
        self.block_max_abs(self.dim)
    }

    /// Max-abs entry over the leading `size x size` block.
    pub fn block_max_abs(&self, size: usize) -> T {
        let size = size.min(self.dim);
        let mut m = T::zero();
        for i in 0..size {
            for z in &self.row(i)[..size] {
                m = m.max(z.norm());
            }
        }
        m
    }

    /// Max-abs off-diagonal entry over the leading `size x size` block.
    pub fn block_max_offdiag(&self, size: usize) -> T {
        let size = size.min(self.dim);
        let mut m = T::zero();
        for i in 0..size {
            for (j, z) in self.row(i)[..size].iter().enumerate() {
                if i != j {
                    m = m.max(z.norm());
                }
            }
        }
        m
    }

    /// Leading `size x size` block as its own matrix.
    pub fn leading_block(&self, size: usize) -> Self {
        let size = size.min(self.dim);
        Self::from_fn(size, |i, j| self[(i, j)])
    }

    /// `max |M - M^dagger|`.
    pub fn hermiticity_residual(&self) -> T {
        (self - &self.dagger()).max_abs()
    }

    /// Debug text dump: a `dim` header line, then one line per row of `re im` pairs.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.dim);
        for i in 0..self.dim {
            let row: Vec<String> = self.row(i).iter().map(|z| format!("{:e} {:e}", z.re, z.im)).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: &str| DunklError::InvalidParams(format!("matrix text: {msg}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let dim: usize = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .trim()
            .parse()
            .map_err(|_| bad("header is not an integer"))?;
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, line) in lines.enumerate() {
            if i >= dim {
                return Err(bad("too many rows"));
            }
            let nums: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("unparseable number"))?;
            if nums.len() != 2 * dim {
                return Err(bad("wrong row length"));
            }
            entries.extend(nums.chunks(2).map(|p| Complex::new(T::lit(p[0]), T::lit(p[1]))));
        }
        if entries.len() != dim * dim {
            return Err(bad("too few rows"));
        }
        Ok(Self { dim, entries })
    }
}

impl<T> std::ops::Index<(usize, usize)> for FockMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.entries[i * self.dim + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for FockMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.entries[i * self.dim + j]
    }
}

fn zip_with<T: Real>(
    a: &FockMatrix<T>,
    b: &FockMatrix<T>,
    f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
) -> FockMatrix<T> {
    assert_eq!(a.dim, b.dim, "elementwise dimension mismatch");
    FockMatrix { dim: a.dim, entries: a.entries.iter().zip(&b.entries).map(|(&x, &y)| f(x, y)).collect() }
}

impl<T: Real> Add for &FockMatrix<T> {
    type Output = FockMatrix<T>;
    fn add(self, rhs: Self) -> FockMatrix<T> {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl<T: Real> Sub for &FockMatrix<T> {
    type Output = FockMatrix<T>;
    fn sub(self, rhs: Self) -> FockMatrix<T> {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl<T: Real> Mul for &FockMatrix<T> {
    type Output = FockMatrix<T>;
    fn mul(self, rhs: Self) -> FockMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Neg for &FockMatrix<T> {
    type Output = FockMatrix<T>;
    fn neg(self) -> FockMatrix<T> {
        self.scale_real(-T::one())
    }
}

/// Complex amplitudes over the truncated Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Self {
        Self { amplitudes }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { amplitudes: vec![Complex::zero(); dim] }
    }

    /// Number state `|n>`.
    pub fn fock(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(DunklError::Domain(format!("Fock index {n} outside truncation dim {dim}")));
        }
        let mut v = Self::zeros(dim);
        v.amplitudes[n] = Complex::new(T::one(), T::zero());
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// Probability in the top 10% of levels: the truncation-error proxy.
    pub fn tail_mass(&self) -> T {
        let k = top_decile(self.dim());
        self.amplitudes[self.dim() - k..].iter().map(|z| z.norm_sqr()).sum()
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(DunklError::DimMismatch { expected, found })
    }
}

/// Unit basis vector `|n>` in a `dim`-level space.
pub fn fock_state<T: Real>(n: usize, dim: usize) -> Result<StateVector<T>> {
    StateVector::fock(n, dim)
}

/// `M |v>`.
pub fn apply<T: Real>(m: &FockMatrix<T>, v: &StateVector<T>) -> Result<StateVector<T>> {
    check_dims(m.dim(), v.dim())?;
    let amps = (0..m.dim()).map(|i| m.row(i).iter().zip(v.amplitudes()).map(|(&a, &b)| a * b).sum()).collect();
    Ok(StateVector::new(amps))
}

/// `<v|M|v>`.
pub fn expectation<T: Real>(m: &FockMatrix<T>, v: &StateVector<T>) -> Result<Complex<T>> {
    v.inner(&apply(m, v)?)
}
