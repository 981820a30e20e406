use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modring::reduce;
use crate::scalar::Real;

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn diagonal(values: &[Complex<T>]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { Complex::zero() })
    }

    /// Builds a matrix from rows; every row must have as many entries as
    /// there are rows.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex<T>]> {
        self.data.chunks(self.dim)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// `self * rhs * self^dag`.
    pub fn conjugate(&self, rhs: &Self) -> Self {
        self.matmul(rhs).matmul(&self.adjoint())
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.matmul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    /// Hilbert-Schmidt inner product `Tr(self^dag rhs)`.
    pub fn inner(&self, rhs: &Self) -> Complex<T> {
        self.data.iter().zip(&rhs.data).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Largest entrywise deviation from `rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.data.iter().zip(&rhs.data).fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn approx_eq(&self, rhs: &Self, tol: T) -> bool {
        self.dim == rhs.dim && self.max_abs_diff(rhs) < tol
    }

    /// `max |U^dag U - I|`.
    pub fn unitarity_residual(&self) -> T {
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn hermiticity_residual(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_residual() < tol
    }

    /// `<psi| self |psi>`.
    pub fn expectation(&self, psi: &[Complex<T>]) -> Complex<T> {
        assert_eq!(psi.len(), self.dim, "state dimension mismatch");
        let n = self.dim;
        let mut acc = Complex::zero();
        for i in 0..n {
            let mut row = Complex::zero();
            for j in 0..n {
                row = row + self.data[i * n + j] * psi[j];
            }
            acc = acc + psi[i].conj() * row;
        }
        acc
    }

    pub fn apply(&self, psi: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(psi.len(), self.dim, "state dimension mismatch");
        self.rows().map(|row| row.iter().zip(psi).fold(Complex::zero(), |acc, (a, b)| acc + a * b)).collect()
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is entry
    /// `(order[i], order[j])` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self::from_fn(self.dim, |i, j| self[(order[i], order[j])])
    }

    pub fn cast<U: Real>(&self) -> CMatrix<U> {
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(U::of(z.re.to_f64_lossy()), U::of(z.im.to_f64_lossy())))
                .collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a, T: Real> Mul for &'a CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: Self) -> CMatrix<T> {
        self.matmul(rhs)
    }
}

impl<'a, T: Real> Add for &'a CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: Self) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        CMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a, T: Real> Sub for &'a CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: Self) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        CMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<T: fmt::Debug> fmt::Debug for CMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim.max(1)) {
            let cells: Vec<String> = row.iter().map(|z| format!("({:.4?}, {:.4?})", z.re, z.im)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `exp(2 pi i k / order)` for `k` in `0..order`, each evaluated once from its
/// exact integer exponent.
#[derive(Debug, Clone)]
pub struct RootsOfUnity<T> {
    table: Vec<Complex<T>>,
}

impl<T: Real> RootsOfUnity<T> {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "roots of unity need a positive order");
        let table = (0..order)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / order as f64;
                Complex::new(T::of(theta.cos()), T::of(theta.sin()))
            })
            .collect();
        Self { table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// `omega^exp` for any integer exponent.
    pub fn pow(&self, exp: i64) -> Complex<T> {
        self.table[reduce(exp as i128, self.table.len() as u64) as usize]
    }
}
