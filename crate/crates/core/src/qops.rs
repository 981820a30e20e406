//! Operators on the `N`-dimensional Hilbert space: phase `Q`, shift `P`,
//! inversion `T`, Weyl operators and phase-point operators.
//!
//! Basis states are indexed by `0..N`. On the odd lattice phase points are
//! `(m, n)` in `Z_N x Z_N` and `D(m,n) = w^{-2mn} Q^{2n} P^{-2m} T`. On the
//! even lattice the phase space is Leonhardt's doubled grid: the half-integer
//! point `(m, n)` is stored as `(j, k) = (2m, 2n)` in `Z_{2N} x Z_{2N}` and the
//! phases use `w~ = exp(2 pi i / 2N)`.
//!
//! All phases are reduced as exact integers before the root-of-unity lookup.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{CMatrix, RootsOfUnity};
use crate::error::{Error, Result};
use crate::modring::reduce;
use crate::scalar::Real;
use crate::symplectic::SympMat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(dim: usize) -> Parity {
        if dim % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            other => Err(Error::ParityError(format!("unknown parity {other:?}"))),
        }
    }
}

/// Hilbert-space dimension together with its phase-space convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    parity: Parity,
}

impl Lattice {
    pub fn new(dim: usize, parity: Parity) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionMismatch { expected: 2, actual: dim });
        }
        if Parity::of(dim) != parity {
            return Err(Error::ParityError(format!("dimension {dim} is not {parity}")));
        }
        Ok(Self { dim, parity })
    }

    pub fn odd(dim: usize) -> Result<Self> {
        Self::new(dim, Parity::Odd)
    }

    pub fn even(dim: usize) -> Result<Self> {
        Self::new(dim, Parity::Even)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Modulus of the phase-space coordinates: `N` (odd) or `2N` (even).
    pub fn modulus(&self) -> u64 {
        match self.parity {
            Parity::Odd => self.dim as u64,
            Parity::Even => 2 * self.dim as u64,
        }
    }

    /// Number of phase-space cells per axis, `D` (equal to the modulus).
    pub fn cells(&self) -> usize {
        self.modulus() as usize
    }

    pub fn point(&self, m: i64, n: i64) -> PhasePoint {
        PhasePoint::new(m, n, self.modulus()).expect("lattice modulus is valid")
    }

    /// All phase points in row-major order of `(m, n)`.
    pub fn points(&self) -> impl Iterator<Item = PhasePoint> {
        let m = self.modulus();
        (0..m).flat_map(move |a| (0..m).map(move |b| PhasePoint { m: a, n: b, modulus: m }))
    }

    pub fn delta<T: Real>(&self, p: PhasePoint) -> Result<CMatrix<T>> {
        if p.modulus != self.modulus() {
            return Err(Error::ModulusMismatch(self.modulus(), p.modulus));
        }
        match self.parity {
            Parity::Odd => delta_cohendet(self.dim, p.m as i64, p.n as i64),
            Parity::Even => delta_leonhardt(self.dim, p.m as i64, p.n as i64),
        }
    }
}

/// A phase-space point. On the even lattice the coordinates are the doubled
/// integers `(j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    m: u64,
    n: u64,
    modulus: u64,
}

impl PhasePoint {
    pub fn new(m: i64, n: i64, modulus: u64) -> Result<Self> {
        crate::modring::check_modulus(modulus)?;
        Ok(Self { m: reduce(m as i128, modulus), n: reduce(n as i128, modulus), modulus })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Row-major position in a `modulus x modulus` grid.
    pub fn index(&self) -> usize {
        (self.m * self.modulus + self.n) as usize
    }

    pub fn coords(&self) -> (u64, u64) {
        (self.m, self.n)
    }
}

fn require(dim: usize, parity: Parity) -> Result<()> {
    Lattice::new(dim, parity).map(|_| ())
}

fn modn(x: i64, n: usize) -> usize {
    reduce(x as i128, n as u64) as usize
}

/// Exponent `x / 2 (mod N)` for odd `N`, using `2^{-1} = (N + 1) / 2`.
pub fn half_exponent(x: i64, dim: usize) -> i64 {
    debug_assert!(dim % 2 == 1);
    let inv2 = (dim as i128 + 1) / 2;
    (x as i128 * inv2).rem_euclid(dim as i128) as i64
}

/// `Q = sum_k w^k |k><k|`.
pub fn phase_op<T: Real>(dim: usize) -> CMatrix<T> {
    let w = RootsOfUnity::new(dim);
    CMatrix::diagonal(&(0..dim).map(|k| w.pow(k as i64)).collect::<Vec<_>>())
}

/// `P = sum_k |k-1><k|`.
pub fn shift_op<T: Real>(dim: usize) -> CMatrix<T> {
    permutation(dim, |k| modn(k as i64 - 1, dim))
}

/// `T = sum_k |-k><k|`.
pub fn inversion_op<T: Real>(dim: usize) -> CMatrix<T> {
    permutation(dim, |k| modn(-(k as i64), dim))
}

fn permutation<T: Real>(dim: usize, image: impl Fn(usize) -> usize) -> CMatrix<T> {
    let mut out = CMatrix::zeros(dim);
    for k in 0..dim {
        out[(image(k), k)] = Complex::new(T::one(), T::zero());
    }
    out
}

/// Cohendet Weyl operator `w^{-2mn} Q^{2n} P^{-2m}` (odd `N`).
pub fn weyl_cohendet<T: Real>(dim: usize, m: i64, n: i64) -> Result<CMatrix<T>> {
    require(dim, Parity::Odd)?;
    let w = RootsOfUnity::new(dim);
    let mut out = CMatrix::zeros(dim);
    for k in 0..dim as i64 {
        out[(modn(k + 2 * m, dim), k as usize)] = w.pow(2 * n * k + 2 * m * n);
    }
    Ok(out)
}

/// Translation operator `w^{-mn/2} Q^n P^{-m}` (odd `N`), with
/// `D(m,n) = W(m,n) D(0,0) W(m,n)^dag`.
pub fn weyl_symmetric<T: Real>(dim: usize, m: i64, n: i64) -> Result<CMatrix<T>> {
    require(dim, Parity::Odd)?;
    let w = RootsOfUnity::new(dim);
    let (m, n) = (modn(m, dim) as i64, modn(n, dim) as i64);
    let base = -half_exponent(m * n, dim);
    let mut out = CMatrix::zeros(dim);
    for k in 0..dim as i64 {
        out[(modn(k + m, dim), k as usize)] = w.pow(base + n * (k + m));
    }
    Ok(out)
}

/// Cohendet phase-point operator
/// `D(m,n) = sum_i w^{2n(i-m)} |i><2m-i|` (odd `N`).
pub fn delta_cohendet<T: Real>(dim: usize, m: i64, n: i64) -> Result<CMatrix<T>> {
    require(dim, Parity::Odd)?;
    let w = RootsOfUnity::new(dim);
    let mut out = CMatrix::zeros(dim);
    for i in 0..dim as i64 {
        out[(i as usize, modn(2 * m - i, dim))] = w.pow(2 * n * (i - m));
    }
    Ok(out)
}

/// Leonhardt phase-point operator at doubled coordinates `(j, k)`:
/// `sum_i w~^{2ki - kj} |i><j-i|` (even `N`).
pub fn delta_leonhardt<T: Real>(dim: usize, j: i64, k: i64) -> Result<CMatrix<T>> {
    require(dim, Parity::Even)?;
    let wt = RootsOfUnity::new(2 * dim);
    let (j, k) = (modn(j, 2 * dim) as i64, modn(k, 2 * dim) as i64);
    let mut out = CMatrix::zeros(dim);
    for i in 0..dim as i64 {
        out[(i as usize, modn(j - i, dim))] = wt.pow(2 * k * i - k * j);
    }
    Ok(out)
}

/// Leonhardt Weyl operator `w~^{jk} Q^{-j} P^{-k}` at doubled coordinates,
/// i.e. `w^{2mn} Q^{-2m} P^{-2n}` for `(m, n) = (j/2, k/2)`.
pub fn weyl_leonhardt<T: Real>(dim: usize, j: i64, k: i64) -> Result<CMatrix<T>> {
    require(dim, Parity::Even)?;
    let wt = RootsOfUnity::new(2 * dim);
    let (j, k) = (modn(j, 2 * dim) as i64, modn(k, 2 * dim) as i64);
    let mut out = CMatrix::zeros(dim);
    for x in 0..dim as i64 {
        out[(modn(x + k, dim), x as usize)] = wt.pow(j * k - 2 * j * (x + k));
    }
    Ok(out)
}

/// Leonhardt phase-point operator as the double Fourier transform of the
/// Weyl operators over the doubled grid:
/// `D(j,k) = 1/(2N) sum_{j',k'} w~^{jj' + kk'} W(j',k')`.
pub fn delta_from_weyl<T: Real>(dim: usize, j: i64, k: i64) -> Result<CMatrix<T>> {
    require(dim, Parity::Even)?;
    let two_n = 2 * dim as i64;
    let wt = RootsOfUnity::new(2 * dim);
    let mut acc = CMatrix::zeros(dim);
    for jp in 0..two_n {
        for kp in 0..two_n {
            acc = &acc + &weyl_leonhardt(dim, jp, kp)?.scale(wt.pow(j * jp + k * kp));
        }
    }
    Ok(acc.scale_real(T::one() / T::of(two_n as f64)))
}

/// Phase-point operators for every point of a phase space, with the modulus
/// the symplectic group acts through.
#[derive(Debug, Clone)]
pub struct DeltaFamily<T> {
    dim: usize,
    modulus: u64,
    deltas: Vec<CMatrix<T>>,
}

impl<T: Real> DeltaFamily<T> {
    pub fn new(lattice: &Lattice) -> Self {
        let deltas = lattice.points().map(|p| lattice.delta(p).expect("point on lattice")).collect();
        Self { dim: lattice.dim(), modulus: lattice.modulus(), deltas }
    }

    /// Leonhardt operators at the integer points only, indexed by
    /// `(m, n)` in `Z_N x Z_N`, so that `Sp_N` (not `Sp_2N`) acts on them.
    pub fn leonhardt_unextended(dim: usize) -> Result<Self> {
        let lattice = Lattice::even(dim)?;
        let n = dim as i64;
        let mut deltas = Vec::with_capacity(dim * dim);
        for m in 0..n {
            for k in 0..n {
                deltas.push(lattice.delta(lattice.point(2 * m, 2 * k))?);
            }
        }
        Ok(Self { dim, modulus: dim as u64, deltas })
    }

    /// Family over an arbitrary `modulus x modulus` index set.
    pub fn from_parts(dim: usize, modulus: u64, deltas: Vec<CMatrix<T>>) -> Result<Self> {
        let expected = (modulus * modulus) as usize;
        if deltas.len() != expected {
            return Err(Error::DimensionMismatch { expected, actual: deltas.len() });
        }
        if let Some(bad) = deltas.iter().find(|d| d.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, actual: bad.dim() });
        }
        Ok(Self { dim, modulus, deltas })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn get(&self, m: u64, n: u64) -> &CMatrix<T> {
        &self.deltas[(m * self.modulus + n) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), &CMatrix<T>)> {
        let md = self.modulus;
        self.deltas.iter().enumerate().map(move |(i, d)| ((i as u64 / md, i as u64 % md), d))
    }

    /// `max_{p} |U D(p) U^dag - D(S p)|`.
    pub fn covariance_residual(&self, u: &CMatrix<T>, s: &SympMat) -> Result<T> {
        if s.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, s.modulus()));
        }
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: u.dim() });
        }
        let ud = u.adjoint();
        let mut worst = T::zero();
        for ((m, n), d) in self.iter() {
            let (sm, sn) = s.apply(m, n);
            let moved = u.matmul(d).matmul(&ud);
            worst = worst.max(moved.max_abs_diff(self.get(sm, sn)));
        }
        Ok(worst)
    }
}

/// Sum of all matrices in the family.
pub fn family_sum<T: Real>(family: &DeltaFamily<T>) -> CMatrix<T> {
    family.deltas.iter().fold(CMatrix::zeros(family.dim), |acc, d| &acc + d)
}
