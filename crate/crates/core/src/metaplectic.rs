//! The projective unitary representation `S -> U(S)` with
//! `U(S) D(p) U(S)^dag = D(S p)`.
//!
//! `U(h+)` and `U(h-)` have closed forms on both lattices; every other
//! `U(S)` is the product of generator unitaries along a word from
//! [`crate::symplectic::decompose`]. The global phase is never fixed, so
//! compare results with [`equal_up_to_phase`].

use num_complex::Complex;
use num_traits::Zero;

use crate::cmatrix::{CMatrix, RootsOfUnity};
use crate::error::{Error, Result};
use crate::qops::{half_exponent, Lattice, Parity, PhasePoint};
use crate::scalar::Real;
use crate::symplectic::{decompose, Gen, GenWord, SympMat};

/// A unitary standing for a phase class `{e^{i theta} U}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjUnitary<T> {
    matrix: CMatrix<T>,
    lattice: Lattice,
}

impl<T: Real> ProjUnitary<T> {
    pub fn new(matrix: CMatrix<T>, lattice: Lattice, tol: T) -> Result<Self> {
        if matrix.dim() != lattice.dim() {
            return Err(Error::DimensionMismatch { expected: lattice.dim(), actual: matrix.dim() });
        }
        let r = matrix.unitarity_residual();
        if r.is_nan() || r >= tol {
            return Err(Error::DecompositionFailed(format!("matrix is not unitary (residual {r})")));
        }
        Ok(Self { matrix, lattice })
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn parity(&self) -> Parity {
        self.lattice.parity()
    }

    pub fn modulus(&self) -> u64 {
        self.lattice.modulus()
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }
}

/// Closed-form `U(h+)`.
///
/// Odd: `1/sqrt(N) sum_{i,k} w^{(i-k)(i-k+N)/2} |i><k|`.
/// Even: `1/sqrt(N) sum_{i,k} w~^{(i-k)^2} |i><k|`.
pub fn u_hplus_matrix<T: Real>(lattice: &Lattice) -> CMatrix<T> {
    let n = lattice.dim();
    let norm = T::one() / T::of(n as f64).sqrt();
    let phase = generator_phase::<T>(lattice);
    CMatrix::from_fn(n, |i, k| phase(i as i64 - k as i64) * norm)
}

/// Closed-form `U(h-)`: `diag(w^{i(i+N)/2})` (odd) or `diag(w~^{i^2})` (even).
pub fn u_hminus_matrix<T: Real>(lattice: &Lattice) -> CMatrix<T> {
    let phase = generator_phase::<T>(lattice);
    CMatrix::diagonal(&(0..lattice.dim() as i64).map(phase).collect::<Vec<_>>())
}

/// `x -> w^{x(x+N)/2}` on the odd lattice, `x -> w~^{x^2}` on the even one.
fn generator_phase<T: Real>(lattice: &Lattice) -> impl Fn(i64) -> Complex<T> {
    let n = lattice.dim();
    let parity = lattice.parity();
    let roots = RootsOfUnity::<T>::new(lattice.modulus() as usize);
    move |x| match parity {
        // x(x+N)/2 = x^2 / 2 (mod N) since x(x+N) is even
        Parity::Odd => roots.pow(half_exponent(x * x, n)),
        Parity::Even => roots.pow(x * x),
    }
}

pub fn u_hplus<T: Real>(dim: usize, parity: Parity) -> Result<ProjUnitary<T>> {
    let lattice = Lattice::new(dim, parity)?;
    Ok(ProjUnitary { matrix: u_hplus_matrix(&lattice), lattice })
}

pub fn u_hminus<T: Real>(dim: usize, parity: Parity) -> Result<ProjUnitary<T>> {
    let lattice = Lattice::new(dim, parity)?;
    Ok(ProjUnitary { matrix: u_hminus_matrix(&lattice), lattice })
}

/// `U(h_t) = U(h+) U(h-)^{-1} U(h+)`.
pub fn u_ht<T: Real>(dim: usize, parity: Parity) -> Result<ProjUnitary<T>> {
    let rep = Metaplectic::new(Lattice::new(dim, parity)?);
    Ok(rep.unitary(&GenWord::swap_word(rep.lattice.modulus())?))
}

pub fn u_of<T: Real>(s: &SympMat, parity: Parity, dim: usize) -> Result<ProjUnitary<T>> {
    Metaplectic::new(Lattice::new(dim, parity)?).u_of(s)
}

/// Representation on a fixed lattice, caching the generator unitaries.
#[derive(Debug, Clone)]
pub struct Metaplectic<T> {
    lattice: Lattice,
    plus: CMatrix<T>,
    minus_phases: Vec<i64>,
}

impl<T: Real> Metaplectic<T> {
    pub fn new(lattice: Lattice) -> Self {
        let n = lattice.dim() as i64;
        let minus_phases = (0..n)
            .map(|i| match lattice.parity() {
                Parity::Odd => half_exponent(i * i, n as usize),
                Parity::Even => i * i,
            })
            .collect();
        Self { plus: u_hplus_matrix(&lattice), minus_phases, lattice }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn u_hplus(&self) -> &CMatrix<T> {
        &self.plus
    }

    pub fn u_hminus(&self) -> CMatrix<T> {
        self.generator_power(Gen::Minus, 1)
    }

    /// `U(h)^exp`. Powers of the diagonal `U(h-)` are exact phase lookups.
    pub fn generator_power(&self, gen: Gen, exp: u64) -> CMatrix<T> {
        match gen {
            Gen::Plus => self.plus.pow(exp),
            Gen::Minus => {
                let roots = RootsOfUnity::<T>::new(self.lattice.modulus() as usize);
                let e = exp as i64;
                CMatrix::diagonal(&self.minus_phases.iter().map(|&p| roots.pow(p * e)).collect::<Vec<_>>())
            }
        }
    }

    /// Product of generator unitaries along `word`.
    pub fn unitary(&self, word: &GenWord) -> ProjUnitary<T> {
        assert_eq!(word.modulus(), self.lattice.modulus(), "word modulus does not match the lattice");
        let matrix = word.factors().iter().fold(CMatrix::identity(self.lattice.dim()), |acc, f| {
            match f.gen {
                Gen::Plus => acc.matmul(&self.generator_power(f.gen, f.exp)),
                Gen::Minus => {
                    // right-multiplying by a diagonal scales columns
                    let d = self.generator_power(f.gen, f.exp);
                    CMatrix::from_fn(acc.dim(), |i, j| acc[(i, j)] * d[(j, j)])
                }
            }
        });
        ProjUnitary { matrix, lattice: self.lattice }
    }

    pub fn u_of(&self, s: &SympMat) -> Result<ProjUnitary<T>> {
        if s.modulus() != self.lattice.modulus() {
            return Err(Error::ModulusMismatch(self.lattice.modulus(), s.modulus()));
        }
        Ok(self.unitary(&decompose(s)?))
    }
}

/// Result of [`equal_up_to_phase`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEquivalence<T> {
    pub equivalent: bool,
    /// Unit `lambda` with `B = lambda A`, when equivalent.
    pub phase: Option<Complex<T>>,
    /// `max |A B^dag - mu I|` plus `| |mu| - 1 |`, with `mu = Tr(A B^dag) / N`.
    pub residual: T,
}

/// Decides whether `b = lambda a` for a unit scalar `lambda`.
pub fn equal_up_to_phase<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>, tol: T) -> Result<PhaseEquivalence<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), actual: b.dim() });
    }
    let n = a.dim();
    let c = a.matmul(&b.adjoint());
    let mu = c.trace() / T::of(n as f64);
    let off = c.max_abs_diff(&CMatrix::identity(n).scale(mu));
    let residual = off + (mu.norm() - T::one()).abs();
    let equivalent = residual < tol;
    let phase = if equivalent && !mu.is_zero() { Some((mu / mu.norm()).conj()) } else { None };
    Ok(PhaseEquivalence { equivalent, phase, residual })
}

/// `S . p`, the symplectic action on a phase point.
pub fn act(s: &SympMat, p: &PhasePoint) -> Result<PhasePoint> {
    if s.modulus() != p.modulus() {
        return Err(Error::ModulusMismatch(s.modulus(), p.modulus()));
    }
    let (m, n) = s.apply(p.m(), p.n());
    PhasePoint::new(m as i64, n as i64, s.modulus())
}

/// Scalar multiple of the identity check used by order relations.
pub fn phase_of_identity<T: Real>(u: &CMatrix<T>, tol: T) -> Option<Complex<T>> {
    let id = CMatrix::identity(u.dim());
    equal_up_to_phase(&id, u, tol).ok().and_then(|e| e.phase)
}
