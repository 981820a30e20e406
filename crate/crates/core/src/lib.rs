//! Quantum mechanics on a discrete `N x N` phase space.
//!
//! The crate covers four layers, bottom up:
//!
//! * [`modring`]: exact arithmetic in `Z_M` and the Euclidean remainder chain.
//! * [`symplectic`]: the group `Sp_M` of 2x2 determinant-one matrices over
//!   `Z_M`, its generators `h+`/`h-`, and the Euclidean factorisation of any
//!   element into a generator word.
//! * [`qops`] and [`metaplectic`]: phase/shift/inversion operators, Weyl and
//!   phase-point operators for odd (Cohendet) and even (Leonhardt, with the
//!   doubled "ghost" grid) lattices, and the projective unitary
//!   representation `S -> U(S)` satisfying
//!   `U(S) D(m,n) U(S)^dag = D(S.(m,n))`.
//! * [`wigner`]: Wigner tables, characteristic functions, marginals and
//!   Weyl-ordered quantisation.
//!
//! [`oracle`] holds independent brute-force checks (covariance as a null
//! space problem, breadth-first word search, Stratonovich-Weyl properties),
//! [`verify`] bundles them into named suites, and [`cli`] exposes everything
//! through the `dphase` binary.
//!
//! Matrix code is generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix it to `f64`.

pub mod cli;
pub mod cmatrix;
pub mod error;
pub mod metaplectic;
pub mod modring;
pub mod oracle;
pub mod qops;
pub mod scalar;
pub mod symplectic;
pub mod verify;
pub mod wigner;

pub use cmatrix::{CMatrix, RootsOfUnity};
pub use error::{Error, Result};
pub use metaplectic::{act, equal_up_to_phase, Metaplectic, PhaseEquivalence, ProjUnitary};
pub use modring::{euclid_trace, mod_inverse, EuclidTrace, Residue};
pub use qops::{DeltaFamily, Lattice, Parity, PhasePoint};
pub use scalar::Real;
pub use symplectic::{decompose, enumerate_group, Gen, GenPower, GenWord, Method, SympMat};
pub use wigner::{QuantumState, WignerTable};

/// Complex number over the crate's scalar.
pub type Complex<T> = num_complex::Complex<T>;

pub type CMatrix64 = CMatrix<f64>;
pub type CMatrix32 = CMatrix<f32>;
pub type Metaplectic64 = Metaplectic<f64>;
pub type ProjUnitary64 = ProjUnitary<f64>;
pub type DeltaFamily64 = DeltaFamily<f64>;
pub type QuantumState64 = QuantumState<f64>;
pub type WignerTable64 = WignerTable<f64>;
