//! Brute-force checks that do not go through the closed forms.
//!
//! [`solve_covariance`] treats the `N^2` entries of `U` as unknowns in the
//! stacked linear system `U D(p) - D(S p) U = 0` and reads the solution space
//! off a singular value decomposition. The numerics here are fixed to `f64`.

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::Serialize;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::metaplectic::{equal_up_to_phase, Metaplectic};
use crate::qops::{weyl_cohendet, DeltaFamily, Lattice, Parity};
use crate::symplectic::{bfs_word, GenWord, SympMat};

/// Singular values at or below this fraction of the largest count as zero.
pub const SINGULAR_CUTOFF: f64 = 1e-9;

/// Unitarity slack for the rescaled null vector.
pub const UNITARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct CovarianceSolution {
    pub nullity: usize,
    /// Orthonormal basis of the solution space, as matrices.
    pub basis: Vec<CMatrix<f64>>,
    /// The unique unitary solution (up to phase), when the space is
    /// one-dimensional and its generator rescales to a unitary.
    pub unitary_rep: Option<CMatrix<f64>>,
    /// Singular values of the stacked system, descending.
    pub singular_values: Vec<f64>,
}

/// Solves `U D(p) = D(S p) U` for all points of `family`.
pub fn solve_covariance(s: &SympMat, family: &DeltaFamily<f64>) -> Result<CovarianceSolution> {
    if s.modulus() != family.modulus() {
        return Err(Error::ModulusMismatch(family.modulus(), s.modulus()));
    }
    let n = family.dim();
    let unknowns = n * n;
    let rows = family.len() * unknowns;
    let mut a = DMatrix::<Complex<f64>>::zeros(rows, unknowns);
    let mut row = 0;
    for ((m, k), d) in family.iter() {
        let (sm, sk) = s.apply(m, k);
        let moved = family.get(sm, sk);
        // (U D)[r,c] - (D' U)[r,c] with unknown U[x,y] at column x*n + y
        for r in 0..n {
            for c in 0..n {
                for x in 0..n {
                    a[(row, r * n + x)] += d[(x, c)];
                    a[(row, x * n + c)] -= moved[(r, x)];
                }
                row += 1;
            }
        }
    }

    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let largest = sigma.iter().copied().fold(0.0, f64::max);
    let cutoff = SINGULAR_CUTOFF * largest;

    let basis: Vec<CMatrix<f64>> = sigma
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(j, _)| CMatrix::from_fn(n, |r, c| v_t[(j, r * n + c)].conj()))
        .collect();

    let unitary_rep = match basis.as_slice() {
        [only] => unitarize(only),
        _ => None,
    };
    let mut singular_values = sigma;
    singular_values.sort_by(|x, y| y.total_cmp(x));
    Ok(CovarianceSolution { nullity: basis.len(), basis, unitary_rep, singular_values })
}

/// Rotates the first nonzero entry onto the positive real axis and rescales
/// to unit-modulus columns; `None` if the result is not unitary.
fn unitarize(m: &CMatrix<f64>) -> Option<CMatrix<f64>> {
    let big = m.max_abs();
    let first = *m.as_slice().iter().find(|z| z.norm() > 1e-6 * big)?;
    let rotate = first.conj() / first.norm();
    // unit Frobenius norm vector, Tr(U^dag U) = N for a unitary
    let u = m.scale(rotate * (m.dim() as f64).sqrt());
    (u.unitarity_residual() < UNITARY_TOL).then_some(u)
}

/// Shortest generator word for `s`, by breadth-first search.
pub fn bfs_decompose(s: &SympMat, max_depth: usize) -> Result<GenWord> {
    bfs_word(s, max_depth)
}

/// Per-property maximum residuals of the phase-point family.
#[derive(Debug, Clone, Serialize)]
pub struct SwReport {
    pub hermiticity: f64,
    pub unit_trace: f64,
    /// `max |Tr(D(p)^dag D(q)) - N delta_pq|`.
    pub traciality: f64,
    /// `max |W(a,b)^dag D(m,n) W(a,b) - D(m-2a, n-2b)|`; odd lattice only.
    pub translation: Option<f64>,
    /// `max |(1/D) sum_p D(p) - I|`.
    pub completeness: f64,
}

pub fn verify_sw_kernel(lattice: &Lattice) -> SwReport {
    let family = DeltaFamily::<f64>::new(lattice);
    let n = lattice.dim();
    let one = Complex::new(1.0, 0.0);
    let mut hermiticity = 0.0f64;
    let mut unit_trace = 0.0f64;
    for (_, d) in family.iter() {
        hermiticity = hermiticity.max(d.hermiticity_residual());
        unit_trace = unit_trace.max((d.trace() - one).norm());
    }
    let gram = gram_matrix(&family);
    let traciality = gram.max_abs_diff(&CMatrix::identity(gram.dim()).scale_real(n as f64));

    let translation = (lattice.parity() == Parity::Odd).then(|| {
        let md = lattice.modulus();
        let mut worst = 0.0f64;
        for a in 0..md {
            for b in 0..md {
                let w = weyl_cohendet::<f64>(n, a as i64, b as i64).expect("odd lattice");
                let wd = w.adjoint();
                for ((m, k), d) in family.iter() {
                    let target = family.get((m + 2 * (md - a)) % md, (k + 2 * (md - b)) % md);
                    worst = worst.max(wd.matmul(d).matmul(&w).max_abs_diff(target));
                }
            }
        }
        worst
    });

    let sum = crate::qops::family_sum(&family).scale_real(1.0 / lattice.cells() as f64);
    let completeness = sum.max_abs_diff(&CMatrix::identity(n));
    SwReport { hermiticity, unit_trace, traciality, translation, completeness }
}

/// `G[p][q] = Tr(D(p)^dag D(q))` over the family, as a square matrix.
pub fn gram_matrix(family: &DeltaFamily<f64>) -> CMatrix<f64> {
    let ds: Vec<&CMatrix<f64>> = family.iter().map(|(_, d)| d).collect();
    CMatrix::from_fn(ds.len(), |p, q| ds[p].inner(ds[q]))
}

#[derive(Debug, Clone, Serialize)]
pub struct UniquenessReport {
    pub nullity: usize,
    pub unitary_found: bool,
    /// `lambda` with `oracle = lambda * U(S)` from the word product.
    pub phase: Option<[f64; 2]>,
    pub phase_residual: Option<f64>,
}

/// Solves the covariance system for `s` and compares the oracle unitary
/// with the word-product construction.
pub fn verify_uniqueness(s: &SympMat, lattice: &Lattice) -> Result<UniquenessReport> {
    let family = DeltaFamily::<f64>::new(lattice);
    let sol = solve_covariance(s, &family)?;
    let built = Metaplectic::<f64>::new(*lattice).u_of(s)?;
    let (phase, phase_residual) = match &sol.unitary_rep {
        Some(u) => {
            let eq = equal_up_to_phase(built.matrix(), u, 1e-9)?;
            (eq.phase.map(|z| [z.re, z.im]), Some(eq.residual))
        }
        None => (None, None),
    };
    Ok(UniquenessReport { nullity: sol.nullity, unitary_found: sol.unitary_rep.is_some(), phase, phase_residual })
}

/// What happens on the even lattice when the symplectic group is taken
/// modulo `N` instead of `2N`.
#[derive(Debug, Clone, Serialize)]
pub struct UnextendedReport {
    pub dim: usize,
    /// Nullity of the covariance system for `h+` and `h-` over `Z_N`.
    pub nullity_plus: usize,
    pub nullity_minus: usize,
    pub unitary_plus: bool,
    pub unitary_minus: bool,
    /// Distance of `U(h+)^N` (the `Sp_2N` solution) from the identity
    /// class, although `h+^N = I` in `Sp_N`.
    pub order_defect: f64,
}

pub fn unextended_even(dim: usize) -> Result<UnextendedReport> {
    let family = DeltaFamily::<f64>::leonhardt_unextended(dim)?;
    let m = dim as u64;
    let plus = solve_covariance(&crate::symplectic::generator(crate::symplectic::Gen::Plus, m)?, &family)?;
    let minus = solve_covariance(&crate::symplectic::generator(crate::symplectic::Gen::Minus, m)?, &family)?;
    let rep = Metaplectic::<f64>::new(Lattice::even(dim)?);
    let power = rep.u_hplus().pow(m);
    let order_defect = equal_up_to_phase(&CMatrix::identity(dim), &power, 1e-9)?.residual;
    Ok(UnextendedReport {
        dim,
        nullity_plus: plus.nullity,
        nullity_minus: minus.nullity,
        unitary_plus: plus.unitary_rep.is_some(),
        unitary_minus: minus.unitary_rep.is_some(),
        order_defect,
    })
}
