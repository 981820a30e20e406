//! Discrete Wigner functions, the even-lattice characteristic function,
//! marginals and Weyl-ordered quantisation.
//!
//! Tables are indexed by phase points in row-major order: row `m` is the
//! position coordinate, column `n` the momentum coordinate. On the even
//! lattice both run over the doubled grid `Z_{2N}`; the state itself stays
//! `N`-dimensional and vanishes on half-integer positions.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::cmatrix::{CMatrix, RootsOfUnity};
use crate::error::{Error, Result};
use crate::qops::{weyl_leonhardt, DeltaFamily, Lattice, Parity};
use crate::scalar::Real;
use crate::symplectic::SympMat;

/// Normalisation slack accepted by [`QuantumState::new`].
pub const NORM_TOLERANCE: f64 = 1e-8;

/// A pure state `|psi>` in the computational basis `|0>, ..., |N-1>`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> QuantumState<T> {
    /// Wraps amplitudes that are already normalised within `tol`.
    pub fn new(amplitudes: Vec<Complex<T>>, tol: T) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::DimensionMismatch { expected: 2, actual: amplitudes.len() });
        }
        let dev = (norm_sqr(&amplitudes) - T::one()).abs();
        if !(dev <= tol) {
            return Err(Error::NotNormalized(dev.to_f64_lossy()));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = norm_sqr(&amplitudes).sqrt();
        if norm.is_zero() || !norm.is_finite() {
            return Err(Error::NotNormalized(1.0));
        }
        let scale = T::one() / norm;
        Self::new(amplitudes.into_iter().map(|z| z * scale).collect(), T::of(NORM_TOLERANCE))
    }

    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::DimensionMismatch { expected: dim, actual: k });
        }
        let mut amps = vec![Complex::zero(); dim];
        amps[k] = Complex::new(T::one(), T::zero());
        Self::new(amps, T::of(NORM_TOLERANCE))
    }

    /// Haar-random state from i.i.d. complex Gaussian amplitudes.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let amps: Vec<Complex<T>> = (0..dim)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex::new(T::of(re), T::of(im))
                })
                .collect();
            if let Ok(s) = Self::normalized(amps) {
                return s;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    /// `|psi(k)|^2`.
    pub fn position_probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `|phi(n)|^2` with `phi(n) = N^{-1/2} sum_k w^{-nk} psi(k)`.
    pub fn momentum_probabilities(&self) -> Vec<T> {
        let n = self.dim();
        let w = RootsOfUnity::<T>::new(n);
        let scale = T::one() / T::of(n as f64);
        (0..n as i64)
            .map(|p| {
                let amp = self
                    .amplitudes
                    .iter()
                    .enumerate()
                    .fold(Complex::<T>::zero(), |acc, (k, &a)| acc + w.pow(-p * k as i64) * a);
                amp.norm_sqr() * scale
            })
            .collect()
    }

    /// `U |psi>`, renormalised against round-off.
    pub fn evolve(&self, u: &CMatrix<T>) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: u.dim() });
        }
        Self::normalized(u.apply(&self.amplitudes))
    }
}

fn norm_sqr<T: Real>(amps: &[Complex<T>]) -> T {
    amps.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

/// Real grid over the phase lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerTable<T> {
    lattice: Lattice,
    grid: Vec<T>,
    max_imag: T,
}

impl<T: Real> WignerTable<T> {
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn parity(&self) -> Parity {
        self.lattice.parity()
    }

    pub fn modulus(&self) -> u64 {
        self.lattice.modulus()
    }

    /// Side length of the grid: `N` (odd) or `2N` (even).
    pub fn cells(&self) -> usize {
        self.lattice.cells()
    }

    pub fn get(&self, m: usize, n: usize) -> T {
        self.grid[m * self.cells() + n]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.grid
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.grid.chunks(self.cells())
    }

    /// Largest imaginary part discarded when the table was built.
    pub fn max_imag(&self) -> T {
        self.max_imag
    }

    pub fn sum(&self) -> T {
        self.grid.iter().fold(T::zero(), |a, &b| a + b)
    }

    /// `(position, momentum)`: sums over the second and first index.
    pub fn marginals(&self) -> (Vec<T>, Vec<T>) {
        let c = self.cells();
        let position = self.rows().map(|r| r.iter().fold(T::zero(), |a, &b| a + b)).collect();
        let momentum = (0..c).map(|n| (0..c).fold(T::zero(), |a, m| a + self.get(m, n))).collect();
        (position, momentum)
    }

    /// The table moved by `S`: entry `S.p` of the result is entry `p` here.
    pub fn transported(&self, s: &SympMat) -> Result<Self> {
        if s.modulus() != self.modulus() {
            return Err(Error::ModulusMismatch(self.modulus(), s.modulus()));
        }
        let c = self.cells();
        let mut grid = vec![T::zero(); c * c];
        for m in 0..c {
            for n in 0..c {
                let (sm, sn) = s.apply(m as u64, n as u64);
                grid[sm as usize * c + sn as usize] = self.get(m, n);
            }
        }
        Ok(Self { lattice: self.lattice, grid, max_imag: self.max_imag })
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.grid.iter().zip(&other.grid).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }

    fn from_complex(lattice: Lattice, values: Vec<Complex<T>>) -> Self {
        let max_imag = values.iter().fold(T::zero(), |m, z| m.max(z.im.abs()));
        Self { lattice, grid: values.into_iter().map(|z| z.re).collect(), max_imag }
    }
}

/// `W(p) = (1/D) <psi| D(p) |psi>` with `D = N` (odd) or `2N` (even).
pub fn wigner_of<T: Real>(state: &QuantumState<T>, lattice: &Lattice) -> Result<WignerTable<T>> {
    wigner_with(state, lattice, &DeltaFamily::new(lattice))
}

/// [`wigner_of`] against a prebuilt phase-point family.
pub fn wigner_with<T: Real>(
    state: &QuantumState<T>,
    lattice: &Lattice,
    family: &DeltaFamily<T>,
) -> Result<WignerTable<T>> {
    if state.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch { expected: lattice.dim(), actual: state.dim() });
    }
    if family.modulus() != lattice.modulus() || family.dim() != lattice.dim() {
        return Err(Error::ModulusMismatch(lattice.modulus(), family.modulus()));
    }
    let scale = T::one() / T::of(lattice.cells() as f64);
    let values = family.iter().map(|(_, d)| d.expectation(state.amplitudes()) * scale).collect();
    Ok(WignerTable::from_complex(*lattice, values))
}

fn require_even(dim: usize) -> Result<()> {
    Lattice::even(dim).map(|_| ())
}

/// Characteristic function `<psi| W(j,k) |psi>` at doubled coordinates,
/// `W(j,k) = w^{2mn} Q^{-2m} P^{-2n}` with `(j, k) = (2m, 2n)`.
pub fn characteristic_fn<T: Real>(state: &QuantumState<T>, j: i64, k: i64) -> Result<Complex<T>> {
    Ok(weyl_leonhardt::<T>(state.dim(), j, k)?.expectation(state.amplitudes()))
}

/// The same value from its defining sum
/// `sum_x exp(-2 pi i 2m (x + n) / N) <x|rho|x + 2n>`.
pub fn characteristic_fn_sum<T: Real>(state: &QuantumState<T>, j: i64, k: i64) -> Result<Complex<T>> {
    let n = state.dim();
    require_even(n)?;
    let wt = RootsOfUnity::<T>::new(2 * n);
    let psi = state.amplitudes();
    Ok((0..n as i64).fold(Complex::zero(), |acc, x| {
        let shifted = psi[(x + k).rem_euclid(n as i64) as usize];
        acc + wt.pow(-j * (2 * x + k)) * psi[x as usize] * shifted.conj()
    }))
}

/// Wigner table recovered from the characteristic function by the inverse
/// double Fourier transform
/// `W(j,k) = 1/D^2 sum_{j',k'} w~^{jj' + kk'} chi(j',k')`.
pub fn wigner_from_characteristic<T: Real>(state: &QuantumState<T>) -> Result<WignerTable<T>> {
    let n = state.dim();
    let lattice = Lattice::even(n)?;
    let d = 2 * n as i64;
    let wt = RootsOfUnity::<T>::new(2 * n);
    let mut chi = Vec::with_capacity((d * d) as usize);
    for j in 0..d {
        for k in 0..d {
            chi.push(characteristic_fn(state, j, k)?);
        }
    }
    let scale = T::one() / T::of((d * d) as f64);
    let mut values = Vec::with_capacity(chi.len());
    for j in 0..d {
        for k in 0..d {
            let mut acc = Complex::zero();
            for jp in 0..d {
                for kp in 0..d {
                    acc = acc + wt.pow(j * jp + k * kp) * chi[(jp * d + kp) as usize];
                }
            }
            values.push(acc * scale);
        }
    }
    Ok(WignerTable::from_complex(lattice, values))
}

/// Weyl-ordered quantisation `(1/D) sum_p H(p) D(p)` of a real grid given
/// in row-major phase-point order.
pub fn weyl_quantize<T: Real>(classical: &[T], lattice: &Lattice) -> Result<CMatrix<T>> {
    let c = lattice.cells();
    if classical.len() != c * c {
        return Err(Error::DimensionMismatch { expected: c * c, actual: classical.len() });
    }
    let family = DeltaFamily::<T>::new(lattice);
    let sum = family
        .iter()
        .zip(classical)
        .fold(CMatrix::zeros(lattice.dim()), |acc, (( _, d), &h)| &acc + &d.scale_real(h));
    Ok(sum.scale_real(T::one() / T::of(c as f64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metaplectic::Metaplectic;
    use crate::qops::delta_cohendet;
    use crate::symplectic::enumerate_group;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-12;

    #[test]
    fn basis_state_table_n3() {
        let l = Lattice::odd(3).unwrap();
        let t = wigner_of(&QuantumState::<f64>::basis(3, 0).unwrap(), &l).unwrap();
        for m in 0..3 {
            for n in 0..3 {
                let expect = if m == 0 { 1.0 / 3.0 } else { 0.0 };
                assert!((t.get(m, n) - expect).abs() < TOL);
            }
        }
        let (pos, mom) = t.marginals();
        assert!(pos.iter().zip([1.0, 0.0, 0.0]).all(|(a, b)| (a - b).abs() < TOL));
        assert!(mom.iter().all(|a| (a - 1.0 / 3.0).abs() < TOL));
    }

    #[test]
    fn even_basis_state_marginals() {
        let l = Lattice::even(2).unwrap();
        let t = wigner_of(&QuantumState::<f64>::basis(2, 1).unwrap(), &l).unwrap();
        assert_eq!(t.cells(), 4);
        let (pos, _) = t.marginals();
        // doubled rows 0, 2 are the integer positions 0, 1
        let expect = [0.0, 0.0, 1.0, 0.0];
        assert!(pos.iter().zip(expect).all(|(a, b)| (a - b).abs() < TOL), "{pos:?}");
        assert!((t.sum() - 1.0).abs() < TOL);
    }

    #[test]
    fn random_states_have_marginals() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, parity) in [(3, Parity::Odd), (5, Parity::Odd), (2, Parity::Even), (4, Parity::Even), (6, Parity::Even)] {
            let l = Lattice::new(n, parity).unwrap();
            let fam = DeltaFamily::new(&l);
            for _ in 0..10 {
                let psi = QuantumState::<f64>::random(n, &mut rng);
                let t = wigner_with(&psi, &l, &fam).unwrap();
                assert!(t.max_imag() < TOL);
                assert!((t.sum() - 1.0).abs() < TOL);
                let (pos, mom) = t.marginals();
                let (p, q) = (psi.position_probabilities(), psi.momentum_probabilities());
                let stride = t.cells() / n;
                for i in 0..t.cells() {
                    let (ep, eq) = if i % stride == 0 { (p[i / stride], q[i / stride]) } else { (0.0, 0.0) };
                    assert!((pos[i] - ep).abs() < TOL && (mom[i] - eq).abs() < TOL, "N={n} i={i}");
                }
            }
        }
    }

    #[test]
    fn characteristic_function_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2usize, 4] {
            let psi = QuantumState::<f64>::random(n, &mut rng);
            assert!((characteristic_fn(&psi, 0, 0).unwrap() - Complex::new(1.0, 0.0)).norm() < TOL);
            for j in 0..2 * n as i64 {
                for k in 0..2 * n as i64 {
                    let a = characteristic_fn(&psi, j, k).unwrap();
                    let b = characteristic_fn_sum(&psi, j, k).unwrap();
                    assert!((a - b).norm() < TOL, "N={n} ({j},{k})");
                }
            }
            let direct = wigner_of(&psi, &Lattice::even(n).unwrap()).unwrap();
            let via_chi = wigner_from_characteristic(&psi).unwrap();
            assert!(direct.max_abs_diff(&via_chi) < TOL);
        }
        let zero = QuantumState::<f64>::basis(2, 0).unwrap();
        for j in 0..4 {
            assert!((characteristic_fn(&zero, j, 0).unwrap() - Complex::new(1.0, 0.0)).norm() < TOL);
        }
        assert!(matches!(characteristic_fn_sum(&QuantumState::<f64>::basis(3, 0).unwrap(), 0, 0), Err(Error::ParityError(_))));
    }

    #[test]
    fn covariance_transport() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (n, parity) in [(3, Parity::Odd), (2, Parity::Even)] {
            let l = Lattice::new(n, parity).unwrap();
            let fam = DeltaFamily::new(&l);
            let rep = Metaplectic::<f64>::new(l);
            let psi = QuantumState::<f64>::random(n, &mut rng);
            let base = wigner_with(&psi, &l, &fam).unwrap();
            for s in enumerate_group(l.modulus()).unwrap() {
                let moved = psi.evolve(rep.u_of(&s).unwrap().matrix()).unwrap();
                let lhs = wigner_with(&moved, &l, &fam).unwrap();
                assert!(lhs.max_abs_diff(&base.transported(&s).unwrap()) < 1e-12, "{s}");
            }
        }
    }

    #[test]
    fn quantisation() {
        for n in [3usize, 5] {
            let l = Lattice::odd(n).unwrap();
            let c = 2.5;
            let q = weyl_quantize(&vec![c; n * n], &l).unwrap();
            assert!(q.approx_eq(&CMatrix::identity(n).scale_real(c), TOL));
            assert!(weyl_quantize(&vec![0.0; n * n], &l).unwrap().max_abs() == 0.0);
            let mut delta = vec![0.0; n * n];
            delta[n + 2] = 1.0;
            let q = weyl_quantize(&delta, &l).unwrap();
            assert!(q.approx_eq(&delta_cohendet::<f64>(n, 1, 2).unwrap().scale_real(1.0 / n as f64), TOL));
        }
        let l = Lattice::even(2).unwrap();
        assert!(weyl_quantize(&vec![1.0; 16], &l).unwrap().approx_eq(&CMatrix::identity(2), TOL));
        assert!(weyl_quantize(&vec![1.0; 4], &l).is_err());
    }

    #[test]
    fn quantisation_is_linear_and_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for l in [Lattice::odd(5).unwrap(), Lattice::even(4).unwrap()] {
            let c = l.cells();
            let f: Vec<f64> = (0..c * c).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let g: Vec<f64> = (0..c * c).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (a, b) = (0.7, -1.3);
            let mix: Vec<f64> = f.iter().zip(&g).map(|(x, y)| a * x + b * y).collect();
            let lhs = weyl_quantize(&mix, &l).unwrap();
            let rhs = &weyl_quantize(&f, &l).unwrap().scale_real(a) + &weyl_quantize(&g, &l).unwrap().scale_real(b);
            assert!(lhs.approx_eq(&rhs, TOL));
            assert!(lhs.hermiticity_residual() < TOL);
        }
    }

    #[test]
    fn state_validation() {
        let bad = vec![Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)];
        assert!(matches!(QuantumState::<f64>::new(bad, 1e-8), Err(Error::NotNormalized(_))));
        let l = Lattice::odd(3).unwrap();
        assert!(matches!(
            wigner_of(&QuantumState::<f64>::basis(2, 0).unwrap(), &l),
            Err(Error::DimensionMismatch { expected: 3, actual: 2 })
        ));
        assert!(QuantumState::<f64>::basis(2, 2).is_err());
    }
}
