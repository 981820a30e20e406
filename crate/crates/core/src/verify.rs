//! Named verification suites over one lattice, reported as JSON-ready data.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::metaplectic::{equal_up_to_phase, phase_of_identity, Metaplectic};
use crate::oracle::{verify_sw_kernel, verify_uniqueness};
use crate::qops::{delta_cohendet, weyl_symmetric, DeltaFamily, Lattice, Parity};
use crate::symplectic::{enumerate_group_bounded, generator, h_t, Gen, GenWord, SympMat};

pub const SW_TOL: f64 = 1e-12;
pub const TRANSLATION_TOL: f64 = 1e-12;
pub const GENERATOR_TOL: f64 = 1e-10;
pub const GROUP_TOL: f64 = 1e-9;
pub const PROJECTIVITY_TOL: f64 = 1e-9;
pub const UNIQUENESS_TOL: f64 = 1e-9;

/// Number of `(S, S')` pairs drawn by the projectivity suite.
pub const PROJECTIVITY_PAIRS: usize = 200;
/// Groups up to this modulus are enumerated; larger ones are sampled.
pub const ENUMERATE_UP_TO: u64 = 12;
const SAMPLES: usize = 64;
const SEED: u64 = 0x5eed_d15c;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Sw,
    Translation,
    Covariance,
    Projectivity,
    Uniqueness,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 5] =
        [Suite::Sw, Suite::Translation, Suite::Covariance, Suite::Projectivity, Suite::Uniqueness];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sw => "sw",
            Suite::Translation => "translation",
            Suite::Covariance => "covariance",
            Suite::Projectivity => "projectivity",
            Suite::Uniqueness => "uniqueness",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Suite::All].into_iter().chain(Suite::PARTS).find(|x| x.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub pass: bool,
}

impl Check {
    fn below(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check { name: name.into(), max_residual: residual, pass: residual < tol }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: Suite, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport { suite: suite.name().to_string(), checks, pass }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Runs `suite` on `lattice`. `tol` replaces every per-suite tolerance.
///
/// `translation` is only defined on the odd lattice; asking for it on the
/// even one is a `ParityError`. `all` skips it there.
pub fn run(suite: Suite, lattice: &Lattice, tol: Option<f64>) -> Result<SuiteReport> {
    let pick = |default: f64| tol.unwrap_or(default);
    let checks = match suite {
        Suite::Sw => sw(lattice, pick(SW_TOL)),
        Suite::Translation => translation(lattice, pick(TRANSLATION_TOL))?,
        Suite::Covariance => {
            let scale = covariance_scale(lattice.dim());
            covariance(lattice, pick(GENERATOR_TOL * scale), pick(GROUP_TOL * scale))?
        }
        Suite::Projectivity => projectivity(lattice, pick(PROJECTIVITY_TOL))?,
        Suite::Uniqueness => uniqueness(lattice, pick(UNIQUENESS_TOL))?,
        Suite::All => {
            let mut all = Vec::new();
            for part in Suite::PARTS {
                if part == Suite::Translation && lattice.parity() == Parity::Even {
                    continue;
                }
                let r = run(part, lattice, tol)?;
                all.extend(r.checks.into_iter().map(|c| Check { name: format!("{}/{}", part, c.name), ..c }));
            }
            all
        }
    };
    Ok(SuiteReport::new(suite, checks))
}

/// Covariance tolerances grow like `sqrt(N)` past `N = 16`.
pub fn covariance_scale(dim: usize) -> f64 {
    if dim <= 16 {
        1.0
    } else {
        (dim as f64 / 16.0).sqrt()
    }
}

fn sw(lattice: &Lattice, tol: f64) -> Vec<Check> {
    let r = verify_sw_kernel(lattice);
    let mut checks = vec![
        Check::below("hermiticity", r.hermiticity, tol),
        Check::below("unit_trace", r.unit_trace, tol),
        Check::below("completeness", r.completeness, tol),
    ];
    if lattice.parity() == Parity::Odd {
        checks.push(Check::below("traciality", r.traciality, tol));
    }
    if let Some(t) = r.translation {
        checks.push(Check::below("kernel_translation", t, tol));
    }
    checks
}

fn translation(lattice: &Lattice, tol: f64) -> Result<Vec<Check>> {
    if lattice.parity() != Parity::Odd {
        return Err(Error::ParityError("translation covariance is defined on the odd lattice only".into()));
    }
    let n = lattice.dim();
    let d00 = delta_cohendet::<f64>(n, 0, 0)?;
    let mut worst = 0.0f64;
    let mut unitary = 0.0f64;
    for m in 0..n as i64 {
        for k in 0..n as i64 {
            let w = weyl_symmetric::<f64>(n, m, k)?;
            unitary = unitary.max(w.unitarity_residual());
            worst = worst.max(w.conjugate(&d00).max_abs_diff(&delta_cohendet(n, m, k)?));
        }
    }
    Ok(vec![Check::below("weyl_unitarity", unitary, tol), Check::below("displaced_origin", worst, tol)])
}

/// Every element of `Sp_M` when small enough, else a seeded sample.
fn elements(modulus: u64, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<SympMat>> {
    if modulus <= ENUMERATE_UP_TO {
        return enumerate_group_bounded(modulus, ENUMERATE_UP_TO);
    }
    (0..count).map(|_| random_element(modulus, rng)).collect()
}

fn random_element(modulus: u64, rng: &mut ChaCha8Rng) -> Result<SympMat> {
    let factors: Vec<(Gen, i64)> = (0..8)
        .map(|i| (if i % 2 == 0 { Gen::Plus } else { Gen::Minus }, rng.gen_range(0..modulus as i64)))
        .collect();
    Ok(GenWord::from_factors(modulus, factors)?.evaluate())
}

fn covariance(lattice: &Lattice, gen_tol: f64, group_tol: f64) -> Result<Vec<Check>> {
    let md = lattice.modulus();
    let rep = Metaplectic::<f64>::new(*lattice);
    let family = DeltaFamily::<f64>::new(lattice);
    let mut checks = Vec::new();
    for (name, s) in [("h+", generator(Gen::Plus, md)?), ("h-", generator(Gen::Minus, md)?), ("h_t", h_t(md)?)] {
        let u = rep.u_of(&s)?;
        checks.push(Check::below(format!("generator {name}"), family.covariance_residual(u.matrix(), &s)?, gen_tol));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for s in elements(md, SAMPLES, &mut rng)? {
        let u = rep.u_of(&s)?;
        worst = worst.max(family.covariance_residual(u.matrix(), &s)?);
    }
    checks.push(Check::below("group", worst, group_tol));
    Ok(checks)
}

fn projectivity(lattice: &Lattice, tol: f64) -> Result<Vec<Check>> {
    let md = lattice.modulus();
    let rep = Metaplectic::<f64>::new(*lattice);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let pool = elements(md, SAMPLES, &mut rng)?;
    let mut worst = 0.0f64;
    for _ in 0..PROJECTIVITY_PAIRS {
        let s = pool[rng.gen_range(0..pool.len())];
        let t = pool[rng.gen_range(0..pool.len())];
        let lhs = rep.u_of(&s.multiply(&t)?)?;
        let rhs = rep.u_of(&s)?.matrix().matmul(rep.u_of(&t)?.matrix());
        worst = worst.max(equal_up_to_phase(lhs.matrix(), &rhs, tol)?.residual);
    }
    let mut checks = vec![Check::below("pairs", worst, tol)];
    for gen in [Gen::Plus, Gen::Minus] {
        // h^M = I, so U(h)^M must be a multiple of the identity
        let power = rep.generator_power(gen, md);
        let residual = match phase_of_identity(&power, tol) {
            Some(_) => 0.0,
            None => equal_up_to_phase(&CMatrix::identity(lattice.dim()), &power, tol)?.residual,
        };
        checks.push(Check::below(format!("order h{}", gen.symbol()), residual, tol));
    }
    Ok(checks)
}

fn uniqueness(lattice: &Lattice, tol: f64) -> Result<Vec<Check>> {
    let md = lattice.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut targets = vec![
        ("h+".to_string(), generator(Gen::Plus, md)?),
        ("h-".to_string(), generator(Gen::Minus, md)?),
        ("h_t".to_string(), h_t(md)?),
        ("identity".to_string(), SympMat::identity(md)?),
    ];
    for i in 0..2 {
        targets.push((format!("random{i}"), random_element(md, &mut rng)?));
    }
    let mut checks = Vec::new();
    for (name, s) in targets {
        let r = verify_uniqueness(&s, lattice)?;
        checks.push(Check {
            name: format!("{name} nullity"),
            max_residual: (r.nullity as f64 - 1.0).abs(),
            pass: r.nullity == 1,
        });
        let phase = r.phase_residual.unwrap_or(f64::INFINITY);
        checks.push(Check::below(format!("{name} phase"), phase, tol));
    }
    Ok(checks)
}
