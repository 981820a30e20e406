//! The group `Sp_M` of 2x2 matrices over `Z_M` with unit determinant.
//!
//! Every element is a product of the two shears `h+ = [[1,1],[0,1]]` and
//! `h- = [[1,0],[1,1]]`. [`decompose`] finds such a product with the
//! Euclidean algorithm on the right column `(b, d)`, falling back to a
//! breadth-first search over generator words if the reduction ever stalls.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modring::{check_modulus, euclid_trace, mul_mod, reduce, Residue};

/// Largest modulus [`enumerate_group`] accepts.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 12;

/// Depth limit used when the Euclidean path falls back to word search.
const FALLBACK_DEPTH: usize = 64;

/// `[[a, b], [c, d]]` over `Z_M` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SympMat {
    modulus: u64,
    entries: [u64; 4],
}

impl SympMat {
    pub fn new(a: i64, b: i64, c: i64, d: i64, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let r = |x: i64| reduce(x as i128, modulus);
        Self::from_canonical([r(a), r(b), r(c), r(d)], modulus)
    }

    pub fn from_residues(a: Residue, b: Residue, c: Residue, d: Residue) -> Result<Self> {
        let m = a.modulus();
        for r in [b, c, d] {
            if r.modulus() != m {
                return Err(Error::ModulusMismatch(m, r.modulus()));
            }
        }
        Self::from_canonical([a.value(), b.value(), c.value(), d.value()], m)
    }

    fn from_canonical(entries: [u64; 4], modulus: u64) -> Result<Self> {
        let [a, b, c, d] = entries;
        let det = (mul_mod(a, d, modulus) + modulus - mul_mod(b, c, modulus)) % modulus;
        if det != 1 % modulus {
            return Err(Error::NotSymplectic { a, b, c, d, det, modulus });
        }
        Ok(Self { modulus, entries })
    }

    fn raw(entries: [u64; 4], modulus: u64) -> Self {
        debug_assert!(Self::from_canonical(entries, modulus).is_ok());
        Self { modulus, entries }
    }

    pub fn identity(modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self::raw([1, 0, 0, 1], modulus))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical entries `[a, b, c, d]`.
    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    pub fn a(&self) -> Residue {
        self.residue(0)
    }
    pub fn b(&self) -> Residue {
        self.residue(1)
    }
    pub fn c(&self) -> Residue {
        self.residue(2)
    }
    pub fn d(&self) -> Residue {
        self.residue(3)
    }

    fn residue(&self, i: usize) -> Residue {
        Residue::new(self.entries[i] as i64, self.modulus).expect("valid modulus")
    }

    pub fn is_identity(&self) -> bool {
        self.entries == [1, 0, 0, 1]
    }

    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch(self.modulus, rhs.modulus));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let m = self.modulus;
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = rhs.entries;
        let dot = |x: u64, y: u64, z: u64, w: u64| (mul_mod(x, y, m) + mul_mod(z, w, m)) % m;
        Self::raw([dot(a, e, b, g), dot(a, f, b, h), dot(c, e, d, g), dot(c, f, d, h)], m)
    }

    /// `[[d, -b], [-c, a]]`.
    pub fn inverse(&self) -> Self {
        let m = self.modulus;
        let [a, b, c, d] = self.entries;
        Self::raw([d, (m - b) % m, (m - c) % m, a], m)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::raw([1, 0, 0, 1], self.modulus);
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            exp >>= 1;
        }
        acc
    }

    /// Matrix-vector product `S (x, y)^T` over `Z_M`.
    pub fn apply(&self, x: u64, y: u64) -> (u64, u64) {
        let m = self.modulus;
        let [a, b, c, d] = self.entries;
        ((mul_mod(a, x, m) + mul_mod(b, y, m)) % m, (mul_mod(c, x, m) + mul_mod(d, y, m)) % m)
    }
}

impl fmt::Display for SympMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]] mod {}", self.modulus)
    }
}

/// One of the two generating shears.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    /// `h+ = [[1, 1], [0, 1]]`
    #[serde(rename = "+")]
    Plus,
    /// `h- = [[1, 0], [1, 1]]`
    #[serde(rename = "-")]
    Minus,
}

impl Gen {
    pub fn symbol(self) -> &'static str {
        match self {
            Gen::Plus => "+",
            Gen::Minus => "-",
        }
    }

    pub fn other(self) -> Gen {
        match self {
            Gen::Plus => Gen::Minus,
            Gen::Minus => Gen::Plus,
        }
    }
}

pub fn generator(gen: Gen, modulus: u64) -> Result<SympMat> {
    check_modulus(modulus)?;
    Ok(gen_power(gen, 1, modulus))
}

fn gen_power(gen: Gen, exp: u64, modulus: u64) -> SympMat {
    let e = exp % modulus;
    match gen {
        Gen::Plus => SympMat::raw([1, e, 0, 1], modulus),
        Gen::Minus => SympMat::raw([1, 0, e, 1], modulus),
    }
}

/// The row/column swap `[[0, 1], [M-1, 0]] = h+ h-^{M-1} h+`.
pub fn h_t(modulus: u64) -> Result<SympMat> {
    check_modulus(modulus)?;
    Ok(SympMat::raw([0, 1, modulus - 1, 0], modulus))
}

pub fn multiply(lhs: &SympMat, rhs: &SympMat) -> Result<SympMat> {
    lhs.multiply(rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenPower {
    pub gen: Gen,
    pub exp: u64,
}

/// A product `h_{s1}^{e1} h_{s2}^{e2} ...`, read left to right.
///
/// Exponents live in `1..M`; adjacent powers of the same generator are merged
/// on insertion and zero powers are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenWord {
    modulus: u64,
    factors: Vec<GenPower>,
}

impl GenWord {
    pub fn new(modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self { modulus, factors: Vec::new() })
    }

    pub fn from_factors(modulus: u64, factors: impl IntoIterator<Item = (Gen, i64)>) -> Result<Self> {
        let mut word = Self::new(modulus)?;
        for (gen, exp) in factors {
            word.push(gen, exp);
        }
        Ok(word)
    }

    /// The word `h+ h-^{-1} h+` for `h_t`.
    pub fn swap_word(modulus: u64) -> Result<Self> {
        Self::from_factors(modulus, [(Gen::Plus, 1), (Gen::Minus, -1), (Gen::Plus, 1)])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factors(&self) -> &[GenPower] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, gen: Gen, exp: i64) {
        let e = reduce(exp as i128, self.modulus);
        if e == 0 {
            return;
        }
        match self.factors.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp = (last.exp + e) % self.modulus;
                if last.exp == 0 {
                    self.factors.pop();
                }
            }
            _ => self.factors.push(GenPower { gen, exp: e }),
        }
    }

    pub fn concat(&self, rhs: &GenWord) -> GenWord {
        let mut out = self.clone();
        for f in &rhs.factors {
            out.push(f.gen, f.exp as i64);
        }
        out
    }

    pub fn inverse(&self) -> GenWord {
        let mut out = GenWord { modulus: self.modulus, factors: Vec::with_capacity(self.len()) };
        for f in self.factors.iter().rev() {
            out.push(f.gen, -(f.exp as i64));
        }
        out
    }

    pub fn evaluate(&self) -> SympMat {
        self.factors
            .iter()
            .fold(SympMat::raw([1, 0, 0, 1], self.modulus), |acc, f| {
                acc.mul_unchecked(&gen_power(f.gen, f.exp, self.modulus))
            })
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "I");
        }
        for (i, p) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "h{}^{}", p.gen.symbol(), p.exp)?;
        }
        Ok(())
    }
}

/// Which route produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Euclid,
    Bfs,
}

/// Factors `s` into generator powers. The returned word evaluates to `s`
/// exactly.
pub fn decompose(s: &SympMat) -> Result<GenWord> {
    decompose_traced(s).map(|(w, _)| w)
}

/// Like [`decompose`], also reporting whether the Euclidean path succeeded
/// or the search fallback was needed.
pub fn decompose_traced(s: &SympMat) -> Result<(GenWord, Method)> {
    match euclid_word(s) {
        Ok(w) => Ok((w, Method::Euclid)),
        Err(Error::DecompositionFailed(_)) => {
            bfs_word(s, FALLBACK_DEPTH).map(|w| (w, Method::Bfs)).map_err(|e| {
                Error::DecompositionFailed(format!("euclidean path stalled and search failed: {e}"))
            })
        }
        Err(e) => Err(e),
    }
}

pub fn decompose_with(s: &SympMat, method: Method) -> Result<GenWord> {
    match method {
        Method::Euclid => euclid_word(s),
        Method::Bfs => bfs_word(s, FALLBACK_DEPTH),
    }
}

/// Euclidean factorisation.
///
/// Left multiplication by `h+^{-k}` (resp. `h-^{-k}`) subtracts `k` times
/// the bottom (top) row from the top (bottom) row, so running the quotient
/// chain of `(b, d)` alternately on the two rows drives one of `b`, `d` to
/// zero. A zero left in `d` is moved up with `h_t^{-1}`, which leaves
/// `H S = [[alpha, 0], [gamma, beta]]` with `alpha beta = 1`, and
///
/// ```text
/// [[alpha, 0], [gamma, beta]] = h-^{beta + beta gamma} h_t h-^{alpha} h+^{-beta}
/// ```
///
/// closes the word (`h-^{gamma}` directly when `alpha = 1`).
pub fn euclid_word(s: &SympMat) -> Result<GenWord> {
    let m = s.modulus;
    let stalled = |why: &str| Err(Error::DecompositionFailed(format!("{why} at {s}")));

    // h is kept equal to H with cur = H s.
    let mut h = GenWord::new(m)?;
    let mut cur = *s;
    let apply_left = |h: &mut GenWord, cur: &mut SympMat, f: GenWord| {
        *cur = f.evaluate().mul_unchecked(cur);
        *h = f.concat(h);
    };

    let [_, b, _, d] = s.entries;
    if b != 0 && d != 0 {
        let trace = euclid_trace(b, d)?;
        let mut on_top = b >= d;
        for (i, &k) in trace.quotients.iter().enumerate() {
            let gen = if on_top { Gen::Plus } else { Gen::Minus };
            apply_left(&mut h, &mut cur, GenWord::from_factors(m, [(gen, -(k as i64))])?);
            let reduced = if on_top { cur.entries[1] } else { cur.entries[3] };
            if reduced != trace.remainders[i + 2] {
                return stalled("remainder chain left the canonical range");
            }
            on_top = !on_top;
        }
    }
    if cur.entries[1] != 0 && cur.entries[3] == 0 {
        apply_left(&mut h, &mut cur, GenWord::swap_word(m)?.inverse());
    }
    let [alpha, b, gamma, beta] = cur.entries;
    if b != 0 {
        return stalled("no triangular form reached");
    }
    if mul_mod(alpha, beta, m) != 1 % m {
        return stalled("diagonal of the triangular form is not a unit pair");
    }

    let (alpha, beta, gamma) = (alpha as i64, beta as i64, gamma as i64);
    let closing = if alpha == 1 {
        GenWord::from_factors(m, [(Gen::Minus, gamma)])?
    } else {
        GenWord::from_factors(m, [(Gen::Minus, beta + (beta * gamma) % m as i64)])?
            .concat(&GenWord::swap_word(m)?)
            .concat(&GenWord::from_factors(m, [(Gen::Minus, alpha), (Gen::Plus, -beta)])?)
    };
    let word = h.inverse().concat(&closing);
    if word.evaluate() != *s {
        return stalled("assembled word does not evaluate to the input");
    }
    Ok(word)
}

/// Shortest word (counting aggregated powers) reaching `s`, by breadth-first
/// search from the identity.
pub fn bfs_word(s: &SympMat, max_depth: usize) -> Result<GenWord> {
    let m = s.modulus;
    if s.is_identity() {
        return GenWord::new(m);
    }
    let start = SympMat::raw([1, 0, 0, 1], m);
    let mut parent: HashMap<SympMat, (SympMat, GenPower)> = HashMap::new();
    let mut frontier = VecDeque::from([(start, None::<Gen>, 0usize)]);
    let mut seen = std::collections::HashSet::from([start]);

    while let Some((cur, last, depth)) = frontier.pop_front() {
        if depth >= max_depth {
            continue;
        }
        for gen in [Gen::Plus, Gen::Minus] {
            if last == Some(gen) {
                continue;
            }
            for exp in 1..m {
                let next = cur.mul_unchecked(&gen_power(gen, exp, m));
                if !seen.insert(next) {
                    continue;
                }
                parent.insert(next, (cur, GenPower { gen, exp }));
                if next == *s {
                    return Ok(unwind(&parent, next, m));
                }
                frontier.push_back((next, Some(gen), depth + 1));
            }
        }
    }
    Err(Error::DepthExceeded(max_depth))
}

fn unwind(parent: &HashMap<SympMat, (SympMat, GenPower)>, mut at: SympMat, m: u64) -> GenWord {
    let mut rev = Vec::new();
    while let Some(&(prev, f)) = parent.get(&at) {
        rev.push(f);
        at = prev;
    }
    GenWord { modulus: m, factors: rev.into_iter().rev().collect() }
}

/// `|Sp_M| = M^3 prod_{p | M} (1 - p^{-2})`.
pub fn group_order(modulus: u64) -> u64 {
    let mut order = modulus.pow(3);
    let mut rest = modulus;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            order = order / (p * p) * (p * p - 1);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        order = order / (rest * rest) * (rest * rest - 1);
    }
    order
}

/// All of `Sp_M` in lexicographic order of `(a, b, c, d)`.
pub fn enumerate_group(modulus: u64) -> Result<Vec<SympMat>> {
    enumerate_group_bounded(modulus, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_group_bounded(modulus: u64, bound: u64) -> Result<Vec<SympMat>> {
    check_modulus(modulus)?;
    if modulus > bound {
        return Err(Error::BoundExceeded { modulus, bound });
    }
    let m = modulus;
    let mut out = Vec::with_capacity(group_order(m) as usize);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if let Ok(s) = SympMat::from_canonical([a, b, c, d], m) {
                        out.push(s);
                    }
                }
            }
        }
    }
    Ok(out)
}
