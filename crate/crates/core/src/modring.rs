//! Residue rings `Z_M` and the Euclidean remainder chain.

use std::fmt;

use crate::error::{Error, Result};

/// An element of `Z_M`, always held as its canonical representative in
/// `0..M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces an arbitrary signed integer into `Z_M`.
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self { value: reduce(value as i128, modulus), modulus })
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Result<Self> {
        Self::new(1, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Representative in the symmetric range `-(M-1)/2 ..= M/2`.
    ///
    /// For odd `M` this is the index set `{-(M-1)/2, ..., (M-1)/2}`.
    pub fn symmetric(self) -> i64 {
        to_symmetric(self.value, self.modulus)
    }

    pub fn add(self, rhs: Self) -> Result<Self> {
        let m = self.same_modulus(rhs)?;
        Ok(Self { value: (self.value + rhs.value) % m, modulus: m })
    }

    pub fn sub(self, rhs: Self) -> Result<Self> {
        let m = self.same_modulus(rhs)?;
        Ok(Self { value: (self.value + m - rhs.value) % m, modulus: m })
    }

    pub fn mul(self, rhs: Self) -> Result<Self> {
        let m = self.same_modulus(rhs)?;
        Ok(Self { value: mul_mod(self.value, rhs.value, m), modulus: m })
    }

    pub fn neg(self) -> Self {
        Self { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let m = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, m);
            }
            base = mul_mod(base, base, m);
            exp >>= 1;
        }
        Self { value: acc, modulus: m }
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    pub fn inverse(self) -> Result<Self> {
        mod_inverse(self)
    }

    fn same_modulus(self, rhs: Self) -> Result<u64> {
        if self.modulus == rhs.modulus {
            Ok(self.modulus)
        } else {
            Err(Error::ModulusMismatch(self.modulus, rhs.modulus))
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

pub(crate) fn check_modulus(modulus: u64) -> Result<()> {
    if modulus < 2 {
        Err(Error::InvalidModulus(modulus))
    } else {
        Ok(())
    }
}

/// Canonical representative of `value mod modulus`.
pub fn reduce(value: i128, modulus: u64) -> u64 {
    value.rem_euclid(modulus as i128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn to_symmetric(value: u64, modulus: u64) -> i64 {
    let v = (value % modulus) as i64;
    if v > (modulus as i64) / 2 {
        v - modulus as i64
    } else {
        v
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a x + b y = g = gcd(a, b)`.
pub fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Multiplicative inverse in `Z_M`.
pub fn mod_inverse(a: Residue) -> Result<Residue> {
    let (g, x, _) = extended_gcd(a.value as i128, a.modulus as i128);
    if g != 1 {
        return Err(Error::NonInvertible { value: a.value, modulus: a.modulus });
    }
    Ok(Residue { value: reduce(x, a.modulus), modulus: a.modulus })
}

/// Remainder chain of the Euclidean algorithm on two nonnegative
/// representatives.
///
/// `remainders[0] = max(b, d)`, `remainders[1] = min(b, d)`, and
/// `remainders[i] = quotients[i] * remainders[i + 1] + remainders[i + 2]`,
/// ending at a zero remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidTrace {
    pub remainders: Vec<u64>,
    pub quotients: Vec<u64>,
}

impl EuclidTrace {
    /// Index `l` of the terminating zero remainder.
    pub fn len(&self) -> usize {
        self.remainders.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn gcd(&self) -> u64 {
        self.remainders[self.remainders.len() - 2]
    }

    /// Rebuilds `(r0, r1)` from the last nonzero remainder and the
    /// quotients, running the chain backwards.
    pub fn reconstruct(&self) -> (u64, u64) {
        let l = self.len();
        let (mut hi, mut lo) = (self.remainders[l - 1], 0u64);
        for &k in self.quotients.iter().rev() {
            (hi, lo) = (k * hi + lo, hi);
        }
        (hi, lo)
    }
}

pub fn euclid_trace(b: u64, d: u64) -> Result<EuclidTrace> {
    if b == 0 && d == 0 {
        return Err(Error::BothZero);
    }
    let mut remainders = vec![b.max(d), b.min(d)];
    let mut quotients = Vec::new();
    while let [.., prev, last] = remainders[..] {
        if last == 0 {
            break;
        }
        quotients.push(prev / last);
        remainders.push(prev % last);
    }
    Ok(EuclidTrace { remainders, quotients })
}
