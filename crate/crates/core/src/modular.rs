//! Integer and modular arithmetic primitives: factorization, totient,
//! p-adic valuation, inverses and CRT.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Largest modulus accepted by [`factorize`] unless a caller asks otherwise.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000_000;

/// A prime power `p^e` with `e >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(domain("prime-power exponent must be at least 1"));
        }
        p.checked_pow(e)
            .ok_or_else(|| domain(format!("{p}^{e} does not fit in 64 bits")))?;
        Ok(PrimePower { p, e })
    }

    pub fn value(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// `p^(e-1)`.
    pub fn lower(&self) -> u64 {
        self.p.pow(self.e - 1)
    }

    pub fn modulus(&self) -> Modulus {
        Modulus {
            value: self.value(),
            factors: vec![*self],
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

/// A modulus `m >= 2` together with its factorization into prime powers,
/// primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Modulus {
    value: u64,
    factors: Vec<PrimePower>,
}

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        factorize(m)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// The single prime-power factor, if `m` is a prime power.
    pub fn as_prime_power(&self) -> Option<PrimePower> {
        match self.factors.as_slice() {
            [pp] => Some(*pp),
            _ => None,
        }
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.as_prime_power(), Some(pp) if pp.e == 1)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= p / d {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Factorizes `m` by trial division, rejecting `m` above [`DEFAULT_FACTOR_BOUND`].
pub fn factorize(m: u64) -> Result<Modulus> {
    factorize_with_bound(m, DEFAULT_FACTOR_BOUND)
}

pub fn factorize_with_bound(m: u64, bound: u64) -> Result<Modulus> {
    if m < 2 {
        return Err(domain(format!("modulus must be at least 2, got {m}")));
    }
    if m > bound {
        return Err(Error::Size {
            what: "modulus",
            value: m.to_string(),
            limit: bound.to_string(),
        });
    }
    let mut factors = Vec::new();
    let mut rest = m;
    let mut d = 2u64;
    while d <= rest / d {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            factors.push(PrimePower { p: d, e });
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(PrimePower { p: rest, e: 1 });
    }
    Ok(Modulus { value: m, factors })
}

/// A p-adic valuation; `Infinite` is the valuation of zero and compares
/// greater than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }

    /// `min(self, cap)` as a plain integer.
    pub fn min_with(&self, cap: u32) -> u32 {
        match self {
            Valuation::Finite(v) => (*v).min(cap),
            Valuation::Infinite => cap,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// The exponent of the largest power of `p` dividing `t`.
pub fn nu_p(p: u64, t: i128) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    Ok(nu_p_unchecked(p, t))
}

pub(crate) fn nu_p_unchecked(p: u64, t: i128) -> Valuation {
    if t == 0 {
        return Valuation::Infinite;
    }
    let p = p as i128;
    let mut t = t;
    let mut e = 0;
    while t % p == 0 {
        t /= p;
        e += 1;
    }
    Valuation::Finite(e)
}

pub fn euler_phi(m: &Modulus) -> u64 {
    m.factors.iter().map(|pp| pp.value() - pp.lower()).product()
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(domain("modulus must be positive"));
    }
    if m == 1 {
        return Ok(0);
    }
    let mi = m as i128;
    let a_red = (a as i128).rem_euclid(mi);
    let ext = a_red.extended_gcd(&mi);
    if ext.gcd != 1 {
        return Err(Error::NotAUnit { a, m });
    }
    Ok(ext.x.rem_euclid(mi) as u64)
}

/// The unique `x` in `[0, prod)` with `x ≡ value_s (mod modulus_s)` for every
/// pair, where the moduli are pairwise coprime.
pub fn crt_combine(residues: &[(u64, u64)]) -> Result<u64> {
    let mut acc: u128 = 0;
    let mut acc_mod: u128 = 1;
    for &(value, modulus) in residues {
        if modulus == 0 {
            return Err(domain("CRT modulus must be positive"));
        }
        let g = (acc_mod as u64).gcd(&modulus);
        if acc_mod > u64::MAX as u128 || g != 1 {
            return Err(domain(format!(
                "CRT moduli are not pairwise coprime (or overflow): {residues:?}"
            )));
        }
        let m = modulus as u128;
        let v = (value as u128) % m;
        // acc + acc_mod * k ≡ v (mod m)
        let diff = (v + m - acc % m) % m;
        let inv = mod_inverse((acc_mod % m) as i64, modulus)? as u128;
        let k = diff * inv % m;
        acc += acc_mod * k;
        acc_mod *= m;
        if acc_mod > u64::MAX as u128 {
            return Err(Error::Size {
                what: "CRT modulus product",
                value: acc_mod.to_string(),
                limit: u64::MAX.to_string(),
            });
        }
    }
    Ok(acc as u64)
}

/// Units of `Z_m`, ascending.
pub fn units(m: u64) -> Vec<u64> {
    (1..m.max(1)).filter(|a| a.gcd(&m) == 1).collect()
}

pub(crate) fn gcd_all(values: impl IntoIterator<Item = u64>, m: u64) -> u64 {
    values.into_iter().fold(m, |g, v| g.gcd(&v))
}
