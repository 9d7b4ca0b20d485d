//! Integer utilities: gcd conventions, trial-division factorization,
//! multiplicative order, integer CRT and base-q digit codecs.

use crate::error::{Error, Result};

/// Prime factorization `n = p1^a1 * ... * pk^ak`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerFactorization {
    factors: Vec<(u64, u32)>,
    value: u64,
}

impl PrimePowerFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Distinct prime divisors.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The prime-power moduli `p^a`, in the same order as `factors`.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, a)| p.pow(a)).collect()
    }
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
/// `gcd(0, 0) = 0`.
pub fn egcd(a: u64, b: u64) -> (u64, i128, i128) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
        (old_t, t) = (t, old_t - quot * t);
    }
    (old_r as u64, old_s, old_t)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(n, gcd(values))` where the gcd of an empty list is 0, so an empty
/// list yields `n`.
pub fn gcd_indexed(n: u64, values: &[u64]) -> u64 {
    values.iter().fold(n, |acc, &v| gcd(acc, v))
}

/// Inverse of `a` modulo `m`, if it exists. Modulo 1 every value inverts to 0.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = egcd(a % m, m);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// `base^exp` with overflow reported as an error.
pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::Overflow(format!("{base}^{exp} exceeds 64 bits")))
}

/// Deterministic trial division. `factorize(1)` is the empty factorization.
pub fn factorize(n: u64) -> PrimePowerFactorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            let mut a = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                a += 1;
            }
            factors.push((d, a));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    PrimePowerFactorization { factors, value: n }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).factors == [(n, 1)]
}

/// Smallest `L >= 1` with `q^L = 1 (mod n)`.
pub fn mult_order(q: u64, n: u64) -> Result<u64> {
    if n == 0 || q == 0 || gcd(q, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    if n == 1 {
        return Ok(1);
    }
    let step = q % n;
    let mut x = step;
    let mut order = 1;
    while x != 1 {
        x = mul_mod(x, step, n);
        order += 1;
    }
    Ok(order)
}

/// `x mod p^a` for every prime power of the factorization.
pub fn crt_split(x: u64, factorization: &PrimePowerFactorization) -> Vec<u64> {
    factorization.prime_powers().into_iter().map(|m| x % m).collect()
}

/// Inverse of [`crt_split`]: the unique residue mod `n` with the given
/// prime-power residues.
pub fn crt_combine(residues: &[u64], factorization: &PrimePowerFactorization) -> u64 {
    let n = factorization.value;
    let moduli = factorization.prime_powers();
    assert_eq!(residues.len(), moduli.len(), "one residue per prime power");
    let mut acc = 0u64;
    for (&r, &m) in residues.iter().zip(&moduli) {
        let cofactor = n / m;
        let inv = mod_inverse(cofactor % m, m).expect("prime-power cofactors are coprime");
        let term = mul_mod(mul_mod(r % m, inv, m), cofactor, n);
        acc = (acc + term) % n;
    }
    acc % n.max(1)
}

/// Little-endian base-`q` digits of `value`, exactly `width` of them.
pub fn base_digits(value: u64, q: u64, width: usize) -> Result<Vec<u64>> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("digit base must be >= 2, got {q}")));
    }
    let bound = (q as u128).checked_pow(width as u32).unwrap_or(u128::MAX);
    if value as u128 >= bound {
        return Err(Error::OutOfRange {
            value: value as u128,
            bound,
        });
    }
    let mut rest = value;
    let digits = (0..width)
        .map(|_| {
            let d = rest % q;
            rest /= q;
            d
        })
        .collect();
    Ok(digits)
}

/// `sum_j digits[j] * q^j`.
pub fn digit_value(digits: &[u64], q: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * q + d)
}

/// Euler's totient via the factorization.
pub fn totient(n: u64) -> u64 {
    factorize(n).factors.iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// p-adic valuation; `v_p(0)` is reported as `u32::MAX`.
pub fn valuation(mut x: u64, p: u64) -> u32 {
    if x == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}
