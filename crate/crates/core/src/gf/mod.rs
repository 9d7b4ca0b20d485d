//! Exact arithmetic in finite fields built as towers
//! `F_p -> F_q = F_p[Y]/(h) -> F_q[Z]/(M)`.
//!
//! A [`FieldElement`] is a plain value: its coefficients over `F_p`,
//! flattened through the tower with the constant coefficient first. All
//! arithmetic goes through the owning [`FieldContext`], which is immutable
//! and shared behind an `Arc`.

pub mod poly;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numtheory::{self, factorize, mul_mod};

/// Largest field order any context may have. Generator search, discrete logs
/// and element codes all assume this bound.
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

/// A field element, stored as its `F_p` coefficient vector through the tower
/// (fixed width, constant coefficient first).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(Vec<u64>);

impl FieldElement {
    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement{:?}", self.0)
    }
}

pub struct FieldContext {
    characteristic: u64,
    base: Option<Arc<FieldContext>>,
    /// Monic modulus over `base`, constant term first; empty for a prime field.
    modulus: Vec<FieldElement>,
    /// `modulus` flattened when `base` is a prime field (fast path).
    modulus_flat: Vec<u64>,
    /// Lookup tables for a small non-prime base (fast path).
    tables: Option<BaseTables>,
    degree: usize,
    width: usize,
    order: u64,
}

/// Addition, negation and multiplication of a small base field on element
/// codes, plus the codes of the modulus coefficients.
struct BaseTables {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    modulus: Vec<u16>,
}

/// Largest non-prime base field that gets [`BaseTables`].
const TABLE_BASE_LIMIT: u64 = 256;

impl BaseTables {
    fn new(base: &FieldContext, modulus: &[FieldElement]) -> Self {
        let q = base.order as usize;
        let elements: Vec<FieldElement> = base.elements().collect();
        let code = |x: &FieldElement| base.element_code(x) as u16;
        let mut add = Vec::with_capacity(q * q);
        let mut mul = Vec::with_capacity(q * q);
        for x in &elements {
            for y in &elements {
                add.push(code(&base.add(x, y)));
                mul.push(code(&base.mul(x, y)));
            }
        }
        let neg = elements.iter().map(|x| code(&base.neg(x))).collect();
        Self {
            q,
            add,
            mul,
            neg,
            modulus: modulus.iter().map(code).collect(),
        }
    }
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("characteristic", &self.characteristic)
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// `Some((p, e))` when `q = p^e` with `p` prime.
pub fn is_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    match factorize(q).factors() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

impl FieldContext {
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        if !numtheory::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::TooLarge(format!("prime {p} exceeds field order bound")));
        }
        Ok(Arc::new(Self {
            characteristic: p,
            base: None,
            modulus: Vec::new(),
            modulus_flat: Vec::new(),
            tables: None,
            degree: 1,
            width: 1,
            order: p,
        }))
    }

    /// `base[Z]/(modulus)`. The modulus must be monic, of degree at least 1
    /// and irreducible over `base`.
    pub fn extension(base: &Arc<Self>, modulus: Vec<FieldElement>) -> Result<Arc<Self>> {
        let modulus = poly::trimmed(modulus);
        if modulus.len() < 2 {
            return Err(Error::InvalidInput("extension modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|c| c.0.len() != base.width) {
            return Err(Error::InvalidInput(
                "modulus coefficients do not belong to the base field".into(),
            ));
        }
        if modulus.last() != Some(&base.one()) {
            return Err(Error::InvalidInput("extension modulus must be monic".into()));
        }
        if !is_irreducible(base, &modulus) {
            return Err(Error::InvalidInput("extension modulus is reducible".into()));
        }
        Self::extension_unchecked(base, modulus)
    }

    fn extension_unchecked(base: &Arc<Self>, modulus: Vec<FieldElement>) -> Result<Arc<Self>> {
        let degree = modulus.len() - 1;
        let order = u32::try_from(degree)
            .ok()
            .and_then(|d| base.order.checked_pow(d))
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "field of order {}^{degree} exceeds the supported bound 2^40",
                    base.order
                ))
            })?;
        let modulus_flat = if base.is_prime_field() {
            modulus.iter().map(|c| c.0[0]).collect()
        } else {
            Vec::new()
        };
        let tables =
            (!base.is_prime_field() && base.order <= TABLE_BASE_LIMIT).then(|| BaseTables::new(base, &modulus));
        Ok(Arc::new(Self {
            characteristic: base.characteristic,
            base: Some(Arc::clone(base)),
            modulus,
            modulus_flat,
            tables,
            degree,
            width: degree * base.width,
            order,
        }))
    }

    /// The canonical model of `F_q`: the prime field, or `F_p[Y]/(h)` with
    /// `h` the first monic irreducible of degree `e` in canonical order.
    pub fn galois(q: u64) -> Result<Arc<Self>> {
        let (p, e) = is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let prime = Self::prime(p)?;
        if e == 1 {
            return Ok(prime);
        }
        let h = canonical_irreducible(&prime, e as usize);
        Self::extension_unchecked(&prime, h)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree over the immediate base (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension over the prime field.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn base(&self) -> Option<&Arc<FieldContext>> {
        self.base.as_ref()
    }

    pub fn modulus(&self) -> &[FieldElement] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.base.is_none()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.width])
    }

    pub fn one(&self) -> FieldElement {
        let mut c = vec![0; self.width];
        c[0] = 1;
        FieldElement(c)
    }

    /// The integer `k` as a field element (its image under `Z -> F_p -> F`).
    pub fn from_int(&self, k: u64) -> FieldElement {
        let mut c = vec![0; self.width];
        c[0] = k % self.characteristic;
        FieldElement(c)
    }

    /// Does `x` have the right shape and reduced coefficients for this field?
    pub fn contains(&self, x: &FieldElement) -> bool {
        x.0.len() == self.width && x.0.iter().all(|&c| c < self.characteristic)
    }

    /// Embed an element of the immediate base field as a constant.
    pub fn embed(&self, c: &FieldElement) -> FieldElement {
        let mut out = c.0.clone();
        out.resize(self.width, 0);
        FieldElement(out)
    }

    /// Coefficients of `x` over the immediate base, constant first.
    pub fn base_coefficients(&self, x: &FieldElement) -> Vec<FieldElement> {
        let w = self.base.as_ref().map_or(1, |b| b.width);
        x.0.chunks(w).map(|c| FieldElement(c.to_vec())).collect()
    }

    /// Assemble an element from base coefficients (at most `degree` of them).
    pub fn from_base_coefficients(&self, coeffs: &[FieldElement]) -> FieldElement {
        debug_assert!(coeffs.len() <= self.degree);
        let mut out: Vec<u64> = coeffs.iter().flat_map(|c| c.0.iter().copied()).collect();
        out.resize(self.width, 0);
        FieldElement(out)
    }

    /// The element back in the base field, if `x` is a constant of the tower.
    pub fn descend(&self, x: &FieldElement) -> Option<FieldElement> {
        let w = self.base.as_ref()?.width;
        if x.0[w..].iter().any(|&c| c != 0) {
            return None;
        }
        Some(FieldElement(x.0[..w].to_vec()))
    }

    /// The class of the adjoined variable, `Z mod M`.
    pub fn adjoined_root(&self) -> FieldElement {
        let base = self.base.as_ref().expect("prime fields have no adjoined root");
        if self.degree == 1 {
            base.neg(&self.modulus[0])
        } else {
            let mut c = vec![0; self.width];
            c[base.width] = 1;
            FieldElement(c)
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.characteristic;
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| {
                    let s = x + y;
                    if s >= p {
                        s - p
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.characteristic;
        FieldElement(a.0.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.characteristic;
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
                .collect(),
        )
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, a: &FieldElement, k: u64) -> FieldElement {
        let p = self.characteristic;
        let k = k % p;
        FieldElement(a.0.iter().map(|&x| mul_mod(x, k, p)).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match &self.base {
            None => FieldElement(vec![mul_mod(a.0[0], b.0[0], self.characteristic)]),
            Some(base) if base.is_prime_field() && self.characteristic < 1 << 31 => self.mul_over_small_prime(a, b),
            Some(base) if base.is_prime_field() => self.mul_over_prime(a, b),
            Some(base) => match &self.tables {
                Some(tables) => self.mul_with_tables(base, tables, a, b),
                None => self.mul_over_extension(base, a, b),
            },
        }
    }

    /// As [`mul_over_prime`](Self::mul_over_prime) with products fitting in 64 bits.
    fn mul_over_small_prime(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.characteristic;
        let d = self.degree;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus_flat[..d].iter().enumerate() {
                prod[k - d + j] = (prod[k - d + j] + p - c * m % p) % p;
            }
        }
        prod.truncate(d);
        FieldElement(prod)
    }

    fn mul_with_tables(&self, base: &FieldContext, t: &BaseTables, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree;
        let w = base.width;
        let p = self.characteristic;
        let codes = |x: &FieldElement| -> Vec<usize> {
            x.0.chunks(w)
                .map(|c| c.iter().rev().fold(0u64, |acc, &v| acc * p + v) as usize)
                .collect()
        };
        let (ac, bc) = (codes(a), codes(b));
        let q = t.q;
        let mut prod = vec![0usize; 2 * d - 1];
        for (i, &x) in ac.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in bc.iter().enumerate() {
                prod[i + j] = t.add[prod[i + j] * q + t.mul[x * q + y] as usize] as usize;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let term = t.neg[t.mul[c * q + t.modulus[j] as usize] as usize] as usize;
                prod[k - d + j] = t.add[prod[k - d + j] * q + term] as usize;
            }
        }
        let mut out = Vec::with_capacity(self.width);
        for &c in &prod[..d] {
            let mut rest = c as u64;
            for _ in 0..w {
                out.push(rest % p);
                rest /= p;
            }
        }
        FieldElement(out)
    }

    fn mul_over_prime(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.characteristic as u128;
        let d = self.degree;
        let mut prod = vec![0u128; 2 * d - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus_flat[..d].iter().enumerate() {
                let t = c * m as u128 % p;
                prod[k - d + j] = (prod[k - d + j] + p - t) % p;
            }
        }
        FieldElement(prod[..d].iter().map(|&c| c as u64).collect())
    }

    fn mul_over_extension(&self, base: &FieldContext, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree;
        let ac = self.base_coefficients(a);
        let bc = self.base_coefficients(b);
        let mut prod = vec![base.zero(); 2 * d - 1];
        for (i, x) in ac.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bc.iter().enumerate() {
                prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                let t = base.mul(&c, &self.modulus[j]);
                prod[k - d + j] = base.sub(&prod[k - d + j], &t);
            }
        }
        self.from_base_coefficients(&prod[..d])
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut result = self.one();
        let mut b = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(&result, &b);
            }
            exp >>= 1;
            if exp > 0 {
                b = self.mul(&b, &b);
            }
        }
        result
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// Canonical code: the base-`p` value of the flattened coefficients,
    /// constant coefficient least significant.
    pub fn element_code(&self, x: &FieldElement) -> u64 {
        x.0.iter().rev().fold(0, |acc, &c| acc * self.characteristic + c)
    }

    pub fn element_decode(&self, code: u64) -> Result<FieldElement> {
        if code >= self.order {
            return Err(Error::OutOfRange {
                value: code as u128,
                bound: self.order as u128,
            });
        }
        let mut rest = code;
        let coeffs = (0..self.width)
            .map(|_| {
                let c = rest % self.characteristic;
                rest /= self.characteristic;
                c
            })
            .collect();
        Ok(FieldElement(coeffs))
    }

    /// All elements in code order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|c| self.element_decode(c).expect("code below order"))
    }

    /// Multiplicative order of a nonzero element, using the prime divisors
    /// of `|F| - 1`.
    pub fn multiplicative_order(&self, x: &FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut order = self.order - 1;
        for &(r, _) in factorize(order).factors() {
            while order.is_multiple_of(r) && self.pow(x, order / r) == self.one() {
                order /= r;
            }
        }
        Ok(order)
    }
}

/// The first monic irreducible polynomial of degree `d` over `base`, in
/// canonical order: the non-leading coefficients `(c_{d-1}, ..., c_0)` read
/// as a base-`|base|` number (via element codes) and scanned upward.
pub fn canonical_irreducible(base: &FieldContext, d: usize) -> Vec<FieldElement> {
    assert!(d >= 1, "degree must be positive");
    let size = base.order();
    let mut candidate: u128 = 0;
    loop {
        let mut rest = candidate;
        let mut f: Vec<FieldElement> = (0..d)
            .map(|_| {
                let c = (rest % size as u128) as u64;
                rest /= size as u128;
                base.element_decode(c).expect("digit below order")
            })
            .collect();
        assert!(rest == 0, "ran out of degree-{d} candidates; no irreducible found");
        f.push(base.one());
        if (d == 1 || !f[0].is_zero()) && is_irreducible(base, &f) {
            return f;
        }
        candidate += 1;
    }
}

/// Rabin's test for a monic `f` of degree `d >= 1` over a field of size `Q`:
/// `X^(Q^d) = X mod f` and `gcd(X^(Q^(d/r)) - X, f) = 1` for every prime `r | d`.
pub fn is_irreducible(base: &FieldContext, f: &[FieldElement]) -> bool {
    let f = poly::trimmed(f.to_vec());
    let d = match poly::degree(&f) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    let x = vec![base.zero(), base.one()];
    let x_mod_f = poly::rem(base, &x, &f);
    // frobenius[k] = X^(Q^k) mod f
    let mut frobenius = Vec::with_capacity(d + 1);
    frobenius.push(x_mod_f.clone());
    for k in 1..=d {
        let next = poly::pow_mod(base, &frobenius[k - 1], base.order(), &f);
        frobenius.push(next);
    }
    if frobenius[d] != x_mod_f {
        return false;
    }
    for r in factorize(d as u64).primes() {
        let diff = poly::sub(base, &frobenius[d / r as usize], &x);
        let g = poly::gcd(base, &diff, &f);
        if poly::degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The nonzero element of smallest code whose multiplicative order is
/// `|F| - 1`.
pub fn find_generator(ctx: &FieldContext) -> FieldElement {
    let group_order = ctx.order() - 1;
    let primes: Vec<u64> = factorize(group_order).primes().collect();
    let one = ctx.one();
    for code in 1..ctx.order() {
        let x = ctx.element_decode(code).expect("code below order");
        if primes.iter().all(|&r| ctx.pow(&x, group_order / r) != one) {
            return x;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Arc<FieldContext> {
        FieldContext::prime(p).unwrap()
    }

    fn poly_from_ints(ctx: &FieldContext, coeffs: &[u64]) -> Vec<FieldElement> {
        coeffs.iter().map(|&c| ctx.from_int(c)).collect()
    }

    #[test]
    fn fast_paths_match_generic_multiplication() {
        let mut seed = 7u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            seed >> 24
        };
        for (q, d) in [(4u64, 3usize), (16, 5), (9, 2), (8, 4), (25, 2), (2, 7), (7, 3)] {
            let base = FieldContext::galois(q).unwrap();
            let ext = FieldContext::extension(&base, canonical_irreducible(&base, d)).unwrap();
            for _ in 0..200 {
                let a = ext.element_decode(next() % ext.order()).unwrap();
                let b = ext.element_decode(next() % ext.order()).unwrap();
                let generic = if base.is_prime_field() {
                    ext.mul_over_prime(&a, &b)
                } else {
                    ext.mul_over_extension(&base, &a, &b)
                };
                assert_eq!(ext.mul(&a, &b), generic, "q={q} d={d}");
            }
        }
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(is_prime_power(2), Some((2, 1)));
        assert_eq!(is_prime_power(9), Some((3, 2)));
        assert_eq!(is_prime_power(6), None);
        assert_eq!(is_prime_power(1), None);
    }

    #[test]
    fn canonical_irreducible_examples() {
        let f2 = fp(2);
        assert_eq!(canonical_irreducible(&f2, 2), poly_from_ints(&f2, &[1, 1, 1]));
        assert_eq!(canonical_irreducible(&f2, 1), poly_from_ints(&f2, &[0, 1]));
        let f3 = fp(3);
        assert_eq!(canonical_irreducible(&f3, 2), poly_from_ints(&f3, &[1, 0, 1]));
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = fp(2);
        assert!(is_irreducible(&f2, &poly_from_ints(&f2, &[1, 1, 1])));
        assert!(!is_irreducible(&f2, &poly_from_ints(&f2, &[1, 0, 1])));
        assert!(is_irreducible(&f2, &poly_from_ints(&f2, &[1, 1, 0, 1])));
        // (X^2+X+1)^2 has no roots but is reducible
        assert!(!is_irreducible(&f2, &poly_from_ints(&f2, &[1, 0, 1, 0, 1])));
    }

    #[test]
    fn f4_multiplication() {
        let f4 = FieldContext::galois(4).unwrap();
        let y = f4.adjoined_root();
        assert_eq!(f4.element_code(&y), 2);
        assert_eq!(f4.mul(&y, &y), f4.element_decode(3).unwrap());
    }

    #[test]
    fn codes() {
        let f4 = FieldContext::galois(4).unwrap();
        assert_eq!(f4.element_code(&f4.zero()), 0);
        let f9 = FieldContext::galois(9).unwrap();
        assert_eq!(f9.modulus(), &poly_from_ints(&fp(3), &[1, 0, 1])[..]);
        let x = FieldElement(vec![1, 2]);
        assert_eq!(f9.element_code(&x), 7);
        assert_eq!(f9.element_decode(7).unwrap(), x);
        assert!(matches!(f9.element_decode(9), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn inverse_law_f9() {
        let f9 = FieldContext::galois(9).unwrap();
        for x in f9.elements().skip(1) {
            assert_eq!(f9.mul(&x, &f9.inv(&x).unwrap()), f9.one());
        }
        assert_eq!(f9.inv(&f9.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn generator_examples() {
        assert_eq!(find_generator(&fp(2)), fp(2).one());
        let f4 = FieldContext::galois(4).unwrap();
        assert_eq!(f4.element_code(&find_generator(&f4)), 2);
        let f5 = fp(5);
        assert_eq!(f5.element_code(&find_generator(&f5)), 2);
    }

    /// Every context of order <= 81 reachable as prime, F_q, or an
    /// extension of F_q.
    fn small_contexts() -> Vec<Arc<FieldContext>> {
        let mut out = Vec::new();
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 64, 81] {
            out.push(FieldContext::galois(q).unwrap());
        }
        for (q, d) in [(2u64, 2usize), (2, 3), (3, 2), (4, 2), (4, 3), (9, 2), (3, 4), (8, 2)] {
            let base = FieldContext::galois(q).unwrap();
            let m = canonical_irreducible(&base, d);
            out.push(FieldContext::extension(&base, m).unwrap());
        }
        out
    }

    #[test]
    fn field_axioms_exhaustive() {
        for ctx in small_contexts() {
            let elems: Vec<_> = ctx.elements().collect();
            let one = ctx.one();
            let zero = ctx.zero();
            for a in &elems {
                assert_eq!(ctx.add(a, &ctx.neg(a)), zero);
                if !a.is_zero() {
                    assert_eq!(ctx.mul(a, &ctx.inv(a).unwrap()), one);
                    assert_eq!(ctx.pow(a, ctx.order() - 1), one);
                }
                assert_eq!(ctx.mul(a, &one), *a);
            }
            // Associativity and distributivity over a strided sample of
            // triples keeps this under a second for |F| = 81.
            let step = (elems.len() / 9).max(1);
            for a in elems.iter().step_by(step) {
                for b in &elems {
                    assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                    for c in elems.iter().step_by(step) {
                        assert_eq!(ctx.mul(&ctx.mul(a, b), c), ctx.mul(a, &ctx.mul(b, c)));
                        assert_eq!(ctx.mul(a, &ctx.add(b, c)), ctx.add(&ctx.mul(a, b), &ctx.mul(a, c)));
                        assert_eq!(ctx.add(&ctx.add(a, b), c), ctx.add(a, &ctx.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_base_constants() {
        for (q, d) in [(2u64, 3usize), (3, 2), (4, 2), (4, 3), (9, 2)] {
            let base = FieldContext::galois(q).unwrap();
            let ext = FieldContext::extension(&base, canonical_irreducible(&base, d)).unwrap();
            let fixed: Vec<_> = ext.elements().filter(|x| ext.pow(x, q) == *x).collect();
            assert_eq!(fixed.len() as u64, q);
            assert!(fixed.iter().all(|x| ext.descend(x).is_some()));
        }
    }

    #[test]
    fn generator_has_full_order() {
        for ctx in small_contexts() {
            let g = find_generator(&ctx);
            let mut x = g.clone();
            let mut k = 1;
            while x != ctx.one() {
                x = ctx.mul(&x, &g);
                k += 1;
            }
            assert_eq!(k, ctx.order() - 1);
            assert_eq!(ctx.multiplicative_order(&g).unwrap(), ctx.order() - 1);
        }
    }

    #[test]
    fn canonical_irreducible_is_minimal() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let base = FieldContext::galois(q).unwrap();
            for d in 1..=4usize {
                if q.pow(d as u32) > 10_000 {
                    continue;
                }
                let found = canonical_irreducible(&base, d);
                assert!(is_irreducible(&base, &found));
                let rank = |f: &[FieldElement]| f[..d].iter().rev().fold(0u64, |acc, c| acc * q + base.element_code(c));
                let found_rank = rank(&found);
                // Brute force: a polynomial is reducible iff it has a monic
                // factor of degree <= d/2.
                for smaller in 0..found_rank {
                    let mut rest = smaller;
                    let mut f: Vec<FieldElement> = (0..d)
                        .map(|_| {
                            let c = base.element_decode(rest % q).unwrap();
                            rest /= q;
                            c
                        })
                        .collect();
                    f.push(base.one());
                    assert!(has_small_factor(&base, &f), "q={q} d={d} rank {smaller}");
                }
            }
        }
    }

    fn has_small_factor(base: &FieldContext, f: &[FieldElement]) -> bool {
        let d = f.len() - 1;
        let q = base.order();
        for k in 1..=d / 2 {
            for t in 0..q.pow(k as u32) {
                let mut rest = t;
                let mut g: Vec<FieldElement> = (0..k)
                    .map(|_| {
                        let c = base.element_decode(rest % q).unwrap();
                        rest /= q;
                        c
                    })
                    .collect();
                g.push(base.one());
                if poly::rem(base, f, &g).is_empty() {
                    return true;
                }
            }
        }
        false
    }
}
