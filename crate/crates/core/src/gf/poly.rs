//! Dense univariate polynomials over a [`FieldContext`], stored as
//! coefficient vectors with the constant term first. The zero polynomial is
//! the empty vector; results are always trimmed.

use super::{FieldContext, FieldElement};

pub fn trimmed(mut p: Vec<FieldElement>) -> Vec<FieldElement> {
    while p.last().is_some_and(FieldElement::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[FieldElement]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(ctx: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let len = a.len().max(b.len());
    let zero = ctx.zero();
    let out = (0..len)
        .map(|i| ctx.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trimmed(out)
}

pub fn sub(ctx: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let len = a.len().max(b.len());
    let zero = ctx.zero();
    let out = (0..len)
        .map(|i| ctx.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trimmed(out)
}

pub fn mul(ctx: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    trimmed(out)
}

/// Quotient and remainder. Panics on a zero divisor.
pub fn div_rem(ctx: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = ctx.inv(&b[db]).expect("leading coefficient is nonzero");
    let mut rem = trimmed(a.to_vec());
    let Some(da) = degree(&rem) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![ctx.zero(); da - db + 1];
    for k in (db..=da).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = ctx.mul(&rem[k], &lead_inv);
        for j in 0..=db {
            let t = ctx.mul(&c, &b[j]);
            rem[k - db + j] = ctx.sub(&rem[k - db + j], &t);
        }
        quot[k - db] = c;
    }
    rem.truncate(db);
    (trimmed(quot), trimmed(rem))
}

pub fn rem(ctx: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    div_rem(ctx, a, b).1
}

/// Scale to leading coefficient one (zero stays zero).
pub fn monic(ctx: &FieldContext, a: &[FieldElement]) -> Vec<FieldElement> {
    let a = trimmed(a.to_vec());
    match a.last() {
        None => a,
        Some(lead) => {
            let inv = ctx.inv(lead).expect("nonzero leading coefficient");
            a.iter().map(|c| ctx.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd.
pub fn gcd(ctx: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let r = rem(ctx, &x, &y);
        x = y;
        y = r;
    }
    monic(ctx, &x)
}

pub fn pow_mod(ctx: &FieldContext, a: &[FieldElement], mut exp: u64, modulus: &[FieldElement]) -> Vec<FieldElement> {
    let mut result = rem(ctx, &[ctx.one()], modulus);
    let mut base = rem(ctx, a, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            result = rem(ctx, &mul(ctx, &result, &base), modulus);
        }
        exp >>= 1;
        if exp > 0 {
            base = rem(ctx, &mul(ctx, &base, &base), modulus);
        }
    }
    result
}

/// Horner evaluation at `x`.
pub fn eval(ctx: &FieldContext, p: &[FieldElement], x: &FieldElement) -> FieldElement {
    p.iter().rev().fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, x), c))
}
