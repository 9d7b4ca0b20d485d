//! Property suites and instance lists shared by the `properties` and
//! `acceptance` test targets. Each suite returns a one-line summary on
//! success and a counterexample on failure.

#![allow(dead_code)]

use std::collections::HashSet;

use necklace_core::autgroup::MixedModulusAutomorphism;
use necklace_core::bijection::BijectionContext;
use necklace_core::cyclic::{factor_unity, RingElement};
use necklace_core::gf::{self, is_prime_power, poly};
use necklace_core::numtheory::{gcd, mult_order};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type SuiteResult = Result<String, String>;

/// Prime powers `q <= 16` and `n <= 30` with `gcd(q, n) = 1` whose
/// splitting field `F_(q^L)` has at most `2^20` elements.
pub fn test_pairs() -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for q in (2..=16u64).filter(|&q| is_prime_power(q).is_some()) {
        for n in (1..=30u64).filter(|&n| gcd(q, n) == 1) {
            let l = mult_order(q, n).unwrap() as u32;
            if (q as u128).pow(l) <= 1 << 20 {
                pairs.push((q, n));
            }
        }
    }
    pairs
}

/// Every coprime pair with `q` a prime power, `n >= 2`, `q^n <= limit`.
pub fn enumerable_pairs(limit: u64) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for n in 2..=limit.ilog2() as u64 {
        for q in 2u64.. {
            if (q as u128).pow(n as u32) > limit as u128 {
                break;
            }
            if is_prime_power(q).is_some() && gcd(q, n) == 1 {
                pairs.push((q, n));
            }
        }
    }
    pairs
}

fn contexts() -> Vec<BijectionContext> {
    test_pairs()
        .into_iter()
        .map(|(q, n)| BijectionContext::new(q, n).unwrap())
        .collect()
}

fn random_element(ctx: &BijectionContext, rng: &mut StdRng) -> RingElement {
    let codes: Vec<u64> = (0..ctx.n()).map(|_| rng.gen_range(0..ctx.q())).collect();
    RingElement::from_codes(ctx.unity().base(), &codes).unwrap()
}

/// Automorphism of `prod Z_(mu_i)` normalizing the weighted sum: the
/// congruence for `h = phi(1,...,1)` and bijectivity by full enumeration.
pub fn automorphism_suite(instances: usize) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(28);
    for _ in 0..instances {
        let n = rng.gen_range(2..=60u64);
        let k = rng.gen_range(1..=3usize);
        let weights: Vec<u64> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        let aut = MixedModulusAutomorphism::build(n, &weights).map_err(|e| format!("n={n} d={weights:?}: {e}"))?;
        let moduli: Vec<u64> = weights.iter().map(|&d| n / gcd(n, d)).collect();
        assert_eq!(aut.moduli(), &moduli[..]);

        let h = aut.apply(&vec![1; k]).unwrap();
        let target = weights.iter().fold(n, |g, &d| gcd(g, d)) % n;
        let sum = weights.iter().zip(&h).map(|(&d, &x)| d * x).sum::<u64>() % n;
        if sum != target {
            return Err(format!("n={n} d={weights:?}: sum d_i h_i = {sum}, expected {target}"));
        }

        let total: u64 = moduli.iter().product();
        let mut seen = HashSet::with_capacity(total as usize);
        for index in 0..total {
            let mut rest = index;
            let x: Vec<u64> = moduli
                .iter()
                .map(|&m| {
                    let c = rest % m;
                    rest /= m;
                    c
                })
                .collect();
            let y = aut.apply(&x).unwrap();
            if y.iter().zip(&moduli).any(|(&c, &m)| c >= m) || !seen.insert(y.clone()) {
                return Err(format!("n={n} d={weights:?}: not injective at {x:?}"));
            }
            if aut.apply_inverse(&y).unwrap() != x {
                return Err(format!("n={n} d={weights:?}: inverse fails at {x:?}"));
            }
        }
    }
    Ok(format!("{instances} random instances"))
}

/// `log X^k alpha`: quotient shifts by `k` mod `n/gcd(n,s_i)`, remainder fixed.
pub fn shift_law_suite(samples: usize) -> SuiteResult {
    let ctxs = contexts();
    let mut rng = StdRng::seed_from_u64(46);
    let mut done = 0;
    while done < samples {
        let ctx = &ctxs[rng.gen_range(0..ctxs.len())];
        let alpha = random_element(ctx, &mut rng);
        let support = ctx.support_set(&alpha);
        if support.is_empty() {
            continue;
        }
        let i = support[rng.gen_range(0..support.len())];
        let k = rng.gen_range(0..3 * ctx.n() as usize);
        let (a, b) = ctx.split_log(i, &alpha).unwrap();
        let (a2, b2) = ctx.split_log(i, &alpha.rotate(k)).unwrap();
        let mu = ctx.cosets().orbit_modulus(i);
        if a2 % mu != (a + k as u64) % mu || b2 != b {
            return Err(format!(
                "q={} n={} i={i} k={k} alpha={}: ({a},{b}) -> ({a2},{b2})",
                ctx.q(),
                ctx.n(),
                ctx.element_string(&alpha)
            ));
        }
        done += 1;
    }
    Ok(format!("{samples} random (alpha, k, i)"))
}

/// The image of `X` in `Q/P_iQ` has order `n/gcd(n, s_i)`.
pub fn x_order_suite() -> SuiteResult {
    let mut checked = 0;
    for (q, n) in test_pairs() {
        let uf = factor_unity(n, q).unwrap();
        for i in 0..uf.cosets().len() {
            let x = uf.project(&uf.ring_x(), i);
            let order = uf.quotient(i).multiplicative_order(&x).unwrap();
            let expected = n / gcd(n, uf.cosets().representative(i));
            if order != expected {
                return Err(format!("q={q} n={n} i={i}: order {order}, expected {expected}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} cosets over {} pairs", test_pairs().len()))
}

/// `prod P_i = X^n - 1`, each `P_i` irreducible of degree `l_i`.
pub fn factorization_suite() -> SuiteResult {
    for (q, n) in test_pairs() {
        let uf = factor_unity(n, q).unwrap();
        let base = uf.base();
        let mut product = vec![base.one()];
        for (i, factor) in uf.factors().iter().enumerate() {
            let size = uf.cosets().coset(i).size();
            if poly::degree(factor) != Some(size) || !gf::is_irreducible(base, factor) {
                return Err(format!("q={q} n={n}: P_{i} is not irreducible of degree {size}"));
            }
            product = poly::mul(base, &product, factor);
        }
        if product != uf.unity_polynomial() {
            return Err(format!("q={q} n={n}: product of factors is not X^n - 1"));
        }
    }
    Ok(format!("{} pairs", test_pairs().len()))
}

/// Projection followed by CRT reconstruction is the identity on all of `Q`.
pub fn crt_suite(limit: u64) -> SuiteResult {
    let mut elements = 0u64;
    let mut pairs = enumerable_pairs(limit);
    pairs.extend((2..=limit).filter(|&q| is_prime_power(q).is_some()).map(|q| (q, 1)));
    for &(q, n) in &pairs {
        let uf = factor_unity(n, q).unwrap();
        let size = q.pow(n as u32);
        for index in 0..size {
            let mut rest = index;
            let codes: Vec<u64> = (0..n)
                .map(|_| {
                    let c = rest % q;
                    rest /= q;
                    c
                })
                .collect();
            let alpha = RingElement::from_codes(uf.base(), &codes).unwrap();
            let residues: Vec<_> = (0..uf.cosets().len()).map(|i| uf.project(&alpha, i)).collect();
            if uf.crt_reconstruct(&residues).unwrap() != alpha {
                return Err(format!("q={q} n={n}: CRT fails on {codes:?}"));
            }
        }
        elements += size;
    }
    Ok(format!("{elements} elements over {} pairs", pairs.len()))
}

/// `weighted_sum(block_map(alpha)) = sum_{i in I} s_i phi_{i,I}(alpha) (mod n)`.
pub fn function_sum_suite(samples: usize) -> SuiteResult {
    let ctxs = contexts();
    let mut rng = StdRng::seed_from_u64(49);
    for _ in 0..samples {
        let ctx = &ctxs[rng.gen_range(0..ctxs.len())];
        let alpha = random_element(ctx, &mut rng);
        let trace = ctx.block_map_traced(&alpha).unwrap();
        let direct = trace.image.weighted_sum();
        let twisted: u64 = trace
            .support
            .iter()
            .zip(&trace.twisted)
            .map(|(&i, &phi)| ctx.cosets().representative(i) * phi)
            .sum::<u64>()
            % ctx.n();
        if direct != twisted {
            return Err(format!(
                "q={} n={} alpha={}: weighted sum {direct}, twisted sum {twisted}",
                ctx.q(),
                ctx.n(),
                ctx.element_string(&alpha)
            ));
        }
    }
    Ok(format!("{samples} random alpha"))
}
