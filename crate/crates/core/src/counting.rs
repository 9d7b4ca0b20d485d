//! The closed-form count of necklaces (equivalently of multisets of `Z_n`
//! with `n`-divisible sum), its per-block terms, and independent oracles for
//! both sides.

use std::collections::BTreeMap;

use crate::cyclic::{cyclotomic_cosets, CosetSystem};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd, gcd_indexed, totient};

/// Per-subset terms are only listed when there are at most this many
/// cosets (`2^20` subsets).
pub const MAX_LISTED_COSETS: usize = 20;

/// One term of the sum: the block `I` and `gcd(n, gcd(s_i)) / n * prod (q^l_i - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTerm {
    /// 0-based coset indices.
    pub support: Vec<usize>,
    pub gcd: u64,
    pub count: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub q: u64,
    pub n: u64,
    pub cosets: CosetSystem,
    pub total: u128,
    /// `None` when there are more than [`MAX_LISTED_COSETS`] cosets.
    pub terms: Option<Vec<BlockTerm>>,
    pub oracle_necklaces: Option<u128>,
    pub oracle_multisets: Option<u128>,
}

impl CountReport {
    /// Fill in both oracle counts.
    pub fn with_oracles(mut self) -> Result<Self> {
        self.oracle_necklaces = Some(oracle_necklace_count(self.q, self.n)?);
        self.oracle_multisets = Some(oracle_multiset_count(self.q, self.n)?);
        Ok(self)
    }

    /// Formula and both oracles agree (false if an oracle is missing).
    pub fn agrees(&self) -> bool {
        self.oracle_necklaces == Some(self.total) && self.oracle_multisets == Some(self.total)
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{what} exceeds 128 bits"))
}

fn pow_u128(q: u64, e: u64) -> Result<u128> {
    u32::try_from(e)
        .ok()
        .and_then(|e| (q as u128).checked_pow(e))
        .ok_or_else(|| overflow("q^l"))
}

fn group_orders(q: u64, cosets: &CosetSystem) -> Result<Vec<u128>> {
    cosets
        .cosets()
        .iter()
        .map(|c| Ok(pow_u128(q, c.size() as u64)? - 1))
        .collect()
}

fn block_term(n: u64, cosets: &CosetSystem, orders: &[u128], support: &[usize]) -> Result<BlockTerm> {
    let g = gcd_indexed(n, &cosets.representatives_of(support));
    let product = support
        .iter()
        .try_fold(g as u128, |acc, &i| acc.checked_mul(orders[i]))
        .ok_or_else(|| overflow("block term"))?;
    if product % n as u128 != 0 {
        return Err(Error::Internal(format!("block term for {support:?} is not an integer")));
    }
    Ok(BlockTerm {
        support: support.to_vec(),
        gcd: g,
        count: product / n as u128,
    })
}

/// `sum_I gcd(n, gcd(s_i : i in I)) / n * prod_{i in I} (q^l_i - 1)`.
///
/// `q` need not be a prime power. The total is accumulated by grouping
/// subsets on their gcd; the individual terms are listed as well when
/// there are few enough cosets, and must add up to the same total.
pub fn count_formula(q: u64, n: u64) -> Result<CountReport> {
    let cosets = cyclotomic_cosets(n, q)?;
    let orders = group_orders(q, &cosets)?;

    // gcd(n, gcd(s_I)) -> sum over those I of prod (q^l_i - 1)
    let mut by_gcd: BTreeMap<u64, u128> = BTreeMap::from([(n, 1)]);
    for (coset, &order) in cosets.cosets().iter().zip(&orders) {
        let mut next = by_gcd.clone();
        for (&g, &weight) in &by_gcd {
            let added = weight.checked_mul(order).ok_or_else(|| overflow("formula"))?;
            let slot = next.entry(gcd(g, coset.representative)).or_insert(0);
            *slot = slot.checked_add(added).ok_or_else(|| overflow("formula"))?;
        }
        by_gcd = next;
    }
    let mut total = 0u128;
    for (&g, &weight) in &by_gcd {
        let scaled = weight.checked_mul(g as u128).ok_or_else(|| overflow("formula"))?;
        if scaled % n as u128 != 0 {
            return Err(Error::Internal(format!("terms with gcd {g} do not sum to an integer")));
        }
        total = total
            .checked_add(scaled / n as u128)
            .ok_or_else(|| overflow("formula"))?;
    }

    let terms = if cosets.len() <= MAX_LISTED_COSETS {
        let m = cosets.len();
        let terms = (0u64..1 << m)
            .map(|mask| {
                let support: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                block_term(n, &cosets, &orders, &support)
            })
            .collect::<Result<Vec<_>>>()?;
        let listed: u128 = terms.iter().map(|t| t.count).sum();
        if listed != total {
            return Err(Error::Internal(format!(
                "listed terms sum to {listed}, grouped sum is {total}"
            )));
        }
        Some(terms)
    } else {
        None
    };

    Ok(CountReport {
        q,
        n,
        cosets,
        total,
        terms,
        oracle_necklaces: None,
        oracle_multisets: None,
    })
}

/// The single term of the formula for block `I` (0-based, ascending).
pub fn count_block_formula(q: u64, n: u64, support: &[usize]) -> Result<u128> {
    let cosets = cyclotomic_cosets(n, q)?;
    cosets.check_subset(support)?;
    let orders = group_orders(q, &cosets)?;
    Ok(block_term(n, &cosets, &orders, support)?.count)
}

/// Number of length-`n` necklaces over `q` colours, by the orbit count
/// `(1/n) sum_{d | n} phi(d) q^(n/d)`. No coprimality requirement.
pub fn oracle_necklace_count(q: u64, n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let mut sum = 0u128;
    for d in divisors(n) {
        let term = pow_u128(q, n / d)?
            .checked_mul(totient(d) as u128)
            .ok_or_else(|| overflow("orbit count"))?;
        sum = sum.checked_add(term).ok_or_else(|| overflow("orbit count"))?;
    }
    Ok(sum / n as u128)
}

/// Number of `f : Z_n -> {0..q-1}` with `sum z f(z) = 0 (mod n)`, by a
/// dynamic program over positions with the partial weighted sum as state.
pub fn oracle_multiset_count(q: u64, n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let n_us = n as usize;
    let mut ways = vec![0u128; n_us];
    ways[0] = 1;
    for z in 0..n {
        let mut next = vec![0u128; n_us];
        for (residue, &count) in ways.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let mut target = residue as u64;
            for _ in 0..q {
                let slot = &mut next[target as usize];
                *slot = slot.checked_add(count).ok_or_else(|| overflow("multiset count"))?;
                target = (target + z) % n;
            }
        }
        ways = next;
    }
    Ok(ways[0])
}

/// Necklace count by listing every string and keeping those that are the
/// least of their rotations. Exponential; small `q^n` only.
pub fn brute_force_necklace_count(q: u64, n: u64) -> u128 {
    let total = q.pow(n as u32);
    let shift = q.pow(n as u32 - 1);
    (0..total)
        .filter(|&v| {
            // rotate by moving the lowest digit to the top
            let mut r = v;
            (1..n).all(|_| {
                r = r / q + (r % q) * shift;
                r >= v
            })
        })
        .count() as u128
}

/// Multiset count by listing every function. Exponential; small `q^n` only.
pub fn brute_force_multiset_count(q: u64, n: u64) -> u128 {
    (0..q.pow(n as u32))
        .filter(|&code| {
            let mut rest = code;
            let mut sum = 0;
            for z in 0..n {
                sum += z * (rest % q);
                rest /= q;
            }
            sum % n == 0
        })
        .count() as u128
}
