//! The block maps `Q_I -> E_I`, their inverses, and the necklace bijection
//! `N -> F` obtained by picking, in each rotation class, the unique rotation
//! whose image has weighted sum `0 (mod n)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::autgroup::MixedModulusAutomorphism;
use crate::cyclic::{self, factor_unity, CosetSystem, Necklace, RingElement, UnityFactorization};
use crate::dlog::LogContext;
use crate::error::{Error, Result};
use crate::gf::is_prime_power;
use crate::numtheory::{base_digits, digit_value, gcd, gcd_indexed};

/// A function `f : Z_n -> {0, ..., q-1}`, i.e. a multiset of `Z_n` with
/// multiplicities below `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetFunction(Vec<u64>);

impl MultisetFunction {
    pub fn new(values: Vec<u64>, q: u64) -> Result<Self> {
        if let Some(&v) = values.iter().find(|&&v| v >= q) {
            return Err(Error::OutOfRange {
                value: v as u128,
                bound: q as u128,
            });
        }
        Ok(Self(values))
    }

    /// The constant function `q - 1`.
    pub fn full(n: usize, q: u64) -> Self {
        Self(vec![q - 1; n])
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum_z z*f(z) mod n`.
    pub fn weighted_sum(&self) -> u64 {
        let n = self.0.len() as u128;
        if n == 0 {
            return 0;
        }
        self.0
            .iter()
            .enumerate()
            .fold(0u128, |acc, (z, &v)| (acc + z as u128 * v as u128) % n) as u64
    }

    /// Indices of cosets not entirely contained in the level set `f = q-1`.
    pub fn level_support(&self, cosets: &CosetSystem) -> Vec<usize> {
        let top = cosets.q() - 1;
        (0..cosets.len())
            .filter(|&i| cosets.coset(i).elements.iter().any(|&z| self.0[z as usize] != top))
            .collect()
    }

    /// Parse `"v0,v1,...,v{n-1}"`.
    pub fn parse(text: &str, n: usize, q: u64) -> Result<Self> {
        let values = cyclic::parse_code_list(text)?;
        if values.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} comma-separated values, got {}",
                values.len()
            )));
        }
        Self::new(values, q)
    }

    /// Parse the subset notation `"{0,2}"` (or `"{}"`) for `q = 2`.
    pub fn parse_set(text: &str, n: usize) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::InvalidInput(format!("'{text}' is not of the form {{z1,z2,...}}")))?;
        let mut values = vec![0; n];
        if !inner.trim().is_empty() {
            for z in cyclic::parse_code_list(inner)? {
                if z >= n as u64 {
                    return Err(Error::OutOfRange {
                        value: z as u128,
                        bound: n as u128,
                    });
                }
                values[z as usize] = 1;
            }
        }
        Ok(Self(values))
    }

    /// `{z : f(z) = 1}` rendering; only meaningful for `q = 2`.
    pub fn to_set_string(&self) -> String {
        let members: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(z, _)| z.to_string())
            .collect();
        format!("{{{}}}", members.join(","))
    }
}

impl fmt::Display for MultisetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&cyclic::join_codes(&self.0))
    }
}

/// Intermediate values of one block-map evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTrace {
    /// The block `I` (0-based coset indices).
    pub support: Vec<usize>,
    /// `(a_i, b_i)` for `i` in `I`.
    pub split_logs: Vec<(u64, u64)>,
    /// `phi_{i,I}` for `i` in `I`.
    pub twisted: Vec<u64>,
    /// `b_i * n/gcd(n,s_i) + phi_{i,I}` for `i` in `I`.
    pub digit_values: Vec<u64>,
    pub image: MultisetFunction,
}

/// The image of one rotation class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklaceImage {
    pub necklace: Necklace,
    pub support: Vec<usize>,
    /// `k` such that the chosen representative is `X^k * (least rotation)`.
    pub rotation: usize,
    pub image: MultisetFunction,
}

/// Everything needed to evaluate the bijection for one `(q, n)`.
pub struct BijectionContext {
    unity: UnityFactorization,
    logs: Vec<LogContext>,
    automorphisms: RwLock<HashMap<Vec<usize>, Arc<MixedModulusAutomorphism>>>,
}

impl fmt::Debug for BijectionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BijectionContext")
            .field("q", &self.q())
            .field("n", &self.n())
            .finish_non_exhaustive()
    }
}

impl BijectionContext {
    pub fn new(q: u64, n: u64) -> Result<Self> {
        if n == 0 || q == 0 || gcd(q, n) != 1 {
            return Err(Error::NotCoprime { q, n });
        }
        if is_prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        let unity = factor_unity(n, q)?;
        let logs = (0..unity.cosets().len())
            .map(|i| LogContext::new(&unity, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            unity,
            logs,
            automorphisms: RwLock::new(HashMap::new()),
        })
    }

    pub fn q(&self) -> u64 {
        self.unity.q()
    }

    pub fn n(&self) -> u64 {
        self.unity.n()
    }

    pub fn unity(&self) -> &UnityFactorization {
        &self.unity
    }

    pub fn cosets(&self) -> &CosetSystem {
        self.unity.cosets()
    }

    pub fn log_context(&self, i: usize) -> &LogContext {
        &self.logs[i]
    }

    /// The automorphism `phi_I` for weights `(s_i)_{i in I}`, memoized.
    pub fn automorphism(&self, support: &[usize]) -> Result<Arc<MixedModulusAutomorphism>> {
        if let Some(aut) = self.automorphisms.read().expect("lock poisoned").get(support) {
            return Ok(Arc::clone(aut));
        }
        self.cosets().check_subset(support)?;
        let weights = self.cosets().representatives_of(support);
        let built = Arc::new(MixedModulusAutomorphism::build(self.n(), &weights)?);
        let mut cache = self.automorphisms.write().expect("lock poisoned");
        Ok(Arc::clone(cache.entry(support.to_vec()).or_insert(built)))
    }

    /// `(a_i, b_i)` for `alpha`; fails if `P_i` divides `alpha`.
    pub fn split_log(&self, i: usize, alpha: &RingElement) -> Result<(u64, u64)> {
        let x = self.unity.project(alpha, i);
        if x.is_zero() {
            return Err(Error::InvalidInput(format!("P_{i} divides the element")));
        }
        self.logs[i].split_log(&x)
    }

    pub fn support_set(&self, alpha: &RingElement) -> Vec<usize> {
        self.unity.support_set(alpha)
    }

    pub fn level_support(&self, f: &MultisetFunction) -> Vec<usize> {
        f.level_support(self.cosets())
    }

    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        RingElement::parse(self.unity.base(), self.n() as usize, text)
    }

    pub fn element_string(&self, alpha: &RingElement) -> String {
        alpha.to_code_string(self.unity.base())
    }

    fn check_element(&self, alpha: &RingElement) -> Result<()> {
        let base = self.unity.base();
        if alpha.len() != self.n() as usize || !alpha.coefficients().iter().all(|c| base.contains(c)) {
            return Err(Error::InvalidInput(format!(
                "not an element of F_{}[X]/(X^{} - 1)",
                self.q(),
                self.n()
            )));
        }
        Ok(())
    }

    fn check_function(&self, f: &MultisetFunction) -> Result<()> {
        if f.len() != self.n() as usize {
            return Err(Error::InvalidInput(format!("expected a function on Z_{}", self.n())));
        }
        if let Some(&v) = f.values().iter().find(|&&v| v >= self.q()) {
            return Err(Error::OutOfRange {
                value: v as u128,
                bound: self.q() as u128,
            });
        }
        Ok(())
    }

    pub fn block_map(&self, alpha: &RingElement) -> Result<MultisetFunction> {
        Ok(self.block_map_traced(alpha)?.image)
    }

    pub fn block_map_traced(&self, alpha: &RingElement) -> Result<BlockTrace> {
        self.check_element(alpha)?;
        let cosets = self.cosets();
        let q = self.q();
        let mut values = vec![q - 1; self.n() as usize];
        let mut support = Vec::new();
        let mut split_logs = Vec::new();
        for (i, ctx) in self.logs.iter().enumerate() {
            let x = self.unity.project(alpha, i);
            if !x.is_zero() {
                support.push(i);
                split_logs.push(ctx.split_log(&x)?);
            }
        }
        let aut = self.automorphism(&support)?;
        let quotients: Vec<u64> = split_logs.iter().map(|&(a, _)| a).collect();
        let twisted = aut.apply(&quotients)?;

        let mut digit_values = Vec::with_capacity(support.len());
        for ((&i, &(_, b)), &phi) in support.iter().zip(&split_logs).zip(&twisted) {
            let ctx = &self.logs[i];
            let v = b * ctx.orbit_modulus() + phi;
            if v >= ctx.group_order() {
                return Err(Error::Internal(format!(
                    "digit value {v} for coset {i} exceeds q^l - 2 = {}",
                    ctx.group_order() - 1
                )));
            }
            let coset = cosets.coset(i);
            let digits = base_digits(v, q, coset.size())?;
            for (&z, &c) in coset.elements.iter().zip(&digits) {
                values[z as usize] = c;
            }
            digit_values.push(v);
        }
        Ok(BlockTrace {
            support,
            split_logs,
            twisted,
            digit_values,
            image: MultisetFunction(values),
        })
    }

    pub fn block_map_inverse(&self, f: &MultisetFunction) -> Result<RingElement> {
        self.check_function(f)?;
        let cosets = self.cosets();
        let q = self.q();
        let support = self.level_support(f);
        let mut twisted = Vec::with_capacity(support.len());
        let mut remainders = Vec::with_capacity(support.len());
        for &i in &support {
            let digits: Vec<u64> = cosets
                .coset(i)
                .elements
                .iter()
                .map(|&z| f.values()[z as usize])
                .collect();
            let v = digit_value(&digits, q);
            let mu = self.logs[i].orbit_modulus();
            remainders.push(v / mu);
            twisted.push(v % mu);
        }
        let quotients = self.automorphism(&support)?.apply_inverse(&twisted)?;

        let mut residues: Vec<_> = (0..cosets.len()).map(|i| self.unity.quotient(i).zero()).collect();
        for ((&i, &a), &b) in support.iter().zip(&quotients).zip(&remainders) {
            residues[i] = self.logs[i].from_split(a, b);
        }
        self.unity.crt_reconstruct(&residues)
    }

    /// `sum_{i in I} s_i * phi_{i,I}(alpha) mod n`, which equals the
    /// weighted sum of `block_map(alpha)`.
    pub fn twisted_sum(&self, trace: &BlockTrace) -> u64 {
        let n = self.n() as u128;
        trace.support.iter().zip(&trace.twisted).fold(0u128, |acc, (&i, &phi)| {
            (acc + self.cosets().representative(i) as u128 * phi as u128) % n
        }) as u64
    }

    /// The image of a rotation class, with the rotation that was selected.
    pub fn map_necklace(&self, necklace: &Necklace) -> Result<NecklaceImage> {
        let alpha = necklace.representative();
        let trace = self.block_map_traced(alpha)?;
        let n = self.n();
        let g = gcd_indexed(n, &self.cosets().representatives_of(&trace.support));
        let total = self.twisted_sum(&trace);
        if !total.is_multiple_of(g) {
            return Err(Error::Internal(format!("twisted sum {total} is not a multiple of {g}")));
        }
        let period = n / g;
        let rotation = ((period - (total / g) % period) % period) as usize;
        let image = if rotation == 0 {
            trace.image
        } else {
            self.block_map(&alpha.rotate(rotation))?
        };
        Ok(NecklaceImage {
            necklace: necklace.clone(),
            support: trace.support,
            rotation,
            image,
        })
    }

    pub fn necklace_to_multiset(&self, necklace: &Necklace) -> Result<MultisetFunction> {
        Ok(self.map_necklace(necklace)?.image)
    }

    /// Canonicalize `alpha` and map its class.
    pub fn map_element(&self, alpha: &RingElement) -> Result<NecklaceImage> {
        self.check_element(alpha)?;
        self.map_necklace(&self.unity.canonical_necklace(alpha))
    }

    pub fn multiset_to_necklace(&self, f: &MultisetFunction) -> Result<Necklace> {
        self.check_function(f)?;
        let residue = f.weighted_sum();
        if residue != 0 {
            return Err(Error::NotInF { residue, n: self.n() });
        }
        let alpha = self.block_map_inverse(f)?;
        Ok(self.unity.canonical_necklace(&alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(text: &str) -> MultisetFunction {
        MultisetFunction::parse_set(text, 3).unwrap()
    }

    #[test]
    fn weighted_sum_examples() {
        assert_eq!(MultisetFunction(vec![0, 0, 0]).weighted_sum(), 0);
        assert_eq!(set("{1,2}").weighted_sum(), 0);
        assert_eq!(set("{1}").weighted_sum(), 1);
    }

    #[test]
    fn level_support_examples() {
        let ctx = BijectionContext::new(2, 3).unwrap();
        assert!(ctx.level_support(&MultisetFunction::full(3, 2)).is_empty());
        assert_eq!(ctx.level_support(&set("{1,2}")), vec![0]);
        assert_eq!(ctx.level_support(&set("{0}")), vec![1]);
    }

    #[test]
    fn block_map_examples() {
        let ctx = BijectionContext::new(2, 3).unwrap();
        let el = |t: &str| ctx.parse_element(t).unwrap();
        let cases = [
            ("0,0,0", "{0,1,2}"),
            ("1,1,1", "{1,2}"),
            ("1,1,0", "{0,2}"),
            ("0,1,1", "{0}"),
            ("1,0,1", "{0,1}"),
            ("1,0,0", "{}"),
            ("0,1,0", "{1}"),
            ("0,0,1", "{2}"),
        ];
        for (alpha, image) in cases {
            let f = ctx.block_map(&el(alpha)).unwrap();
            assert_eq!(f.to_set_string(), image, "alpha={alpha}");
            assert_eq!(ctx.block_map_inverse(&f).unwrap(), el(alpha));
        }
        let trace = ctx.block_map_traced(&el("1,1,0")).unwrap();
        assert_eq!(trace.support, vec![1]);
        assert_eq!(trace.digit_values, vec![2]);
    }

    #[test]
    fn inverse_examples() {
        let ctx = BijectionContext::new(2, 3).unwrap();
        assert!(ctx.block_map_inverse(&MultisetFunction::full(3, 2)).unwrap().is_zero());
        assert_eq!(
            ctx.element_string(&ctx.block_map_inverse(&set("{0}")).unwrap()),
            "0,1,1"
        );
    }

    #[test]
    fn necklace_examples() {
        let ctx = BijectionContext::new(2, 3).unwrap();
        let map = |t: &str| {
            let alpha = ctx.parse_element(t).unwrap();
            ctx.map_element(&alpha).unwrap().image.to_set_string()
        };
        assert_eq!(map("0,0,0"), "{0,1,2}");
        assert_eq!(map("1,1,1"), "{1,2}");
        assert_eq!(map("1,1,0"), "{0}");
        assert_eq!(map("0,0,1"), "{}");

        let back = |t: &str| ctx.element_string(ctx.multiset_to_necklace(&set(t)).unwrap().representative());
        assert_eq!(back("{0,1,2}"), "0,0,0");
        assert_eq!(back("{1,2}"), "1,1,1");
        assert_eq!(back("{0}"), "0,1,1");
        assert_eq!(back("{}"), "0,0,1");
        assert_eq!(
            ctx.multiset_to_necklace(&set("{1}")),
            Err(Error::NotInF { residue: 1, n: 3 })
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(BijectionContext::new(6, 5).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(
            BijectionContext::new(2, 4).unwrap_err(),
            Error::NotCoprime { q: 2, n: 4 }
        );
        assert!(MultisetFunction::parse("0,2,1", 3, 2).is_err());
        assert!(MultisetFunction::parse_set("{3}", 3).is_err());
    }

    #[test]
    fn exhaustive_roundtrip_n3_q2() {
        let ctx = BijectionContext::new(2, 3).unwrap();
        for bits in 0..8u64 {
            let f = MultisetFunction::new((0..3).map(|z| (bits >> z) & 1).collect(), 2).unwrap();
            let alpha = ctx.block_map_inverse(&f).unwrap();
            assert_eq!(ctx.block_map(&alpha).unwrap(), f);
        }
    }
}
