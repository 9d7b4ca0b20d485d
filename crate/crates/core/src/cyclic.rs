//! The ring `Q = F_q[X]/(X^n - 1)`: cyclotomic cosets, the irreducible
//! factors `P_i` of `X^n - 1`, projections onto the fields `Q/P_iQ`, CRT
//! reconstruction and necklace normal forms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{self, poly, FieldContext, FieldElement};
use crate::numtheory::{gcd, gcd_indexed, mul_mod, mult_order};

/// One orbit of `Z_n` under multiplication by `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    /// Minimal element of the orbit.
    pub representative: u64,
    /// `[s, q*s, q^2*s, ...]` reduced mod `n`, in iteration order.
    pub elements: Vec<u64>,
}

impl Coset {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// The cyclotomic cosets of `Z_n` for multiplier `q`, sorted by
/// representative. Indices into this list are 0-based; coset 0 is `{0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSystem {
    n: u64,
    q: u64,
    cosets: Vec<Coset>,
    /// `owner[z]` is the index of the coset containing `z`.
    owner: Vec<usize>,
}

impl CosetSystem {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn coset(&self, i: usize) -> &Coset {
        &self.cosets[i]
    }

    pub fn representative(&self, i: usize) -> u64 {
        self.cosets[i].representative
    }

    pub fn owner_of(&self, z: u64) -> usize {
        self.owner[z as usize]
    }

    /// `n / gcd(n, s_i)`: the order of `X` in the `i`-th factor field.
    pub fn orbit_modulus(&self, i: usize) -> u64 {
        self.n / gcd(self.n, self.representative(i))
    }

    /// Representatives `s_i` for the given indices.
    pub fn representatives_of(&self, indices: &[usize]) -> Vec<u64> {
        indices.iter().map(|&i| self.representative(i)).collect()
    }

    pub fn check_subset(&self, indices: &[usize]) -> Result<()> {
        let sorted = indices.windows(2).all(|w| w[0] < w[1]);
        if !sorted || indices.iter().any(|&i| i >= self.len()) {
            return Err(Error::InvalidInput(format!(
                "{indices:?} is not an ascending subset of coset indices 0..{}",
                self.len()
            )));
        }
        Ok(())
    }
}

pub fn cyclotomic_cosets(n: u64, q: u64) -> Result<CosetSystem> {
    if n == 0 || q == 0 || gcd(n, q) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    if n > usize::MAX as u64 {
        return Err(Error::TooLarge(format!("n={n}")));
    }
    let mut owner = vec![usize::MAX; n as usize];
    let mut cosets = Vec::new();
    for s in 0..n {
        if owner[s as usize] != usize::MAX {
            continue;
        }
        let index = cosets.len();
        let mut elements = Vec::new();
        let mut z = s;
        loop {
            owner[z as usize] = index;
            elements.push(z);
            z = mul_mod(z, q, n);
            if z == s {
                break;
            }
        }
        cosets.push(Coset {
            representative: s,
            elements,
        });
    }
    Ok(CosetSystem { n, q, cosets, owner })
}

/// An element `sum_k a_k X^k` of `Q`, as its `n` coefficients over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement(Vec<FieldElement>);

impl RingElement {
    pub fn new(coefficients: Vec<FieldElement>) -> Self {
        Self(coefficients)
    }

    pub fn zero(base: &FieldContext, n: usize) -> Self {
        Self(vec![base.zero(); n])
    }

    /// The monomial `X^k`.
    pub fn monomial(base: &FieldContext, n: usize, k: usize) -> Self {
        let mut c = vec![base.zero(); n];
        c[k % n] = base.one();
        Self(c)
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    /// `X^k * self`: coefficient `j` of the result is coefficient
    /// `j - k (mod n)` of `self`.
    pub fn rotate(&self, k: usize) -> Self {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut c = self.0.clone();
        c.rotate_right(k);
        Self(c)
    }

    pub fn codes(&self, base: &FieldContext) -> Vec<u64> {
        self.0.iter().map(|c| base.element_code(c)).collect()
    }

    pub fn from_codes(base: &FieldContext, codes: &[u64]) -> Result<Self> {
        codes
            .iter()
            .map(|&c| base.element_decode(c))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// Parse the textual form `"c0,c1,...,c{n-1}"` of element codes.
    pub fn parse(base: &FieldContext, n: usize, text: &str) -> Result<Self> {
        let codes = parse_code_list(text)?;
        if codes.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} comma-separated coefficients, got {}",
                codes.len()
            )));
        }
        Self::from_codes(base, &codes)
    }

    pub fn to_code_string(&self, base: &FieldContext) -> String {
        join_codes(&self.codes(base))
    }
}

pub(crate) fn parse_code_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("'{t}' is not a nonnegative integer")))
        })
        .collect()
}

pub(crate) fn join_codes(codes: &[u64]) -> String {
    codes.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// A rotation class, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Necklace {
    representative: RingElement,
    orbit_size: usize,
}

impl Necklace {
    pub fn representative(&self) -> &RingElement {
        &self.representative
    }

    pub fn orbit_size(&self) -> usize {
        self.orbit_size
    }
}

/// For a code string, the rotation `k` such that `rotate(_, k)` is
/// lexicographically least, and the number of distinct rotations.
pub fn least_rotation(codes: &[u64]) -> (usize, usize) {
    let n = codes.len();
    if n == 0 {
        return (0, 1);
    }
    // rotate(_, k) starts reading at index (n - k) % n
    let at = |start: usize, j: usize| codes[(start + j) % n];
    let mut best = 0usize;
    for start in 1..n {
        if (0..n).map(|j| at(start, j)).lt((0..n).map(|j| at(best, j))) {
            best = start;
        }
    }
    let period = (1..=n)
        .find(|&k| n.is_multiple_of(k) && (0..n).all(|j| codes[j] == codes[(j + k) % n]))
        .unwrap_or(n);
    ((n - best) % n, period)
}

pub fn canonical_necklace(base: &FieldContext, alpha: &RingElement) -> Necklace {
    let (k, orbit_size) = least_rotation(&alpha.codes(base));
    Necklace {
        representative: alpha.rotate(k),
        orbit_size,
    }
}

/// `n / gcd(n, gcd(s_i : i in I))`, the size of every rotation class whose
/// elements have support `I`.
pub fn orbit_size_formula(indices: &[usize], cosets: &CosetSystem) -> u64 {
    cosets.n() / gcd_indexed(cosets.n(), &cosets.representatives_of(indices))
}

/// The splitting data of `X^n - 1` over `F_q`.
#[derive(Debug)]
pub struct UnityFactorization {
    cosets: CosetSystem,
    base: Arc<FieldContext>,
    splitting: Arc<FieldContext>,
    generator: FieldElement,
    omega: FieldElement,
    /// `P_i` over `F_q`, monic, constant term first.
    factors: Vec<Vec<FieldElement>>,
    quotients: Vec<Arc<FieldContext>>,
    /// CRT idempotents: `e_i = 1 mod P_i`, `0 mod P_j` for `j != i`.
    idempotents: Vec<RingElement>,
}

pub fn factor_unity(n: u64, q: u64) -> Result<UnityFactorization> {
    let cosets = cyclotomic_cosets(n, q)?;
    let base = FieldContext::galois(q)?;
    let degree = mult_order(q, n)? as usize;
    let splitting = FieldContext::extension(&base, gf::canonical_irreducible(&base, degree))?;
    let generator = gf::find_generator(&splitting);
    let omega = splitting.pow(&generator, (splitting.order() - 1) / n);

    let mut factors = Vec::with_capacity(cosets.len());
    for coset in cosets.cosets() {
        // prod_{k in S} (X - omega^k) over the splitting field
        let mut product = vec![splitting.one()];
        for &k in &coset.elements {
            let root = splitting.pow(&omega, k);
            product = poly::mul(&splitting, &product, &[splitting.neg(&root), splitting.one()]);
        }
        let descended = product
            .iter()
            .map(|c| {
                let fixed = splitting.pow(c, q) == *c;
                splitting.descend(c).filter(|_| fixed).ok_or_else(|| {
                    Error::Internal(format!(
                        "coefficient of the factor for coset {} is not in F_q",
                        coset.representative
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        factors.push(descended);
    }

    let quotients = factors
        .iter()
        .map(|f| FieldContext::extension(&base, f.clone()))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Internal(format!("factor is not irreducible: {e}")))?;

    let mut uf = UnityFactorization {
        cosets,
        base,
        splitting,
        generator,
        omega,
        factors,
        quotients,
        idempotents: Vec::new(),
    };
    uf.idempotents = uf.compute_idempotents()?;
    uf.check_invariants()?;
    Ok(uf)
}

impl UnityFactorization {
    pub fn n(&self) -> u64 {
        self.cosets.n()
    }

    pub fn q(&self) -> u64 {
        self.cosets.q()
    }

    pub fn cosets(&self) -> &CosetSystem {
        &self.cosets
    }

    /// The coefficient field `F_q`.
    pub fn base(&self) -> &Arc<FieldContext> {
        &self.base
    }

    /// The splitting field `F_q[Z]/(M)` of degree `ord_n(q)`.
    pub fn splitting(&self) -> &Arc<FieldContext> {
        &self.splitting
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn omega(&self) -> &FieldElement {
        &self.omega
    }

    pub fn factors(&self) -> &[Vec<FieldElement>] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &[FieldElement] {
        &self.factors[i]
    }

    /// The field `Q/P_iQ = F_q[X]/(P_i)`.
    pub fn quotient(&self, i: usize) -> &Arc<FieldContext> {
        &self.quotients[i]
    }

    pub fn ring_zero(&self) -> RingElement {
        RingElement::zero(&self.base, self.n() as usize)
    }

    /// The element `X` of `Q`.
    pub fn ring_x(&self) -> RingElement {
        RingElement::monomial(&self.base, self.n() as usize, 1)
    }

    pub fn ring_add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement(a.0.iter().zip(&b.0).map(|(x, y)| self.base.add(x, y)).collect())
    }

    /// Product in `Q` (cyclic convolution).
    pub fn ring_mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let n = self.n() as usize;
        let mut out = vec![self.base.zero(); n];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                let k = (i + j) % n;
                out[k] = self.base.add(&out[k], &self.base.mul(x, y));
            }
        }
        RingElement(out)
    }

    /// `alpha mod P_i` as an element of `Q/P_iQ`.
    pub fn project(&self, alpha: &RingElement, i: usize) -> FieldElement {
        let r = poly::rem(&self.base, &alpha.0, &self.factors[i]);
        self.quotients[i].from_base_coefficients(&r)
    }

    /// The unique `alpha` with `project(alpha, i) = residues[i]` for all `i`.
    pub fn crt_reconstruct(&self, residues: &[FieldElement]) -> Result<RingElement> {
        if residues.len() != self.cosets.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} residues, got {}",
                self.cosets.len(),
                residues.len()
            )));
        }
        let n = self.n() as usize;
        let mut out = vec![self.base.zero(); n];
        for (i, residue) in residues.iter().enumerate() {
            if !self.quotients[i].contains(residue) {
                return Err(Error::InvalidInput(format!("residue {i} is not in Q/P_{i}Q")));
            }
            let lift = self.quotients[i].base_coefficients(residue);
            let e = &self.idempotents[i].0;
            for (j, c) in lift.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, ek) in e.iter().enumerate() {
                    let t = (j + k) % n;
                    out[t] = self.base.add(&out[t], &self.base.mul(c, ek));
                }
            }
        }
        Ok(RingElement(out))
    }

    /// Indices `i` with `P_i` not dividing `alpha`.
    pub fn support_set(&self, alpha: &RingElement) -> Vec<usize> {
        (0..self.cosets.len())
            .filter(|&i| !self.project(alpha, i).is_zero())
            .collect()
    }

    pub fn canonical_necklace(&self, alpha: &RingElement) -> Necklace {
        canonical_necklace(&self.base, alpha)
    }

    /// `X^n - 1` over `F_q`.
    pub fn unity_polynomial(&self) -> Vec<FieldElement> {
        let n = self.n() as usize;
        let mut p = vec![self.base.zero(); n + 1];
        p[0] = self.base.neg(&self.base.one());
        p[n] = self.base.one();
        p
    }

    fn compute_idempotents(&self) -> Result<Vec<RingElement>> {
        let unity = self.unity_polynomial();
        let n = self.n() as usize;
        (0..self.cosets.len())
            .map(|i| {
                let (cofactor, r) = poly::div_rem(&self.base, &unity, &self.factors[i]);
                if !r.is_empty() {
                    return Err(Error::Internal(format!("P_{i} does not divide X^n - 1")));
                }
                let quotient = &self.quotients[i];
                let reduced = poly::rem(&self.base, &cofactor, &self.factors[i]);
                let inv = quotient.inv(&quotient.from_base_coefficients(&reduced))?;
                let e = poly::mul(&self.base, &cofactor, &quotient.base_coefficients(&inv));
                let e = poly::rem(&self.base, &e, &unity);
                let mut coeffs = e;
                coeffs.resize(n, self.base.zero());
                Ok(RingElement(coeffs))
            })
            .collect()
    }

    fn check_invariants(&self) -> Result<()> {
        let f = &self.splitting;
        let n = self.n();
        if f.pow(&self.omega, n) != f.one() || f.multiplicative_order(&self.omega)? != n {
            return Err(Error::Internal("omega is not a primitive n-th root of unity".into()));
        }
        let product = self
            .factors
            .iter()
            .fold(vec![self.base.one()], |acc, p| poly::mul(&self.base, &acc, p));
        if product != self.unity_polynomial() {
            return Err(Error::Internal("product of the factors is not X^n - 1".into()));
        }
        for (i, p) in self.factors.iter().enumerate() {
            let coset = self.cosets.coset(i);
            if poly::degree(p) != Some(coset.size()) || p.last() != Some(&self.base.one()) {
                return Err(Error::Internal(format!("factor {i} has the wrong degree")));
            }
            let lifted: Vec<_> = p.iter().map(|c| f.embed(c)).collect();
            let root = f.pow(&self.omega, coset.representative);
            if !poly::eval(f, &lifted, &root).is_zero() {
                return Err(Error::Internal(format!("omega^s_{i} is not a root of P_{i}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::totient;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn ints(uf: &UnityFactorization, codes: &[u64]) -> RingElement {
        RingElement::from_codes(uf.base(), codes).unwrap()
    }

    fn factor_codes(uf: &UnityFactorization, i: usize) -> Vec<u64> {
        uf.factor(i).iter().map(|c| uf.base().element_code(c)).collect()
    }

    #[test]
    fn coset_examples() {
        let c = cyclotomic_cosets(3, 2).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(
            c.coset(0),
            &Coset {
                representative: 0,
                elements: vec![0]
            }
        );
        assert_eq!(
            c.coset(1),
            &Coset {
                representative: 1,
                elements: vec![1, 2]
            }
        );

        let c = cyclotomic_cosets(1, 5).unwrap();
        assert_eq!(
            c.cosets(),
            &[Coset {
                representative: 0,
                elements: vec![0]
            }]
        );

        let c = cyclotomic_cosets(15, 2).unwrap();
        let lists: Vec<Vec<u64>> = c.cosets().iter().map(|s| s.elements.clone()).collect();
        assert_eq!(
            lists,
            vec![
                vec![0],
                vec![1, 2, 4, 8],
                vec![3, 6, 12, 9],
                vec![5, 10],
                vec![7, 14, 13, 11]
            ]
        );
        assert!(cyclotomic_cosets(4, 2).is_err());
    }

    #[test]
    fn coset_invariants() {
        for n in 1..60u64 {
            for q in 1..20u64 {
                let Ok(c) = cyclotomic_cosets(n, q) else { continue };
                assert_eq!(c.coset(0).representative, 0);
                let total: usize = c.cosets().iter().map(Coset::size).sum();
                assert_eq!(total as u64, n);
                for (i, s) in c.cosets().iter().enumerate() {
                    assert!(s.elements.iter().all(|&z| z >= s.representative));
                    assert!(s.elements.iter().all(|&z| c.owner_of(z) == i));
                    let ql = crate::numtheory::pow_mod(q, s.size() as u64, n);
                    assert_eq!(mul_mod(s.representative, ql, n), s.representative);
                    assert_eq!(mul_mod(s.representative, (ql + n - 1) % n, n), 0);
                    for l in 1..s.size() as u64 {
                        let qk = crate::numtheory::pow_mod(q, l, n);
                        assert_ne!(mul_mod(s.representative, qk, n), s.representative);
                    }
                }
                assert!(c.cosets().windows(2).all(|w| w[0].representative < w[1].representative));
            }
        }
    }

    #[test]
    fn factor_examples() {
        let uf = factor_unity(3, 2).unwrap();
        assert_eq!(factor_codes(&uf, 0), vec![1, 1]);
        assert_eq!(factor_codes(&uf, 1), vec![1, 1, 1]);

        let uf = factor_unity(1, 7).unwrap();
        assert_eq!(factor_codes(&uf, 0), vec![6, 1]);

        let uf = factor_unity(5, 2).unwrap();
        assert_eq!(factor_codes(&uf, 0), vec![1, 1]);
        assert_eq!(factor_codes(&uf, 1), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn factorization_invariants_many_pairs() {
        for (q, n) in [
            (2u64, 7u64),
            (2, 9),
            (2, 15),
            (3, 8),
            (3, 13),
            (4, 5),
            (4, 9),
            (5, 6),
            (7, 8),
            (8, 7),
            (9, 10),
            (16, 5),
            (25, 6),
            (27, 4),
        ] {
            // factor_unity itself asserts the product, degree and root invariants
            let uf = factor_unity(n, q).unwrap();
            for i in 0..uf.cosets().len() {
                let p = uf.factor(i);
                assert!(gf::is_irreducible(uf.base(), p), "q={q} n={n} i={i}");
            }
        }
    }

    #[test]
    fn projection_examples() {
        let uf = factor_unity(3, 2).unwrap();
        assert!(uf.project(&uf.ring_zero(), 1).is_zero());
        let alpha = ints(&uf, &[1, 1, 0]);
        let quotient = uf.quotient(1);
        assert_eq!(quotient.element_code(&uf.project(&alpha, 1)), 3);

        // X^(n-1) * X = 1
        let last = RingElement::monomial(uf.base(), 3, 2);
        let rotated = uf.ring_mul(&last, &uf.ring_x());
        assert_eq!(uf.project(&rotated, 1), quotient.one());
    }

    #[test]
    fn reconstruction_example() {
        let uf = factor_unity(3, 2).unwrap();
        let residues = vec![uf.quotient(0).one(), uf.quotient(1).zero()];
        assert_eq!(uf.crt_reconstruct(&residues).unwrap(), ints(&uf, &[1, 1, 1]));
        let zeros = vec![uf.quotient(0).zero(), uf.quotient(1).zero()];
        assert!(uf.crt_reconstruct(&zeros).unwrap().is_zero());
    }

    #[test]
    fn support_examples() {
        let uf = factor_unity(3, 2).unwrap();
        assert!(uf.support_set(&uf.ring_zero()).is_empty());
        assert_eq!(uf.support_set(&ints(&uf, &[1, 1, 1])), vec![0]);
        assert_eq!(uf.support_set(&uf.ring_x()), vec![0, 1]);
    }

    #[test]
    fn necklace_examples() {
        let uf = factor_unity(3, 2).unwrap();
        let alpha = ints(&uf, &[1, 1, 0]);
        assert_eq!(alpha.rotate(1), ints(&uf, &[0, 1, 1]));
        let neck = uf.canonical_necklace(&ints(&uf, &[0, 1, 1]));
        assert_eq!(neck.representative(), &ints(&uf, &[0, 1, 1]));
        assert_eq!(neck.orbit_size(), 3);
        let neck = uf.canonical_necklace(&ints(&uf, &[1, 1, 0]));
        assert_eq!(neck.representative(), &ints(&uf, &[0, 1, 1]));
        let all = ints(&uf, &[1, 1, 1]);
        let neck = uf.canonical_necklace(&all);
        assert_eq!(neck.representative(), &all);
        assert_eq!(neck.orbit_size(), 1);
    }

    #[test]
    fn orbit_formula_examples() {
        let c = cyclotomic_cosets(3, 2).unwrap();
        assert_eq!(orbit_size_formula(&[], &c), 1);
        assert_eq!(orbit_size_formula(&[1], &c), 3);
        assert_eq!(orbit_size_formula(&[0], &c), 1);
    }

    #[test]
    fn text_form() {
        let uf = factor_unity(3, 4).unwrap();
        let alpha = RingElement::parse(uf.base(), 3, "0,3, 2").unwrap();
        assert_eq!(alpha.to_code_string(uf.base()), "0,3,2");
        assert!(RingElement::parse(uf.base(), 3, "0,4,2").is_err());
        assert!(RingElement::parse(uf.base(), 3, "0,1").is_err());
        assert!(RingElement::parse(uf.base(), 3, "0,x,1").is_err());
    }

    /// All elements of Q for small q^n, in code order.
    fn all_elements(uf: &UnityFactorization) -> Vec<RingElement> {
        let q = uf.q();
        let n = uf.n() as usize;
        (0..q.pow(n as u32))
            .map(|mut v| {
                let codes: Vec<u64> = (0..n)
                    .map(|_| {
                        let c = v % q;
                        v /= q;
                        c
                    })
                    .collect();
                ints(uf, &codes)
            })
            .collect()
    }

    #[test]
    fn orbit_size_matches_formula_exhaustive() {
        for (q, n) in [
            (2u64, 3u64),
            (2, 5),
            (2, 7),
            (2, 9),
            (3, 4),
            (3, 5),
            (4, 3),
            (5, 4),
            (7, 3),
        ] {
            let uf = factor_unity(n, q).unwrap();
            for alpha in all_elements(&uf) {
                let neck = uf.canonical_necklace(&alpha);
                let support = uf.support_set(&alpha);
                assert_eq!(neck.orbit_size() as u64, orbit_size_formula(&support, uf.cosets()));
            }
        }
    }

    #[test]
    fn crt_roundtrip_exhaustive_small() {
        for (q, n) in [(2u64, 5u64), (3, 4), (4, 3), (2, 9)] {
            let uf = factor_unity(n, q).unwrap();
            for alpha in all_elements(&uf) {
                let residues: Vec<_> = (0..uf.cosets().len()).map(|i| uf.project(&alpha, i)).collect();
                assert_eq!(uf.crt_reconstruct(&residues).unwrap(), alpha);
            }
        }
    }

    #[test]
    fn projection_is_a_ring_homomorphism() {
        let mut rng = StdRng::seed_from_u64(7);
        for (q, n) in [(2u64, 15u64), (3, 8), (4, 7), (9, 5)] {
            let uf = factor_unity(n, q).unwrap();
            for _ in 0..50 {
                let a = ints(&uf, &(0..n).map(|_| rng.gen_range(0..q)).collect::<Vec<_>>());
                let b = ints(&uf, &(0..n).map(|_| rng.gen_range(0..q)).collect::<Vec<_>>());
                let ab = uf.ring_mul(&a, &b);
                for i in 0..uf.cosets().len() {
                    let field = uf.quotient(i);
                    assert_eq!(uf.project(&ab, i), field.mul(&uf.project(&a, i), &uf.project(&b, i)));
                    assert_eq!(
                        uf.project(&uf.ring_add(&a, &b), i),
                        field.add(&uf.project(&a, i), &uf.project(&b, i))
                    );
                }
            }
        }
    }

    #[test]
    fn x_has_expected_order_in_each_factor() {
        for (q, n) in [(2u64, 3u64), (2, 15), (2, 21), (3, 10), (4, 9), (5, 12), (7, 10)] {
            let uf = factor_unity(n, q).unwrap();
            for i in 0..uf.cosets().len() {
                let field = uf.quotient(i);
                let xi = uf.project(&uf.ring_x(), i);
                let mut k = 1u64;
                let mut power = xi.clone();
                while power != field.one() {
                    power = field.mul(&power, &xi);
                    k += 1;
                }
                assert_eq!(k, uf.cosets().orbit_modulus(i));
            }
            assert!(totient(n).is_multiple_of(uf.splitting().degree() as u64));
        }
    }
}
