//! Automorphisms of `prod_i Z_{mu_i}`, `mu_i = n / gcd(n, d_i)`, whose image
//! of the all-ones vector `h` satisfies `sum_i d_i h_i = gcd(n, d_1, ..., d_k)
//! (mod n)`.
//!
//! The map is assembled one prime power `p^a || n` at a time. On that part
//! the coordinates are ordered by `v_p(gcd(p^a, d_i))`; with `f` the first
//! index in that order and `t` a unit solving `t*d_f = G (mod p^a)`, where
//! `G = gcd(n, d_1, ..., d_k)`, the map sends `e_f -> t*e_f - sum_{j != f} e_j`
//! and fixes every other basis vector. The prime parts are glued entrywise
//! with the integer CRT. Each part must aim at the global `G` rather than
//! `gcd(p^a, d_f)`: the two differ by a unit mod `p^a`, and only the former
//! survives the gluing.

use crate::error::{Error, Result};
use crate::numtheory::{
    crt_combine, factorize, gcd, gcd_indexed, mod_inverse, mul_mod, valuation, PrimePowerFactorization,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedModulusAutomorphism {
    n: u64,
    weights: Vec<u64>,
    moduli: Vec<u64>,
    /// `forward[i][j]`: coordinate `i` of the image of `e_j`, mod `moduli[i]`.
    forward: Vec<Vec<u64>>,
    inverse: Vec<Vec<u64>>,
    /// Image of the all-ones vector.
    ones_image: Vec<u64>,
}

/// Per-prime-part matrices, entries mod `p^(a - a_i)` in row `i`.
struct PrimePart {
    forward: Vec<Vec<u64>>,
    inverse: Vec<Vec<u64>>,
}

fn prime_part(p: u64, a: u32, weights: &[u64], target: u64) -> PrimePart {
    let pa = p.pow(a);
    let k = weights.len();
    let levels: Vec<u32> = weights.iter().map(|&d| valuation(gcd(pa, d), p).min(a)).collect();
    let row_modulus: Vec<u64> = levels.iter().map(|&l| p.pow(a - l)).collect();

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| levels[i]);
    let mut forward: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j) % row_modulus[i]).collect())
        .collect();
    let mut inverse = forward.clone();
    let Some(&first) = order.first() else {
        return PrimePart { forward, inverse };
    };

    let t = unit_multiplier(p, a, weights[first], target);
    let t_inv = mod_inverse(t % pa, pa).expect("t is a unit mod p^a");
    // forward(e_f) = t e_f - sum_{j != f} e_j
    // inverse(e_f) = t^{-1} (e_f + sum_{j != f} e_j)
    for i in 0..k {
        let m = row_modulus[i];
        forward[i][first] = if i == first { t % m } else { (m - 1) % m };
        inverse[i][first] = t_inv % m;
    }
    PrimePart { forward, inverse }
}

/// Smallest positive `t` with `t*d = target (mod p^a)` and `p` not dividing
/// `t`. Requires `v_p(target) = v_p(gcd(p^a, d))`.
fn unit_multiplier(p: u64, a: u32, d: u64, target: u64) -> u64 {
    let pa = p.pow(a);
    let g = gcd(pa, d);
    let step = pa / g;
    let unit_part = (d / g) % step;
    let inv = mod_inverse(unit_part, step).expect("d/g is a unit mod p^a/g");
    let mut t = mul_mod(inv, (target / g) % step, step);
    while t == 0 || t.is_multiple_of(p) {
        t += step;
    }
    debug_assert_eq!(mul_mod(t, d, pa), target % pa);
    t
}

impl MixedModulusAutomorphism {
    pub fn build(n: u64, weights: &[u64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        let k = weights.len();
        let moduli: Vec<u64> = weights.iter().map(|&d| n / gcd(n, d)).collect();
        let factorization = factorize(n);
        let target = gcd_indexed(n, weights);
        let parts: Vec<PrimePart> = factorization
            .factors()
            .iter()
            .map(|&(p, a)| prime_part(p, a, weights, target))
            .collect();

        let glue = |pick: fn(&PrimePart) -> &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let residues: Vec<u64> = parts.iter().map(|part| pick(part)[i][j]).collect();
                            combine_entry(&residues, &factorization, moduli[i])
                        })
                        .collect()
                })
                .collect()
        };
        let forward = glue(|p| &p.forward);
        let inverse = glue(|p| &p.inverse);

        let mut aut = Self {
            n,
            weights: weights.to_vec(),
            moduli,
            forward,
            inverse,
            ones_image: Vec::new(),
        };
        aut.ones_image = aut.apply(&vec![1; k])?;
        aut.check_invariants()?;
        Ok(aut)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// `mu_i = n / gcd(n, d_i)` per coordinate.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn forward(&self) -> &[Vec<u64>] {
        &self.forward
    }

    pub fn inverse(&self) -> &[Vec<u64>] {
        &self.inverse
    }

    /// `h = phi(1, ..., 1)`.
    pub fn ones_image(&self) -> &[u64] {
        &self.ones_image
    }

    pub fn arity(&self) -> usize {
        self.moduli.len()
    }

    pub fn apply(&self, x: &[u64]) -> Result<Vec<u64>> {
        self.mat_vec(&self.forward, x)
    }

    pub fn apply_inverse(&self, y: &[u64]) -> Result<Vec<u64>> {
        self.mat_vec(&self.inverse, y)
    }

    fn mat_vec(&self, matrix: &[Vec<u64>], x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.arity() {
            return Err(Error::InvalidInput(format!(
                "expected a {}-tuple, got {} coordinates",
                self.arity(),
                x.len()
            )));
        }
        Ok(matrix
            .iter()
            .zip(&self.moduli)
            .map(|(row, &m)| {
                row.iter()
                    .zip(x)
                    .fold(0u128, |acc, (&c, &v)| (acc + c as u128 * v as u128) % m as u128) as u64
            })
            .collect())
    }

    fn check_invariants(&self) -> Result<()> {
        let k = self.arity();
        let target = gcd_indexed(self.n, &self.weights) % self.n;
        let sum = self
            .weights
            .iter()
            .zip(&self.ones_image)
            .fold(0u128, |acc, (&d, &h)| (acc + d as u128 * h as u128) % self.n as u128);
        if k > 0 && sum as u64 != target {
            return Err(Error::Internal(format!(
                "sum d_i h_i = {sum} but gcd(n, d) = {target} (mod {})",
                self.n
            )));
        }
        for j in 0..k {
            for (matrix, name) in [(&self.forward, "forward"), (&self.inverse, "inverse")] {
                // mu_j * (column j) must vanish for the map to be well defined
                for (row, &m) in matrix.iter().zip(&self.moduli) {
                    if mul_mod(self.moduli[j], row[j], m) != 0 {
                        return Err(Error::Internal(format!("{name} column {j} is not well defined")));
                    }
                }
            }
            let mut e = vec![0; k];
            e[j] = 1 % self.moduli[j];
            if self.apply(&self.apply_inverse(&e)?)? != e || self.apply_inverse(&self.apply(&e)?)? != e {
                return Err(Error::Internal(format!("inverse fails on basis vector {j}")));
            }
        }
        Ok(())
    }
}

/// Glue per-prime residues `r_p mod p^(a-l)` into a residue mod `modulus`.
fn combine_entry(residues: &[u64], factorization: &PrimePowerFactorization, modulus: u64) -> u64 {
    // Lift each residue to mod p^a (any lift works) and combine mod n.
    crt_combine(residues, factorization) % modulus
}

pub fn build_automorphism(n: u64, weights: &[u64]) -> Result<MixedModulusAutomorphism> {
    MixedModulusAutomorphism::build(n, weights)
}
