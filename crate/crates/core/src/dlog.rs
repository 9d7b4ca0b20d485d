//! Discrete logarithms in the groups `G_i = (Q/P_iQ)^x`, the constrained
//! generators `g_i` with `g_i^(D_i) = X_i`, and the split of a logarithm
//! into quotient and remainder by `D_i`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cyclic::UnityFactorization;
use crate::error::{Error, Result};
use crate::gf::{self, FieldContext, FieldElement};
use crate::numtheory::gcd;

/// Baby-step/giant-step table for one base of known order.
#[derive(Debug, Clone)]
pub struct BabyStepGiantStep {
    step: u64,
    group_order: u64,
    baby: HashMap<u64, u64>,
    /// `base^(-step)`
    giant: FieldElement,
}

impl BabyStepGiantStep {
    pub fn new(field: &FieldContext, base: &FieldElement, group_order: u64) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let step = (group_order as f64).sqrt().ceil().max(1.0) as u64;
        let step = if step.saturating_mul(step) < group_order {
            step + 1
        } else {
            step
        };
        let mut baby = HashMap::with_capacity(step as usize);
        let mut cur = field.one();
        for j in 0..step {
            baby.entry(field.element_code(&cur)).or_insert(j);
            cur = field.mul(&cur, base);
        }
        let giant = field.inv(&field.pow(base, step))?;
        Ok(Self {
            step,
            group_order,
            baby,
            giant,
        })
    }

    /// Smallest `k` in `[0, group_order)` with `base^k = x`.
    pub fn log(&self, field: &FieldContext, x: &FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut cur = x.clone();
        for i in 0..=self.step {
            if let Some(&j) = self.baby.get(&field.element_code(&cur)) {
                let k = i * self.step + j;
                if k < self.group_order {
                    return Ok(k);
                }
            }
            cur = field.mul(&cur, &self.giant);
        }
        Err(Error::InvalidInput("element is not a power of the base".into()))
    }
}

/// `log_base(x)` in a field whose multiplicative group has order
/// `|F| - 1`; `base` must generate it.
pub fn dlog(field: &FieldContext, x: &FieldElement, base: &FieldElement) -> Result<u64> {
    BabyStepGiantStep::new(field, base, field.order() - 1)?.log(field, x)
}

/// Fields up to this order get a full logarithm table instead of
/// baby-step/giant-step.
pub const DENSE_TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone)]
enum LogTable {
    /// `dense[code(base^k)] = k`; slot 0 (the zero element) is unused.
    Dense(Vec<u32>),
    Bsgs(BabyStepGiantStep),
}

impl LogTable {
    fn new(field: &FieldContext, base: &FieldElement, group_order: u64) -> Result<Self> {
        if field.order() > DENSE_TABLE_LIMIT {
            return Ok(Self::Bsgs(BabyStepGiantStep::new(field, base, group_order)?));
        }
        let mut dense = vec![u32::MAX; field.order() as usize];
        let mut cur = field.one();
        for k in 0..group_order {
            let slot = &mut dense[field.element_code(&cur) as usize];
            if *slot != u32::MAX {
                break;
            }
            *slot = k as u32;
            cur = field.mul(&cur, base);
        }
        Ok(Self::Dense(dense))
    }

    fn log(&self, field: &FieldContext, x: &FieldElement) -> Result<u64> {
        match self {
            Self::Bsgs(table) => table.log(field, x),
            Self::Dense(_) if x.is_zero() => Err(Error::DivisionByZero),
            Self::Dense(dense) => match dense[field.element_code(x) as usize] {
                u32::MAX => Err(Error::InvalidInput("element is not a power of the base".into())),
                k => Ok(k as u64),
            },
        }
    }
}

/// Logarithm data for one factor field `Q/P_iQ`.
#[derive(Debug, Clone)]
pub struct LogContext {
    field: Arc<FieldContext>,
    group_order: u64,
    divisor: u64,
    orbit_modulus: u64,
    canonical_generator: FieldElement,
    generator: FieldElement,
    table: LogTable,
}

impl LogContext {
    /// Builds the constrained generator `g_i`: starting from the canonical
    /// generator `h`, write `X_i = h^e` with `e = D*e'`, and take
    /// `g = h^u` for the least `u = e' (mod n/gcd(n,s_i))` coprime to `|G_i|`.
    pub fn new(uf: &UnityFactorization, i: usize) -> Result<Self> {
        let field = Arc::clone(uf.quotient(i));
        let group_order = field.order() - 1;
        let orbit_modulus = uf.cosets().orbit_modulus(i);
        if !group_order.is_multiple_of(orbit_modulus) {
            return Err(Error::Internal(format!(
                "n/gcd(n,s_{i}) = {orbit_modulus} does not divide |G_{i}| = {group_order}"
            )));
        }
        let divisor = group_order / orbit_modulus;
        let x_i = uf.project(&uf.ring_x(), i);

        let canonical_generator = gf::find_generator(&field);
        let e = dlog(&field, &x_i, &canonical_generator)?;
        if gcd(e, group_order) != divisor {
            return Err(Error::Internal(format!(
                "gcd(log X_{i}, |G_{i}|) = {} but D_{i} = {divisor}",
                gcd(e, group_order)
            )));
        }
        let reduced = e / divisor;
        let mut u = reduced;
        while gcd(u, group_order) != 1 {
            u += orbit_modulus;
        }
        let generator = field.pow(&canonical_generator, u);

        if field.pow(&generator, divisor) != x_i {
            return Err(Error::Internal(format!("g_{i}^D_{i} != X_{i}")));
        }
        let table = LogTable::new(&field, &generator, group_order)?;
        Ok(Self {
            field,
            group_order,
            divisor,
            orbit_modulus,
            canonical_generator,
            generator,
            table,
        })
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    /// `|G_i| = q^(l_i) - 1`.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// `D_i = |G_i| * gcd(n, s_i) / n`.
    pub fn divisor(&self) -> u64 {
        self.divisor
    }

    /// `n / gcd(n, s_i)`.
    pub fn orbit_modulus(&self) -> u64 {
        self.orbit_modulus
    }

    pub fn canonical_generator(&self) -> &FieldElement {
        &self.canonical_generator
    }

    /// The constrained generator `g_i`.
    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    /// `log_{g_i}(x)` for nonzero `x` in `Q/P_iQ`.
    pub fn log(&self, x: &FieldElement) -> Result<u64> {
        self.table.log(&self.field, x)
    }

    /// `(a_i, b_i)`: quotient and remainder of `log_{g_i}(x)` by `D_i`.
    pub fn split_log(&self, x: &FieldElement) -> Result<(u64, u64)> {
        let k = self.log(x)?;
        Ok((k / self.divisor, k % self.divisor))
    }

    /// `g_i^(a*D_i + b)`, inverse of [`split_log`](Self::split_log).
    pub fn from_split(&self, a: u64, b: u64) -> FieldElement {
        let exponent = (a as u128 * self.divisor as u128 + b as u128) % self.group_order as u128;
        self.field.pow(&self.generator, exponent as u64)
    }
}
