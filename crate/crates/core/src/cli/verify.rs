//! Exhaustive verification of the bijection for one `(q, n)`: both sides
//! are enumerated independently and every claimed property is checked
//! directly against the enumeration.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bijection::{BijectionContext, MultisetFunction};
use crate::counting::{count_block_formula, count_formula};
use crate::cyclic::{least_rotation, orbit_size_formula, RingElement};
use crate::error::{Error, Result};
use crate::numtheory::checked_pow;

use super::record::{Record, Value};

/// Default bound on `q^n` for enumerating subcommands.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Names of the checks, in report order.
pub const CHECKS: [&str; 10] = [
    "necklace_count",
    "function_count",
    "membership",
    "injective",
    "surjective",
    "blocks",
    "roundtrip_necklace",
    "roundtrip_function",
    "beta_unique",
    "orbit_size",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// Number of cases examined.
    pub cases: u128,
    /// First counterexample, if any.
    pub counterexample: Option<Record>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_record(&self, json: bool) -> String {
        let mut r = Record::new()
            .with("check", self.name)
            .with("cases", self.cases)
            .with("status", if self.passed() { "PASS" } else { "FAIL" });
        if let Some(c) = &self.counterexample {
            r.push("counterexample", c.render(false).replace('\t', " "));
        }
        r.render(json)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub q: u64,
    pub n: u64,
    pub strings: u64,
    pub necklaces: u128,
    pub functions: u128,
    pub formula: u128,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn summary(&self, json: bool) -> String {
        Record::new()
            .with("q", self.q)
            .with("n", self.n)
            .with("strings", self.strings)
            .with("necklaces", self.necklaces)
            .with("functions", self.functions)
            .with("formula", self.formula)
            .with("status", if self.passed() { "PASS" } else { "FAIL" })
            .render(json)
    }
}

/// `q^n`, refused above `cap`.
pub fn enumeration_size(q: u64, n: u64, cap: u64) -> Result<u64> {
    let size = u32::try_from(n)
        .ok()
        .and_then(|e| checked_pow(q, e).ok())
        .filter(|&s| s <= cap)
        .ok_or_else(|| Error::TooLarge(format!("q^n = {q}^{n} exceeds the enumeration cap {cap}")))?;
    Ok(size)
}

fn digits(mut index: u64, q: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = index % q;
            index /= q;
            d
        })
        .collect()
}

/// All least-rotation strings of length `n` over `q` codes, sorted.
pub fn canonical_strings(q: u64, n: u64, cap: u64) -> Result<Vec<Vec<u64>>> {
    let size = enumeration_size(q, n, cap)?;
    let mut out: Vec<Vec<u64>> = (0..size)
        .into_par_iter()
        .map(|i| digits(i, q, n as usize))
        .filter(|codes| least_rotation(codes).0 == 0)
        .collect();
    out.par_sort_unstable();
    Ok(out)
}

/// Everything checked for one canonical necklace.
struct NecklaceCase {
    codes: Vec<u64>,
    support: Vec<usize>,
    image: MultisetFunction,
    failures: Vec<(&'static str, Record)>,
}

fn check_necklace(ctx: &BijectionContext, codes: Vec<u64>) -> Result<NecklaceCase> {
    let base = ctx.unity().base();
    let alpha = RingElement::from_codes(base, &codes)?;
    let necklace = ctx.unity().canonical_necklace(&alpha);
    let mapped = ctx.map_necklace(&necklace)?;
    let image = mapped.image;
    let support = mapped.support;
    let mut failures = Vec::new();
    let witness = || Record::new().with("necklace", codes.clone());

    if image.weighted_sum() != 0 || ctx.level_support(&image) != support {
        failures.push((
            "membership",
            witness()
                .with("function", image.values().to_vec())
                .with("weighted_sum", image.weighted_sum())
                .with("block", Value::Block(support.clone()))
                .with("level_block", Value::Block(ctx.level_support(&image))),
        ));
    }

    let back = ctx.multiset_to_necklace(&image)?;
    if back.representative().codes(base) != codes {
        failures.push((
            "roundtrip_necklace",
            witness()
                .with("function", image.values().to_vec())
                .with("returned", back.representative().codes(base)),
        ));
    }

    let orbit = necklace.orbit_size();
    if orbit as u64 != orbit_size_formula(&support, ctx.cosets()) {
        failures.push(("orbit_size", witness().with("orbit_size", orbit)));
    }

    // every rotation is mapped directly; exactly one may land in F
    let zero_rotations: Vec<usize> = (0..ctx.n() as usize)
        .map(|k| Ok((k, ctx.block_map(&alpha.rotate(k))?.weighted_sum())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&(_, s)| s == 0)
        .map(|(k, _)| k)
        .collect();
    let distinct: Vec<usize> = zero_rotations.iter().copied().filter(|&k| k < orbit).collect();
    let periodic = zero_rotations
        .iter()
        .all(|&k| k % orbit == distinct.first().copied().unwrap_or(usize::MAX));
    if distinct != [mapped.rotation] || !periodic {
        failures.push((
            "beta_unique",
            witness().with("rotation", mapped.rotation).with(
                "zero_rotations",
                zero_rotations.iter().map(|&k| k as u64).collect::<Vec<_>>(),
            ),
        ));
    }

    Ok(NecklaceCase {
        codes,
        support,
        image,
        failures,
    })
}

fn outcome(name: &'static str, cases: u128, counterexample: Option<Record>) -> CheckOutcome {
    CheckOutcome {
        name,
        cases,
        counterexample,
    }
}

/// Enumerate both sides for `(q, n)` and check the bijection. `Err` only for
/// invalid parameters or when an evaluation itself fails.
pub fn verify(q: u64, n: u64, cap: u64) -> Result<VerifyReport> {
    let strings = enumeration_size(q, n, cap)?;
    let ctx = BijectionContext::new(q, n)?;
    let report = count_formula(q, n)?;
    let formula = report.total;

    let necklaces = canonical_strings(q, n, cap)?;
    let cases = necklaces
        .into_par_iter()
        .map(|codes| check_necklace(&ctx, codes))
        .collect::<Result<Vec<_>>>()?;

    let functions: Vec<MultisetFunction> = (0..strings)
        .into_par_iter()
        .map(|i| MultisetFunction::new(digits(i, q, n as usize), q).expect("digits are below q"))
        .filter(|f| f.weighted_sum() == 0)
        .collect();
    let function_failures: Vec<Record> = functions
        .par_iter()
        .map(|f| -> Result<Option<Record>> {
            let image = ctx.necklace_to_multiset(&ctx.multiset_to_necklace(f)?)?;
            Ok((&image != f).then(|| {
                Record::new()
                    .with("function", f.values().to_vec())
                    .with("returned", image.values().to_vec())
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let necklace_count = cases.len() as u128;
    let function_count = functions.len() as u128;
    let mut checks = Vec::new();
    let count_mismatch =
        |actual: u128| (actual != formula).then(|| Record::new().with("expected", formula).with("actual", actual));
    checks.push(outcome("necklace_count", 1, count_mismatch(necklace_count)));
    checks.push(outcome("function_count", 1, count_mismatch(function_count)));

    let first_failure = |name: &str| {
        cases
            .iter()
            .flat_map(|c| &c.failures)
            .find(|(check, _)| *check == name)
            .map(|(_, r)| r.clone())
    };
    checks.push(outcome("membership", necklace_count, first_failure("membership")));

    let mut images: Vec<(&MultisetFunction, &[u64])> = cases.iter().map(|c| (&c.image, &c.codes[..])).collect();
    images.par_sort_unstable();
    let collision = images.windows(2).find(|w| w[0].0 == w[1].0).map(|w| {
        Record::new()
            .with("function", w[0].0.values().to_vec())
            .with("necklace", w[0].1.to_vec())
            .with("other", w[1].1.to_vec())
    });
    checks.push(outcome("injective", necklace_count, collision));

    // `functions` is in index order; compare as sorted sets
    let mut expected_images: Vec<&MultisetFunction> = functions.iter().collect();
    expected_images.par_sort_unstable();
    let missed = expected_images
        .iter()
        .find(|f| images.binary_search_by(|(g, _)| g.cmp(f)).is_err())
        .map(|f| Record::new().with("function", f.values().to_vec()));
    checks.push(outcome("surjective", function_count, missed));

    let (blocks, mismatch) = block_mismatch(&ctx, &cases, &functions, report.terms.is_some())?;
    checks.push(outcome("blocks", blocks, mismatch));
    checks.push(outcome(
        "roundtrip_necklace",
        necklace_count,
        first_failure("roundtrip_necklace"),
    ));
    checks.push(outcome(
        "roundtrip_function",
        function_count,
        function_failures.into_iter().next(),
    ));
    checks.push(outcome("beta_unique", necklace_count, first_failure("beta_unique")));
    checks.push(outcome("orbit_size", necklace_count, first_failure("orbit_size")));

    Ok(VerifyReport {
        q,
        n,
        strings,
        necklaces: necklace_count,
        functions: function_count,
        formula,
        checks,
    })
}

/// `|N_I| = |F_I| = ` block formula for every `I`: all `2^m` blocks when
/// they can be listed, otherwise every block that occurs.
fn block_mismatch(
    ctx: &BijectionContext,
    cases: &[NecklaceCase],
    functions: &[MultisetFunction],
    all_blocks: bool,
) -> Result<(u128, Option<Record>)> {
    let mut tallies: BTreeMap<Vec<usize>, (u128, u128)> = BTreeMap::new();
    if all_blocks {
        let m = ctx.cosets().len();
        for mask in 0u64..1 << m {
            tallies.insert((0..m).filter(|&i| mask >> i & 1 == 1).collect(), (0, 0));
        }
    }
    for c in cases {
        tallies.entry(c.support.clone()).or_default().0 += 1;
    }
    for f in functions {
        tallies.entry(ctx.level_support(f)).or_default().1 += 1;
    }
    let blocks = tallies.len() as u128;
    for (block, (necklaces, functions)) in tallies {
        let expected = count_block_formula(ctx.q(), ctx.n(), &block)?;
        if necklaces != expected || functions != expected {
            let record = Record::new()
                .with("block", Value::Block(block))
                .with("expected", expected)
                .with("necklaces", necklaces)
                .with("functions", functions);
            return Ok((blocks, Some(record)));
        }
    }
    Ok((blocks, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances_pass() {
        for (q, n) in [(2u64, 3u64), (2, 5), (3, 4), (4, 3), (5, 2), (2, 1), (7, 1)] {
            let report = verify(q, n, DEFAULT_CAP).unwrap();
            assert!(report.passed(), "{}", report.summary(false));
            assert_eq!(report.checks.len(), CHECKS.len());
            for (c, name) in report.checks.iter().zip(CHECKS) {
                assert_eq!(c.name, name);
            }
        }
        let r = verify(4, 3, DEFAULT_CAP).unwrap();
        assert_eq!((r.strings, r.necklaces, r.functions, r.formula), (64, 24, 24, 24));
    }

    #[test]
    fn refuses_above_cap() {
        assert!(matches!(verify(2, 21, DEFAULT_CAP), Err(Error::TooLarge(_))));
        assert!(matches!(verify(2, 4, DEFAULT_CAP), Err(Error::NotCoprime { .. })));
        assert!(matches!(verify(6, 5, DEFAULT_CAP), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn canonical_strings_n3_q2() {
        let s = canonical_strings(2, 3, DEFAULT_CAP).unwrap();
        assert_eq!(s, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]);
    }
}
