//! The `necklace` command line.
//!
//! Every subcommand prints line records (see [`record`]). Exit status is 0
//! on success, 1 when a mathematical check fails, and 2 for bad input.

pub mod record;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::bijection::{BijectionContext, MultisetFunction};
use crate::counting::{count_formula, oracle_multiset_count, oracle_necklace_count};
use crate::cyclic::{cyclotomic_cosets, factor_unity, RingElement};
use crate::error::Error;

use record::{Record, Value};
use verify::DEFAULT_CAP;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "necklace",
    version,
    about = "Necklaces over F_q and multisets of Z_n with n-divisible sum"
)]
pub struct Cli {
    /// Emit one JSON object per line instead of tab-separated key=value pairs.
    #[arg(long, global = true)]
    pub json: bool,

    /// For q = 2, read and print functions as subsets of Z_n, e.g. {0,2}.
    #[arg(long, global = true)]
    pub set_notation: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form count with both independent oracles.
    Count {
        q: u64,
        n: u64,
        /// Only run the two oracles; q and n need not be coprime.
        #[arg(long)]
        oracles_only: bool,
    },
    /// Cyclotomic cosets of Z_n under multiplication by q.
    Cosets { q: u64, n: u64 },
    /// Irreducible factors of X^n - 1 over F_q, one per coset.
    Factor { q: u64, n: u64 },
    /// Map the class of a string to its multiset.
    Map {
        q: u64,
        n: u64,
        /// n comma-separated coefficient codes.
        necklace: String,
    },
    /// Map a multiset back to its necklace.
    Invert {
        q: u64,
        n: u64,
        /// n comma-separated values below q (or a set with --set-notation).
        function: String,
    },
    /// The whole bijection, one record per necklace.
    Table {
        q: u64,
        n: u64,
        /// Refuse to enumerate when q^n exceeds this.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Enumerate both sides and check every property of the bijection.
    Verify {
        q: u64,
        n: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

/// Failure of a subcommand, already mapped to an exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) {
            EXIT_MISMATCH
        } else {
            EXIT_USAGE
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    json: bool,
    set_notation: bool,
}

impl Output<'_> {
    fn emit(&mut self, record: &Record) -> Result<(), Failure> {
        self.line(&record.render(self.json))
    }

    fn line(&mut self, text: &str) -> Result<(), Failure> {
        writeln!(self.out, "{text}").map_err(|e| Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        })
    }

    fn function(&self, f: &MultisetFunction) -> Value {
        if self.set_notation {
            Value::Text(f.to_set_string())
        } else {
            Value::Codes(f.values().to_vec())
        }
    }
}

/// Run the command line with explicit arguments and streams; returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let mut output = Output {
        out,
        json: cli.json,
        set_notation: cli.set_notation,
    };
    match dispatch(&cli.command, &mut output) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(command: &Command, out: &mut Output) -> Result<i32, Failure> {
    let q = match *command {
        Command::Count { q, .. }
        | Command::Cosets { q, .. }
        | Command::Factor { q, .. }
        | Command::Map { q, .. }
        | Command::Invert { q, .. }
        | Command::Table { q, .. }
        | Command::Verify { q, .. } => q,
    };
    if out.set_notation && q != 2 {
        return Err(usage("--set-notation requires q = 2"));
    }
    match command {
        &Command::Count { q, n, oracles_only } => cmd_count(q, n, oracles_only, out),
        &Command::Cosets { q, n } => cmd_cosets(q, n, out),
        &Command::Factor { q, n } => cmd_factor(q, n, out),
        Command::Map { q, n, necklace } => cmd_map(*q, *n, necklace, out),
        Command::Invert { q, n, function } => cmd_invert(*q, *n, function, out),
        &Command::Table { q, n, cap } => cmd_table(q, n, cap, out),
        &Command::Verify { q, n, cap } => cmd_verify(q, n, cap, out),
    }
}

fn positive(q: u64, n: u64) -> Result<(), Failure> {
    if q == 0 || n == 0 {
        return Err(usage("q and n must be at least 1"));
    }
    Ok(())
}

fn status(ok: bool) -> &'static str {
    if ok {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn cmd_count(q: u64, n: u64, oracles_only: bool, out: &mut Output) -> Result<i32, Failure> {
    positive(q, n)?;
    if oracles_only {
        // informational: for non-coprime input the two sides may differ
        let necklaces = oracle_necklace_count(q, n)?;
        let multisets = oracle_multiset_count(q, n)?;
        out.emit(
            &Record::new()
                .with("q", q)
                .with("n", n)
                .with("oracle_necklaces", necklaces)
                .with("oracle_multisets", multisets)
                .with("equal", necklaces == multisets),
        )?;
        return Ok(EXIT_OK);
    }
    let report = count_formula(q, n)?.with_oracles()?;
    for term in report.terms.iter().flatten() {
        out.emit(
            &Record::new()
                .with("block", Value::Block(term.support.clone()))
                .with("gcd", term.gcd)
                .with("count", term.count),
        )?;
    }
    let agree = report.agrees();
    out.emit(
        &Record::new()
            .with("q", q)
            .with("n", n)
            .with("cosets", report.cosets.len())
            .with("total", report.total)
            .with("oracle_necklaces", report.oracle_necklaces.unwrap_or_default())
            .with("oracle_multisets", report.oracle_multisets.unwrap_or_default())
            .with("status", status(agree)),
    )?;
    Ok(if agree { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_cosets(q: u64, n: u64, out: &mut Output) -> Result<i32, Failure> {
    positive(q, n)?;
    let cosets = cyclotomic_cosets(n, q)?;
    for (i, c) in cosets.cosets().iter().enumerate() {
        out.emit(
            &Record::new()
                .with("index", i + 1)
                .with("representative", c.representative)
                .with("size", c.size())
                .with("elements", c.elements.clone()),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_factor(q: u64, n: u64, out: &mut Output) -> Result<i32, Failure> {
    positive(q, n)?;
    let uf = factor_unity(n, q)?;
    let base = uf.base();
    let splitting = uf.splitting();
    let modulus: Vec<u64> = splitting.modulus().iter().map(|c| base.element_code(c)).collect();
    out.emit(
        &Record::new()
            .with("q", q)
            .with("n", n)
            .with("splitting_degree", splitting.degree())
            .with("splitting_modulus", modulus),
    )?;
    for (i, c) in uf.cosets().cosets().iter().enumerate() {
        let factor: Vec<u64> = uf.factor(i).iter().map(|x| base.element_code(x)).collect();
        out.emit(
            &Record::new()
                .with("index", i + 1)
                .with("representative", c.representative)
                .with("size", c.size())
                .with("elements", c.elements.clone())
                .with("factor", factor),
        )?;
    }
    Ok(EXIT_OK)
}

fn codes(ctx: &BijectionContext, alpha: &RingElement) -> Vec<u64> {
    alpha.codes(ctx.unity().base())
}

fn context(q: u64, n: u64) -> Result<BijectionContext, Failure> {
    positive(q, n)?;
    Ok(BijectionContext::new(q, n)?)
}

fn cmd_map(q: u64, n: u64, text: &str, out: &mut Output) -> Result<i32, Failure> {
    let ctx = context(q, n)?;
    let alpha = ctx.parse_element(text)?;
    let mapped = ctx.map_element(&alpha)?;
    let record = Record::new()
        .with("input", codes(&ctx, &alpha))
        .with("necklace", codes(&ctx, mapped.necklace.representative()))
        .with("block", Value::Block(mapped.support.clone()))
        .with("rotation", mapped.rotation)
        .with("function", out.function(&mapped.image));
    out.emit(&record)?;
    Ok(EXIT_OK)
}

fn cmd_invert(q: u64, n: u64, text: &str, out: &mut Output) -> Result<i32, Failure> {
    let ctx = context(q, n)?;
    let f = if out.set_notation {
        MultisetFunction::parse_set(text, n as usize)?
    } else {
        MultisetFunction::parse(text, n as usize, q)?
    };
    let necklace = ctx.multiset_to_necklace(&f)?;
    let record = Record::new()
        .with("function", out.function(&f))
        .with("block", Value::Block(ctx.level_support(&f)))
        .with("necklace", codes(&ctx, necklace.representative()));
    out.emit(&record)?;
    Ok(EXIT_OK)
}

fn cmd_table(q: u64, n: u64, cap: u64, out: &mut Output) -> Result<i32, Failure> {
    positive(q, n)?;
    verify::enumeration_size(q, n, cap)?;
    let ctx = context(q, n)?;
    let rows = table_rows(&ctx, cap)?;
    for row in &rows {
        let record = Record::new()
            .with("block", Value::Block(row.support.clone()))
            .with("necklace", codes(&ctx, row.necklace.representative()))
            .with("rotation", row.rotation)
            .with("function", out.function(&row.image));
        out.emit(&record)?;
    }
    Ok(EXIT_OK)
}

/// Images of all necklaces, sorted by canonical string.
pub fn table_rows(ctx: &BijectionContext, cap: u64) -> crate::Result<Vec<crate::NecklaceImage>> {
    use rayon::prelude::*;
    let base = ctx.unity().base();
    verify::canonical_strings(ctx.q(), ctx.n(), cap)?
        .into_par_iter()
        .map(|codes| {
            let alpha = RingElement::from_codes(base, &codes)?;
            ctx.map_necklace(&ctx.unity().canonical_necklace(&alpha))
        })
        .collect()
}

fn cmd_verify(q: u64, n: u64, cap: u64, out: &mut Output) -> Result<i32, Failure> {
    positive(q, n)?;
    let report = verify::verify(q, n, cap)?;
    for check in &report.checks {
        out.line(&check.to_record(out.json))?;
    }
    out.line(&report.summary(out.json))?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH })
}
