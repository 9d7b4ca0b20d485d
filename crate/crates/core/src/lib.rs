//! Necklaces of length `n` over `q` colours and multisets of `Z_n` with
//! multiplicities below `q` and sum divisible by `n`.
//!
//! For coprime `q` and `n` both sets have the size given by
//! [`counting::count_formula`]. When `q` is also a prime power,
//! [`bijection::BijectionContext`] maps one onto the other explicitly by
//! reading necklaces as elements of `F_q[X]/(X^n - 1)`.

pub mod autgroup;
pub mod bijection;
pub mod cli;
pub mod counting;
pub mod cyclic;
pub mod dlog;
pub mod error;
pub mod gf;
pub mod numtheory;

pub use bijection::{BijectionContext, MultisetFunction, NecklaceImage};
pub use cyclic::{Necklace, RingElement};
pub use error::{Error, Result};
