//! Legendre polynomial-quotient binary sequences of period p^2 and their
//! linear complexity.
//!
//! The crate builds the two sequence families (f_u) and (e_u) from
//! polynomial quotients (u^w - u^{wp})/p mod p, computes linear complexity
//! by two independent algorithms (Berlekamp-Massey and the gcd with
//! x^{p^2} - 1), derives the admissible values per (p mod 8, w-class)
//! case, and verifies measurements against them at scale.
//!
//! Module map:
//! - [`numtheory`]: quotients, Legendre symbols, primitive roots mod p^2,
//!   exponent classification and reduction.
//! - [`cyclotomy`]: the level-set partition of the units mod p^2 under the
//!   homomorphism H_w, its character refinement, and class polynomials.
//! - [`seqgen`]: sequence generation, including the class-based
//!   cross-check construction.
//! - [`gf2poly`]: bit-packed GF(2) polynomial arithmetic and the two LC
//!   algorithms.
//! - [`analysis`]: admissible-value oracles, measurement reports, the scan
//!   harness, and the Wieferich prime search.
//! - [`cli`]: the `lpq` binary surface.

pub mod analysis;
pub mod bits;
pub mod cli;
pub mod cyclotomy;
pub mod error;
pub mod gf2poly;
pub mod numtheory;
pub mod seqgen;

pub use error::Error;
