//! Exact-arithmetic tools for deciding whether a complex rank-`m` vector
//! bundle over a `2m`-dimensional complex splits off up to three complex
//! line bundles.
//!
//! The library computes virtual Chern classes in truncated cohomology
//! rings, checks the cohomological hypotheses of the relevant splitting
//! theorems, and over complex projective space runs the Schwarzenberger
//! integrality test. Every computation is carried out in arbitrary
//! precision; verdicts come with machine-checkable certificates or
//! obstruction witnesses.

pub mod algebra;
pub mod chern;
pub mod cli;
pub mod cpm;
pub mod engine;
pub mod ring;
pub mod selftest;
pub mod steenrod;
pub mod symfun;
pub mod tables;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
