//! Exact symbolic algebra for corner rings R = A + vK and their Ore
//! extensions R[x; sigma, delta], with decision procedures for when principal
//! right ideals are two-sided, plus independent brute-force oracles.
//!
//! Layers, bottom up:
//! - [`exact_algebra`]: rationals/prime fields, sparse multivariate
//!   polynomials, reduced rational functions, a parser, a linear solver.
//! - [`maps`]: the injective endomorphism phi, the quotient map onto K,
//!   image membership and transcendence certificates.
//! - [`corner_ring`]: R = A + vK, sigma, the sigma-derivations and their
//!   classification, duo diagnostics for R.
//! - [`ore_poly`]: skew polynomials, the T decomposition, exact right-ideal
//!   membership, the two-sidedness classifier, and the linear-solve probe.
//! - [`lab_cli`]: scenarios, presets, commands, machine-readable reports.

pub mod corner_ring;
pub mod exact_algebra;
pub mod lab_cli;
pub mod maps;
pub mod ore_poly;
