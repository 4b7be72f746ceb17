//! Exact verification of Poisson, Nijenhuis and Poisson–Nijenhuis structures.
//!
//! The engine works over polynomial data with rational coefficients, so every
//! verdict it reports is decided by exact cancellation rather than by
//! floating-point tolerance. Numeric finite-difference cross-checks live in
//! [`oracle`] and are kept independent of the symbolic code paths.

pub mod expr;
pub mod calculus;
pub mod liealg;
pub mod liegroup;
pub mod groupoid;
pub mod oracle;
pub mod report;
