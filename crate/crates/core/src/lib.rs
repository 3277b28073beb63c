//! Verified numerics over exact rational arithmetic.
//!
//! This crate proves or refutes numerical propositions about real-valued
//! expressions — inequalities like `e1 >= e2` and interval memberships like
//! `e in [a, b]` — under hypotheses that bind each variable to a constant
//! rational interval. Evaluation is exact: elementary functions are
//! enclosed by provable rational bound pairs, expressions are evaluated in
//! rational interval arithmetic, and the prover tightens enclosures with
//! even interval splitting and interval Taylor forms. Every verdict comes
//! with a certificate of per-tile enclosures that replays bit-for-bit.
//!
//! Layering, bottom to top:
//!
//! * [`rational`] — exact arbitrary-precision rationals.
//! * [`bounds`] — scalar lower/upper bound functions for sqrt, sin, cos,
//!   atan, pi, exp and ln at a chosen approximation depth.
//! * [`interval`] — rational-endpoint intervals and their arithmetic.
//! * [`elementary`] — interval extensions of the elementary functions.
//! * [`expr`] — the expression language: AST, parser, interval evaluation,
//!   symbolic differentiation, simplification, exact-angle rewrites.
//! * [`prover`] — splitting, Taylor forms, verdicts and certificates.

pub mod bounds;
pub mod elementary;
mod error;
pub mod expr;
pub mod interval;
pub mod prover;
pub mod rational;

pub use error::Error;
pub use expr::{Context, Expr};
pub use interval::{Interval, Rel};
pub use prover::{decide, Certificate, ProofOutcome, Proposition, ProverConfig, Verdict};
pub use rational::Rational;
