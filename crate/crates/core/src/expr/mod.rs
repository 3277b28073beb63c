//! The expression language: abstract syntax, concrete syntax, interval
//! evaluation, symbolic differentiation and semantics-preserving rewrites.

mod ast;
mod diff;
mod eval;
mod parse;
mod rewrite;
mod simplify;

pub use ast::{Context, Expr};
pub use diff::{diff, diff_n};
pub use eval::eval_interval;
pub use parse::{fold_constant, parse, parse_interval, parse_proposition};
pub use rewrite::rewrite_exact;
pub use simplify::simplify;
