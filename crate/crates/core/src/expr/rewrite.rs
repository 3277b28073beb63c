//! Exact-value rewrites for trigonometric functions at notable angles.
//!
//! `sin`, `cos` and `tan` applied to a syntactic rational multiple of pi
//! with denominator 1, 2, 3, 4 or 6 are replaced by their exact value,
//! expressed within the grammar (`sin(pi/4)` becomes `sqrt(2)/2`). This
//! runs as a prover pre-pass; it is what makes propositions like
//! `sin(pi/2) in [1, 1]` provable at all, since the interval operators
//! alone never produce a point enclosure for them. Odd multiples of
//! `pi/2` under `tan` are left alone — the function is undefined there
//! and interval evaluation reports the violated side condition.

use crate::expr::ast::Expr;
use crate::rational::Rational;

/// Applies the notable-angle table everywhere it matches; all other nodes
/// are rebuilt unchanged.
pub fn rewrite_exact(e: &Expr) -> Expr {
    let bx = Box::new;
    match e {
        Expr::Const(_) | Expr::Var(_) | Expr::Pi => e.clone(),
        Expr::Add(a, b) => Expr::Add(bx(rewrite_exact(a)), bx(rewrite_exact(b))),
        Expr::Sub(a, b) => Expr::Sub(bx(rewrite_exact(a)), bx(rewrite_exact(b))),
        Expr::Mul(a, b) => Expr::Mul(bx(rewrite_exact(a)), bx(rewrite_exact(b))),
        Expr::Div(a, b) => Expr::Div(bx(rewrite_exact(a)), bx(rewrite_exact(b))),
        Expr::Neg(a) => Expr::Neg(bx(rewrite_exact(a))),
        Expr::Abs(a) => Expr::Abs(bx(rewrite_exact(a))),
        Expr::PowNat(a, k) => Expr::PowNat(bx(rewrite_exact(a)), *k),
        Expr::Sqrt(a) => Expr::Sqrt(bx(rewrite_exact(a))),
        Expr::Exp(a) => Expr::Exp(bx(rewrite_exact(a))),
        Expr::Ln(a) => Expr::Ln(bx(rewrite_exact(a))),
        Expr::Atan(a) => Expr::Atan(bx(rewrite_exact(a))),
        Expr::Sin(a) => rewrite_trig(a, Trig::Sin, Expr::Sin),
        Expr::Cos(a) => rewrite_trig(a, Trig::Cos, Expr::Cos),
        Expr::Tan(a) => rewrite_trig(a, Trig::Tan, Expr::Tan),
    }
}

#[derive(Clone, Copy)]
enum Trig {
    Sin,
    Cos,
    Tan,
}

fn rewrite_trig(arg: &Expr, f: Trig, rebuild: fn(Box<Expr>) -> Expr) -> Expr {
    let arg = rewrite_exact(arg);
    if let Some(q) = pi_multiple(&arg) {
        if let Some(value) = exact_value(f, &q) {
            return value;
        }
    }
    rebuild(Box::new(arg))
}

/// Recognizes `q * pi` shapes built from `pi`, constants, negation,
/// multiplication and division; the literal `0` counts as `0 * pi`.
fn pi_multiple(e: &Expr) -> Option<Rational> {
    match e {
        Expr::Pi => Some(Rational::one()),
        Expr::Const(q) if q.is_zero() => Some(Rational::zero()),
        Expr::Neg(a) => pi_multiple(a).map(|q| -q),
        Expr::Mul(a, b) => match (a.as_ref(), b.as_ref()) {
            (Expr::Const(c), other) | (other, Expr::Const(c)) => {
                pi_multiple(other).map(|q| &q * c)
            }
            _ => None,
        },
        Expr::Div(a, b) => match b.as_ref() {
            Expr::Const(c) if !c.is_zero() => {
                pi_multiple(a).map(|q| q.checked_div(c).expect("nonzero"))
            }
            _ => None,
        },
        _ => None,
    }
}

fn sqrt_frac(radicand: i64, denom: i64) -> Expr {
    let root = Expr::Sqrt(Box::new(Expr::constant(radicand)));
    if denom == 1 {
        root
    } else {
        Expr::Div(Box::new(root), Box::new(Expr::constant(denom)))
    }
}

fn negated(e: Expr) -> Expr {
    match e {
        Expr::Const(q) => Expr::Const(-q),
        other => Expr::Neg(Box::new(other)),
    }
}

/// Exact value of `f(q * pi)`, when the reduced denominator of `q` is in
/// {1, 2, 3, 4, 6} and the value exists.
fn exact_value(f: Trig, q: &Rational) -> Option<Expr> {
    // reduce mod the period: 2 for sin/cos, 1 for tan
    let period = match f {
        Trig::Tan => Rational::one(),
        _ => Rational::from(2),
    };
    let turns = q.checked_div(&period).expect("nonzero period");
    let r = q - &(&period * &Rational::from(turns.floor_int()));
    let denom = u32::try_from(r.denom().clone()).ok()?;
    if ![1, 2, 3, 4, 6].contains(&denom) {
        return None;
    }
    let numer = i64::try_from(r.numer().clone()).ok()?;
    let half = Rational::new(1, 2).expect("nonzero");
    match f {
        Trig::Tan => {
            // r in [0, 1) with denominator 1, 2, 3, 4 or 6
            match (numer, denom) {
                (0, 1) => Some(Expr::constant(0)),
                (1, 6) => Some(sqrt_frac(3, 3)),
                (1, 4) => Some(Expr::constant(1)),
                (1, 3) => Some(sqrt_frac(3, 1)),
                (1, 2) => None, // undefined: leave for interval evaluation
                (2, 3) => Some(negated(sqrt_frac(3, 1))),
                (3, 4) => Some(negated(Expr::constant(1))),
                (5, 6) => Some(negated(sqrt_frac(3, 3))),
                _ => None,
            }
        }
        Trig::Cos => exact_value(Trig::Sin, &(&r + &half)),
        Trig::Sin => {
            // r in [0, 2); fold the odd half-turn into a sign
            let (numer, sign) = if r >= Rational::one() {
                (numer - denom as i64, true)
            } else {
                (numer, false)
            };
            let value = match (numer, denom) {
                (0, 1) => Expr::constant(0),
                (1, 6) => Expr::Const(half),
                (1, 4) => sqrt_frac(2, 2),
                (1, 3) => sqrt_frac(3, 2),
                (1, 2) => Expr::constant(1),
                (2, 3) => sqrt_frac(3, 2),
                (3, 4) => sqrt_frac(2, 2),
                (5, 6) => Expr::Const(half),
                _ => return None,
            };
            Some(if sign { negated(value) } else { value })
        }
    }
}
