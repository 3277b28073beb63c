//! High-precision oracle shared by the integration suites.
//!
//! All reference values come from astro-float at 320-bit precision, fully
//! independent of the rational interval path under test. Comparisons
//! happen in exact rational arithmetic after converting the float result,
//! with an outward slack of 2^-150 absorbing the oracle's own rounding.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::BTreeMap;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use rand::rngs::StdRng;
use rand::Rng;

use rigor_core::{Context, Expr, Interval, Rational};

pub const PREC: usize = 320;
const RM: RoundingMode = RoundingMode::None;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Exact conversion of a rational to a BigFloat quotient at a precision
/// wide enough that only the final division rounds.
pub fn to_bigfloat(q: &Rational) -> BigFloat {
    let num_bits = q.numer().bits() as usize;
    let den_bits = q.denom().bits() as usize;
    let p = (num_bits.max(den_bits).max(PREC) / 64 + 2) * 64;
    with_consts(|cc| {
        let num = BigFloat::parse(&q.numer().to_string(), Radix::Dec, p, RM, cc);
        let den = BigFloat::parse(&q.denom().to_string(), Radix::Dec, p, RM, cc);
        num.div(&den, p, RM)
    })
}

/// Exact conversion back: a finite BigFloat is `mantissa * 2^(exp - bits)`.
pub fn to_rational(bf: &BigFloat) -> Rational {
    assert!(!bf.is_nan() && !bf.is_inf(), "oracle produced {bf:?}");
    if bf.is_zero() {
        return Rational::zero();
    }
    let (words, _prec, sign, exp, _inexact) = bf.as_raw_parts().expect("finite float");
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let mantissa = BigInt::from_bytes_le(IntSign::Plus, &bytes);
    let mantissa = if sign == Sign::Neg { -mantissa } else { mantissa };
    let shift = exp as i64 - (words.len() as i64) * 64;
    if shift >= 0 {
        Rational::from_int(mantissa << shift as u64)
    } else {
        Rational::new(mantissa, BigInt::from(1) << (-shift) as u64).expect("positive denominator")
    }
}

/// Outward slack `2^-150` for oracle comparisons.
pub fn slack() -> Rational {
    Rational::new(1, BigInt::from(1) << 150).expect("positive denominator")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Sin,
    Cos,
    Tan,
    Atan,
    Exp,
    Ln,
}

pub const ALL_FUNCS: [Func; 7] = [
    Func::Sqrt,
    Func::Sin,
    Func::Cos,
    Func::Tan,
    Func::Atan,
    Func::Exp,
    Func::Ln,
];

/// 512-bit reference value of `f(x)` as an exact rational.
pub fn oracle(f: Func, x: &Rational) -> Rational {
    let xf = to_bigfloat(x);
    let y = with_consts(|cc| match f {
        Func::Sqrt => xf.sqrt(PREC, RM),
        Func::Sin => xf.sin(PREC, RM, cc),
        Func::Cos => xf.cos(PREC, RM, cc),
        Func::Tan => xf.tan(PREC, RM, cc),
        Func::Atan => xf.atan(PREC, RM, cc),
        Func::Exp => xf.exp(PREC, RM, cc),
        Func::Ln => xf.ln(PREC, RM, cc),
    });
    to_rational(&y)
}

/// 512-bit reference value of pi.
pub fn oracle_pi() -> Rational {
    let pi = with_consts(|cc| cc.pi(PREC, RM));
    to_rational(&pi)
}

/// `lb <= f(x) <= ub` up to the oracle slack.
pub fn check_enclosure(lb: &Rational, ub: &Rational, reference: &Rational) -> bool {
    let s = slack();
    lb <= &(reference + &s) && &(reference - &s) <= ub
}

/// Point evaluation of an expression with the oracle. Returns `None` when
/// the value is undefined (division by zero, log of a nonpositive number,
/// square root of a negative number, tangent at a pole).
pub fn oracle_eval(e: &Expr, point: &BTreeMap<String, Rational>) -> Option<Rational> {
    let bf = oracle_eval_float(e, point)?;
    if bf.is_nan() || bf.is_inf() {
        return None;
    }
    Some(to_rational(&bf))
}

fn oracle_eval_float(e: &Expr, point: &BTreeMap<String, Rational>) -> Option<BigFloat> {
    let finite = |bf: BigFloat| {
        if bf.is_nan() || bf.is_inf() {
            None
        } else {
            Some(bf)
        }
    };
    match e {
        Expr::Const(q) => Some(to_bigfloat(q)),
        Expr::Var(name) => Some(to_bigfloat(point.get(name)?)),
        Expr::Pi => Some(with_consts(|cc| cc.pi(PREC, RM))),
        Expr::Add(a, b) => {
            let (a, b) = (oracle_eval_float(a, point)?, oracle_eval_float(b, point)?);
            finite(a.add(&b, PREC, RM))
        }
        Expr::Sub(a, b) => {
            let (a, b) = (oracle_eval_float(a, point)?, oracle_eval_float(b, point)?);
            finite(a.sub(&b, PREC, RM))
        }
        Expr::Mul(a, b) => {
            let (a, b) = (oracle_eval_float(a, point)?, oracle_eval_float(b, point)?);
            finite(a.mul(&b, PREC, RM))
        }
        Expr::Div(a, b) => {
            let (a, b) = (oracle_eval_float(a, point)?, oracle_eval_float(b, point)?);
            if b.is_zero() {
                return None;
            }
            finite(a.div(&b, PREC, RM))
        }
        Expr::Neg(a) => Some(oracle_eval_float(a, point)?.neg()),
        Expr::Abs(a) => Some(oracle_eval_float(a, point)?.abs()),
        Expr::PowNat(a, k) => {
            let a = oracle_eval_float(a, point)?;
            finite(a.powi(*k as usize, PREC, RM))
        }
        Expr::Sqrt(a) => finite(oracle_eval_float(a, point)?.sqrt(PREC, RM)),
        Expr::Sin(a) => {
            let a = oracle_eval_float(a, point)?;
            finite(with_consts(|cc| a.sin(PREC, RM, cc)))
        }
        Expr::Cos(a) => {
            let a = oracle_eval_float(a, point)?;
            finite(with_consts(|cc| a.cos(PREC, RM, cc)))
        }
        Expr::Tan(a) => {
            let a = oracle_eval_float(a, point)?;
            finite(with_consts(|cc| a.tan(PREC, RM, cc)))
        }
        Expr::Exp(a) => {
            let a = oracle_eval_float(a, point)?;
            finite(with_consts(|cc| a.exp(PREC, RM, cc)))
        }
        Expr::Ln(a) => {
            let a = oracle_eval_float(a, point)?;
            finite(with_consts(|cc| a.ln(PREC, RM, cc)))
        }
        Expr::Atan(a) => {
            let a = oracle_eval_float(a, point)?;
            finite(with_consts(|cc| a.atan(PREC, RM, cc)))
        }
    }
}

/// Uniform random rational with denominator up to `2^20`, scaled into
/// `[lo, hi]`.
pub fn sample_rational(rng: &mut StdRng, lo: &Rational, hi: &Rational) -> Rational {
    let scale: u32 = 1 << 20;
    let k = rng.gen_range(0..=scale);
    let frac = Rational::new(k as i64, scale as i64).expect("positive denominator");
    lo + &(&frac * &(hi - lo))
}

/// Random point inside a nonempty interval.
pub fn sample_in(rng: &mut StdRng, iv: &Interval) -> Rational {
    sample_rational(rng, iv.lb(), iv.ub())
}

/// Random nonempty interval with both endpoints in `[lo, hi]`.
pub fn sample_interval(rng: &mut StdRng, lo: &Rational, hi: &Rational) -> Interval {
    let a = sample_rational(rng, lo, hi);
    let b = sample_rational(rng, lo, hi);
    if a <= b {
        Interval::new(a, b)
    } else {
        Interval::new(b, a)
    }
}

/// Random point assignment drawn from a context.
pub fn sample_point(rng: &mut StdRng, ctx: &Context) -> BTreeMap<String, Rational> {
    ctx.iter()
        .map(|(name, iv)| (name.clone(), sample_in(rng, iv)))
        .collect()
}

fn sample_leaf(rng: &mut StdRng, vars: &[&String]) -> Expr {
    match rng.gen_range(0..5) {
        0 => Expr::Pi,
        1 | 2 => {
            let n = rng.gen_range(-8i64..=8);
            let d = rng.gen_range(1i64..=8);
            Expr::Const(Rational::new(n, d).expect("positive denominator"))
        }
        _ => {
            if vars.is_empty() {
                Expr::constant(1)
            } else {
                Expr::var(vars[rng.gen_range(0..vars.len())].clone())
            }
        }
    }
}

/// Small expression with values of moderate magnitude, used where a large
/// argument would make the exact rational series pathologically expensive
/// (exponentials and powers of exponentials).
fn sample_gentle(rng: &mut StdRng, vars: &[&String]) -> Expr {
    let bx = Box::new;
    match rng.gen_range(0..7) {
        0 => Expr::Add(bx(sample_leaf(rng, vars)), bx(sample_leaf(rng, vars))),
        1 => Expr::Sub(bx(sample_leaf(rng, vars)), bx(sample_leaf(rng, vars))),
        2 => Expr::Mul(bx(sample_leaf(rng, vars)), bx(sample_leaf(rng, vars))),
        3 => Expr::Neg(bx(sample_leaf(rng, vars))),
        4 => Expr::Sin(bx(sample_leaf(rng, vars))),
        5 => Expr::Atan(bx(sample_leaf(rng, vars))),
        _ => sample_leaf(rng, vars),
    }
}

/// Random expression over the variables of `ctx`, depth-bounded; used for
/// inclusion sampling. Constants stay small so values remain moderate.
pub fn sample_expr(rng: &mut StdRng, ctx: &Context, depth: u32) -> Expr {
    let vars: Vec<&String> = ctx.names().collect();
    sample_expr_inner(rng, &vars, depth)
}

fn sample_expr_inner(rng: &mut StdRng, vars: &[&String], depth: u32) -> Expr {
    if depth == 0 {
        return sample_leaf(rng, vars);
    }
    let bx = Box::new;
    match rng.gen_range(0..16) {
        0 => sample_leaf(rng, vars),
        1 => Expr::Add(
            bx(sample_expr_inner(rng, vars, depth - 1)),
            bx(sample_expr_inner(rng, vars, depth - 1)),
        ),
        2 => Expr::Sub(
            bx(sample_expr_inner(rng, vars, depth - 1)),
            bx(sample_expr_inner(rng, vars, depth - 1)),
        ),
        3 => Expr::Mul(
            bx(sample_expr_inner(rng, vars, depth - 1)),
            bx(sample_expr_inner(rng, vars, depth - 1)),
        ),
        4 => Expr::Div(
            bx(sample_expr_inner(rng, vars, depth - 1)),
            bx(sample_expr_inner(rng, vars, depth - 1)),
        ),
        5 => Expr::Neg(bx(sample_expr_inner(rng, vars, depth - 1))),
        6 => Expr::Abs(bx(sample_expr_inner(rng, vars, depth - 1))),
        7 => Expr::PowNat(
            bx(sample_expr_inner(rng, vars, depth - 1)),
            rng.gen_range(0..=4),
        ),
        8 => Expr::Sqrt(bx(sample_expr_inner(rng, vars, depth - 1))),
        9 => Expr::Sin(bx(sample_expr_inner(rng, vars, depth - 1))),
        10 => Expr::Cos(bx(sample_expr_inner(rng, vars, depth - 1))),
        11 => Expr::Tan(bx(sample_expr_inner(rng, vars, depth - 1))),
        12 => Expr::Exp(bx(sample_gentle(rng, vars))),
        13 => Expr::Ln(bx(sample_expr_inner(rng, vars, depth - 1))),
        14 => Expr::Atan(bx(sample_expr_inner(rng, vars, depth - 1))),
        _ => sample_leaf(rng, vars),
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("positive denominator")
}
