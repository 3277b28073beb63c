use crate::bounds::ApproxParam;
use crate::elementary::{atan_i, cos_i, exp_i, ln_i, pi_i, sin_i, sqrt_i, tan_i};
use crate::error::Error;
use crate::expr::ast::{Context, Expr};
use crate::interval::Interval;

/// Interval evaluation of an expression under a ground context.
///
/// Structural recursion: constants become point intervals, variables their
/// context interval, operators and functions their interval counterparts
/// at approximation parameter `n`. A failed side condition anywhere yields
/// the empty interval, which propagates to the result; the only hard error
/// is a variable missing from the context.
///
/// When `round_bits` is set, every intermediate interval is widened
/// outward to dyadic endpoints with that many fractional bits, which keeps
/// denominators small at the cost of tightness.
pub fn eval_interval(
    e: &Expr,
    ctx: &Context,
    n: ApproxParam,
    round_bits: Option<u32>,
) -> Result<Interval, Error> {
    let out = |iv: Interval| match round_bits {
        Some(bits) => iv.round_outward(bits),
        None => iv,
    };
    let result = match e {
        Expr::Const(q) => Interval::point(q.clone()),
        Expr::Var(name) => ctx
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(name.clone()))?,
        Expr::Add(a, b) => {
            let l = eval_interval(a, ctx, n, round_bits)?;
            let r = eval_interval(b, ctx, n, round_bits)?;
            l.add(&r)
        }
        Expr::Sub(a, b) => {
            let l = eval_interval(a, ctx, n, round_bits)?;
            let r = eval_interval(b, ctx, n, round_bits)?;
            l.sub(&r)
        }
        Expr::Mul(a, b) => {
            let l = eval_interval(a, ctx, n, round_bits)?;
            let r = eval_interval(b, ctx, n, round_bits)?;
            l.mul(&r)
        }
        Expr::Div(a, b) => {
            let l = eval_interval(a, ctx, n, round_bits)?;
            let r = eval_interval(b, ctx, n, round_bits)?;
            l.div(&r)
        }
        Expr::Neg(a) => eval_interval(a, ctx, n, round_bits)?.neg(),
        Expr::Abs(a) => eval_interval(a, ctx, n, round_bits)?.abs(),
        Expr::PowNat(a, k) => eval_interval(a, ctx, n, round_bits)?.pow(*k),
        Expr::Sqrt(a) => sqrt_i(&eval_interval(a, ctx, n, round_bits)?, n),
        Expr::Pi => pi_i(n),
        Expr::Sin(a) => sin_i(&eval_interval(a, ctx, n, round_bits)?, n),
        Expr::Cos(a) => cos_i(&eval_interval(a, ctx, n, round_bits)?, n),
        Expr::Tan(a) => tan_i(&eval_interval(a, ctx, n, round_bits)?, n),
        Expr::Exp(a) => exp_i(&eval_interval(a, ctx, n, round_bits)?, n),
        Expr::Ln(a) => ln_i(&eval_interval(a, ctx, n, round_bits)?, n),
        Expr::Atan(a) => atan_i(&eval_interval(a, ctx, n, round_bits)?, n),
    };
    Ok(out(result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::rational::Rational;

    fn ctx_unit() -> Context {
        Context::new().with("x", Interval::from_ints(0, 1))
    }

    #[test]
    fn dependency_effect_examples() {
        let e = parse("2*x - x").unwrap();
        assert_eq!(
            eval_interval(&e, &ctx_unit(), 3, None).unwrap(),
            Interval::from_ints(-1, 2)
        );
        let half = Context::new().with(
            "x",
            Interval::new(Rational::zero(), Rational::new(1, 2).unwrap()),
        );
        assert_eq!(
            eval_interval(&e, &half, 3, None).unwrap(),
            Interval::new(Rational::new(-1, 2).unwrap(), Rational::one())
        );
    }

    #[test]
    fn side_condition_failures_yield_empty() {
        let ctx = Context::new();
        for text in ["5/0", "1/(1-1)", "ln(0)", "sqrt(0-4)", "tan(2)"] {
            let e = parse(text).unwrap();
            assert!(
                eval_interval(&e, &ctx, 3, None).unwrap().is_empty(),
                "{text}"
            );
        }
        // the empty propagates through enclosing operations
        let e = parse("1 + 5/0").unwrap();
        assert!(eval_interval(&e, &ctx, 3, None).unwrap().is_empty());
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let e = parse("x + y").unwrap();
        assert_eq!(
            eval_interval(&e, &ctx_unit(), 3, None),
            Err(Error::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn rounding_only_widens() {
        let e = parse("x*(1-x) + atan(x)").unwrap();
        let exact = eval_interval(&e, &ctx_unit(), 3, None).unwrap();
        for bits in [4, 16, 64] {
            let rounded = eval_interval(&e, &ctx_unit(), 3, Some(bits)).unwrap();
            assert!(exact.subset_of(&rounded), "bits={bits}");
        }
    }

    #[test]
    fn widening_context_widens_result() {
        let e = parse("x^2 - x").unwrap();
        let narrow = eval_interval(&e, &ctx_unit(), 3, None).unwrap();
        let wide_ctx = Context::new().with("x", Interval::from_ints(-1, 2));
        let wide = eval_interval(&e, &wide_ctx, 3, None).unwrap();
        assert!(narrow.subset_of(&wide));
    }
}
