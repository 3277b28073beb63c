use crate::error::Error;
use crate::expr::ast::Expr;
use crate::expr::simplify::simplify;
use crate::rational::Rational;

/// Symbolic derivative of `e` with respect to `var`, simplified.
///
/// Standard rules throughout; quotients produce a quotient-rule expression
/// whose interval evaluation enforces the nonzero side condition on its
/// own, so no separate domain analysis happens here. Absolute value is
/// rejected when its argument depends on `var`.
pub fn diff(e: &Expr, var: &str) -> Result<Expr, Error> {
    Ok(simplify(&diff_raw(e, var)?))
}

/// `degree`-fold derivative, simplified at each step.
pub fn diff_n(e: &Expr, var: &str, degree: u32) -> Result<Expr, Error> {
    let mut out = e.clone();
    for _ in 0..degree {
        out = diff(&out, var)?;
    }
    Ok(out)
}

fn diff_raw(e: &Expr, var: &str) -> Result<Expr, Error> {
    let zero = || Expr::Const(Rational::zero());
    let bx = Box::new;
    Ok(match e {
        Expr::Const(_) | Expr::Pi => zero(),
        Expr::Var(name) => {
            if name == var {
                Expr::Const(Rational::one())
            } else {
                zero()
            }
        }
        Expr::Add(a, b) => Expr::Add(bx(diff_raw(a, var)?), bx(diff_raw(b, var)?)),
        Expr::Sub(a, b) => Expr::Sub(bx(diff_raw(a, var)?), bx(diff_raw(b, var)?)),
        Expr::Neg(a) => Expr::Neg(bx(diff_raw(a, var)?)),
        Expr::Mul(a, b) => {
            let da = diff_raw(a, var)?;
            let db = diff_raw(b, var)?;
            Expr::Add(
                bx(Expr::Mul(bx(da), b.clone())),
                bx(Expr::Mul(a.clone(), bx(db))),
            )
        }
        Expr::Div(a, b) => {
            // (a'b - ab') / b^2
            let da = diff_raw(a, var)?;
            let db = diff_raw(b, var)?;
            Expr::Div(
                bx(Expr::Sub(
                    bx(Expr::Mul(bx(da), b.clone())),
                    bx(Expr::Mul(a.clone(), bx(db))),
                )),
                bx(Expr::PowNat(b.clone(), 2)),
            )
        }
        Expr::PowNat(a, k) => {
            if *k == 0 {
                zero()
            } else {
                let da = diff_raw(a, var)?;
                Expr::Mul(
                    bx(Expr::Mul(
                        bx(Expr::Const(Rational::from(*k as i64))),
                        bx(Expr::PowNat(a.clone(), k - 1)),
                    )),
                    bx(da),
                )
            }
        }
        Expr::Sqrt(a) => {
            // a' / (2 sqrt(a))
            let da = diff_raw(a, var)?;
            Expr::Div(
                bx(da),
                bx(Expr::Mul(bx(Expr::constant(2)), bx(Expr::Sqrt(a.clone())))),
            )
        }
        Expr::Sin(a) => {
            let da = diff_raw(a, var)?;
            Expr::Mul(bx(Expr::Cos(a.clone())), bx(da))
        }
        Expr::Cos(a) => {
            let da = diff_raw(a, var)?;
            Expr::Neg(bx(Expr::Mul(bx(Expr::Sin(a.clone())), bx(da))))
        }
        Expr::Tan(a) => {
            // (1 + tan(a)^2) a'
            let da = diff_raw(a, var)?;
            Expr::Mul(
                bx(Expr::Add(
                    bx(Expr::Const(Rational::one())),
                    bx(Expr::PowNat(bx(Expr::Tan(a.clone())), 2)),
                )),
                bx(da),
            )
        }
        Expr::Exp(a) => {
            let da = diff_raw(a, var)?;
            Expr::Mul(bx(Expr::Exp(a.clone())), bx(da))
        }
        Expr::Ln(a) => {
            let da = diff_raw(a, var)?;
            Expr::Div(bx(da), a.clone())
        }
        Expr::Atan(a) => {
            // a' / (1 + a^2)
            let da = diff_raw(a, var)?;
            Expr::Div(
                bx(da),
                bx(Expr::Add(
                    bx(Expr::Const(Rational::one())),
                    bx(Expr::PowNat(a.clone(), 2)),
                )),
            )
        }
        Expr::Abs(a) => {
            if a.free_vars().contains(var) {
                return Err(Error::UnsupportedDerivative(
                    "absolute value is not differentiable in the split variable".into(),
                ));
            }
            zero()
        }
    })
}
