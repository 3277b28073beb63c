use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::interval::Interval;
use crate::rational::Rational;

/// Abstract syntax of arithmetic expressions.
///
/// Constructors mirror the supported grammar exactly: rational constants,
/// variables, the four field operations, negation, absolute value, powers
/// with natural-number literal exponents, square root, pi, and the six
/// elementary transcendental functions. Nothing else.
#[derive(Clone, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Abs(Box<Expr>),
    PowNat(Box<Expr>, u32),
    Sqrt(Box<Expr>),
    Pi,
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Tan(Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Atan(Box<Expr>),
}

impl Expr {
    pub fn constant(n: i64) -> Expr {
        Expr::Const(Rational::from(n))
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    /// The set of variable names occurring in the expression.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) | Expr::Pi => {}
            Expr::Var(name) => {
                out.insert(name.clone());
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a)
            | Expr::Abs(a)
            | Expr::PowNat(a, _)
            | Expr::Sqrt(a)
            | Expr::Sin(a)
            | Expr::Cos(a)
            | Expr::Tan(a)
            | Expr::Exp(a)
            | Expr::Ln(a)
            | Expr::Atan(a) => a.collect_vars(out),
        }
    }

    /// True when no subexpression carries a side condition (division,
    /// square root, logarithm, tangent). Total expressions evaluate to a
    /// nonempty interval in every context, which is what licenses erasing
    /// rewrites like `e - e -> 0`.
    pub fn is_total(&self) -> bool {
        match self {
            Expr::Div(..) | Expr::Sqrt(_) | Expr::Ln(_) | Expr::Tan(_) => false,
            Expr::Const(_) | Expr::Var(_) | Expr::Pi => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.is_total() && b.is_total()
            }
            Expr::Neg(a)
            | Expr::Abs(a)
            | Expr::PowNat(a, _)
            | Expr::Sin(a)
            | Expr::Cos(a)
            | Expr::Exp(a)
            | Expr::Atan(a) => a.is_total(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::PowNat(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Expr::Const(q) => {
                if q.is_negative() && min > 1 {
                    // keep e.g. 2*-1/3 printing as 2*(-1/3)
                    write!(f, "({q})")?;
                } else {
                    write!(f, "{q}")?;
                }
            }
            Expr::Var(name) => write!(f, "{name}")?,
            Expr::Pi => write!(f, "pi")?,
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)?;
            }
            Expr::PowNat(a, k) => {
                a.fmt_prec(f, 5)?;
                write!(f, "^{k}")?;
            }
            Expr::Abs(a) => {
                write!(f, "abs(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Sqrt(a) => {
                write!(f, "sqrt(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Sin(a) => {
                write!(f, "sin(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Cos(a) => {
                write!(f, "cos(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Tan(a) => {
                write!(f, "tan(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Exp(a) => {
                write!(f, "exp(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Ln(a) => {
                write!(f, "ln(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Atan(a) => {
                write!(f, "atan(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A ground context: an ordered map from variable names to constant
/// intervals, the hypotheses `x in X` under which propositions are judged.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Context {
    bindings: BTreeMap<String, Interval>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, interval: Interval) {
        self.bindings.insert(name.into(), interval);
    }

    pub fn with(mut self, name: impl Into<String>, interval: Interval) -> Context {
        self.bind(name, interval);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Interval> {
        self.bindings.get(name)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    /// Bindings in variable-name order.
    pub fn iter(&self) -> impl Iterator<Item = (&String, &Interval)> {
        self.bindings.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.bindings.keys()
    }
}

impl FromIterator<(String, Interval)> for Context {
    fn from_iter<T: IntoIterator<Item = (String, Interval)>>(iter: T) -> Context {
        Context {
            bindings: iter.into_iter().collect(),
        }
    }
}
