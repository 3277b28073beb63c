//! Semantics-preserving simplification.
//!
//! Deliberately modest: exact constant folding, neutral and absorbing
//! elements, and like-term collection of flat monomial sums in a single
//! variable. Collection factors out the lowest power only when what
//! remains is linear (`x - x^2` becomes `x*(1 - x)`); higher-degree sums
//! are merged but kept flat, since factoring through products can lose
//! tightness against the dedicated interval power on sign-straddling
//! boxes. Rewrites that erase a subexpression (`e - e -> 0`, `e*0 -> 0`)
//! apply only to total subexpressions, so a latent side-condition failure
//! is never optimized away.

use std::collections::BTreeMap;

use crate::expr::ast::Expr;
use crate::rational::Rational;

/// Simplifies an expression. Idempotent.
pub fn simplify(e: &Expr) -> Expr {
    let mut cur = e.clone();
    for _ in 0..4 {
        let next = simplify_node(&cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

fn simplify_node(e: &Expr) -> Expr {
    let bx = Box::new;
    let rebuilt = match e {
        Expr::Const(_) | Expr::Var(_) | Expr::Pi => e.clone(),
        Expr::Add(a, b) => Expr::Add(bx(simplify_node(a)), bx(simplify_node(b))),
        Expr::Sub(a, b) => Expr::Sub(bx(simplify_node(a)), bx(simplify_node(b))),
        Expr::Mul(a, b) => Expr::Mul(bx(simplify_node(a)), bx(simplify_node(b))),
        Expr::Div(a, b) => Expr::Div(bx(simplify_node(a)), bx(simplify_node(b))),
        Expr::Neg(a) => Expr::Neg(bx(simplify_node(a))),
        Expr::Abs(a) => Expr::Abs(bx(simplify_node(a))),
        Expr::PowNat(a, k) => Expr::PowNat(bx(simplify_node(a)), *k),
        Expr::Sqrt(a) => Expr::Sqrt(bx(simplify_node(a))),
        Expr::Sin(a) => Expr::Sin(bx(simplify_node(a))),
        Expr::Cos(a) => Expr::Cos(bx(simplify_node(a))),
        Expr::Tan(a) => Expr::Tan(bx(simplify_node(a))),
        Expr::Exp(a) => Expr::Exp(bx(simplify_node(a))),
        Expr::Ln(a) => Expr::Ln(bx(simplify_node(a))),
        Expr::Atan(a) => Expr::Atan(bx(simplify_node(a))),
    };
    let local = local_rules(rebuilt);
    collect_like_terms(&local).unwrap_or(local)
}

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Const(q) if q.is_zero())
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Const(q) if q == &Rational::one())
}

fn local_rules(e: Expr) -> Expr {
    let bx = Box::new;
    match e {
        Expr::Add(a, b) => match (*a, *b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
            (a, b) if is_zero(&a) => b,
            (a, b) if is_zero(&b) => a,
            (a, b) => Expr::Add(bx(a), bx(b)),
        },
        Expr::Sub(a, b) => match (*a, *b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
            (a, b) if is_zero(&b) => a,
            (a, b) if a == b && a.is_total() => Expr::Const(Rational::zero()),
            (a, b) if is_zero(&a) => local_rules(Expr::Neg(bx(b))),
            (a, b) => Expr::Sub(bx(a), bx(b)),
        },
        Expr::Mul(a, b) => match (*a, *b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
            (a, b) if is_one(&a) => b,
            (a, b) if is_one(&b) => a,
            (a, b) if is_zero(&a) && b.is_total() => Expr::Const(Rational::zero()),
            (a, b) if is_zero(&b) && a.is_total() => Expr::Const(Rational::zero()),
            (a, b) => Expr::Mul(bx(a), bx(b)),
        },
        Expr::Div(a, b) => match (*a, *b) {
            (Expr::Const(x), Expr::Const(y)) if !y.is_zero() => {
                Expr::Const(x.checked_div(&y).expect("nonzero"))
            }
            (a, b) if is_one(&b) => a,
            (a, b) => Expr::Div(bx(a), bx(b)),
        },
        Expr::Neg(a) => match *a {
            Expr::Const(x) => Expr::Const(-x),
            Expr::Neg(inner) => *inner,
            a => Expr::Neg(bx(a)),
        },
        Expr::Abs(a) => match *a {
            Expr::Const(x) => Expr::Const(x.abs()),
            Expr::Abs(inner) => Expr::Abs(inner),
            a => Expr::Abs(bx(a)),
        },
        Expr::PowNat(a, k) => match (*a, k) {
            (Expr::Const(x), k) => Expr::Const(x.pow_nat(k)),
            (a, 0) if a.is_total() => Expr::Const(Rational::one()),
            (a, 1) => a,
            (a, k) => Expr::PowNat(bx(a), k),
        },
        other => other,
    }
}

/// A term `coeff * var^deg` of a flat monomial sum.
struct Mono {
    deg: u32,
    coeff: Rational,
}

/// Like-term collection over a single variable.
///
/// Succeeds only on trees that are already flat sums of monomials (chains
/// of `+`, `-` and unary `-` over `c`, `x^k`, `c*x^k`, `x^k/c`), and only
/// rewrites when terms actually merge or the low-degree factoring applies.
/// Returns `None` to leave the input untouched otherwise.
fn collect_like_terms(e: &Expr) -> Option<Expr> {
    if !matches!(e, Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_)) {
        return None;
    }
    let mut var: Option<String> = None;
    let mut terms: Vec<Mono> = Vec::new();
    if !gather_terms(e, false, &mut var, &mut terms) {
        return None;
    }
    let var = var?; // constant-only sums are handled by folding
    let syntactic = terms.len();
    let mut merged: BTreeMap<u32, Rational> = BTreeMap::new();
    for t in terms {
        let slot = merged.entry(t.deg).or_insert_with(Rational::zero);
        *slot = &*slot + &t.coeff;
    }
    merged.retain(|_, c| !c.is_zero());

    let min_deg = merged.keys().next().copied().unwrap_or(0);
    let max_deg = merged.keys().next_back().copied().unwrap_or(0);
    let factorable = merged.len() >= 2 && min_deg >= 1 && max_deg - min_deg <= 1;
    if merged.len() >= syntactic && !factorable {
        return None;
    }

    if merged.is_empty() {
        return Some(Expr::Const(Rational::zero()));
    }
    if merged.len() == 1 {
        let (deg, coeff) = merged.into_iter().next().expect("nonempty");
        return Some(signed_monomial(&coeff, &var, deg));
    }
    if factorable {
        let inner: BTreeMap<u32, Rational> = merged
            .into_iter()
            .map(|(d, c)| (d - min_deg, c))
            .collect();
        return Some(Expr::Mul(
            Box::new(power_of(&var, min_deg)),
            Box::new(emit_flat(&inner, &var)),
        ));
    }
    Some(emit_flat(&merged, &var))
}

fn gather_terms(e: &Expr, negate: bool, var: &mut Option<String>, out: &mut Vec<Mono>) -> bool {
    match e {
        Expr::Add(a, b) => {
            gather_terms(a, negate, var, out) && gather_terms(b, negate, var, out)
        }
        Expr::Sub(a, b) => {
            gather_terms(a, negate, var, out) && gather_terms(b, !negate, var, out)
        }
        Expr::Neg(a) => gather_terms(a, !negate, var, out),
        other => match as_monomial(other, var) {
            Some(mut m) => {
                if negate {
                    m.coeff = -m.coeff;
                }
                out.push(m);
                true
            }
            None => false,
        },
    }
}

fn as_monomial(e: &Expr, var: &mut Option<String>) -> Option<Mono> {
    let with_var = |name: &String, deg: u32, var: &mut Option<String>| -> Option<u32> {
        match var {
            Some(v) if v != name => None,
            _ => {
                *var = Some(name.clone());
                Some(deg)
            }
        }
    };
    match e {
        Expr::Const(q) => Some(Mono {
            deg: 0,
            coeff: q.clone(),
        }),
        Expr::Var(name) => with_var(name, 1, var).map(|deg| Mono {
            deg,
            coeff: Rational::one(),
        }),
        Expr::PowNat(base, k) => match base.as_ref() {
            Expr::Var(name) => with_var(name, *k, var).map(|deg| Mono {
                deg,
                coeff: Rational::one(),
            }),
            _ => None,
        },
        Expr::Neg(inner) => as_monomial(inner, var).map(|m| Mono {
            deg: m.deg,
            coeff: -m.coeff,
        }),
        Expr::Mul(a, b) => match (a.as_ref(), b.as_ref()) {
            (Expr::Const(c), m) | (m, Expr::Const(c)) => as_monomial(m, var).map(|m| Mono {
                deg: m.deg,
                coeff: &m.coeff * c,
            }),
            _ => None,
        },
        Expr::Div(a, b) => match b.as_ref() {
            Expr::Const(c) if !c.is_zero() => as_monomial(a, var).map(|m| Mono {
                deg: m.deg,
                coeff: m.coeff.checked_div(c).expect("nonzero"),
            }),
            _ => None,
        },
        _ => None,
    }
}

fn power_of(var: &str, deg: u32) -> Expr {
    match deg {
        0 => Expr::Const(Rational::one()),
        1 => Expr::var(var),
        k => Expr::PowNat(Box::new(Expr::var(var)), k),
    }
}

fn positive_monomial(coeff: &Rational, var: &str, deg: u32) -> Expr {
    debug_assert!(coeff.is_positive());
    if deg == 0 {
        Expr::Const(coeff.clone())
    } else if coeff == &Rational::one() {
        power_of(var, deg)
    } else {
        Expr::Mul(Box::new(Expr::Const(coeff.clone())), Box::new(power_of(var, deg)))
    }
}

fn signed_monomial(coeff: &Rational, var: &str, deg: u32) -> Expr {
    if coeff.is_negative() {
        Expr::Neg(Box::new(positive_monomial(&-coeff, var, deg)))
    } else {
        positive_monomial(coeff, var, deg)
    }
}

/// Emits merged terms in ascending degree as an `Add`/`Sub` chain.
fn emit_flat(terms: &BTreeMap<u32, Rational>, var: &str) -> Expr {
    let mut iter = terms.iter();
    let (deg, coeff) = iter.next().expect("nonempty");
    let mut acc = signed_monomial(coeff, var, *deg);
    for (deg, coeff) in iter {
        acc = if coeff.is_negative() {
            Expr::Sub(
                Box::new(acc),
                Box::new(positive_monomial(&-coeff, var, *deg)),
            )
        } else {
            Expr::Add(Box::new(acc), Box::new(positive_monomial(coeff, var, *deg)))
        };
    }
    acc
}
