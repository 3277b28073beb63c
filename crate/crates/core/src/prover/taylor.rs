//! Interval Taylor forms.
//!
//! A Taylor form for a univariate expression `f` over a strictly proper
//! domain `X` holds a center `c` in `X` and interval coefficients:
//! enclosures of `f^(i)(c)` for `i` below the degree, and an enclosure of
//! the degree-th derivative over all of `X` as the remainder coefficient.
//! Evaluating `sum_i X_i * (T - c)^i / i!` on any tile `T` inside `X`
//! encloses `f` on `T`. Because the coefficients are interval expressions
//! themselves, one symbolic expansion serves every tile; no per-tile
//! polynomial has to be re-derived, only re-evaluated.

use serde::{Deserialize, Serialize};

use crate::bounds::ApproxParam;
use crate::error::Error;
use crate::expr::{diff, eval_interval, Context, Expr};
use crate::interval::Interval;
use crate::rational::Rational;

/// A validated interval Taylor expansion of an expression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorForm {
    pub var: String,
    pub domain: Interval,
    pub center: Rational,
    /// `coeffs[i]` encloses `f^(i)(center)` for `i < degree`;
    /// `coeffs[degree]` encloses `f^(degree)` over the whole domain.
    pub coeffs: Vec<Interval>,
}

impl TaylorForm {
    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }
}

/// Symbolic derivatives `f^(1) .. f^(degree)`, computed once and shared by
/// every tile instantiation.
pub(crate) fn derivative_chain(e: &Expr, var: &str, degree: u32) -> Result<Vec<Expr>, Error> {
    let mut derivs = Vec::with_capacity(degree as usize);
    let mut cur = e.clone();
    for _ in 0..degree {
        cur = diff(&cur, var)?;
        derivs.push(cur.clone());
    }
    Ok(derivs)
}

pub(crate) fn build_with_derivatives(
    e: &Expr,
    derivs: &[Expr],
    var: &str,
    domain: &Interval,
    n: ApproxParam,
    center: Option<&Rational>,
    round_bits: Option<u32>,
) -> Result<TaylorForm, Error> {
    if !domain.strictly_proper() {
        return Err(Error::TaylorForm(
            "domain must be strictly proper".into(),
        ));
    }
    let center = match center {
        Some(c) => {
            if !domain.contains(c) {
                return Err(Error::TaylorForm(format!(
                    "center {c} lies outside the domain {domain}"
                )));
            }
            c.clone()
        }
        None => domain.midpoint().expect("strictly proper"),
    };
    let degree = derivs.len();
    let point_ctx = Context::new().with(var, Interval::point(center.clone()));
    let mut coeffs = Vec::with_capacity(degree + 1);
    coeffs.push(eval_interval(e, &point_ctx, n, round_bits)?);
    for d in &derivs[..degree - 1] {
        coeffs.push(eval_interval(d, &point_ctx, n, round_bits)?);
    }
    let domain_ctx = Context::new().with(var, domain.clone());
    coeffs.push(eval_interval(
        &derivs[degree - 1],
        &domain_ctx,
        n,
        round_bits,
    )?);
    Ok(TaylorForm {
        var: var.to_string(),
        domain: domain.clone(),
        center,
        coeffs,
    })
}

/// Builds a Taylor form of the given degree for `e` over `domain`.
///
/// The expression must be univariate in `var`, the domain strictly proper
/// and the degree at least one. The center defaults to the domain
/// midpoint; a caller-supplied center must lie inside the domain.
pub fn build_taylor_form(
    e: &Expr,
    var: &str,
    domain: &Interval,
    degree: u32,
    n: ApproxParam,
    center: Option<&Rational>,
) -> Result<TaylorForm, Error> {
    if degree == 0 {
        return Err(Error::TaylorForm("degree must be at least 1".into()));
    }
    let fv = e.free_vars();
    if fv.iter().any(|v| v != var) {
        return Err(Error::TaylorForm(format!(
            "expression must be univariate in `{var}`"
        )));
    }
    let derivs = derivative_chain(e, var, degree)?;
    build_with_derivatives(e, &derivs, var, domain, n, center, None)
}

/// Evaluates the form's polynomial `sum_i X_i * (tile - c)^i / i!` on a
/// tile of its domain with interval operations.
pub fn eval_taylor_form(
    form: &TaylorForm,
    tile: &Interval,
    round_bits: Option<u32>,
) -> Result<Interval, Error> {
    if !tile.subset_of(&form.domain) {
        return Err(Error::TaylorForm(format!(
            "tile {tile} is not contained in the domain {}",
            form.domain
        )));
    }
    let out = |iv: Interval| match round_bits {
        Some(bits) => iv.round_outward(bits),
        None => iv,
    };
    let offset = out(tile.sub(&Interval::point(form.center.clone())));
    let mut acc = form.coeffs[0].clone();
    let mut factorial = Rational::one();
    for (i, coeff) in form.coeffs.iter().enumerate().skip(1) {
        factorial = &factorial * &Rational::from(i as i64);
        let inv_fact = Interval::point(factorial.recip().expect("factorial is nonzero"));
        let term = out(out(coeff.mul(&offset.pow(i as u32))).mul(&inv_fact));
        acc = out(acc.add(&term));
    }
    Ok(acc)
}
