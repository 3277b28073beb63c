//! Parametric interval extensions of the elementary functions.
//!
//! Square root, arctangent, exponential and logarithm are increasing, so
//! their interval versions apply the scalar lower bound at the left
//! endpoint and the upper bound at the right endpoint. Sine and cosine go
//! through a case analysis on quadrants delimited by the pi bounds at the
//! same parameter; outside `[-LB_pi, LB_pi]` they fall back to `[-1, 1]`
//! (no angle normalization is performed). Tangent evaluates sine and
//! cosine at an internal parameter of `n + 5`, deep enough that the cosine
//! lower bound stays strictly positive on the admissible range.
//!
//! Domain violations return the empty interval.

use crate::bounds::{
    atan_bounds, cos_bounds, exp_bounds, ln_bounds, pi_bounds, sin_bounds, sqrt_bounds,
    ApproxParam,
};
use crate::interval::Interval;
use crate::rational::Rational;

/// `[LB_sqrt(lb, n), UB_sqrt(ub, n)]`; empty when `lb < 0`.
pub fn sqrt_i(x: &Interval, n: ApproxParam) -> Interval {
    if x.is_empty() || x.lb().is_negative() {
        return Interval::empty();
    }
    let (lb, _) = sqrt_bounds(x.lb(), n).expect("nonnegative");
    let (_, ub) = sqrt_bounds(x.ub(), n).expect("nonnegative");
    Interval::new(lb, ub)
}

/// `[LB_atan(lb, n), UB_atan(ub, n)]`; total.
pub fn atan_i(x: &Interval, n: ApproxParam) -> Interval {
    if x.is_empty() {
        return Interval::empty();
    }
    let (lb, _) = atan_bounds(x.lb(), n);
    let (_, ub) = atan_bounds(x.ub(), n);
    Interval::new(lb, ub)
}

/// Arguments beyond this magnitude would need range-reduction exponents
/// whose rational powers are not feasibly representable.
const EXP_ARG_LIMIT: i64 = 1 << 16;

/// `[LB_exp(lb, n), UB_exp(ub, n)]`, strictly positive. Arguments of
/// magnitude above `2^16` yield the empty interval: the bounds exist
/// mathematically but their exact rational form is astronomically large,
/// so the failure is signalled like a side condition.
pub fn exp_i(x: &Interval, n: ApproxParam) -> Interval {
    if x.is_empty() {
        return Interval::empty();
    }
    let limit = Rational::from(EXP_ARG_LIMIT);
    if x.lb() < &-&limit || x.ub() > &limit {
        return Interval::empty();
    }
    let (lb, _) = exp_bounds(x.lb(), n);
    let (_, ub) = exp_bounds(x.ub(), n);
    Interval::new(lb, ub)
}

/// `[LB_ln(lb, n), UB_ln(ub, n)]`; empty unless `lb > 0`.
pub fn ln_i(x: &Interval, n: ApproxParam) -> Interval {
    if x.is_empty() || !x.lb().is_positive() {
        return Interval::empty();
    }
    let (lb, _) = ln_bounds(x.lb(), n).expect("positive");
    let (_, ub) = ln_bounds(x.ub(), n).expect("positive");
    Interval::new(lb, ub)
}

/// The enclosure `[LB_pi(n), UB_pi(n)]`.
pub fn pi_i(n: ApproxParam) -> Interval {
    let (lb, ub) = pi_bounds(n);
    Interval::new(lb, ub)
}

fn half(q: &Rational) -> Rational {
    q * &Rational::new(1, 2).expect("nonzero")
}

/// Interval sine by case analysis on quadrants.
///
/// In order: monotone increasing on `[-LB_pi/2, LB_pi/2]`; decreasing on
/// `[UB_pi/2, LB_pi]`; spanning the maximum on `[0, LB_pi]`; reflected
/// through `-sin(-X)` on `[-LB_pi, 0]`; otherwise `[-1, 1]`.
pub fn sin_i(x: &Interval, n: ApproxParam) -> Interval {
    if x.is_empty() {
        return Interval::empty();
    }
    let (pi_lb, pi_ub) = pi_bounds(n);
    let one = Rational::one();
    let half_pi_lb = half(&pi_lb);
    if x.subset_of(&Interval::new(-&half_pi_lb, half_pi_lb.clone())) {
        let (lb, _) = sin_bounds(x.lb(), n);
        let (_, ub) = sin_bounds(x.ub(), n);
        Interval::new(lb, ub)
    } else if x.subset_of(&Interval::new(half(&pi_ub), pi_lb.clone())) {
        let (lb, _) = sin_bounds(x.ub(), n);
        let (_, ub) = sin_bounds(x.lb(), n);
        Interval::new(lb, ub)
    } else if x.subset_of(&Interval::new(Rational::zero(), pi_lb.clone())) {
        let (lb_at_lb, _) = sin_bounds(x.lb(), n);
        let (lb_at_ub, _) = sin_bounds(x.ub(), n);
        Interval::new(lb_at_lb.min(lb_at_ub), one)
    } else if x.subset_of(&Interval::new(-&pi_lb, Rational::zero())) {
        sin_i(&x.neg(), n).neg()
    } else {
        Interval::new(-&one, one)
    }
}

/// Interval cosine by case analysis on quadrants.
///
/// Decreasing on `[0, LB_pi]`; reflected through `cos(-X)` on
/// `[-LB_pi, 0]`; spanning the maximum on `[-LB_pi/2, LB_pi/2]`;
/// otherwise `[-1, 1]`.
pub fn cos_i(x: &Interval, n: ApproxParam) -> Interval {
    if x.is_empty() {
        return Interval::empty();
    }
    let (pi_lb, _) = pi_bounds(n);
    let one = Rational::one();
    let half_pi_lb = half(&pi_lb);
    if x.subset_of(&Interval::new(Rational::zero(), pi_lb.clone())) {
        let (lb, _) = cos_bounds(x.ub(), n);
        let (_, ub) = cos_bounds(x.lb(), n);
        Interval::new(lb, ub)
    } else if x.subset_of(&Interval::new(-&pi_lb, Rational::zero())) {
        cos_i(&x.neg(), n)
    } else if x.subset_of(&Interval::new(-&half_pi_lb, half_pi_lb.clone())) {
        let (lb_at_lb, _) = cos_bounds(x.lb(), n);
        let (lb_at_ub, _) = cos_bounds(x.ub(), n);
        Interval::new(lb_at_lb.min(lb_at_ub), one)
    } else {
        Interval::new(-&one, one)
    }
}

/// Scalar tangent bounds at one endpoint: quotient of the sine and cosine
/// bounds, picking the cosine side by the sign of the sine bound so that
/// the quotient brackets `tan` from the requested side. Requires both
/// cosine bounds to be strictly positive.
fn tan_endpoint(x: &Rational, m: ApproxParam, upper: bool) -> Option<Rational> {
    let (sin_lb, sin_ub) = sin_bounds(x, m);
    let (cos_lb, cos_ub) = cos_bounds(x, m);
    if !cos_lb.is_positive() {
        return None;
    }
    let (num, den) = if upper {
        let den = if sin_ub.is_negative() { cos_ub } else { cos_lb };
        (sin_ub, den)
    } else {
        let den = if sin_lb.is_negative() { cos_lb } else { cos_ub };
        (sin_lb, den)
    };
    Some(num.checked_div(&den).expect("cosine bound is positive"))
}

/// Interval tangent on `[-LB_pi(n+5)/2, LB_pi(n+5)/2]`, where tangent is
/// increasing and the internal parameter `n + 5` keeps both cosine bounds
/// strictly positive. Arguments outside that range yield the empty
/// interval.
pub fn tan_i(x: &Interval, n: ApproxParam) -> Interval {
    if x.is_empty() {
        return Interval::empty();
    }
    let m = n + 5;
    let (pi_lb, _) = pi_bounds(m);
    let half_pi_lb = half(&pi_lb);
    if !x.subset_of(&Interval::new(-&half_pi_lb, half_pi_lb.clone())) {
        return Interval::empty();
    }
    match (
        tan_endpoint(x.lb(), m, false),
        tan_endpoint(x.ub(), m, true),
    ) {
        (Some(lb), Some(ub)) => Interval::new(lb, ub),
        _ => Interval::empty(),
    }
}
