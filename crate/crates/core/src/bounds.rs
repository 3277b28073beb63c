//! Rational lower/upper bounds for elementary functions.
//!
//! For each supported function `f` this module provides a pair of rational
//! functions `(lb, ub)` of the argument and an approximation parameter `n`
//! such that `lb(x, n) <= f(x) <= ub(x, n)`, the bounds tighten as `n`
//! grows, and both sides converge to `f(x)`. Square root uses Newton's
//! method from above; the transcendental functions use truncated series
//! with a coarse range reduction. Everything is computed in exact rational
//! arithmetic; machine floating point is never consulted.
//!
//! There is no uniform relation between `n` and the attained accuracy: each
//! function has its own convergence rate (the logarithm is the slowest, as
//! its range reduction leans on a series for `ln 2` that gains roughly one
//! term of `1/i` per step).

use num_bigint::BigInt;

use crate::error::Error;
use crate::rational::Rational;

/// Series/iteration depth. Larger values give tighter bounds.
pub type ApproxParam = u32;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

/// Newton upper bound and derived lower bound for the square root.
///
/// `ub(x, 0) = x + 1`, `ub(x, n+1) = (y + x/y)/2` with `y = ub(x, n)`, and
/// `lb(x, n) = x / ub(x, n)`. Guarantees `0 <= lb <= sqrt(x) < ub`, with
/// `lb > 0` whenever `x > 0`.
pub fn sqrt_bounds(x: &Rational, n: ApproxParam) -> Result<(Rational, Rational), Error> {
    if x.is_negative() {
        return Err(Error::NegativeSqrt);
    }
    let mut ub = x + &Rational::one();
    for _ in 0..n {
        // ub stays strictly positive: it starts at x+1 >= 1 and the
        // iteration preserves positivity for x >= 0.
        ub = (&ub + &x.checked_div(&ub).expect("newton iterate is positive")) * rat(1, 2);
    }
    let lb = x.checked_div(&ub).expect("newton iterate is positive");
    Ok((lb, ub))
}

/// Partial Maclaurin sums of sine: returns `(S_{2n+1}(x), S_{2n+2}(x))`
/// where `S_k(x) = sum_{i=1..k} (-1)^(i-1) x^(2i-1)/(2i-1)!`.
fn sin_partial_sums(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    let x2 = x * x;
    let mut term = x.clone(); // x^(2i-1)/(2i-1)! at i = 1
    let mut sum = Rational::zero();
    let mut odd_sum = Rational::zero();
    let last = 2 * n + 2;
    for i in 1..=last {
        if i % 2 == 1 {
            sum = &sum + &term;
        } else {
            sum = &sum - &term;
        }
        if i == last - 1 {
            odd_sum = sum.clone();
        }
        let k = 2 * i as i64;
        term = &(&term * &x2) / &Rational::from(k * (k + 1));
    }
    (odd_sum, sum)
}

/// Bounds for sine from partial Maclaurin sums.
///
/// For `x >= 0` the sum with an even number of terms is a lower bound and
/// the sum with an odd number of terms is an upper bound; negative
/// arguments go through odd symmetry. Valid for every real `x`, although
/// the bounds are only tight for `|x|` below roughly pi.
pub fn sin_bounds(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    if x.is_negative() {
        let (lb, ub) = sin_bounds(&-x, n);
        return (-ub, -lb);
    }
    let (odd, even) = sin_partial_sums(x, n);
    (even, odd)
}

/// Partial Maclaurin sums of cosine: `(C_{2n+1}(x), C_{2n+2}(x))` where
/// `C_k(x) = 1 + sum_{i=1..k} (-1)^i x^(2i)/(2i)!`.
fn cos_partial_sums(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    let x2 = x * x;
    let mut term = &x2 / &Rational::from(2); // x^(2i)/(2i)! at i = 1
    let mut sum = Rational::one();
    let mut odd_sum = Rational::zero();
    let last = 2 * n + 2;
    for i in 1..=last {
        if i % 2 == 1 {
            sum = &sum - &term;
        } else {
            sum = &sum + &term;
        }
        if i == last - 1 {
            odd_sum = sum.clone();
        }
        let k = 2 * i as i64;
        term = &(&term * &x2) / &Rational::from((k + 1) * (k + 2));
    }
    (odd_sum, sum)
}

/// Bounds for cosine; the series is even in `x`, so one orientation covers
/// the whole real line: the odd-indexed partial sum bounds from below.
pub fn cos_bounds(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    let (odd, even) = cos_partial_sums(x, n);
    (odd, even)
}

/// Partial sums of the arctangent series: `A_k(x) = sum_{i=0..k} (-1)^i
/// x^(2i+1)/(2i+1)`. Returns `(A_{2n+1}(x), A_{2n}(x))`, i.e. `(lb, ub)`
/// for `0 < x <= 1` where the alternating terms decrease.
fn atan_core(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    let x2 = x * x;
    let mut power = x.clone();
    let mut sum = Rational::zero();
    let mut even_sum = Rational::zero();
    let last = 2 * n + 1;
    for i in 0..=last {
        let term = &power / &Rational::from(2 * i as i64 + 1);
        if i % 2 == 0 {
            sum = &sum + &term;
        } else {
            sum = &sum - &term;
        }
        if i == last - 1 {
            even_sum = sum.clone();
        }
        power = &power * &x2;
    }
    (sum, even_sum)
}

fn atan_pos(px: &Rational, n: ApproxParam) -> (Rational, Rational) {
    if px <= &Rational::one() {
        atan_core(px, n)
    } else {
        let inv = px.recip().expect("positive argument");
        let (ilb, iub) = atan_core(&inv, n);
        let (pi_lb, pi_ub) = pi_bounds(n);
        let half = rat(1, 2);
        (&pi_lb * &half - iub, &pi_ub * &half - ilb)
    }
}

/// Bounds for arctangent on the whole real line.
///
/// The core series covers `0 < x <= 1`; arguments above one go through
/// `atan(x) = pi/2 - atan(1/x)` with the Machin bounds for pi, and
/// negative arguments through odd symmetry.
pub fn atan_bounds(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    if x.is_zero() {
        (Rational::zero(), Rational::zero())
    } else if x.is_positive() {
        atan_pos(x, n)
    } else {
        let (lb, ub) = atan_pos(&-x, n);
        (-ub, -lb)
    }
}

/// Bounds for pi from the Machin identity
/// `pi/4 = 4 atan(1/5) - atan(1/239)`.
pub fn pi_bounds(n: ApproxParam) -> (Rational, Rational) {
    let (lb5, ub5) = atan_core(&rat(1, 5), n);
    let (lb239, ub239) = atan_core(&rat(1, 239), n);
    let four = Rational::from(4);
    let lb = &four * &(&(&four * &lb5) - &ub239);
    let ub = &four * &(&(&four * &ub5) - &lb239);
    (lb, ub)
}

/// Exponential series sums on `-1 <= x <= 0`: returns
/// `(sum_{i=0..2n+3} x^i/i!, sum_{i=0..2n+2} x^i/i!)`, a `(lb, ub)` pair
/// there since the terms alternate with decreasing magnitude. Both sums
/// are strictly positive on that range.
fn exp_core_neg(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let mut prev = Rational::zero();
    let last = 2 * (n + 1) + 1;
    for i in 1..=last {
        term = &(&term * x) / &Rational::from(i as i64);
        if i == last {
            prev = sum.clone();
        }
        sum = &sum + &term;
    }
    (sum, prev)
}

fn exp_neg(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    debug_assert!(!x.is_positive());
    if x >= &rat(-1, 1) {
        exp_core_neg(x, n)
    } else {
        // x < -1: split off the integer part, exp(x) = exp(x/k)^k with
        // k = -floor(x) >= 2, so that x/k lands in [-1, 0).
        let k = -x.floor_int();
        let scale = Rational::from(k.clone());
        let y = x.checked_div(&scale).expect("k >= 2");
        let e = u32::try_from(&k).expect("approximation exponent too large");
        let (lb, ub) = exp_core_neg(&y, n);
        (lb.pow_nat(e), ub.pow_nat(e))
    }
}

/// Bounds for the exponential, strictly positive for every argument.
///
/// The series is evaluated on `[-1, 0)`; more negative arguments are
/// reduced by the exact power `exp(x) = exp(x / -floor(x))^(-floor(x))`,
/// and positive arguments by `exp(x) = 1 / exp(-x)`.
pub fn exp_bounds(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    if x.is_zero() {
        (Rational::one(), Rational::one())
    } else if x.is_negative() {
        exp_neg(x, n)
    } else {
        let (lb, ub) = exp_neg(&-x, n);
        (
            ub.recip().expect("exp bounds are positive"),
            lb.recip().expect("exp bounds are positive"),
        )
    }
}

/// Decomposes `x >= 1` as `x = k^m * y` with `y < k`, in the spirit of
/// Euclidean division. Satisfies `k^m <= x < k^(m+1)`.
pub fn lnnat(x: &Rational, k: u32) -> (u32, Rational) {
    debug_assert!(k > 1);
    let kq = Rational::from(k as i64);
    let mut m = 0u32;
    let mut y = x.clone();
    while y >= kq {
        y = y.checked_div(&kq).expect("k > 1");
        m += 1;
    }
    (m, y)
}

/// Alternating-series sums for `ln` on `1 <= x <= 2`: with `y = x - 1`,
/// returns `(sum_{i=1..2n} (-1)^(i+1) y^i/i, sum_{i=1..2n+1} ...)`, a
/// `(lb, ub)` pair there. At `n = 0` the lower sum is empty, i.e. `0`.
fn ln_core(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    let y = x - &Rational::one();
    let mut power = Rational::one();
    let mut sum = Rational::zero();
    let mut even_sum = Rational::zero();
    let last = 2 * n + 1;
    for i in 1..=last {
        power = &power * &y;
        let term = &power / &Rational::from(i as i64);
        if i % 2 == 1 {
            sum = &sum + &term;
        } else {
            sum = &sum - &term;
        }
        if i == last - 1 {
            even_sum = sum.clone();
        }
    }
    (even_sum, sum)
}

fn ln_ge1(x: &Rational, n: ApproxParam) -> (Rational, Rational) {
    let two = Rational::from(2);
    if x <= &two {
        ln_core(x, n)
    } else {
        // x > 2: write x = 2^m * y with 1 <= y < 2 and use
        // ln(x) = m ln(2) + ln(y).
        let (m, y) = lnnat(x, 2);
        let (lb2, ub2) = ln_core(&two, n);
        let (lby, uby) = ln_core(&y, n);
        let m = Rational::from(m as i64);
        (&(&m * &lb2) + &lby, &(&m * &ub2) + &uby)
    }
}

/// Bounds for the natural logarithm on `x > 0`.
///
/// The series covers `1 <= x <= 2`; larger arguments are decomposed with
/// [`lnnat`], and arguments below one use `ln(x) = -ln(1/x)`, which swaps
/// the roles of the two bounds.
pub fn ln_bounds(x: &Rational, n: ApproxParam) -> Result<(Rational, Rational), Error> {
    if !x.is_positive() {
        return Err(Error::NonPositiveLn);
    }
    let one = Rational::one();
    if x < &one {
        let inv = x.recip().expect("positive argument");
        let (lb, ub) = ln_ge1(&inv, n);
        Ok((-ub, -lb))
    } else {
        Ok(ln_ge1(x, n))
    }
}

/// 50 decimal digits of pi as an enclosing rational pair, for tests and
/// guard sanity checks.
pub fn pi_reference_50() -> (Rational, Rational) {
    let digits: BigInt = "314159265358979323846264338327950288419716939937510"
        .parse()
        .expect("literal");
    let scale = BigInt::from(10).pow(50);
    let lo = Rational::new(digits.clone(), scale.clone()).expect("nonzero");
    let hi = Rational::new(digits + 1, scale).expect("nonzero");
    (lo, hi)
}
