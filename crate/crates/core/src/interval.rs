//! Closed intervals with exact rational endpoints.
//!
//! An interval with `lb > ub` denotes the empty set. Emptiness is a
//! first-class value here: every operation maps empty inputs to empty
//! outputs, and operations whose side conditions fail (division by a
//! zero-containing interval, for instance) return the empty interval
//! instead of raising. The prover turns such empties into `Unknown`
//! verdicts rather than aborting.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::rational::{Rational, RoundDir};

/// Interval-to-scalar comparison relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Rel {
    /// The relation whose truth on a whole interval refutes `self` on it:
    /// `<` maps to `>=`, `<=` to `>`, `>` to `<=`, and `>=` to `<`.
    pub fn negated(self) -> Rel {
        match self {
            Rel::Lt => Rel::Ge,
            Rel::Le => Rel::Gt,
            Rel::Gt => Rel::Le,
            Rel::Ge => Rel::Lt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        }
    }
}

/// A closed interval `[lb, ub]`; empty when `lb > ub`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    lb: Rational,
    ub: Rational,
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lb: Rational,
            ub: Rational,
        }
        let raw = Raw::deserialize(deserializer)?;
        // routes lb > ub pairs to the canonical empty representation
        Ok(Interval::new(raw.lb, raw.ub))
    }
}

impl Interval {
    /// Builds `[lb, ub]`. Any pair with `lb > ub` collapses to the
    /// canonical empty interval so that equality stays structural.
    pub fn new(lb: Rational, ub: Rational) -> Interval {
        if lb > ub {
            Interval::empty()
        } else {
            Interval { lb, ub }
        }
    }

    /// The canonical empty interval `[1, 0]`.
    pub fn empty() -> Interval {
        Interval {
            lb: Rational::one(),
            ub: Rational::zero(),
        }
    }

    pub fn point(a: Rational) -> Interval {
        Interval { lb: a.clone(), ub: a }
    }

    pub fn from_ints(lb: i64, ub: i64) -> Interval {
        Interval::new(Rational::from(lb), Rational::from(ub))
    }

    pub fn lb(&self) -> &Rational {
        &self.lb
    }

    pub fn ub(&self) -> &Rational {
        &self.ub
    }

    pub fn is_empty(&self) -> bool {
        self.lb > self.ub
    }

    pub fn is_point(&self) -> bool {
        self.lb == self.ub
    }

    /// `lb < ub`; the precondition for Taylor form domains.
    pub fn strictly_proper(&self) -> bool {
        self.lb < self.ub
    }

    pub fn width(&self) -> Option<Rational> {
        if self.is_empty() {
            None
        } else {
            Some(&self.ub - &self.lb)
        }
    }

    pub fn midpoint(&self) -> Option<Rational> {
        if self.is_empty() {
            None
        } else {
            Some(&(&self.lb + &self.ub) * &Rational::new(1, 2).expect("nonzero"))
        }
    }

    pub fn neg(&self) -> Interval {
        if self.is_empty() {
            return Interval::empty();
        }
        Interval {
            lb: -&self.ub,
            ub: -&self.lb,
        }
    }

    pub fn add(&self, rhs: &Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::empty();
        }
        Interval {
            lb: &self.lb + &rhs.lb,
            ub: &self.ub + &rhs.ub,
        }
    }

    pub fn sub(&self, rhs: &Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::empty();
        }
        Interval {
            lb: &self.lb - &rhs.ub,
            ub: &self.ub - &rhs.lb,
        }
    }

    /// Multiplication by case analysis on the signs of the operands,
    /// equivalent to min/max over the four endpoint products (the unit
    /// tests check the two forms against each other).
    pub fn mul(&self, rhs: &Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::empty();
        }
        let (a, b) = (&self.lb, &self.ub);
        let (c, d) = (&rhs.lb, &rhs.ub);
        let zero = Rational::zero();
        let (lb, ub) = if a >= &zero {
            if c >= &zero {
                (a * c, b * d)
            } else if d <= &zero {
                (b * c, a * d)
            } else {
                (b * c, b * d)
            }
        } else if b <= &zero {
            if c >= &zero {
                (a * d, b * c)
            } else if d <= &zero {
                (b * d, a * c)
            } else {
                (a * d, a * c)
            }
        } else {
            // self straddles zero
            if c >= &zero {
                (a * d, b * d)
            } else if d <= &zero {
                (b * c, a * c)
            } else {
                let lb = (a * d).min(b * c);
                let ub = (a * c).max(b * d);
                (lb, ub)
            }
        };
        Interval { lb, ub }
    }

    /// Division `X * [1/ub(Y), 1/lb(Y)]`, defined only when `Y` does not
    /// contain zero; otherwise the empty interval signals the failed side
    /// condition.
    pub fn div(&self, rhs: &Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::empty();
        }
        if !(&rhs.lb * &rhs.ub).is_positive() {
            return Interval::empty();
        }
        let inv = Interval {
            lb: rhs.ub.recip().expect("nonzero"),
            ub: rhs.lb.recip().expect("nonzero"),
        };
        self.mul(&inv)
    }

    pub fn abs(&self) -> Interval {
        if self.is_empty() {
            return Interval::empty();
        }
        let (a, b) = (self.lb.abs(), self.ub.abs());
        if (&self.lb * &self.ub).is_negative() {
            Interval {
                lb: Rational::zero(),
                ub: a.max(b),
            }
        } else {
            Interval {
                lb: a.clone().min(b.clone()),
                ub: a.max(b),
            }
        }
    }

    /// `X^n` with the four-case endpoint rule; `X^0 = [1]` for nonempty `X`.
    pub fn pow(&self, n: u32) -> Interval {
        if self.is_empty() {
            return Interval::empty();
        }
        if n == 0 {
            return Interval::point(Rational::one());
        }
        let zero = Rational::zero();
        let (pl, pu) = (self.lb.pow_nat(n), self.ub.pow_nat(n));
        if self.lb >= zero || n % 2 == 1 {
            Interval { lb: pl, ub: pu }
        } else if self.ub <= zero {
            Interval { lb: pu, ub: pl }
        } else {
            Interval {
                lb: zero,
                ub: pl.max(pu),
            }
        }
    }

    /// Smallest interval containing both operands; an empty operand is the
    /// identity.
    pub fn union(&self, rhs: &Interval) -> Interval {
        if self.is_empty() {
            return rhs.clone();
        }
        if rhs.is_empty() {
            return self.clone();
        }
        Interval {
            lb: self.lb.clone().min(rhs.lb.clone()),
            ub: self.ub.clone().max(rhs.ub.clone()),
        }
    }

    /// Interval-to-scalar comparison: `X < a` iff `ub < a`, `X > a` iff
    /// `lb > a`, and similarly for the weak forms. Vacuously true on the
    /// empty interval; callers that care flag emptiness separately.
    pub fn rel(&self, rel: Rel, a: &Rational) -> bool {
        if self.is_empty() {
            return true;
        }
        match rel {
            Rel::Lt => &self.ub < a,
            Rel::Le => &self.ub <= a,
            Rel::Gt => &self.lb > a,
            Rel::Ge => &self.lb >= a,
        }
    }

    /// `self` included in `rhs`; the empty interval is a subset of
    /// everything.
    pub fn subset_of(&self, rhs: &Interval) -> bool {
        if self.is_empty() {
            return true;
        }
        if rhs.is_empty() {
            return false;
        }
        rhs.lb <= self.lb && self.ub <= rhs.ub
    }

    pub fn contains(&self, x: &Rational) -> bool {
        !self.is_empty() && &self.lb <= x && x <= &self.ub
    }

    pub fn intersects(&self, rhs: &Interval) -> bool {
        !self.is_empty() && !rhs.is_empty() && self.lb <= rhs.ub && rhs.lb <= self.ub
    }

    /// `k` closed tiles of equal width covering `self`; consecutive tiles
    /// share an endpoint. The empty interval yields itself.
    pub fn split_even(&self, k: usize) -> Vec<Interval> {
        assert!(k >= 1, "tile count must be at least 1");
        if self.is_empty() || k == 1 {
            return vec![self.clone()];
        }
        let w = self.width().expect("nonempty")
            / Rational::from(i64::try_from(k).expect("tile count fits in i64"));
        let mut tiles = Vec::with_capacity(k);
        let mut lo = self.lb.clone();
        for i in 0..k {
            let hi = if i + 1 == k {
                self.ub.clone() // exact, avoids accumulation in the last tile
            } else {
                &lo + &w
            };
            tiles.push(Interval {
                lb: lo,
                ub: hi.clone(),
            });
            lo = hi;
        }
        tiles
    }

    /// Widens both endpoints outward to dyadic rationals with denominator
    /// `2^bits`. Preserves inclusion; empty intervals pass through.
    pub fn round_outward(&self, bits: u32) -> Interval {
        if self.is_empty() {
            return Interval::empty();
        }
        Interval {
            lb: self.lb.round_dyadic(bits, RoundDir::Down),
            ub: self.ub.round_dyadic(bits, RoundDir::Up),
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::add(self, rhs)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::sub(self, rhs)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        Interval::mul(self, rhs)
    }
}

impl Div for &Interval {
    type Output = Interval;
    fn div(self, rhs: &Interval) -> Interval {
        Interval::div(self, rhs)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "empty")
        } else {
            write!(f, "[{}, {}]", self.lb, self.ub)
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}
