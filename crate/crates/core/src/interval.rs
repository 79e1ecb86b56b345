//! Closed intervals of `f64` with outward rounding.
//!
//! Every operation returns an interval containing all exact results for
//! arguments taken from the operand intervals. Rounding is done by nudging
//! endpoints: add/sub recover the exact rounding error with TwoSum, mul/div
//! and sqrt with an fma residual, and an endpoint moves one ulp only when the
//! floating-point result is inexact. Exact results therefore stay exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// How directed rounding is achieved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoundingMode {
    /// Round-to-nearest arithmetic followed by exactness-checked endpoint nudging.
    EndpointNudging,
}

/// The rounding mode every build of this crate uses.
pub const ROUNDING_MODE: RoundingMode = RoundingMode::EndpointNudging;

/// Ulps added on each side of a libm result.
const LIBM_WIDEN_ULPS: u32 = 2;

/// Below this magnitude an fma residual may be inexact, so nudging is unconditional.
const TINY: f64 = 1e-290;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("invalid interval [{lo}, {hi}]")]
    Invalid { lo: f64, hi: f64 },
    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("geometric split needs a strictly positive or strictly negative interval")]
    GeometricSplitUndefined,
    #[error("argument outside the function domain")]
    Domain,
    #[error("cannot parse interval from {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitStrategy {
    /// Split at the midpoint.
    Arithmetic,
    /// Split at the geometric mean of the endpoints.
    Geometric,
    /// Never split along this axis.
    None,
}

#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if s == f64::INFINITY && a.is_finite() && b.is_finite() {
            f64::MAX
        } else {
            s
        };
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if s == f64::NEG_INFINITY && a.is_finite() && b.is_finite() {
            f64::MIN
        } else {
            s
        };
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::INFINITY && a.is_finite() && b.is_finite() {
            f64::MAX
        } else {
            p
        };
    }
    if p.abs() < TINY {
        return p.next_down();
    }
    if a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::NEG_INFINITY && a.is_finite() && b.is_finite() {
            f64::MIN
        } else {
            p
        };
    }
    if p.abs() < TINY {
        return p.next_up();
    }
    if a.mul_add(b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Sign of `a/b - fl(a/b)`: -1, 0 or 1, or `None` when it cannot be decided.
fn div_residual_sign(a: f64, b: f64, q: f64) -> Option<i32> {
    if a.abs() < TINY || q.abs() < TINY || !q.is_finite() {
        return None;
    }
    let r = (-q).mul_add(b, a);
    if r == 0.0 {
        Some(0)
    } else if (r > 0.0) == (b > 0.0) {
        Some(1)
    } else {
        Some(-1)
    }
}

fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q == f64::INFINITY && a.is_finite() {
        return f64::MAX;
    }
    match div_residual_sign(a, b, q) {
        Some(s) if s >= 0 => q,
        _ => q.next_down(),
    }
}

fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q == f64::NEG_INFINITY && a.is_finite() {
        return f64::MIN;
    }
    match div_residual_sign(a, b, q) {
        Some(s) if s <= 0 => q,
        _ => q.next_up(),
    }
}

fn sqrt_down(x: f64) -> f64 {
    let s = x.sqrt();
    if s == 0.0 || x.abs() < TINY {
        return if s == 0.0 { 0.0 } else { s.next_down() };
    }
    // x - s*s > 0 means s is below the true root.
    if (-s).mul_add(s, x) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

fn sqrt_up(x: f64) -> f64 {
    let s = x.sqrt();
    if s == 0.0 || x.abs() < TINY {
        return if s == 0.0 && x == 0.0 {
            0.0
        } else {
            s.next_up()
        };
    }
    if (-s).mul_add(s, x) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

fn widen_down(v: f64) -> f64 {
    let mut v = v;
    for _ in 0..LIBM_WIDEN_ULPS {
        v = v.next_down();
    }
    v
}

fn widen_up(v: f64) -> f64 {
    let mut v = v;
    for _ in 0..LIBM_WIDEN_ULPS {
        v = v.next_up();
    }
    v
}

fn exp_down(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        widen_down(x.exp()).max(0.0)
    }
}

fn exp_up(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        widen_up(x.exp())
    }
}

fn sinh_down(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        widen_down(x.sinh())
    }
}

fn sinh_up(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        widen_up(x.sinh())
    }
}

fn cosh_down(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        widen_down(x.cosh()).max(1.0)
    }
}

fn cosh_up(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        widen_up(x.cosh())
    }
}

/// `u - sin u` at a point, enclosed.
fn x_minus_sin_point(u: f64) -> Interval {
    if u == 0.0 {
        return Interval::ZERO;
    }
    if u.abs() < 1.0 {
        // Alternating series with decreasing terms: the value lies between
        // consecutive partial sums.
        let x = Interval::point(u);
        let x2 = x.sqr();
        let mut term = (x * x2).div_scalar(6.0);
        let mut sum = term;
        let mut prev = Interval::ZERO;
        let mut k = 3.0;
        for _ in 0..12 {
            prev = sum;
            term = -(term * x2).div_scalar((k + 1.0) * (k + 2.0));
            sum = sum + term;
            k += 2.0;
        }
        sum.hull(prev)
    } else {
        Interval::point(u) - Interval::point(u).sin()
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// Enclosure of pi.
    pub const PI: Interval = Interval {
        lo: std::f64::consts::PI,
        hi: 3.1415926535897936,
    };
    pub const ENTIRE_TRIG: Interval = Interval { lo: -1.0, hi: 1.0 };

    /// Builds `[lo, hi]`. Panics when `lo > hi` or either endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Interval {
        Interval::try_new(lo, hi).expect("invalid interval")
    }

    pub fn try_new(lo: f64, hi: f64) -> Result<Interval, IntervalError> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(IntervalError::Invalid { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub const fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    /// Tightest enclosure of a decimal literal such as `"1.08055"` or `"1e-6"`.
    pub fn from_decimal(s: &str) -> Result<Interval, IntervalError> {
        let x: f64 = s
            .trim()
            .parse()
            .map_err(|_| IntervalError::Parse(s.to_string()))?;
        if !x.is_finite() {
            return Err(IntervalError::Parse(s.to_string()));
        }
        if decimal_is_exact(s.trim(), x) {
            Ok(Interval::point(x))
        } else {
            Ok(Interval {
                lo: x.next_down(),
                hi: x.next_up(),
            })
        }
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    /// Upper bound of the width.
    pub fn width_up(self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Rounded midpoint; always lies inside the interval.
    pub fn midpoint(self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        (0.5 * self.lo + 0.5 * self.hi).clamp(self.lo, self.hi)
    }

    pub fn radius_up(self) -> f64 {
        let m = self.midpoint();
        sub_up(self.hi, m).max(sub_up(m, self.lo))
    }

    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn mig(self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    /// `true` when `self` is a subset of `other`.
    pub fn subset_of(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `true` when `x` lies in the interior.
    pub fn strictly_contains(self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    pub fn intersects(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn hull_with(self, x: f64) -> Interval {
        Interval {
            lo: self.lo.min(x),
            hi: self.hi.max(x),
        }
    }

    pub fn checked(self) -> Result<Interval, IntervalError> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(IntervalError::Overflow)
        }
    }

    /// Splits into two intervals sharing one endpoint whose union is `self`.
    pub fn split(self, strategy: SplitStrategy) -> Result<(Interval, Interval), IntervalError> {
        let m = match strategy {
            SplitStrategy::Arithmetic => self.midpoint(),
            SplitStrategy::Geometric => {
                if self.lo > 0.0 {
                    (self.lo * self.hi).sqrt()
                } else if self.hi < 0.0 {
                    -(self.lo * self.hi).sqrt()
                } else {
                    return Err(IntervalError::GeometricSplitUndefined);
                }
            }
            SplitStrategy::None => return Ok((self, self)),
        };
        let m = m.clamp(self.lo, self.hi);
        Ok((
            Interval { lo: self.lo, hi: m },
            Interval { lo: m, hi: self.hi },
        ))
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval {
                lo: 0.0,
                hi: self.mag(),
            }
        }
    }

    pub fn sqr(self) -> Interval {
        if self.lo >= 0.0 {
            Interval {
                lo: mul_down(self.lo, self.lo),
                hi: mul_up(self.hi, self.hi),
            }
        } else if self.hi <= 0.0 {
            Interval {
                lo: mul_down(self.hi, self.hi),
                hi: mul_up(self.lo, self.lo),
            }
        } else {
            let m = self.mag();
            Interval {
                lo: 0.0,
                hi: mul_up(m, m),
            }
        }
    }

    pub fn powi(self, n: u32) -> Interval {
        match n {
            0 => Interval::ONE,
            1 => self,
            _ if n % 2 == 0 => self.powi(n / 2).sqr(),
            _ => self * self.powi(n - 1),
        }
    }

    pub fn sqrt(self) -> Result<Interval, IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::Domain);
        }
        Ok(Interval {
            lo: sqrt_down(self.lo),
            hi: sqrt_up(self.hi),
        })
    }

    pub fn recip(self) -> Result<Interval, IntervalError> {
        Interval::ONE.div(self)
    }

    pub fn div(self, rhs: Interval) -> Result<Interval, IntervalError> {
        let (a, b) = (self, rhs);
        if b.contains_zero() {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        let r = if b.lo > 0.0 {
            if a.lo >= 0.0 {
                Interval {
                    lo: div_down(a.lo, b.hi),
                    hi: div_up(a.hi, b.lo),
                }
            } else if a.hi <= 0.0 {
                Interval {
                    lo: div_down(a.lo, b.lo),
                    hi: div_up(a.hi, b.hi),
                }
            } else {
                Interval {
                    lo: div_down(a.lo, b.lo),
                    hi: div_up(a.hi, b.lo),
                }
            }
        } else if a.lo >= 0.0 {
            Interval {
                lo: div_down(a.hi, b.hi),
                hi: div_up(a.lo, b.lo),
            }
        } else if a.hi <= 0.0 {
            Interval {
                lo: div_down(a.hi, b.lo),
                hi: div_up(a.lo, b.hi),
            }
        } else {
            Interval {
                lo: div_down(a.hi, b.hi),
                hi: div_up(a.lo, b.hi),
            }
        };
        Ok(r)
    }

    /// Division by a nonzero float.
    pub fn div_scalar(self, d: f64) -> Interval {
        self.div(Interval::point(d)).expect("nonzero divisor")
    }

    pub fn exp(self) -> Interval {
        Interval {
            lo: exp_down(self.lo),
            hi: exp_up(self.hi),
        }
    }

    pub fn sinh(self) -> Interval {
        Interval {
            lo: sinh_down(self.lo),
            hi: sinh_up(self.hi),
        }
    }

    pub fn cosh(self) -> Interval {
        if self.lo >= 0.0 {
            Interval {
                lo: cosh_down(self.lo),
                hi: cosh_up(self.hi),
            }
        } else if self.hi <= 0.0 {
            Interval {
                lo: cosh_down(self.hi),
                hi: cosh_up(self.lo),
            }
        } else {
            Interval {
                lo: 1.0,
                hi: cosh_up(self.mag()),
            }
        }
    }

    pub fn sin(self) -> Interval {
        trig(self, f64::sin, 0.5, -0.5)
    }

    pub fn cos(self) -> Interval {
        trig(self, f64::cos, 0.0, 1.0)
    }

    /// `u - sin u`, which is nondecreasing.
    pub fn x_minus_sin(self) -> Interval {
        let lo = x_minus_sin_point(self.lo).lo;
        let hi = x_minus_sin_point(self.hi).hi;
        Interval { lo, hi }
    }
}

/// Enclosure of `f` (sin or cos) over `x`. Maxima of `f` sit at
/// `(max_off + 2k) pi` and minima at `(min_off + 2k) pi`.
fn trig(x: Interval, f: fn(f64) -> f64, max_off: f64, min_off: f64) -> Interval {
    if !x.is_finite() || x.mag() > 1e8 || x.width() >= 6.0 {
        return Interval::ENTIRE_TRIG;
    }
    let at = |v: f64| {
        let fv = f(v);
        if v == 0.0 {
            Interval::point(fv)
        } else {
            Interval {
                lo: widen_down(fv),
                hi: widen_up(fv),
            }
        }
    };
    let mut r = at(x.lo).hull(at(x.hi));
    let touches = |off: f64| {
        let two_pi = 2.0 * std::f64::consts::PI;
        let k0 = ((x.lo - off * std::f64::consts::PI) / two_pi).floor() as i64 - 1;
        let k1 = ((x.hi - off * std::f64::consts::PI) / two_pi).ceil() as i64 + 1;
        (k0..=k1).any(|k| {
            let c = Interval::PI * Interval::point(off + 2.0 * k as f64);
            c.intersects(x)
        })
    };
    if touches(max_off) {
        r = r.hull_with(1.0);
    }
    if touches(min_off) {
        r = r.hull_with(-1.0);
    }
    Interval {
        lo: r.lo.max(-1.0),
        hi: r.hi.min(1.0),
    }
}

/// Whether the decimal literal `s` denotes exactly the double `x`.
fn decimal_is_exact(s: &str, x: f64) -> bool {
    if x == 0.0 {
        return true;
    }
    let Some((digits, exp)) = normalize_decimal(s) else {
        return false;
    };
    let exact = format!("{:.1100e}", x.abs());
    match normalize_decimal(&exact) {
        Some((d2, e2)) => digits == d2 && exp == e2,
        None => false,
    }
}

/// Significant digits and decimal exponent of a literal, sign dropped.
fn normalize_decimal(s: &str) -> Option<(String, i64)> {
    let s = s.trim_start_matches(['+', '-']);
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let all: String = format!("{int}{frac}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let lead = all.len() - all.trim_start_matches('0').len();
    let digits = all
        .trim_start_matches('0')
        .trim_end_matches('0')
        .to_string();
    if digits.is_empty() {
        return Some((String::new(), 0));
    }
    let point_pos = int.len() as i64 - lead as i64 + exp;
    Some((digits, point_pos))
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, rhs.lo),
            hi: add_up(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: sub_down(self.lo, rhs.hi),
            hi: sub_up(self.hi, rhs.lo),
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, b: Interval) -> Interval {
        let a = self;
        let (lo, hi) = if a.lo >= 0.0 {
            if b.lo >= 0.0 {
                (mul_down(a.lo, b.lo), mul_up(a.hi, b.hi))
            } else if b.hi <= 0.0 {
                (mul_down(a.hi, b.lo), mul_up(a.lo, b.hi))
            } else {
                (mul_down(a.hi, b.lo), mul_up(a.hi, b.hi))
            }
        } else if a.hi <= 0.0 {
            if b.lo >= 0.0 {
                (mul_down(a.lo, b.hi), mul_up(a.hi, b.lo))
            } else if b.hi <= 0.0 {
                (mul_down(a.hi, b.hi), mul_up(a.lo, b.lo))
            } else {
                (mul_down(a.lo, b.hi), mul_up(a.lo, b.lo))
            }
        } else if b.lo >= 0.0 {
            (mul_down(a.lo, b.hi), mul_up(a.hi, b.hi))
        } else if b.hi <= 0.0 {
            (mul_down(a.hi, b.lo), mul_up(a.lo, b.lo))
        } else {
            (
                mul_down(a.lo, b.hi).min(mul_down(a.hi, b.lo)),
                mul_up(a.lo, b.lo).max(mul_up(a.hi, b.hi)),
            )
        };
        Interval { lo, hi }
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Interval {
        Interval::point(x)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?},{:?}]", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Interval, IntervalError> {
        let err = || IntervalError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(err)?;
        let (a, b) = inner.split_once(',').ok_or_else(err)?;
        let lo: f64 = a.trim().parse().map_err(|_| err())?;
        let hi: f64 = b.trim().parse().map_err(|_| err())?;
        Interval::try_new(lo, hi).map_err(|_| err())
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Interval, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
