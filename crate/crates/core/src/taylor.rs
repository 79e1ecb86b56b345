//! Truncated Taylor series with interval coefficients.
//!
//! A jet expanded over a box `X` stores, for each order `k`, an interval that
//! contains `f^(k)(x) / k!` for every `x` in `X`. The recurrences below hold
//! pointwise for exact Taylor coefficients, so evaluating them in interval
//! arithmetic keeps that property.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::interval::{Interval, IntervalError};

/// Highest order a [`Jet1`] can carry.
pub const MAX_JET_ORDER: usize = 14;

const N: usize = MAX_JET_ORDER + 1;

/// Univariate jet.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet1 {
    order: usize,
    c: [Interval; N],
}

pub type TaylorModel1 = Jet1;

fn is_zero(x: Interval) -> bool {
    x.lo() == 0.0 && x.hi() == 0.0
}

/// `k!` as an interval.
pub fn factorial(k: usize) -> Interval {
    (1..=k).fold(Interval::ONE, |acc, j| acc * Interval::point(j as f64))
}

impl Jet1 {
    pub fn constant(order: usize, v: Interval) -> Jet1 {
        assert!(
            order <= MAX_JET_ORDER,
            "jet order {order} exceeds {MAX_JET_ORDER}"
        );
        let mut c = [Interval::ZERO; N];
        c[0] = v;
        Jet1 { order, c }
    }

    /// The identity function expanded over `domain`.
    pub fn variable(order: usize, domain: Interval) -> Jet1 {
        let mut j = Jet1::constant(order, domain);
        if order >= 1 {
            j.c[1] = Interval::ONE;
        }
        j
    }

    pub fn from_coeffs(coeffs: &[Interval]) -> Jet1 {
        assert!(!coeffs.is_empty() && coeffs.len() <= N);
        let mut j = Jet1::constant(coeffs.len() - 1, coeffs[0]);
        j.c[..coeffs.len()].copy_from_slice(coeffs);
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> Interval {
        if k <= self.order {
            self.c[k]
        } else {
            Interval::ZERO
        }
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.c[..=self.order]
    }

    pub fn value(&self) -> Interval {
        self.c[0]
    }

    /// Enclosure of the `k`-th derivative over the expansion box.
    pub fn derivative(&self, k: usize) -> Interval {
        self.coeff(k) * factorial(k)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    pub fn scale(&self, s: Interval) -> Jet1 {
        let mut r = *self;
        for c in &mut r.c[..=self.order] {
            *c = *c * s;
        }
        r
    }

    pub fn sqr(&self) -> Jet1 {
        let mut r = Jet1::constant(self.order, Interval::ZERO);
        for k in 0..=self.order {
            let mut acc = Interval::ZERO;
            for j in 0..k.div_ceil(2) {
                let (a, b) = (self.c[j], self.c[k - j]);
                if !is_zero(a) && !is_zero(b) {
                    acc = acc + a * b;
                }
            }
            acc = acc * Interval::point(2.0);
            if k % 2 == 0 {
                acc = acc + self.c[k / 2].sqr();
            }
            r.c[k] = acc;
        }
        r
    }

    pub fn powi(&self, n: u32) -> Jet1 {
        match n {
            0 => Jet1::constant(self.order, Interval::ONE),
            1 => *self,
            _ if n % 2 == 0 => self.powi(n / 2).sqr(),
            _ => *self * self.powi(n - 1),
        }
    }

    pub fn div(&self, rhs: &Jet1) -> Result<Jet1, IntervalError> {
        let b0 = rhs.c[0];
        if b0.contains_zero() {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        let n = self.order;
        let mut q = Jet1::constant(n, Interval::ZERO);
        for k in 0..=n {
            let mut acc = self.c[k];
            for j in 1..=k {
                let (b, qq) = (rhs.c[j], q.c[k - j]);
                if !is_zero(b) && !is_zero(qq) {
                    acc = acc - b * qq;
                }
            }
            q.c[k] = acc.div(b0)?;
        }
        Ok(q)
    }

    /// Coefficients of `(f(u), g(u))` where `f' = sf g u'` and `g' = sg f u'`.
    fn coupled(&self, f0: Interval, g0: Interval, sf: bool, sg: bool) -> (Jet1, Jet1) {
        let n = self.order;
        let mut f = Jet1::constant(n, f0);
        let mut g = Jet1::constant(n, g0);
        let mut du = [Interval::ZERO; N];
        for j in 1..=n {
            du[j] = self.c[j] * Interval::point(j as f64);
        }
        for k in 1..=n {
            let mut af = Interval::ZERO;
            let mut ag = Interval::ZERO;
            for j in 1..=k {
                if is_zero(du[j]) {
                    continue;
                }
                af = af + du[j] * g.c[k - j];
                ag = ag + du[j] * f.c[k - j];
            }
            let kk = k as f64;
            let fk = af.div_scalar(kk);
            let gk = ag.div_scalar(kk);
            f.c[k] = if sf { fk } else { -fk };
            g.c[k] = if sg { gk } else { -gk };
        }
        (f, g)
    }

    pub fn sin_cos(&self) -> (Jet1, Jet1) {
        let u0 = self.c[0];
        self.coupled(u0.sin(), u0.cos(), true, false)
    }

    pub fn sinh_cosh(&self) -> (Jet1, Jet1) {
        let u0 = self.c[0];
        self.coupled(u0.sinh(), u0.cosh(), true, true)
    }

    pub fn exp(&self) -> Jet1 {
        let e0 = self.c[0].exp();
        self.coupled(e0, e0, true, true).0
    }

    /// `u - sin u` with a tight constant term.
    pub fn x_minus_sin(&self) -> Jet1 {
        let (s, _) = self.sin_cos();
        let mut r = *self - s;
        r.c[0] = self.c[0].x_minus_sin();
        r
    }
}

impl Add for Jet1 {
    type Output = Jet1;
    fn add(self, rhs: Jet1) -> Jet1 {
        debug_assert_eq!(self.order, rhs.order);
        let mut r = self;
        for k in 0..=self.order {
            r.c[k] = self.c[k] + rhs.c[k];
        }
        r
    }
}

impl Sub for Jet1 {
    type Output = Jet1;
    fn sub(self, rhs: Jet1) -> Jet1 {
        debug_assert_eq!(self.order, rhs.order);
        let mut r = self;
        for k in 0..=self.order {
            r.c[k] = self.c[k] - rhs.c[k];
        }
        r
    }
}

impl Neg for Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        let mut r = self;
        for k in 0..=self.order {
            r.c[k] = -self.c[k];
        }
        r
    }
}

impl Mul for Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: Jet1) -> Jet1 {
        debug_assert_eq!(self.order, rhs.order);
        let mut r = Jet1::constant(self.order, Interval::ZERO);
        for i in 0..=self.order {
            let a = self.c[i];
            if is_zero(a) {
                continue;
            }
            for j in 0..=self.order - i {
                let b = rhs.c[j];
                if !is_zero(b) {
                    r.c[i + j] = r.c[i + j] + a * b;
                }
            }
        }
        r
    }
}

impl fmt::Debug for Jet1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs()).finish()
    }
}

/// Bivariate jet in `(y, z)`, stored row-major by the `y` order.
#[derive(Clone, PartialEq)]
pub struct Jet2 {
    oy: usize,
    oz: usize,
    c: Vec<Interval>,
}

pub type TaylorModel2 = Jet2;

impl Jet2 {
    pub fn constant(order_y: usize, order_z: usize, v: Interval) -> Jet2 {
        let mut c = vec![Interval::ZERO; (order_y + 1) * (order_z + 1)];
        c[0] = v;
        Jet2 {
            oy: order_y,
            oz: order_z,
            c,
        }
    }

    /// The coordinate `y` expanded over `domain`.
    pub fn variable_y(order_y: usize, order_z: usize, domain: Interval) -> Jet2 {
        let mut j = Jet2::constant(order_y, order_z, domain);
        if order_y >= 1 {
            let i = j.idx(1, 0);
            j.c[i] = Interval::ONE;
        }
        j
    }

    /// The coordinate `z` expanded over `domain`.
    pub fn variable_z(order_y: usize, order_z: usize, domain: Interval) -> Jet2 {
        let mut j = Jet2::constant(order_y, order_z, domain);
        if order_z >= 1 {
            j.c[1] = Interval::ONE;
        }
        j
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.oz + 1) + j
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.oy, self.oz)
    }

    /// Coefficient of `y^i z^j`.
    pub fn coeff(&self, i: usize, j: usize) -> Interval {
        if i <= self.oy && j <= self.oz {
            self.c[self.idx(i, j)]
        } else {
            Interval::ZERO
        }
    }

    pub fn value(&self) -> Interval {
        self.c[0]
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|c| c.is_finite())
    }

    fn zip(&self, rhs: &Jet2, f: impl Fn(Interval, Interval) -> Interval) -> Jet2 {
        debug_assert_eq!(self.orders(), rhs.orders());
        let c = self.c.iter().zip(&rhs.c).map(|(&a, &b)| f(a, b)).collect();
        Jet2 {
            oy: self.oy,
            oz: self.oz,
            c,
        }
    }

    pub fn scale(&self, s: Interval) -> Jet2 {
        Jet2 {
            oy: self.oy,
            oz: self.oz,
            c: self.c.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn mul(&self, rhs: &Jet2) -> Jet2 {
        debug_assert_eq!(self.orders(), rhs.orders());
        let mut r = Jet2::constant(self.oy, self.oz, Interval::ZERO);
        for a in 0..=self.oy {
            for b in 0..=self.oz {
                let x = self.c[self.idx(a, b)];
                if is_zero(x) {
                    continue;
                }
                for p in 0..=self.oy - a {
                    for q in 0..=self.oz - b {
                        let w = rhs.c[rhs.idx(p, q)];
                        if !is_zero(w) {
                            let k = r.idx(a + p, b + q);
                            r.c[k] = r.c[k] + x * w;
                        }
                    }
                }
            }
        }
        r
    }

    pub fn sqr(&self) -> Jet2 {
        self.mul(self)
    }

    pub fn powi(&self, n: u32) -> Jet2 {
        match n {
            0 => Jet2::constant(self.oy, self.oz, Interval::ONE),
            1 => self.clone(),
            _ if n % 2 == 0 => self.powi(n / 2).sqr(),
            _ => self.mul(&self.powi(n - 1)),
        }
    }

    pub fn div(&self, rhs: &Jet2) -> Result<Jet2, IntervalError> {
        let b0 = rhs.c[0];
        if b0.contains_zero() {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        let mut q = Jet2::constant(self.oy, self.oz, Interval::ZERO);
        for i in 0..=self.oy {
            for j in 0..=self.oz {
                let mut acc = self.c[self.idx(i, j)];
                for p in 0..=i {
                    for r in 0..=j {
                        if p == 0 && r == 0 {
                            continue;
                        }
                        let b = rhs.c[rhs.idx(p, r)];
                        let qq = q.c[q.idx(i - p, j - r)];
                        if !is_zero(b) && !is_zero(qq) {
                            acc = acc - b * qq;
                        }
                    }
                }
                let k = q.idx(i, j);
                q.c[k] = acc.div(b0)?;
            }
        }
        Ok(q)
    }

    /// Coupled recurrence as in [`Jet1`]: row zero runs along `z`, higher
    /// rows use the `y` derivative.
    fn coupled(&self, f0: Interval, g0: Interval, sf: bool, sg: bool) -> (Jet2, Jet2) {
        let (oy, oz) = (self.oy, self.oz);
        let mut f = Jet2::constant(oy, oz, f0);
        let mut g = Jet2::constant(oy, oz, g0);
        let sign = |x: Interval, s: bool| if s { x } else { -x };
        for j in 1..=oz {
            let mut af = Interval::ZERO;
            let mut ag = Interval::ZERO;
            for b in 1..=j {
                let du = self.c[self.idx(0, b)];
                if is_zero(du) {
                    continue;
                }
                let du = du * Interval::point(b as f64);
                af = af + du * g.c[g.idx(0, j - b)];
                ag = ag + du * f.c[f.idx(0, j - b)];
            }
            let k = f.idx(0, j);
            f.c[k] = sign(af.div_scalar(j as f64), sf);
            g.c[k] = sign(ag.div_scalar(j as f64), sg);
        }
        for i in 1..=oy {
            for j in 0..=oz {
                let mut af = Interval::ZERO;
                let mut ag = Interval::ZERO;
                for a in 1..=i {
                    for b in 0..=j {
                        let du = self.c[self.idx(a, b)];
                        if is_zero(du) {
                            continue;
                        }
                        let du = du * Interval::point(a as f64);
                        af = af + du * g.c[g.idx(i - a, j - b)];
                        ag = ag + du * f.c[f.idx(i - a, j - b)];
                    }
                }
                let k = f.idx(i, j);
                f.c[k] = sign(af.div_scalar(i as f64), sf);
                g.c[k] = sign(ag.div_scalar(i as f64), sg);
            }
        }
        (f, g)
    }

    pub fn sin_cos(&self) -> (Jet2, Jet2) {
        let u0 = self.c[0];
        self.coupled(u0.sin(), u0.cos(), true, false)
    }

    pub fn sinh_cosh(&self) -> (Jet2, Jet2) {
        let u0 = self.c[0];
        self.coupled(u0.sinh(), u0.cosh(), true, true)
    }

    pub fn exp(&self) -> Jet2 {
        let e0 = self.c[0].exp();
        self.coupled(e0, e0, true, true).0
    }

    pub fn x_minus_sin(&self) -> Jet2 {
        let (s, _) = self.sin_cos();
        let mut r = self.sub(&s);
        r.c[0] = self.c[0].x_minus_sin();
        r
    }

    pub fn add(&self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn neg(&self) -> Jet2 {
        Jet2 {
            oy: self.oy,
            oz: self.oz,
            c: self.c.iter().map(|&a| -a).collect(),
        }
    }
}

impl fmt::Debug for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Interval]> = self.c.chunks(self.oz + 1).collect();
        f.debug_list().entries(rows).finish()
    }
}
