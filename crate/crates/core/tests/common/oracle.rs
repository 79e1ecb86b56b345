//! Integrands at `x = 0` evaluated from the curve itself rather than from
//! the difference identities the library uses, generic over the number type
//! so they can run in extended precision, plus Gauss-Legendre cubature.

#![allow(unused_parens, unused_variables, clippy::all)]

use std::cell::RefCell;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode};

pub const A_TERMS: [&str; 3] = ["A1", "A2", "A3"];

pub trait Real:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn k(x: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn to_f64(&self) -> f64;
}

impl Real for f64 {
    fn k(x: f64) -> f64 {
        x
    }
    fn sin(self) -> f64 {
        f64::sin(self)
    }
    fn cos(self) -> f64 {
        f64::cos(self)
    }
    fn sinh(self) -> f64 {
        f64::sinh(self)
    }
    fn cosh(self) -> f64 {
        f64::cosh(self)
    }
    fn powi(self, n: i32) -> f64 {
        f64::powi(self, n)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

const P: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CC: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// A 192-bit float.
#[derive(Debug, Clone)]
pub struct Big(pub BigFloat);

impl Add for Big {
    type Output = Big;
    fn add(self, o: Big) -> Big {
        Big(self.0.add(&o.0, P, RM))
    }
}

impl Sub for Big {
    type Output = Big;
    fn sub(self, o: Big) -> Big {
        Big(self.0.sub(&o.0, P, RM))
    }
}

impl Mul for Big {
    type Output = Big;
    fn mul(self, o: Big) -> Big {
        Big(self.0.mul(&o.0, P, RM))
    }
}

impl Div for Big {
    type Output = Big;
    fn div(self, o: Big) -> Big {
        Big(self.0.div(&o.0, P, RM))
    }
}

impl Neg for Big {
    type Output = Big;
    fn neg(self) -> Big {
        Big(self.0.neg())
    }
}

impl Real for Big {
    fn k(x: f64) -> Big {
        Big(BigFloat::from_f64(x, P))
    }
    fn sin(self) -> Big {
        CC.with(|cc| Big(self.0.sin(P, RM, &mut cc.borrow_mut())))
    }
    fn cos(self) -> Big {
        CC.with(|cc| Big(self.0.cos(P, RM, &mut cc.borrow_mut())))
    }
    fn sinh(self) -> Big {
        CC.with(|cc| Big(self.0.sinh(P, RM, &mut cc.borrow_mut())))
    }
    fn cosh(self) -> Big {
        CC.with(|cc| Big(self.0.cosh(P, RM, &mut cc.borrow_mut())))
    }
    fn powi(self, n: i32) -> Big {
        Big(self.0.powi(n as usize, P, RM))
    }
    fn to_f64(&self) -> f64 {
        let s = CC
            .with(|cc| {
                self.0
                    .format(astro_float::Radix::Dec, RM, &mut cc.borrow_mut())
            })
            .expect("formattable");
        s.parse().expect("decimal")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Curve {
    pub eps: f64,
    pub amp: f64,
}

fn k<T: Real>(x: f64) -> T {
    T::k(x)
}

impl Curve {
    /// Integrand of `id` at `(y, z)`; one-dimensional terms ignore `z`.
    /// The half-domain factor of the two-dimensional terms is not included.
    pub fn integrand(&self, id: &str, y: f64, z: f64) -> f64 {
        self.integrand_in::<f64>(id, y, z)
    }

    /// Same as [`Curve::integrand`] evaluated in 192-bit arithmetic.
    pub fn integrand_big(&self, id: &str, y: f64, z: f64) -> f64 {
        self.integrand_in::<Big>(id, y, z).to_f64()
    }

    #[rustfmt::skip]
    pub fn integrand_in<T: Real>(&self, id: &str, y: f64, z: f64) -> T {
        let e: T = k::<T>(1.0) + k(self.eps);
        let a: T = k(self.amp);
        let z1 = |x: T| x.clone() - e.clone() * x.sin();
        let z1x = |x: T| k::<T>(1.0) - e.clone() * x.cos();
        let z1xx = |x: T| e.clone() * x.sin();
        let z1xxx = |x: T| e.clone() * x.cos();
        let z2 = |x: T| a.clone() * (k::<T>(2.0) * x).sin();
        let z2x = |x: T| k::<T>(2.0) * a.clone() * (k::<T>(2.0) * x).cos();
        let z2xx = |x: T| -(k::<T>(4.0) * a.clone() * (k::<T>(2.0) * x).sin());
        let (yy, zz): (T, T) = (k(y), k(z));
        let z1_o = z1(k::<T>(0.0));
        let z1_my = z1(-yy.clone());
        let z1_mz = z1(-zz.clone());
        let z1_myz = z1(-(yy.clone() + zz.clone()));
        let z1_py = z1(yy.clone());
        let z1x_o = z1x(k::<T>(0.0));
        let z1x_my = z1x(-yy.clone());
        let z1x_mz = z1x(-zz.clone());
        let z1x_myz = z1x(-(yy.clone() + zz.clone()));
        let z1x_py = z1x(yy.clone());
        let z1xx_o = z1xx(k::<T>(0.0));
        let z1xx_my = z1xx(-yy.clone());
        let z1xx_mz = z1xx(-zz.clone());
        let z1xx_myz = z1xx(-(yy.clone() + zz.clone()));
        let z1xx_py = z1xx(yy.clone());
        let z1xxx_o = z1xxx(k::<T>(0.0));
        let z1xxx_my = z1xxx(-yy.clone());
        let z1xxx_mz = z1xxx(-zz.clone());
        let z1xxx_myz = z1xxx(-(yy.clone() + zz.clone()));
        let z1xxx_py = z1xxx(yy.clone());
        let z2_o = z2(k::<T>(0.0));
        let z2_my = z2(-yy.clone());
        let z2_mz = z2(-zz.clone());
        let z2_myz = z2(-(yy.clone() + zz.clone()));
        let z2_py = z2(yy.clone());
        let z2x_o = z2x(k::<T>(0.0));
        let z2x_my = z2x(-yy.clone());
        let z2x_mz = z2x(-zz.clone());
        let z2x_myz = z2x(-(yy.clone() + zz.clone()));
        let z2x_py = z2x(yy.clone());
        let z2xx_o = z2xx(k::<T>(0.0));
        let z2xx_my = z2xx(-yy.clone());
        let z2xx_mz = z2xx(-zz.clone());
        let z2xx_myz = z2xx(-(yy.clone() + zz.clone()));
        let z2xx_py = z2xx(yy.clone());
        match id {
        "A1" => (k::<T>(2.0) * (((z1_py.clone()).sin() * z1xx_py.clone()) / ((z2_py.clone()).cosh() - (z1_py.clone()).cos()))),
        "A2" => (k::<T>(2.0) * (((z1_py.clone()).cos() * ((z1x_o.clone() - z1x_py.clone())).powi(2)) / ((z2_py.clone()).cosh() - (z1_py.clone()).cos()))),
        "A3" => ((-(k::<T>(2.0)) * (((z1_py.clone()).sin() * (z1x_o.clone() - z1x_py.clone())) / (((z2_py.clone()).cosh() - (z1_py.clone()).cos())).powi(2))) * (((z2_py.clone()).sinh() * (z2x_o.clone() - z2x_py.clone())) + ((z1_py.clone()).sin() * (z1x_o.clone() - z1x_py.clone())))),
        "B11" => (-(((((z1_o.clone() - z1_my.clone())).sin() * ((z1x_o.clone() - z1x_my.clone())).powi(2)) / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B12" => (((((z1_o.clone() - z1_my.clone())).cos() * (z1xx_o.clone() - z1xx_my.clone())) / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B13" => ((-(((((z1_o.clone() - z1_my.clone())).cos() * (z1x_o.clone() - z1x_my.clone())) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * ((((z2_o.clone() - z2_my.clone())).sinh() * (z2x_o.clone() - z2x_my.clone())) + (((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B14" => (((((z1_o.clone() - z1_my.clone())).cos() * (z1x_o.clone() - z1x_my.clone())) / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())) * (((((z1_o.clone() - z1_mz.clone())).cos() * ((z1x_o.clone() - z1x_mz.clone())).powi(2)) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).cos() * ((z1x_my.clone() - z1x_myz.clone())).powi(2)) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B15" => (((((z1_o.clone() - z1_my.clone())).cos() * (z1x_o.clone() - z1x_my.clone())) / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1xx_o.clone() - z1xx_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1xx_my.clone() - z1xx_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B16" => (-(((((z1_o.clone() - z1_my.clone())).cos() * (z1x_o.clone() - z1x_my.clone())) / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * ((((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) * ((((z2_o.clone() - z2_mz.clone())).sinh() * (z2x_o.clone() - z2x_mz.clone())) + (((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())))) - (((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)) * ((((z2_my.clone() - z2_myz.clone())).sinh() * (z2x_my.clone() - z2x_myz.clone())) + (((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())))))),
        "B21" => (((((z1_o.clone() - z1_my.clone())).cos() * (z1x_o.clone() - z1x_my.clone())) / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())) * (((((z1_o.clone() - z1_mz.clone())).cos() * ((z1x_o.clone() - z1x_mz.clone())).powi(2)) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).cos() * ((z1x_my.clone() - z1x_myz.clone())).powi(2)) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B22" => ((-((((z1_o.clone() - z1_my.clone())).sin() / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * ((((z2_o.clone() - z2_my.clone())).sinh() * (z2x_o.clone() - z2x_my.clone())) + (((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())))) * (((((z1_o.clone() - z1_mz.clone())).cos() * ((z1x_o.clone() - z1x_mz.clone())).powi(2)) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).cos() * ((z1x_my.clone() - z1x_myz.clone())).powi(2)) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B23" => (-((((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * (((((z1_o.clone() - z1_mz.clone())).sin() * ((z1x_o.clone() - z1x_mz.clone())).powi(3)) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * ((z1x_my.clone() - z1x_myz.clone())).powi(3)) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B24" => ((k::<T>(2.0) * (((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * ((((((z1_o.clone() - z1_mz.clone())).cos() * (z1xx_o.clone() - z1xx_mz.clone())) * (z1x_o.clone() - z1x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - (((((z1_my.clone() - z1_myz.clone())).cos() * (z1xx_my.clone() - z1xx_myz.clone())) * (z1x_my.clone() - z1x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B25" => (-((((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * ((((((z1_o.clone() - z1_mz.clone())).cos() * ((z1x_o.clone() - z1x_mz.clone())).powi(2)) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) * ((((z2_o.clone() - z2_mz.clone())).sinh() * (z2x_o.clone() - z2x_mz.clone())) + (((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())))) - (((((z1_my.clone() - z1_myz.clone())).cos() * ((z1x_my.clone() - z1x_myz.clone())).powi(2)) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)) * ((((z2_my.clone() - z2_myz.clone())).sinh() * (z2x_my.clone() - z2x_myz.clone())) + (((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())))))),
        "B31" => (((((z1_o.clone() - z1_my.clone())).cos() * (z1x_o.clone() - z1x_my.clone())) / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1xx_o.clone() - z1xx_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1xx_my.clone() - z1xx_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B32" => ((-((((z1_o.clone() - z1_my.clone())).sin() / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * ((((z2_o.clone() - z2_my.clone())).sinh() * (z2x_o.clone() - z2x_my.clone())) + (((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1xx_o.clone() - z1xx_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1xx_my.clone() - z1xx_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B33" => ((((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())) * ((((((z1_o.clone() - z1_mz.clone())).cos() * (z1xx_o.clone() - z1xx_mz.clone())) * (z1x_o.clone() - z1x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - (((((z1_my.clone() - z1_myz.clone())).cos() * (z1xx_my.clone() - z1xx_myz.clone())) * (z1x_my.clone() - z1x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B34" => ((((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1xxx_o.clone() - z1xxx_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1xxx_my.clone() - z1xxx_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B35" => (-((((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * ((((((z1_o.clone() - z1_mz.clone())).sin() * (z1xx_o.clone() - z1xx_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) * ((((z2_o.clone() - z2_mz.clone())).sinh() * (z2x_o.clone() - z2x_mz.clone())) + (((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())))) - (((((z1_my.clone() - z1_myz.clone())).sin() * (z1xx_my.clone() - z1xx_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)) * ((((z2_my.clone() - z2_myz.clone())).sinh() * (z2x_my.clone() - z2x_myz.clone())) + (((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())))))),
        "B41" => (-(((((z1_o.clone() - z1_my.clone())).cos() * (z1x_o.clone() - z1x_my.clone())) / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * (((((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) * ((z2_o.clone() - z2_mz.clone())).sinh()) * (z2x_o.clone() - z2x_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - ((((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) * ((z2_my.clone() - z2_myz.clone())).sinh()) * (z2x_my.clone() - z2x_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B42" => (((((z1_o.clone() - z1_my.clone())).sin() / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2)) * ((((z2_o.clone() - z2_my.clone())).sinh() * (z2x_o.clone() - z2x_my.clone())) + (((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())))) * (((((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) * ((z2_o.clone() - z2_mz.clone())).sinh()) * (z2x_o.clone() - z2x_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - ((((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) * ((z2_my.clone() - z2_myz.clone())).sinh()) * (z2x_my.clone() - z2x_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B43" => (-((((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * (((((((z1_o.clone() - z1_mz.clone())).cos() * ((z1x_o.clone() - z1x_mz.clone())).powi(2)) * ((z2_o.clone() - z2_mz.clone())).sinh()) * (z2x_o.clone() - z2x_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - ((((((z1_my.clone() - z1_myz.clone())).cos() * ((z1x_my.clone() - z1x_myz.clone())).powi(2)) * ((z2_my.clone() - z2_myz.clone())).sinh()) * (z2x_my.clone() - z2x_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B44" => (-((((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * (((((((z1_o.clone() - z1_mz.clone())).sin() * (z1xx_o.clone() - z1xx_mz.clone())) * ((z2_o.clone() - z2_mz.clone())).sinh()) * (z2x_o.clone() - z2x_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - ((((((z1_my.clone() - z1_myz.clone())).sin() * (z1xx_my.clone() - z1xx_myz.clone())) * ((z2_my.clone() - z2_myz.clone())).sinh()) * (z2x_my.clone() - z2x_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B45" => (-((((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * (((((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) * ((z2_o.clone() - z2_mz.clone())).cosh()) * ((z2x_o.clone() - z2x_mz.clone())).powi(2)) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - ((((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) * ((z2_my.clone() - z2_myz.clone())).cosh()) * ((z2x_my.clone() - z2x_myz.clone())).powi(2)) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B46" => (-((((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * (((((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) * ((z2_o.clone() - z2_mz.clone())).sinh()) * (z2xx_o.clone() - z2xx_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - ((((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) * ((z2_my.clone() - z2_myz.clone())).sinh()) * (z2xx_my.clone() - z2xx_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B47" => ((k::<T>(2.0) * (((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * ((((((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) * ((z2_o.clone() - z2_mz.clone())).sinh()) * (z2x_o.clone() - z2x_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(3)) * ((((z2_o.clone() - z2_mz.clone())).sinh() * (z2x_o.clone() - z2x_mz.clone())) + (((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())))) - (((((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) * ((z2_my.clone() - z2_myz.clone())).sinh()) * (z2x_my.clone() - z2x_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(3)) * ((((z2_my.clone() - z2_myz.clone())).sinh() * (z2x_my.clone() - z2x_myz.clone())) + (((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())))))),
        "B51" => (-(((((z1_o.clone() - z1_my.clone())).cos() * (z1x_o.clone() - z1x_my.clone())) / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * ((((((z1_o.clone() - z1_mz.clone())).sin()).powi(2) * ((z1x_o.clone() - z1x_mz.clone())).powi(2)) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - (((((z1_my.clone() - z1_myz.clone())).sin()).powi(2) * ((z1x_my.clone() - z1x_myz.clone())).powi(2)) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B52" => (((((z1_o.clone() - z1_my.clone())).sin() / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2)) * ((((z2_o.clone() - z2_my.clone())).sinh() * (z2x_o.clone() - z2x_my.clone())) + (((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())))) * ((((((z1_o.clone() - z1_mz.clone())).sin()).powi(2) * ((z1x_o.clone() - z1x_mz.clone())).powi(2)) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - (((((z1_my.clone() - z1_myz.clone())).sin()).powi(2) * ((z1x_my.clone() - z1x_myz.clone())).powi(2)) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B53" => ((-(k::<T>(2.0)) * (((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * ((((((z1_o.clone() - z1_mz.clone())).sin() * ((z1_o.clone() - z1_mz.clone())).cos()) * ((z1x_o.clone() - z1x_mz.clone())).powi(3)) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - (((((z1_my.clone() - z1_myz.clone())).sin() * ((z1_my.clone() - z1_myz.clone())).cos()) * ((z1x_my.clone() - z1x_myz.clone())).powi(3)) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B54" => ((-(k::<T>(2.0)) * (((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * (((((((z1_o.clone() - z1_mz.clone())).sin()).powi(2) * (z1x_o.clone() - z1x_mz.clone())) * (z1xx_o.clone() - z1xx_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) - ((((((z1_my.clone() - z1_myz.clone())).sin()).powi(2) * (z1x_my.clone() - z1x_myz.clone())) * (z1xx_my.clone() - z1xx_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)))),
        "B55" => ((k::<T>(2.0) * (((z1_o.clone() - z1_my.clone())).sin() / (((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos()))) * (((((((z1_o.clone() - z1_mz.clone())).sin()).powi(2) * ((z1x_o.clone() - z1x_mz.clone())).powi(2)) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(3)) * ((((z2_o.clone() - z2_mz.clone())).sinh() * (z2x_o.clone() - z2x_mz.clone())) + (((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())))) - ((((((z1_my.clone() - z1_myz.clone())).sin()).powi(2) * ((z1x_my.clone() - z1x_myz.clone())).powi(2)) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(3)) * ((((z2_my.clone() - z2_myz.clone())).sinh() * (z2x_my.clone() - z2x_myz.clone())) + (((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())))))),
        "B61" => (-((((((z1_o.clone() - z1_my.clone())).cos() * ((z1x_o.clone() - z1x_my.clone())).powi(2)) * ((z2_o.clone() - z2_my.clone())).sinh()) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z2x_o.clone() - z2x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z2x_my.clone() - z2x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B62" => (-((((((z1_o.clone() - z1_my.clone())).sin() * (z1xx_o.clone() - z1xx_my.clone())) * ((z2_o.clone() - z2_my.clone())).sinh()) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z2x_o.clone() - z2x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z2x_my.clone() - z2x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B63" => (-(((((((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())) * ((z2_o.clone() - z2_my.clone())).cosh()) * (z2x_o.clone() - z2x_my.clone())) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z2x_o.clone() - z2x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z2x_my.clone() - z2x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B64" => (((k::<T>(2.0) * (((((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())) * ((z2_o.clone() - z2_my.clone())).sinh()) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(3))) * ((((z2_o.clone() - z2_my.clone())).sinh() * (z2x_o.clone() - z2x_my.clone())) + (((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z2x_o.clone() - z2x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z2x_my.clone() - z2x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B65" => (-((((((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())) * ((z2_o.clone() - z2_my.clone())).sinh()) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * ((((((z1_o.clone() - z1_mz.clone())).cos() * (z1x_o.clone() - z1x_mz.clone())) * (z2x_o.clone() - z2x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - (((((z1_my.clone() - z1_myz.clone())).cos() * (z1x_my.clone() - z1x_myz.clone())) * (z2x_my.clone() - z2x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B66" => (-((((((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())) * ((z2_o.clone() - z2_my.clone())).sinh()) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z2xx_o.clone() - z2xx_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z2xx_my.clone() - z2xx_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B67" => ((((((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())) * ((z2_o.clone() - z2_my.clone())).sinh()) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2)) * ((((((z1_o.clone() - z1_mz.clone())).sin() * (z2x_o.clone() - z2x_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) * ((((z2_o.clone() - z2_mz.clone())).sinh() * (z2x_o.clone() - z2x_mz.clone())) + (((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())))) - (((((z1_my.clone() - z1_myz.clone())).sin() * (z2x_my.clone() - z2x_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)) * ((((z2_my.clone() - z2_myz.clone())).sinh() * (z2x_my.clone() - z2x_myz.clone())) + (((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())))))),
        "B71" => ((-(k::<T>(2.0)) * (((((z1_o.clone() - z1_my.clone())).sin() * ((z1_o.clone() - z1_my.clone())).cos()) * ((z1x_o.clone() - z1x_my.clone())).powi(2)) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B72" => (-((((((z1_o.clone() - z1_my.clone())).sin()).powi(2) * (z1xx_o.clone() - z1xx_my.clone())) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B73" => (((k::<T>(2.0) * (((((z1_o.clone() - z1_my.clone())).sin()).powi(2) * (z1x_o.clone() - z1x_my.clone())) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(3))) * ((((z2_o.clone() - z2_my.clone())).sinh() * (z2x_o.clone() - z2x_my.clone())) + (((z1_o.clone() - z1_my.clone())).sin() * (z1x_o.clone() - z1x_my.clone())))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B74" => (-((((((z1_o.clone() - z1_my.clone())).sin()).powi(2) * (z1x_o.clone() - z1x_my.clone())) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * (((((z1_o.clone() - z1_mz.clone())).cos() * ((z1x_o.clone() - z1x_mz.clone())).powi(2)) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).cos() * ((z1x_my.clone() - z1x_myz.clone())).powi(2)) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B75" => (-((((((z1_o.clone() - z1_my.clone())).sin()).powi(2) * (z1x_o.clone() - z1x_my.clone())) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2))) * (((((z1_o.clone() - z1_mz.clone())).sin() * (z1xx_o.clone() - z1xx_mz.clone())) / (((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())) - ((((z1_my.clone() - z1_myz.clone())).sin() * (z1xx_my.clone() - z1xx_myz.clone())) / (((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())))),
        "B76" => ((((((z1_o.clone() - z1_my.clone())).sin()).powi(2) * (z1x_o.clone() - z1x_my.clone())) / ((((z2_o.clone() - z2_my.clone())).cosh() - ((z1_o.clone() - z1_my.clone())).cos())).powi(2)) * ((((((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())) / ((((z2_o.clone() - z2_mz.clone())).cosh() - ((z1_o.clone() - z1_mz.clone())).cos())).powi(2)) * ((((z2_o.clone() - z2_mz.clone())).sinh() * (z2x_o.clone() - z2x_mz.clone())) + (((z1_o.clone() - z1_mz.clone())).sin() * (z1x_o.clone() - z1x_mz.clone())))) - (((((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())) / ((((z2_my.clone() - z2_myz.clone())).cosh() - ((z1_my.clone() - z1_myz.clone())).cos())).powi(2)) * ((((z2_my.clone() - z2_myz.clone())).sinh() * (z2x_my.clone() - z2x_myz.clone())) + (((z1_my.clone() - z1_myz.clone())).sin() * (z1x_my.clone() - z1x_myz.clone())))))),
            _ => panic!("unknown term {id}"),
        }
    }
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite rule: `pieces` equal panels of `n` points each.
pub fn integrate_1d(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize, pieces: usize) -> f64 {
    let rule = gauss_legendre(n);
    let h = (b - a) / pieces as f64;
    let mut s = 0.0;
    for p in 0..pieces {
        let (lo, hi) = (a + p as f64 * h, a + (p + 1) as f64 * h);
        let (m, r) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        for &(x, w) in &rule {
            s += w * r * f(m + r * x);
        }
    }
    s
}

/// Tensor composite rule on a rectangle.
pub fn integrate_2d(
    f: impl Fn(f64, f64) -> f64,
    y: (f64, f64),
    z: (f64, f64),
    n: usize,
    pieces: usize,
) -> f64 {
    integrate_1d(
        |yy| integrate_1d(|zz| f(yy, zz), z.0, z.1, n, pieces),
        y.0,
        y.1,
        n,
        pieces,
    )
}
