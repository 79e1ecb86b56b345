//! The initial interface `z(x) = (x - (1+eps) sin x, A sin 2x)` and the
//! pair differences the kernels are built from.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{Builder, Scalar, Var, E};
use crate::interval::Interval;

pub const EPS_MAX: &str = "1e-6";
pub const AMP_LO: &str = "1.08050";
pub const AMP_HI: &str = "1.08055";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("eps {0} must lie in [0, 1e-6]")]
    Eps(Interval),
    #[error("A {0} must lie in [1.08050, 1.08055]")]
    Amp(Interval),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveParams {
    pub eps: Interval,
    pub amp: Interval,
}

fn decimal(s: &str) -> Interval {
    Interval::from_decimal(s).expect("valid literal")
}

impl CurveParams {
    pub fn new(eps: Interval, amp: Interval) -> Result<CurveParams, ParamError> {
        if eps.lo() < 0.0 || eps.hi() > decimal(EPS_MAX).hi() {
            return Err(ParamError::Eps(eps));
        }
        if !amp.subset_of(decimal(AMP_LO).hull(decimal(AMP_HI))) {
            return Err(ParamError::Amp(amp));
        }
        Ok(CurveParams { eps, amp })
    }

    /// The full perturbation range `[0, 1e-6]`.
    pub fn eps_range() -> Interval {
        Interval::new(0.0, decimal(EPS_MAX).hi())
    }

    pub fn amp_lo() -> Interval {
        decimal(AMP_LO)
    }

    pub fn amp_hi() -> Interval {
        decimal(AMP_HI)
    }

    /// The full amplitude range `[1.08050, 1.08055]`.
    pub fn amp_range() -> Interval {
        decimal(AMP_LO).hull(decimal(AMP_HI))
    }
}

/// Curve value and derivatives at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveJet<T> {
    pub z1: T,
    pub z1_x: T,
    pub z1_xx: T,
    pub z1_xxx: T,
    pub z2: T,
    pub z2_x: T,
    pub z2_xx: T,
}

pub fn curve_eval<T: Scalar>(p: &CurveParams, x: &T) -> CurveJet<T> {
    let one_eps = Interval::ONE + p.eps;
    let (s, c) = x.sin_cos();
    let (s2, c2) = x.scale(Interval::point(2.0)).sin_cos();
    let one = x.constant_like(Interval::ONE);
    CurveJet {
        z1: x.sub(&s.scale(one_eps)),
        z1_x: one.sub(&c.scale(one_eps)),
        z1_xx: s.scale(one_eps),
        z1_xxx: c.scale(one_eps),
        z2: s2.scale(p.amp),
        z2_x: c2.scale(Interval::point(2.0) * p.amp),
        z2_xx: s2.scale(Interval::point(-4.0) * p.amp),
    }
}

/// Kernel blocks for a pair of curve points `p`, `q`, expressed through
/// `d = p - q` and `s = p + q`. `D*` are differences `z(p) - z(q)`.
#[derive(Debug, Clone, Copy)]
pub struct PairBlocks {
    pub d1: E,
    pub d1x: E,
    pub d1xx: E,
    pub d1xxx: E,
    pub d2: E,
    pub d2x: E,
    pub d2xx: E,
    /// `cosh D2 - cos D1`.
    pub k: E,
    pub sn: E,
    pub cs: E,
    pub sh: E,
    pub ch: E,
    /// `sinh D2 * D2x + sin D1 * D1x`.
    pub s: E,
}

pub fn pair_blocks(b: &mut Builder, d: E, s: E) -> PairBlocks {
    let eps = b.var(Var::Eps);
    let amp = b.var(Var::Amp);
    let one = b.num(1.0);
    let one_eps = b.add(one, eps);
    let hd = b.scale(d, Interval::point(0.5));
    let hs = b.scale(s, Interval::point(0.5));
    let qs = b.scale(s, Interval::point(0.25));
    let sin_hd = b.sin(hd);
    let sin_hs = b.sin(hs);
    let cos_hs = b.cos(hs);
    let sin_qs = b.sin(qs);

    // d - 2 cos(s/2) sin(d/2) = 2 (d/2 - sin(d/2)) + 4 sin(d/2) sin^2(s/4)
    let phi = b.x_minus_sin(hd);
    let t1 = b.scale(phi, Interval::point(2.0));
    let sq = b.sqr(sin_qs);
    let t2 = b.mul(sin_hd, sq);
    let t2 = b.scale(t2, Interval::point(4.0));
    let cs_sd = b.mul(cos_hs, sin_hd);
    let t3 = b.mul(eps, cs_sd);
    let t3 = b.scale(t3, Interval::point(2.0));
    let t12 = b.add(t1, t2);
    let d1 = b.sub(t12, t3);

    let ss = b.mul(sin_hs, sin_hd);
    let ss = b.mul(one_eps, ss);
    let d1x = b.scale(ss, Interval::point(2.0));
    let cs2 = b.mul(one_eps, cs_sd);
    let d1xx = b.scale(cs2, Interval::point(2.0));
    let d1xxx = b.neg(d1x);

    let sin_d = b.sin(d);
    let sin_s = b.sin(s);
    let cos_s = b.cos(s);
    let a_sin_d = b.mul(amp, sin_d);
    let c2 = b.mul(cos_s, a_sin_d);
    let d2 = b.scale(c2, Interval::point(2.0));
    let s2 = b.mul(sin_s, a_sin_d);
    let d2x = b.scale(s2, Interval::point(-4.0));
    let d2xx = b.scale(d2, Interval::point(-4.0));

    // cosh D2 - cos D1 = 2 sinh^2(D2/2) + 2 sin^2(D1/2)
    let hd1 = b.scale(d1, Interval::point(0.5));
    let hd2 = b.scale(d2, Interval::point(0.5));
    let sh_h = b.sinh(hd2);
    let sn_h = b.sin(hd1);
    let k1 = b.sqr(sh_h);
    let k2 = b.sqr(sn_h);
    let k = b.add(k1, k2);
    let k = b.scale(k, Interval::point(2.0));

    let sn = b.sin(d1);
    let cs = b.cos(d1);
    let sh = b.sinh(d2);
    let ch = b.cosh(d2);
    let p1 = b.mul(sh, d2x);
    let p2 = b.mul(sn, d1x);
    let s_blk = b.add(p1, p2);
    PairBlocks {
        d1,
        d1x,
        d1xx,
        d1xxx,
        d2,
        d2x,
        d2xx,
        k,
        sn,
        cs,
        sh,
        ch,
        s: s_blk,
    }
}
