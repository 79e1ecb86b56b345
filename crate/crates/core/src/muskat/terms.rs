//! The 44 integrands as data: a coefficient, an outer factor at the pair
//! `(0, -y)` and, for two-dimensional terms, an inner factor whose difference
//! between the pairs `(0, -z)` and `(-y, -y-z)` is taken.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{Builder, Var, E};
use crate::interval::Interval;
use crate::quad::{Orders, TapeIntegrand};

use super::curve::{pair_blocks, CurveParams, PairBlocks};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sym {
    Sn,
    Cs,
    Sh,
    Ch,
    D1x,
    D1xx,
    D1xxx,
    D2x,
    D2xx,
    S,
}

impl Sym {
    fn node(self, p: &PairBlocks) -> E {
        match self {
            Sym::Sn => p.sn,
            Sym::Cs => p.cs,
            Sym::Sh => p.sh,
            Sym::Ch => p.ch,
            Sym::D1x => p.d1x,
            Sym::D1xx => p.d1xx,
            Sym::D1xxx => p.d1xxx,
            Sym::D2x => p.d2x,
            Sym::D2xx => p.d2xx,
            Sym::S => p.s,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Sym::Sn => "sin(D1)",
            Sym::Cs => "cos(D1)",
            Sym::Sh => "sinh(D2)",
            Sym::Ch => "cosh(D2)",
            Sym::D1x => "D1x",
            Sym::D1xx => "D1xx",
            Sym::D1xxx => "D1xxx",
            Sym::D2x => "D2x",
            Sym::D2xx => "D2xx",
            Sym::S => "S",
        }
    }
}

/// A monomial in the pair blocks over a power of the kernel `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub syms: &'static [(Sym, u32)],
    pub k_pow: u32,
}

impl Factor {
    fn numerator(&self, b: &mut Builder, p: &PairBlocks) -> E {
        let xs: Vec<E> = self
            .syms
            .iter()
            .map(|&(s, n)| {
                let x = s.node(p);
                b.powi(x, n)
            })
            .collect();
        b.product(&xs)
    }

    fn kernel(&self, b: &mut Builder, p: &PairBlocks) -> E {
        b.powi(p.k, self.k_pow)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .syms
            .iter()
            .map(|&(s, n)| {
                if n == 1 {
                    s.name().to_string()
                } else {
                    format!("{}^{n}", s.name())
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))?;
        if self.k_pow == 1 {
            write!(f, "/K")
        } else {
            write!(f, "/K^{}", self.k_pow)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arity {
    #[serde(rename = "1d")]
    One,
    #[serde(rename = "2d")]
    Two,
}

/// One registered integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegrandSpec {
    pub id: &'static str,
    pub coeff: i32,
    pub outer: Factor,
    pub inner: Option<Factor>,
    pub orders: Orders,
}

impl IntegrandSpec {
    pub fn arity(&self) -> Arity {
        if self.inner.is_some() {
            Arity::Two
        } else {
            Arity::One
        }
    }

    /// Whether the singular-second region needs the finer six-piece plan.
    pub fn is_strongly_singular(&self) -> bool {
        self.inner.is_some_and(|f| f.k_pow >= 3)
    }

    pub fn formula(&self) -> String {
        match self.inner {
            None => format!("{} * [{}](0,-y)", self.coeff, self.outer),
            Some(g) => format!(
                "{} * [{}](0,-y) * ([{g}](0,-z) - [{g}](-y,-y-z))",
                self.coeff, self.outer
            ),
        }
    }

    /// Compiles the integrand and its numerator/denominator form.
    pub fn build(&self, params: &CurveParams) -> TapeIntegrand {
        let mut b = Builder::new();
        let y = b.var(Var::Y);
        let ny = b.neg(y);
        let outer = pair_blocks(&mut b, y, ny);
        let c = b.num(self.coeff as f64);
        let on = self.outer.numerator(&mut b, &outer);
        let ok = self.outer.kernel(&mut b, &outer);
        let (f, num, den, dim) = match self.inner {
            None => {
                let num = b.mul(c, on);
                let f = b.div(num, ok);
                (f, num, ok, 1)
            }
            Some(g) => {
                let z = b.var(Var::Z);
                let nz = b.neg(z);
                let p1 = pair_blocks(&mut b, z, nz);
                let y2 = b.scale(y, Interval::point(2.0));
                let sum = b.add(y2, z);
                let s2 = b.neg(sum);
                let p2 = pair_blocks(&mut b, z, s2);
                let g1 = g.numerator(&mut b, &p1);
                let k1 = g.kernel(&mut b, &p1);
                let g2 = g.numerator(&mut b, &p2);
                let k2 = g.kernel(&mut b, &p2);

                let q1 = b.div(g1, k1);
                let q2 = b.div(g2, k2);
                let diff = b.sub(q1, q2);
                let outer_f = b.div(on, ok);
                let cf = b.mul(c, outer_f);
                let f = b.mul(cf, diff);

                let a = b.mul(g1, k2);
                let bb = b.mul(g2, k1);
                let cross = b.sub(a, bb);
                let con = b.mul(c, on);
                let num = b.mul(con, cross);
                let kk = b.mul(k1, k2);
                let den = b.mul(ok, kk);
                (f, num, den, 2)
            }
        };
        TapeIntegrand {
            dim,
            f: b.compile(&[f]),
            quotient: Some(b.compile(&[num, den])),
            eps: params.eps,
            amp: params.amp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegistryError {
    #[error("unknown term {0}")]
    UnknownTerm(String),
    #[error(
        "term {term}: {what} coefficient of order {order} along {axis} does not vanish ({value})"
    )]
    OrderTooHigh {
        term: String,
        what: &'static str,
        axis: char,
        order: u32,
        value: Interval,
    },
    #[error(
        "term {term}: denominator coefficient of order {order} along {axis} vanishes ({value})"
    )]
    DenominatorOrderTooLow {
        term: String,
        axis: char,
        order: u32,
        value: Interval,
    },
    #[error("term {term}: evaluation failed: {reason}")]
    Evaluation { term: String, reason: String },
}

use Sym::*;

const fn f(syms: &'static [(Sym, u32)], k_pow: u32) -> Factor {
    Factor { syms, k_pow }
}

const fn t(
    id: &'static str,
    coeff: i32,
    outer: Factor,
    inner: Factor,
    o: [u32; 4],
) -> IntegrandSpec {
    IntegrandSpec {
        id,
        coeff,
        outer,
        inner: Some(inner),
        orders: Orders::new(o[0], o[1], o[2], o[3]),
    }
}

const fn a(id: &'static str, coeff: i32, outer: Factor, o: u32) -> IntegrandSpec {
    IntegrandSpec {
        id,
        coeff,
        outer,
        inner: None,
        orders: Orders::new(o, 0, o, 0),
    }
}

static REGISTRY: [IntegrandSpec; 44] = [
    a("A1", 2, f(&[(Sn, 1), (D1xx, 1)], 1), 2),
    a("A2", 2, f(&[(Cs, 1), (D1x, 2)], 1), 2),
    a("A3", -2, f(&[(Sn, 1), (D1x, 1), (S, 1)], 2), 4),
    t(
        "B11",
        -1,
        f(&[(Sn, 1), (D1x, 2)], 1),
        f(&[(Sn, 1), (D1x, 1)], 1),
        [6, 4, 2, 4],
    ),
    t(
        "B12",
        1,
        f(&[(Cs, 1), (D1xx, 1)], 1),
        f(&[(Sn, 1), (D1x, 1)], 1),
        [2, 4, 2, 4],
    ),
    t(
        "B13",
        -1,
        f(&[(Cs, 1), (D1x, 1), (S, 1)], 2),
        f(&[(Sn, 1), (D1x, 1)], 1),
        [6, 4, 4, 4],
    ),
    t(
        "B14",
        1,
        f(&[(Cs, 1), (D1x, 1)], 1),
        f(&[(Cs, 1), (D1x, 2)], 1),
        [3, 4, 2, 4],
    ),
    t(
        "B15",
        1,
        f(&[(Cs, 1), (D1x, 1)], 1),
        f(&[(Sn, 1), (D1xx, 1)], 1),
        [3, 4, 2, 4],
    ),
    t(
        "B16",
        -1,
        f(&[(Cs, 1), (D1x, 1)], 1),
        f(&[(Sn, 1), (D1x, 1), (S, 1)], 2),
        [3, 8, 2, 8],
    ),
    t(
        "B21",
        1,
        f(&[(Cs, 1), (D1x, 1)], 1),
        f(&[(Cs, 1), (D1x, 2)], 1),
        [3, 4, 2, 4],
    ),
    t(
        "B22",
        -1,
        f(&[(Sn, 1), (S, 1)], 2),
        f(&[(Cs, 1), (D1x, 2)], 1),
        [5, 4, 4, 4],
    ),
    t(
        "B23",
        -1,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 1), (D1x, 3)], 1),
        [2, 6, 2, 4],
    ),
    t(
        "B24",
        2,
        f(&[(Sn, 1)], 1),
        f(&[(Cs, 1), (D1xx, 1), (D1x, 1)], 1),
        [2, 4, 2, 4],
    ),
    t(
        "B25",
        -1,
        f(&[(Sn, 1)], 1),
        f(&[(Cs, 1), (D1x, 2), (S, 1)], 2),
        [2, 8, 2, 8],
    ),
    t(
        "B31",
        1,
        f(&[(Cs, 1), (D1x, 1)], 1),
        f(&[(Sn, 1), (D1xx, 1)], 1),
        [3, 4, 2, 4],
    ),
    t(
        "B32",
        -1,
        f(&[(Sn, 1), (S, 1)], 2),
        f(&[(Sn, 1), (D1xx, 1)], 1),
        [5, 4, 4, 4],
    ),
    t(
        "B33",
        1,
        f(&[(Sn, 1)], 1),
        f(&[(Cs, 1), (D1xx, 1), (D1x, 1)], 1),
        [2, 4, 2, 4],
    ),
    t(
        "B34",
        1,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 1), (D1xxx, 1)], 1),
        [2, 4, 2, 4],
    ),
    t(
        "B35",
        -1,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 1), (D1xx, 1), (S, 1)], 2),
        [2, 8, 2, 8],
    ),
    t(
        "B41",
        -1,
        f(&[(Cs, 1), (D1x, 1)], 1),
        f(&[(Sn, 1), (D1x, 1), (Sh, 1), (D2x, 1)], 2),
        [3, 8, 2, 8],
    ),
    t(
        "B42",
        1,
        f(&[(Sn, 1), (S, 1)], 2),
        f(&[(Sn, 1), (D1x, 1), (Sh, 1), (D2x, 1)], 2),
        [5, 8, 4, 8],
    ),
    t(
        "B43",
        -1,
        f(&[(Sn, 1)], 1),
        f(&[(Cs, 1), (D1x, 2), (Sh, 1), (D2x, 1)], 2),
        [2, 8, 2, 8],
    ),
    t(
        "B44",
        -1,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 1), (D1xx, 1), (Sh, 1), (D2x, 1)], 2),
        [2, 8, 2, 8],
    ),
    t(
        "B45",
        -1,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 1), (D1x, 1), (Ch, 1), (D2x, 2)], 2),
        [2, 8, 2, 8],
    ),
    t(
        "B46",
        -1,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 1), (D1x, 1), (Sh, 1), (D2xx, 1)], 2),
        [2, 8, 2, 8],
    ),
    t(
        "B47",
        2,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 1), (D1x, 1), (Sh, 1), (D2x, 1), (S, 1)], 3),
        [2, 12, 2, 12],
    ),
    t(
        "B51",
        -1,
        f(&[(Cs, 1), (D1x, 1)], 1),
        f(&[(Sn, 2), (D1x, 2)], 2),
        [3, 8, 2, 8],
    ),
    t(
        "B52",
        1,
        f(&[(Sn, 1), (S, 1)], 2),
        f(&[(Sn, 2), (D1x, 2)], 2),
        [5, 8, 4, 8],
    ),
    t(
        "B53",
        -2,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 1), (Cs, 1), (D1x, 3)], 2),
        [2, 8, 2, 8],
    ),
    t(
        "B54",
        -2,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 2), (D1x, 1), (D1xx, 1)], 2),
        [2, 8, 2, 8],
    ),
    t(
        "B55",
        2,
        f(&[(Sn, 1)], 1),
        f(&[(Sn, 2), (D1x, 2), (S, 1)], 3),
        [2, 12, 2, 12],
    ),
    t(
        "B61",
        -1,
        f(&[(Cs, 1), (D1x, 2), (Sh, 1)], 2),
        f(&[(Sn, 1), (D2x, 1)], 1),
        [6, 4, 4, 4],
    ),
    t(
        "B62",
        -1,
        f(&[(Sn, 1), (D1xx, 1), (Sh, 1)], 2),
        f(&[(Sn, 1), (D2x, 1)], 1),
        [4, 4, 4, 4],
    ),
    t(
        "B63",
        -1,
        f(&[(Sn, 1), (D1x, 1), (Ch, 1), (D2x, 1)], 2),
        f(&[(Sn, 1), (D2x, 1)], 1),
        [6, 4, 4, 4],
    ),
    t(
        "B64",
        2,
        f(&[(Sn, 1), (D1x, 1), (Sh, 1), (S, 1)], 3),
        f(&[(Sn, 1), (D2x, 1)], 1),
        [8, 4, 6, 4],
    ),
    t(
        "B65",
        -1,
        f(&[(Sn, 1), (D1x, 1), (Sh, 1)], 2),
        f(&[(Cs, 1), (D1x, 1), (D2x, 1)], 1),
        [5, 4, 4, 4],
    ),
    t(
        "B66",
        -1,
        f(&[(Sn, 1), (D1x, 1), (Sh, 1)], 2),
        f(&[(Sn, 1), (D2xx, 1)], 1),
        [5, 4, 4, 4],
    ),
    t(
        "B67",
        1,
        f(&[(Sn, 1), (D1x, 1), (Sh, 1)], 2),
        f(&[(Sn, 1), (D2x, 1), (S, 1)], 2),
        [5, 8, 4, 8],
    ),
    t(
        "B71",
        -2,
        f(&[(Sn, 1), (Cs, 1), (D1x, 2)], 2),
        f(&[(Sn, 1), (D1x, 1)], 1),
        [6, 4, 4, 4],
    ),
    t(
        "B72",
        -1,
        f(&[(Sn, 2), (D1xx, 1)], 2),
        f(&[(Sn, 1), (D1x, 1)], 1),
        [4, 4, 4, 4],
    ),
    t(
        "B73",
        2,
        f(&[(Sn, 2), (D1x, 1), (S, 1)], 3),
        f(&[(Sn, 1), (D1x, 1)], 1),
        [8, 4, 6, 4],
    ),
    t(
        "B74",
        -1,
        f(&[(Sn, 2), (D1x, 1)], 2),
        f(&[(Cs, 1), (D1x, 2)], 1),
        [5, 4, 4, 4],
    ),
    t(
        "B75",
        -1,
        f(&[(Sn, 2), (D1x, 1)], 2),
        f(&[(Sn, 1), (D1xx, 1)], 1),
        [5, 4, 4, 4],
    ),
    t(
        "B76",
        1,
        f(&[(Sn, 2), (D1x, 1)], 2),
        f(&[(Sn, 1), (D1x, 1), (S, 1)], 2),
        [5, 8, 4, 8],
    ),
];

/// All registered integrands: `A1..A3` then `B11..B76`.
pub fn registry() -> &'static [IntegrandSpec] {
    &REGISTRY
}

pub fn a_terms() -> &'static [IntegrandSpec] {
    &REGISTRY[..3]
}

pub fn b_terms() -> &'static [IntegrandSpec] {
    &REGISTRY[3..]
}

pub fn lookup(id: &str) -> Result<&'static IntegrandSpec, RegistryError> {
    REGISTRY
        .iter()
        .find(|s| s.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| RegistryError::UnknownTerm(id.to_string()))
}

/// Checks the declared orders at a singular axis: numerator coefficients
/// below the declared order and denominator coefficients below its order
/// must enclose zero, and the denominator coefficient at its order must not.
pub fn validate_orders(spec: &IntegrandSpec, params: &CurveParams) -> Result<(), RegistryError> {
    let integrand = spec.build(params);
    let tape = integrand
        .quotient
        .as_ref()
        .expect("registered terms carry a quotient form");
    let err = |reason: String| RegistryError::Evaluation {
        term: spec.id.to_string(),
        reason,
    };
    let mut axes = vec![('y', spec.orders.num_y, spec.orders.den_y)];
    if spec.inner.is_some() {
        axes.push(('z', spec.orders.num_z, spec.orders.den_z));
    }
    for (axis, num_ord, den_ord) in axes {
        let order = num_ord.max(den_ord) as usize;
        // Off-axis sample points for the other variable.
        let others: &[f64] = if spec.inner.is_some() {
            &[0.37, 1.3, 2.6, -0.8, -2.2]
        } else {
            &[0.0]
        };
        for &other in others {
            let (y, z) = match axis {
                'y' => (
                    crate::taylor::Jet1::variable(order, Interval::ZERO),
                    crate::taylor::Jet1::constant(order, Interval::point(other)),
                ),
                _ => (
                    crate::taylor::Jet1::constant(order, Interval::point(other)),
                    crate::taylor::Jet1::variable(order, Interval::ZERO),
                ),
            };
            let out = tape
                .eval(&crate::expr::Inputs {
                    y,
                    z,
                    eps: params.eps,
                    amp: params.amp,
                })
                .map_err(|e| err(e.to_string()))?;
            let (num, den) = (&out[0], &out[1]);
            for k in 0..num_ord {
                let c = num.coeff(k as usize);
                if !c.contains_zero() {
                    return Err(RegistryError::OrderTooHigh {
                        term: spec.id.into(),
                        what: "numerator",
                        axis,
                        order: k,
                        value: c,
                    });
                }
            }
            for k in 0..den_ord {
                let c = den.coeff(k as usize);
                if !c.contains_zero() {
                    return Err(RegistryError::OrderTooHigh {
                        term: spec.id.into(),
                        what: "denominator",
                        axis,
                        order: k,
                        value: c,
                    });
                }
            }
            let lead = den.coeff(den_ord as usize);
            if lead.contains_zero() {
                return Err(RegistryError::DenominatorOrderTooLow {
                    term: spec.id.into(),
                    axis,
                    order: den_ord,
                    value: lead,
                });
            }
        }
    }
    Ok(())
}
