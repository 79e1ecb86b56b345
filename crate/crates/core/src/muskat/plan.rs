//! Region decompositions of the reduced integration domains.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::interval::{Interval, SplitStrategy};
use crate::quad::{Method, PiEdge, Region, Tolerances};

use super::terms::{Arity, IntegrandSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionClass {
    /// Away from every singular axis.
    Nonsingular,
    /// The one-dimensional neighbourhood of `y = 0`.
    Singular,
    /// `y` near zero, `z` away from it.
    SingularFirst,
    /// `z` near zero, `y` away from it.
    SingularSecond,
    /// Both near zero.
    SingularCenter,
}

impl RegionClass {
    pub const ALL: [RegionClass; 5] = [
        RegionClass::Nonsingular,
        RegionClass::Singular,
        RegionClass::SingularFirst,
        RegionClass::SingularSecond,
        RegionClass::SingularCenter,
    ];

    /// Two-dimensional classes in report column order.
    pub const COLUMNS_2D: [RegionClass; 4] = [
        RegionClass::Nonsingular,
        RegionClass::SingularCenter,
        RegionClass::SingularFirst,
        RegionClass::SingularSecond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionClass::Nonsingular => "nonsingular",
            RegionClass::Singular => "singular",
            RegionClass::SingularFirst => "singular-first",
            RegionClass::SingularSecond => "singular-second",
            RegionClass::SingularCenter => "singular-center",
        }
    }

    /// Heading used in the two-dimensional CSV layout.
    pub fn column(self) -> &'static str {
        match self {
            RegionClass::Nonsingular => "bounded-region",
            RegionClass::Singular => "singular",
            RegionClass::SingularFirst => "singularity-y-axis",
            RegionClass::SingularSecond => "singularity-z-axis",
            RegionClass::SingularCenter => "singularity-center",
        }
    }
}

impl fmt::Display for RegionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RegionClass::ALL
            .into_iter()
            .find(|c| c.name() == s || c.column() == s)
            .ok_or_else(|| format!("unknown region class {s:?}"))
    }
}

/// Maximum subdivision depths per region class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Depths {
    pub nonsingular: u32,
    pub singular: u32,
    pub singular_first: u32,
    pub singular_second: u32,
    /// Singular-second depth for the two cubic-kernel terms.
    pub singular_second_special: u32,
    pub singular_center: u32,
}

impl Default for Depths {
    fn default() -> Self {
        Depths {
            nonsingular: 18,
            singular: 12,
            singular_first: 8,
            singular_second: 9,
            singular_second_special: 10,
            singular_center: 8,
        }
    }
}

impl Depths {
    /// Defaults with the two-dimensional nonsingular depth.
    pub fn part2() -> Depths {
        Depths {
            nonsingular: 10,
            ..Depths::default()
        }
    }

    /// Every depth capped at `cap`.
    pub fn capped(self, cap: u32) -> Depths {
        Depths {
            nonsingular: self.nonsingular.min(cap),
            singular: self.singular.min(cap),
            singular_first: self.singular_first.min(cap),
            singular_second: self.singular_second.min(cap),
            singular_second_special: self.singular_second_special.min(cap),
            singular_center: self.singular_center.min(cap),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanConfig {
    pub delta: f64,
    pub tol: Tolerances,
    pub depths: Depths,
}

impl PlanConfig {
    pub fn part1() -> PlanConfig {
        PlanConfig {
            delta: 2f64.powi(-9),
            tol: Tolerances {
                abs_tol: 1e-6,
                rel_tol: 1e-6,
            },
            depths: Depths::default(),
        }
    }

    pub fn part2() -> PlanConfig {
        PlanConfig {
            delta: 2f64.powi(-5),
            tol: Tolerances {
                abs_tol: 1e-4,
                rel_tol: 1e-4,
            },
            depths: Depths::part2(),
        }
    }
}

/// One region of a plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub class: RegionClass,
    /// Distinguishes subregions of the same class.
    pub label: String,
    pub region: Region,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionPlan {
    pub term: String,
    pub entries: Vec<PlanEntry>,
}

impl RegionPlan {
    pub fn class(&self, class: RegionClass) -> impl Iterator<Item = &PlanEntry> {
        self.entries.iter().filter(move |e| e.class == class)
    }
}

const SECOND_CUTS: [f64; 2] = [0.65, 0.95];
const SECOND_CUTS_SPECIAL: [f64; 5] = [0.325, 0.65, 0.775, 0.95, 1.5];

fn pi_hi() -> f64 {
    Interval::PI.hi()
}

pub fn region_plan(spec: &IntegrandSpec, cfg: &PlanConfig) -> RegionPlan {
    let d = cfg.delta;
    let dp = &cfg.depths;
    let o = spec.orders;
    let arith = SplitStrategy::Arithmetic;
    let geo = SplitStrategy::Geometric;
    let mut entries = Vec::new();
    let mut push = |class, label: String, region, method| {
        entries.push(PlanEntry {
            class,
            label,
            region,
            method,
        })
    };

    match spec.arity() {
        Arity::One => {
            push(
                RegionClass::Singular,
                "y=[0,delta]".into(),
                Region::new_1d(Interval::new(0.0, d), arith, dp.singular),
                Method::TaylorSingular { orders: o.y_only() },
            );
            push(
                RegionClass::Nonsingular,
                "y=[delta,pi]".into(),
                Region::new_1d(Interval::new(d, pi_hi()), arith, dp.nonsingular)
                    .with_pi_edges(Some(PiEdge::Hi), None),
                Method::Gl2,
            );
        }
        Arity::Two => {
            let y_far = Interval::new(d, pi_hi());
            let y_near = Interval::new(0.0, d);
            let z_pos = Interval::new(d, pi_hi());
            let z_neg = Interval::new(-pi_hi(), -d);
            let z_near = Interval::new(-d, d);

            for (label, z, edge) in [("z>0", z_pos, PiEdge::Hi), ("z<0", z_neg, PiEdge::Lo)] {
                push(
                    RegionClass::Nonsingular,
                    label.into(),
                    Region::new_2d(y_far, z, geo, geo, dp.nonsingular)
                        .with_pi_edges(Some(PiEdge::Hi), Some(edge)),
                    Method::Gl2,
                );
            }
            push(
                RegionClass::SingularCenter,
                "center".into(),
                Region::new_2d(y_near, z_near, arith, arith, dp.singular_center),
                Method::TaylorSingular { orders: o },
            );
            for (label, z, edge) in [("z>0", z_pos, PiEdge::Hi), ("z<0", z_neg, PiEdge::Lo)] {
                push(
                    RegionClass::SingularFirst,
                    label.into(),
                    Region::new_2d(y_near, z, arith, arith, dp.singular_first)
                        .with_pi_edges(None, Some(edge)),
                    Method::TaylorSingular { orders: o.y_only() },
                );
            }

            let (cuts, depth, geometric_from): (&[f64], u32, usize) = if spec.is_strongly_singular()
            {
                (&SECOND_CUTS_SPECIAL, dp.singular_second_special, 4)
            } else {
                (&SECOND_CUTS, dp.singular_second, 2)
            };
            let mut bounds = vec![d];
            bounds.extend_from_slice(cuts);
            bounds.push(pi_hi());
            for (i, w) in bounds.windows(2).enumerate() {
                let last = i + 2 == bounds.len();
                let split_y = if i >= geometric_from { geo } else { arith };
                let label = if last {
                    format!("y=[{},pi]", w[0])
                } else if i == 0 {
                    format!("y=[delta,{}]", w[1])
                } else {
                    format!("y=[{},{}]", w[0], w[1])
                };
                let region =
                    Region::new_2d(Interval::new(w[0], w[1]), z_near, split_y, arith, depth)
                        .with_pi_edges(last.then_some(PiEdge::Hi), None);
                push(
                    RegionClass::SingularSecond,
                    label,
                    region,
                    Method::TaylorSingular { orders: o.z_only() },
                );
            }
        }
    }
    RegionPlan {
        term: spec.id.to_string(),
        entries,
    }
}
