//! The Muskat integrands, their region plans, and the two quantities at the
//! origin they add up to.

pub mod curve;
pub mod plan;
pub mod terms;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::Interval;
use crate::quad::{adaptive_integrate, Cell, EvalError, QuadError, QuadStats, Tolerances};

pub use curve::{curve_eval, CurveJet, CurveParams, ParamError};
pub use plan::{region_plan, Depths, PlanConfig, PlanEntry, RegionClass, RegionPlan};
pub use terms::{
    a_terms, b_terms, lookup, registry, validate_orders, Arity, IntegrandSpec, RegistryError, Sym,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MuskatError {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("term {term}, region {region}: cell y={} z={} unresolvable: {reason}", .cell.y, .cell.z)]
    CellUnresolvable {
        term: String,
        region: String,
        cell: Cell,
        reason: EvalError,
    },
    #[error("term {term}, region {region}: {reason}")]
    Interval {
        term: String,
        region: String,
        reason: crate::interval::IntervalError,
    },
}

/// Factor for the half-domain reduction. One-dimensional terms already carry
/// theirs in the coefficient.
pub fn symmetry_factor(spec: &IntegrandSpec) -> Interval {
    match spec.arity() {
        Arity::One => Interval::ONE,
        Arity::Two => Interval::point(2.0),
    }
}

/// Scaled enclosure of one plan entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryResult {
    pub term: String,
    pub class: RegionClass,
    pub label: String,
    pub enclosure: Interval,
    pub stats: QuadStats,
}

pub fn integrate_entry(
    spec: &IntegrandSpec,
    integrand: &crate::quad::TapeIntegrand,
    entry: &PlanEntry,
    tol: &Tolerances,
) -> Result<EntryResult, MuskatError> {
    let r =
        adaptive_integrate(integrand, &entry.region, &entry.method, tol).map_err(|e| match e {
            QuadError::CellUnresolvable { cell, reason } => MuskatError::CellUnresolvable {
                term: spec.id.to_string(),
                region: format!("{} {}", entry.class, entry.label),
                cell,
                reason,
            },
            QuadError::Interval(reason) => MuskatError::Interval {
                term: spec.id.to_string(),
                region: format!("{} {}", entry.class, entry.label),
                reason,
            },
        })?;
    Ok(EntryResult {
        term: spec.id.to_string(),
        class: entry.class,
        label: entry.label.clone(),
        enclosure: symmetry_factor(spec) * r.enclosure,
        stats: r.stats,
    })
}

/// Per-term, per-class enclosures and their total.
#[derive(Debug, Clone, PartialEq)]
pub struct TermSums {
    pub by_term_class: BTreeMap<(String, RegionClass), (Interval, QuadStats)>,
    pub total: Interval,
}

fn run_terms(
    specs: &[&IntegrandSpec],
    params: &CurveParams,
    cfg: &PlanConfig,
) -> Result<TermSums, MuskatError> {
    let mut by_term_class: BTreeMap<(String, RegionClass), (Interval, QuadStats)> = BTreeMap::new();
    let mut total = Interval::ZERO;
    for spec in specs {
        let integrand = spec.build(params);
        for entry in region_plan(spec, cfg).entries {
            let r = integrate_entry(spec, &integrand, &entry, &cfg.tol)?;
            let slot = by_term_class
                .entry((spec.id.to_string(), entry.class))
                .or_insert((Interval::ZERO, QuadStats::default()));
            slot.0 = slot.0 + r.enclosure;
            slot.1.merge(&r.stats);
            total = total + r.enclosure;
        }
    }
    Ok(TermSums {
        by_term_class,
        total,
    })
}

/// Enclosure of `A1 + A2 + A3`, the mixed `t,x` derivative at the origin.
pub fn dtx_at_zero(params: &CurveParams, cfg: &PlanConfig) -> Result<TermSums, MuskatError> {
    let specs: Vec<_> = a_terms().iter().collect();
    run_terms(&specs, params, cfg)
}

/// Enclosure of the sum of the requested `B` terms over every region.
pub fn dttx_at_zero(
    params: &CurveParams,
    cfg: &PlanConfig,
    terms: &[&str],
) -> Result<TermSums, MuskatError> {
    let specs = terms
        .iter()
        .map(|t| lookup(t))
        .collect::<Result<Vec<_>, _>>()?;
    run_terms(&specs, params, cfg)
}

/// Machine-readable registry dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestTerm {
    pub id: String,
    pub arity: Arity,
    pub coefficient: i32,
    pub symmetry_factor: u32,
    pub formula: String,
    pub orders: crate::quad::Orders,
    pub regions: Vec<PlanEntry>,
}

pub fn manifest(part1: &PlanConfig, part2: &PlanConfig) -> Vec<ManifestTerm> {
    registry()
        .iter()
        .map(|s| {
            let cfg = match s.arity() {
                Arity::One => part1,
                Arity::Two => part2,
            };
            ManifestTerm {
                id: s.id.to_string(),
                arity: s.arity(),
                coefficient: s.coeff,
                symmetry_factor: if s.arity() == Arity::One { 1 } else { 2 },
                formula: s.formula(),
                orders: s.orders,
                regions: region_plan(s, cfg).entries,
            }
        })
        .collect()
}
