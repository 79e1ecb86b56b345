//! Running whole campaigns: task lists, a worker pool, a time budget, and
//! ordered reduction into an [`EnclosureReport`].

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::Interval;
use crate::muskat::{
    a_terms, b_terms, integrate_entry, lookup, region_plan, CurveParams, Depths, IntegrandSpec,
    MuskatError, ParamError, PlanConfig, PlanEntry, RegionClass, RegistryError,
};
use crate::quad::{TapeIntegrand, Tolerances};
use crate::reference;
use crate::report::{
    total_of, CellRecord, EnclosureReport, OutputFormat, Part1Case, Part1Report, Part2Report,
    RunInfo, TaskRecord, TaskStatus, TaskTiming, Verdict, SCHEMA,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Part1,
    #[default]
    Part2,
    /// Part 2 restricted to the listed terms.
    SingleTerm,
    /// Part 1 followed by part 2.
    Suite,
}

/// Per-class depth overrides; unset entries keep the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default, deny_unknown_fields)]
pub struct DepthOverrides {
    pub nonsingular: Option<u32>,
    pub singular: Option<u32>,
    pub singular_first: Option<u32>,
    pub singular_second: Option<u32>,
    pub singular_second_special: Option<u32>,
    pub singular_center: Option<u32>,
}

impl DepthOverrides {
    fn apply(&self, mut d: Depths) -> Depths {
        let set = |slot: &mut u32, v: Option<u32>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut d.nonsingular, self.nonsingular);
        set(&mut d.singular, self.singular);
        set(&mut d.singular_first, self.singular_first);
        set(&mut d.singular_second, self.singular_second);
        set(&mut d.singular_second_special, self.singular_second_special);
        set(&mut d.singular_center, self.singular_center);
        d
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub mode: Mode,
    /// Singular neighbourhood width; defaults depend on the part.
    pub delta: Option<f64>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_depth: DepthOverrides,
    /// Caps every depth after overrides.
    pub depth_cap: Option<u32>,
    /// Empty means every term of the part.
    pub terms: Vec<String>,
    /// Empty means every region class.
    pub regions: Vec<RegionClass>,
    pub eps: Option<Interval>,
    /// Amplitude for part 2; part 1 always runs both endpoints.
    pub amp: Option<Interval>,
    /// Defaults to the available parallelism.
    pub workers: Option<usize>,
    pub budget_secs: Option<f64>,
    pub out: Option<std::path::PathBuf>,
    pub format: OutputFormat,
    pub check_refs: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            mode: Mode::default(),
            delta: None,
            abs_tol: None,
            rel_tol: None,
            max_depth: DepthOverrides::default(),
            depth_cap: None,
            terms: Vec::new(),
            regions: Vec::new(),
            eps: None,
            amp: None,
            workers: None,
            budget_secs: None,
            out: None,
            format: OutputFormat::Json,
            check_refs: true,
        }
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CampaignConfig {
    fn plan_config(&self, base: PlanConfig) -> Result<PlanConfig, CampaignError> {
        let mut p = base;
        if let Some(d) = self.delta {
            if !(d > 0.0 && d < 1.0) {
                return Err(CampaignError::Config(format!(
                    "delta {d} must lie in (0, 1)"
                )));
            }
            p.delta = d;
        }
        let tol = |v: Option<f64>, dflt: f64, name: &str| match v {
            Some(t) if t > 0.0 && t.is_finite() => Ok(t),
            Some(t) => Err(CampaignError::Config(format!(
                "{name} {t} must be positive"
            ))),
            None => Ok(dflt),
        };
        p.tol = Tolerances {
            abs_tol: tol(self.abs_tol, p.tol.abs_tol, "abs-tol")?,
            rel_tol: tol(self.rel_tol, p.tol.rel_tol, "rel-tol")?,
        };
        p.depths = self.max_depth.apply(p.depths);
        if let Some(c) = self.depth_cap {
            p.depths = p.depths.capped(c);
        }
        Ok(p)
    }

    pub fn part1_plan(&self) -> Result<PlanConfig, CampaignError> {
        self.plan_config(PlanConfig::part1())
    }

    pub fn part2_plan(&self) -> Result<PlanConfig, CampaignError> {
        self.plan_config(PlanConfig::part2())
    }

    pub fn worker_count(&self) -> usize {
        self.workers.filter(|&w| w > 0).unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
    }

    fn eps(&self) -> Interval {
        self.eps.unwrap_or_else(CurveParams::eps_range)
    }

    fn select<'a>(
        &self,
        pool: &'a [IntegrandSpec],
    ) -> Result<Vec<&'a IntegrandSpec>, CampaignError> {
        if self.terms.is_empty() {
            return Ok(pool.iter().collect());
        }
        let mut out = Vec::new();
        for t in &self.terms {
            let s = lookup(t)?;
            if pool.iter().any(|p| p.id == s.id)
                && !out.iter().any(|o: &&IntegrandSpec| o.id == s.id)
            {
                out.push(s);
            }
        }
        // Keep registry order whatever order the filter used.
        out.sort_by_key(|s| pool.iter().position(|p| p.id == s.id));
        Ok(out)
    }

    fn wants(&self, class: RegionClass) -> bool {
        self.regions.is_empty() || self.regions.contains(&class)
    }
}

/// A progress notification.
#[derive(Debug, Clone)]
pub struct Progress<'a> {
    pub done: usize,
    pub total: usize,
    pub term: &'a str,
    pub label: &'a str,
    pub secs: f64,
}

pub type ProgressFn<'a> = &'a (dyn Fn(&Progress) + Sync);

struct Task<'a> {
    integrand: usize,
    spec: &'a IntegrandSpec,
    entry: PlanEntry,
    tol: Tolerances,
}

impl Task<'_> {
    fn label(&self) -> String {
        format!("{} {}", self.entry.class, self.entry.label)
    }

    /// Larger runs first: cubic-kernel terms, then by region class.
    fn weight(&self) -> (u8, u32, u8) {
        let class = match self.entry.class {
            RegionClass::Nonsingular => 4,
            RegionClass::SingularSecond => 3,
            RegionClass::Singular => 2,
            RegionClass::SingularFirst => 1,
            RegionClass::SingularCenter => 0,
        };
        (
            self.spec.is_strongly_singular() as u8,
            self.entry.region.max_depth,
            class,
        )
    }
}

struct PoolOutput {
    records: Vec<TaskStatus>,
    timings: Vec<f64>,
    budget_exhausted: bool,
}

fn run_pool(
    tasks: &[Task],
    integrands: &[TapeIntegrand],
    workers: usize,
    budget: Option<Duration>,
    progress: Option<ProgressFn>,
) -> PoolOutput {
    let start = Instant::now();
    let mut order: Vec<usize> = (0..tasks.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(tasks[i].weight()));
    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let slots: Mutex<Vec<Option<(TaskStatus, f64)>>> = Mutex::new(vec![None; tasks.len()]);

    std::thread::scope(|s| {
        for _ in 0..workers.max(1).min(tasks.len().max(1)) {
            s.spawn(|| loop {
                if budget.is_some_and(|b| start.elapsed() >= b) {
                    stop.store(true, Ordering::Relaxed);
                }
                if stop.load(Ordering::Relaxed) {
                    return;
                }
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&i) = order.get(k) else { return };
                let t = &tasks[i];
                let t0 = Instant::now();
                let status =
                    match integrate_entry(t.spec, &integrands[t.integrand], &t.entry, &t.tol) {
                        Ok(r) => TaskStatus::Done {
                            enclosure: r.enclosure,
                            stats: r.stats,
                        },
                        Err(
                            e @ (MuskatError::CellUnresolvable { .. }
                            | MuskatError::Interval { .. }),
                        ) => TaskStatus::Unresolvable {
                            message: e.to_string(),
                        },
                        Err(e) => TaskStatus::Unresolvable {
                            message: e.to_string(),
                        },
                    };
                let secs = t0.elapsed().as_secs_f64();
                slots.lock().expect("no worker panicked")[i] = Some((status, secs));
                let n = done.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(p) = progress {
                    p(&Progress {
                        done: n,
                        total: tasks.len(),
                        term: t.spec.id,
                        label: &t.label(),
                        secs,
                    });
                }
            });
        }
    });

    let slots = slots.into_inner().expect("no worker panicked");
    let budget_exhausted = slots.iter().any(Option::is_none);
    let (records, timings) = slots
        .into_iter()
        .map(|s| s.unwrap_or((TaskStatus::NotRun, 0.0)))
        .unzip();
    PoolOutput {
        records,
        timings,
        budget_exhausted,
    }
}

/// Tasks of one part, grouped by term and region class.
struct Batch<'a> {
    integrands: Vec<TapeIntegrand>,
    tasks: Vec<Task<'a>>,
    /// `(term, class, task indices)` in registry and column order.
    cells: Vec<(&'a IntegrandSpec, usize, RegionClass, Vec<usize>)>,
}

impl<'a> Batch<'a> {
    fn new() -> Self {
        Batch {
            integrands: Vec::new(),
            tasks: Vec::new(),
            cells: Vec::new(),
        }
    }

    fn add(
        &mut self,
        group: usize,
        specs: &[&'a IntegrandSpec],
        params: &CurveParams,
        plan: &PlanConfig,
        classes: &[RegionClass],
    ) {
        for spec in specs {
            let integrand = self.integrands.len();
            self.integrands.push(spec.build(params));
            let entries = region_plan(spec, plan).entries;
            for &class in classes {
                let mut idx = Vec::new();
                for e in entries.iter().filter(|e| e.class == class) {
                    idx.push(self.tasks.len());
                    self.tasks.push(Task {
                        integrand,
                        spec,
                        entry: e.clone(),
                        tol: plan.tol,
                    });
                }
                if !idx.is_empty() {
                    self.cells.push((spec, group, class, idx));
                }
            }
        }
    }
}

fn cell_records(
    batch: &Batch,
    out: &PoolOutput,
    group: usize,
    reference: impl Fn(&str, RegionClass) -> Option<Interval>,
) -> Vec<CellRecord> {
    batch
        .cells
        .iter()
        .filter(|c| c.1 == group)
        .map(|(spec, _, class, idx)| {
            let subs = idx
                .iter()
                .map(|&i| TaskRecord {
                    label: batch.tasks[i].entry.label.clone(),
                    status: out.records[i].clone(),
                })
                .collect();
            CellRecord::from_tasks(spec.id, *class, subs, reference(spec.id, *class))
        })
        .collect()
}

fn timings(batch: &Batch, out: &PoolOutput) -> Vec<TaskTiming> {
    batch
        .tasks
        .iter()
        .zip(&out.timings)
        .map(|(t, &secs)| TaskTiming {
            term: t.spec.id.to_string(),
            region: t.entry.class,
            label: t.entry.label.clone(),
            secs,
        })
        .collect()
}

pub fn run(
    cfg: &CampaignConfig,
    progress: Option<ProgressFn>,
) -> Result<EnclosureReport, CampaignError> {
    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let t0 = Instant::now();
    let workers = cfg.worker_count();
    let budget = cfg.budget_secs.map(Duration::from_secs_f64);
    let with_p1 = matches!(cfg.mode, Mode::Part1 | Mode::Suite);
    let with_p2 = matches!(cfg.mode, Mode::Part2 | Mode::SingleTerm | Mode::Suite);
    if cfg.mode == Mode::SingleTerm && cfg.terms.is_empty() {
        return Err(CampaignError::Config(
            "single-term mode needs at least one term".into(),
        ));
    }

    let mut batch = Batch::new();
    let amps = [CurveParams::amp_lo(), CurveParams::amp_hi()];
    let p1_terms = if with_p1 {
        cfg.select(a_terms())?
    } else {
        Vec::new()
    };
    let p2_terms = if with_p2 {
        cfg.select(b_terms())?
    } else {
        Vec::new()
    };
    if cfg.mode != Mode::Suite
        && !cfg.terms.is_empty()
        && p1_terms.is_empty()
        && p2_terms.is_empty()
    {
        return Err(CampaignError::Config(
            "no requested term belongs to this mode".into(),
        ));
    }
    let p1_classes: Vec<RegionClass> = [RegionClass::Singular, RegionClass::Nonsingular]
        .into_iter()
        .filter(|c| cfg.wants(*c))
        .collect();
    let p2_classes: Vec<RegionClass> = RegionClass::COLUMNS_2D
        .into_iter()
        .filter(|c| cfg.wants(*c))
        .collect();
    let p2_params = CurveParams::new(cfg.eps(), cfg.amp.unwrap_or_else(CurveParams::amp_range))?;
    if with_p1 {
        let plan = cfg.part1_plan()?;
        for (g, amp) in amps.iter().enumerate() {
            let params = CurveParams::new(cfg.eps(), *amp)?;
            batch.add(g, &p1_terms, &params, &plan, &p1_classes);
        }
    }
    if with_p2 {
        let plan = cfg.part2_plan()?;
        batch.add(2, &p2_terms, &p2_params, &plan, &p2_classes);
    }

    let out = run_pool(&batch.tasks, &batch.integrands, workers, budget, progress);
    let refs = cfg.check_refs;

    let part1 = with_p1.then(|| {
        let full = p1_terms.len() == 3 && p1_classes.len() == 2;
        let expected = [reference::dtx_amp_lo(), reference::dtx_amp_hi()];
        let cases: Vec<Part1Case> = (0..2)
            .map(|g| {
                let cells = cell_records(&batch, &out, g, |_, _| None);
                let complete = full && cells.iter().all(CellRecord::is_complete);
                let total = complete.then(|| total_of(&cells));
                Part1Case {
                    name: if g == 0 { "amp-lo".into() } else { "amp-hi".into() },
                    eps: cfg.eps(),
                    amp: amps[g],
                    cells,
                    total,
                    reference: expected[g],
                    verdict: if refs { Verdict::compare(total, Some(expected[g])) } else { Verdict::NotChecked },
                }
            })
            .collect();
        let sign_change = matches!((cases[0].total, cases[1].total), (Some(a), Some(b)) if a.lo() > 0.0 && b.hi() < 0.0);
        Part1Report { cases, sign_change }
    });

    let part2 = with_p2.then(|| {
        let cells = cell_records(&batch, &out, 2, |t, c| {
            if !refs {
                return None;
            }
            reference::lookup(t, c)
                .filter(|r| r.comparable)
                .map(|r| r.interval)
        });
        let complete_cells = cells.iter().filter(|c| c.is_complete()).count();
        let incomplete_cells = cells.len() - complete_cells;
        let full_sum = p2_terms.len() == b_terms().len() && p2_classes.len() == 4;
        let total = total_of(&cells);
        let decided = full_sum && incomplete_cells == 0;
        let total_reference = (refs && decided).then(reference::dttx_total);
        Part2Report {
            eps: p2_params.eps,
            amp: p2_params.amp,
            cells,
            total,
            complete_cells,
            incomplete_cells,
            full_sum,
            total_reference,
            total_verdict: Verdict::compare(decided.then_some(total), total_reference),
            lower_bound_ok: decided.then(|| total.lo() >= reference::DTTX_LOWER_BOUND),
        }
    });

    Ok(EnclosureReport {
        schema: SCHEMA.into(),
        config: config_echo(cfg),
        part1,
        part2,
        run: RunInfo {
            started_unix_secs: started,
            wall_secs: t0.elapsed().as_secs_f64(),
            workers,
            budget_exhausted: out.budget_exhausted,
            timings: timings(&batch, &out),
        },
    })
}

/// Configuration as recorded in the report. Worker count and budget go to
/// the run block since they do not change results.
fn config_echo(cfg: &CampaignConfig) -> serde_json::Value {
    let mut v = serde_json::to_value(cfg).expect("config serializes");
    if let Some(o) = v.as_object_mut() {
        o.remove("workers");
        o.remove("budget-secs");
        o.remove("out");
        o.remove("format");
    }
    v
}

pub fn run_part1(cfg: &CampaignConfig) -> Result<EnclosureReport, CampaignError> {
    run(
        &CampaignConfig {
            mode: Mode::Part1,
            ..cfg.clone()
        },
        None,
    )
}

pub fn run_part2(cfg: &CampaignConfig) -> Result<EnclosureReport, CampaignError> {
    run(
        &CampaignConfig {
            mode: Mode::Part2,
            ..cfg.clone()
        },
        None,
    )
}
