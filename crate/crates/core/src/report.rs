//! Campaign reports and their JSON and CSV forms.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::Interval;
use crate::muskat::RegionClass;
use crate::quad::QuadStats;

pub const SCHEMA: &str = "rigorquad-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Intersects,
    Disjoint,
    NotChecked,
}

impl Verdict {
    pub fn compare(enclosure: Option<Interval>, reference: Option<Interval>) -> Verdict {
        match (enclosure, reference) {
            (Some(e), Some(r)) if e.intersects(r) => Verdict::Intersects,
            (Some(_), Some(_)) => Verdict::Disjoint,
            _ => Verdict::NotChecked,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum TaskStatus {
    Done {
        enclosure: Interval,
        stats: QuadStats,
    },
    /// Skipped because the time budget ran out.
    NotRun,
    Unresolvable {
        message: String,
    },
}

/// One subregion of one term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub label: String,
    #[serde(flatten)]
    pub status: TaskStatus,
}

/// All subregions of one term in one region class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub term: String,
    pub region: RegionClass,
    /// Sum over subregions; absent unless every subregion finished.
    pub enclosure: Option<Interval>,
    pub stats: QuadStats,
    pub reference: Option<Interval>,
    pub verdict: Verdict,
    pub subregions: Vec<TaskRecord>,
}

impl CellRecord {
    pub fn from_tasks(
        term: &str,
        region: RegionClass,
        subregions: Vec<TaskRecord>,
        reference: Option<Interval>,
    ) -> CellRecord {
        let mut enclosure = Some(Interval::ZERO);
        let mut stats = QuadStats::default();
        for t in &subregions {
            match &t.status {
                TaskStatus::Done {
                    enclosure: e,
                    stats: s,
                } => {
                    enclosure = enclosure.map(|acc| acc + *e);
                    stats.merge(s);
                }
                _ => enclosure = None,
            }
        }
        CellRecord {
            term: term.to_string(),
            region,
            enclosure,
            stats,
            reference,
            verdict: Verdict::compare(enclosure, reference),
            subregions,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.enclosure.is_some()
    }

    pub fn is_unresolvable(&self) -> bool {
        self.subregions
            .iter()
            .any(|t| matches!(t.status, TaskStatus::Unresolvable { .. }))
    }
}

/// Sum of the complete cells, in record order.
pub fn total_of(cells: &[CellRecord]) -> Interval {
    cells
        .iter()
        .filter_map(|c| c.enclosure)
        .fold(Interval::ZERO, |a, b| a + b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Part1Case {
    pub name: String,
    pub eps: Interval,
    pub amp: Interval,
    pub cells: Vec<CellRecord>,
    /// Absent unless every cell finished.
    pub total: Option<Interval>,
    pub reference: Interval,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Part1Report {
    pub cases: Vec<Part1Case>,
    /// First case strictly positive and second strictly negative.
    pub sign_change: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Part2Report {
    pub eps: Interval,
    pub amp: Interval,
    pub cells: Vec<CellRecord>,
    /// Sum of the finished cells.
    pub total: Interval,
    pub complete_cells: usize,
    pub incomplete_cells: usize,
    /// Whether the requested terms and regions make up the whole sum.
    pub full_sum: bool,
    pub total_reference: Option<Interval>,
    pub total_verdict: Verdict,
    /// `total.lo >= 30`; only decided for a complete full sum.
    pub lower_bound_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskTiming {
    pub term: String,
    pub region: RegionClass,
    pub label: String,
    pub secs: f64,
}

/// Fields that legitimately differ between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub started_unix_secs: u64,
    pub wall_secs: f64,
    pub workers: usize,
    pub budget_exhausted: bool,
    pub timings: Vec<TaskTiming>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnclosureReport {
    pub schema: String,
    pub config: serde_json::Value,
    pub part1: Option<Part1Report>,
    pub part2: Option<Part2Report>,
    pub run: RunInfo,
}

/// Process exit status derived from a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    SignVerdictFailed,
    ReferenceDisjoint,
    Unresolvable,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::SignVerdictFailed => 2,
            Outcome::ReferenceDisjoint => 3,
            Outcome::Unresolvable => 4,
        }
    }
}

impl EnclosureReport {
    fn all_cells(&self) -> impl Iterator<Item = &CellRecord> {
        let p1 = self
            .part1
            .iter()
            .flat_map(|p| p.cases.iter().flat_map(|c| c.cells.iter()));
        let p2 = self.part2.iter().flat_map(|p| p.cells.iter());
        p1.chain(p2)
    }

    pub fn outcome(&self) -> Outcome {
        if self.all_cells().any(|c| c.is_unresolvable()) {
            return Outcome::Unresolvable;
        }
        let sign_bad = self.part1.as_ref().is_some_and(|p| !p.sign_change);
        let bound_bad = self
            .part2
            .as_ref()
            .is_some_and(|p| p.lower_bound_ok == Some(false));
        if sign_bad || bound_bad {
            return Outcome::SignVerdictFailed;
        }
        let p1_disjoint = self
            .part1
            .iter()
            .flat_map(|p| &p.cases)
            .any(|c| c.verdict == Verdict::Disjoint);
        let p2_disjoint = self
            .part2
            .as_ref()
            .is_some_and(|p| p.total_verdict == Verdict::Disjoint);
        if p1_disjoint || p2_disjoint || self.all_cells().any(|c| c.verdict == Verdict::Disjoint) {
            return Outcome::ReferenceDisjoint;
        }
        Outcome::Ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<EnclosureReport, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// The JSON form without the run block, for comparing runs.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("run");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// One row per term. Part 1 rows carry the singular and nonsingular
    /// parts; part 2 rows follow the four region columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(p1) = &self.part1 {
            out.push_str(&part1_csv(p1));
        }
        if let Some(p2) = &self.part2 {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&part2_csv(&p2.cells));
        }
        if self.part1.is_none() && self.part2.is_none() {
            out.push_str(&part2_csv(&[]));
        }
        out
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<(), ReportError> {
        let body = match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        };
        std::fs::write(path, body).map_err(|source| ReportError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
}

fn cell_text(e: Option<Interval>) -> String {
    e.map(|i| format!("\"{i}\"")).unwrap_or_default()
}

fn part1_csv(p: &Part1Report) -> String {
    let mut w = String::from("case,term,singular,nonsingular\n");
    for case in &p.cases {
        let mut terms: Vec<&str> = Vec::new();
        for c in &case.cells {
            if !terms.contains(&c.term.as_str()) {
                terms.push(&c.term);
            }
        }
        for t in terms {
            let get = |class| {
                case.cells
                    .iter()
                    .find(|c| c.term == t && c.region == class)
                    .and_then(|c| c.enclosure)
            };
            let _ = writeln!(
                w,
                "{},{},{},{}",
                case.name,
                t,
                cell_text(get(RegionClass::Singular)),
                cell_text(get(RegionClass::Nonsingular))
            );
        }
    }
    w
}

pub fn part2_csv(cells: &[CellRecord]) -> String {
    let mut w = String::from("term");
    for c in RegionClass::COLUMNS_2D {
        w.push(',');
        w.push_str(c.column());
    }
    w.push('\n');
    let mut terms: Vec<&str> = Vec::new();
    for c in cells {
        if !terms.contains(&c.term.as_str()) {
            terms.push(&c.term);
        }
    }
    for t in terms {
        w.push_str(t);
        for class in RegionClass::COLUMNS_2D {
            w.push(',');
            let e = cells
                .iter()
                .find(|c| c.term == t && c.region == class)
                .and_then(|c| c.enclosure);
            w.push_str(&cell_text(e));
        }
        w.push('\n');
    }
    w
}
