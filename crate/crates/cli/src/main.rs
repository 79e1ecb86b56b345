use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgAction, Parser, ValueEnum};

use rigorquad::campaign::{self, CampaignConfig, Mode, Progress};
use rigorquad::muskat::{self, CurveParams, RegionClass};
use rigorquad::report::OutputFormat;
use rigorquad::Interval;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Part1,
    Part2,
    SingleTerm,
    Suite,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Part1 => Mode::Part1,
            ModeArg::Part2 => Mode::Part2,
            ModeArg::SingleTerm => Mode::SingleTerm,
            ModeArg::Suite => Mode::Suite,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// Rigorous enclosures of the Muskat shift integrals.
///
/// Exit status: 0 all verdicts pass, 2 sign or lower-bound verdict failed,
/// 3 an enclosure misses its reference, 4 a cell could not be resolved,
/// 1 usage or IO error.
#[derive(Debug, Parser)]
#[command(name = "rigorquad", version)]
struct Cli {
    /// TOML file with campaign settings. Flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    max_depth_nonsingular: Option<u32>,
    #[arg(long)]
    max_depth_singular: Option<u32>,
    #[arg(long)]
    max_depth_singular_first: Option<u32>,
    #[arg(long)]
    max_depth_singular_second: Option<u32>,
    /// Singular-second depth for B47 and B55.
    #[arg(long)]
    max_depth_singular_second_special: Option<u32>,
    #[arg(long)]
    max_depth_singular_center: Option<u32>,
    /// Upper bound applied to every depth.
    #[arg(long)]
    depth_cap: Option<u32>,
    /// Comma-separated term ids.
    #[arg(long, value_delimiter = ',')]
    terms: Vec<String>,
    /// Comma-separated region classes, e.g. nonsingular,singular-center.
    #[arg(long, value_delimiter = ',')]
    regions: Vec<RegionClass>,
    /// Perturbation interval, e.g. "[0,1e-6]".
    #[arg(long)]
    eps: Option<Interval>,
    /// Amplitude interval for part 2.
    #[arg(long)]
    amp: Option<Interval>,
    #[arg(long, env = "RIGORQUAD_WORKERS")]
    workers: Option<usize>,
    /// Stop starting new tasks after this many seconds.
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Compare against the published enclosures.
    #[arg(long, action = ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
    check_refs: Option<bool>,
    /// Write the term registry and region plans as JSON and exit.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// No progress lines on stderr.
    #[arg(long, short)]
    quiet: bool,
}

fn load_config(cli: &Cli) -> Result<CampaignConfig> {
    let mut cfg = match &cli.config {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => CampaignConfig::default(),
    };
    if let Some(m) = cli.mode {
        cfg.mode = m.into();
    }
    macro_rules! over {
        ($($flag:ident => $($field:ident).+),* $(,)?) => {
            $(if let Some(v) = cli.$flag.clone() { cfg.$($field).+ = Some(v); })*
        };
    }
    over!(
        delta => delta,
        abs_tol => abs_tol,
        rel_tol => rel_tol,
        max_depth_nonsingular => max_depth.nonsingular,
        max_depth_singular => max_depth.singular,
        max_depth_singular_first => max_depth.singular_first,
        max_depth_singular_second => max_depth.singular_second,
        max_depth_singular_second_special => max_depth.singular_second_special,
        max_depth_singular_center => max_depth.singular_center,
        depth_cap => depth_cap,
        eps => eps,
        amp => amp,
        workers => workers,
        budget_secs => budget_secs,
        out => out,
    );
    if !cli.terms.is_empty() {
        cfg.terms = cli.terms.clone();
    }
    if !cli.regions.is_empty() {
        cfg.regions = cli.regions.clone();
    }
    if let Some(f) = cli.format {
        cfg.format = match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        };
    }
    if let Some(c) = cli.check_refs {
        cfg.check_refs = c;
    }
    Ok(cfg)
}

fn validate_registry() -> Result<()> {
    let params = CurveParams::new(CurveParams::eps_range(), CurveParams::amp_range())?;
    for spec in muskat::registry() {
        muskat::validate_orders(spec, &params)?;
    }
    Ok(())
}

fn write_manifest(cfg: &CampaignConfig, path: &PathBuf) -> Result<()> {
    let m = muskat::manifest(&cfg.part1_plan()?, &cfg.part2_plan()?);
    let json = serde_json::to_string_pretty(&m)?;
    if path.as_os_str() == "-" {
        println!("{json}");
    } else {
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn summary(report: &rigorquad::report::EnclosureReport) -> String {
    let mut s = String::new();
    if let Some(p1) = &report.part1 {
        for c in &p1.cases {
            let total = c
                .total
                .map(|t| t.to_string())
                .unwrap_or_else(|| "incomplete".into());
            s += &format!(
                "part1 {} A={}: {} (reference {}, {:?})\n",
                c.name, c.amp, total, c.reference, c.verdict
            );
        }
        s += &format!("part1 sign change: {}\n", p1.sign_change);
    }
    if let Some(p2) = &report.part2 {
        s += &format!(
            "part2 total over {} finished cells: {} ({} unfinished)\n",
            p2.complete_cells, p2.total, p2.incomplete_cells
        );
        for c in p2
            .cells
            .iter()
            .filter(|c| c.verdict == rigorquad::report::Verdict::Disjoint)
        {
            s += &format!(
                "  disjoint: {} {} {:?} vs {:?}\n",
                c.term, c.region, c.enclosure, c.reference
            );
        }
        if let Some(ok) = p2.lower_bound_ok {
            s += &format!("part2 total >= 30: {ok}\n");
        }
    }
    s
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = load_config(&cli)?;
    if let Some(path) = &cli.manifest {
        validate_registry()?;
        write_manifest(&cfg, path)?;
        return Ok(0);
    }
    validate_registry()?;
    let quiet = cli.quiet;
    let progress = move |p: &Progress| {
        if !quiet {
            eprintln!(
                "[{}/{}] {} {} {:.2}s",
                p.done, p.total, p.term, p.label, p.secs
            );
        }
    };
    let report = campaign::run(&cfg, Some(&progress))?;
    match &cfg.out {
        Some(path) => report.write(path, cfg.format)?,
        None => {
            let body = match cfg.format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Csv => report.to_csv(),
            };
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            if !body.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    let outcome = report.outcome();
    eprint!("{}", summary(&report));
    if outcome.code() != 0 {
        eprintln!("exit {:?}", outcome);
    }
    Ok(outcome.code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
