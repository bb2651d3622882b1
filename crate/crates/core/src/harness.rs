//! Randomized verification harness: draws operator pairs from seeded
//! ensembles, evaluates every bound and the applicable equality checks, and
//! writes a deterministic report.
//!
//! Trial `i` depends only on `(master_seed, i)`:
//!
//! ```text
//! s      = split_stream(master_seed, i)
//! seed_a = split_stream(s, 0)             seed_b = split_stream(s, 1)
//! dim_a  = dims[split_stream(s, 2) % len] dim_b  = dims[split_stream(s, 3) % len]
//! (ensemble_a, ensemble_b) = ensembles[i % len]
//! ```
//!
//! so a run with any number of workers reproduces the serial report.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    check_equality_half, check_equality_quarter, eval_all_with, BoundId, BoundReport, EqualityReport, OperatorPair,
    PairContext, DEFAULT_GAP_GRID,
};
use crate::error::{Error, Result};
use crate::format::fmt_num;
use crate::generators::{generate, split_stream, Ensemble, GeneratorConfig};

pub const CSV_VERSION_TOKEN: &str = "# numrad-verify-csv v1";
pub const CSV_HEADER: &str = "trial,ensemble_a,ensemble_b,dim_a,dim_b,bound_id,center,min_slack,holds";
pub const DEFAULT_EQUALITY_GRID: usize = 360;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Parse(format!("unknown report format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub trials: usize,
    pub dims: Vec<usize>,
    pub ensembles: Vec<(Ensemble, Ensemble)>,
    pub master_seed: u64,
    /// Fixed bound tolerance; `None` scales per pair as `1e-7·(1+‖a‖²‖b‖²)`.
    pub tol: Option<f64>,
    pub equality_grid: usize,
    pub gap_grid: usize,
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip)]
    pub out_path: Option<PathBuf>,
    pub format: ReportFormat,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 500,
            dims: vec![2, 3, 4, 5, 6],
            ensembles: Ensemble::all_pairs(),
            master_seed: 42,
            tol: None,
            equality_grid: DEFAULT_EQUALITY_GRID,
            gap_grid: DEFAULT_GAP_GRID,
            workers: 1,
            out_path: None,
            format: ReportFormat::Json,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::InvalidArgument("dims must be a non-empty list of positive integers".into()));
        }
        if self.ensembles.is_empty() {
            return Err(Error::InvalidArgument("at least one ensemble pair is required".into()));
        }
        let largest = *self.dims.iter().max().expect("non-empty");
        let dim = largest * largest;
        if dim > crate::linalg::DEFAULT_KRON_CAP {
            return Err(Error::SizeCap { dim, cap: crate::linalg::DEFAULT_KRON_CAP });
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0) || !tol.is_finite() {
                return Err(Error::InvalidTol(tol));
            }
        }
        if self.equality_grid < 4 {
            return Err(Error::InvalidArgument("equality grid needs at least 4 angles".into()));
        }
        if self.gap_grid < 9 {
            return Err(Error::InvalidArgument("crawford gap grid needs at least 9 points".into()));
        }
        Ok(())
    }
}

/// Which equality characterization a pair's ensembles guarantee.
fn half_norm_hypothesis(a: &Ensemble, b: &Ensemble) -> bool {
    let sz_norm = |x: &Ensemble, y: &Ensemble| x.is_square_zero_class() && (y.is_normal_class() || y.is_square_zero_class());
    sz_norm(a, b) || sz_norm(b, a)
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub ensemble_a: Ensemble,
    pub ensemble_b: Ensemble,
    pub dim_a: usize,
    pub dim_b: usize,
    pub seed_a: u64,
    pub seed_b: u64,
    pub tol: f64,
    pub reports: Vec<BoundReport>,
    pub bound_errors: Vec<(BoundId, String)>,
    pub tightest_lower: Vec<BoundId>,
    pub tightest_upper: Vec<BoundId>,
    pub equality: Vec<EqualityReport>,
    /// `w(A⊗B) = ½‖A‖‖B‖` numerically but the θ = 0 rotated norms differ
    /// from `‖A‖‖B‖`.
    pub corollary_violation: bool,
    /// Rotated norms agree at θ = 0 while `w(A⊗B) ≠ ½‖A‖‖B‖`, so the converse
    /// direction fails on this pair. Logged, never counted as a violation.
    pub remark_candidate: bool,
    pub error: Option<String>,
    #[serde(skip)]
    pub wall_time: f64,
}

impl TrialRecord {
    pub fn violations(&self) -> usize {
        self.reports.iter().filter(|r| !r.holds).count()
            + self.equality.iter().filter(|e| !e.consistent).count()
            + usize::from(self.corollary_violation)
    }

    pub fn errored(&self) -> bool {
        self.error.is_some() || !self.bound_errors.is_empty()
    }
}

/// Draws the operator pair of trial `index`.
pub fn trial_pair(cfg: &VerifyConfig, index: usize) -> Result<(Ensemble, Ensemble, GeneratorConfig, GeneratorConfig)> {
    let s = split_stream(cfg.master_seed, index as u64);
    let (ea, eb) = cfg.ensembles[index % cfg.ensembles.len()].clone();
    let pick = |k: u64| cfg.dims[(split_stream(s, k) % cfg.dims.len() as u64) as usize];
    let ga = GeneratorConfig { seed: split_stream(s, 0), dim: pick(2).max(ea.min_dim()) };
    let gb = GeneratorConfig { seed: split_stream(s, 1), dim: pick(3).max(eb.min_dim()) };
    Ok((ea, eb, ga, gb))
}

fn run_trial(cfg: &VerifyConfig, index: usize) -> TrialRecord {
    let start = Instant::now();
    let (ea, eb, ga, gb) = trial_pair(cfg, index).expect("validated config");
    let mut record = TrialRecord {
        trial_index: index,
        ensemble_a: ea.clone(),
        ensemble_b: eb.clone(),
        dim_a: ga.dim,
        dim_b: gb.dim,
        seed_a: ga.seed,
        seed_b: gb.seed,
        tol: f64::NAN,
        reports: Vec::new(),
        bound_errors: Vec::new(),
        tightest_lower: Vec::new(),
        tightest_upper: Vec::new(),
        equality: Vec::new(),
        corollary_violation: false,
        remark_candidate: false,
        error: None,
        wall_time: 0.0,
    };
    if let Err(e) = fill_trial(cfg, &mut record, &ea, &eb, ga, gb) {
        record.error = Some(e.to_string());
    }
    record.wall_time = start.elapsed().as_secs_f64();
    record
}

fn fill_trial(
    cfg: &VerifyConfig,
    record: &mut TrialRecord,
    ea: &Ensemble,
    eb: &Ensemble,
    ga: GeneratorConfig,
    gb: GeneratorConfig,
) -> Result<()> {
    let pair = OperatorPair::new(generate(ea, ga)?, generate(eb, gb)?)?;
    let tol = match cfg.tol {
        Some(t) => t,
        None => pair.default_tol()?,
    };
    record.tol = tol;
    let ctx = PairContext::with_gap_grid(&pair, tol, cfg.gap_grid)?;
    let set = eval_all_with(&ctx)?;
    record.bound_errors = set.errors.iter().map(|(id, e)| (*id, e.to_string())).collect();
    record.tightest_lower = set.tightest_lower;
    record.tightest_upper = set.tightest_upper;
    record.reports = set.reports;

    if half_norm_hypothesis(ea, eb) {
        record.equality.push(check_equality_half(&pair, cfg.equality_grid, tol)?);
        record.equality.push(check_equality_quarter(&pair, cfg.equality_grid, tol)?);
    }

    let s = ctx.norm_a()? * ctx.norm_b()?;
    let w = ctx.w_t()?;
    let [plus, minus, _, _] = ctx.rotated_norms()?;
    if (w - 0.5 * s).abs() <= tol {
        record.corollary_violation = (plus - s).abs() > 10.0 * tol || (minus - s).abs() > 10.0 * tol;
    } else if (plus - minus).abs() <= tol {
        record.remark_candidate = true;
    }
    Ok(())
}

/// Runs every trial, in trial order, on `cfg.workers` threads.
pub fn run_verify(cfg: &VerifyConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    if cfg.workers <= 1 {
        return Ok((0..cfg.trials).map(|i| run_trial(cfg, i)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?;
    Ok(pool.install(|| (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect()))
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BoundStats {
    pub evaluated: usize,
    pub violations: usize,
    pub tightest_lower: usize,
    pub tightest_upper: usize,
    pub min_slack: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub trials: usize,
    pub bound_reports: usize,
    pub violations: usize,
    pub errored_trials: usize,
    pub equality_checks: usize,
    pub equality_inconsistent: usize,
    pub corollary_violations: usize,
    pub remark_candidates: Vec<usize>,
    pub per_bound: BTreeMap<String, BoundStats>,
}

impl VerifySummary {
    pub fn from_records(records: &[TrialRecord]) -> Self {
        let mut per_bound: BTreeMap<String, BoundStats> =
            BoundId::ALL.iter().map(|id| (id.as_str().to_string(), BoundStats::default())).collect();
        for r in records {
            for rep in &r.reports {
                let stats = per_bound.get_mut(rep.id.as_str()).expect("known id");
                stats.evaluated += 1;
                stats.violations += usize::from(!rep.holds);
                stats.min_slack = Some(stats.min_slack.map_or(rep.min_slack, |m: f64| m.min(rep.min_slack)));
            }
            for id in &r.tightest_lower {
                per_bound.get_mut(id.as_str()).expect("known id").tightest_lower += 1;
            }
            for id in &r.tightest_upper {
                per_bound.get_mut(id.as_str()).expect("known id").tightest_upper += 1;
            }
        }
        Self {
            trials: records.len(),
            bound_reports: records.iter().map(|r| r.reports.len()).sum(),
            violations: records.iter().map(TrialRecord::violations).sum(),
            errored_trials: records.iter().filter(|r| r.errored()).count(),
            equality_checks: records.iter().map(|r| r.equality.len()).sum(),
            equality_inconsistent: records.iter().flat_map(|r| &r.equality).filter(|e| !e.consistent).count(),
            corollary_violations: records.iter().filter(|r| r.corollary_violation).count(),
            remark_candidates: records.iter().filter(|r| r.remark_candidate).map(|r| r.trial_index).collect(),
            per_bound,
        }
    }

    /// 0 clean, 1 any violation, 3 more than 1% of trials errored.
    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            1
        } else if self.errored_trials * 100 > self.trials {
            3
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "trials {}  bound reports {}  violations {}  errored trials {}\n\
             equality checks {} (inconsistent {})  corollary violations {}  remark candidates {}\n",
            self.trials,
            self.bound_reports,
            self.violations,
            self.errored_trials,
            self.equality_checks,
            self.equality_inconsistent,
            self.corollary_violations,
            self.remark_candidates.len()
        );
        s.push_str(&format!("{:<20} {:>9} {:>10} {:>14} {:>14} {:>14}\n", "bound", "evaluated", "violations", "tightest_lower", "tightest_upper", "min_slack"));
        for id in BoundId::ALL {
            let b = &self.per_bound[id.as_str()];
            s.push_str(&format!(
                "{:<20} {:>9} {:>10} {:>14} {:>14} {:>14}\n",
                id.as_str(),
                b.evaluated,
                b.violations,
                b.tightest_lower,
                b.tightest_upper,
                b.min_slack.map_or("-".to_string(), fmt_num)
            ));
        }
        s
    }
}

#[derive(Serialize)]
struct Row<'a> {
    trial: usize,
    ensemble_a: &'a Ensemble,
    ensemble_b: &'a Ensemble,
    dim_a: usize,
    dim_b: usize,
    bound_id: BoundId,
    center: f64,
    min_slack: f64,
    holds: bool,
}

fn rows(records: &[TrialRecord]) -> Vec<Row<'_>> {
    records
        .iter()
        .flat_map(|r| {
            r.reports.iter().map(move |rep| Row {
                trial: r.trial_index,
                ensemble_a: &r.ensemble_a,
                ensemble_b: &r.ensemble_b,
                dim_a: r.dim_a,
                dim_b: r.dim_b,
                bound_id: rep.id,
                center: rep.center,
                min_slack: rep.min_slack,
                holds: rep.holds,
            })
        })
        .collect()
}

/// Deterministic part of the JSON report: configuration, one row per bound
/// report, full trial records and the summary.
pub fn diffable_json(cfg: &VerifyConfig, records: &[TrialRecord]) -> serde_json::Value {
    serde_json::json!({
        "config": cfg,
        "rows": rows(records),
        "trials": records,
        "summary": VerifySummary::from_records(records),
    })
}

/// `{"diffable": …, "timing": […]}`; only `timing` varies between runs.
pub fn write_json_report<W: Write>(cfg: &VerifyConfig, records: &[TrialRecord], mut out: W) -> std::io::Result<()> {
    let timing: Vec<serde_json::Value> = records
        .iter()
        .map(|r| serde_json::json!({"trial": r.trial_index, "wall_time": r.wall_time}))
        .collect();
    let doc = serde_json::json!({ "diffable": diffable_json(cfg, records), "timing": timing });
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)
}

pub fn write_csv_report<W: Write>(records: &[TrialRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_VERSION_TOKEN}")?;
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows(records) {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            row.trial,
            row.ensemble_a,
            row.ensemble_b,
            row.dim_a,
            row.dim_b,
            row.bound_id,
            fmt_num(row.center),
            fmt_num(row.min_slack),
            row.holds
        )?;
    }
    Ok(())
}
