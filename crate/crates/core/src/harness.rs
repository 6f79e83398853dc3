//! Experiment orchestration: runs a grid of (problem, setting) pairs over
//! seeded replications, aggregates indicator statistics, applies the
//! significance test against the adaptive setting, and persists results.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{best_front_objectives, run, EngineConfig};
use crate::error::{Error, Result};
use crate::evaluation::{
    generational_distance, sample_stats, spread, welch_t_test, SampleStats, SignificanceMark,
};
use crate::operators::{MutationMode, OperatorSettings, DEFAULT_ETA_C};
use crate::problems::{make_problem, PROBLEM_NAMES};

pub const ADAPTIVE_LABEL: &str = "adaptive";
pub const DEFAULT_FRONT_POINTS: usize = 1000;

/// One mutation setting of the comparative study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingSpec {
    pub label: String,
    pub mode: MutationMode,
}

impl SettingSpec {
    pub fn is_adaptive(&self) -> bool {
        matches!(self.mode, MutationMode::Adaptive)
    }

    /// Parse `static:<n>` or `adaptive`.
    pub fn parse(token: &str) -> Result<Self> {
        if token == "adaptive" {
            return Ok(Self {
                label: ADAPTIVE_LABEL.to_string(),
                mode: MutationMode::Adaptive,
            });
        }
        if let Some(n_text) = token.strip_prefix("static:") {
            let n: f64 = n_text
                .parse()
                .map_err(|_| Error::InvalidMutationSetting(token.to_string()))?;
            if n.is_nan() || n <= 0.0 {
                return Err(Error::InvalidMutationSetting(token.to_string()));
            }
            return Ok(Self {
                label: format!("n={n_text}"),
                mode: MutationMode::Static(n),
            });
        }
        Err(Error::InvalidMutationSetting(token.to_string()))
    }
}

/// The full experiment grid and its engine template.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub problems: Vec<String>,
    pub settings: Vec<SettingSpec>,
    pub runs: usize,
    pub population_size: usize,
    pub generations: u32,
    pub base_seed: u64,
    pub crossover_probability: f64,
    /// Per-variable mutation probability; `None` means `1 / dimension`.
    pub mutation_probability: Option<f64>,
    pub crossover_distribution_index: f64,
    pub front_points: usize,
    /// Persist measured wall time per run. Off by default so that rerunning
    /// a plan yields byte-identical record files.
    pub record_wall_time: bool,
}

impl ExperimentPlan {
    /// The original study's protocol: five problems, three settings, 100 runs of 100
    /// generations with 20 individuals, pc = 0.9 and pm = 1/V.
    pub fn default_study() -> Self {
        Self {
            problems: PROBLEM_NAMES.iter().map(|s| s.to_string()).collect(),
            settings: vec![
                SettingSpec::parse("static:5").unwrap(),
                SettingSpec::parse("static:20").unwrap(),
                SettingSpec::parse("adaptive").unwrap(),
            ],
            runs: 100,
            population_size: 20,
            generations: 100,
            base_seed: 0,
            crossover_probability: 0.9,
            mutation_probability: None,
            crossover_distribution_index: DEFAULT_ETA_C,
            front_points: DEFAULT_FRONT_POINTS,
            record_wall_time: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.problems.is_empty() {
            return Err(Error::InvalidPlan("no problems listed".into()));
        }
        if self.settings.is_empty() {
            return Err(Error::InvalidPlan("no settings listed".into()));
        }
        let mut labels: Vec<&str> = self.settings.iter().map(|s| s.label.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != self.settings.len() {
            return Err(Error::InvalidPlan("setting labels must be unique".into()));
        }
        if self.runs < 2 {
            return Err(Error::InvalidPlan("runs must be at least 2".into()));
        }
        for name in &self.problems {
            make_problem(name)?;
        }
        Ok(())
    }

    /// Parse a flat key-value plan file (`key = value`, `#` comments).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        let mut plan = Self::default_study();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::PlanParse {
                path: path.to_path_buf(),
                line: line_no,
                message: "expected 'key = value'".into(),
            })?;
            let parse_err = |message: String| Error::PlanParse {
                path: path.to_path_buf(),
                line: line_no,
                message,
            };
            let value = value.trim();
            match key.trim() {
                "problems" => {
                    plan.problems = value.split(',').map(|s| s.trim().to_string()).collect();
                }
                "settings" => {
                    plan.settings = value
                        .split(',')
                        .map(|s| SettingSpec::parse(s.trim()))
                        .collect::<Result<_>>()?;
                }
                "runs" => {
                    plan.runs = value
                        .parse()
                        .map_err(|_| parse_err(format!("invalid runs '{value}'")))?;
                }
                "pop_size" => {
                    plan.population_size = value
                        .parse()
                        .map_err(|_| parse_err(format!("invalid pop_size '{value}'")))?;
                }
                "generations" => {
                    plan.generations = value
                        .parse()
                        .map_err(|_| parse_err(format!("invalid generations '{value}'")))?;
                }
                "base_seed" => {
                    plan.base_seed = value
                        .parse()
                        .map_err(|_| parse_err(format!("invalid base_seed '{value}'")))?;
                }
                other => {
                    return Err(parse_err(format!("unknown key '{other}'")));
                }
            }
        }
        plan.validate()?;
        Ok(plan)
    }
}

/// Indicator scores of one run. `None` marks a value excluded because the
/// indicator was undefined for that run's front.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    pub setting: String,
    pub run: usize,
    pub seed: u64,
    pub gd: Option<f64>,
    pub spread: Option<f64>,
    pub wall_time_ms: f64,
}

/// Aggregated indicator statistics of one (problem, setting) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportCell {
    pub gd: SampleStats,
    pub spread: SampleStats,
    pub gd_excluded: usize,
    pub spread_excluded: usize,
}

/// Significance marks of one non-adaptive setting against adaptive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkCell {
    pub gd: SignificanceMark,
    pub spread: SignificanceMark,
}

/// The study report: a stats cell per (setting, problem) plus marks versus
/// the adaptive setting where one is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub problems: Vec<String>,
    pub settings: Vec<String>,
    /// Indexed `[setting][problem]` in plan order.
    pub cells: Vec<Vec<ReportCell>>,
    /// Indexed like `cells`; `None` for the adaptive setting itself or when
    /// the plan has no adaptive setting.
    pub marks: Vec<Vec<Option<MarkCell>>>,
}

impl ExperimentReport {
    pub fn cell(&self, setting: &str, problem: &str) -> Option<&ReportCell> {
        let s = self.settings.iter().position(|x| x == setting)?;
        let p = self.problems.iter().position(|x| x == problem)?;
        Some(&self.cells[s][p])
    }

    pub fn mark(&self, setting: &str, problem: &str) -> Option<&MarkCell> {
        let s = self.settings.iter().position(|x| x == setting)?;
        let p = self.problems.iter().position(|x| x == problem)?;
        self.marks[s][p].as_ref()
    }

    /// Index of the setting with the lowest mean for a metric column.
    pub fn winner(&self, problem_idx: usize, metric: Metric) -> usize {
        let mut best = 0;
        for s in 1..self.settings.len() {
            let current = metric.mean(&self.cells[s][problem_idx]);
            if current < metric.mean(&self.cells[best][problem_idx]) {
                best = s;
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Gd,
    Spread,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Gd => "gd",
            Metric::Spread => "spread",
        }
    }

    fn mean(&self, cell: &ReportCell) -> f64 {
        match self {
            Metric::Gd => cell.gd.mean,
            Metric::Spread => cell.spread.mean,
        }
    }
}

fn score_one(
    plan: &ExperimentPlan,
    problem_name: &str,
    setting: &SettingSpec,
    run_idx: usize,
) -> RunRecord {
    let problem = make_problem(problem_name).expect("plan validated");
    let front = problem.reference_front(plan.front_points);
    let pm = plan
        .mutation_probability
        .unwrap_or(1.0 / problem.dimension as f64);
    let operators = OperatorSettings::new(
        plan.crossover_probability,
        pm,
        plan.crossover_distribution_index,
        setting.mode,
    );
    let seed = plan.base_seed + run_idx as u64;
    let config = EngineConfig::new(plan.population_size, plan.generations, operators, seed);

    let start = Instant::now();
    let (pop, _) = run(&problem, &config);
    let wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;

    let obtained = best_front_objectives(&pop);
    let gd = Some(generational_distance(&obtained, &front));
    let spread_value = spread(&obtained, &front).ok();
    RunRecord {
        problem: problem_name.to_string(),
        setting: setting.label.clone(),
        run: run_idx,
        seed,
        gd,
        spread: spread_value,
        wall_time_ms: if plan.record_wall_time { wall_time_ms } else { 0.0 },
    }
}

/// Execute every (problem, setting, run) cell of the plan. Runs execute on
/// the current rayon pool; record order is deterministic regardless of
/// worker count.
pub fn execute_runs(plan: &ExperimentPlan) -> Result<Vec<RunRecord>> {
    plan.validate()?;
    let mut jobs: Vec<(usize, usize, usize)> = Vec::new();
    for p in 0..plan.problems.len() {
        for s in 0..plan.settings.len() {
            for r in 0..plan.runs {
                jobs.push((p, s, r));
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(p, s, r)| score_one(plan, &plan.problems[p], &plan.settings[s], r))
        .collect())
}

/// Aggregate run records into the study report.
pub fn aggregate(plan: &ExperimentPlan, records: &[RunRecord]) -> ExperimentReport {
    let collect = |setting: &str, problem: &str, pick: fn(&RunRecord) -> Option<f64>| {
        let values: Vec<f64> = records
            .iter()
            .filter(|r| r.setting == setting && r.problem == problem)
            .filter_map(pick)
            .collect();
        let total = records
            .iter()
            .filter(|r| r.setting == setting && r.problem == problem)
            .count();
        // Exclusions may leave fewer than 2 usable values; report the
        // degenerate cell instead of failing the whole aggregation.
        let stats = if values.len() >= 2 {
            sample_stats(&values)
        } else {
            SampleStats {
                mean: values.first().copied().unwrap_or(f64::NAN),
                std: f64::NAN,
                count: values.len(),
            }
        };
        (stats, total - values.len())
    };

    let mut cells = Vec::with_capacity(plan.settings.len());
    for setting in &plan.settings {
        let mut row = Vec::with_capacity(plan.problems.len());
        for problem in &plan.problems {
            let (gd, gd_excluded) = collect(&setting.label, problem, |r| r.gd);
            let (spread, spread_excluded) = collect(&setting.label, problem, |r| r.spread);
            row.push(ReportCell {
                gd,
                spread,
                gd_excluded,
                spread_excluded,
            });
        }
        cells.push(row);
    }

    let adaptive_idx = plan.settings.iter().position(|s| s.is_adaptive());
    let mut marks = Vec::with_capacity(plan.settings.len());
    for (s, _setting) in plan.settings.iter().enumerate() {
        let mut row = Vec::with_capacity(plan.problems.len());
        for p in 0..plan.problems.len() {
            let mark = match adaptive_idx {
                Some(a)
                    if a != s
                        && cells[s][p].gd.count >= 2
                        && cells[a][p].gd.count >= 2
                        && cells[s][p].spread.count >= 2
                        && cells[a][p].spread.count >= 2 =>
                {
                    Some(MarkCell {
                        gd: welch_t_test(&cells[s][p].gd, &cells[a][p].gd),
                        spread: welch_t_test(&cells[s][p].spread, &cells[a][p].spread),
                    })
                }
                _ => None,
            };
            row.push(mark);
        }
        marks.push(row);
    }

    ExperimentReport {
        problems: plan.problems.clone(),
        settings: plan.settings.iter().map(|s| s.label.clone()).collect(),
        cells,
        marks,
    }
}

/// Run the whole plan and persist `runrecords.csv` under `out_dir`.
pub fn execute_plan(plan: &ExperimentPlan, out_dir: &Path) -> Result<(ExperimentReport, Vec<RunRecord>)> {
    let records = execute_runs(plan)?;
    fs::create_dir_all(out_dir)
        .map_err(|e| Error::io(format!("creating {}", out_dir.display()), e))?;
    write_run_records_csv(&records, &out_dir.join("runrecords.csv"))?;
    Ok((aggregate(plan, &records), records))
}

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x}"),
        None => "nan".to_string(),
    }
}

/// RunRecord CSV: `problem,setting,run,seed,gd,spread,wall_time_ms`, LF.
pub fn write_run_records_csv(records: &[RunRecord], path: &Path) -> Result<()> {
    let mut out = String::from("problem,setting,run,seed,gd,spread,wall_time_ms\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.problem,
            r.setting,
            r.run,
            r.seed,
            fmt_opt(r.gd),
            fmt_opt(r.spread),
            r.wall_time_ms
        ));
    }
    fs::write(path, out).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Csv,
    Json,
}

impl ReportFormat {
    pub fn parse(token: &str) -> Option<Self> {
        match token {
            "markdown" | "md" => Some(Self::Markdown),
            "csv" => Some(Self::Csv),
            "json" => Some(Self::Json),
            _ => None,
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Self::Markdown => "md",
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// Render the report. Markdown mirrors the study's table shape: one table
/// per metric, a mean row, std row and mark row per setting, problems as
/// columns, lowest mean per column in bold. CSV and JSON are lossless flat
/// encodings of the same cells.
pub fn render_report(report: &ExperimentReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Markdown => render_markdown(report),
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn render_markdown(report: &ExperimentReport) -> String {
    let mut out = String::new();
    for (metric, title) in [(Metric::Spread, "Spread"), (Metric::Gd, "Generational distance")] {
        out.push_str(&format!("## {title}\n\n"));
        out.push_str("| Setting |");
        for p in &report.problems {
            out.push_str(&format!(" {p} |"));
        }
        out.push('\n');
        out.push_str("|---|");
        out.push_str(&"---|".repeat(report.problems.len()));
        out.push('\n');
        let winners: Vec<usize> = (0..report.problems.len())
            .map(|p| report.winner(p, metric))
            .collect();
        for (s, setting) in report.settings.iter().enumerate() {
            out.push_str(&format!("| {setting} mean |"));
            for p in 0..report.problems.len() {
                let mean = match metric {
                    Metric::Gd => report.cells[s][p].gd.mean,
                    Metric::Spread => report.cells[s][p].spread.mean,
                };
                if winners[p] == s {
                    out.push_str(&format!(" **{mean:.3}** |"));
                } else {
                    out.push_str(&format!(" {mean:.3} |"));
                }
            }
            out.push('\n');
            out.push_str(&format!("| {setting} std |"));
            for p in 0..report.problems.len() {
                let std = match metric {
                    Metric::Gd => report.cells[s][p].gd.std,
                    Metric::Spread => report.cells[s][p].spread.std,
                };
                out.push_str(&format!(" {std:.3} |"));
            }
            out.push('\n');
            if report.marks[s].iter().any(|m| m.is_some()) {
                out.push_str(&format!("| {setting} vs adaptive |"));
                for p in 0..report.problems.len() {
                    let mark = report.marks[s][p]
                        .as_ref()
                        .map(|m| match metric {
                            Metric::Gd => m.gd.mark.symbol(),
                            Metric::Spread => m.spread.mark.symbol(),
                        })
                        .unwrap_or("");
                    out.push_str(&format!(" {mark} |"));
                }
                out.push('\n');
            }
        }
        out.push('\n');
    }
    out
}

fn render_csv(report: &ExperimentReport) -> String {
    let mut out =
        String::from("metric,setting,problem,mean,std,count,excluded,mark,t,df,p,winner\n");
    for metric in [Metric::Spread, Metric::Gd] {
        for (s, setting) in report.settings.iter().enumerate() {
            for (p, problem) in report.problems.iter().enumerate() {
                let cell = &report.cells[s][p];
                let (stats, excluded) = match metric {
                    Metric::Gd => (&cell.gd, cell.gd_excluded),
                    Metric::Spread => (&cell.spread, cell.spread_excluded),
                };
                let (mark, t, df, pv) = match &report.marks[s][p] {
                    Some(m) => {
                        let sig = match metric {
                            Metric::Gd => &m.gd,
                            Metric::Spread => &m.spread,
                        };
                        (
                            sig.mark.symbol().to_string(),
                            format!("{}", sig.t_statistic),
                            format!("{}", sig.degrees_of_freedom),
                            format!("{}", sig.p_value),
                        )
                    }
                    None => (String::new(), String::new(), String::new(), String::new()),
                };
                let winner = report.winner(p, metric) == s;
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    metric.name(),
                    setting,
                    problem,
                    stats.mean,
                    stats.std,
                    stats.count,
                    excluded,
                    mark,
                    t,
                    df,
                    pv,
                    winner
                ));
            }
        }
    }
    out
}
