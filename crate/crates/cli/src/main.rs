use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use moea_core::engine::{best_front_objectives, run, EngineConfig};
use moea_core::evaluation::{generational_distance, spread};
use moea_core::harness::{
    aggregate, execute_runs, render_report, write_run_records_csv, ExperimentPlan, ReportFormat,
    SettingSpec,
};
use moea_core::operators::{OperatorSettings, DEFAULT_ETA_C};
use moea_core::problems::{
    make_problem, read_front_file, read_points_file, sample_reference_front, write_front_file,
    write_points_file,
};

#[derive(Parser)]
#[command(
    name = "moea",
    about = "NSGA-II with static or adaptive polynomial mutation: single runs, benchmark studies, indicator scoring, reference fronts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one problem with one mutation setting and write the final front
    Run(RunArgs),
    /// Execute a benchmark study and write records and a report
    Benchmark(BenchmarkArgs),
    /// Score a front file against a reference front file
    Metrics(MetricsArgs),
    /// Emit a generated reference front
    Front(FrontArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Problem name (zdt1, zdt2, zdt3, zdt6, fon2)
    #[arg(long)]
    problem: String,
    /// Mutation setting: static:<n> or adaptive
    #[arg(long, default_value = "adaptive")]
    mutation: String,
    #[arg(long, default_value_t = 20)]
    pop_size: usize,
    #[arg(long, default_value_t = 100)]
    generations: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.9)]
    crossover_prob: f64,
    /// Per-variable mutation probability; defaults to 1/dimension
    #[arg(long)]
    mutation_prob: Option<f64>,
    /// Write the final rank-0 front here (front file format)
    #[arg(long)]
    front_out: Option<PathBuf>,
    /// Write a per-generation trace CSV (t, delta, n) here
    #[arg(long)]
    trace_out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchmarkArgs {
    /// Plan file; omitted means the default five-problem, three-setting study
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Override the number of runs per (problem, setting) cell
    #[arg(long)]
    runs: Option<usize>,
    /// Override the base seed
    #[arg(long)]
    base_seed: Option<u64>,
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
    /// Report format: markdown, csv or json
    #[arg(long, default_value = "markdown")]
    format: String,
    /// Record measured wall time per run (makes record files nondeterministic)
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct MetricsArgs {
    /// Obtained front file
    #[arg(long)]
    front: PathBuf,
    /// Reference front file
    #[arg(long)]
    reference: PathBuf,
}

#[derive(Args)]
struct FrontArgs {
    #[arg(long)]
    problem: String,
    #[arg(long, default_value_t = 1000)]
    points: usize,
    /// Output file; omitted prints to stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_run(args: RunArgs) -> anyhow::Result<()> {
    let problem = make_problem(&args.problem)?;
    let setting = SettingSpec::parse(&args.mutation)?;
    let pm = args
        .mutation_prob
        .unwrap_or(1.0 / problem.dimension as f64);
    if !(0.0..=1.0).contains(&pm) {
        bail!("mutation probability must lie in [0, 1], got {pm}");
    }
    if !(0.0..=1.0).contains(&args.crossover_prob) {
        bail!(
            "crossover probability must lie in [0, 1], got {}",
            args.crossover_prob
        );
    }
    if args.pop_size < 4 || !args.pop_size.is_multiple_of(2) {
        bail!("population size must be even and at least 4");
    }
    let operators = OperatorSettings::new(args.crossover_prob, pm, DEFAULT_ETA_C, setting.mode);
    let config = EngineConfig::new(args.pop_size, args.generations, operators, args.seed);
    let (pop, traces) = run(&problem, &config);
    let front = best_front_objectives(&pop);
    println!(
        "{}: {} generations, final rank-0 front of {} points",
        problem.name,
        args.generations,
        front.len()
    );
    if let Some(path) = &args.front_out {
        write_points_file(&front, path)?;
        println!("front written to {}", path.display());
    }
    if let Some(path) = &args.trace_out {
        let mut csv = String::from("t,delta,n\n");
        for tr in &traces {
            csv.push_str(&format!(
                "{},{},{}\n",
                tr.generation, tr.crowding_gap, tr.distribution_index
            ));
        }
        std::fs::write(path, csv)
            .with_context(|| format!("writing {}", path.display()))?;
        println!("trace written to {}", path.display());
    }
    Ok(())
}

fn cmd_benchmark(args: BenchmarkArgs) -> anyhow::Result<()> {
    let format = ReportFormat::parse(&args.format)
        .ok_or_else(|| anyhow::anyhow!("unknown report format '{}'", args.format))?;
    let mut plan = match &args.plan {
        Some(path) => ExperimentPlan::from_file(path)?,
        None => ExperimentPlan::default_study(),
    };
    if let Some(runs) = args.runs {
        plan.runs = runs;
    }
    if let Some(seed) = args.base_seed {
        plan.base_seed = seed;
    }
    plan.record_wall_time = args.timing;
    plan.validate()?;

    let records = execute_runs(&plan)?;
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    write_run_records_csv(&records, &args.out_dir.join("runrecords.csv"))?;
    let report = aggregate(&plan, &records);
    let text = render_report(&report, format);
    let report_path = args.out_dir.join(format!("report.{}", format.extension()));
    std::fs::write(&report_path, &text)
        .with_context(|| format!("writing {}", report_path.display()))?;
    print!("{text}");
    eprintln!(
        "{} records written to {}",
        records.len(),
        args.out_dir.display()
    );
    Ok(())
}

fn cmd_metrics(args: MetricsArgs) -> anyhow::Result<()> {
    let obtained = read_points_file(&args.front)?;
    if obtained.is_empty() {
        bail!("front file {} contains no points", args.front.display());
    }
    let reference = read_front_file(&args.reference)?;
    let gd = generational_distance(&obtained, &reference);
    println!("gd {gd}");
    match spread(&obtained, &reference) {
        Ok(s) => println!("spread {s}"),
        Err(e) => println!("spread undefined ({e})"),
    }
    Ok(())
}

fn cmd_front(args: FrontArgs) -> anyhow::Result<()> {
    if args.points < 2 {
        bail!("--points must be at least 2");
    }
    let front = sample_reference_front(&args.problem, args.points)?;
    match &args.out {
        Some(path) => {
            write_front_file(&front, path)?;
            println!(
                "{} reference points written to {}",
                front.points().len(),
                path.display()
            );
        }
        None => {
            for p in front.points() {
                let line: Vec<String> = p.iter().map(|v| format!("{v}")).collect();
                println!("{}", line.join(" "));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Benchmark(args) => cmd_benchmark(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Front(args) => cmd_front(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
