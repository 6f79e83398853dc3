//! NSGA-II with a pluggable mutation stage, including an adaptive
//! polynomial mutation whose distribution index follows the population's
//! crowding-distance gap and the generation count, plus the benchmark
//! problems, quality indicators and experiment harness used to compare the
//! static and adaptive settings.

pub mod engine;
pub mod error;
pub mod evaluation;
pub mod harness;
pub mod operators;
pub mod problems;
pub mod ranking;
pub mod rng;
pub mod types;

pub use engine::{best_front_objectives, initialize, run, step, EngineConfig, GenerationTrace};
pub use error::{Error, Result};
pub use evaluation::{
    generational_distance, normalize_objectives, sample_stats, spread, welch_t_test,
    IndicatorResult, Mark, SampleStats, SignificanceMark,
};
pub use harness::{
    aggregate, execute_plan, execute_runs, render_report, ExperimentPlan, ExperimentReport,
    ReportFormat, RunRecord, SettingSpec,
};
pub use operators::{
    adaptive_distribution_index, binary_tournament, compute_crowding_gap, polynomial_delta,
    polynomial_mutate, sbx_crossover, sigmoid_weight, AdaptiveState, MutationMode,
    OperatorSettings, DEFAULT_ETA_C, DELTA_FLOOR, N_CLAMP, SIGMOID_RATE,
};
pub use problems::{
    make_problem, read_front_file, read_points_file, sample_reference_front, write_front_file,
    write_points_file, ReferenceFront,
};
pub use ranking::{
    crowded_less, crowding_distance_assignment, dominates, fast_nondominated_sort, rank_and_crowd,
    FrontPartition,
};
pub use rng::RandomSource;
pub use types::{clamp_to_bounds, evaluate_individual, Bounds, Individual, Population, ProblemDefinition};
