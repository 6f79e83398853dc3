//! The NSGA-II generational loop with a pluggable mutation stage and
//! per-generation observability of the adaptive controller.

use serde::{Deserialize, Serialize};

use crate::operators::{
    adaptive_distribution_index, binary_tournament, compute_crowding_gap, polynomial_mutate,
    sbx_crossover, AdaptiveState, MutationMode, OperatorSettings,
};
use crate::ranking::{crowding_distances, fast_nondominated_sort, rank_and_crowd};
use crate::rng::RandomSource;
use crate::types::{evaluate_individual, Individual, Population, ProblemDefinition};

/// Run parameters of one evolutionary run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub population_size: usize,
    pub generations: u32,
    pub operators: OperatorSettings,
    pub seed: u64,
}

impl EngineConfig {
    pub fn new(
        population_size: usize,
        generations: u32,
        operators: OperatorSettings,
        seed: u64,
    ) -> Self {
        assert!(
            population_size >= 4 && population_size.is_multiple_of(2),
            "population size must be even and at least 4"
        );
        assert!(generations >= 1);
        Self {
            population_size,
            generations,
            operators,
            seed,
        }
    }
}

/// Controller and population observables for one generation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationTrace {
    pub generation: u32,
    pub crowding_gap: f64,
    pub distribution_index: f64,
    pub best_rank_size: usize,
}

/// Uniformly random, evaluated, ranked, crowding-assigned initial population.
pub fn initialize(
    problem: &ProblemDefinition,
    config: &EngineConfig,
    rng: &mut RandomSource,
) -> Population {
    let mut members = Vec::with_capacity(config.population_size);
    for _ in 0..config.population_size {
        let genome: Vec<f64> = (0..problem.dimension)
            .map(|j| rng.next_in_range(problem.bounds.lower()[j], problem.bounds.upper()[j]))
            .collect();
        let objectives = evaluate_individual(problem, &genome);
        members.push(Individual::new(genome, objectives));
    }
    let mut pop = Population::new(members, config.population_size);
    rank_and_crowd(&mut pop);
    pop
}

/// One NSGA-II generation: mating, variation, (mu + lambda) survival.
///
/// The mutation distribution index is fixed for the whole generation: the
/// static setting, or the adaptive controller evaluated on the parent
/// population's crowding distances at generation `t`.
pub fn step(
    pop: Population,
    problem: &ProblemDefinition,
    config: &EngineConfig,
    t: u32,
    rng: &mut RandomSource,
) -> (Population, GenerationTrace) {
    let n_pop = config.population_size;
    assert_eq!(pop.len(), n_pop, "population must be at capacity");

    let crowdings: Vec<f64> = pop.members.iter().map(|m| m.crowding()).collect();
    let crowding_gap = compute_crowding_gap(&crowdings);
    let distribution_index = match config.operators.mutation_mode {
        MutationMode::Static(n) => n,
        MutationMode::Adaptive => adaptive_distribution_index(&AdaptiveState::new(t, crowding_gap)),
    };

    let mut offspring: Vec<Individual> = Vec::with_capacity(n_pop);
    while offspring.len() < n_pop {
        let p1 = binary_tournament(&pop, rng).genome.clone();
        let p2 = binary_tournament(&pop, rng).genome.clone();
        let (c1, c2) = sbx_crossover(
            &p1,
            &p2,
            &problem.bounds,
            config.operators.crossover_distribution_index,
            config.operators.crossover_probability,
            rng,
        );
        for child in [c1, c2] {
            let mutated = polynomial_mutate(
                &child,
                &problem.bounds,
                distribution_index,
                config.operators.mutation_probability,
                rng,
            );
            let objectives = evaluate_individual(problem, &mutated);
            offspring.push(Individual::new(mutated, objectives));
        }
    }

    // Elitist survival over parents + offspring.
    let mut pool: Vec<Individual> = pop.members;
    pool.extend(offspring);
    let partition = fast_nondominated_sort(&mut pool);

    let mut survivors: Vec<Individual> = Vec::with_capacity(n_pop);
    let mut picked: Vec<usize> = Vec::with_capacity(n_pop);
    for front in &partition.fronts {
        let missing = n_pop - picked.len();
        if front.len() <= missing {
            picked.extend_from_slice(front);
        } else {
            // Split front: truncate by descending crowding recomputed
            // within this front, ties broken by pool index.
            let objectives: Vec<&[f64]> =
                front.iter().map(|&i| pool[i].objectives.as_slice()).collect();
            let dist = crowding_distances(&objectives);
            let mut order: Vec<usize> = (0..front.len()).collect();
            order.sort_by(|&a, &b| dist[b].total_cmp(&dist[a]).then(front[a].cmp(&front[b])));
            picked.extend(order[..missing].iter().map(|&w| front[w]));
        }
        if picked.len() == n_pop {
            break;
        }
    }
    picked.sort_unstable();
    let mut taken: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    for i in picked {
        survivors.push(taken[i].take().expect("index picked once"));
    }

    let mut next = Population::new(survivors, n_pop);
    let partition = rank_and_crowd(&mut next);
    let trace = GenerationTrace {
        generation: t,
        crowding_gap,
        distribution_index,
        best_rank_size: partition.fronts[0].len(),
    };
    (next, trace)
}

/// Run `config.generations` steps from a fresh initial population.
pub fn run(problem: &ProblemDefinition, config: &EngineConfig) -> (Population, Vec<GenerationTrace>) {
    let mut rng = RandomSource::new(config.seed);
    let mut pop = initialize(problem, config, &mut rng);
    let mut traces = Vec::with_capacity(config.generations as usize);
    for t in 0..config.generations {
        let (next, trace) = step(pop, problem, config, t, &mut rng);
        pop = next;
        traces.push(trace);
    }
    (pop, traces)
}

/// Objective vectors of the population's rank-0 front, in member order.
pub fn best_front_objectives(pop: &Population) -> Vec<Vec<f64>> {
    pop.members
        .iter()
        .filter(|m| m.rank() == 0)
        .map(|m| m.objectives.clone())
        .collect()
}
