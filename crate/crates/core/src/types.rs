use crate::problems::ReferenceFront;

/// Per-variable box constraints of a decision space.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        assert_eq!(lower.len(), upper.len(), "bounds length mismatch");
        assert!(!lower.is_empty(), "bounds must not be empty");
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            assert!(lo < hi, "bounds: lower[{j}]={lo} must be < upper[{j}]={hi}");
        }
        Self { lower, upper }
    }

    /// Identical `[lo, hi]` interval repeated over `dim` variables.
    pub fn uniform(lo: f64, hi: f64, dim: usize) -> Self {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Width of variable `j`; the maximum disturbance a mutation may apply.
    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    pub fn contains(&self, genome: &[f64]) -> bool {
        genome.len() == self.dimension()
            && genome
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }
}

/// Project each component of `genome` into its bounding interval.
pub fn clamp_to_bounds(genome: &[f64], bounds: &Bounds) -> Vec<f64> {
    assert_eq!(genome.len(), bounds.dimension(), "genome length mismatch");
    genome
        .iter()
        .zip(bounds.lower().iter().zip(bounds.upper()))
        .map(|(&x, (&lo, &hi))| x.clamp(lo, hi))
        .collect()
}

/// A candidate solution: decision vector plus evaluation and selection state.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Vec<f64>,
    pub objectives: Vec<f64>,
    rank: Option<usize>,
    crowding: Option<f64>,
}

impl Individual {
    pub fn new(genome: Vec<f64>, objectives: Vec<f64>) -> Self {
        Self {
            genome,
            objectives,
            rank: None,
            crowding: None,
        }
    }

    /// Front index assigned by non-dominated sorting; 0 is the best front.
    pub fn rank(&self) -> usize {
        self.rank.expect("rank not assigned")
    }

    /// Crowding distance; `f64::INFINITY` marks boundary solutions.
    pub fn crowding(&self) -> f64 {
        self.crowding.expect("crowding not assigned")
    }

    pub fn set_rank(&mut self, rank: usize) {
        self.rank = Some(rank);
    }

    pub fn set_crowding(&mut self, crowding: f64) {
        assert!(crowding >= 0.0, "crowding must be non-negative");
        self.crowding = Some(crowding);
    }

    pub fn has_rank(&self) -> bool {
        self.rank.is_some()
    }

    pub fn has_crowding(&self) -> bool {
        self.crowding.is_some()
    }
}

/// An ordered population with a fixed survivor capacity.
#[derive(Debug, Clone)]
pub struct Population {
    pub members: Vec<Individual>,
    pub capacity: usize,
}

impl Population {
    pub fn new(members: Vec<Individual>, capacity: usize) -> Self {
        assert!(capacity > 0, "capacity must be positive");
        Self { members, capacity }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A box-bounded continuous minimization problem.
#[derive(Debug, Clone)]
pub struct ProblemDefinition {
    pub name: &'static str,
    pub dimension: usize,
    pub objective_count: usize,
    pub bounds: Bounds,
    evaluate: fn(&[f64]) -> Vec<f64>,
    front_sampler: fn(usize) -> ReferenceFront,
}

impl ProblemDefinition {
    pub fn new(
        name: &'static str,
        dimension: usize,
        objective_count: usize,
        bounds: Bounds,
        evaluate: fn(&[f64]) -> Vec<f64>,
        front_sampler: fn(usize) -> ReferenceFront,
    ) -> Self {
        assert_eq!(bounds.dimension(), dimension);
        Self {
            name,
            dimension,
            objective_count,
            bounds,
            evaluate,
            front_sampler,
        }
    }

    /// Sample `count` points of the analytic Pareto-optimal front.
    pub fn reference_front(&self, count: usize) -> ReferenceFront {
        (self.front_sampler)(count)
    }
}

/// Evaluate a genome against the problem's objective functions.
pub fn evaluate_individual(problem: &ProblemDefinition, genome: &[f64]) -> Vec<f64> {
    assert_eq!(
        genome.len(),
        problem.dimension,
        "genome length {} does not match problem dimension {}",
        genome.len(),
        problem.dimension
    );
    assert!(
        problem.bounds.contains(genome),
        "genome out of bounds for {}",
        problem.name
    );
    let objectives = (problem.evaluate)(genome);
    debug_assert_eq!(objectives.len(), problem.objective_count);
    objectives
}
