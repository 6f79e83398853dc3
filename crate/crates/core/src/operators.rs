//! Real-coded variation operators: simulated binary crossover, polynomial
//! mutation, binary tournament selection, and the adaptive controller that
//! drives the mutation distribution index from the population's crowding
//! state and the generation count.

use serde::{Deserialize, Serialize};

use crate::ranking::crowded_less;
use crate::rng::RandomSource;
use crate::types::{clamp_to_bounds, Bounds, Individual, Population};

/// Smallest crowding gap fed to the controller; guards the division when a
/// population carries no finite gap information.
pub const DELTA_FLOOR: f64 = 1e-6;

/// Default clamp interval for the adaptive distribution index.
pub const N_CLAMP: (f64, f64) = (0.01, 1000.0);

/// Default logistic rate of the generation weight.
pub const SIGMOID_RATE: f64 = 0.07;

/// Default SBX distribution index.
pub const DEFAULT_ETA_C: f64 = 20.0;

/// How the mutation distribution index is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MutationMode {
    /// Fixed distribution index.
    Static(f64),
    /// Index recomputed every generation from crowding gap and generation.
    Adaptive,
}

/// Run configuration of the variation stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorSettings {
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    pub crossover_distribution_index: f64,
    pub mutation_mode: MutationMode,
}

impl OperatorSettings {
    pub fn new(
        crossover_probability: f64,
        mutation_probability: f64,
        crossover_distribution_index: f64,
        mutation_mode: MutationMode,
    ) -> Self {
        assert!((0.0..=1.0).contains(&crossover_probability));
        assert!((0.0..=1.0).contains(&mutation_probability));
        assert!(crossover_distribution_index > 0.0);
        if let MutationMode::Static(n) = mutation_mode {
            assert!(n > 0.0, "static distribution index must be positive");
        }
        Self {
            crossover_probability,
            mutation_probability,
            crossover_distribution_index,
            mutation_mode,
        }
    }
}

/// Inputs of one adaptive-controller update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveState {
    pub generation: u32,
    pub crowding_gap: f64,
    pub sigmoid_rate: f64,
    pub delta_floor: f64,
    pub n_clamp: (f64, f64),
}

impl AdaptiveState {
    pub fn new(generation: u32, crowding_gap: f64) -> Self {
        Self {
            generation,
            crowding_gap,
            sigmoid_rate: SIGMOID_RATE,
            delta_floor: DELTA_FLOOR,
            n_clamp: N_CLAMP,
        }
    }
}

/// Simulated binary crossover over a parent pair.
///
/// With probability `pc` the pair is recombined; each variable then mixes
/// with probability 0.5 using a fresh spread factor, otherwise it is copied.
/// Children are clamped to bounds.
pub fn sbx_crossover(
    p1: &[f64],
    p2: &[f64],
    bounds: &Bounds,
    eta_c: f64,
    pc: f64,
    rng: &mut RandomSource,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(p1.len(), p2.len(), "parent length mismatch");
    assert!(bounds.contains(p1) && bounds.contains(p2), "parent out of bounds");
    if rng.next_unit() >= pc {
        return (p1.to_vec(), p2.to_vec());
    }
    let mut c1 = Vec::with_capacity(p1.len());
    let mut c2 = Vec::with_capacity(p2.len());
    for j in 0..p1.len() {
        let (x1, x2) = (p1[j], p2[j]);
        if rng.next_unit() < 0.5 {
            let beta = sbx_spread_factor(rng.next_unit(), eta_c);
            c1.push(0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2));
            c2.push(0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2));
        } else {
            c1.push(x1);
            c2.push(x2);
        }
    }
    (clamp_to_bounds(&c1, bounds), clamp_to_bounds(&c2, bounds))
}

/// SBX spread factor β for a uniform draw `u`.
pub fn sbx_spread_factor(u: f64, eta_c: f64) -> f64 {
    if u <= 0.5 {
        (2.0 * u).powf(1.0 / (eta_c + 1.0))
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(1.0 / (eta_c + 1.0))
    }
}

/// Disturbance factor of polynomial mutation: the inverse CDF of the
/// polynomial density `0.5(n+1)(1-|δ|)^n` evaluated at `u`.
pub fn polynomial_delta(u: f64, n: f64) -> f64 {
    assert!((0.0..=1.0).contains(&u), "u must lie in [0,1], got {u}");
    assert!(n > 0.0, "distribution index must be positive, got {n}");
    if u < 0.5 {
        (2.0 * u).powf(1.0 / (n + 1.0)) - 1.0
    } else {
        1.0 - (2.0 * (1.0 - u)).powf(1.0 / (n + 1.0))
    }
}

/// Polynomial mutation: each variable independently, with probability `pm`,
/// receives a disturbance scaled to the full variable range, then is clamped.
pub fn polynomial_mutate(
    genome: &[f64],
    bounds: &Bounds,
    n: f64,
    pm: f64,
    rng: &mut RandomSource,
) -> Vec<f64> {
    assert!(bounds.contains(genome), "genome out of bounds");
    let mut out = genome.to_vec();
    for j in 0..out.len() {
        if rng.next_unit() < pm {
            let delta = polynomial_delta(rng.next_unit(), n);
            let mutated = out[j] + delta * bounds.width(j);
            out[j] = mutated.clamp(bounds.lower()[j], bounds.upper()[j]);
        }
    }
    out
}

/// Crowding gap Δ: the largest crowding distance with infinities masked to
/// zero, minus the smallest raw crowding distance. Degenerate inputs (all
/// infinite, or a non-positive gap) fall back to `DELTA_FLOOR`.
pub fn compute_crowding_gap(crowdings: &[f64]) -> f64 {
    assert!(!crowdings.is_empty(), "crowding list must be non-empty");
    let masked_max = crowdings
        .iter()
        .map(|&x| if x.is_infinite() { 0.0 } else { x })
        .fold(f64::NEG_INFINITY, f64::max);
    let raw_min = crowdings.iter().copied().fold(f64::INFINITY, f64::min);
    let gap = masked_max - raw_min;
    if gap.is_finite() && gap > 0.0 {
        gap
    } else {
        DELTA_FLOOR
    }
}

/// Logistic weight of the generation count: `1 / (1 + e^{-rate·t})`.
pub fn sigmoid_weight(t: u32, rate: f64) -> f64 {
    1.0 / (1.0 + (-rate * t as f64).exp())
}

/// Adaptive distribution index: `sigm(t) / max(Δ, ε)`, clamped.
///
/// A large crowding gap (dispersed population) yields a small index and thus
/// a strong mutation; a late generation yields a larger index.
pub fn adaptive_distribution_index(state: &AdaptiveState) -> f64 {
    let delta = state.crowding_gap.max(state.delta_floor);
    let n = sigmoid_weight(state.generation, state.sigmoid_rate) / delta;
    n.clamp(state.n_clamp.0, state.n_clamp.1)
}

/// Binary tournament under the crowded-comparison order.
///
/// Draws two distinct members; ties go to the first drawn.
pub fn binary_tournament<'a>(pop: &'a Population, rng: &mut RandomSource) -> &'a Individual {
    assert!(pop.len() >= 2, "tournament needs at least 2 members");
    let first = rng.next_index(pop.len());
    let second = (first + 1 + rng.next_index(pop.len() - 1)) % pop.len();
    let a = &pop.members[first];
    let b = &pop.members[second];
    if crowded_less(b, a) {
        b
    } else {
        a
    }
}
