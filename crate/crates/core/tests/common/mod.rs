//! Independent oracles shared by the integration suites. Everything here is
//! written from the definitions directly, not by calling back into the crate,
//! so disagreement points at the implementation.

#![allow(dead_code)]

use moea_core::{polynomial_delta, RandomSource};

/// Strict Pareto dominance (minimization), transcribed from the definition.
pub fn dominates_oracle(a: &[f64], b: &[f64]) -> bool {
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Non-dominated sorting by iterated removal: front k is the set of points
/// not dominated by any point still present.
pub fn brute_force_fronts(objectives: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..objectives.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let front: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| {
                remaining
                    .iter()
                    .all(|&j| j == i || !dominates_oracle(&objectives[j], &objectives[i]))
            })
            .collect();
        assert!(!front.is_empty(), "dominance must be acyclic");
        remaining.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

/// Crowding-distance assignment transcribed from the published pseudocode:
/// per objective, sort ascending, give the extremes infinity and every
/// interior point the neighbour gap over the objective range.
pub fn crowding_oracle(objectives: &[Vec<f64>]) -> Vec<f64> {
    let l = objectives.len();
    if l <= 2 {
        return vec![f64::INFINITY; l];
    }
    let m = objectives[0].len();
    let mut dist = vec![0.0_f64; l];
    for k in 0..m {
        let mut idx: Vec<usize> = (0..l).collect();
        idx.sort_by(|&a, &b| objectives[a][k].total_cmp(&objectives[b][k]).then(a.cmp(&b)));
        let f_min = objectives[idx[0]][k];
        let f_max = objectives[idx[l - 1]][k];
        dist[idx[0]] = f64::INFINITY;
        dist[idx[l - 1]] = f64::INFINITY;
        if f_max == f_min {
            continue;
        }
        for w in 1..l - 1 {
            let i = idx[w];
            if dist[i].is_finite() {
                dist[i] += (objectives[idx[w + 1]][k] - objectives[idx[w - 1]][k]) / (f_max - f_min);
            }
        }
    }
    dist
}

/// Polynomial mutation density `0.5 (n+1) (1 - |δ|)^n` on [-1, 1].
pub fn polynomial_density(delta: f64, n: f64) -> f64 {
    0.5 * (n + 1.0) * (1.0 - delta.abs()).powf(n)
}

/// Closed-form CDF of the polynomial mutation density.
pub fn polynomial_cdf(x: f64, n: f64) -> f64 {
    if x <= 0.0 {
        0.5 * (1.0 + x).powf(n + 1.0)
    } else {
        1.0 - 0.5 * (1.0 - x).powf(n + 1.0)
    }
}

fn simpson_smooth(a: f64, b: f64, n: f64) -> f64 {
    // Composite Simpson on a segment that does not cross the |δ| kink.
    const STEPS: usize = 128; // even
    let h = (b - a) / STEPS as f64;
    let mut sum = polynomial_density(a, n) + polynomial_density(b, n);
    for i in 1..STEPS {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * polynomial_density(a + i as f64 * h, n);
    }
    sum * h / 3.0
}

/// Numeric quadrature of the density over [a, b], split at the kink at zero.
pub fn density_integral(a: f64, b: f64, n: f64) -> f64 {
    if a < 0.0 && b > 0.0 {
        simpson_smooth(a, 0.0, n) + simpson_smooth(0.0, b, n)
    } else {
        simpson_smooth(a, b, n)
    }
}

/// Largest |∫_{-1}^{δ(u)} P - u| over the u grid with step 1e-3.
pub fn inverse_cdf_max_error(n: f64) -> f64 {
    let mut max_err = 0.0_f64;
    let mut acc = 0.0;
    let mut prev = -1.0;
    for i in 0..=1000 {
        let u = i as f64 / 1000.0;
        let delta = polynomial_delta(u, n);
        acc += density_integral(prev, delta, n);
        max_err = max_err.max((acc - u).abs());
        prev = delta;
    }
    max_err
}

/// Pearson chi-square statistic of sampled disturbances against the density,
/// with low-expectation bins merged. Returns (statistic, merged bin count).
pub fn sampled_delta_chi_square(n: f64, draws: usize, seed: u64) -> (f64, usize) {
    const BINS: usize = 200;
    let mut rng = RandomSource::new(seed);
    let mut counts = vec![0usize; BINS];
    for _ in 0..draws {
        let delta = polynomial_delta(rng.next_unit(), n);
        let b = (((delta + 1.0) / 2.0) * BINS as f64) as usize;
        counts[b.min(BINS - 1)] += 1;
    }
    // Expected counts, then merge adjacent bins until each holds >= 5.
    let mut cells: Vec<(f64, f64)> = Vec::new(); // (observed, expected)
    let mut acc = (0.0_f64, 0.0_f64);
    for b in 0..BINS {
        let lo = -1.0 + 2.0 * b as f64 / BINS as f64;
        let hi = -1.0 + 2.0 * (b + 1) as f64 / BINS as f64;
        acc.0 += counts[b] as f64;
        acc.1 += (polynomial_cdf(hi, n) - polynomial_cdf(lo, n)) * draws as f64;
        if acc.1 >= 5.0 {
            cells.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.1 > 0.0 {
        // Fold any low-expectation remainder into the last cell.
        let last = cells.last_mut().expect("at least one cell");
        last.0 += acc.0;
        last.1 += acc.1;
    }
    let statistic = cells
        .iter()
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum::<f64>();
    (statistic, cells.len())
}

/// Uniform random objective matrix, `rows x cols` in [0, scale).
pub fn random_objectives(
    rows: usize,
    cols: usize,
    scale: f64,
    rng: &mut RandomSource,
) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| scale * rng.next_unit()).collect())
        .collect()
}
