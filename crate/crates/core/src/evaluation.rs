//! Quality indicators (generational distance, spread), descriptive
//! statistics, and Welch's two-sample t-test with the +/−/≈ convention.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::ReferenceFront;

/// Indicator values of one scored run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatorResult {
    pub gd: f64,
    pub spread: f64,
}

/// Mean and sample standard deviation (divisor n − 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub mean: f64,
    pub std: f64,
    pub count: usize,
}

/// Outcome of the significance comparison against the adaptive setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mark {
    /// The adaptive sample's mean is significantly lower.
    Plus,
    /// The adaptive sample's mean is significantly higher.
    Minus,
    /// No significant difference at 95% confidence.
    Approx,
}

impl Mark {
    pub fn symbol(&self) -> &'static str {
        match self {
            Mark::Plus => "+",
            Mark::Minus => "-",
            Mark::Approx => "~",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignificanceMark {
    pub mark: Mark,
    pub t_statistic: f64,
    pub degrees_of_freedom: f64,
    pub p_value: f64,
}

/// Map each objective affinely by the reference front's per-objective range.
/// Values outside [0, 1] are allowed: obtained points may exceed the front's
/// bounding box.
pub fn normalize_objectives(points: &[Vec<f64>], front: &ReferenceFront) -> Vec<Vec<f64>> {
    let m = front.objective_count();
    points
        .iter()
        .map(|p| {
            assert_eq!(p.len(), m, "objective count mismatch");
            (0..m)
                .map(|k| (p[k] - front.min()[k]) / (front.max()[k] - front.min()[k]))
                .collect()
        })
        .collect()
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Generational distance in normalized objective space:
/// `sqrt(sum d_i^2) / |Q|` with `d_i` the distance from obtained point `i`
/// to its nearest reference point.
pub fn generational_distance(obtained: &[Vec<f64>], front: &ReferenceFront) -> f64 {
    assert!(!obtained.is_empty(), "obtained set must be non-empty");
    let q = normalize_objectives(obtained, front);
    let p_star = normalize_objectives(front.points(), front);
    let sum_sq: f64 = q
        .iter()
        .map(|point| {
            let d = p_star
                .iter()
                .map(|r| euclid(point, r))
                .fold(f64::INFINITY, f64::min);
            d * d
        })
        .sum();
    sum_sq.sqrt() / q.len() as f64
}

/// Spread (non-uniformity) of a bi-objective obtained set in normalized
/// space: consecutive-gap deviation plus the distances from the reference
/// front's extreme points to the obtained set's corresponding extremes.
pub fn spread(obtained: &[Vec<f64>], front: &ReferenceFront) -> Result<f64> {
    if front.objective_count() != 2 {
        return Err(Error::SpreadUnsupportedObjectives(front.objective_count()));
    }
    if obtained.len() < 2 {
        return Err(Error::SpreadTooFewPoints);
    }
    let mut q = normalize_objectives(obtained, front);
    let p_star = normalize_objectives(front.points(), front);
    q.sort_by(|a, b| a[0].total_cmp(&b[0]));

    // Reference extremes: the front is generated sorted by f1 ascending,
    // but re-derive them so imported fronts work too.
    let ref_first = p_star
        .iter()
        .min_by(|a, b| a[0].total_cmp(&b[0]))
        .expect("front non-empty");
    let ref_last = p_star
        .iter()
        .max_by(|a, b| a[0].total_cmp(&b[0]))
        .expect("front non-empty");

    let d_f = euclid(ref_first, &q[0]);
    let d_l = euclid(ref_last, &q[q.len() - 1]);
    let gaps: Vec<f64> = q.windows(2).map(|w| euclid(&w[0], &w[1])).collect();
    let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let deviation: f64 = gaps.iter().map(|d| (d - mean_gap).abs()).sum();
    Ok((d_f + d_l + deviation) / (d_f + d_l + gaps.len() as f64 * mean_gap))
}

/// Arithmetic mean and sample standard deviation.
pub fn sample_stats(values: &[f64]) -> SampleStats {
    assert!(values.len() >= 2, "stats need at least 2 values");
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    SampleStats {
        mean,
        std: (ss / (n - 1.0)).sqrt(),
        count: values.len(),
    }
}

/// Welch's two-sample t-test. Pass the non-adaptive sample as `a` and the
/// adaptive sample as `b`: `Plus` means the adaptive mean is significantly
/// lower at 95% confidence, `Minus` significantly higher.
pub fn welch_t_test(a: &SampleStats, b: &SampleStats) -> SignificanceMark {
    assert!(a.count >= 2 && b.count >= 2, "t-test needs counts >= 2");
    let va = a.std * a.std / a.count as f64;
    let vb = b.std * b.std / b.count as f64;
    let se = (va + vb).sqrt();
    if se == 0.0 {
        // Zero variance in both samples: identical means give t = 0.
        let mark = if a.mean == b.mean {
            Mark::Approx
        } else if b.mean < a.mean {
            Mark::Plus
        } else {
            Mark::Minus
        };
        return SignificanceMark {
            mark,
            t_statistic: if a.mean == b.mean { 0.0 } else { f64::INFINITY },
            degrees_of_freedom: (a.count + b.count - 2) as f64,
            p_value: if a.mean == b.mean { 1.0 } else { 0.0 },
        };
    }
    let t = (a.mean - b.mean) / se;
    let df = (va + vb) * (va + vb)
        / (va * va / (a.count as f64 - 1.0) + vb * vb / (b.count as f64 - 1.0));
    let p = two_sided_p(t, df);
    let mark = if p >= 0.05 {
        Mark::Approx
    } else if b.mean < a.mean {
        Mark::Plus
    } else {
        Mark::Minus
    };
    SignificanceMark {
        mark,
        t_statistic: t,
        degrees_of_freedom: df,
        p_value: p,
    }
}

/// Two-sided p-value of a t statistic: `P(|T_df| >= |t|)`.
///
/// Uses the identity with the regularized incomplete beta function,
/// `p = I_{df/(df+t^2)}(df/2, 1/2)`.
pub fn two_sided_p(t: f64, df: f64) -> f64 {
    assert!(df > 0.0);
    if t == 0.0 {
        return 1.0;
    }
    let x = df / (df + t * t);
    regularized_incomplete_beta(0.5 * df, 0.5, x)
}

/// ln Γ(x) by the Lanczos approximation (g = 7, n = 9).
#[allow(clippy::excessive_precision)] // canonical published coefficients
fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // Reflection formula.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = 0.99999999999980993;
    for (i, &c) in COEFFS.iter().enumerate() {
        acc += c / (x + i as f64 + 1.0);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    assert!((0.0..=1.0).contains(&x));
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    let front =
        (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln()).exp();
    // The continued fraction converges fast for x < (a+1)/(a+b+2);
    // otherwise evaluate the mirrored fraction.
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const EPS: f64 = 1e-15;
    const TINY: f64 = 1e-300;
    const MAX_ITER: usize = 300;
    let mut c = 1.0;
    let mut d = 1.0 - (a + b) * x / (a + 1.0);
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        // Even step.
        let num = m * (b - m) * x / ((a + 2.0 * m - 1.0) * (a + 2.0 * m));
        d = 1.0 + num * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        // Odd step.
        let num = -(a + m) * (a + b + m) * x / ((a + 2.0 * m) * (a + 2.0 * m + 1.0));
        d = 1.0 + num * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h
}
