//! Benchmark problems (ZDT1, ZDT2, ZDT3, ZDT6, FON2), analytic reference
//! front generation, and the plain-text front file format.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ranking::dominates;
use crate::types::{Bounds, ProblemDefinition};

pub const PROBLEM_NAMES: [&str; 5] = ["zdt1", "zdt2", "zdt3", "zdt6", "fon2"];

const INV_SQRT3: f64 = 0.577_350_269_189_625_8; // 1/sqrt(3)

/// Sampled true Pareto-optimal objective vectors with per-objective ranges.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront {
    points: Vec<Vec<f64>>,
    min: Vec<f64>,
    max: Vec<f64>,
}

impl ReferenceFront {
    /// Build from a point list. Points are kept in the given order; ranges
    /// are computed per objective and must be non-degenerate.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::FrontTooSmall);
        }
        let m = points[0].len();
        let mut min = vec![f64::INFINITY; m];
        let mut max = vec![f64::NEG_INFINITY; m];
        for p in &points {
            assert_eq!(p.len(), m, "inconsistent objective count in front");
            for (k, &v) in p.iter().enumerate() {
                min[k] = min[k].min(v);
                max[k] = max[k].max(v);
            }
        }
        for k in 0..m {
            assert!(
                min[k] < max[k],
                "reference front degenerate in objective {k}"
            );
        }
        Ok(Self { points, min, max })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn objective_count(&self) -> usize {
        self.min.len()
    }

    pub fn min(&self) -> &[f64] {
        &self.min
    }

    pub fn max(&self) -> &[f64] {
        &self.max
    }
}

fn zdt_g(genome: &[f64]) -> f64 {
    let v = genome.len();
    1.0 + 9.0 * genome[1..].iter().sum::<f64>() / (v as f64 - 1.0)
}

fn zdt1_eval(genome: &[f64]) -> Vec<f64> {
    let f1 = genome[0];
    let g = zdt_g(genome);
    vec![f1, g * (1.0 - (f1 / g).sqrt())]
}

fn zdt2_eval(genome: &[f64]) -> Vec<f64> {
    let f1 = genome[0];
    let g = zdt_g(genome);
    vec![f1, g * (1.0 - (f1 / g).powi(2))]
}

fn zdt3_eval(genome: &[f64]) -> Vec<f64> {
    let f1 = genome[0];
    let g = zdt_g(genome);
    let r = f1 / g;
    vec![
        f1,
        g * (1.0 - r.sqrt() - r * (10.0 * std::f64::consts::PI * f1).sin()),
    ]
}

fn zdt6_f1(x1: f64) -> f64 {
    1.0 - (-4.0 * x1).exp() * (6.0 * std::f64::consts::PI * x1).sin().powi(6)
}

fn zdt6_eval(genome: &[f64]) -> Vec<f64> {
    let v = genome.len();
    let f1 = zdt6_f1(genome[0]);
    let g = 1.0 + 9.0 * (genome[1..].iter().sum::<f64>() / (v as f64 - 1.0)).powf(0.75);
    vec![f1, g * (1.0 - (f1 / g).powi(2))]
}

fn fon2_eval(genome: &[f64]) -> Vec<f64> {
    let s1: f64 = genome.iter().map(|x| (x - INV_SQRT3).powi(2)).sum();
    let s2: f64 = genome.iter().map(|x| (x + INV_SQRT3).powi(2)).sum();
    vec![1.0 - (-s1).exp(), 1.0 - (-s2).exp()]
}

/// Drop dominated points, keeping first occurrences, sorted by f1 ascending.
fn nondominated_sorted_by_f1(mut points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    points.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let mut kept: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if kept.iter().any(|q| dominates(q, &p) || q == &p) {
            continue;
        }
        kept.retain(|q| !dominates(&p, q));
        kept.push(p);
    }
    kept.sort_by(|a, b| a[0].total_cmp(&b[0]));
    kept
}

fn front_from_f1_curve(count: usize, f2_of_f1: fn(f64) -> f64) -> ReferenceFront {
    assert!(count >= 2);
    let pts = (0..count)
        .map(|i| {
            let f1 = i as f64 / (count - 1) as f64;
            vec![f1, f2_of_f1(f1)]
        })
        .collect();
    ReferenceFront::new(pts).expect("generated front is valid")
}

fn zdt1_front(count: usize) -> ReferenceFront {
    front_from_f1_curve(count, |f1| 1.0 - f1.sqrt())
}

fn zdt2_front(count: usize) -> ReferenceFront {
    front_from_f1_curve(count, |f1| 1.0 - f1 * f1)
}

fn zdt3_front(count: usize) -> ReferenceFront {
    assert!(count >= 2);
    let pts: Vec<Vec<f64>> = (0..count)
        .map(|i| {
            let f1 = i as f64 / (count - 1) as f64;
            vec![
                f1,
                1.0 - f1.sqrt() - f1 * (10.0 * std::f64::consts::PI * f1).sin(),
            ]
        })
        .collect();
    ReferenceFront::new(nondominated_sorted_by_f1(pts)).expect("generated front is valid")
}

fn zdt6_front(count: usize) -> ReferenceFront {
    assert!(count >= 2);
    // Sweep x1; g = 1 on the optimal set, so f2 = 1 - f1^2. The sweep is
    // non-uniform in f1 and needs a dominance filter.
    let pts: Vec<Vec<f64>> = (0..count)
        .map(|i| {
            let x1 = i as f64 / (count - 1) as f64;
            let f1 = zdt6_f1(x1);
            vec![f1, 1.0 - f1 * f1]
        })
        .collect();
    ReferenceFront::new(nondominated_sorted_by_f1(pts)).expect("generated front is valid")
}

fn fon2_front(count: usize) -> ReferenceFront {
    assert!(count >= 2);
    // Optimal set is the diagonal x1 = x2 = x3 = t, t in [-1/sqrt3, 1/sqrt3].
    let pts: Vec<Vec<f64>> = (0..count)
        .map(|i| {
            let t = -INV_SQRT3 + 2.0 * INV_SQRT3 * i as f64 / (count - 1) as f64;
            let s1 = 3.0 * (t - INV_SQRT3).powi(2);
            let s2 = 3.0 * (t + INV_SQRT3).powi(2);
            vec![1.0 - (-s1).exp(), 1.0 - (-s2).exp()]
        })
        .collect();
    ReferenceFront::new(nondominated_sorted_by_f1(pts)).expect("generated front is valid")
}

/// Look up a benchmark problem by name.
pub fn make_problem(name: &str) -> Result<ProblemDefinition> {
    let def = match name {
        "zdt1" => ProblemDefinition::new(
            "zdt1",
            30,
            2,
            Bounds::uniform(0.0, 1.0, 30),
            zdt1_eval,
            zdt1_front,
        ),
        "zdt2" => ProblemDefinition::new(
            "zdt2",
            30,
            2,
            Bounds::uniform(0.0, 1.0, 30),
            zdt2_eval,
            zdt2_front,
        ),
        "zdt3" => ProblemDefinition::new(
            "zdt3",
            30,
            2,
            Bounds::uniform(0.0, 1.0, 30),
            zdt3_eval,
            zdt3_front,
        ),
        "zdt6" => ProblemDefinition::new(
            "zdt6",
            10,
            2,
            Bounds::uniform(0.0, 1.0, 10),
            zdt6_eval,
            zdt6_front,
        ),
        "fon2" => ProblemDefinition::new(
            "fon2",
            3,
            2,
            Bounds::uniform(-4.0, 4.0, 3),
            fon2_eval,
            fon2_front,
        ),
        _ => {
            return Err(Error::UnknownProblem {
                name: name.to_string(),
                valid: PROBLEM_NAMES.join(", "),
            })
        }
    };
    Ok(def)
}

/// Sample `count` points of a problem's analytic reference front.
pub fn sample_reference_front(name: &str, count: usize) -> Result<ReferenceFront> {
    assert!(count >= 2, "front sample count must be at least 2");
    Ok(make_problem(name)?.reference_front(count))
}

/// Write objective vectors in the front file format: one point per line,
/// space-separated decimals, LF line endings.
pub fn write_points_file(points: &[Vec<f64>], path: &Path) -> Result<()> {
    let mut out = String::new();
    for p in points {
        let line: Vec<String> = p.iter().map(|v| format!("{v}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    let mut file = fs::File::create(path)
        .map_err(|e| Error::io(format!("creating {}", path.display()), e))?;
    file.write_all(out.as_bytes())
        .map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

/// Write a front file.
pub fn write_front_file(front: &ReferenceFront, path: &Path) -> Result<()> {
    write_points_file(front.points(), path)
}

/// Read objective vectors from a front-format file. `#` lines and blank
/// lines are skipped; every data line must carry the same number of
/// numeric columns.
pub fn read_points_file(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut columns: Option<usize> = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in trimmed.split_whitespace() {
            let v: f64 = token.parse().map_err(|_| Error::FrontParse {
                path: path.to_path_buf(),
                line: line_no,
                message: format!("non-numeric token '{token}'"),
            })?;
            row.push(v);
        }
        if let Some(c) = columns {
            if row.len() != c {
                return Err(Error::FrontParse {
                    path: path.to_path_buf(),
                    line: line_no,
                    message: format!("expected {c} columns, found {}", row.len()),
                });
            }
        } else {
            columns = Some(row.len());
        }
        points.push(row);
    }
    Ok(points)
}

/// Read a front file as a reference front (at least 2 points required).
pub fn read_front_file(path: &Path) -> Result<ReferenceFront> {
    ReferenceFront::new(read_points_file(path)?)
}
