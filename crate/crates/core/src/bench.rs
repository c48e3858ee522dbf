//! Timing harness: minor enumeration vs the Gram path for `detl`, and the
//! closed form vs Laplace recursion for `gdet`.
//!
//! Each timed path gets one warm-up call and then the median of the
//! requested repetitions (at least [`MIN_REPS`]).

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combination::binomial;
use crate::error::{Error, Result};
use crate::gendet::{detl, detl_squared_gram, gdet_closed, gdet_recursive, Detl, DetlPath, Options};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

pub const MIN_REPS: usize = 5;
/// Relative agreement required between the two float `detl` paths.
pub const AGREEMENT_TOLERANCE: f64 = 1e-9;
/// The recursive g-determinant visits about `m^(n-1)` nodes; larger shapes
/// are skipped.
pub const RECURSIVE_MAX_NODES: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub shapes: Vec<(usize, usize)>,
    pub domain: Domain,
    pub reps: usize,
    pub options: Options,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            shapes: vec![(15, 3), (20, 3), (25, 4), (2000, 10)],
            domain: Domain::Float,
            reps: MIN_REPS,
            options: Options::default(),
            seed: 0x5eed,
        }
    }
}

/// Parses `"15x3,20x3"`.
pub fn parse_shapes(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (m, n) = s
                .trim()
                .split_once(['x', 'X'])
                .ok_or_else(|| Error::Parse(format!("shape {s:?} is not of the form MxN")))?;
            let parse = |t: &str| {
                t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension {t:?} in shape {s:?}")))
            };
            let (m, n) = (parse(m)?, parse(n)?);
            if n == 0 || m < n {
                return Err(Error::Dimension(format!("benchmark shape {m}x{n} is not tall")));
            }
            Ok((m, n))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathTiming {
    /// `"ok"`, `"skipped (cap)"` or `"skipped (size)"`.
    pub status: String,
    pub median_ns: Option<u64>,
    pub samples: usize,
    pub value: Option<f64>,
}

impl PathTiming {
    fn skipped(reason: &str) -> Self {
        Self { status: format!("skipped ({reason})"), median_ns: None, samples: 0, value: None }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub rows: usize,
    pub cols: usize,
    pub domain: Domain,
    pub minor_count: u128,
    /// Minors the enumeration path actually evaluated per call.
    pub minors_visited: Option<u128>,
    pub detl_minors: PathTiming,
    pub detl_gram: PathTiming,
    /// Relative difference between the two `detl` paths (float), or 0/1 for
    /// exact equality/inequality.
    pub detl_rel_diff: Option<f64>,
    pub detl_agree: Option<bool>,
    pub gdet_closed: PathTiming,
    pub gdet_recursive: PathTiming,
    pub gdet_agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub domain: Domain,
    pub reps: usize,
    pub warmup: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render_table(&self) -> String {
        let header = [
            "shape",
            "domain",
            "C(m,n)",
            "visited",
            "detl minors",
            "detl gram",
            "rel diff",
            "gdet closed",
            "gdet recursive",
        ];
        let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            cells.push(vec![
                format!("{}x{}", r.rows, r.cols),
                format!("{:?}", r.domain).to_lowercase(),
                r.minor_count.to_string(),
                r.minors_visited.map_or("-".into(), |v| v.to_string()),
                fmt_timing(&r.detl_minors),
                fmt_timing(&r.detl_gram),
                r.detl_rel_diff.map_or("-".into(), |d| format!("{d:.2e}")),
                fmt_timing(&r.gdet_closed),
                fmt_timing(&r.gdet_recursive),
            ]);
        }
        let widths: Vec<usize> =
            (0..header.len()).map(|k| cells.iter().map(|row| row[k].len()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for (i, row) in cells.iter().enumerate() {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
            if i == 0 {
                let total = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
                let _ = writeln!(out, "{}", "-".repeat(total));
            }
        }
        out
    }
}

fn fmt_timing(t: &PathTiming) -> String {
    match t.median_ns {
        Some(ns) if ns >= 1_000_000 => format!("{:.2} ms", ns as f64 / 1e6),
        Some(ns) => format!("{:.1} us", ns as f64 / 1e3),
        None => t.status.clone(),
    }
}

fn time_median<T>(reps: usize, mut f: impl FnMut() -> Result<T>) -> Result<(u64, T)> {
    let mut last = f()?;
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        last = f()?;
        samples.push(start.elapsed().as_nanos() as u64);
    }
    samples.sort_unstable();
    Ok((samples[samples.len() / 2], last))
}

fn timed<S: Scalar>(reps: usize, f: impl FnMut() -> Result<S>) -> Result<(PathTiming, S)> {
    let (ns, v) = time_median(reps, f)?;
    Ok((PathTiming { status: "ok".into(), median_ns: Some(ns), samples: reps, value: Some(v.to_f64()) }, v))
}

fn bench_shape<S: Scalar>(a: &Matrix<S>, domain: Domain, reps: usize, opts: &Options) -> Result<BenchRow> {
    let (m, n) = a.shape();
    let minor_count = binomial(m, n);
    let capped = minor_count > opts.max_minors;

    let (detl_minors, minors_value, visited) = if capped {
        (PathTiming::skipped("cap"), None, None)
    } else {
        let (ns, d) = time_median(reps, || detl(a, opts))?;
        debug_assert_eq!(d.path, DetlPath::Minors);
        let t = PathTiming { status: "ok".into(), median_ns: Some(ns), samples: reps, value: Some(d.value()) };
        (t, Some(d.squared.clone()), Some(d.minors_visited))
    };
    let (ns, g): (u64, Detl<S>) = time_median(reps, || detl_squared_gram(a, opts.tolerance))?;
    let detl_gram = PathTiming { status: "ok".into(), median_ns: Some(ns), samples: reps, value: Some(g.value()) };
    let (detl_rel_diff, detl_agree) = match &minors_value {
        Some(sq) if S::EXACT => {
            let same = *sq == g.squared;
            (Some(if same { 0.0 } else { 1.0 }), Some(same))
        }
        Some(sq) => {
            let (x, y) = (sq.to_f64().sqrt(), g.value());
            let rel = (x - y).abs() / y.abs().max(f64::MIN_POSITIVE);
            (Some(rel), Some(rel <= AGREEMENT_TOLERANCE))
        }
        None => (None, None),
    };

    let (gdet_closed_t, closed) = if capped {
        (PathTiming::skipped("cap"), None)
    } else {
        let (t, v) = timed(reps, || gdet_closed(a, opts))?;
        (t, Some(v))
    };
    let nodes = (m as f64).powi(n as i32 - 1);
    let (gdet_recursive_t, recursive) = if nodes > RECURSIVE_MAX_NODES {
        (PathTiming::skipped("size"), None)
    } else {
        let (t, v) = timed(reps, || gdet_recursive(a))?;
        (t, Some(v))
    };
    let gdet_agree = match (&closed, &recursive) {
        (Some(c), Some(r)) if S::EXACT => Some(c == r),
        (Some(c), Some(r)) => {
            let scale = r.to_f64().abs().max(1.0);
            Some((c.to_f64() - r.to_f64()).abs() <= AGREEMENT_TOLERANCE * scale)
        }
        _ => None,
    };

    Ok(BenchRow {
        rows: m,
        cols: n,
        domain,
        minor_count,
        minors_visited: visited,
        detl_minors,
        detl_gram,
        detl_rel_diff,
        detl_agree,
        gdet_closed: gdet_closed_t,
        gdet_recursive: gdet_recursive_t,
        gdet_agree,
    })
}

/// Well-conditioned float input: entries uniform in `[-1, 1]`.
pub fn random_float_matrix(rng: &mut impl Rng, m: usize, n: usize) -> Matrix<f64> {
    let data = (0..m * n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    Matrix::new(m, n, data).expect("non-empty shape")
}

/// Integer entries uniform in `[-9, 9]`.
pub fn random_exact_matrix(rng: &mut impl Rng, m: usize, n: usize) -> Matrix<Rational> {
    let data = (0..m * n).map(|_| Rational::from_i64(rng.gen_range(-9..=9))).collect();
    Matrix::new(m, n, data).expect("non-empty shape")
}

pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport> {
    let reps = config.reps.max(MIN_REPS);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::with_capacity(config.shapes.len());
    for &(m, n) in &config.shapes {
        if n == 0 || m < n {
            return Err(Error::Dimension(format!("benchmark shape {m}x{n} is not tall")));
        }
        let row = match config.domain {
            Domain::Float => {
                let a = random_float_matrix(&mut rng, m, n);
                bench_shape(&a, config.domain, reps, &config.options)?
            }
            Domain::Exact => {
                let a = random_exact_matrix(&mut rng, m, n);
                bench_shape(&a, config.domain, reps, &config.options)?
            }
        };
        rows.push(row);
    }
    Ok(BenchReport { domain: config.domain, reps, warmup: 1, rows })
}
