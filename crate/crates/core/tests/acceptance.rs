//! Exit-gate suite. Runs every criterion in order, prints one PASS/FAIL line
//! per criterion and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gendet_core::bench::{run_benchmark, BenchConfig, BenchReport};
use gendet_core::combination::binomial;
use gendet_core::gendet::{detl, detl_gram, Options};
use gendet_core::*;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CASES: usize = 500;
const INVARIANT_CASES: usize = 200;

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

fn rng_for(criterion: u64, shape: (usize, usize), case: usize) -> ChaCha8Rng {
    let seed = criterion << 48 ^ (shape.0 as u64) << 40 ^ (shape.1 as u64) << 32 ^ case as u64;
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_int(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Matrix<Rational> {
    let data = (0..m * n).map(|_| q(rng.gen_range(-9..=9))).collect();
    Matrix::new(m, n, data).unwrap()
}

fn random_ratio(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-12..=12).into(), rng.gen_range(1..=5).into())
}

fn tall_shapes(max_m: usize, max_n: usize) -> Vec<(usize, usize)> {
    (1..=max_m).flat_map(|m| (1..=m.min(max_n)).map(move |n| (m, n))).collect()
}

/// Runs `body(shape, case)` for every shape and case index, in parallel.
fn for_cases(shapes: &[(usize, usize)], cases: usize, body: impl Fn((usize, usize), usize) + Sync) {
    let jobs: Vec<_> = shapes.iter().flat_map(|&s| (0..cases).map(move |c| (s, c))).collect();
    jobs.par_iter().for_each(|&(s, c)| body(s, c));
}

fn opts() -> Options {
    Options::default()
}

fn criterion_1() -> String {
    let start = Instant::now();
    let shapes = tall_shapes(7, 7);
    for_cases(&shapes, CASES, |(m, n), case| {
        let mut rng = rng_for(1, (m, n), case);
        let a = random_int(&mut rng, m, n);
        let v = vdet(&a, &opts()).unwrap();
        let w = wedge_columns(&a).unwrap();
        assert_eq!(v.coefficients(), w.coefficients(), "vdet vs wedge on {a:?}");
        let d2 = detl(&a, &opts()).unwrap().squared;
        assert_eq!(d2, blade_dot(&w, &w).unwrap(), "detl² vs |wedge|² on {a:?}");
    });
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    format!("{} shapes x {CASES} cases in {:.1?}", shapes.len(), elapsed)
}

fn criterion_2() -> String {
    let shapes = tall_shapes(7, 4);
    for_cases(&shapes, CASES, |(m, n), case| {
        let mut rng = rng_for(2, (m, n), case);
        let a = random_int(&mut rng, m, n);
        let b = random_int(&mut rng, m, n);
        let lhs = det_exact(&a.transpose().mul(&b).unwrap()).unwrap();
        let rhs = blade_dot(&vdet(&a, &opts()).unwrap(), &vdet(&b, &opts()).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "det(AᵀB) on {a:?}, {b:?}");
    });
    let squares: Vec<_> = (1..=7).map(|n| (n, n)).collect();
    for_cases(&squares, CASES, |(n, _), case| {
        let mut rng = rng_for(22, (n, n), case);
        let a = random_int(&mut rng, n, n);
        let b = random_int(&mut rng, n, n);
        let ab = det_exact(&a.mul(&b).unwrap()).unwrap();
        assert_eq!(ab, det_exact(&a).unwrap() * det_exact(&b).unwrap());
    });
    for_cases(&shapes, CASES, |(m, n), case| {
        let mut rng = rng_for(23, (m, n), case);
        let a = random_int(&mut rng, m, n);
        let d2 = detl(&a, &opts()).unwrap().squared;
        assert_eq!(d2, vdet(&a, &opts()).unwrap().norm_squared());
    });
    format!("{} shapes x {CASES} pairs, square and B = A cases", shapes.len())
}

fn criterion_3() -> String {
    let shapes = tall_shapes(8, 4);
    for_cases(&shapes, CASES, |(m, n), case| {
        let mut rng = rng_for(3, (m, n), case);
        let a = random_int(&mut rng, m, n);
        assert_eq!(gdet_closed(&a, &opts()).unwrap(), gdet_recursive(&a).unwrap(), "gdet on {a:?}");
        if n == 1 {
            let alternating = (0..m).fold(q(0), |acc, i| {
                let v = a.get(i, 0).clone();
                if i % 2 == 0 {
                    acc + v
                } else {
                    acc - v
                }
            });
            assert_eq!(gdet_recursive(&a).unwrap(), alternating);
            assert_eq!(gdet_closed(&a, &opts()).unwrap(), alternating);
        }
    });
    format!("{} shapes x {CASES} cases", shapes.len())
}

fn criterion_4() -> String {
    let shapes = tall_shapes(7, 5);
    for_cases(&shapes, CASES, |(m, n), case| {
        let mut rng = rng_for(4, (m, n), case);
        let a = random_int(&mut rng, m, n);
        let gram = det_exact(&a.transpose().mul(&a).unwrap()).unwrap();
        assert_eq!(detl(&a, &opts()).unwrap().squared, gram);
    });
    let float_shapes = [(5, 2, 50), (10, 3, 50), (20, 4, 20), (30, 5, 5), (50, 6, 2)];
    let mut worst = 0f64;
    for &(m, n, count) in &float_shapes {
        let enumerate_all = Options::default().with_max_minors(binomial(m, n));
        for case in 0..count {
            let mut rng = rng_for(44, (m, n), case);
            let a = gendet_core::bench::random_float_matrix(&mut rng, m, n);
            let by_minors = detl(&a, &enumerate_all).unwrap();
            assert_eq!(by_minors.minors_visited, binomial(m, n));
            let by_gram = detl_gram(&a, enumerate_all.tolerance).unwrap();
            let rel = (by_minors.value() - by_gram).abs() / by_gram;
            worst = worst.max(rel);
            assert!(rel <= 1e-9, "{m}x{n}: relative difference {rel:e}");
        }
    }
    format!("exact up to 7x5; float up to 50x6, worst relative difference {worst:.1e}")
}

/// Component of a random vector orthogonal to every column of `a`
/// (classical Cramer on the normal equations).
fn orthogonal_complement_vector(rng: &mut ChaCha8Rng, a: &Matrix<Rational>) -> Option<Vec<Rational>> {
    let w: Vec<Rational> = (0..a.rows()).map(|_| q(rng.gen_range(-9..=9))).collect();
    let at = a.transpose();
    let g = at.mul(a).unwrap();
    let gd = det_exact(&g).unwrap();
    let atw = at.mul_vec(&w).unwrap();
    let y: Vec<Rational> =
        (0..a.cols()).map(|j| det_exact(&g.with_column(j, &atw).unwrap()).unwrap() / gd.clone()).collect();
    let ay = a.mul_vec(&y).unwrap();
    let v: Vec<Rational> = w.iter().zip(&ay).map(|(p, r)| p - r).collect();
    (!v.iter().all(Zero::is_zero)).then_some(v)
}

fn criterion_5() -> String {
    let shapes = tall_shapes(7, 4);
    for_cases(&shapes, CASES, |(m, n), case| {
        let mut rng = rng_for(5, (m, n), case);
        let a = loop {
            let a = random_int(&mut rng, m, n);
            if !vdet(&a, &opts()).unwrap().is_zero() {
                break a;
            }
        };
        let x: Vec<Rational> = (0..n).map(|_| random_ratio(&mut rng)).collect();
        let b = a.mul_vec(&x).unwrap();
        let out = solve_overdetermined(&a, &b, &opts()).unwrap();
        assert_eq!(out, SolveOutcome::Solution(x.clone()), "solve on {a:?}");
        assert_eq!(a.mul_vec(out.solution().unwrap()).unwrap(), b);
        let mags = cramer_magnitudes(&a, &b, &opts()).unwrap();
        for (s, xj) in mags.squared.iter().zip(&x) {
            assert_eq!(*s, xj * xj);
        }

        if m > n {
            // A random vector lands in the column span with small probability; redraw.
            let v = loop {
                if let Some(v) = orthogonal_complement_vector(&mut rng, &a) {
                    break v;
                }
            };
            let bad: Vec<Rational> = b.iter().zip(&v).map(|(p, r)| p + r).collect();
            match solve_overdetermined(&a, &bad, &opts()).unwrap() {
                SolveOutcome::Inconsistent { column, blade } => {
                    // Audit the witness: the cross-multiplication really fails there.
                    let base = vdet(&a, &opts()).unwrap();
                    let replaced = vdet(&a.with_column(column - 1, &bad).unwrap(), &opts()).unwrap();
                    let p = base.coefficients().iter().position(|c| !c.is_zero()).unwrap();
                    let r = blade.rank() as usize;
                    let lhs = &replaced.coefficients()[r] * &base.coefficients()[p];
                    let rhs = &replaced.coefficients()[p] * &base.coefficients()[r];
                    assert_ne!(lhs, rhs, "witness does not fail");
                }
                other => panic!("expected Inconsistent for {a:?}, got {other:?}"),
            }
        }
    });
    format!("{} shapes x {CASES} solvable + inconsistent systems", shapes.len())
}

fn criterion_6() -> String {
    let shapes: Vec<_> = tall_shapes(6, 4).into_iter().filter(|&(_, n)| n >= 2).collect();
    for_cases(&shapes, INVARIANT_CASES, |(m, n), case| {
        let mut rng = rng_for(6, (m, n), case);
        let a = random_int(&mut rng, m, n);
        let d2 = detl(&a, &opts()).unwrap().squared;
        let j = rng.gen_range(0..n);
        let other = (j + rng.gen_range(1..n)) % n;

        // Scaling one column by k scales detl² by k².
        let k = loop {
            let k = random_ratio(&mut rng);
            if !k.is_zero() {
                break k;
            }
        };
        let scaled: Vec<Rational> = a.column(j).iter().map(|v| v * &k).collect();
        let sd2 = detl(&a.with_column(j, &scaled).unwrap(), &opts()).unwrap().squared;
        assert_eq!(sd2, &k * &k * &d2);

        // Column shear.
        let s = random_ratio(&mut rng);
        let sheared: Vec<Rational> = a.column(j).iter().zip(a.column(other)).map(|(x, y)| x + &s * y).collect();
        assert_eq!(detl(&a.with_column(j, &sheared).unwrap(), &opts()).unwrap().squared, d2);

        // Row and column permutations.
        let r1 = rng.gen_range(0..m);
        let r2 = rng.gen_range(0..m);
        assert_eq!(detl(&a.swap_rows(r1, r2), &opts()).unwrap().squared, d2);
        assert_eq!(detl(&a.swap_columns(j, other), &opts()).unwrap().squared, d2);

        // vdet is linear in column j.
        let u: Vec<Rational> = (0..m).map(|_| q(rng.gen_range(-9..=9))).collect();
        let w: Vec<Rational> = (0..m).map(|_| q(rng.gen_range(-9..=9))).collect();
        let (alpha, beta) = (random_ratio(&mut rng), random_ratio(&mut rng));
        let mix: Vec<Rational> = u.iter().zip(&w).map(|(x, y)| &alpha * x + &beta * y).collect();
        let lhs = vdet(&a.with_column(j, &mix).unwrap(), &opts()).unwrap();
        let rhs = vdet(&a.with_column(j, &u).unwrap(), &opts())
            .unwrap()
            .scaled(&alpha)
            .add(&vdet(&a.with_column(j, &w).unwrap(), &opts()).unwrap().scaled(&beta))
            .unwrap();
        assert_eq!(lhs, rhs);

        // Two equal columns.
        let dup = a.with_column(other, &a.column(j)).unwrap();
        assert!(vdet(&dup, &opts()).unwrap().is_zero());
    });

    // Frozen counterexample to multiplicativity: A (3x2), B (2x1).
    let a = Matrix::<Rational>::from_i64_rows(&[[1, 0], [0, 2], [0, 0]]).unwrap();
    let b = Matrix::<Rational>::from_i64_rows(&[[1], [0]]).unwrap();
    let ab = detl(&a.mul(&b).unwrap(), &opts()).unwrap().squared;
    let prod = detl(&a, &opts()).unwrap().squared * detl(&b, &opts()).unwrap().squared;
    assert_eq!((ab.clone(), prod.clone()), (q(1), q(4)));
    assert_ne!(ab, prod);
    format!("{} shapes x {INVARIANT_CASES} cases; detl²(AB) = 1 vs detl²(A)·detl²(B) = 4", shapes.len())
}

fn criterion_7() -> String {
    let start = Instant::now();
    let sizes: Vec<_> = (3..=12).map(|m| (m, 2)).collect();
    for_cases(&sizes, CASES, |(m, _), case| {
        let mut rng = rng_for(7, (m, 2), case);
        let poly: Vec<Point<Rational>> =
            (0..m).map(|_| Point::new(q(rng.gen_range(-20..=20)), q(rng.gen_range(-20..=20)))).collect();
        assert_eq!(polygon_area_gdet(&poly).unwrap(), polygon_area_shoelace(&poly).unwrap());
    });
    let unit: Vec<Point<Rational>> =
        [(0, 0), (1, 0), (1, 1), (0, 1)].iter().map(|&(x, y)| Point::new(q(x), q(y))).collect();
    assert_eq!(polygon_area_gdet(&unit).unwrap(), q(1));

    let errors: Vec<f64> =
        [100, 1000, 10_000].iter().map(|&m| circle_area_convergence(m, 1.0).unwrap().abs_error).collect();
    assert!(errors[2] <= 1e-6, "10^4-gon error {:e}", errors[2]);
    let ratios = [errors[0] / errors[1], errors[1] / errors[2]];
    for r in ratios {
        assert!((99.0..=101.0).contains(&r), "convergence ratio {r}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    format!("10^4-gon error {:.2e}, ratios {:.3}/{:.3}, {:.1?}", errors[2], ratios[0], ratios[1], elapsed)
}

fn criterion_8() -> String {
    let cfg = BenchConfig { shapes: vec![(15, 3), (20, 3), (25, 4), (2000, 10)], ..BenchConfig::default() };
    let report = run_benchmark(&cfg).unwrap();
    for row in &report.rows {
        let count = binomial(row.rows, row.cols);
        assert_eq!(row.minor_count, count);
        if row.rows == 2000 {
            assert_eq!(row.detl_minors.status, "skipped (cap)");
            assert_eq!(row.minors_visited, None);
            assert!(row.detl_gram.is_ok());
        } else {
            assert_eq!(row.minors_visited, Some(count));
            assert_eq!(row.detl_agree, Some(true), "{}x{}", row.rows, row.cols);
        }
    }
    let back = BenchReport::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
    let gram_2000 = report.rows[3].detl_gram.value.unwrap();
    assert!(gram_2000.is_finite() && gram_2000.is_positive());
    format!("{} shapes benchmarked, report round-trips", report.rows.len())
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let suite_start = Instant::now();
    let criteria: [Criterion; 8] = [
        ("1 wedge oracle equals vdet and detl", criterion_1),
        ("2 det(AᵀB) = vdet A · vdet B", criterion_2),
        ("3 gdet closed form = Laplace recursion", criterion_3),
        ("4 Gram identity, exact and float", criterion_4),
        ("5 generalized Cramer's rule", criterion_5),
        ("6 column-operation invariants", criterion_6),
        ("7 polygon and circle areas", criterion_7),
        ("8 benchmark harness", criterion_8),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(e) => {
                failures += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    let total = suite_start.elapsed();
    if total < Duration::from_secs(300) {
        println!("PASS suite runtime {total:.1?} (< 5 min)");
    } else {
        failures += 1;
        println!("FAIL suite runtime {total:.1?} (>= 5 min)");
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
