//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use caputo_core::harness::TableId;
use caputo_core::interp::MAX_DEGREE;
use caputo_core::{
    backward_difference, build_interpolant, discrete_caputo, divided_coeff, first_node_truncation_order, gamma,
    order_interior, quad_caputo_piecewise, reproduce_table, Error, FractionalOrder, HolderTestFunction,
    LagrangePiece, Report, SchemeKind, UniformGrid,
};

const DASH: f64 = f64::NAN;

// Published interior orders; NaN marks a blank cell.
const TABLE_1: [[f64; 10]; 4] = [
    [0.20, 0.40, 0.80, 1.20, 1.40, 1.80, 2.10, 2.42, 2.67, 3.08],
    [DASH, 0.20, 0.60, 1.00, 1.20, 1.60, 1.90, 2.20, 2.41, 2.77],
    [DASH, DASH, 0.40, 0.80, 1.00, 1.40, 1.70, 2.00, 2.20, 2.51],
    [DASH, DASH, 0.20, 0.60, 0.80, 1.20, 1.50, 1.80, 2.00, 2.30],
];
const TABLE_2: [[f64; 10]; 4] = [
    [0.20, 0.40, 0.80, 1.20, 1.40, 1.82, 2.07, 2.36, 2.54, 2.77],
    [DASH, 0.20, 0.60, 1.00, 1.20, 1.61, 1.89, 2.18, 2.37, 2.64],
    [DASH, DASH, 0.40, 0.80, 1.00, 1.40, 1.70, 1.99, 2.19, 2.48],
    [DASH, DASH, 0.20, 0.60, 0.80, 1.20, 1.50, 1.80, 2.00, 2.29],
];
const TABLE_4: [[f64; 9]; 3] = [
    [0.20, 0.50, 1.00, 1.30, 1.94, 2.18, 2.94, 3.03, 3.11],
    [DASH, 0.30, 0.80, 1.10, 1.78, 2.06, 2.78, 2.92, 3.06],
    [DASH, 0.10, 0.60, 0.90, 1.59, 1.89, 2.54, 2.72, 2.91],
];
// (alpha, tau exponent, [(error, R) for beta = 0.2, 0.5, 0.8])
type NearOriginRow = (f64, i32, [(f64, f64); 3]);
const TABLE_3: [NearOriginRow; 6] = [
    (0.3, 7, [(5.8218e-05, 1.54), (6.6987e-05, 1.54), (7.2928e-05, 1.54)]),
    (0.3, 8, [(2.0033e-05, 1.63), (2.3034e-05, 1.63), (2.5059e-05, 1.63)]),
    (0.5, 7, [(2.9719e-04, 1.41), (3.4192e-04, 1.41), (3.7222e-04, 1.41)]),
    (0.5, 8, [(1.1204e-04, 1.47), (1.2881e-04, 1.47), (1.4011e-04, 1.47)]),
    (0.7, 7, [(1.2478e-03, 1.26), (1.4355e-03, 1.26), (1.5625e-03, 1.26)]),
    (0.7, 8, [(5.2040e-04, 1.30), (5.9818e-04, 1.30), (6.5059e-04, 1.30)]),
];

const SCHEMES: [SchemeKind; 7] = [
    SchemeKind::L1,
    SchemeKind::L2,
    SchemeKind::L12,
    SchemeKind::Lk(3),
    SchemeKind::Lk(4),
    SchemeKind::Lk(5),
    SchemeKind::Lk(6),
];

struct Verdict {
    passed: bool,
    summary: String,
    failures: Vec<String>,
}

fn order(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn interior_table<const C: usize>(table: TableId, expected: &[[f64; C]]) -> Verdict {
    let report: Report = reproduce_table(table).expect("table computes");
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut worst = 0.0f64;
    for (row, &alpha) in expected.iter().zip(table.alphas()) {
        for (&published, &total) in row.iter().zip(table.totals()) {
            let cell = report.cell(alpha, total).expect("cell present");
            match (published.is_nan(), cell.measured_r) {
                (true, None) => {}
                (true, Some(r)) => failures.push(format!("alpha={alpha} m+beta={total}: expected blank, got {r:.3}")),
                (false, None) => failures.push(format!("alpha={alpha} m+beta={total}: blank, expected {published}")),
                (false, Some(r)) => {
                    checked += 1;
                    worst = worst.max((r - published).abs());
                    if (r - published).abs() > 0.05 {
                        failures.push(format!("alpha={alpha} m+beta={total}: R={r:.3}, published {published}"));
                    }
                }
            }
        }
    }
    Verdict {
        passed: failures.is_empty(),
        summary: format!("{checked} cells, max |R - published| = {worst:.3} (tol 0.05), blanks where m+beta <= alpha"),
        failures,
    }
}

fn criterion_4() -> Verdict {
    let report = reproduce_table(TableId::FirstNode).expect("table computes");
    let betas = [0.2, 0.5, 0.8];
    let mut failures = Vec::new();
    let (mut worst_r, mut worst_e) = (0.0f64, 0.0f64);
    for (alpha, e, entries) in TABLE_3 {
        let tau = (-(e as f64)).exp2();
        for (&beta, &(pub_err, pub_r)) in betas.iter().zip(&entries) {
            let cell = report
                .cells
                .iter()
                .find(|c| c.alpha == alpha && c.tau == tau && c.beta == beta)
                .expect("cell present");
            let r = cell.measured_r.unwrap();
            let err = cell.error.unwrap();
            worst_r = worst_r.max((r - pub_r).abs());
            worst_e = worst_e.max(rel(err, pub_err));
            if (r - pub_r).abs() > 0.05 {
                failures.push(format!("alpha={alpha} tau=2^-{e} beta={beta}: R={r:.3}, published {pub_r}"));
            }
            if rel(err, pub_err) > 0.10 {
                failures.push(format!("alpha={alpha} tau=2^-{e} beta={beta}: error={err:.4e}, published {pub_err:.4e}"));
            }
        }
    }
    Verdict {
        passed: failures.is_empty(),
        summary: format!(
            "12 cells, max |R - published| = {worst_r:.3} (tol 0.05), max relative error deviation = {:.2}% (tol 10%)",
            100.0 * worst_e
        ),
        failures,
    }
}

fn random_function(rng: &mut ChaCha8Rng) -> HolderTestFunction {
    HolderTestFunction::new(rng.gen_range(0..=4), rng.gen_range(0.05..=1.0), rng.gen_range(0.05..0.95)).unwrap()
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0005);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for scheme in SCHEMES {
        for _ in 0..20 {
            let steps = rng.gen_range(2..=64usize);
            let grid = UniformGrid::unit(steps).unwrap();
            let alpha = order(rng.gen_range(0.05..0.95));
            let f = random_function(&mut rng);
            let n = rng.gen_range(1..=steps);
            let values = grid.sample(|t| f.eval(t));
            let closed = discrete_caputo(scheme, &grid, &values, n, alpha).unwrap().value;
            let p = build_interpolant(scheme, &grid, &values, n).unwrap();
            let quad = quad_caputo_piecewise(&p, grid.time(n), alpha, 1e-14 * closed.abs().max(1e-3)).unwrap();
            let d = rel(closed, quad);
            worst = worst.max(d);
            if d > 1e-9 {
                failures.push(format!("{scheme} N={steps} n={n} alpha={alpha} {f:?}: {closed} vs {quad}"));
            }
        }
    }
    Verdict {
        passed: failures.is_empty(),
        summary: format!("7 schemes x 20 instances, max relative gap {worst:.2e} (tol 1e-9)"),
        failures,
    }
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0006);
    let steps = 64;
    let grid = UniformGrid::unit(steps).unwrap();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for scheme in SCHEMES {
        let (c0, c1) = (rng.gen_range(-2.0..2.0), rng.gen_range(0.5..2.0));
        let values = grid.sample(|t| c0 + c1 * t);
        for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
            for n in [1, 2, steps / 2, steps] {
                let v = discrete_caputo(scheme, &grid, &values, n, order(alpha)).unwrap().value;
                let exact = c1 * grid.time(n).powf(1.0 - alpha) / gamma(2.0 - alpha).unwrap();
                worst = worst.max(rel(v, exact));
                if rel(v, exact) > 1e-10 {
                    failures.push(format!("{scheme} alpha={alpha} n={n}: {v} vs {exact}"));
                }
            }
        }
    }
    Verdict {
        passed: failures.is_empty(),
        summary: format!("7 schemes x 5 orders x 4 nodes, max relative error {worst:.2e} (tol 1e-10)"),
        failures,
    }
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    let mut failures = Vec::new();
    let mut worst_unity = 0.0f64;
    for k in 1..=MAX_DEGREE {
        let tau = 0.0625;
        let p = LagrangePiece::new(k, k, tau, vec![0.0; k + 1], 0.0, k as f64 * tau).unwrap();
        for _ in 0..200 {
            let s = rng.gen_range(0.0..=k as f64 * tau);
            let total: f64 = (0..=k).map(|l| p.basis(l, s)).sum();
            worst_unity = worst_unity.max((total - 1.0).abs());
        }
    }
    if worst_unity > 1e-11 {
        failures.push(format!("partition of unity off by {worst_unity:.2e}"));
    }
    for k in 1..=MAX_DEGREE {
        let kf: i64 = (1..=k as i64).product();
        let mut sum = 0i64;
        for l in 0..=k {
            let d = divided_coeff(k, l).unwrap();
            if kf % d != 0 {
                failures.push(format!("k={k} l={l}: {kf} / {d} is not an integer"));
            }
            sum += kf / d;
        }
        if sum != 0 {
            failures.push(format!("k={k}: k! * sum 1/d_l = {sum}"));
        }
    }
    let mut worst_diff = 0.0f64;
    for l in 1..=6usize {
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..l).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let t0 = rng.gen_range(-2.0..2.0);
            let h = rng.gen_range(0.01..0.5);
            let samples: Vec<f64> = (0..=l + 2)
                .map(|i| coeffs.iter().rev().fold(0.0, |acc, c| acc * (t0 + i as f64 * h) + c))
                .collect();
            let scale = samples.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            worst_diff = worst_diff.max(backward_difference(&samples, l).unwrap().abs() / scale);
        }
    }
    if worst_diff > 1e-12 {
        failures.push(format!("backward difference residual {worst_diff:.2e}"));
    }
    Verdict {
        passed: failures.is_empty(),
        summary: format!(
            "unity residual {worst_unity:.2e} (tol 1e-11), sum 1/d_l exact for k <= 6, nabla^l residual {worst_diff:.2e} (tol 1e-12)"
        ),
        failures,
    }
}

fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
    let mut failures = Vec::new();
    let mut inside = 0;
    let tau = (-7.0f64).exp2();
    for _ in 0..30 {
        let scheme = SCHEMES[rng.gen_range(0..SCHEMES.len())];
        let k = scheme.degree();
        let (alpha, m, beta) = loop {
            let alpha = rng.gen_range(0.05..0.95);
            let m = rng.gen_range(0..=k as u32);
            let beta: f64 = 1.0 - rng.gen_range(0.0..1.0);
            let rate = m as f64 + beta - alpha;
            if rate >= 0.3 && rate <= k as f64 + 1.0 - alpha {
                break (alpha, m, beta);
            }
        };
        let f = HolderTestFunction::new(m, beta, 0.5).unwrap();
        let expected = m as f64 + beta - alpha;
        match order_interior(scheme, &f, order(alpha), tau, 0.5) {
            Ok(row) if (row.measured_r - expected).abs() <= 0.15 => inside += 1,
            Ok(row) => failures.push(format!(
                "{scheme} alpha={alpha:.3} m={m} beta={beta:.3}: R={:.3}, expected {expected:.3}",
                row.measured_r
            )),
            Err(Error::DegenerateDifference { coarse, fine }) => failures.push(format!(
                "{scheme} alpha={alpha:.3} m={m} beta={beta:.3}: differences {coarse:.1e}, {fine:.1e} carry no order"
            )),
            Err(e) => failures.push(format!("{scheme} alpha={alpha:.3} m={m} beta={beta:.3}: {e}")),
        }
    }
    let mut band_ok = 0;
    let mut band_total = 0;
    for scheme in [SchemeKind::L2, SchemeKind::L12] {
        for alpha in [0.3, 0.5, 0.7] {
            for beta in [0.2, 0.5, 0.8] {
                band_total += 1;
                let f = HolderTestFunction::new(2, beta, 0.5).unwrap();
                let row = first_node_truncation_order(scheme, &f, order(alpha), tau).unwrap();
                let target = 2.0 - alpha;
                if row.measured_r >= target - 0.1 && row.measured_r <= target + 0.15 {
                    band_ok += 1;
                } else {
                    failures.push(format!(
                        "first node {scheme} alpha={alpha} beta={beta}: R={:.3}, band [{:.2}, {:.2}]",
                        row.measured_r,
                        target - 0.1,
                        target + 0.15
                    ));
                }
            }
        }
    }
    Verdict {
        passed: failures.is_empty(),
        summary: format!(
            "interior: {inside}/30 within 0.15 of m+beta-alpha; first node: {band_ok}/{band_total} inside [2-alpha-0.1, 2-alpha+0.15]"
        ),
        failures,
    }
}

fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0009);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let steps = rng.gen_range(4..=64usize);
        let grid = UniformGrid::unit(steps).unwrap();
        let alpha = order(rng.gen_range(0.05..0.95));
        let f = random_function(&mut rng);
        let values = grid.sample(|t| f.eval(t));
        let n = rng.gen_range(2..=steps);
        for (a, b) in [(SchemeKind::Lk(1), SchemeKind::L1), (SchemeKind::Lk(2), SchemeKind::L12)] {
            let x = discrete_caputo(a, &grid, &values, n, alpha).unwrap().value;
            let y = discrete_caputo(b, &grid, &values, n, alpha).unwrap().value;
            let d = (x - y).abs() / y.abs().max(1.0);
            worst = worst.max(d);
            if d > 1e-12 {
                failures.push(format!("{a} vs {b} N={steps} n={n}: {x} vs {y}"));
            }
        }
    }
    Verdict {
        passed: failures.is_empty(),
        summary: format!("10 instances, max gap {worst:.2e} (tol 1e-12)"),
        failures,
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 9] = [
        ("1 table 1 (L2) orders", || interior_table(TableId::L2Interior, &TABLE_1)),
        ("2 table 2 (L1-2) orders", || interior_table(TableId::L12Interior, &TABLE_2)),
        ("3 table 4 (Lk, k=3) orders", || interior_table(TableId::L3Interior, &TABLE_4)),
        ("4 table 3 near-origin errors and orders", criterion_4),
        ("5 closed form vs quadrature oracle", criterion_5),
        ("6 exactness on linear functions", criterion_6),
        ("7 interpolation identities", criterion_7),
        ("8 rate law sweep", criterion_8),
        ("9 Lk(1) = L1, Lk(2) = L1-2", criterion_9),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let status = if verdict.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {name}: {} [{:.1}s]", verdict.summary, start.elapsed().as_secs_f64());
        for f in &verdict.failures {
            println!("    {f}");
        }
        all &= verdict.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
