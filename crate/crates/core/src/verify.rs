//! Self-check suite behind `caputo verify`: identities, exactness and
//! closed-form versus quadrature agreement on seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::holder::{HolderTestFunction, UniformGrid};
use crate::interp::{backward_difference, build_interpolant, divided_coeff, LagrangePiece, MAX_DEGREE};
use crate::oracle::{exact_caputo_monomial, quad_caputo_integrated, quad_caputo_piecewise};
use crate::schemes::{apply_l1_weights, discrete_caputo, l1_weights, SchemeKind};
use crate::special::{gamma, kernel_moment, FractionalOrder, KernelMoment};

const SEED: u64 = 0x5eed_cafe;

/// Outcome of one named check; `worst` is the largest observed discrepancy.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: worst {:.3e} (tolerance {:.1e})", self.name, self.worst, self.tolerance)
    }
}

/// Every scheme the library implements.
pub const SCHEMES: [SchemeKind; 7] = [
    SchemeKind::L1,
    SchemeKind::L2,
    SchemeKind::L12,
    SchemeKind::Lk(3),
    SchemeKind::Lk(4),
    SchemeKind::Lk(5),
    SchemeKind::Lk(6),
];

fn outcome(name: &'static str, worst: f64, tolerance: f64) -> CheckOutcome {
    CheckOutcome { name, passed: worst <= tolerance, worst, tolerance }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn random_test_function(rng: &mut ChaCha8Rng) -> Result<HolderTestFunction> {
    HolderTestFunction::new(rng.gen_range(0..=4), rng.gen_range(0.05..=1.0), rng.gen_range(0.05..0.95))
}

pub fn gamma_recurrence() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = rng.gen_range(0.1..5.0);
        worst = worst.max(rel(gamma(x + 1.0)?, x * gamma(x)?));
    }
    Ok(outcome("gamma recurrence", worst, 1e-12))
}

pub fn moment_additivity() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let alpha = FractionalOrder::new(rng.gen_range(0.05..0.95))?;
        let q = rng.gen_range(0..=6);
        let a = rng.gen_range(0.0..0.5);
        let b = a + rng.gen_range(0.01..0.5);
        let d = rng.gen_range(a..=b);
        let t = b + rng.gen_range(0.0..0.5);
        let m = |lo, hi| KernelMoment::new(t, lo, hi, b, q, alpha).map(|k| kernel_moment(&k));
        let (whole, left, right) = (m(a, b)?, m(a, d)?, m(d, b)?);
        let scale = whole.abs().max(left.abs()).max(right.abs());
        worst = worst.max((whole - left - right).abs() / scale);
    }
    Ok(outcome("kernel moment additivity", worst, 1e-12))
}

pub fn partition_of_unity() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut worst = 0.0f64;
    for k in 1..=MAX_DEGREE {
        let tau = 0.05;
        let p = LagrangePiece::new(k, k, tau, vec![0.0; k + 1], 0.0, k as f64 * tau)?;
        for _ in 0..200 {
            let s = rng.gen_range(0.0..=k as f64 * tau);
            let total: f64 = (0..=k).map(|l| p.basis(l, s)).sum();
            worst = worst.max((total - 1.0).abs());
        }
    }
    Ok(outcome("partition of unity", worst, 1e-11))
}

pub fn reciprocal_coefficients() -> Result<CheckOutcome> {
    // k! / d_l is an integer, so the sum is checked in exact integer arithmetic.
    let mut worst = 0.0f64;
    for k in 1..=MAX_DEGREE {
        let kf: i64 = (1..=k as i64).product();
        let mut total = 0i64;
        for l in 0..=k {
            let d = divided_coeff(k, l)?;
            if kf % d != 0 {
                worst = f64::INFINITY;
            }
            total += kf / d;
        }
        worst = worst.max(total.unsigned_abs() as f64);
    }
    Ok(outcome("sum of reciprocal coefficients", worst, 0.0))
}

pub fn backward_annihilation() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut worst = 0.0f64;
    for l in 1..=6usize {
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..l).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let start = rng.gen_range(-3.0..3.0);
            let samples: Vec<f64> = (0..=l)
                .map(|i| {
                    let t = start + i as f64 * 0.25;
                    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
                })
                .collect();
            let scale = samples.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            worst = worst.max(backward_difference(&samples, l)?.abs() / scale);
        }
    }
    Ok(outcome("backward differences annihilate low degree", worst, 1e-12))
}

pub fn linear_exactness() -> Result<CheckOutcome> {
    let grid = UniformGrid::unit(64)?;
    let values = grid.sample(|t| 0.7 + 1.3 * t);
    let mut worst = 0.0f64;
    for scheme in SCHEMES {
        for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let al = FractionalOrder::new(alpha)?;
            for n in [1, 2, 32, 64] {
                let v = discrete_caputo(scheme, &grid, &values, n, al)?.value;
                let exact = 1.3 * exact_caputo_monomial(1, grid.time(n), al);
                worst = worst.max(rel(v, exact));
            }
        }
    }
    Ok(outcome("exactness on linear functions", worst, 1e-10))
}

pub fn constant_annihilation() -> Result<CheckOutcome> {
    let grid = UniformGrid::unit(32)?;
    let values = vec![3.25; 33];
    let mut worst = 0.0f64;
    for scheme in SCHEMES {
        for n in 1..=32 {
            let v = discrete_caputo(scheme, &grid, &values, n, FractionalOrder::new(0.45)?)?.value;
            worst = worst.max(v.abs() / 3.25);
        }
    }
    Ok(outcome("constants are annihilated", worst, 1e-12))
}

pub fn oracle_equivalence() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut worst = 0.0f64;
    for scheme in SCHEMES {
        for _ in 0..20 {
            let steps = rng.gen_range(2..=64usize);
            let grid = UniformGrid::unit(steps)?;
            let alpha = FractionalOrder::new(rng.gen_range(0.05..0.95))?;
            let f = random_test_function(&mut rng)?;
            let n = rng.gen_range(1..=steps);
            let values = grid.sample(|t| f.eval(t));
            let closed = discrete_caputo(scheme, &grid, &values, n, alpha)?.value;
            let p = build_interpolant(scheme, &grid, &values, n)?;
            let quad = quad_caputo_piecewise(&p, grid.time(n), alpha, 1e-14 * closed.abs().max(1e-3))?;
            worst = worst.max(rel(closed, quad));
        }
    }
    Ok(outcome("closed form matches quadrature", worst, 1e-9))
}

pub fn two_form_agreement() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let tol = 1e-11;
    let mut worst = 0.0f64;
    for i in 0..20 {
        let steps = rng.gen_range(2..=32usize);
        let grid = UniformGrid::unit(steps)?;
        let alpha = FractionalOrder::new(rng.gen_range(0.1..0.9))?;
        let f = random_test_function(&mut rng)?;
        let n = rng.gen_range(1..=steps);
        let scheme = SCHEMES[i % SCHEMES.len()];
        let values = grid.sample(|t| f.eval(t));
        let p = build_interpolant(scheme, &grid, &values, n)?;
        let knots: Vec<f64> = (0..=n).map(|j| grid.time(j)).collect();
        let a = quad_caputo_piecewise(&p, grid.time(n), alpha, tol)?;
        let b = quad_caputo_integrated(&|s| p.eval(s), grid.time(n), alpha, tol, &knots)?;
        worst = worst.max((a - b).abs());
    }
    Ok(outcome("derivative and integrated forms agree", worst, 2.0 * tol))
}

pub fn scheme_coincidence() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let grid = UniformGrid::unit(40)?;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let alpha = FractionalOrder::new(rng.gen_range(0.05..0.95))?;
        let values: Vec<f64> = (0..=40).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = rng.gen_range(2..=40);
        for (a, b) in [(SchemeKind::Lk(1), SchemeKind::L1), (SchemeKind::Lk(2), SchemeKind::L12)] {
            let x = discrete_caputo(a, &grid, &values, n, alpha)?.value;
            let y = discrete_caputo(b, &grid, &values, n, alpha)?.value;
            worst = worst.max((x - y).abs() / y.abs().max(1.0));
        }
    }
    Ok(outcome("Lk(1) = L1 and Lk(2) = L1-2", worst, 1e-12))
}

pub fn l1_weight_equivalence() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let grid = UniformGrid::unit(48)?;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let alpha = FractionalOrder::new(rng.gen_range(0.05..0.95))?;
        let f = random_test_function(&mut rng)?;
        let values = grid.sample(|t| f.eval(t));
        let n = rng.gen_range(1..=48);
        let w = l1_weights(n, alpha);
        let fast = apply_l1_weights(&w, &grid, &values, n, alpha)?;
        let slow = discrete_caputo(SchemeKind::L1, &grid, &values, n, alpha)?.value;
        worst = worst.max((fast - slow).abs() / slow.abs().max(1.0));
    }
    Ok(outcome("L1 weights match the generic path", worst, 1e-12))
}

/// Runs every check in a fixed order.
pub fn run_all() -> Result<Vec<CheckOutcome>> {
    let checks: [fn() -> Result<CheckOutcome>; 11] = [
        gamma_recurrence,
        moment_additivity,
        partition_of_unity,
        reciprocal_coefficients,
        backward_annihilation,
        linear_exactness,
        constant_annihilation,
        oracle_equivalence,
        two_form_agreement,
        scheme_coincidence,
        l1_weight_equivalence,
    ];
    checks.iter().map(|c| c()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for outcome in run_all().unwrap() {
            assert!(outcome.passed, "{outcome}");
        }
    }
}
