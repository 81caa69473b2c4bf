//! Uniform grids, the Hölder-class test functions `(t - xi)^m |t - xi|^beta`
//! and empirical modulus-of-continuity probes.

use crate::error::{Error, Result};

/// Uniform grid `t_n = n * tau`, `n = 0..=N`, on `[0, T]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformGrid {
    horizon: f64,
    steps: usize,
    tau: f64,
}

impl UniformGrid {
    pub fn new(horizon: f64, steps: usize) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::Domain(format!("grid horizon must be positive, got {horizon}")));
        }
        if steps == 0 {
            return Err(Error::Domain("grid needs at least one step".into()));
        }
        Ok(Self { horizon, steps, tau: horizon / steps as f64 })
    }

    /// Grid on `[0, 1]` with `steps` intervals.
    pub fn unit(steps: usize) -> Result<Self> {
        Self::new(1.0, steps)
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn time(&self, n: usize) -> f64 {
        if n == self.steps {
            self.horizon
        } else {
            n as f64 * self.tau
        }
    }

    /// Samples `f` at every node `t_0..=t_N`.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..=self.steps).map(|n| f(self.time(n))).collect()
    }

    /// The same horizon split into `factor` times as many steps.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(self.horizon, self.steps * factor)
    }
}

/// Index `n` of the grid node at time `t`, or an error when `t` is not a node.
pub fn grid_node_index(grid: &UniformGrid, t: f64) -> Result<usize> {
    let ratio = t / grid.tau;
    let n = ratio.round();
    if (ratio - n).abs() > 1e-9 || n < 0.0 || n > grid.steps as f64 {
        return Err(Error::NotANode { t, tau: grid.tau });
    }
    Ok(n as usize)
}

/// Hölder class `C^{m, beta}` with `beta` in (0, 1].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularityClass {
    pub m: u32,
    pub beta: f64,
}

impl RegularityClass {
    pub fn new(m: u32, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::Domain(format!("Hölder exponent must lie in (0, 1], got {beta}")));
        }
        Ok(Self { m, beta })
    }

    /// Splits a total smoothness `s = m + beta` canonically: `m = ceil(s) - 1`,
    /// so that `beta` lands in (0, 1].
    pub fn from_total(total: f64) -> Result<Self> {
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::Domain(format!("smoothness degree must be positive, got {total}")));
        }
        let m = (total - 1e-12).ceil() - 1.0;
        let beta = ((total - m) * 1e12).round() / 1e12;
        Self::new(m as u32, beta)
    }

    pub fn total(&self) -> f64 {
        self.m as f64 + self.beta
    }
}

/// Largest `m` supported for test functions (matches the highest scheme degree).
pub const MAX_TEST_DEGREE: u32 = 6;

/// The test function `u(t) = (t - xi)^m |t - xi|^beta` on `[0, T]`.
///
/// It lies in `C^{m, beta}` and its `m`-th derivative is a multiple of
/// `|t - xi|^beta`, so the kink at `xi` is where the Hölder seminorm is attained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolderTestFunction {
    m: u32,
    beta: f64,
    xi: f64,
    horizon: f64,
}

impl HolderTestFunction {
    /// Test function on `[0, 1]`.
    pub fn new(m: u32, beta: f64, xi: f64) -> Result<Self> {
        Self::on_interval(m, beta, xi, 1.0)
    }

    pub fn on_interval(m: u32, beta: f64, xi: f64, horizon: f64) -> Result<Self> {
        if m > MAX_TEST_DEGREE {
            return Err(Error::Domain(format!("m = {m} exceeds {MAX_TEST_DEGREE}")));
        }
        RegularityClass::new(m, beta)?;
        if !(xi > 0.0 && xi < horizon) {
            return Err(Error::Domain(format!("kink location must lie in (0, {horizon}), got {xi}")));
        }
        Ok(Self { m, beta, xi, horizon })
    }

    pub fn from_class(class: RegularityClass, xi: f64) -> Result<Self> {
        Self::new(class.m, class.beta, xi)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn regularity(&self) -> RegularityClass {
        RegularityClass { m: self.m, beta: self.beta }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let x = t - self.xi;
        x.powi(self.m as i32) * x.abs().powf(self.beta)
    }

    /// `p`-th derivative, `p <= m`:
    /// `prod_{i<p} (m + beta - i) * (t - xi)^(m-p) |t - xi|^beta`.
    pub fn derivative(&self, p: u32, t: f64) -> Result<f64> {
        if p > self.m {
            return Err(Error::Precondition(format!(
                "derivative order {p} exceeds the smoothness index m = {}",
                self.m
            )));
        }
        let x = t - self.xi;
        Ok(self.derivative_factor(p) * x.powi((self.m - p) as i32) * x.abs().powf(self.beta))
    }

    fn derivative_factor(&self, p: u32) -> f64 {
        (0..p).map(|i| self.m as f64 + self.beta - i as f64).product()
    }

    /// `[u^(m)]_{C^{0, beta}}`: the `m`-th derivative is `C |t - xi|^beta`, whose
    /// seminorm is exactly `C`.
    pub fn top_seminorm(&self) -> f64 {
        self.derivative_factor(self.m)
    }
}

/// Lower bound for the modulus of continuity of `u^(p)` at `delta`.
///
/// Pairs are drawn from a fixed point set, a uniform sub-grid of `samples`
/// points plus dyadic offsets on both sides of the kink, so the probe is
/// nondecreasing in `delta` and exact on dyadic `delta` for `p = m`.
pub fn modulus_probe(
    f: &HolderTestFunction,
    derivative_order: u32,
    delta: f64,
    samples: usize,
) -> Result<f64> {
    if derivative_order > f.m {
        return Err(Error::Precondition(format!(
            "derivative order {derivative_order} exceeds m = {}",
            f.m
        )));
    }
    if samples < 2 {
        return Err(Error::Precondition("modulus probe needs at least two samples".into()));
    }
    if !(delta >= 0.0 && delta <= f.horizon) {
        return Err(Error::Precondition(format!(
            "probe radius must lie in [0, {}], got {delta}",
            f.horizon
        )));
    }
    if delta == 0.0 {
        return Ok(0.0);
    }

    let h = f.horizon;
    let mut points: Vec<f64> =
        (0..samples).map(|i| h * i as f64 / (samples - 1) as f64).collect();
    points.push(f.xi);
    for j in 1..=60 {
        let offset = h * (-(j as f64)).exp2();
        for candidate in [f.xi - offset, f.xi + offset] {
            if (0.0..=h).contains(&candidate) {
                points.push(candidate);
            }
        }
    }
    points.sort_by(|a, b| a.total_cmp(b));
    points.dedup();

    let values: Vec<f64> = points
        .iter()
        .map(|&t| f.derivative(derivative_order, t))
        .collect::<Result<_>>()?;

    let mut best = 0.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[j] - points[i] > delta {
                break;
            }
            best = best.max((values[j] - values[i]).abs());
        }
    }
    Ok(best)
}
