//! Discrete Caputo operators: `D^α` applied exactly to the piecewise
//! interpolant each scheme builds from grid samples.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::holder::UniformGrid;
use crate::interp::{build_interpolant, LagrangePiece, MAX_DEGREE};
use crate::special::{gamma_pos, kernel_moment, FractionalOrder, KernelMoment};

/// Which interpolant the discrete operator integrates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Piecewise linear.
    L1,
    /// Quadratics through `t_{j-1}, t_j, t_{j+1}`, the last interval reusing
    /// the final stencil.
    L2,
    /// Linear on the first interval, backward quadratics after.
    L12,
    /// Backward degree-`k` pieces after a growing-degree startup, `1 <= k <= 6`.
    Lk(usize),
}

impl SchemeKind {
    pub fn validate(self) -> Result<Self> {
        match self {
            SchemeKind::Lk(k) if k == 0 || k > MAX_DEGREE => Err(Error::Domain(format!(
                "Lk schemes are defined for 1 <= k <= {MAX_DEGREE}, got k = {k}"
            ))),
            other => Ok(other),
        }
    }

    /// Highest piece degree the scheme uses.
    pub fn degree(self) -> usize {
        match self {
            SchemeKind::L1 => 1,
            SchemeKind::L2 | SchemeKind::L12 => 2,
            SchemeKind::Lk(k) => k,
        }
    }

    /// Best rate the scheme can deliver on smooth data, `k + 1 - α`.
    pub fn max_order(self, alpha: FractionalOrder) -> f64 {
        let top = match self {
            SchemeKind::L1 => 2.0,
            _ => self.degree() as f64 + 1.0,
        };
        top - alpha.value()
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeKind::L1 => f.write_str("L1"),
            SchemeKind::L2 => f.write_str("L2"),
            SchemeKind::L12 => f.write_str("L1-2"),
            SchemeKind::Lk(k) => write!(f, "Lk{k}"),
        }
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    /// Accepts `l1`, `l2`, `l12` / `l1-2` and `lk3` / `l3`-style names.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let scheme = match lower.as_str() {
            "l1" => SchemeKind::L1,
            "l2" => SchemeKind::L2,
            "l12" | "l1-2" => SchemeKind::L12,
            other => {
                let digits = other
                    .strip_prefix("lk")
                    .or_else(|| other.strip_prefix('l'))
                    .ok_or_else(|| Error::Domain(format!("unknown scheme {s:?}")))?;
                let k = digits
                    .parse::<usize>()
                    .map_err(|_| Error::Domain(format!("unknown scheme {s:?}")))?;
                SchemeKind::Lk(k)
            }
        };
        scheme.validate()
    }
}

/// Discrete Caputo derivative at one grid node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscreteCaputoValue {
    pub n: usize,
    pub t_n: f64,
    pub value: f64,
    pub scheme: SchemeKind,
    pub alpha: FractionalOrder,
}

fn piece_integral(piece: &LagrangePiece, a: f64, b: f64, t_n: f64, alpha: FractionalOrder) -> Result<f64> {
    let c = piece.anchor_time();
    piece
        .derivative_coefficients()
        .iter()
        .enumerate()
        .map(|(q, coeff)| Ok(coeff * kernel_moment(&KernelMoment::new(t_n, a, b, c, q, alpha)?)))
        .sum()
}

/// `(1/Γ(1-α)) ∫_a^b (t_n - s)^(-α) p'(s) ds` for one piece, exactly.
pub fn caputo_of_piece(
    piece: &LagrangePiece,
    interval: (f64, f64),
    t_n: f64,
    alpha: FractionalOrder,
) -> Result<f64> {
    let (a, b) = interval;
    let (lo, hi) = piece.validity_interval();
    let slack = 1e-12 * hi.abs().max(1.0);
    if a < lo - slack || b > hi + slack || a > b {
        return Err(Error::Precondition(format!(
            "interval [{a}, {b}] is not inside the piece's validity interval [{lo}, {hi}]"
        )));
    }
    if b > t_n {
        return Err(Error::Precondition(format!("interval end {b} lies past t_n = {t_n}")));
    }
    Ok(piece_integral(piece, a, b, t_n, alpha)? / gamma_pos(1.0 - alpha.value()))
}

/// Scheme value `δ_τ^α u(t_n)` from grid samples `node_values[0..=n]`.
pub fn discrete_caputo(
    scheme: SchemeKind,
    grid: &UniformGrid,
    node_values: &[f64],
    n: usize,
    alpha: FractionalOrder,
) -> Result<DiscreteCaputoValue> {
    let interpolant = build_interpolant(scheme, grid, node_values, n)?;
    let t_n = grid.time(n);
    let mut total = 0.0;
    for piece in interpolant.pieces() {
        let (a, b) = piece.validity_interval();
        total += piece_integral(piece, a, b, t_n, alpha)?;
    }
    Ok(DiscreteCaputoValue {
        n,
        t_n,
        value: total / gamma_pos(1.0 - alpha.value()),
        scheme,
        alpha,
    })
}

/// [`discrete_caputo`] for a function sampled on the grid up to node `n`.
pub fn discrete_caputo_of(
    scheme: SchemeKind,
    grid: &UniformGrid,
    u: impl Fn(f64) -> f64,
    n: usize,
    alpha: FractionalOrder,
) -> Result<DiscreteCaputoValue> {
    let values: Vec<f64> = (0..=n.min(grid.steps())).map(|i| u(grid.time(i))).collect();
    discrete_caputo(scheme, grid, &values, n, alpha)
}

/// L1 convolution weights `b_j = (j+1)^(1-α) - j^(1-α)`, `j = 0..n-1`.
pub fn l1_weights(n: usize, alpha: FractionalOrder) -> Vec<f64> {
    let p = 1.0 - alpha.value();
    (0..n).map(|j| (j as f64 + 1.0).powf(p) - (j as f64).powf(p)).collect()
}

/// L1 value `τ^(-α)/Γ(2-α) Σ_{j=1}^{n} b_{n-j} (u^j - u^{j-1})` from precomputed weights.
pub fn apply_l1_weights(
    weights: &[f64],
    grid: &UniformGrid,
    node_values: &[f64],
    n: usize,
    alpha: FractionalOrder,
) -> Result<f64> {
    if n == 0 || weights.len() < n || node_values.len() < n + 1 {
        return Err(Error::Precondition(format!(
            "L1 sum at node {n} needs {n} weights and {} samples",
            n + 1
        )));
    }
    let al = alpha.value();
    let sum: f64 = (1..=n).map(|j| weights[n - j] * (node_values[j] - node_values[j - 1])).sum();
    Ok(grid.tau().powf(-al) / gamma_pos(2.0 - al) * sum)
}
