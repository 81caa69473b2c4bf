//! Lagrange interpolation pieces on uniform stencils, the nodal polynomial,
//! backward differences and the piecewise interpolants behind each scheme.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::holder::UniformGrid;
use crate::schemes::SchemeKind;

/// Highest interpolation degree.
pub const MAX_DEGREE: usize = 6;

const FACTORIAL: [i64; 7] = [1, 1, 2, 6, 24, 120, 720];

/// `d_l = (-1)^l (k - l)! l!`, the denominator of the `l`-th basis polynomial
/// of a degree-`k` stencil counted back from its rightmost node.
pub fn divided_coeff(k: usize, l: usize) -> Result<i64> {
    if k > MAX_DEGREE || l > k {
        return Err(Error::Domain(format!(
            "divided coefficient needs 0 <= l <= k <= {MAX_DEGREE}, got k = {k}, l = {l}"
        )));
    }
    let sign = if l.is_multiple_of(2) { 1 } else { -1 };
    Ok(sign * FACTORIAL[k - l] * FACTORIAL[l])
}

/// Nodal polynomial `prod_i (s - t_i)`.
pub fn omega(node_times: &[f64], s: f64) -> f64 {
    node_times.iter().map(|&t| s - t).product()
}

// Monomial coefficients of the basis polynomials in x = (s - t_anchor) / tau,
// where node l sits at x = -l. Row l holds L_l(x) = prod_{i != l} (x + i) / d_l.
fn basis_monomials(k: usize) -> &'static [[f64; MAX_DEGREE + 1]; MAX_DEGREE + 1] {
    static TABLES: OnceLock<Vec<[[f64; MAX_DEGREE + 1]; MAX_DEGREE + 1]>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=MAX_DEGREE)
            .map(|k| {
                let mut rows = [[0.0; MAX_DEGREE + 1]; MAX_DEGREE + 1];
                for (l, row) in rows.iter_mut().enumerate().take(k + 1) {
                    let mut poly = vec![1.0f64];
                    for i in (0..=k).filter(|&i| i != l) {
                        let mut next = vec![0.0; poly.len() + 1];
                        for (q, c) in poly.iter().enumerate() {
                            next[q] += c * i as f64;
                            next[q + 1] += c;
                        }
                        poly = next;
                    }
                    let d = divided_coeff(k, l).expect("degree within table") as f64;
                    for (q, c) in poly.iter().enumerate() {
                        row[q] = c / d;
                    }
                }
                rows
            })
            .collect()
    });
    &tables[k]
}

/// Degree-`k` Lagrange polynomial through the consecutive grid nodes
/// `anchor - k, ..., anchor`, used on the interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangePiece {
    degree: usize,
    anchor: usize,
    tau: f64,
    // Oldest first: values[i] belongs to node anchor - degree + i.
    values: Vec<f64>,
    lo: f64,
    hi: f64,
}

impl LagrangePiece {
    /// `values` are the node values oldest first.
    pub fn new(
        degree: usize,
        anchor: usize,
        tau: f64,
        values: Vec<f64>,
        lo: f64,
        hi: f64,
    ) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::Precondition(format!("piece degree must be 1..={MAX_DEGREE}, got {degree}")));
        }
        if anchor < degree {
            return Err(Error::Precondition(format!(
                "stencil of degree {degree} anchored at node {anchor} reaches before t = 0"
            )));
        }
        if values.len() != degree + 1 {
            return Err(Error::Precondition(format!(
                "degree {degree} piece needs {} node values, got {}",
                degree + 1,
                values.len()
            )));
        }
        if !(tau > 0.0) || !(lo <= hi) {
            return Err(Error::Precondition(format!("bad piece geometry: tau = {tau}, [{lo}, {hi}]")));
        }
        Ok(Self { degree, anchor, tau, values, lo, hi })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn anchor_time(&self) -> f64 {
        self.anchor as f64 * self.tau
    }

    pub fn node_times(&self) -> Vec<f64> {
        (0..=self.degree).map(|i| (self.anchor - self.degree + i) as f64 * self.tau).collect()
    }

    pub fn node_values(&self) -> &[f64] {
        &self.values
    }

    pub fn validity_interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    // Value at node anchor - l.
    fn back_value(&self, l: usize) -> f64 {
        self.values[self.degree - l]
    }

    /// `l`-th basis polynomial (node `anchor - l`) at `s`.
    pub fn basis(&self, l: usize, s: f64) -> f64 {
        let k = self.degree;
        let x = (s - self.anchor_time()) / self.tau;
        if (x + l as f64).abs() < 1e-9 {
            let mut acc = 1.0;
            for i in (0..=k).filter(|&i| i != l) {
                acc *= (x + i as f64) / (i as f64 - l as f64);
            }
            return acc;
        }
        let d = divided_coeff(k, l).expect("degree checked at construction") as f64;
        let omega_scaled: f64 = (0..=k).map(|i| x + i as f64).product();
        omega_scaled / ((x + l as f64) * d)
    }

    /// Interpolant value at `s`.
    pub fn eval(&self, s: f64) -> f64 {
        (0..=self.degree).map(|l| self.back_value(l) * self.basis(l, s)).sum()
    }

    /// Coefficients `a_q` of the piece written as `sum_q a_q x^q`,
    /// `x = (s - t_anchor) / tau`.
    pub fn local_coefficients(&self) -> Vec<f64> {
        // The basis sums to one, so higher coefficients only see differences
        // from the anchor value; constants then have an exactly zero slope.
        let rows = basis_monomials(self.degree);
        let base = self.back_value(0);
        let mut coeffs = vec![0.0; self.degree + 1];
        coeffs[0] = base;
        for (l, row) in rows.iter().enumerate().take(self.degree + 1).skip(1) {
            let v = self.back_value(l) - base;
            for (q, c) in coeffs.iter_mut().enumerate().skip(1) {
                *c += v * row[q];
            }
        }
        coeffs
    }

    /// Coefficients `b_r` of the derivative `sum_r b_r (s - t_anchor)^r`.
    pub fn derivative_coefficients(&self) -> Vec<f64> {
        let a = self.local_coefficients();
        (0..self.degree)
            .map(|r| (r + 1) as f64 * a[r + 1] / self.tau.powi(r as i32 + 1))
            .collect()
    }
}

/// `nabla^l` at the newest entry: `sum_j (-1)^j C(l, j) u^{i-j}`.
/// `values` is ordered oldest first.
pub fn backward_difference(values: &[f64], order: usize) -> Result<f64> {
    if values.len() < order + 1 {
        return Err(Error::InsufficientHistory { order, available: values.len() });
    }
    let newest = values.len() - 1;
    let mut coeff = 1.0;
    let mut acc = 0.0;
    for j in 0..=order {
        acc += coeff * values[newest - j];
        coeff *= -((order - j) as f64) / (j + 1) as f64;
    }
    Ok(acc)
}

/// Stencil `(anchor, degree)` used by `scheme` on interval `j`, i.e.
/// `(t_{j-1}, t_j)`, when evaluating at node `n`.
pub fn stencil(scheme: SchemeKind, n: usize, j: usize) -> (usize, usize) {
    if n == 1 {
        return (1, 1);
    }
    match scheme {
        SchemeKind::L1 => (j, 1),
        // Centered quadratics, the last interval reusing the final stencil.
        SchemeKind::L2 => {
            if j < n {
                (j + 1, 2)
            } else {
                (n, 2)
            }
        }
        SchemeKind::L12 => {
            if j == 1 {
                (1, 1)
            } else {
                (j, 2)
            }
        }
        SchemeKind::Lk(k) => (j, j.min(k)),
    }
}

/// Piecewise interpolant covering `(0, t_n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePolynomial {
    pieces: Vec<LagrangePiece>,
}

impl PiecewisePolynomial {
    pub fn new(pieces: Vec<LagrangePiece>) -> Result<Self> {
        let Some(first) = pieces.first() else {
            return Err(Error::Precondition("piecewise polynomial needs at least one piece".into()));
        };
        if first.lo != 0.0 {
            return Err(Error::Precondition("first piece must start at t = 0".into()));
        }
        for w in pieces.windows(2) {
            if w[0].hi != w[1].lo {
                return Err(Error::Precondition(format!(
                    "pieces leave a gap or overlap at {} / {}",
                    w[0].hi, w[1].lo
                )));
            }
        }
        Ok(Self { pieces })
    }

    pub fn pieces(&self) -> &[LagrangePiece] {
        &self.pieces
    }

    pub fn end(&self) -> f64 {
        self.pieces.last().map_or(0.0, |p| p.hi)
    }

    pub fn piece_at(&self, s: f64) -> &LagrangePiece {
        let idx = self.pieces.partition_point(|p| p.hi < s);
        &self.pieces[idx.min(self.pieces.len() - 1)]
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.piece_at(s).eval(s)
    }
}

/// Builds the interpolant `scheme` applies on `(0, t_n]`.
pub fn build_interpolant(
    scheme: SchemeKind,
    grid: &UniformGrid,
    node_values: &[f64],
    n: usize,
) -> Result<PiecewisePolynomial> {
    scheme.validate()?;
    if n == 0 || n > grid.steps() {
        return Err(Error::Precondition(format!(
            "evaluation node must lie in 1..={}, got {n}",
            grid.steps()
        )));
    }
    if node_values.len() < n + 1 {
        return Err(Error::Precondition(format!(
            "node {n} needs {} samples, got {}",
            n + 1,
            node_values.len()
        )));
    }
    let tau = grid.tau();
    let pieces = (1..=n)
        .map(|j| {
            let (anchor, degree) = stencil(scheme, n, j);
            LagrangePiece::new(
                degree,
                anchor,
                tau,
                node_values[anchor - degree..=anchor].to_vec(),
                grid.time(j - 1),
                grid.time(j),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    PiecewisePolynomial::new(pieces)
}
