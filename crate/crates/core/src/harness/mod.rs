//! Convergence orders by grid refinement, table reproduction and report output.

mod emit;
mod tables;

pub use emit::{emit, format_g, Format};
pub use tables::{reproduce_table, Cell, Report, TableId};

use crate::error::{Error, Result};
use crate::holder::{grid_node_index, HolderTestFunction, UniformGrid};
use crate::schemes::{discrete_caputo_of, SchemeKind};
use crate::special::FractionalOrder;

/// Differences smaller than this carry no order information.
pub const DEGENERATE_THRESHOLD: f64 = 1e-15;

/// One measured interior order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub scheme: SchemeKind,
    pub alpha: f64,
    pub m: u32,
    pub beta: f64,
    pub xi: f64,
    pub tau_base: f64,
    pub measured_r: f64,
    pub theoretical_order: f64,
}

/// One measured order near `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FirstNodeRow {
    pub scheme: SchemeKind,
    pub alpha: f64,
    pub beta: f64,
    pub m: u32,
    pub tau: f64,
    pub error: f64,
    pub measured_r: f64,
}

fn grid_with_step(horizon: f64, tau: f64) -> Result<UniformGrid> {
    let steps = horizon / tau;
    let rounded = steps.round();
    if !(tau > 0.0) || rounded < 1.0 || (steps - rounded).abs() > 1e-9 * rounded {
        return Err(Error::Precondition(format!("step {tau} does not divide the horizon {horizon}")));
    }
    UniformGrid::new(horizon, rounded as usize)
}

fn value_at(
    scheme: SchemeKind,
    f: &HolderTestFunction,
    alpha: FractionalOrder,
    grid: &UniformGrid,
    t: f64,
) -> Result<f64> {
    let n = grid_node_index(grid, t)?;
    Ok(discrete_caputo_of(scheme, grid, |s| f.eval(s), n, alpha)?.value)
}

fn log2_ratio(coarse: f64, fine: f64) -> Result<f64> {
    let (c, f) = (coarse.abs(), fine.abs());
    if c < DEGENERATE_THRESHOLD || f < DEGENERATE_THRESHOLD {
        return Err(Error::DegenerateDifference { coarse: c, fine: f });
    }
    Ok((c / f).log2())
}

/// `R = log2 |δ_τ u(x) - δ_{τ/2} u(x)| / |δ_{τ/2} u(x) - δ_{τ/4} u(x)|` at the
/// physical time `x = xi`, which must be a node of the coarsest grid.
pub fn order_interior(
    scheme: SchemeKind,
    f: &HolderTestFunction,
    alpha: FractionalOrder,
    tau: f64,
    xi: f64,
) -> Result<ConvergenceRow> {
    scheme.validate()?;
    let coarse = grid_with_step(f.horizon(), tau)?;
    let n = grid_node_index(&coarse, xi)?;
    if n < scheme.degree() {
        return Err(Error::Precondition(format!(
            "evaluation node {n} lies inside the startup of {scheme} (needs n >= {})",
            scheme.degree()
        )));
    }
    let grids = [coarse, coarse.refined(2)?, coarse.refined(4)?];
    let mut values = [0.0; 3];
    for (v, g) in values.iter_mut().zip(&grids) {
        *v = value_at(scheme, f, alpha, g, xi)?;
    }
    let measured_r = log2_ratio(values[0] - values[1], values[1] - values[2])?;
    Ok(ConvergenceRow {
        scheme,
        alpha: alpha.value(),
        m: f.m(),
        beta: f.beta(),
        xi,
        tau_base: tau,
        measured_r,
        theoretical_order: f.m() as f64 + f.beta() - alpha.value(),
    })
}

/// Time at which the near-origin error table is evaluated.
pub const FIRST_NODE_TIME: f64 = 1.0 / 128.0;
/// Refinement of the near-origin reference relative to [`FIRST_NODE_TIME`].
pub const FIRST_NODE_REFERENCE_DIVISIONS: usize = 64;

/// Error of the L1 value at `t* = 2^-7` on the grid with step `h`.
fn first_node_error(f: &HolderTestFunction, alpha: FractionalOrder, h: f64, reference: f64) -> Result<f64> {
    let grid = grid_with_step(f.horizon(), h)?;
    Ok((value_at(SchemeKind::L1, f, alpha, &grid, FIRST_NODE_TIME)? - reference).abs())
}

/// Near-origin error table entry: the value at `t* = 2^-7` from grids of step
/// `τ` and `τ/2` (both `τ <= t*`), measured against a reference on the grid of
/// step `t*/64`. `error` is the step-`τ` error and
/// `R = log2(error(τ) / error(τ/2))`.
///
/// Both quadratic schemes collapse to the piecewise linear rule over the first
/// coarse interval, which is what this table probes.
pub fn order_first_node(
    scheme: SchemeKind,
    f: &HolderTestFunction,
    alpha: FractionalOrder,
    tau: f64,
) -> Result<FirstNodeRow> {
    if !matches!(scheme, SchemeKind::L2 | SchemeKind::L12) {
        return Err(Error::Precondition(format!("near-origin table covers L2 and L1-2, got {scheme}")));
    }
    if tau > FIRST_NODE_TIME * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!("step {tau} exceeds the evaluation time {FIRST_NODE_TIME}")));
    }
    let reference_grid = grid_with_step(f.horizon(), FIRST_NODE_TIME / FIRST_NODE_REFERENCE_DIVISIONS as f64)?;
    let reference = value_at(SchemeKind::L1, f, alpha, &reference_grid, FIRST_NODE_TIME)?;
    let error = first_node_error(f, alpha, tau, reference)?;
    let finer = first_node_error(f, alpha, tau / 2.0, reference)?;
    Ok(FirstNodeRow {
        scheme,
        alpha: alpha.value(),
        beta: f.beta(),
        m: f.m(),
        tau,
        error,
        measured_r: log2_ratio(error, finer)?,
    })
}

/// Truncation order at the first node itself: `e(h) = |δ_h u(h) - δ_{h/128} u(h)|`
/// with the scheme's own fine-grid reference, `R = log2(e(τ) / e(τ/2))`.
pub fn first_node_truncation_order(
    scheme: SchemeKind,
    f: &HolderTestFunction,
    alpha: FractionalOrder,
    tau: f64,
) -> Result<FirstNodeRow> {
    scheme.validate()?;
    let error_at = |h: f64| -> Result<f64> {
        let coarse = grid_with_step(f.horizon(), h)?;
        let fine = coarse.refined(128)?;
        Ok((value_at(scheme, f, alpha, &coarse, h)? - value_at(scheme, f, alpha, &fine, h)?).abs())
    };
    let error = error_at(tau)?;
    let finer = error_at(tau / 2.0)?;
    Ok(FirstNodeRow {
        scheme,
        alpha: alpha.value(),
        beta: f.beta(),
        m: f.m(),
        tau,
        error,
        measured_r: log2_ratio(error, finer)?,
    })
}
