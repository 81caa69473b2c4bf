//! Discretizations of the Caputo derivative of order `0 < α < 1` on uniform
//! grids (L1, L2, L1-2 and the Lk family up to k = 6) and a harness that
//! measures their convergence orders on Hölder-class test functions.
//!
//! ```
//! use caputo_core::{discrete_caputo_of, FractionalOrder, SchemeKind, UniformGrid};
//!
//! let grid = UniformGrid::unit(64).unwrap();
//! let alpha = FractionalOrder::new(0.5).unwrap();
//! let v = discrete_caputo_of(SchemeKind::L12, &grid, |t| t, 64, alpha).unwrap();
//! assert!((v.value - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-12);
//! ```

// `!(x > 0.0)` rejects NaN; tables keep their published digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod harness;
pub mod holder;
pub mod interp;
pub mod oracle;
pub mod schemes;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use harness::{
    emit, first_node_truncation_order, order_first_node, order_interior, reproduce_table, ConvergenceRow,
    FirstNodeRow, Format, Report,
};
pub use holder::{grid_node_index, modulus_probe, HolderTestFunction, RegularityClass, UniformGrid};
pub use interp::{backward_difference, build_interpolant, divided_coeff, omega, LagrangePiece, PiecewisePolynomial};
pub use oracle::{exact_caputo_monomial, integrate_adaptive, quad_caputo_integrated, quad_caputo_piecewise};
pub use schemes::{
    apply_l1_weights, caputo_of_piece, discrete_caputo, discrete_caputo_of, l1_weights, DiscreteCaputoValue,
    SchemeKind,
};
pub use special::{gamma, kernel_moment, FractionalOrder, KernelMoment};
