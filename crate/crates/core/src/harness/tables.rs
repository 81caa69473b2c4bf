use std::fmt;
use std::str::FromStr;

use super::{order_first_node, order_interior};
use crate::error::{Error, Result};
use crate::holder::{HolderTestFunction, RegularityClass};
use crate::schemes::SchemeKind;
use crate::special::FractionalOrder;

/// The four published order tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    /// L2, interior, `xi = 0.5`.
    L2Interior,
    /// L1-2, interior, `xi = 0.5`.
    L12Interior,
    /// Near-origin errors and orders, `m = 2`.
    FirstNode,
    /// Lk with `k = 3`, interior, `xi = 0.25`.
    L3Interior,
}

impl TableId {
    pub fn number(self) -> u8 {
        match self {
            TableId::L2Interior => 1,
            TableId::L12Interior => 2,
            TableId::FirstNode => 3,
            TableId::L3Interior => 4,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(TableId::L2Interior),
            2 => Ok(TableId::L12Interior),
            3 => Ok(TableId::FirstNode),
            4 => Ok(TableId::L3Interior),
            _ => Err(Error::Domain(format!("tables are numbered 1 to 4, got {n}"))),
        }
    }

    /// Smoothness totals `m + beta` heading the columns of interior tables.
    pub fn totals(self) -> &'static [f64] {
        match self {
            TableId::L2Interior | TableId::L12Interior => &[0.3, 0.5, 0.9, 1.3, 1.5, 1.9, 2.2, 2.5, 2.7, 3.0],
            TableId::L3Interior => &[0.5, 0.8, 1.3, 1.6, 2.3, 2.6, 3.2, 3.4, 3.6],
            TableId::FirstNode => &[],
        }
    }

    pub fn alphas(self) -> &'static [f64] {
        match self {
            TableId::L2Interior | TableId::L12Interior => &[0.1, 0.3, 0.5, 0.7],
            TableId::L3Interior | TableId::FirstNode => &[0.3, 0.5, 0.7],
        }
    }

    pub fn scheme(self) -> SchemeKind {
        match self {
            TableId::L2Interior | TableId::FirstNode => SchemeKind::L2,
            TableId::L12Interior => SchemeKind::L12,
            TableId::L3Interior => SchemeKind::Lk(3),
        }
    }

    pub fn xi(self) -> f64 {
        match self {
            TableId::L3Interior => 0.25,
            _ => 0.5,
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.trim().parse::<u8>().map_err(|_| Error::Domain(format!("unknown table {s:?}")))?;
        Self::from_number(n)
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Interior tables use `tau = 2^-7`; the near-origin table has rows at both.
pub const TABLE_TAU_EXPONENTS: [i32; 2] = [7, 8];
/// Hölder exponents of the near-origin table.
pub const FIRST_NODE_BETAS: [f64; 3] = [0.2, 0.5, 0.8];

/// One table entry. `measured_r` is `None` for cells left blank because
/// `m + beta <= alpha`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub scheme: SchemeKind,
    pub alpha: f64,
    pub m: u32,
    pub beta: f64,
    pub xi: f64,
    pub tau: f64,
    pub measured_r: Option<f64>,
    pub theoretical_order: f64,
    pub error: Option<f64>,
}

impl Cell {
    pub fn is_dash(&self) -> bool {
        self.measured_r.is_none()
    }

    pub fn total(&self) -> f64 {
        self.m as f64 + self.beta
    }
}

/// Cells of one table in row-major order (rows by `alpha`, then `tau` for the
/// near-origin table).
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub table: Option<TableId>,
    pub cells: Vec<Cell>,
}

impl Report {
    pub fn empty() -> Self {
        Self { table: None, cells: Vec::new() }
    }

    /// Entry at (`alpha`, smoothness total) of an interior table.
    pub fn cell(&self, alpha: f64, total: f64) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| (c.alpha - alpha).abs() < 1e-12 && (c.total() - total).abs() < 1e-9)
    }
}

fn interior_cell(table: TableId, alpha: f64, total: f64) -> Result<Cell> {
    let class = RegularityClass::from_total(total)?;
    let tau = (-(TABLE_TAU_EXPONENTS[0] as f64)).exp2();
    let xi = table.xi();
    let scheme = table.scheme();
    let mut cell = Cell {
        scheme,
        alpha,
        m: class.m,
        beta: class.beta,
        xi,
        tau,
        measured_r: None,
        theoretical_order: class.total() - alpha,
        error: None,
    };
    if class.total() > alpha + 1e-12 {
        let f = HolderTestFunction::from_class(class, xi)?;
        let row = order_interior(scheme, &f, FractionalOrder::new(alpha)?, tau, xi)?;
        cell.measured_r = Some(row.measured_r);
    }
    Ok(cell)
}

/// Computes every entry of `table`.
pub fn reproduce_table(table: TableId) -> Result<Report> {
    let mut cells = Vec::new();
    match table {
        TableId::FirstNode => {
            for &alpha in table.alphas() {
                for e in TABLE_TAU_EXPONENTS {
                    let tau = (-(e as f64)).exp2();
                    for beta in FIRST_NODE_BETAS {
                        let f = HolderTestFunction::new(2, beta, table.xi())?;
                        let row = order_first_node(table.scheme(), &f, FractionalOrder::new(alpha)?, tau)?;
                        cells.push(Cell {
                            scheme: row.scheme,
                            alpha,
                            m: 2,
                            beta,
                            xi: table.xi(),
                            tau,
                            measured_r: Some(row.measured_r),
                            theoretical_order: 2.0 - alpha,
                            error: Some(row.error),
                        });
                    }
                }
            }
        }
        _ => {
            for &alpha in table.alphas() {
                for &total in table.totals() {
                    cells.push(interior_cell(table, alpha, total)?);
                }
            }
        }
    }
    Ok(Report { table: Some(table), cells })
}
