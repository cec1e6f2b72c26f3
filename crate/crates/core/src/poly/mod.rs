//! Forms in X, Y, Z, bivariate local polynomials and truncated power series.

mod bipoly;
mod form;
mod parse;
mod series;

pub use bipoly::BiPoly;
pub use form::{dehomogenize, form_divides, monomials, Form, Mono, ProjPoint};
pub use parse::parse_form;
pub use series::{form_substitute, series_order, series_substitute, SeriesOrder, TSeries};

use crate::gf::GfError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at offset {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("polynomial is not homogeneous: '{first}' has degree {first_degree}, '{second}' has degree {second_degree}")]
    NotHomogeneous { first: String, first_degree: u32, second: String, second_degree: u32 },
    #[error("center has zero chart coordinate")]
    BadChart,
    #[error("series precision exhausted")]
    PrecisionUnderflow,
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// Indices of the two local coordinates for a chart (the chart coordinate is
/// set to 1). Chart 2 uses (X, Y), chart 1 uses (X, Z), chart 0 uses (Y, Z).
pub fn local_indices(chart: usize) -> (usize, usize) {
    match chart {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("chart index out of range: {}", chart),
    }
}

pub(crate) const VAR_NAMES: [&str; 3] = ["X", "Y", "Z"];
