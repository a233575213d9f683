//! Verified numerics: outward-rounded intervals, complex rectangles, the
//! Lobachevsky function and ideal-tetrahedron volumes.

mod complex;
pub(crate) mod interval;
mod lobachevsky;
mod volume;

use thiserror::Error;

pub use complex::RigorousComplex;
pub use interval::Interval;
pub use lobachevsky::{lobachevsky, lobachevsky_max};
pub use volume::{dihedral_angles, ideal_tetra_volume, triangulation_volume, ShapeSolution};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RigorError {
    #[error("invalid interval bounds [{lo}, {hi}]")]
    InvalidBounds { lo: f64, hi: f64 },
    #[error("domain error in {op}: operand {operand}")]
    Domain { op: &'static str, operand: Interval },
    #[error("degenerate tetrahedron{}: shape {shape}", tetrahedron.map(|i| format!(" {i}")).unwrap_or_default())]
    Degenerate {
        tetrahedron: Option<usize>,
        shape: RigorousComplex,
    },
    #[error("cannot certify {what}: enclosure {enclosure}")]
    Uncertifiable { what: String, enclosure: Interval },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
