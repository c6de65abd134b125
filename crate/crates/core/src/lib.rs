//! Eigenvalue localization for quaternionic matrices and zero bounds for
//! one-sided quaternionic polynomials.

mod error;
pub mod qmat;
pub mod qpoly;
pub mod quat;
pub mod regions;
pub mod spectra;

pub use error::{Error, Result};
pub use qmat::{ComplexMatrix, QMatrix, RowStats, C64};
pub use qpoly::{BoundMethod, BoundReport, QPolynomial, RootSet, Side, SphericalClass};
pub use quat::Quaternion;
pub use regions::{Region, RegionKind, RegionSpec};
pub use spectra::SpectrumReport;
