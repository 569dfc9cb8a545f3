//! Logarithmic quasisolutions and the solutions built from them.

pub mod logpoly;
pub mod mcoeff;
pub mod quasi;

pub use logpoly::{LogPolynomial, SequenceP};
pub use mcoeff::{f_coeffs, f_poly, f_poly_in, falling, m_coeff};
pub use quasi::{
    closed_form_series, combine_solution, combine_solution_with, forced_zero, log_family, phiq_series,
    quasisolution, quasisolution_from_components, quasisolution_with, LogSeries,
};
