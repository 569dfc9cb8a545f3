//! Formal series engine: bracket symbols, truncated series with exact
//! differential operators, hypergeometric families and their verification.

pub mod bracket;
pub mod families;
pub mod formal;
pub mod offsets;
pub mod univariate;
pub mod verify;
pub mod window;

pub use bracket::{bracket, bracket_vec, pochhammer};
pub use families::{
    a_family, construct_v, negative_product, phi_series, psi_mns_series, algebraic_family, shift_exponent,
    ShiftedExponent, SolutionFamily,
};
pub use formal::{Coefficient, FormalSeries, Series};
pub use offsets::{solve_offsets, OffsetSolver};
pub use univariate::{specialize, verify_polynomial_relation, BivariatePoly, UnivariateSeries};
pub use verify::{verify_k_family, Residual, VerificationReport};
pub use window::Window;
