//! Exact degrees, ED degrees and dual degrees of Segre and Segre–Veronese
//! products, with the asymptotic estimates that go with them.

pub mod asympt;
pub mod eddeg;
pub mod error;
pub mod exact;
pub mod format;
pub mod hyperdet;
pub mod identities;
pub mod matrix;
pub mod polar;

pub use error::{Error, Result};
pub use exact::{
    binomial, elementary_symmetric, extract_coefficient, factorial, multinomial, poly_mul,
    rational_derivative_eval, series_inverse_square, ExactRational, Exponent, Limits,
    TruncatedPoly,
};
pub use format::Format;

pub use asympt::{AsymptoticFormula, AsymptoticReport};
pub use eddeg::{EdQuery, Metric};
pub use matrix::RationalMatrix;
pub use polar::{ChernData, ChernPolynomial, PolarProfile};
