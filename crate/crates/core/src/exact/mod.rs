//! Arbitrary-precision arithmetic and the truncated polynomial ring.

pub mod comb;
pub mod limits;
pub mod poly;
pub mod rational;

pub use comb::{binomial, factorial, gamma, multinomial, BinomialTable};
pub use limits::Limits;
pub use poly::{
    elementary_symmetric, extract_coefficient, poly_mul, series_inverse_square,
    series_inverse_square_with, Exponent, TruncatedPoly,
};
pub use rational::{rational_derivative_eval, ExactRational};
