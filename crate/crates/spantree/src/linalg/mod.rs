//! Exact rational scalars and dense matrix kernels.

mod matrix;
mod rational;

pub use matrix::RationalMatrix;
pub use rational::Rational;
