//! Exact Padé approximation and algebraic continued fractions.
//!
//! The kernel (`rational`, `poly`, `ratfunc`, `series`) is exact; floats only
//! appear in diagnostics, through [`float::FloatContext`].

pub mod cli;
pub mod contfrac;
pub mod doc;
pub mod error;
pub mod float;
pub mod montessus;
pub mod pade;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use float::{ComplexF, FloatContext, Precision};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use series::{PowerSeries, Variable};
