//! Exact polynomial algebra over the rationals.

pub mod gcd;
pub mod groebner;
pub mod linear;
pub mod monomial;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod text;
pub mod vars;

use thiserror::Error;

pub use groebner::{
    buchberger, divide, ideal_contains, interreduce, is_groebner_basis, poly_reduce,
    reduced_groebner_basis, s_polynomial, same_ideal,
};
pub use gcd::poly_gcd;
pub use linear::{linear_solve, LinearSolution, SolveError};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::MultiPoly;
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use text::{parse_equations, parse_poly};
pub use vars::{Ring, VarTable};

/// Errors raised by polynomial construction, parsing and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomials belong to different rings ({left}) and ({right})")]
    RingMismatch { left: String, right: String },
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<AlgebraError>,
    },
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("division by a polynomial that does not divide exactly")]
    InexactDivision,
}

impl AlgebraError {
    /// Attach a 1-based line number, as used when parsing equation files.
    pub fn at_line(self, line: usize) -> AlgebraError {
        AlgebraError::AtLine {
            line,
            source: Box::new(self),
        }
    }
}
