//! Exact derivation and verification of explicit Runge-Kutta order
//! conditions.
//!
//! The [`series`] module expands the stages of a symbolic method as
//! truncated Taylor series, [`conditions`] reads off the polynomial order
//! conditions (and builds the rooted-tree conditions for comparison),
//! [`solver`] solves them for coefficient families, and [`tableau`]
//! checks concrete methods. [`harness`] measures convergence orders
//! numerically.

pub mod algebra;
pub mod conditions;
pub mod harness;
pub mod series;
pub mod solver;
pub mod tableau;
