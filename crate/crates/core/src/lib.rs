//! Exact-arithmetic toolkit for XXX Bethe ansatz solutions attached to a
//! simple Lie algebra: discrete-Wronskian fertility tests, reproduction of
//! solution populations, gauge equivalence of symmetric parameter sets, and
//! type-A matrix realizations of discrete Miura opers with explicitly
//! verified rational fundamental solutions.
//!
//! All scalars are exact rationals, so every verification in this crate is
//! an exact polynomial identity; there are no tolerances anywhere.

pub mod bethe;
pub mod doper;
pub mod error;
pub mod gauge;
pub mod liealg;
pub mod population;
pub mod problemfile;
pub mod ratpoly;
pub mod rf;

pub use bethe::{BetheProblem, ParamKind, ParameterSet, Tuple};
pub use error::{Error, Result};
pub use liealg::{CartanData, Family, Weight, WeylWord};
pub use ratpoly::{Rat, RatPoly};
pub use rf::{MatrixRF, RationalFunction};
