//! Counting and bounding constrained binary codes.
//!
//! Words are [`BitWord`]s with coordinate `x_1` stored in bit 0. Codes are
//! [`BinaryLinearCode`]s over GF(2), constraints are [`ConstraintSpec`]s, and the
//! counting and LP routines take both.

pub mod constraints;
pub mod counting;
pub mod error;
pub mod gf2;
pub mod lp;
pub mod spectral;

pub use constraints::{orbit_structure, Constraint, ConstraintSpec, OrbitLabel, OrbitStructure};
pub use counting::{
    constrained_weight_distribution, count_brute, count_in_code, count_odd_in_code, macwilliams,
    rm_subblock_count_plotkin, two_charge_structure, weight_distribution, CountMethod, CountResult,
    OddCount, PlotkinCounts, TwoChargeStructure, WeightDistribution,
};
pub use error::{Error, Result};
pub use gf2::{BinaryLinearCode, BitMatrix, BitWord, CodeFamily};
pub use lp::{BoundReport, LpModel, LpSolution, LpStatus, Program};
pub use num_bigint::BigInt;
