//! Super-Unique-Tarski: Tarski fixed-point instances in which every slice
//! has a unique fixed point, the reduction to one-permutation discrete
//! contraction (OPDC), and the tools to check it exhaustively.
//!
//! * [`lattice`] has the grid `{1..n}^k`, its order, slices and restriction.
//! * [`tarski`] holds functions, Up/Down classification and the UT/UTV1/UTV2
//!   verifiers.
//! * [`opdc`] holds direction oracles and the O1/OV1/OV2/OV3 verifiers.
//! * [`reduction`] builds the OPDC instance from a function and maps every
//!   OPDC solution back.
//! * [`solvers`] and [`generators`] are the brute-force oracles and instance
//!   families used by tests and the fuzz pipeline.
//! * [`io`] and [`cli`] are the file formats and the `sut` command line.

pub mod cli;
pub mod error;
pub mod fuzz;
pub mod generators;
pub mod io;
pub mod lattice;
pub mod opdc;
pub mod reduction;
pub mod solvers;
pub mod tarski;
mod verdict;

pub use error::{Error, Result};
pub use lattice::{restrict, slice_points, LatticeSpec, Point, RestrictedFunction, Slice, SliceEntry};
pub use opdc::{
    check_o1, check_ov1, check_ov2, check_ov3, verify_opdc_solution, Direction, DirectionOracle, OpdcSolution,
    SliceRule,
};
pub use reduction::{map_back, map_back_with, ov2_extract, reduce, ReducedInstance};
pub use tarski::{
    check_fixed_point, check_monotonicity_pair, check_slice_uniqueness_violation, classify, verify_sut_solution,
    LatticeMap, PointClassification, SutSolution, TarskiFunction,
};
pub use verdict::{Reason, Verdict};
