//! Exact computations in the infinite abelian groups `Z x Z_m`, `Q` and
//! `Q x Z_2`: automorphisms of `Z x Z_m` as integer matrices, Smith normal
//! form, and guarded formula evaluation.

mod endo;
mod guarded;
mod rational;
mod snf;

pub use endo::{enumerate_aut, has_trivial_stabilizer, stabilizer_in_aut, EndoMatrix, FgAbelian, FgElement, FgError};
pub use guarded::{
    check_defines_guarded, evaluate_guarded, guard_solutions, Ambient, AmbientElement, GuardError, GuardSolutions,
    GuardedEvaluator,
};
pub use rational::{RationalElement, RationalError};
pub use snf::{snf, solve_congruences, solve_integer, verify as verify_snf, IntMatrix, IntegerSolutions, MatrixError, Smith};
