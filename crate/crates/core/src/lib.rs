//! Definability and logical cyclicity in groups.
//!
//! The crate works with finite groups given by validated Cayley tables
//! ([`group`]), enumerates their automorphisms ([`aut`]), decides which
//! elements are first-order definable from a parameter set
//! ([`definability`]), model-checks formulas of the group language
//! ([`folang`]), and carries out the exact computations available for the
//! infinite groups `Z x Z_m`, `Q` and `Q x Z_2` ([`fgabelian`]).

pub mod aut;
pub mod definability;
pub mod fgabelian;
pub mod folang;
pub mod group;
pub mod limits;

pub use aut::{
    aut_order, automorphism_group, AbelianPShape, AutError, AutGroup, Automorphism,
};
pub use definability::{
    definable_closure, is_logically_cyclic, DefinabilityResult, LogicalCyclicityVerdict,
};
pub use fgabelian::{Ambient, AmbientElement, EndoMatrix, FgAbelian, FgElement, IntMatrix, RationalElement};
pub use folang::{parse_formula, Dialect, Evaluator, Formula, Term};
pub use group::{FiniteGroup, GroupError, Subset};
pub use limits::Limits;
