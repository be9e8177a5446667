//! Higman-Thompson groups `G_{n,r}` as automorphism groups of the free
//! Omega-algebras `V_{n,r}`.
//!
//! Elements of `V_{n,r}` are stored as standard forms ([`Word`]); group
//! elements are stored as minimal symbols ([`Automorphism`]). On top of that
//! the crate decides the word problem, computes quasi-normal forms and orbit
//! data, and solves the conjugacy and power-conjugacy problems with explicit
//! conjugators.

pub mod automorphism;
pub mod budget;
pub mod conjugacy;
pub mod dot;
pub mod error;
pub mod format;
pub mod orbits;
pub mod power_conjugacy;
pub mod random;
pub mod word_algebra;

pub use automorphism::{minimal_expansion_for, Automorphism, Symbol};
pub use budget::Budget;
pub use conjugacy::{
    class_shift, conjugate, conjugate_periodic, conjugate_regular_infinite, cycle_type, decompose,
    equivalence_classes, rebase_to_standard_rank, ConjugacyCertificate, CycleType, Decomposition,
    Gate, Part,
};
pub use dot::emit_dot;
pub use error::{Error, Result};
pub use power_conjugacy::{
    bounds, multiplier_set, power_conjugate, power_conjugate_regular_infinite,
    power_multiplier_set, primitive_root, sweep, MultiplierSet, PowerPair, PowerPairSet,
};
pub use orbits::{
    order_of, quasi_normal_basis, semi_normal_basis, Characteristic, ComponentType, LeafType,
    OrbitAnswer, Order, Pond, Qnf,
};
pub use word_algebra::{
    equal_words, is_basis, is_initial_segment, minimal_common_expansion, parse_row, parse_word,
    reduce, validate_row, ABasis, Location, OmegaRow, Signature, SimpleWord, Token, Word,
};
