//! Monodromy witnesses for branched covers of the projective line.
//!
//! A degree `d` cover of the projective line branched over `n` points with
//! profiles `p_1, ..., p_n` exists exactly when there are permutations
//! `s_1, ..., s_n` in `Sym(d)` of those cycle types, multiplying to the
//! identity and generating a transitive group. This crate
//!
//! * decides and constructs such tuples for profiles `[e_i, 1, ..., 1]`
//!   ([`construct_witness`]), which exist iff the Riemann-Hurwitz genus is a
//!   nonnegative integer;
//! * verifies candidate tuples ([`verify_witness`]);
//! * searches and counts tuples by brute force for arbitrary profiles at small
//!   degree ([`search_exists`], [`count_classes`]).

pub mod augment;
pub mod error;
pub mod oracle;
pub mod perm;
pub mod witness;

pub use augment::{augment_in_tuple, augment_pair, augment_pairs, can_augment, AugmentationContext, PairChoice};
pub use error::{Error, Result};
pub use oracle::{
    count_classes, count_classes_with, cross_check, cross_check_with, genus_from_profile, search_exists,
    search_exists_with, Profile, SearchLimits, SearchOutcome,
};
pub use perm::{common_moved_point, is_transitive, product, Cycle, CycleType, Permutation};
pub use witness::{
    construct_k1, construct_k2, construct_witness, is_admissible, is_extremal, rh_genus, verify_witness, CheckKind,
    RamificationData, ReductionStep, VerificationReport, WitnessTuple,
};
