//! Signed basis loops of the Cayley-Dickson algebras and their structure:
//! subloop enumeration, normality, isomorphy classes, loop and algebra
//! identities, zero divisors, and the subloop lattice.
//!
//! The loop of order `2^(n+1)` generated by the `2^n` basis elements of the
//! n-th Cayley-Dickson algebra is built once as a Cayley table
//! ([`build_cd_loop`]); everything else is exhaustive, exact computation on
//! top of that table. Element sets are bit masks, subloops are signed lifts
//! of XOR-closed index sets, and all arithmetic is integer arithmetic, so
//! every reported count and certificate is a strict equality.

mod algebra;
mod construct;
mod element;
mod error;
mod identities;
mod iso;
mod lattice;
mod subloops;
mod subset;
mod table;

pub mod report;

pub use algebra::{
    alg_multiply, check_algebra_identity, conjugate, find_zero_divisor, norm_sq, subalgebra_basis,
    AlgebraElement, AlgebraIdentity, AlgebraIdentityCheck, AlgebraWitness, ZeroDivisorPair,
    ZeroDivisorRecord,
};
pub use construct::{basis_sign, build_cd_loop, multiply_basis, MAX_LEVEL};
pub use element::SignedIndex;
pub use error::LoopError;
pub use identities::{
    check_identity, identity_report, witness_violates, IdentityCheck, IdentityName,
    IdentityReport, PAP_EXPONENT_BOUND,
};
pub use iso::{
    are_isomorphic, classify, composition_profile, ClassLabel, CompositionProfile, IsoClass,
};
pub use lattice::{
    diamond_fixture, pentagon_fixture, MeetJoinTable, ModularityWitness, SubloopLattice,
};
pub use subloops::{
    census, enumerate_subloops, enumerate_subloops_by_closure, gaussian_binomial, is_normal,
    maximal_subloops, subloop_records, xor_span, Subloop, SubloopRecord,
};
pub use subset::{closure, is_associative_subset, ElementSet, MAX_SET_ORDER};
pub use table::{
    element_order, has_identity, inverse_vector, is_associative, is_latin_square,
    two_sided_inverse, CayleyTable, LoopTable, SubTable,
};
