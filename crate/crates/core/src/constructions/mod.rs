//! Builders and verifiers for the explicit objects: the type-two h-vector
//! `h^(e)` and its specimen modules, the family `F_e`, lex-segment and
//! non-unimodal monomial systems, and the Hilbert-series identity of the
//! points construction in `P^3`.

mod family;
mod lexseg;
mod points;
mod specimen;

pub use family::{
    family_member_from_forms, family_membership, sample_family_member, FamilyMembershipWitness, FAMILY_ATTEMPT_CAP,
};
pub use lexseg::{extend_codimension, lex_segment_module, nonunimodal_module};
pub use points::{
    betti_degree_table, points_parameters, verify_points_identity, verify_points_identity_range, BettiDegreeTable,
    PointsIdentity, PointsParameters,
};
pub use specimen::{family_dimension, nearest_integer, specimen_module, target_h_vector};
