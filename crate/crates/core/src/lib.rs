//! Rational tangle calculus, Montesinos knot families and their Conway
//! mutants, dihedral classification of mutant classes, and log-domain
//! certification of the factorial growth of mutant counts against
//! hyperbolic volume bounds.

pub mod census;
pub mod error;
pub mod fraction;
pub mod growth;
pub mod montesinos;
pub mod mutation;
pub mod real;
pub mod tangle;
pub mod volume;

pub use error::{Error, Result};
pub use fraction::Fraction;
pub use growth::{growth_certificate, GrowthCertificate, GrowthContext};
pub use montesinos::{
    build_family, build_generalized, component_count, is_alternating_vertical,
    is_hyperbolic_witness, normalize, FamilyParams, MontesinosLink,
};
pub use mutation::{
    canonical_key, distinct_count_formula, enumerate_mutant_classes, mutate,
    mutation_is_unlinked, sphere_is_essential, CanonicalKey, MutationIndex,
    DEFAULT_ENUMERATE_CAP,
};
pub use real::{Precision, Real};
pub use tangle::{
    add_tangles, are_equivalent, endpoint_pairing, fraction_of, EndpointPairing, TwistWord,
};
pub use volume::{log_factorial, stirling_lower, v_oct, volume_bounds, VolumeBound};
