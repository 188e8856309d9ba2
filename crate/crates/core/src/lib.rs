//! Invariants of simple bidouble covers of P¹×P¹, Catanese tuple search and
//! numerical certificates for Zariski tuples of m-canonical discriminant
//! curves.
//!
//! * [`cover`] validates types and computes (u,v,w,z), K², χ and friends.
//! * [`topology`] decides homeomorphism via (K², χ) and applies the
//!   divisibility-index obstruction.
//! * [`discriminant`] gives the degree, genus, cusps and nodes of the branch
//!   curve of a generic m-canonical projection, and builds certificates.
//! * [`search`] enumerates admissible types in a box and extracts tuples.
//! * [`catalog`] and [`cli`] handle persistence and the command line.

pub mod catalog;
pub mod cli;
pub mod cover;
pub mod decimal;
pub mod discriminant;
pub mod report;
pub mod search;
pub mod topology;

pub use cover::{
    canonicalize, derive_params, divisibility_index, surface_invariants, validate_type, CoverError,
    CoverType, DerivedParams, SurfaceInvariants,
};
pub use discriminant::{
    cusp_count_general, discriminant_profile, node_count, zariski_certificate, DiscriminantError,
    DiscriminantProfile, ZariskiCertificate,
};
pub use search::{
    enumerate_admissible, extract_k_tuples, group_by_homeo_class, search, CataneseTuple,
    HomeoClassBucket, SearchConfig,
};
pub use topology::{
    are_homeomorphic, diffeo_obstruction, homeo_class_key, is_catanese_tuple, DiffeoVerdict,
    HomeoClassKey, TupleVerdict,
};
