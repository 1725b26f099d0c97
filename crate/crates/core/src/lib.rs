//! Slopes, t-stabilities, Harder–Narasimhan filtrations and t-structures on
//! the derived categories of the projective line and of an elliptic curve.
//!
//! Objects are split normal forms: finite sums of shifted indecomposables.
//! Every computation is exact.

pub mod elliptic;
pub mod error;
pub mod families;
pub mod object;
pub mod p1;
pub mod parse;
pub mod sample;
pub mod slope;
pub mod stability;
pub mod tstructure;

pub use error::{Error, Result};
pub use families::{
    coarsen, compare_exceptional, exceptional_rewrite, finest_check, is_finer, standard_slope, ExceptionalStability,
    FinerVerdict, FinerWitness, FinestReport, Partition, Rewrite, StabilityFamily, StandardStability,
};
pub use object::{hom0, hom_dim, hom_nonpositive_vanishes, hom_profile, HomProfile, Indecomposable, Object, Point, PointOrder, Shifted, Window};
pub use p1::{euler_form, DerivedObject, P1Indec, ShiftedIndec};
pub use slope::{ExtendedRational, K0Class};
pub use stability::{
    hn, is_semistable, shuffle_merge, verify_hn, validate_stability, FamilyDescriptor, Filtration, HnCheckKind, HnReport, Level,
    MergeMode, POrder, Quotient, SlopeId, Stability,
};
