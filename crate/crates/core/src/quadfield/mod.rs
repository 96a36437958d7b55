//! Quadratic fields and biquadratic composita: splitting of primes, class
//! groups of imaginary fields, fundamental units of real fields and unit
//! counts in residue rings.

pub mod field;
pub mod forms;
pub mod residue;
pub mod units;

pub use field::{
    is_fundamental_discriminant, splitting_type, BiquadField, FieldSpec, QuadField, SplitKind,
    SplittingData,
};
pub use forms::{class_group, reduced_forms, BinaryForm, ClassGroupData};
pub use residue::residue_ring_norm_count;
pub use units::{fundamental_unit, UnitData};
