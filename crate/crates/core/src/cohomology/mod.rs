//! Integral cohomology of finite groups with coefficients in lattices, via
//! inhomogeneous cochains and Smith normal form.

pub mod complex;
pub mod restriction;
pub mod sha;

pub use complex::{cohomology, cohomology_group, h0_torsion_dual, CochainComplex, CohomologyGroup};
pub use restriction::{joint_kernel_order, kernel_order, restriction, RestrictionMap};
pub use sha::{h1_order, ono_constant, sha_bk_order, sha_order, ShaEvidence};
