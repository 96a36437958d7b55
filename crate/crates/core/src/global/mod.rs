//! Global assembly: archimedean volumes, L-values, c_Γ and the comparison
//! of the Tamagawa number with Ono's formula.

pub mod archimedean;
pub mod cgamma;
pub mod lvalue;
pub mod quadrature;
pub mod tnc;

pub use archimedean::{archimedean_volume, ArchVolume};
pub use cgamma::{c_gamma, CGamma};
pub use lvalue::{l_value, partial_l_value, LMethod, LValue};
pub use quadrature::{adaptive_simpson, Quadrature};
pub use tnc::{ono_rhs, tau_coh, tau_tam, verify_tnc, GlobalReport, TauCoh, TncOptions};
