//! Local densities at finite primes: the good-prime formula, counting
//! solutions mod p^k on integral models, and the comparison of the two.

pub mod density;
pub mod lifting;
pub mod model;

pub use density::{
    bad_prime_density, brute_force_density, cross_validate_density, local_density_good, DensityMethod,
    LocalDensity, TraceEntry,
};
pub use lifting::{count_solutions, Lifter};
pub use model::{AffineModel, MPoly};
