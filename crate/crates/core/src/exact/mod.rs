//! Exact arithmetic substrate: integer matrices and their normal forms,
//! rationals, polynomials mod p, the Kronecker symbol and small primes.

pub mod abelian;
pub mod kronecker;
pub mod matrix;
pub mod poly;
pub mod primes;
pub mod rational;

pub use abelian::AbelianGroupInvariants;
pub use kronecker::kronecker_symbol;
pub use matrix::{hermite_normal_form, smith_normal_form, snf_diagonal, HnfResult, IntMatrix, SnfResult};
pub use poly::{factor_poly_mod_p, FpPoly, ZPoly};
pub use primes::{is_prime, primes_up_to};
pub use rational::{fmt_rat, rat, rat_int, BigRat};
