//! Character and cocharacter lattices of tori with their Galois actions,
//! Frobenius matrices, Euler factors and point counts over F_p.

pub mod galois;
pub mod group;
pub mod torus;

pub use galois::GaloisLattice;
pub use group::FiniteGroup;
pub use torus::{
    brute_force_point_count, build_torus, euler_factor_at_one, frobenius_matrix, point_count_fp, q_rank,
    Family, TorusSpec,
};
