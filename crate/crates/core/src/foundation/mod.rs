//! Exact arithmetic shared by every other module.

pub mod gf2;
pub mod rational;

pub use gf2::{
    extend_from, gf2_rank, gf2_solve_membership, span_rank, subspace_intersection_dim,
    EchelonBasis, Gf2Matrix, Gf2Vector,
};
pub use rational::{q, Rational};
