//! Exact computations for the contraction `q = b ⋉ (u⁻)ᵃ` of a classical
//! simple Lie algebra `g`: its bracket, adjoint and coadjoint actions, the
//! polynomial invariants of both representations, and checks of their
//! structural properties.

pub mod contraction;
pub mod invariants;
pub mod liecore;
pub mod linalg;
pub mod polyring;
pub mod rational;
pub mod sampling;
pub mod verify;
