//! Solution evaluators for the catalog equations and an integrator oracle.

mod airy;
mod basis;
mod bessel;
mod hermite;
mod legendre;
mod reduction;
mod rk;

pub use airy::{airy_ai, airy_bi, AIRY_C1, AIRY_C2};
pub use basis::{basis_for, wronskian, SolutionBasis, Superposition};
pub use bessel::{bessel_i, bessel_j, bessel_k, bessel_y, spherical_i, spherical_j, spherical_k, spherical_y};
pub use hermite::{hermite_he, hermite_he_coeffs, hermite_second, HERMITE_SEED_X};
pub use legendre::{assoc_p, assoc_q, legendre_p, legendre_q};
pub use reduction::{second_solution_reduction, ReducedPath};
pub use rk::{rk_integrate, RkPath};
