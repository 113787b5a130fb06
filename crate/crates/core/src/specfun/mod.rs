//! Special functions: Gamma, Hermite, Laguerre and Bessel.

pub mod bessel;
pub mod gamma;
pub mod hermite;
pub mod laguerre;

pub use bessel::{bessel_first_zero, bessel_j, bessel_stationary_points, BesselOrder};
pub use gamma::{gamma, gamma_scaled, ln_gamma};
pub use hermite::{hermite_asymptotic, hermite_weighted, psi, AsymptoticOrder, HermiteRecurrence};
pub use laguerre::{laguerre, LaguerreRecurrence};
