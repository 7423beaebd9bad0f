//! Independent ground-truth engines for the closed form.
//!
//! Two oracles compute the same outage probability through entirely
//! different machinery: [`monte_carlo`] samples the physical Gamma
//! factorization, and [`contour`] numerically inverts the MGF product along
//! a vertical contour. Agreement of all three routes is the core
//! verification story of this crate.

pub mod contour;
pub mod monte_carlo;

pub use contour::{contour_cdf, ContourConfig, ContourError};
pub use monte_carlo::{mc_outage, sample_squared_eta_mu, McConfig, McEstimate, SoiModel};
