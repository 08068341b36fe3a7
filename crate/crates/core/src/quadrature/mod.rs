//! Quadrature on spheres, balls, and radial rays.
//!
//! All rules integrate against normalized measures: the surface measure on
//! S^{n-1} has total mass 1, and the ball measure dV_N is Lebesgue volume
//! divided by Vol(B^n), so B^n_r has mass r^n. A computed value is trusted
//! when two consecutive refinement levels agree within the caller's
//! tolerance; the helpers here expose `coarsen`/`refine` so calling code can
//! implement that acceptance test.

pub mod ball;
pub mod gauss;
pub mod radial;
pub mod sphere;

pub use ball::{BallRule, RadialOptions};
pub use gauss::{gauss_gegenbauer, gauss_legendre, gauss_legendre_on};
pub use radial::RadialRule;
pub use sphere::{RuleMethod, SphereRule, MAX_LEVEL, MAX_PRODUCT_DIM, MAX_PRODUCT_NODES};
