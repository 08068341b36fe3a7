//! Numerical laboratory for conjugate harmonic functions, quasiregular
//! mappings, and Hardy-space integral means on balls.
//!
//! The crate is organized around five layers:
//!
//! - [`quadrature`]: rules on spheres S^{n-1}, balls B^n_r, and radial rays,
//!   all against normalized measures;
//! - [`maps`]: the map families under study (polynomial analytic and
//!   planar-harmonic maps, Poisson-type extensions, pluriharmonic pairs, and
//!   two explicit extremal examples) with value and jet evaluation;
//! - [`calculus`]: pointwise differential quantities (operator and Frobenius
//!   norms, dilatations, Beltrami coefficients, invariant Laplacian and
//!   gradient, Heinz ratios);
//! - [`hardy`]: integral means, Hardy norms with divergence detection,
//!   disk conjugation, Green weights and identities, square functions, and
//!   non-tangential maximal sampling;
//! - [`verify`]: inequality checks that bundle the layers below into
//!   reproducible pass/fail/inconclusive reports.

pub mod calculus;
pub mod error;
pub mod hardy;
pub mod maps;
pub mod quadrature;
pub mod verify;

pub use error::{CoreError, CoreResult};
pub use quadrature::{BallRule, RadialRule, SphereRule};
