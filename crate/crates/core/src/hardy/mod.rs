//! Hardy-space functionals: integral means, norms, conjugation, Green
//! identities, square functions, and non-tangential maximal functions.

pub mod conjugate;
pub mod green;
pub mod maximal;
pub mod means;
pub mod square;

pub use conjugate::{conjugation_constant, p_star, TrigPoly};
pub use green::{
    green_euclidean, green_invariant, green_residual, hardy_stein_residual, GreenKind,
    GreenOptions, GreenReport, ModulusPower, ScalarField, ScalarJet, SquareOf,
};
pub use maximal::{nontangential_max, ConeGrid, NtMax};
pub use means::{
    default_radius_grid, divergence_signature, hardy_norm, integral_mean, radial_means,
    DivergenceSignature, HardyNorm, MeanEntry, MeanValue, RadialMeans,
};
pub use square::{g_tilde, littlewood_paley_g, stoll_g};
