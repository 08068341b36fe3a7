//! Map families, boundary data, kernels, and jets.

pub mod boundary;
pub mod jet;
pub mod kernels;
pub mod poly;
pub mod spec;

pub use boundary::{BoundaryData, BoundaryGrid};
pub use jet::{fd_jet, ComplexJet, JetData, JetScheme, SchemeRequest};
pub use kernels::{kernel, poisson, poisson_hyperbolic, KernelKind};
pub use poly::{CPoly, PolyMap, Term};
pub use spec::{BallMap, Extension, FnMap, MapSpec, Projection, EXTENSION_RADIUS_CAP};
