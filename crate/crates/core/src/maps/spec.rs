//! The map families under study, with a uniform evaluation interface.
//!
//! Every map takes points of the open unit ball in R^d (complex variables
//! are realified: coordinate j occupies slots 2j, 2j+1, and likewise for
//! complex components of the value). The families:
//!
//! - `DiskAnalytic`: polynomial f(z) = sum c_k z^k on the disk;
//! - `PlanarHarmonic`: f = h + conj(g) with polynomial h, g, g(0) = 0;
//! - `HarmonicExtension`: Poisson integral of boundary data on S^{n-1};
//! - `InvariantHarmonicExtension`: hyperbolic Poisson integral;
//! - `PluriharmonicPair`: f = h + conj(g) with polynomial maps C^n -> C^n;
//! - `SharpnessExample`: f = w + kappa conj(w), w = (1+z)/(1-z),
//!   kappa = (K-1)/(K+1); the planar map with constant dilatation K whose
//!   first component is 2K/(K+1) times the Poisson kernel at e1;
//! - `ShearCounterexample`: f = h + kappa conj(h) with the shear
//!   h(z) = (z1, z2 + 1/(1-z1)), volume-preserving with unbounded derivative.

use num_complex::Complex64;

use super::boundary::BoundaryData;
use super::kernels::{kernel, KernelKind};
use super::poly::{horner, PolyMap};
use crate::error::{CoreError, CoreResult};
use crate::quadrature::SphereRule;

/// Extensions refuse evaluation beyond this radius; kernel quadrature
/// degrades without bound as |x| -> 1.
pub const EXTENSION_RADIUS_CAP: f64 = 0.999;

/// Anything evaluable on a ball. Implemented by [`MapSpec`], by component
/// projections, and by ad-hoc closures via [`FnMap`].
pub trait BallMap: Sync {
    /// Real dimension of the domain ball.
    fn domain_dim(&self) -> usize;
    /// Number of real components of the value.
    fn codomain_real_dim(&self) -> usize;
    /// Value at an interior point.
    fn eval(&self, x: &[f64]) -> CoreResult<Vec<f64>>;
    /// Largest radius at which the map may be evaluated.
    fn radius_cap(&self) -> f64 {
        1.0
    }
}

/// Poisson-type extension of boundary data, with its quadrature rule and
/// boundary samples cached at two consecutive levels so evaluations can
/// report a convergence estimate.
#[derive(Debug, Clone)]
pub struct Extension {
    kernel: KernelKind,
    dim: usize,
    codim: usize,
    level: u32,
    boundary: BoundaryData,
    fine: SphereRule,
    coarse: SphereRule,
    fine_vals: Vec<f64>,
    coarse_vals: Vec<f64>,
}

impl Extension {
    pub fn new(kernel: KernelKind, boundary: BoundaryData, level: u32) -> CoreResult<Self> {
        if level < 2 {
            return Err(CoreError::invalid(
                "extensions need level >= 2 so a coarser control rule exists",
            ));
        }
        let dim = boundary.dim();
        let codim = boundary.codim();
        let fine = SphereRule::product(dim, level)?;
        let coarse = SphereRule::product(dim, level - 1)?;
        let sample = |rule: &SphereRule| -> CoreResult<Vec<f64>> {
            let mut vals = Vec::with_capacity(rule.len() * codim);
            for (zeta, _) in rule.iter() {
                vals.extend(boundary.eval(zeta)?);
            }
            Ok(vals)
        };
        let fine_vals = sample(&fine)?;
        let coarse_vals = sample(&coarse)?;
        Ok(Self {
            kernel,
            dim,
            codim,
            level,
            boundary,
            fine,
            coarse,
            fine_vals,
            coarse_vals,
        })
    }

    pub fn kernel_kind(&self) -> KernelKind {
        self.kernel
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Same boundary data one level finer.
    pub fn refined(&self) -> CoreResult<Self> {
        Self::new(self.kernel, self.boundary.clone(), self.level + 1)
    }

    fn check_point(&self, x: &[f64]) -> CoreResult<f64> {
        if x.len() != self.dim {
            return Err(CoreError::invalid(format!(
                "point has {} coordinates, extension lives on B^{}",
                x.len(),
                self.dim
            )));
        }
        let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > EXTENSION_RADIUS_CAP {
            return Err(CoreError::OutsideDomain(format!(
                "|x| = {norm} exceeds the extension evaluation cap {EXTENSION_RADIUS_CAP}"
            )));
        }
        Ok(norm)
    }

    fn sum_with(&self, rule: &SphereRule, vals: &[f64], x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.codim];
        for (i, (zeta, w)) in rule.iter().enumerate() {
            let k = w * kernel(self.kernel, x, zeta);
            let base = i * self.codim;
            for (o, v) in out.iter_mut().zip(&vals[base..base + self.codim]) {
                *o += k * v;
            }
        }
        out
    }

    /// Value by kernel quadrature at the finer level.
    pub fn eval(&self, x: &[f64]) -> CoreResult<Vec<f64>> {
        self.check_point(x)?;
        Ok(self.sum_with(&self.fine, &self.fine_vals, x))
    }

    /// Value plus the largest componentwise difference between the two
    /// cached levels, as a convergence estimate.
    pub fn eval_with_err(&self, x: &[f64]) -> CoreResult<(Vec<f64>, f64)> {
        self.check_point(x)?;
        let fine = self.sum_with(&self.fine, &self.fine_vals, x);
        let coarse = self.sum_with(&self.coarse, &self.coarse_vals, x);
        let err = fine
            .iter()
            .zip(&coarse)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        Ok((fine, err))
    }
}

/// A map family instance.
#[derive(Debug, Clone)]
pub enum MapSpec {
    DiskAnalytic {
        coeffs: Vec<Complex64>,
    },
    PlanarHarmonic {
        h: Vec<Complex64>,
        g: Vec<Complex64>,
    },
    HarmonicExtension(Extension),
    InvariantHarmonicExtension(Extension),
    PluriharmonicPair {
        h: PolyMap,
        g: PolyMap,
    },
    SharpnessExample {
        k: f64,
    },
    ShearCounterexample {
        kappa: f64,
    },
}

pub(crate) fn complex_from_pairs(x: &[f64]) -> Vec<Complex64> {
    x.chunks_exact(2)
        .map(|p| Complex64::new(p[0], p[1]))
        .collect()
}

pub(crate) fn pairs_from_complex(z: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * z.len());
    for c in z {
        out.push(c.re);
        out.push(c.im);
    }
    out
}

impl MapSpec {
    pub fn disk_analytic(coeffs: Vec<Complex64>) -> CoreResult<Self> {
        if coeffs.is_empty() {
            return Err(CoreError::invalid("disk polynomial needs coefficients"));
        }
        Ok(MapSpec::DiskAnalytic { coeffs })
    }

    pub fn planar_harmonic(h: Vec<Complex64>, g: Vec<Complex64>) -> CoreResult<Self> {
        if h.is_empty() {
            return Err(CoreError::invalid("planar harmonic map needs h"));
        }
        if g.first().map_or(false, |c| c.norm() > 1e-14) {
            return Err(CoreError::invalid(
                "planar harmonic map requires g(0) = 0",
            ));
        }
        Ok(MapSpec::PlanarHarmonic { h, g })
    }

    pub fn harmonic_extension(boundary: BoundaryData, level: u32) -> CoreResult<Self> {
        Ok(MapSpec::HarmonicExtension(Extension::new(
            KernelKind::Euclidean,
            boundary,
            level,
        )?))
    }

    pub fn invariant_harmonic_extension(boundary: BoundaryData, level: u32) -> CoreResult<Self> {
        Ok(MapSpec::InvariantHarmonicExtension(Extension::new(
            KernelKind::Hyperbolic,
            boundary,
            level,
        )?))
    }

    pub fn pluriharmonic(h: PolyMap, g: PolyMap) -> CoreResult<Self> {
        if h.dim() != g.dim() {
            return Err(CoreError::invalid(
                "pluriharmonic pair needs h and g of equal dimension",
            ));
        }
        let g0: f64 = g.value_at_zero().iter().map(|c| c.norm()).sum();
        if g0 > 1e-14 {
            return Err(CoreError::invalid("pluriharmonic pair requires g(0) = 0"));
        }
        Ok(MapSpec::PluriharmonicPair { h, g })
    }

    pub fn sharpness(k: f64) -> CoreResult<Self> {
        if !(k >= 1.0 && k.is_finite()) {
            return Err(CoreError::invalid(format!(
                "sharpness example needs K >= 1, got {k}"
            )));
        }
        Ok(MapSpec::SharpnessExample { k })
    }

    pub fn shear(kappa: f64) -> CoreResult<Self> {
        if !(0.0..1.0).contains(&kappa) {
            return Err(CoreError::invalid(format!(
                "shear needs kappa in [0, 1), got {kappa}"
            )));
        }
        Ok(MapSpec::ShearCounterexample { kappa })
    }

    /// Complex dimensions (components, variables) for variants carrying a
    /// complex structure.
    pub fn complex_dims(&self) -> Option<(usize, usize)> {
        match self {
            MapSpec::DiskAnalytic { .. }
            | MapSpec::PlanarHarmonic { .. }
            | MapSpec::SharpnessExample { .. } => Some((1, 1)),
            MapSpec::PluriharmonicPair { h, .. } => Some((h.dim(), h.dim())),
            MapSpec::ShearCounterexample { .. } => Some((2, 2)),
            MapSpec::HarmonicExtension(_) | MapSpec::InvariantHarmonicExtension(_) => None,
        }
    }

    /// Whether every component is Euclidean-harmonic by construction.
    pub fn is_harmonic_family(&self) -> bool {
        !matches!(self, MapSpec::InvariantHarmonicExtension(_))
    }

    fn check_point(&self, x: &[f64]) -> CoreResult<()> {
        let d = self.domain_dim();
        if x.len() != d {
            return Err(CoreError::invalid(format!(
                "point has {} coordinates, map lives on B^{d}",
                x.len()
            )));
        }
        let norm_sq: f64 = x.iter().map(|c| c * c).sum();
        if norm_sq >= 1.0 {
            return Err(CoreError::OutsideDomain(format!(
                "|x| = {} is not inside the open unit ball",
                norm_sq.sqrt()
            )));
        }
        Ok(())
    }

    /// Value as complex components, for variants with complex structure.
    pub fn eval_complex(&self, x: &[f64]) -> CoreResult<Vec<Complex64>> {
        self.check_point(x)?;
        match self {
            MapSpec::DiskAnalytic { coeffs } => {
                let z = Complex64::new(x[0], x[1]);
                Ok(vec![horner(coeffs, z)])
            }
            MapSpec::PlanarHarmonic { h, g } => {
                let z = Complex64::new(x[0], x[1]);
                Ok(vec![horner(h, z) + horner(g, z).conj()])
            }
            MapSpec::SharpnessExample { k } => {
                let z = Complex64::new(x[0], x[1]);
                let w = (Complex64::new(1.0, 0.0) + z) / (Complex64::new(1.0, 0.0) - z);
                let kappa = (k - 1.0) / (k + 1.0);
                Ok(vec![w + w.conj() * kappa])
            }
            MapSpec::ShearCounterexample { kappa } => {
                let z = complex_from_pairs(x);
                let h = shear_h(&z);
                Ok(h.iter().map(|c| c + c.conj() * *kappa).collect())
            }
            MapSpec::PluriharmonicPair { h, g } => {
                let z = complex_from_pairs(x);
                let hv = h.eval(&z);
                let gv = g.eval(&z);
                Ok(hv
                    .iter()
                    .zip(&gv)
                    .map(|(a, b)| a + b.conj())
                    .collect())
            }
            MapSpec::HarmonicExtension(_) | MapSpec::InvariantHarmonicExtension(_) => {
                Err(CoreError::invalid(
                    "extensions carry no complex structure",
                ))
            }
        }
    }

    /// Value plus an accuracy estimate; zero for closed-form families,
    /// the two-level kernel-quadrature difference for extensions.
    pub fn eval_with_err(&self, x: &[f64]) -> CoreResult<(Vec<f64>, f64)> {
        match self {
            MapSpec::HarmonicExtension(e) | MapSpec::InvariantHarmonicExtension(e) => {
                e.eval_with_err(x)
            }
            _ => Ok((self.eval(x)?, 0.0)),
        }
    }
}

pub(crate) fn shear_h(z: &[Complex64]) -> [Complex64; 2] {
    let one = Complex64::new(1.0, 0.0);
    [z[0], z[1] + one / (one - z[0])]
}

impl BallMap for MapSpec {
    fn domain_dim(&self) -> usize {
        match self {
            MapSpec::DiskAnalytic { .. }
            | MapSpec::PlanarHarmonic { .. }
            | MapSpec::SharpnessExample { .. } => 2,
            MapSpec::HarmonicExtension(e) | MapSpec::InvariantHarmonicExtension(e) => e.dim(),
            MapSpec::PluriharmonicPair { h, .. } => 2 * h.dim(),
            MapSpec::ShearCounterexample { .. } => 4,
        }
    }

    fn codomain_real_dim(&self) -> usize {
        match self {
            MapSpec::DiskAnalytic { .. }
            | MapSpec::PlanarHarmonic { .. }
            | MapSpec::SharpnessExample { .. } => 2,
            MapSpec::HarmonicExtension(e) | MapSpec::InvariantHarmonicExtension(e) => e.codim(),
            MapSpec::PluriharmonicPair { h, .. } => 2 * h.dim(),
            MapSpec::ShearCounterexample { .. } => 4,
        }
    }

    fn eval(&self, x: &[f64]) -> CoreResult<Vec<f64>> {
        match self {
            MapSpec::HarmonicExtension(e) | MapSpec::InvariantHarmonicExtension(e) => {
                self.check_point(x)?;
                e.eval(x)
            }
            _ => Ok(pairs_from_complex(&self.eval_complex(x)?)),
        }
    }

    fn radius_cap(&self) -> f64 {
        match self {
            MapSpec::HarmonicExtension(_) | MapSpec::InvariantHarmonicExtension(_) => {
                EXTENSION_RADIUS_CAP
            }
            _ => 1.0,
        }
    }
}

/// Ad-hoc map from a closure.
pub struct FnMap<F> {
    pub dim: usize,
    pub codim: usize,
    pub f: F,
}

impl<F> BallMap for FnMap<F>
where
    F: Fn(&[f64]) -> CoreResult<Vec<f64>> + Sync,
{
    fn domain_dim(&self) -> usize {
        self.dim
    }

    fn codomain_real_dim(&self) -> usize {
        self.codim
    }

    fn eval(&self, x: &[f64]) -> CoreResult<Vec<f64>> {
        (self.f)(x)
    }
}

/// View of selected real components of another map.
pub struct Projection<'a, M: BallMap + ?Sized> {
    map: &'a M,
    indices: Vec<usize>,
}

impl<'a, M: BallMap + ?Sized> Projection<'a, M> {
    pub fn new(map: &'a M, indices: Vec<usize>) -> CoreResult<Self> {
        let m = map.codomain_real_dim();
        if indices.is_empty() || indices.iter().any(|i| *i >= m) {
            return Err(CoreError::invalid(format!(
                "projection indices must be nonempty and below {m}"
            )));
        }
        Ok(Self { map, indices })
    }

    /// Single real component k.
    pub fn component(map: &'a M, k: usize) -> CoreResult<Self> {
        Self::new(map, vec![k])
    }

    /// Real parts of a complex-structured map: components 0, 2, 4, ...
    pub fn real_parts(map: &'a M) -> CoreResult<Self> {
        let m = map.codomain_real_dim();
        Self::new(map, (0..m).step_by(2).collect())
    }

    /// Imaginary parts: components 1, 3, 5, ...
    pub fn imag_parts(map: &'a M) -> CoreResult<Self> {
        let m = map.codomain_real_dim();
        Self::new(map, (1..m).step_by(2).collect())
    }
}

impl<M: BallMap + ?Sized> BallMap for Projection<'_, M> {
    fn domain_dim(&self) -> usize {
        self.map.domain_dim()
    }

    fn codomain_real_dim(&self) -> usize {
        self.indices.len()
    }

    fn eval(&self, x: &[f64]) -> CoreResult<Vec<f64>> {
        let full = self.map.eval(x)?;
        Ok(self.indices.iter().map(|i| full[*i]).collect())
    }

    fn radius_cap(&self) -> f64 {
        self.map.radius_cap()
    }
}
