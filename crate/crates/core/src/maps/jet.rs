//! First- and second-order data of a map at a point.
//!
//! A jet carries the value, the real Jacobian (rows indexed by real
//! components, columns by real coordinates), and the Euclidean Laplacian of
//! each real component. Families defined by formulas get exact jets; the
//! Poisson-type extensions are differentiated by central differences with
//! one Richardson refinement. On families with complex structure the jet
//! also carries the Wirtinger derivatives d/dz and d/dzbar.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::poly::{derivative, horner};
use super::spec::{complex_from_pairs, pairs_from_complex, BallMap, MapSpec};
use crate::error::{CoreError, CoreResult};

/// Base finite-difference step; halved once for Richardson refinement.
pub const FD_BASE_STEP: f64 = 1e-5;
/// Below this step the difference quotients drown in roundoff.
const FD_MIN_STEP: f64 = 1e-8;

/// How the jet was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetScheme {
    Analytic,
    FiniteDifference,
}

/// Which scheme the caller wants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SchemeRequest {
    /// Exact formulas when the family has them, finite differences otherwise.
    #[default]
    Auto,
    /// Exact formulas only; fails on families without them.
    Analytic,
    /// Finite differences even when formulas exist (cross-validation).
    FiniteDifference,
}

/// Wirtinger block of a jet: value and the matrices of d f_k / d z_j and
/// d f_k / d zbar_j.
#[derive(Debug, Clone)]
pub struct ComplexJet {
    pub value: Vec<Complex64>,
    pub dz: DMatrix<Complex64>,
    pub dzbar: DMatrix<Complex64>,
}

/// Value, Jacobian, and componentwise Laplacians at a point.
#[derive(Debug, Clone)]
pub struct JetData {
    pub point: Vec<f64>,
    pub value: Vec<f64>,
    pub jacobian: DMatrix<f64>,
    pub laplacians: Vec<f64>,
    pub complex: Option<ComplexJet>,
    pub scheme: JetScheme,
}

impl JetData {
    /// Row k of the Jacobian: the gradient of real component k.
    pub fn gradient(&self, k: usize) -> Vec<f64> {
        self.jacobian.row(k).iter().copied().collect()
    }

    /// Squared Frobenius norm of the Jacobian.
    pub fn frobenius_sq(&self) -> f64 {
        self.jacobian.iter().map(|a| a * a).sum()
    }
}

/// Real Jacobian of a map with Wirtinger derivatives `dz`, `dzbar`:
/// writing f_k = u + iv and z_j = x + iy, the 2x2 block for (k, j) is
/// [[u_x, u_y], [v_x, v_y]] with u_x = Re(a + b), u_y = -Im(a - b),
/// v_x = Im(a + b), v_y = Re(a - b) where a, b are the (k, j) entries.
pub fn realify_jacobian(dz: &DMatrix<Complex64>, dzbar: &DMatrix<Complex64>) -> DMatrix<f64> {
    let (m, n) = dz.shape();
    let mut out = DMatrix::zeros(2 * m, 2 * n);
    for k in 0..m {
        for j in 0..n {
            let a = dz[(k, j)];
            let b = dzbar[(k, j)];
            out[(2 * k, 2 * j)] = (a + b).re;
            out[(2 * k, 2 * j + 1)] = -(a - b).im;
            out[(2 * k + 1, 2 * j)] = (a + b).im;
            out[(2 * k + 1, 2 * j + 1)] = (a - b).re;
        }
    }
    out
}

/// Wirtinger derivatives recovered from a real Jacobian of even shape.
pub fn wirtinger_from_real(jac: &DMatrix<f64>) -> CoreResult<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    let (mr, nr) = jac.shape();
    if mr % 2 != 0 || nr % 2 != 0 {
        return Err(CoreError::invalid(
            "Wirtinger recovery needs an even-by-even real Jacobian",
        ));
    }
    let (m, n) = (mr / 2, nr / 2);
    let mut dz = DMatrix::zeros(m, n);
    let mut dzbar = DMatrix::zeros(m, n);
    for k in 0..m {
        for j in 0..n {
            let ux = jac[(2 * k, 2 * j)];
            let uy = jac[(2 * k, 2 * j + 1)];
            let vx = jac[(2 * k + 1, 2 * j)];
            let vy = jac[(2 * k + 1, 2 * j + 1)];
            dz[(k, j)] = Complex64::new(ux + vy, vx - uy) * 0.5;
            dzbar[(k, j)] = Complex64::new(ux - vy, vx + uy) * 0.5;
        }
    }
    Ok((dz, dzbar))
}

/// Wirtinger pair (dz, dzbar) of a closed-form family at z.
fn wirtinger_pair(map: &MapSpec, z: &[Complex64]) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match map {
        MapSpec::DiskAnalytic { coeffs } => {
            let a = horner(&derivative(coeffs), z[0]);
            (
                DMatrix::from_element(1, 1, a),
                DMatrix::from_element(1, 1, zero),
            )
        }
        MapSpec::PlanarHarmonic { h, g } => {
            let a = horner(&derivative(h), z[0]);
            let b = horner(&derivative(g), z[0]).conj();
            (
                DMatrix::from_element(1, 1, a),
                DMatrix::from_element(1, 1, b),
            )
        }
        MapSpec::SharpnessExample { k } => {
            let d = one - z[0];
            let wp = Complex64::new(2.0, 0.0) / (d * d);
            let kappa = (k - 1.0) / (k + 1.0);
            (
                DMatrix::from_element(1, 1, wp),
                DMatrix::from_element(1, 1, wp.conj() * kappa),
            )
        }
        MapSpec::ShearCounterexample { kappa } => {
            let d = one - z[0];
            let q = one / (d * d);
            let a = DMatrix::from_row_slice(2, 2, &[one, zero, q, one]);
            let b = a.map(|c| c.conj() * *kappa);
            (a, b)
        }
        MapSpec::PluriharmonicPair { h, g } => {
            let n = h.dim();
            let a = DMatrix::from_row_slice(n, n, &h.jacobian(z));
            let bg = g.jacobian(z);
            let b = DMatrix::from_fn(n, n, |k, j| bg[k * n + j].conj());
            (a, b)
        }
        MapSpec::HarmonicExtension(_) | MapSpec::InvariantHarmonicExtension(_) => {
            unreachable!("extensions have no closed-form jet")
        }
    }
}

fn analytic_jet(map: &MapSpec, x: &[f64]) -> CoreResult<JetData> {
    let z = complex_from_pairs(x);
    let value_c = map.eval_complex(x)?;
    let (dz, dzbar) = wirtinger_pair(map, &z);
    let jacobian = realify_jacobian(&dz, &dzbar);
    // Every closed-form family is componentwise harmonic: holomorphic plus
    // conjugate-holomorphic in each variable separately.
    let laplacians = vec![0.0; jacobian.nrows()];
    Ok(JetData {
        point: x.to_vec(),
        value: pairs_from_complex(&value_c),
        jacobian,
        laplacians,
        complex: Some(ComplexJet {
            value: value_c,
            dz,
            dzbar,
        }),
        scheme: JetScheme::Analytic,
    })
}

/// Central-difference jet with one Richardson refinement, for any map.
///
/// Uses 4d + 1 evaluations: the center plus x +- h e_d and x +- h/2 e_d per
/// axis. First derivatives combine as (4 D_{h/2} - D_h) / 3 and likewise for
/// the second differences, cancelling the leading h^2 truncation term.
pub fn fd_jet<M: BallMap + ?Sized>(map: &M, x: &[f64]) -> CoreResult<JetData> {
    let d = map.domain_dim();
    if x.len() != d {
        return Err(CoreError::invalid(format!(
            "point has {} coordinates, map lives on B^{d}",
            x.len()
        )));
    }
    let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    let room = map.radius_cap() - norm;
    let h = FD_BASE_STEP.min(room / 2.0);
    if !(h >= FD_MIN_STEP) {
        return Err(CoreError::PrecisionLoss(format!(
            "only {room:.3e} of radius left at |x| = {norm:.6}; \
             finite differences need a step of at least {FD_MIN_STEP:.0e}"
        )));
    }

    let center = map.eval(x)?;
    let m = center.len();
    let mut jacobian = DMatrix::zeros(m, d);
    let mut laplacians = vec![0.0; m];
    let mut probe = x.to_vec();
    for axis in 0..d {
        let x0 = x[axis];
        let mut at = |t: f64| -> CoreResult<Vec<f64>> {
            probe[axis] = x0 + t;
            let v = map.eval(&probe)?;
            Ok(v)
        };
        let p1 = at(h)?;
        let m1 = at(-h)?;
        let p2 = at(h / 2.0)?;
        let m2 = at(-h / 2.0)?;
        probe[axis] = x0;
        for k in 0..m {
            let d_h = (p1[k] - m1[k]) / (2.0 * h);
            let d_h2 = (p2[k] - m2[k]) / h;
            jacobian[(k, axis)] = (4.0 * d_h2 - d_h) / 3.0;
            let s_h = (p1[k] - 2.0 * center[k] + m1[k]) / (h * h);
            let s_h2 = (p2[k] - 2.0 * center[k] + m2[k]) / (h * h / 4.0);
            laplacians[k] += (4.0 * s_h2 - s_h) / 3.0;
        }
    }

    Ok(JetData {
        point: x.to_vec(),
        value: center,
        jacobian,
        laplacians,
        complex: None,
        scheme: JetScheme::FiniteDifference,
    })
}

impl MapSpec {
    /// Jet at x under the requested scheme.
    pub fn jet(&self, x: &[f64], scheme: SchemeRequest) -> CoreResult<JetData> {
        let has_formulas = self.complex_dims().is_some();
        match scheme {
            SchemeRequest::Analytic if !has_formulas => Err(CoreError::UnsupportedScheme(
                "extensions are defined by quadrature and have no exact jet; \
                 request Auto or FiniteDifference"
                    .into(),
            )),
            SchemeRequest::Analytic => analytic_jet(self, x),
            SchemeRequest::Auto if has_formulas => analytic_jet(self, x),
            SchemeRequest::Auto | SchemeRequest::FiniteDifference => {
                let mut jet = fd_jet(self, x)?;
                if has_formulas {
                    let (dz, dzbar) = wirtinger_from_real(&jet.jacobian)?;
                    jet.complex = Some(ComplexJet {
                        value: complex_from_pairs(&jet.value),
                        dz,
                        dzbar,
                    });
                }
                Ok(jet)
            }
        }
    }
}

/// Exact shear Jacobian entry d h_2 / d z_1 at z, for tests and oracles.
pub fn shear_off_diagonal(z1: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    one / ((one - z1) * (one - z1))
}
