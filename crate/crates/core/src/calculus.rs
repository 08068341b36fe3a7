//! Pointwise differential quantities: operator norms, dilatations,
//! Beltrami coefficients, hyperbolic gradients and Laplacians.
//!
//! Conventions. |Df| is the operator norm (largest singular value). The
//! distortion of a map between balls of equal real dimension d is
//! K(x) = |Df(x)|^d / det Df(x), flagged infinite when the determinant is
//! nonpositive or negligible against |Df|^d. On the plane the distortion
//! of h + conj(g) is (|h'| + |g'|) / (|h'| - |g'|), and kappa = |g'/h'|
//! relates to K by kappa = (K - 1) / (K + 1).
//!
//! Hyperbolic operators on the unit ball: the invariant gradient is
//! (1 - |x|^2) grad f, and the invariant Laplacian is
//! (1 - |x|^2)^2 lap f + 2 (d - 2) (1 - |x|^2) <grad f, x>.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{CoreError, CoreResult};
use crate::maps::jet::{realify_jacobian, JetData};

/// Determinants below this multiple of |Df|^d count as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-14;

/// Largest singular value of a real matrix.
pub fn op_norm(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().singular_values().max()
}

/// Largest singular value of a complex matrix, via the real embedding
/// z -> [[Re z, -Im z], [Im z, Re z]], which has the same singular values
/// (each doubled in multiplicity).
pub fn op_norm_complex(a: &DMatrix<Complex64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let zero = DMatrix::from_element(a.nrows(), a.ncols(), Complex64::new(0.0, 0.0));
    op_norm(&realify_jacobian(a, &zero))
}

/// Frobenius norm of a real matrix.
pub fn frob_norm(a: &DMatrix<f64>) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Pointwise distortion data of a square real Jacobian.
#[derive(Debug, Clone, Copy)]
pub struct DilatationSample {
    /// Operator norm |Df|.
    pub op_norm: f64,
    /// Jacobian determinant.
    pub det: f64,
    /// |Df|^d / det, or +infinity when degenerate.
    pub k: f64,
}

impl DilatationSample {
    pub fn is_finite(&self) -> bool {
        self.k.is_finite()
    }
}

/// Distortion K(x) = |Df|^d / det Df from a jet with square Jacobian.
pub fn local_dilatation(jet: &JetData) -> CoreResult<DilatationSample> {
    let (m, n) = jet.jacobian.shape();
    if m != n {
        return Err(CoreError::invalid(format!(
            "distortion needs a square Jacobian, got {m}x{n}"
        )));
    }
    let op = op_norm(&jet.jacobian);
    let det = jet.jacobian.determinant();
    let power = op.powi(n as i32);
    let k = if det <= DEGENERACY_THRESHOLD * power || power == 0.0 {
        f64::INFINITY
    } else {
        power / det
    };
    Ok(DilatationSample {
        op_norm: op,
        det,
        k,
    })
}

/// Planar distortion (|a| + |b|) / (|a| - |b|) of h + conj(g) from the
/// scalar derivatives a = h', b = g'.
pub fn planar_dilatation(a: Complex64, b: Complex64) -> f64 {
    let (na, nb) = (a.norm(), b.norm());
    if na - nb <= DEGENERACY_THRESHOLD * (na + nb) {
        f64::INFINITY
    } else {
        (na + nb) / (na - nb)
    }
}

/// kappa = (K - 1) / (K + 1); maps [1, inf] onto [0, 1].
pub fn kappa_from_k(k: f64) -> f64 {
    if k.is_infinite() {
        1.0
    } else {
        (k - 1.0) / (k + 1.0)
    }
}

/// K = (1 + kappa) / (1 - kappa); inverse of [`kappa_from_k`].
pub fn k_from_kappa(kappa: f64) -> f64 {
    if kappa >= 1.0 {
        f64::INFINITY
    } else {
        (1.0 + kappa) / (1.0 - kappa)
    }
}

/// Second Beltrami matrix of a jet with complex structure: the solution
/// W of conj(d f / d zbar) = W (d f / d z), i.e. for f = h + conj(g) the
/// matrix Dg (Dh)^{-1}. Scalar kappa in the planar case.
pub fn second_beltrami(jet: &JetData) -> CoreResult<DMatrix<Complex64>> {
    let cj = jet.complex.as_ref().ok_or_else(|| {
        CoreError::invalid("second Beltrami coefficient needs complex structure")
    })?;
    let dz = &cj.dz;
    if dz.nrows() != dz.ncols() {
        return Err(CoreError::invalid(
            "second Beltrami coefficient needs a square derivative",
        ));
    }
    let inv = dz.clone().try_inverse().ok_or_else(|| {
        CoreError::SingularDerivative("d f / d z is not invertible at this point".into())
    })?;
    Ok(cj.dzbar.map(|c| c.conj()) * inv)
}

/// Wu quotient |Df| / |det Df|^{1/n} of a holomorphic derivative, the
/// quantity bounded by K for K-mappings of C^n.
pub fn wu_ratio(dz: &DMatrix<Complex64>) -> CoreResult<f64> {
    let n = dz.nrows();
    if n != dz.ncols() {
        return Err(CoreError::invalid("Wu quotient needs a square derivative"));
    }
    let op = op_norm_complex(dz);
    let det = dz.clone().determinant().norm();
    if det <= DEGENERACY_THRESHOLD * op.powi(n as i32) {
        return Err(CoreError::SingularDerivative(
            "holomorphic derivative is degenerate at this point".into(),
        ));
    }
    Ok(op / det.powf(1.0 / n as f64))
}

/// Squared invariant gradient norms (1 - |x|^2)^2 |grad f_j|^2, one per
/// real component.
pub fn invariant_gradient_sq(jet: &JetData) -> Vec<f64> {
    let w = 1.0 - jet.point.iter().map(|c| c * c).sum::<f64>();
    let w2 = w * w;
    (0..jet.jacobian.nrows())
        .map(|j| w2 * jet.jacobian.row(j).iter().map(|v| v * v).sum::<f64>())
        .collect()
}

/// Invariant Laplacians, one per real component.
pub fn invariant_laplacian(jet: &JetData) -> Vec<f64> {
    let d = jet.point.len();
    let w = 1.0 - jet.point.iter().map(|c| c * c).sum::<f64>();
    (0..jet.jacobian.nrows())
        .map(|j| {
            let radial: f64 = jet
                .jacobian
                .row(j)
                .iter()
                .zip(&jet.point)
                .map(|(g, x)| g * x)
                .sum();
            w * w * jet.laplacians[j] + 2.0 * (d as f64 - 2.0) * w * radial
        })
        .collect()
}

/// Rayleigh-type quotient sum_j f_j lap f_j / sum_j |grad f_j|^2, whose
/// sign and size the Heinz class constrains.
pub fn heinz_ratio(jet: &JetData) -> CoreResult<f64> {
    let num: f64 = jet
        .value
        .iter()
        .zip(&jet.laplacians)
        .map(|(v, l)| v * l)
        .sum();
    let den: f64 = jet.jacobian.iter().map(|v| v * v).sum();
    if den <= f64::MIN_POSITIVE {
        return Err(CoreError::SingularDerivative(
            "vanishing gradient in Heinz quotient".into(),
        ));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::jet::{fd_jet, JetScheme, SchemeRequest};
    use crate::maps::spec::{FnMap, MapSpec};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn op_norm_of_diagonal_and_rotation() {
        let d = DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, -4.0]);
        assert_abs_diff_eq!(op_norm(&d), 4.0, epsilon = 1e-12);
        let th: f64 = 0.7;
        let r = DMatrix::from_row_slice(2, 2, &[th.cos(), -th.sin(), th.sin(), th.cos()]);
        assert_abs_diff_eq!(op_norm(&r), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn complex_op_norm_matches_modulus_and_embedding() {
        let a = DMatrix::from_element(1, 1, c(3.0, 4.0));
        assert_abs_diff_eq!(op_norm_complex(&a), 5.0, epsilon = 1e-12);
        let b = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(2.0, -1.0), c(0.0, 3.0)]);
        // Oracle: largest singular value of B^H B via its eigenvalues.
        let bhb = b.adjoint() * &b;
        let top = bhb
            .symmetric_eigenvalues()
            .iter()
            .fold(0.0f64, |m, v| m.max(*v))
            .sqrt();
        assert_abs_diff_eq!(op_norm_complex(&b), top, epsilon = 1e-12);
    }

    #[test]
    fn conformal_maps_have_unit_distortion() {
        let f = MapSpec::disk_analytic(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let jet = f.jet(&[0.3, -0.2], SchemeRequest::Analytic).unwrap();
        let d = local_dilatation(&jet).unwrap();
        assert_abs_diff_eq!(d.k, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn axis_stretch_distortion_matches_planar_formula() {
        // f = z + kappa conj(z): K = (1 + kappa) / (1 - kappa).
        let kappa = 0.4;
        let f = MapSpec::planar_harmonic(
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(kappa, 0.0)],
        )
        .unwrap();
        let jet = f.jet(&[0.1, 0.1], SchemeRequest::Analytic).unwrap();
        let d = local_dilatation(&jet).unwrap();
        let expected = (1.0 + kappa) / (1.0 - kappa);
        assert_abs_diff_eq!(d.k, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(
            planar_dilatation(c(1.0, 0.0), c(kappa, 0.0)),
            expected,
            epsilon = 1e-12
        );
    }

    #[test]
    fn degenerate_jacobians_are_flagged_infinite() {
        let jet = JetData {
            point: vec![0.0, 0.0],
            value: vec![0.0, 0.0],
            jacobian: DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]),
            laplacians: vec![0.0, 0.0],
            complex: None,
            scheme: JetScheme::Analytic,
        };
        let d = local_dilatation(&jet).unwrap();
        assert!(!d.is_finite());
        assert!(planar_dilatation(c(1.0, 0.0), c(1.0, 0.0)).is_infinite());
    }

    #[test]
    fn kappa_bridge_round_trips() {
        for k in [1.0, 1.5, 2.0, 5.0, 100.0] {
            assert_abs_diff_eq!(k_from_kappa(kappa_from_k(k)), k, epsilon = 1e-10);
        }
        assert_eq!(kappa_from_k(f64::INFINITY), 1.0);
        assert_eq!(k_from_kappa(1.0), f64::INFINITY);
    }

    #[test]
    fn second_beltrami_of_proportional_pair_is_constant() {
        // g = kappa h gives W = kappa I for any h.
        let kappa = 0.35;
        let h = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.2, 0.1), c(0.0, -0.3)];
        let g: Vec<Complex64> = h.iter().map(|a| a * kappa).collect();
        let f = MapSpec::planar_harmonic(h, g).unwrap();
        let jet = f.jet(&[0.4, 0.2], SchemeRequest::Analytic).unwrap();
        let w = second_beltrami(&jet).unwrap();
        assert_abs_diff_eq!((w[(0, 0)] - c(kappa, 0.0)).norm(), 0.0, epsilon = 1e-14);

        let shear = MapSpec::shear(kappa).unwrap();
        let jet = shear.jet(&[0.5, 0.1, 0.2, 0.0], SchemeRequest::Analytic).unwrap();
        let w = second_beltrami(&jet).unwrap();
        for k in 0..2 {
            for j in 0..2 {
                let want = if k == j { c(kappa, 0.0) } else { c(0.0, 0.0) };
                assert_abs_diff_eq!((w[(k, j)] - want).norm(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn wu_ratio_of_diagonal_derivative() {
        let a = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(4.0, 0.0)]);
        // |A| = 4, |det| = 4, n = 2: ratio 4 / 2 = 2.
        assert_abs_diff_eq!(wu_ratio(&a).unwrap(), 2.0, epsilon = 1e-12);
        let s = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(wu_ratio(&s).is_err());
    }

    #[test]
    fn squared_radius_has_heinz_ratio_half_dimension() {
        for d in [2usize, 3, 4] {
            let f = FnMap {
                dim: d,
                codim: 1,
                f: |x: &[f64]| Ok(vec![x.iter().map(|c| c * c).sum::<f64>()]),
            };
            let mut x = vec![0.0; d];
            x[0] = 0.3;
            x[d - 1] = -0.4;
            let jet = fd_jet(&f, &x).unwrap();
            let r = heinz_ratio(&jet).unwrap();
            assert_abs_diff_eq!(r, d as f64 / 2.0, epsilon = 1e-5);
        }
    }

    #[test]
    fn invariant_operators_match_hand_formulas() {
        // f = x_1 on B^3: lap f = 0, grad f = e_1, so the invariant
        // Laplacian is 2 (1 - |x|^2) x_1 and the invariant gradient
        // norm is (1 - |x|^2).
        let f = FnMap {
            dim: 3,
            codim: 1,
            f: |x: &[f64]| Ok(vec![x[0]]),
        };
        let x = [0.3, -0.2, 0.4];
        let w = 1.0 - x.iter().map(|c| c * c).sum::<f64>();
        let jet = fd_jet(&f, &x).unwrap();
        let il = invariant_laplacian(&jet);
        assert_abs_diff_eq!(il[0], 2.0 * w * x[0], epsilon = 1e-5);
        let ig = invariant_gradient_sq(&jet);
        assert_abs_diff_eq!(ig[0], w * w, epsilon = 1e-5);
    }
}
