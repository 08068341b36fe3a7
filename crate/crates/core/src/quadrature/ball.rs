//! Product quadrature on balls B^n_r for the normalized volume measure
//! dV_N = (Lebesgue volume) / Vol(B^n), under which the unit ball has mass 1
//! and B^n_r has mass r^n.
//!
//! In polar form the integral splits as
//!     int_{B_r} f dV_N = n * int_0^r rho^{n-1} [ int_{S^{n-1}} f(rho zeta) dsigma ] drho,
//! so a rule is a radial rule carrying the factor n rho^{n-1} times a sphere
//! rule. The radial factor uses Gauss-Legendre panels that are geometrically
//! graded toward rho = 0: Green-type weights (log(r/rho) in the plane,
//! rho^{2-n} in higher dimensions) and mollified integrands with short-scale
//! features near the origin then converge without special casing. Panels may
//! additionally be subdivided uniformly to resolve short-scale features away
//! from the origin.

use rayon::prelude::*;

use super::gauss::gauss_legendre_on;
use super::sphere::SphereRule;
use crate::error::{CoreError, CoreResult};

const PAR_THRESHOLD: usize = 8192;

/// Product rule on the ball B^n_r against the normalized volume measure.
#[derive(Debug, Clone)]
pub struct BallRule {
    dim: usize,
    radius: f64,
    /// Radii in (0, r).
    radial_nodes: Vec<f64>,
    /// Weights carrying n rho^{n-1} drho; they sum to r^n.
    radial_weights: Vec<f64>,
    sphere: SphereRule,
}

/// Radial discretization knobs for [`BallRule::with_options`].
#[derive(Debug, Clone, Copy)]
pub struct RadialOptions {
    /// Gauss-Legendre points per panel.
    pub points_per_panel: usize,
    /// Number of dyadic panels [r/2^(k+1), r/2^k]; the leftover stub
    /// [0, r/2^depth] becomes one final panel.
    pub grading_depth: usize,
    /// Uniform subdivisions of each dyadic panel.
    pub subdivide: usize,
}

impl Default for RadialOptions {
    fn default() -> Self {
        RadialOptions {
            points_per_panel: 16,
            grading_depth: 18,
            subdivide: 1,
        }
    }
}

impl BallRule {
    /// Rule with default radial grading and the given sphere rule.
    pub fn new(radius: f64, sphere: SphereRule) -> CoreResult<Self> {
        Self::with_options(radius, sphere, RadialOptions::default())
    }

    /// Rule with explicit radial options.
    pub fn with_options(radius: f64, sphere: SphereRule, opts: RadialOptions) -> CoreResult<Self> {
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(CoreError::invalid(format!(
                "ball radius must lie in (0, 1], got {radius}"
            )));
        }
        if opts.points_per_panel == 0 || opts.subdivide == 0 || opts.grading_depth == 0 {
            return Err(CoreError::invalid(
                "radial options must all be positive".to_string(),
            ));
        }
        let dim = sphere.dim();
        let n = dim as f64;
        let mut radial_nodes = Vec::new();
        let mut radial_weights = Vec::new();
        let mut push_panel = |lo: f64, hi: f64| -> CoreResult<()> {
            let (nodes, weights) = gauss_legendre_on(opts.points_per_panel, lo, hi)?;
            for (rho, w) in nodes.iter().zip(&weights) {
                radial_nodes.push(*rho);
                radial_weights.push(w * n * rho.powi(dim as i32 - 1));
            }
            Ok(())
        };
        // Panels from the outer edge inward: [r/2, r], [r/4, r/2], ...
        for k in 0..opts.grading_depth {
            let hi = radius * 0.5f64.powi(k as i32);
            let lo = hi * 0.5;
            for s in 0..opts.subdivide {
                let a = hi - (s + 1) as f64 * (hi - lo) / opts.subdivide as f64;
                let b = hi - s as f64 * (hi - lo) / opts.subdivide as f64;
                push_panel(a, b)?;
            }
        }
        // Innermost stub down to zero.
        push_panel(0.0, radius * 0.5f64.powi(opts.grading_depth as i32))?;
        Ok(Self {
            dim,
            radius,
            radial_nodes,
            radial_weights,
            sphere,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn sphere(&self) -> &SphereRule {
        &self.sphere
    }

    pub fn radial_len(&self) -> usize {
        self.radial_nodes.len()
    }

    /// Total mass of the rule; equals r^n up to roundoff.
    pub fn volume(&self) -> f64 {
        self.radial_weights.iter().sum()
    }

    /// Integral of `f` over B^n_r against dV_N. The integrand receives the
    /// full point x = rho * zeta. Evaluations may run in parallel over radii;
    /// sums are taken in a fixed order, so results are deterministic.
    pub fn integrate<F>(&self, f: F) -> CoreResult<f64>
    where
        F: Fn(&[f64]) -> CoreResult<f64> + Sync,
    {
        let ring_mean = |i: usize| -> CoreResult<f64> {
            let rho = self.radial_nodes[i];
            let mut point = vec![0.0; self.dim];
            let mut acc = 0.0;
            for (zeta, w) in self.sphere.iter() {
                for (p, z) in point.iter_mut().zip(zeta) {
                    *p = rho * z;
                }
                let v = f(&point)?;
                if !v.is_finite() {
                    return Err(CoreError::Evaluation(format!(
                        "non-finite integrand value at radius {rho}"
                    )));
                }
                acc += w * v;
            }
            Ok(acc)
        };
        let work = self.radial_len() * self.sphere.len();
        let means: Vec<f64> = if work >= PAR_THRESHOLD {
            (0..self.radial_len())
                .into_par_iter()
                .map(ring_mean)
                .collect::<CoreResult<_>>()?
        } else {
            (0..self.radial_len())
                .map(ring_mean)
                .collect::<CoreResult<_>>()?
        };
        Ok(self
            .radial_weights
            .iter()
            .zip(&means)
            .map(|(w, m)| w * m)
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn rule(dim: usize, radius: f64) -> BallRule {
        BallRule::new(radius, SphereRule::product(dim, 2).unwrap()).unwrap()
    }

    #[test]
    fn unit_ball_has_mass_one() {
        for dim in 2..=4 {
            let r = rule(dim, 1.0);
            assert_abs_diff_eq!(r.volume(), 1.0, epsilon = 1e-12);
            let one = r.integrate(|_| Ok(1.0)).unwrap();
            assert_abs_diff_eq!(one, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn sub_ball_mass_is_radius_to_the_n() {
        for dim in 2..=4 {
            let r = rule(dim, 0.7);
            assert_abs_diff_eq!(r.volume(), 0.7f64.powi(dim as i32), epsilon = 1e-12);
        }
    }

    #[test]
    fn radial_moment_matches_closed_form() {
        // int_{B_r} |x|^2 dV_N = n r^{n+2} / (n+2).
        for dim in 2..=4 {
            let radius = 0.9;
            let r = rule(dim, radius);
            let val = r
                .integrate(|x| Ok(x.iter().map(|c| c * c).sum::<f64>()))
                .unwrap();
            let n = dim as f64;
            assert_abs_diff_eq!(val, n * radius.powi(dim as i32 + 2) / (n + 2.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn handles_log_weight_toward_origin() {
        // 2 int_0^1 rho log(1/rho) drho = 1/2; the graded panels absorb the
        // logarithmic weight without special treatment.
        let r = rule(2, 1.0);
        let val = r
            .integrate(|x| {
                let rho = (x[0] * x[0] + x[1] * x[1]).sqrt();
                Ok(-rho.ln())
            })
            .unwrap();
        assert_abs_diff_eq!(val, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn anisotropic_polynomial_integrates_exactly() {
        // int_{B^2_r} x1^2 dV_N = r^4 / 4 (half the radial moment by symmetry).
        let r = rule(2, 0.5);
        let val = r.integrate(|x| Ok(x[0] * x[0])).unwrap();
        assert_abs_diff_eq!(val, 0.5f64.powi(4) / 4.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_bad_radius() {
        let sphere = SphereRule::product(2, 1).unwrap();
        assert!(BallRule::new(0.0, sphere.clone()).is_err());
        assert!(BallRule::new(1.5, sphere).is_err());
    }
}
