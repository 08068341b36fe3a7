//! Green identities on balls, for the Euclidean and the invariant
//! Laplacian, and the Hardy-Stein residual built on them.
//!
//! Euclidean: int_S psi(r zeta) dsigma = psi(0) + int_{B_r} lap psi G dV
//! with G(s, r) = (s^(2-n) - r^(2-n)) / (n (n-2)) for n >= 3 and
//! (1/2) log(r/s) on the plane; dV is normalized so B^n has volume 1.
//!
//! Invariant: the same shape with the hyperbolic Laplacian, the weight
//! g(s, r) = (1/n) int_s^r (1 - t^2)^(n-2) t^(1-n) dt, and the hyperbolic
//! volume element (1 - |x|^2)^(-n) dV.
//!
//! The Hardy-Stein residual applies the Euclidean identity to
//! psi = (|f|^2 + 1/mu)^(p/2), whose Laplacian comes from the chain rule
//! on the map's jet.

use crate::error::{CoreError, CoreResult};
use crate::maps::jet::{fd_jet, SchemeRequest};
use crate::maps::spec::{BallMap, MapSpec};
use crate::quadrature::{gauss_legendre_on, BallRule, RadialOptions, SphereRule};

/// Which Laplacian and measure the identity uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenKind {
    Euclidean,
    Invariant,
}

/// Euclidean Green weight G(s, r) of the ball B_r, 0 < s <= r.
pub fn green_euclidean(n: usize, s: f64, r: f64) -> CoreResult<f64> {
    check_green_args(n, s, r)?;
    if n == 2 {
        Ok(0.5 * (r / s).ln())
    } else {
        let e = 2.0 - n as f64;
        Ok((s.powf(e) - r.powf(e)) / (n as f64 * (n as f64 - 2.0)))
    }
}

/// Invariant Green weight g(s, r), closed forms on B^2 and B^3 and
/// Gauss-Legendre quadrature beyond.
pub fn green_invariant(n: usize, s: f64, r: f64) -> CoreResult<f64> {
    check_green_args(n, s, r)?;
    match n {
        2 => Ok(0.5 * (r / s).ln()),
        3 => Ok((1.0 / s + s - 1.0 / r - r) / 3.0),
        _ => green_invariant_numeric(n, s, r),
    }
}

/// The defining integral of the invariant weight, evaluated numerically.
pub(crate) fn green_invariant_numeric(n: usize, s: f64, r: f64) -> CoreResult<f64> {
    let (nodes, weights) = gauss_legendre_on(64, s, r)?;
    let nf = n as f64;
    let total: f64 = nodes
        .iter()
        .zip(&weights)
        .map(|(t, w)| w * (1.0 - t * t).powi(n as i32 - 2) * t.powf(1.0 - nf))
        .sum();
    Ok(total / nf)
}

fn check_green_args(n: usize, s: f64, r: f64) -> CoreResult<()> {
    if n < 2 {
        return Err(CoreError::invalid("Green weights need dimension >= 2"));
    }
    if !(0.0 < s && s <= r && r < 1.0) {
        return Err(CoreError::invalid(format!(
            "Green weight needs 0 < s <= r < 1, got s = {s}, r = {r}"
        )));
    }
    Ok(())
}

/// Value, gradient, and Laplacian of a scalar field at a point.
#[derive(Debug, Clone)]
pub struct ScalarJet {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub laplacian: f64,
}

/// A scalar function on the ball exposing enough derivatives for the
/// Green identities.
pub trait ScalarField: Sync {
    fn dim(&self) -> usize;
    fn radius_cap(&self) -> f64 {
        1.0
    }
    fn jet(&self, x: &[f64]) -> CoreResult<ScalarJet>;
    /// Value only; override when cheaper than a full jet.
    fn value(&self, x: &[f64]) -> CoreResult<f64> {
        Ok(self.jet(x)?.value)
    }
}

/// psi = (|f|^2 + 1/mu)^(p/2) for a map f, the smoothed p-th power of the
/// modulus. With mu = None the power is unsmoothed, which keeps the
/// Laplacian integrable only for p >= 2; construction enforces that.
pub struct ModulusPower<'a> {
    map: &'a MapSpec,
    p: f64,
    inv_mu: f64,
    scheme: SchemeRequest,
}

impl<'a> ModulusPower<'a> {
    pub fn new(map: &'a MapSpec, p: f64, mu: Option<f64>) -> CoreResult<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(CoreError::invalid(format!(
                "modulus power needs p in (0, inf), got {p}"
            )));
        }
        let inv_mu = match mu {
            Some(m) if m > 0.0 && m.is_finite() => 1.0 / m,
            Some(m) => {
                return Err(CoreError::invalid(format!(
                    "smoothing parameter must be positive and finite, got {m}"
                )))
            }
            None if p < 2.0 => {
                return Err(CoreError::invalid(
                    "p < 2 needs a smoothing parameter; the unsmoothed Laplacian \
                     is not integrable across zeros",
                ))
            }
            None => 0.0,
        };
        Ok(Self {
            map,
            p,
            inv_mu,
            scheme: SchemeRequest::Auto,
        })
    }

    pub fn with_scheme(mut self, scheme: SchemeRequest) -> Self {
        self.scheme = scheme;
        self
    }
}

impl ScalarField for ModulusPower<'_> {
    fn dim(&self) -> usize {
        self.map.domain_dim()
    }

    fn radius_cap(&self) -> f64 {
        self.map.radius_cap()
    }

    fn value(&self, x: &[f64]) -> CoreResult<f64> {
        let v = self.map.eval(x)?;
        let g: f64 = v.iter().map(|c| c * c).sum::<f64>() + self.inv_mu;
        Ok(g.powf(self.p / 2.0))
    }

    fn jet(&self, x: &[f64]) -> CoreResult<ScalarJet> {
        let jet = self.map.jet(x, self.scheme)?;
        let d = x.len();
        let g: f64 = jet.value.iter().map(|c| c * c).sum::<f64>() + self.inv_mu;
        // grad G = 2 J^T f, lap G = 2 sum_j (|grad f_j|^2 + f_j lap f_j).
        let mut grad_g = vec![0.0; d];
        for (j, fj) in jet.value.iter().enumerate() {
            for (gd, jac) in grad_g.iter_mut().zip(jet.jacobian.row(j).iter()) {
                *gd += 2.0 * fj * jac;
            }
        }
        let lap_g: f64 = 2.0
            * (jet.frobenius_sq()
                + jet
                    .value
                    .iter()
                    .zip(&jet.laplacians)
                    .map(|(f, l)| f * l)
                    .sum::<f64>());

        let half_p = self.p / 2.0;
        if self.p == 2.0 {
            return Ok(ScalarJet {
                value: g,
                gradient: grad_g,
                laplacian: lap_g,
            });
        }
        if g <= 1e-300 {
            // Exact zero without smoothing; the power and its derivatives
            // vanish for p > 2.
            return Ok(ScalarJet {
                value: 0.0,
                gradient: vec![0.0; d],
                laplacian: 0.0,
            });
        }
        let grad_sq: f64 = grad_g.iter().map(|c| c * c).sum();
        let value = g.powf(half_p);
        let gradient = grad_g.iter().map(|c| c * half_p * g.powf(half_p - 1.0)).collect();
        let laplacian = half_p * (half_p - 1.0) * g.powf(half_p - 2.0) * grad_sq
            + half_p * g.powf(half_p - 1.0) * lap_g;
        Ok(ScalarJet {
            value,
            gradient,
            laplacian,
        })
    }
}

/// psi = u^2 for a scalar map u, differentiated by finite differences.
pub struct SquareOf<'a, M: BallMap + ?Sized> {
    map: &'a M,
}

impl<'a, M: BallMap + ?Sized> SquareOf<'a, M> {
    pub fn new(map: &'a M) -> CoreResult<Self> {
        if map.codomain_real_dim() != 1 {
            return Err(CoreError::invalid(
                "squared field needs a scalar map; project a component first",
            ));
        }
        Ok(Self { map })
    }
}

impl<M: BallMap + ?Sized> ScalarField for SquareOf<'_, M> {
    fn dim(&self) -> usize {
        self.map.domain_dim()
    }

    fn radius_cap(&self) -> f64 {
        self.map.radius_cap()
    }

    fn value(&self, x: &[f64]) -> CoreResult<f64> {
        let u = self.map.eval(x)?[0];
        Ok(u * u)
    }

    fn jet(&self, x: &[f64]) -> CoreResult<ScalarJet> {
        let jet = fd_jet(self.map, x)?;
        let u = jet.value[0];
        let grad_u = jet.gradient(0);
        let grad_sq: f64 = grad_u.iter().map(|c| c * c).sum();
        Ok(ScalarJet {
            value: u * u,
            gradient: grad_u.iter().map(|c| 2.0 * u * c).collect(),
            laplacian: 2.0 * u * jet.laplacians[0] + 2.0 * grad_sq,
        })
    }
}

/// Quadrature controls for a Green-identity evaluation.
#[derive(Debug, Clone)]
pub struct GreenOptions {
    /// Level of the sphere rule behind the surface mean.
    pub surface_level: u32,
    /// Level of the angular factor of the volume rule.
    pub ball_level: u32,
    /// Radial grading of the volume rule.
    pub radial: RadialOptions,
}

impl Default for GreenOptions {
    fn default() -> Self {
        Self {
            surface_level: 6,
            ball_level: 4,
            radial: RadialOptions::default(),
        }
    }
}

/// Both sides of a Green identity and their mismatch.
#[derive(Debug, Clone, Copy)]
pub struct GreenReport {
    /// Surface mean of the field at radius r.
    pub surface: f64,
    /// Field value at the origin.
    pub anchor: f64,
    /// Weighted volume integral of the Laplacian.
    pub volume: f64,
    /// surface - anchor - volume.
    pub residual: f64,
    /// Difference of the residual against one-level-coarser quadrature.
    pub err: f64,
}

fn one_sided_residual<F: ScalarField + ?Sized>(
    field: &F,
    kind: GreenKind,
    r: f64,
    surface_rule: &SphereRule,
    ball: &BallRule,
) -> CoreResult<(f64, f64, f64)> {
    let n = field.dim();
    let (surface, _) = surface_rule.integrate(|zeta| {
        let x: Vec<f64> = zeta.iter().map(|c| c * r).collect();
        field.value(&x)
    })?;
    let anchor = field.value(&vec![0.0; n])?;
    let volume = ball.integrate(|x| {
        let s = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        if s <= 0.0 {
            return Ok(0.0);
        }
        let jet = field.jet(x)?;
        match kind {
            GreenKind::Euclidean => Ok(green_euclidean(n, s, r)? * jet.laplacian),
            GreenKind::Invariant => {
                let w = 1.0 - s * s;
                let radial: f64 = jet.gradient.iter().zip(x).map(|(g, c)| g * c).sum();
                let lap_h = w * w * jet.laplacian + 2.0 * (n as f64 - 2.0) * w * radial;
                Ok(green_invariant(n, s, r)? * lap_h * w.powi(-(n as i32)))
            }
        }
    })?;
    Ok((surface, anchor, volume))
}

/// Evaluate one Green identity at radius r, reporting the residual and a
/// two-level error estimate.
pub fn green_residual<F: ScalarField + ?Sized>(
    field: &F,
    kind: GreenKind,
    r: f64,
    opts: &GreenOptions,
) -> CoreResult<GreenReport> {
    if !(r > 0.0 && r < 1.0 && r <= field.radius_cap()) {
        return Err(CoreError::invalid(format!(
            "Green identity needs 0 < r < 1 within the field's cap, got {r}"
        )));
    }
    let n = field.dim();
    let surface_rule = SphereRule::product(n, opts.surface_level)?;
    let ball = BallRule::with_options(
        r,
        SphereRule::product(n, opts.ball_level)?,
        opts.radial.clone(),
    )?;
    let (surface, anchor, volume) = one_sided_residual(field, kind, r, &surface_rule, &ball)?;
    let residual = surface - anchor - volume;

    let coarse_surface = surface_rule
        .coarsen()
        .ok_or_else(|| CoreError::invalid("surface level too coarse for an error estimate"))?;
    let coarse_ball = BallRule::with_options(
        r,
        SphereRule::product(n, opts.ball_level.max(2) - 1)?,
        RadialOptions {
            points_per_panel: (opts.radial.points_per_panel / 2).max(4),
            ..opts.radial.clone()
        },
    )?;
    let (cs, ca, cv) = one_sided_residual(field, kind, r, &coarse_surface, &coarse_ball)?;
    let err = (residual - (cs - ca - cv)).abs();

    Ok(GreenReport {
        surface,
        anchor,
        volume,
        residual,
        err,
    })
}

/// Hardy-Stein residual: the Euclidean Green identity applied to
/// psi = (|f|^2 + 1/mu)^(p/2). A zero residual certifies that the growth
/// of the p-means is exactly the weighted Dirichlet integral.
pub fn hardy_stein_residual(
    map: &MapSpec,
    p: f64,
    r: f64,
    mu: Option<f64>,
    opts: &GreenOptions,
) -> CoreResult<GreenReport> {
    let field = ModulusPower::new(map, p, mu)?;
    green_residual(&field, GreenKind::Euclidean, r, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::boundary::BoundaryData;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// |x|^2 with exact derivatives, as a measure-convention oracle.
    struct RadiusSq {
        n: usize,
    }

    impl ScalarField for RadiusSq {
        fn dim(&self) -> usize {
            self.n
        }

        fn jet(&self, x: &[f64]) -> CoreResult<ScalarJet> {
            Ok(ScalarJet {
                value: x.iter().map(|c| c * c).sum(),
                gradient: x.iter().map(|c| 2.0 * c).collect(),
                laplacian: 2.0 * self.n as f64,
            })
        }
    }

    #[test]
    fn euclidean_weight_matches_hand_values() {
        // n = 2 at (s, r) = (0.25, 0.5): log(2)/2.
        assert_abs_diff_eq!(
            green_euclidean(2, 0.25, 0.5).unwrap(),
            0.5 * 2.0f64.ln(),
            epsilon = 1e-15
        );
        // n = 3 at (0.2, 0.4): (5 - 2.5)/3.
        assert_abs_diff_eq!(
            green_euclidean(3, 0.2, 0.4).unwrap(),
            2.5 / 3.0,
            epsilon = 1e-14
        );
        assert_eq!(green_euclidean(3, 0.4, 0.4).unwrap(), 0.0);
        assert!(green_euclidean(3, 0.0, 0.4).is_err());
    }

    #[test]
    fn invariant_weight_closed_forms_match_the_integral() {
        for (s, r) in [(0.1, 0.5), (0.3, 0.9), (0.45, 0.5)] {
            for n in [2usize, 3] {
                assert_abs_diff_eq!(
                    green_invariant(n, s, r).unwrap(),
                    green_invariant_numeric(n, s, r).unwrap(),
                    epsilon = 1e-12
                );
            }
        }
        // n = 4 exercises the numeric path; spot-check monotonicity in r.
        let a = green_invariant(4, 0.2, 0.5).unwrap();
        let b = green_invariant(4, 0.2, 0.7).unwrap();
        assert!(b > a && a > 0.0);
    }

    #[test]
    fn euclidean_identity_is_exact_for_squared_radius() {
        // Surface mean r^2, anchor 0, so the weighted volume integral of
        // the constant Laplacian must be exactly r^2 in every dimension.
        for n in [2usize, 3, 4] {
            let field = RadiusSq { n };
            let opts = GreenOptions {
                surface_level: 3,
                ball_level: 3,
                radial: RadialOptions::default(),
            };
            let rep = green_residual(&field, GreenKind::Euclidean, 0.6, &opts).unwrap();
            assert_abs_diff_eq!(rep.surface, 0.36, epsilon = 1e-12);
            assert_abs_diff_eq!(rep.residual, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn invariant_identity_coincides_with_euclidean_on_the_plane() {
        // On B^2 the conformal factors cancel exactly, so both identities
        // produce the same volume term for any field.
        let f = MapSpec::disk_analytic(vec![c(0.1, 0.0), c(1.0, 0.0), c(0.0, 0.8)]).unwrap();
        let field = ModulusPower::new(&f, 2.0, None).unwrap();
        let opts = GreenOptions {
            surface_level: 5,
            ball_level: 4,
            radial: RadialOptions::default(),
        };
        let a = green_residual(&field, GreenKind::Euclidean, 0.7, &opts).unwrap();
        let b = green_residual(&field, GreenKind::Invariant, 0.7, &opts).unwrap();
        assert_abs_diff_eq!(a.volume, b.volume, epsilon = 1e-10);
        assert_abs_diff_eq!(a.residual, b.residual, epsilon = 1e-10);
    }

    #[test]
    fn hardy_stein_is_tight_for_the_identity_map() {
        let f = MapSpec::disk_analytic(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let rep = hardy_stein_residual(&f, 2.0, 0.6, None, &GreenOptions::default()).unwrap();
        // Surface side r^2, volume side int 4 G = r^2.
        assert_abs_diff_eq!(rep.surface, 0.36, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.residual, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn hardy_stein_handles_odd_powers_without_smoothing() {
        // f = z, p = 3: surface r^3, volume 9 int rho^2 log(r/rho) = r^3.
        let f = MapSpec::disk_analytic(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let rep = hardy_stein_residual(&f, 3.0, 0.5, None, &GreenOptions::default()).unwrap();
        assert_abs_diff_eq!(rep.surface, 0.125, epsilon = 1e-10);
        assert_abs_diff_eq!(rep.residual, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn smoothing_is_required_below_p_two() {
        let f = MapSpec::disk_analytic(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(ModulusPower::new(&f, 1.5, None).is_err());
        assert!(ModulusPower::new(&f, 1.5, Some(0.0)).is_err());
        assert!(ModulusPower::new(&f, 1.5, Some(1e6)).is_ok());
    }

    #[test]
    fn smoothed_small_p_residual_vanishes_away_from_zeros() {
        // f = z + 2 has no zero in the disk; mu-smoothing barely perturbs
        // psi and the identity holds to quadrature accuracy.
        let f = MapSpec::disk_analytic(vec![c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        let rep = hardy_stein_residual(&f, 1.5, 0.6, Some(1e6), &GreenOptions::default()).unwrap();
        assert!(rep.residual.abs() <= 1e-6, "residual {0}", rep.residual);
    }

    #[test]
    fn squared_extension_feeds_the_invariant_identity() {
        // u = P_h[zeta_1 + const] on B^3 is invariant-harmonic, so the
        // identity for u^2 closes up to kernel quadrature error.
        let boundary = BoundaryData::closure(3, 1, |zeta: &[f64]| vec![zeta[0] + 0.5]);
        let u = MapSpec::invariant_harmonic_extension(boundary, 4).unwrap();
        let field = SquareOf::new(&u).unwrap();
        let opts = GreenOptions {
            surface_level: 4,
            ball_level: 2,
            radial: RadialOptions {
                points_per_panel: 8,
                grading_depth: 6,
                subdivide: 1,
            },
        };
        let rep = green_residual(&field, GreenKind::Invariant, 0.4, &opts).unwrap();
        assert!(
            rep.residual.abs() <= 1e-3,
            "invariant residual {0}",
            rep.residual
        );
    }
}
