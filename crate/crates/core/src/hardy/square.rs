//! Radial square functions along a boundary direction.
//!
//! For a unit vector zeta:
//! - the Littlewood-Paley function integrates the squared operator norm
//!   of the derivative with weight (1 - r);
//! - the invariant version integrates the squared hyperbolic gradient
//!   against dr / (1 - r), with the conformal factors cancelled in
//!   closed form to (1 - r)(1 + r)^2 times the Frobenius norm squared;
//! - the radial square function of a scalar component integrates
//!   (1 - r) times the Laplacian of its square.

use crate::error::{CoreError, CoreResult};
use crate::maps::jet::SchemeRequest;
use crate::maps::spec::{BallMap, MapSpec};
use crate::quadrature::RadialRule;

fn check_direction(map: &MapSpec, zeta: &[f64], radial: &RadialRule) -> CoreResult<()> {
    if zeta.len() != map.domain_dim() {
        return Err(CoreError::invalid(format!(
            "direction has {} coordinates, map lives on B^{}",
            zeta.len(),
            map.domain_dim()
        )));
    }
    let norm = zeta.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(CoreError::invalid(format!(
            "direction must be a unit vector, |zeta| = {norm}"
        )));
    }
    if radial.max_node() > map.radius_cap() {
        return Err(CoreError::invalid(format!(
            "radial rule reaches {} beyond the map's evaluation cap {}",
            radial.max_node(),
            map.radius_cap()
        )));
    }
    Ok(())
}

fn along<F>(zeta: &[f64], mut f: F) -> impl FnMut(f64) -> CoreResult<f64>
where
    F: FnMut(&[f64], f64) -> CoreResult<f64>,
{
    let zeta = zeta.to_vec();
    move |r: f64| {
        let x: Vec<f64> = zeta.iter().map(|c| c * r).collect();
        f(&x, r)
    }
}

/// Littlewood-Paley square function
/// (int_0^1 |Df(r zeta)|^2 (1 - r) dr)^(1/2), |.| the operator norm.
pub fn littlewood_paley_g(
    map: &MapSpec,
    zeta: &[f64],
    radial: &RadialRule,
    scheme: SchemeRequest,
) -> CoreResult<f64> {
    check_direction(map, zeta, radial)?;
    let total = radial.integrate(along(zeta, |x, r| {
        let jet = map.jet(x, scheme)?;
        let op = crate::calculus::op_norm(&jet.jacobian);
        Ok(op * op * (1.0 - r))
    }))?;
    Ok(total.max(0.0).sqrt())
}

/// Invariant square function
/// (int_0^1 |grad_h f(r zeta)|^2 / (1 - r) dr)^(1/2), where |grad_h f|^2
/// sums the squared hyperbolic gradients of all components. The weight
/// (1 - r^2)^2 / (1 - r) is folded analytically into (1 - r)(1 + r)^2 so
/// the integrand stays bounded for smooth maps.
pub fn g_tilde(
    map: &MapSpec,
    zeta: &[f64],
    radial: &RadialRule,
    scheme: SchemeRequest,
) -> CoreResult<f64> {
    check_direction(map, zeta, radial)?;
    let total = radial.integrate(along(zeta, |x, r| {
        let jet = map.jet(x, scheme)?;
        Ok((1.0 - r) * (1.0 + r) * (1.0 + r) * jet.frobenius_sq())
    }))?;
    Ok(total.max(0.0).sqrt())
}

/// Radial square function of one real component:
/// (int_0^1 (1 - r) lap(f_k^2)(r zeta) dr)^(1/2), with
/// lap(f_k^2) = 2 f_k lap f_k + 2 |grad f_k|^2 from the jet.
pub fn stoll_g(
    map: &MapSpec,
    component: usize,
    zeta: &[f64],
    radial: &RadialRule,
    scheme: SchemeRequest,
) -> CoreResult<f64> {
    check_direction(map, zeta, radial)?;
    if component >= map.codomain_real_dim() {
        return Err(CoreError::invalid(format!(
            "component {component} out of range for a map with {} real components",
            map.codomain_real_dim()
        )));
    }
    let total = radial.integrate(along(zeta, |x, r| {
        let jet = map.jet(x, scheme)?;
        let u = jet.value[component];
        let grad_sq: f64 = jet.jacobian.row(component).iter().map(|c| c * c).sum();
        let lap_sq = 2.0 * u * jet.laplacians[component] + 2.0 * grad_sq;
        Ok((1.0 - r) * lap_sq)
    }))?;
    Ok(total.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// f = x_1 as a planar harmonic map: h = g = z/2.
    fn coordinate_map() -> MapSpec {
        MapSpec::planar_harmonic(
            vec![c(0.0, 0.0), c(0.5, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn squaring_map_integrates_to_one_third() {
        // f = z^2: |Df| = 2r, int 4 r^2 (1 - r) dr = 1/3.
        let f = MapSpec::disk_analytic(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let rule = RadialRule::gauss(32).unwrap();
        let g = littlewood_paley_g(&f, &[1.0, 0.0], &rule, SchemeRequest::Analytic).unwrap();
        assert_abs_diff_eq!(g, (1.0f64 / 3.0).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn coordinate_function_oracles() {
        let f = coordinate_map();
        let rule = RadialRule::gauss(32).unwrap();
        let zeta = [0.6, 0.8];
        // |Df| = 1 everywhere: G = sqrt(1/2).
        let g = littlewood_paley_g(&f, &zeta, &rule, SchemeRequest::Analytic).unwrap();
        assert_abs_diff_eq!(g, 0.5f64.sqrt(), epsilon = 1e-12);
        // Invariant version: int (1-r)(1+r)^2 dr = 11/12.
        let gt = g_tilde(&f, &zeta, &rule, SchemeRequest::Analytic).unwrap();
        assert_abs_diff_eq!(gt, (11.0f64 / 12.0).sqrt(), epsilon = 1e-12);
        // Radial square function of the live component:
        // int (1-r) * 2 dr = 1; the dead component gives 0.
        let s0 = stoll_g(&f, 0, &zeta, &rule, SchemeRequest::Analytic).unwrap();
        assert_abs_diff_eq!(s0, 1.0, epsilon = 1e-12);
        let s1 = stoll_g(&f, 1, &zeta, &rule, SchemeRequest::Analytic).unwrap();
        assert_abs_diff_eq!(s1, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn square_functions_scale_linearly() {
        let f = MapSpec::disk_analytic(vec![c(0.1, 0.0), c(0.7, -0.2), c(0.0, 0.4)]).unwrap();
        let scaled = MapSpec::disk_analytic(
            vec![c(0.25, 0.0), c(1.75, -0.5), c(0.0, 1.0)],
        )
        .unwrap();
        let rule = RadialRule::gauss(24).unwrap();
        let zeta = [0.0, 1.0];
        for (plain, big) in [
            (
                littlewood_paley_g(&f, &zeta, &rule, SchemeRequest::Analytic).unwrap(),
                littlewood_paley_g(&scaled, &zeta, &rule, SchemeRequest::Analytic).unwrap(),
            ),
            (
                g_tilde(&f, &zeta, &rule, SchemeRequest::Analytic).unwrap(),
                g_tilde(&scaled, &zeta, &rule, SchemeRequest::Analytic).unwrap(),
            ),
        ] {
            assert_abs_diff_eq!(big, 2.5 * plain, epsilon = 1e-10);
        }
    }

    #[test]
    fn directions_are_validated() {
        let f = coordinate_map();
        let rule = RadialRule::gauss(8).unwrap();
        assert!(littlewood_paley_g(&f, &[0.5, 0.0], &rule, SchemeRequest::Auto).is_err());
        assert!(littlewood_paley_g(&f, &[1.0, 0.0, 0.0], &rule, SchemeRequest::Auto).is_err());
        assert!(stoll_g(&f, 5, &[1.0, 0.0], &rule, SchemeRequest::Auto).is_err());
    }
}
