//! Integral means M_p(r, f) and Hardy norms.
//!
//! M_p(r, f) = (int_S |f(r zeta)|^p dsigma)^(1/p) with |.| the Euclidean
//! norm on the value and dsigma the normalized surface measure. The Hardy
//! norm is the supremum over r, estimated as the maximum over a radius
//! grid together with a divergence heuristic for maps that leave the
//! Hardy space: three consecutive tail increases above 10% combined with
//! a good fit of M against log(1/(1-r)).

use crate::error::{CoreError, CoreResult};
use crate::maps::spec::BallMap;
use crate::quadrature::SphereRule;

/// Tail increases must each exceed this relative step to count.
const DIVERGENCE_STEP: f64 = 0.10;
/// The log fit must explain at least this share of tail variance.
const DIVERGENCE_R2: f64 = 0.99;
/// Radii from here up participate in the log fit.
const FIT_RADIUS_FLOOR: f64 = 0.7;

/// A mean with a quadrature error estimate (difference against the next
/// coarser rule, plus any Monte Carlo standard error).
#[derive(Debug, Clone, Copy)]
pub struct MeanValue {
    pub value: f64,
    pub err: f64,
}

/// One grid entry of a radial sweep.
#[derive(Debug, Clone, Copy)]
pub struct MeanEntry {
    pub r: f64,
    pub value: f64,
    pub err: f64,
}

/// Means of one map at one exponent across a radius grid.
#[derive(Debug, Clone)]
pub struct RadialMeans {
    pub p: f64,
    pub entries: Vec<MeanEntry>,
}

/// Diagnostics of the growth heuristic on a radial sweep.
#[derive(Debug, Clone, Copy)]
pub struct DivergenceSignature {
    /// How many of the last three grid steps rose by more than 10%.
    pub tail_increases: usize,
    /// Least-squares slope of M against log(1/(1-r)) on the tail.
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination of that fit.
    pub r2: f64,
    /// All three steps rose and the log fit explains the tail.
    pub divergent: bool,
}

/// Hardy norm estimate: grid maximum plus growth diagnostics.
#[derive(Debug, Clone)]
pub struct HardyNorm {
    pub value: f64,
    pub err: f64,
    pub means: RadialMeans,
    pub divergence: Option<DivergenceSignature>,
}

/// Default radius grid: interior sweep plus a tail approaching 1 where
/// Hardy-space membership decides growth.
pub fn default_radius_grid() -> Vec<f64> {
    let mut rs: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    rs.extend_from_slice(&[0.95, 0.99, 0.995, 0.999]);
    rs
}

fn validate(p: f64, r: f64, cap: f64, map_dim: usize, rule: &SphereRule) -> CoreResult<()> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(CoreError::invalid(format!(
            "integral means need exponent p in (0, inf), got {p}"
        )));
    }
    if !(0.0..1.0).contains(&r) || r > cap {
        return Err(CoreError::invalid(format!(
            "radius {r} outside [0, 1) or beyond the map's evaluation cap {cap}"
        )));
    }
    if rule.dim() != map_dim {
        return Err(CoreError::invalid(format!(
            "rule lives on S^{}, map on B^{}",
            rule.dim() - 1,
            map_dim
        )));
    }
    Ok(())
}

fn modulus_p<M: BallMap + ?Sized>(map: &M, x: &[f64], p: f64) -> CoreResult<f64> {
    let v = map.eval(x)?;
    let sq: f64 = v.iter().map(|c| c * c).sum();
    Ok(sq.sqrt().powf(p))
}

/// M_p(r, f) with a two-level error estimate.
pub fn integral_mean<M: BallMap + ?Sized>(
    map: &M,
    p: f64,
    r: f64,
    rule: &SphereRule,
) -> CoreResult<MeanValue> {
    validate(p, r, map.radius_cap(), map.domain_dim(), rule)?;
    if r == 0.0 {
        let v = map.eval(&vec![0.0; map.domain_dim()])?;
        let value = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        return Ok(MeanValue { value, err: 0.0 });
    }

    let mean_on = |rule: &SphereRule| -> CoreResult<(f64, Option<f64>)> {
        rule.integrate(|zeta| {
            let x: Vec<f64> = zeta.iter().map(|c| c * r).collect();
            modulus_p(map, &x, p)
        })
    };

    let (fine, fine_se) = mean_on(rule)?;
    let value = fine.powf(1.0 / p);
    let mut err = 0.0;
    if let Some(coarse_rule) = rule.coarsen() {
        let (coarse, _) = mean_on(&coarse_rule)?;
        err += (value - coarse.powf(1.0 / p)).abs();
    }
    if let Some(se) = fine_se {
        // First-order propagation of the Monte Carlo error through t^(1/p).
        if fine > 0.0 {
            err += se / p * fine.powf(1.0 / p - 1.0);
        }
    }
    Ok(MeanValue { value, err })
}

/// Means across a radius grid.
pub fn radial_means<M: BallMap + ?Sized>(
    map: &M,
    p: f64,
    radii: &[f64],
    rule: &SphereRule,
) -> CoreResult<RadialMeans> {
    if radii.is_empty() {
        return Err(CoreError::invalid("radius grid must be nonempty"));
    }
    let mut entries = Vec::with_capacity(radii.len());
    for &r in radii {
        let m = integral_mean(map, p, r, rule)?;
        entries.push(MeanEntry {
            r,
            value: m.value,
            err: m.err,
        });
    }
    Ok(RadialMeans { p, entries })
}

/// Least-squares fit of value against log(1/(1-r)); returns
/// (intercept, slope, r2).
pub fn log_blowup_fit(entries: &[MeanEntry]) -> Option<(f64, f64, f64)> {
    if entries.len() < 3 {
        return None;
    }
    let xs: Vec<f64> = entries.iter().map(|e| -(1.0 - e.r).ln()).collect();
    let ys: Vec<f64> = entries.iter().map(|e| e.value).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let d = y - (intercept + slope * x);
            d * d
        })
        .sum();
    let r2 = if syy <= 1e-30 {
        0.0
    } else {
        1.0 - ss_res / syy
    };
    Some((intercept, slope, r2))
}

/// Growth heuristic over a sweep; None when the grid is too short.
pub fn divergence_signature(means: &RadialMeans) -> Option<DivergenceSignature> {
    let e = &means.entries;
    if e.len() < 5 {
        return None;
    }
    let tail = &e[e.len() - 4..];
    let tail_increases = tail
        .windows(2)
        .filter(|w| w[1].value > w[0].value * (1.0 + DIVERGENCE_STEP))
        .count();
    let fit_points: Vec<MeanEntry> = e
        .iter()
        .filter(|en| en.r >= FIT_RADIUS_FLOOR)
        .copied()
        .collect();
    let (intercept, slope, r2) = log_blowup_fit(&fit_points)?;
    Some(DivergenceSignature {
        tail_increases,
        slope,
        intercept,
        r2,
        divergent: tail_increases == 3 && r2 > DIVERGENCE_R2,
    })
}

/// Hardy norm estimate over a radius grid.
pub fn hardy_norm<M: BallMap + ?Sized>(
    map: &M,
    p: f64,
    radii: &[f64],
    rule: &SphereRule,
) -> CoreResult<HardyNorm> {
    let means = radial_means(map, p, radii, rule)?;
    let best = means
        .entries
        .iter()
        .max_by(|a, b| a.value.total_cmp(&b.value))
        .copied()
        .expect("nonempty grid");
    let divergence = divergence_signature(&means);
    Ok(HardyNorm {
        value: best.value,
        err: best.err,
        means,
        divergence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::spec::{FnMap, MapSpec, Projection};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle(level: u32) -> SphereRule {
        SphereRule::product(2, level).unwrap()
    }

    #[test]
    fn monomial_means_are_exact_powers() {
        // M_p(r, z^k) = r^k for every p: |z^k| is constant on circles.
        let rule = circle(4);
        for k in 1..4usize {
            let mut coeffs = vec![c(0.0, 0.0); k + 1];
            coeffs[k] = c(1.0, 0.0);
            let f = MapSpec::disk_analytic(coeffs).unwrap();
            for p in [0.5, 1.0, 2.0, 3.5] {
                let m = integral_mean(&f, p, 0.6, &rule).unwrap();
                assert_abs_diff_eq!(m.value, 0.6f64.powi(k as i32), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn constant_maps_have_constant_means() {
        let f = MapSpec::planar_harmonic(vec![c(3.0, -4.0)], vec![]).unwrap();
        let rule = circle(3);
        for r in [0.0, 0.4, 0.9] {
            let m = integral_mean(&f, 1.5, r, &rule).unwrap();
            assert_abs_diff_eq!(m.value, 5.0, epsilon = 1e-12);
            assert!(m.err < 1e-12);
        }
    }

    #[test]
    fn positive_harmonic_kernel_has_unit_circle_mean() {
        // Mean-value property: the kernel (1 - |x|^2)/|x - e1|^2 has mean
        // P(0) = 1 on every circle where the rule resolves it.
        let f = FnMap {
            dim: 2,
            codim: 1,
            f: |x: &[f64]| Ok(vec![crate::maps::kernels::poisson(x, &[1.0, 0.0])]),
        };
        let rule = circle(8);
        for r in [0.3, 0.7, 0.9] {
            let m = integral_mean(&f, 1.0, r, &rule).unwrap();
            assert_abs_diff_eq!(m.value, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn bounded_map_shows_no_divergence() {
        let f = MapSpec::disk_analytic(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let norm = hardy_norm(&f, 2.0, &default_radius_grid(), &circle(4)).unwrap();
        assert_abs_diff_eq!(norm.value, 0.999, epsilon = 1e-12);
        let sig = norm.divergence.unwrap();
        assert!(!sig.divergent);
        assert_eq!(sig.tail_increases, 0);
    }

    #[test]
    fn half_plane_map_diverges_in_h1_but_its_real_part_does_not() {
        // w = (1+z)/(1-z): the full map leaves H^1 with log-speed means,
        // while its positive real part keeps mean w(0) = 1.
        let f = MapSpec::sharpness(1.0).unwrap();
        let rule = circle(13);
        let grid = default_radius_grid();
        let norm = hardy_norm(&f, 1.0, &grid, &rule).unwrap();
        let sig = norm.divergence.unwrap();
        assert!(sig.divergent, "expected log growth, got {sig:?}");
        assert!(sig.slope > 0.2);

        let first = Projection::component(&f, 0).unwrap();
        let norm1 = hardy_norm(&first, 1.0, &grid, &rule).unwrap();
        assert_abs_diff_eq!(norm1.value, 1.0, epsilon = 1e-6);
        assert!(!norm1.divergence.unwrap().divergent);
    }

    #[test]
    fn means_grow_with_radius_for_analytic_maps() {
        let f = MapSpec::disk_analytic(vec![c(0.3, 0.0), c(1.0, -0.5), c(0.0, 0.7)]).unwrap();
        let rule = circle(5);
        let sweep = radial_means(&f, 1.5, &[0.1, 0.3, 0.5, 0.7, 0.9], &rule).unwrap();
        for w in sweep.entries.windows(2) {
            assert!(w[1].value >= w[0].value - 1e-12);
        }
    }

    #[test]
    fn arguments_are_validated() {
        let f = MapSpec::sharpness(2.0).unwrap();
        let rule = circle(3);
        assert!(integral_mean(&f, 0.0, 0.5, &rule).is_err());
        assert!(integral_mean(&f, 1.0, 1.0, &rule).is_err());
        assert!(integral_mean(&f, 1.0, 0.5, &SphereRule::product(3, 3).unwrap()).is_err());
        assert!(radial_means(&f, 1.0, &[], &rule).is_err());
    }
}
