//! Non-tangential approach regions and sampled maximal functions.
//!
//! The cone at a boundary point zeta with aperture alpha > 1 is
//! Gamma_alpha(zeta) = { y : |y - zeta| < alpha (1 - |y|) }. The maximal
//! function is sampled on a fixed absolute candidate ladder (depths times
//! tangential offsets) filtered by the cone condition, so the estimate is
//! a lower bound that is monotone in alpha by construction.

use crate::error::{CoreError, CoreResult};
use crate::maps::spec::BallMap;

/// Fixed candidate ladder around a boundary point.
#[derive(Debug, Clone)]
pub struct ConeGrid {
    /// Boundary distances 1 - |y|, descending toward 0.
    pub depths: Vec<f64>,
    /// Signed tangential offsets in units of the depth.
    pub offsets: Vec<f64>,
}

impl ConeGrid {
    /// 24 logarithmic depths down to 1e-3 and offsets covering apertures
    /// up to sqrt(1 + 3^2).
    pub fn standard() -> Self {
        let count = 24;
        let depths = (0..count)
            .map(|i| 10f64.powf(-3.0 * i as f64 / (count - 1) as f64))
            .collect();
        let mut offsets = vec![0.0];
        for s in [0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0] {
            offsets.push(s);
            offsets.push(-s);
        }
        Self { depths, offsets }
    }
}

/// Sampled maximal-function data.
#[derive(Debug, Clone)]
pub struct NtMax {
    /// Largest |f| over cone candidates: a lower bound for the supremum.
    pub value: f64,
    /// Candidate count that passed the cone condition.
    pub count: usize,
    /// Where the maximum was attained.
    pub argmax: Vec<f64>,
}

/// Orthonormal tangent frame at zeta, by Gram-Schmidt over the axes.
fn tangent_frame(zeta: &[f64]) -> Vec<Vec<f64>> {
    let n = zeta.len();
    let mut frame: Vec<Vec<f64>> = vec![zeta.to_vec()];
    for axis in 0..n {
        let mut v = vec![0.0; n];
        v[axis] = 1.0;
        for u in &frame {
            let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
            for (vc, uc) in v.iter_mut().zip(u) {
                *vc -= dot * uc;
            }
        }
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-9 {
            for vc in v.iter_mut() {
                *vc /= norm;
            }
            frame.push(v);
        }
        if frame.len() == n {
            break;
        }
    }
    frame.remove(0);
    frame
}

/// Sampled non-tangential maximal function of |f| at zeta.
pub fn nontangential_max<M: BallMap + ?Sized>(
    map: &M,
    zeta: &[f64],
    alpha: f64,
    grid: &ConeGrid,
) -> CoreResult<NtMax> {
    let n = map.domain_dim();
    if zeta.len() != n {
        return Err(CoreError::invalid(format!(
            "boundary point has {} coordinates, map lives on B^{n}",
            zeta.len()
        )));
    }
    let norm = zeta.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(CoreError::invalid(format!(
            "boundary point must be a unit vector, |zeta| = {norm}"
        )));
    }
    if !(alpha > 1.0) {
        return Err(CoreError::invalid(format!(
            "cones need aperture alpha > 1, got {alpha}; narrower cones are empty"
        )));
    }

    let frame = tangent_frame(zeta);
    let cap = map.radius_cap();
    let mut best = f64::NEG_INFINITY;
    let mut argmax = vec![0.0; n];
    let mut count = 0usize;

    let mut consider = |y: &[f64]| -> CoreResult<()> {
        let ny = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        if ny > cap {
            return Ok(());
        }
        let dist = y
            .iter()
            .zip(zeta)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if dist >= alpha * (1.0 - ny) {
            return Ok(());
        }
        count += 1;
        let v = map.eval(y)?;
        let m = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if m > best {
            best = m;
            argmax = y.to_vec();
        }
        Ok(())
    };

    for &t in &grid.depths {
        // Radial candidate.
        let radial: Vec<f64> = zeta.iter().map(|c| c * (1.0 - t)).collect();
        consider(&radial)?;
        // Tangential candidates at the same depth.
        for dir in &frame {
            for &s in &grid.offsets {
                if s == 0.0 {
                    continue;
                }
                let mut u: Vec<f64> = zeta
                    .iter()
                    .zip(dir)
                    .map(|(zc, dc)| zc + s * t * dc)
                    .collect();
                let nu = u.iter().map(|c| c * c).sum::<f64>().sqrt();
                for c in u.iter_mut() {
                    *c *= (1.0 - t) / nu;
                }
                consider(&u)?;
            }
        }
    }

    if count == 0 {
        return Err(CoreError::invalid(
            "no grid candidate fell inside the cone; widen alpha or the grid",
        ));
    }
    Ok(NtMax {
        value: best,
        count,
        argmax,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::spec::MapSpec;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_map_peaks_at_the_deepest_candidate() {
        let f = MapSpec::disk_analytic(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let grid = ConeGrid::standard();
        let m = nontangential_max(&f, &[1.0, 0.0], 2.0, &grid).unwrap();
        // |f(y)| = |y| <= 1 - 1e-3 on the ladder, attained radially.
        assert_abs_diff_eq!(m.value, 1.0 - 1e-3, epsilon = 1e-12);
    }

    #[test]
    fn widening_the_cone_never_shrinks_the_maximum() {
        let f = MapSpec::disk_analytic(vec![c(0.2, 0.1), c(0.5, 0.0), c(0.0, -0.8)]).unwrap();
        let grid = ConeGrid::standard();
        let zeta = [0.6, 0.8];
        let mut last_value = f64::NEG_INFINITY;
        let mut last_count = 0;
        for alpha in [1.05, 1.5, 2.0, 3.0] {
            let m = nontangential_max(&f, &zeta, alpha, &grid).unwrap();
            assert!(m.value >= last_value);
            assert!(m.count >= last_count);
            last_value = m.value;
            last_count = m.count;
        }
    }

    #[test]
    fn aperture_and_arguments_are_validated() {
        let f = MapSpec::sharpness(1.0).unwrap();
        let grid = ConeGrid::standard();
        assert!(nontangential_max(&f, &[1.0, 0.0], 1.0, &grid).is_err());
        assert!(nontangential_max(&f, &[0.5, 0.0], 2.0, &grid).is_err());
    }

    #[test]
    fn works_in_higher_dimensions() {
        let f = MapSpec::shear(0.2).unwrap();
        let grid = ConeGrid::standard();
        let zeta = [0.0, 0.0, 1.0, 0.0];
        let m = nontangential_max(&f, &zeta, 2.0, &grid).unwrap();
        assert!(m.value.is_finite() && m.count > 0);
    }
}
