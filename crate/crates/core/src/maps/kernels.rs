//! Poisson-type reproducing kernels on the unit ball.
//!
//! Euclidean:  P(x, zeta)   = (1 - |x|^2) / |x - zeta|^n
//! Hyperbolic: P_h(x, zeta) = (1 - |x|^2)^(n-1) / |x - zeta|^(2n-2)
//!
//! Both integrate to 1 over S^{n-1} against the normalized surface measure,
//! and they coincide when n = 2. P(., zeta) is annihilated by the Euclidean
//! Laplacian, P_h(., zeta) by the invariant Laplacian
//! (1-|x|^2)^2 Lap + 2(n-2)(1-|x|^2) <grad, x>.

/// Which kernel an extension uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Euclidean,
    Hyperbolic,
}

#[inline]
fn dist_sq(x: &[f64], zeta: &[f64]) -> f64 {
    x.iter()
        .zip(zeta)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum()
}

/// Euclidean Poisson kernel on B^n.
#[inline]
pub fn poisson(x: &[f64], zeta: &[f64]) -> f64 {
    let n = x.len();
    let norm_sq: f64 = x.iter().map(|c| c * c).sum();
    let d2 = dist_sq(x, zeta);
    (1.0 - norm_sq) / d2.powf(n as f64 / 2.0)
}

/// Hyperbolic Poisson kernel on B^n.
#[inline]
pub fn poisson_hyperbolic(x: &[f64], zeta: &[f64]) -> f64 {
    let n = x.len();
    let norm_sq: f64 = x.iter().map(|c| c * c).sum();
    let d2 = dist_sq(x, zeta);
    (1.0 - norm_sq).powi(n as i32 - 1) / d2.powi(n as i32 - 1)
}

#[inline]
pub fn kernel(kind: KernelKind, x: &[f64], zeta: &[f64]) -> f64 {
    match kind {
        KernelKind::Euclidean => poisson(x, zeta),
        KernelKind::Hyperbolic => poisson_hyperbolic(x, zeta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::SphereRule;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kernels_coincide_in_the_plane() {
        let x = [0.3, -0.4];
        let zeta = [0.6, 0.8];
        assert_abs_diff_eq!(
            poisson(&x, &zeta),
            poisson_hyperbolic(&x, &zeta),
            epsilon = 1e-15
        );
    }

    #[test]
    fn both_kernels_have_unit_sphere_mean() {
        for dim in 2..=4 {
            let rule = SphereRule::product(dim, 3).unwrap();
            let x: Vec<f64> = (0..dim)
                .map(|i| if i == 0 { 0.4 } else { 0.1 })
                .collect();
            let (pe, _) = rule.integrate(|z| Ok(poisson(&x, z))).unwrap();
            assert_abs_diff_eq!(pe, 1.0, epsilon = 1e-9);
            let (ph, _) = rule.integrate(|z| Ok(poisson_hyperbolic(&x, z))).unwrap();
            assert_abs_diff_eq!(ph, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn euclidean_kernel_at_plane_matches_closed_form() {
        // n = 2 at zeta = e1: (1 - |x|^2) / ((1 - x1)^2 + x2^2).
        let x = [0.2, 0.5];
        let expect = (1.0 - 0.04 - 0.25) / ((1.0 - 0.2f64).powi(2) + 0.25);
        assert_abs_diff_eq!(poisson(&x, &[1.0, 0.0]), expect, epsilon = 1e-15);
    }
}
