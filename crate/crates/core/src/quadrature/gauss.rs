//! Gauss quadrature nodes and weights via the Golub-Welsch eigenvalue method.
//!
//! Only even weights on [-1, 1] of the form (1 - x^2)^a are needed here:
//! a = 0 gives Gauss-Legendre, a = (n-3)/2 gives the polar factor of a
//! product rule on the unit sphere S^{n-1}. For these weights the Jacobi
//! matrix has zero diagonal and closed-form off-diagonal entries, so no
//! gamma-function machinery is required.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{CoreError, CoreResult};

/// Total mass of the weight (1 - x^2)^a on [-1, 1], for 2a a nonnegative
/// integer or 2a = -1. Uses mu(a) = 2a/(2a+1) * mu(a-1) from integration by
/// parts, anchored at mu(0) = 2 and mu(-1/2) = pi.
pub fn gegenbauer_mass(a: f64) -> CoreResult<f64> {
    let two_a = 2.0 * a;
    let k = two_a.round();
    if (two_a - k).abs() > 1e-12 || k < -1.0 {
        return Err(CoreError::invalid(format!(
            "gegenbauer exponent must be a half-integer >= -1/2, got {a}"
        )));
    }
    let k = k as i64;
    let (mut mass, mut aa) = if k % 2 == 0 {
        (2.0, 0.0)
    } else {
        (std::f64::consts::PI, -0.5)
    };
    while aa < a - 0.25 {
        aa += 1.0;
        mass *= 2.0 * aa / (2.0 * aa + 1.0);
    }
    Ok(mass)
}

/// Nodes and weights of the m-point Gauss rule for the weight (1 - x^2)^a
/// on [-1, 1]. Nodes are returned in ascending order; weights sum to the
/// weight's total mass.
pub fn gauss_gegenbauer(m: usize, a: f64) -> CoreResult<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return Err(CoreError::invalid("gauss rule needs at least one node"));
    }
    let mass = gegenbauer_mass(a)?;
    if m == 1 {
        return Ok((vec![0.0], vec![mass]));
    }
    // Monic three-term recurrence p_{k+1} = x p_k - beta_k p_{k-1} with
    // beta_k = k(k + 2a) / ((2k + 2a - 1)(2k + 2a + 1)); the symmetric weight
    // makes the diagonal vanish.
    let mut jacobi = DMatrix::<f64>::zeros(m, m);
    for k in 1..m {
        let kf = k as f64;
        let beta = kf * (kf + 2.0 * a) / ((2.0 * kf + 2.0 * a - 1.0) * (2.0 * kf + 2.0 * a + 1.0));
        let off = beta.sqrt();
        jacobi[(k, k - 1)] = off;
        jacobi[(k - 1, k)] = off;
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let q0 = eig.eigenvectors[(0, i)];
            (node, mass * q0 * q0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(pairs.into_iter().unzip())
}

/// m-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(m: usize) -> CoreResult<(Vec<f64>, Vec<f64>)> {
    gauss_gegenbauer(m, 0.0)
}

/// m-point Gauss-Legendre rule mapped to [lo, hi].
pub fn gauss_legendre_on(m: usize, lo: f64, hi: f64) -> CoreResult<(Vec<f64>, Vec<f64>)> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CoreError::invalid(format!(
            "gauss interval must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let (nodes, weights) = gauss_legendre(m)?;
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    Ok((
        nodes.iter().map(|t| mid + half * t).collect(),
        weights.iter().map(|w| half * w).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let (nodes, weights) = gauss_legendre(5).unwrap();
        // 5 points are exact through degree 9; check x^8 -> 2/9.
        let val: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * x.powi(8))
            .sum();
        assert_abs_diff_eq!(val, 2.0 / 9.0, epsilon = 1e-14);
        let total: f64 = weights.iter().sum();
        assert_abs_diff_eq!(total, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn chebyshev_second_kind_matches_closed_form() {
        // For a = 1/2 the rule is Gauss-Chebyshev of the second kind:
        // nodes cos(k pi / (m+1)), weights pi/(m+1) sin^2(k pi/(m+1)).
        let m = 6;
        let (nodes, weights) = gauss_gegenbauer(m, 0.5).unwrap();
        for k in 1..=m {
            let theta = k as f64 * std::f64::consts::PI / (m as f64 + 1.0);
            let node = theta.cos();
            let weight = std::f64::consts::PI / (m as f64 + 1.0) * theta.sin().powi(2);
            // Closed-form nodes descend as k grows; ours ascend.
            let i = m - k;
            assert_abs_diff_eq!(nodes[i], node, epsilon = 1e-13);
            assert_abs_diff_eq!(weights[i], weight, epsilon = 1e-13);
        }
    }

    #[test]
    fn gegenbauer_masses_match_closed_forms() {
        assert_abs_diff_eq!(gegenbauer_mass(0.0).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            gegenbauer_mass(0.5).unwrap(),
            std::f64::consts::PI / 2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(gegenbauer_mass(1.0).unwrap(), 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            gegenbauer_mass(1.5).unwrap(),
            3.0 * std::f64::consts::PI / 8.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn mapped_rule_integrates_on_interval() {
        let (nodes, weights) = gauss_legendre_on(8, 0.25, 0.5).unwrap();
        let val: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * x * x)
            .sum();
        let exact = (0.5f64.powi(3) - 0.25f64.powi(3)) / 3.0;
        assert_abs_diff_eq!(val, exact, epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_gegenbauer(4, 0.3).is_err());
        assert!(gauss_legendre_on(4, 1.0, 0.0).is_err());
    }
}
