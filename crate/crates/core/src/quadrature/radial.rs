//! One-dimensional rules on [0, 1) for radial integrals along a ray,
//! used by the square-function operations.

use super::gauss::gauss_legendre_on;
use crate::error::{CoreError, CoreResult};

/// Quadrature rule for int_0^1 f(r) dr with nodes in (0, 1).
#[derive(Debug, Clone)]
pub struct RadialRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl RadialRule {
    /// Plain m-point Gauss-Legendre rule on [0, 1].
    pub fn gauss(m: usize) -> CoreResult<Self> {
        let (nodes, weights) = gauss_legendre_on(m, 0.0, 1.0)?;
        Ok(Self { nodes, weights })
    }

    /// Level-indexed rule: 2^(level+2) Gauss-Legendre points.
    pub fn level(level: u32) -> CoreResult<Self> {
        if !(1..=12).contains(&level) {
            return Err(CoreError::invalid(format!(
                "radial level must lie in 1..=12, got {level}"
            )));
        }
        Self::gauss(1usize << (level + 2))
    }

    /// Gauss-Legendre panels geometrically graded toward r = 1, for
    /// integrands concentrating at the boundary: panels [1 - 2^-k, 1 - 2^-(k+1)]
    /// for k < depth plus a final stub [1 - 2^-depth, 1]. Gauss nodes are
    /// interior, so every node stays strictly below 1.
    pub fn graded_toward_one(points_per_panel: usize, depth: usize) -> CoreResult<Self> {
        if points_per_panel == 0 || depth == 0 {
            return Err(CoreError::invalid(
                "graded radial rule needs positive panel size and depth".to_string(),
            ));
        }
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut lo = 0.0;
        for k in 1..=depth {
            let hi = if k == depth {
                1.0
            } else {
                1.0 - 0.5f64.powi(k as i32)
            };
            let (pn, pw) = gauss_legendre_on(points_per_panel, lo, hi)?;
            nodes.extend(pn);
            weights.extend(pw);
            lo = hi;
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest node; how close the rule looks to the boundary.
    pub fn max_node(&self) -> f64 {
        self.nodes.iter().copied().fold(0.0, f64::max)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
    }

    /// Integral of `f` over [0, 1).
    pub fn integrate<F>(&self, mut f: F) -> CoreResult<f64>
    where
        F: FnMut(f64) -> CoreResult<f64>,
    {
        let mut acc = 0.0;
        for (r, w) in self.iter() {
            let v = f(r)?;
            if !v.is_finite() {
                return Err(CoreError::Evaluation(format!(
                    "non-finite radial integrand at r = {r}"
                )));
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn unit_mass_within_tolerance() {
        for rule in [
            RadialRule::gauss(8).unwrap(),
            RadialRule::level(3).unwrap(),
            RadialRule::graded_toward_one(8, 10).unwrap(),
        ] {
            let total = rule.integrate(|_| Ok(1.0)).unwrap();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
            assert!(rule.iter().all(|(r, w)| (0.0..1.0).contains(&r) && w > 0.0));
        }
    }

    #[test]
    fn integrates_square_function_weights_exactly() {
        // int_0^1 (1 - r)(1 + r)^2 dr = 11/12 and int_0^1 4 r^2 (1 - r) dr = 1/3.
        let rule = RadialRule::gauss(16).unwrap();
        let a = rule.integrate(|r| Ok((1.0 - r) * (1.0 + r) * (1.0 + r))).unwrap();
        assert_abs_diff_eq!(a, 11.0 / 12.0, epsilon = 1e-14);
        let b = rule.integrate(|r| Ok(4.0 * r * r * (1.0 - r))).unwrap();
        assert_abs_diff_eq!(b, 1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn graded_rule_resolves_boundary_concentration() {
        // int_0^1 (1-r)^(-1/2) dr = 2 needs the grading toward r = 1.
        let rule = RadialRule::graded_toward_one(12, 40).unwrap();
        let val = rule.integrate(|r| Ok((1.0 - r).sqrt().recip())).unwrap();
        assert_abs_diff_eq!(val, 2.0, epsilon = 1e-6);
        assert!(rule.max_node() < 1.0);
    }
}
