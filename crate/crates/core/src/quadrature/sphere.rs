//! Quadrature rules on the unit sphere S^{n-1} with the normalized surface
//! measure (total mass 1).
//!
//! Construction by dimension:
//! - n = 2: equally spaced angles (trapezoid rule on the circle), exact for
//!   trigonometric polynomials of degree below the node count;
//! - n >= 3: recursive product of a Gauss rule for the polar weight
//!   (1 - t^2)^{(n-3)/2} with a rule on S^{n-2}, written as
//!   zeta = (sqrt(1 - t^2) xi, t);
//! - any n: seeded Monte Carlo (normalized Gaussians) with a reported
//!   standard error, intended for n above the product-rule range.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::gauss::{gauss_gegenbauer, gegenbauer_mass};
use crate::error::{CoreError, CoreResult};

/// Largest ambient dimension served by product rules.
pub const MAX_PRODUCT_DIM: usize = 8;
/// Finest supported refinement level.
pub const MAX_LEVEL: u32 = 14;
/// Largest node count a product rule may reach; levels are additionally
/// capped so the recursive construction stays within this budget.
pub const MAX_PRODUCT_NODES: usize = 1 << 24;
/// Node count at and above which integration evaluates in parallel.
const PAR_THRESHOLD: usize = 8192;

/// Node count of the product rule on S^{dim-1} at the given level: the
/// circle factor has 2^(level+2) angles and each further dimension
/// multiplies in 2^(level+1) polar nodes.
fn product_node_count(dim: usize, level: u32) -> Option<usize> {
    let bits = (level as usize + 2) + (dim - 2) * (level as usize + 1);
    if bits >= usize::BITS as usize {
        return None;
    }
    Some(1usize << bits)
}

/// How a rule's nodes were generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleMethod {
    /// Deterministic product construction; errors decay spectrally with level.
    Product,
    /// Seeded Monte Carlo; integration reports a standard error.
    MonteCarlo { seed: u64 },
}

/// Quadrature rule on S^{n-1} for the normalized surface measure.
#[derive(Debug, Clone)]
pub struct SphereRule {
    dim: usize,
    level: u32,
    /// Flat node storage, `dim` coordinates per node.
    nodes: Vec<f64>,
    weights: Vec<f64>,
    method: RuleMethod,
}

impl SphereRule {
    /// Product rule on S^{dim-1} at the given refinement level. The circle
    /// gets 2^(level+2) angles; each extra dimension multiplies in a
    /// 2^(level+1)-point polar Gauss rule.
    pub fn product(dim: usize, level: u32) -> CoreResult<Self> {
        if dim < 2 {
            return Err(CoreError::invalid(format!(
                "sphere rules need ambient dimension >= 2, got {dim}"
            )));
        }
        if dim > MAX_PRODUCT_DIM {
            return Err(CoreError::invalid(format!(
                "product rules stop at dimension {MAX_PRODUCT_DIM} (got {dim}); use monte_carlo"
            )));
        }
        if !(1..=MAX_LEVEL).contains(&level) {
            return Err(CoreError::invalid(format!(
                "level must lie in 1..={MAX_LEVEL}, got {level}"
            )));
        }
        match product_node_count(dim, level) {
            Some(count) if count <= MAX_PRODUCT_NODES => {}
            _ => {
                return Err(CoreError::invalid(format!(
                    "product rule on S^{} at level {level} would exceed {MAX_PRODUCT_NODES} nodes",
                    dim - 1
                )))
            }
        }
        if dim == 2 {
            let count = 1usize << (level + 2);
            let mut nodes = Vec::with_capacity(2 * count);
            let w = 1.0 / count as f64;
            for j in 0..count {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / count as f64;
                nodes.push(theta.cos());
                nodes.push(theta.sin());
            }
            return Ok(Self {
                dim,
                level,
                nodes,
                weights: vec![w; count],
                method: RuleMethod::Product,
            });
        }
        let sub = Self::product(dim - 1, level)?;
        let a = (dim as f64 - 3.0) / 2.0;
        let m = 1usize << (level + 1);
        let (polar_nodes, polar_weights) = gauss_gegenbauer(m, a)?;
        let mass = gegenbauer_mass(a)?;
        let count = m * sub.len();
        let mut nodes = Vec::with_capacity(count * dim);
        let mut weights = Vec::with_capacity(count);
        for (t, wt) in polar_nodes.iter().zip(&polar_weights) {
            let ring = (1.0 - t * t).max(0.0).sqrt();
            let wt_norm = wt / mass;
            for (xi, wxi) in sub.iter() {
                for c in xi {
                    nodes.push(ring * c);
                }
                nodes.push(*t);
                weights.push(wt_norm * wxi);
            }
        }
        // Renormalize: the recursive products accumulate roundoff on large
        // rules, and downstream invariants hold the sum to 1e-14.
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        Ok(Self {
            dim,
            level,
            nodes,
            weights,
            method: RuleMethod::Product,
        })
    }

    /// Seeded Monte Carlo rule: `count` normalized Gaussian directions with
    /// equal weights. Deterministic for a fixed seed.
    pub fn monte_carlo(dim: usize, count: usize, seed: u64) -> CoreResult<Self> {
        if dim < 2 {
            return Err(CoreError::invalid(format!(
                "sphere rules need ambient dimension >= 2, got {dim}"
            )));
        }
        if count == 0 {
            return Err(CoreError::invalid("monte carlo rule needs nodes"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut nodes = Vec::with_capacity(count * dim);
        let mut point = vec![0.0f64; dim];
        let mut produced = 0usize;
        while produced < count {
            let mut norm_sq = 0.0;
            for slot in point.iter_mut() {
                let g: f64 = StandardNormal.sample(&mut rng);
                *slot = g;
                norm_sq += g * g;
            }
            // A zero draw is astronomically unlikely; skip it for safety.
            if norm_sq < 1e-290 {
                continue;
            }
            let inv = norm_sq.sqrt().recip();
            nodes.extend(point.iter().map(|c| c * inv));
            produced += 1;
        }
        Ok(Self {
            dim,
            level: 0,
            nodes,
            weights: vec![1.0 / count as f64; count],
            method: RuleMethod::MonteCarlo { seed },
        })
    }

    /// Ambient dimension n (the rule lives on S^{n-1}).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn method(&self) -> RuleMethod {
        self.method
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Coordinates of node `i`.
    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    /// Iterator over (node, weight) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.nodes
            .chunks_exact(self.dim)
            .zip(self.weights.iter().copied())
    }

    /// One level coarser rule of the same construction, if one exists.
    /// Monte Carlo rules coarsen to the first half of the same stream.
    pub fn coarsen(&self) -> Option<Self> {
        match self.method {
            RuleMethod::Product => {
                if self.level > 1 {
                    Self::product(self.dim, self.level - 1).ok()
                } else {
                    None
                }
            }
            RuleMethod::MonteCarlo { seed } => {
                if self.len() >= 2 {
                    Self::monte_carlo(self.dim, self.len() / 2, seed).ok()
                } else {
                    None
                }
            }
        }
    }

    /// One level finer rule of the same construction. Monte Carlo rules
    /// double their node count on the same stream.
    pub fn refine(&self) -> CoreResult<Self> {
        match self.method {
            RuleMethod::Product => Self::product(self.dim, self.level + 1),
            RuleMethod::MonteCarlo { seed } => Self::monte_carlo(self.dim, self.len() * 2, seed),
        }
    }

    /// Integral of `f` against the normalized surface measure. Returns the
    /// value and, for Monte Carlo rules, the standard error of the estimate.
    /// Evaluations may run in parallel; the weighted sum is always taken in
    /// node order, so results are deterministic.
    pub fn integrate<F>(&self, f: F) -> CoreResult<(f64, Option<f64>)>
    where
        F: Fn(&[f64]) -> CoreResult<f64> + Sync,
    {
        let values = self.evaluate_all(&f)?;
        let mut total = 0.0;
        for (w, v) in self.weights.iter().zip(&values) {
            total += w * v;
        }
        let se = match self.method {
            RuleMethod::Product => None,
            RuleMethod::MonteCarlo { .. } => {
                let n = values.len() as f64;
                let var: f64 = values.iter().map(|v| (v - total) * (v - total)).sum::<f64>()
                    / (n - 1.0).max(1.0);
                Some((var / n).sqrt())
            }
        };
        Ok((total, se))
    }

    /// Evaluate `f` at every node, in node order.
    pub fn evaluate_all<F>(&self, f: &F) -> CoreResult<Vec<f64>>
    where
        F: Fn(&[f64]) -> CoreResult<f64> + Sync,
    {
        let eval_one = |i: usize| -> CoreResult<f64> {
            let v = f(self.node(i))?;
            if !v.is_finite() {
                return Err(CoreError::Evaluation(format!(
                    "non-finite integrand value at sphere node {i}"
                )));
            }
            Ok(v)
        };
        if self.len() >= PAR_THRESHOLD {
            (0..self.len()).into_par_iter().map(eval_one).collect()
        } else {
            (0..self.len()).map(eval_one).collect()
        }
    }
}
