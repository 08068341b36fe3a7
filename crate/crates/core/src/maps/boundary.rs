//! Boundary data for Poisson-type extensions: either a closure on the
//! sphere or a grid of samples with nearest-node lookup.

use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, CoreResult};

type BoundaryFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// Samples of a boundary map on a fixed set of sphere points.
#[derive(Debug, Clone)]
pub struct BoundaryGrid {
    dim: usize,
    codim: usize,
    /// Flat point storage, `dim` coordinates per point; points must lie on
    /// the unit sphere.
    points: Vec<f64>,
    /// Flat value storage, `codim` components per point.
    values: Vec<f64>,
}

impl BoundaryGrid {
    pub fn new(dim: usize, codim: usize, points: Vec<f64>, values: Vec<f64>) -> CoreResult<Self> {
        if dim < 2 || codim == 0 {
            return Err(CoreError::invalid(
                "boundary grid needs dim >= 2 and at least one component",
            ));
        }
        if points.is_empty() || points.len() % dim != 0 {
            return Err(CoreError::invalid(
                "boundary grid point storage must be a nonempty multiple of dim",
            ));
        }
        let count = points.len() / dim;
        if values.len() != count * codim {
            return Err(CoreError::invalid(format!(
                "boundary grid has {count} points but {} values for codim {codim}",
                values.len()
            )));
        }
        for p in points.chunks_exact(dim) {
            let norm: f64 = p.iter().map(|c| c * c).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-9 {
                return Err(CoreError::invalid(format!(
                    "boundary grid point has norm {norm}, expected 1"
                )));
            }
        }
        Ok(Self {
            dim,
            codim,
            points,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Values at the grid point nearest to `zeta` (Euclidean distance,
    /// first match wins on ties).
    pub fn nearest(&self, zeta: &[f64]) -> &[f64] {
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for (i, p) in self.points.chunks_exact(self.dim).enumerate() {
            let d: f64 = p
                .iter()
                .zip(zeta)
                .map(|(a, b)| {
                    let t = a - b;
                    t * t
                })
                .sum();
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        &self.values[best * self.codim..(best + 1) * self.codim]
    }
}

/// Boundary map on S^{n-1} supplied as a closure or as grid samples.
#[derive(Clone)]
pub enum BoundaryData {
    Closure {
        dim: usize,
        codim: usize,
        f: Arc<BoundaryFn>,
    },
    Grid(BoundaryGrid),
}

impl BoundaryData {
    /// Wrap a closure producing `codim` components per sphere point.
    pub fn closure<F>(dim: usize, codim: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        BoundaryData::Closure {
            dim,
            codim,
            f: Arc::new(f),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            BoundaryData::Closure { dim, .. } => *dim,
            BoundaryData::Grid(g) => g.dim,
        }
    }

    pub fn codim(&self) -> usize {
        match self {
            BoundaryData::Closure { codim, .. } => *codim,
            BoundaryData::Grid(g) => g.codim,
        }
    }

    /// Evaluate at a sphere point.
    pub fn eval(&self, zeta: &[f64]) -> CoreResult<Vec<f64>> {
        let out = match self {
            BoundaryData::Closure { f, .. } => f(zeta),
            BoundaryData::Grid(g) => g.nearest(zeta).to_vec(),
        };
        if out.len() != self.codim() {
            return Err(CoreError::Evaluation(format!(
                "boundary map returned {} components, expected {}",
                out.len(),
                self.codim()
            )));
        }
        if out.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::Evaluation(
                "boundary map returned a non-finite value".to_string(),
            ));
        }
        Ok(out)
    }
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryData::Closure { dim, codim, .. } => f
                .debug_struct("Closure")
                .field("dim", dim)
                .field("codim", codim)
                .finish(),
            BoundaryData::Grid(g) => f
                .debug_struct("Grid")
                .field("dim", &g.dim)
                .field("codim", &g.codim)
                .field("points", &g.len())
                .finish(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_lookup_picks_closest_point() {
        let grid = BoundaryGrid::new(
            2,
            1,
            vec![1.0, 0.0, 0.0, 1.0, -1.0, 0.0, 0.0, -1.0],
            vec![10.0, 20.0, 30.0, 40.0],
        )
        .unwrap();
        assert_eq!(grid.nearest(&[0.9, 0.1]), &[10.0]);
        assert_eq!(grid.nearest(&[-0.1, -0.9]), &[40.0]);
    }

    #[test]
    fn grid_rejects_off_sphere_points() {
        assert!(BoundaryGrid::new(2, 1, vec![0.5, 0.0], vec![1.0]).is_err());
    }

    #[test]
    fn closure_checks_arity() {
        let b = BoundaryData::closure(2, 2, |z: &[f64]| vec![z[0]]);
        assert!(b.eval(&[1.0, 0.0]).is_err());
    }
}
