//! Seeded test-map families and quasi-random sampling.
//!
//! Every family is a deterministic function of an explicit seed, so checks
//! that consume them are reproducible bit for bit. Random coefficients are
//! drawn uniformly from the complex unit disk with degrees at most 10 and
//! twenty maps per family unless a caller says otherwise.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::local_dilatation;
use crate::error::{CoreError, CoreResult};
use crate::maps::{
    BoundaryData, CPoly, Extension, KernelKind, MapSpec, PolyMap, SchemeRequest, Term,
};

/// Default seed for all verification families.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Default family size.
pub const DEFAULT_COUNT: usize = 20;

/// Maximum polynomial degree in the random families.
pub const MAX_DEGREE: usize = 10;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the closed complex unit disk.
fn unit_disk_coeff(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = rng.gen::<f64>().sqrt();
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(r, theta)
}

/// Coefficient lists c_0..c_d of random analytic polynomials, degree <= 10.
pub fn disk_poly_coeffs(seed: u64, count: usize) -> Vec<Vec<Complex64>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let degree = rng.gen_range(1..=MAX_DEGREE);
            (0..=degree).map(|_| unit_disk_coeff(&mut rng)).collect()
        })
        .collect()
}

/// Random analytic disk maps built from `disk_poly_coeffs`.
pub fn disk_analytic_family(seed: u64, count: usize) -> Vec<MapSpec> {
    disk_poly_coeffs(seed, count)
        .into_iter()
        .map(|c| MapSpec::disk_analytic(c).expect("nonempty coefficient list"))
        .collect()
}

/// Planar harmonic quasiregular maps f = h + conj(g) with |g'| <= kappa |h'|.
///
/// h' = 1 + sum a_k z^k with sum |a_k| <= 0.3, so h' never vanishes on the
/// closed disk, and g' = kappa z^m h'. The distortion is then exactly
/// kappa |z|^m <= kappa everywhere, so (1 + kappa)/(1 - kappa) dominates the
/// true dilatation and any interior sample estimate stays below it.
pub fn planar_qr_family(seed: u64, count: usize, kappa: f64) -> CoreResult<Vec<MapSpec>> {
    if !(0.0..1.0).contains(&kappa) {
        return Err(CoreError::invalid(format!(
            "planar family needs kappa in [0, 1), got {kappa}"
        )));
    }
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let raw: Vec<Complex64> = (0..5).map(|_| unit_disk_coeff(&mut rng)).collect();
        let total: f64 = raw.iter().map(|c| c.norm()).sum();
        let budget = 0.3 * rng.gen::<f64>();
        let scale = if total > 0.0 { budget / total } else { 0.0 };
        let mut dh = vec![Complex64::new(1.0, 0.0)];
        dh.extend(raw.iter().map(|c| c * scale));

        let m = rng.gen_range(0..=3usize);
        let mut dg = vec![Complex64::new(0.0, 0.0); m];
        dg.extend(dh.iter().map(|c| c * kappa));

        let mut h = crate::maps::poly::antiderivative(&dh);
        let g = crate::maps::poly::antiderivative(&dg);
        h[0] = unit_disk_coeff(&mut rng);
        out.push(MapSpec::planar_harmonic(h, g)?);
    }
    Ok(out)
}

/// Pluriharmonic pairs (h, g) on the unit ball of C^n with g = kappa (h - h(0)).
///
/// h is the identity plus a small polynomial perturbation, kept tiny enough
/// that Dh stays invertible on the closed ball. The second Beltrami tensor is
/// then kappa times the identity, so the family sits inside the kappa class
/// by construction; `second_beltrami_within` re-checks that on samples.
pub fn pluriharmonic_family(
    seed: u64,
    count: usize,
    n: usize,
    kappa: f64,
) -> CoreResult<Vec<MapSpec>> {
    if n == 0 {
        return Err(CoreError::invalid("pluriharmonic family needs n >= 1"));
    }
    if !(0.0..1.0).contains(&kappa) {
        return Err(CoreError::invalid(format!(
            "pluriharmonic family needs kappa in [0, 1), got {kappa}"
        )));
    }
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut components = Vec::with_capacity(n);
        for j in 0..n {
            let mut terms = vec![Term {
                coeff: Complex64::new(1.0, 0.0),
                powers: coordinate_powers(n, j),
            }];
            for _ in 0..2 {
                let mut powers = vec![0u32; n];
                let degree = rng.gen_range(1..=3u32);
                for _ in 0..degree {
                    powers[rng.gen_range(0..n)] += 1;
                }
                terms.push(Term {
                    // 0.04 per term bounds the perturbation of Dh by
                    // 2 * 3 * 0.04 * sqrt(n) in Frobenius norm, well under 1.
                    coeff: unit_disk_coeff(&mut rng) * 0.04,
                    powers,
                });
            }
            components.push(CPoly::new(n, terms)?);
        }
        let h = PolyMap::new(components)?;
        let g = shift_scale(&h, kappa)?;
        out.push(MapSpec::pluriharmonic(h, g)?);
    }
    Ok(out)
}

fn coordinate_powers(n: usize, j: usize) -> Vec<u32> {
    let mut powers = vec![0u32; n];
    powers[j] = 1;
    powers
}

/// kappa * (h - h(0)) as a polynomial map; vanishes at the origin.
fn shift_scale(h: &PolyMap, kappa: f64) -> CoreResult<PolyMap> {
    let scale = Complex64::new(kappa, 0.0);
    let components = h
        .components()
        .iter()
        .map(|c| {
            let shifted = c.plus(&CPoly::new(
                c.nvars(),
                vec![Term {
                    coeff: -c.constant_term(),
                    powers: vec![0; c.nvars()],
                }],
            )?)?;
            Ok(shifted.scaled(scale))
        })
        .collect::<CoreResult<Vec<_>>>()?;
    PolyMap::new(components)
}

/// Holomorphic near-identity maps of C^n for pointwise distortion checks.
pub fn holomorphic_family(seed: u64, count: usize, n: usize) -> CoreResult<Vec<PolyMap>> {
    pluriharmonic_family(seed, count, n, 0.0)?
        .into_iter()
        .map(|spec| match spec {
            MapSpec::PluriharmonicPair { h, .. } => Ok(h),
            _ => Err(CoreError::invalid("expected a pluriharmonic pair")),
        })
        .collect()
}

/// Harmonic or invariant-harmonic extensions of perturbed coordinate data.
///
/// Boundary data is phi_j(zeta) = zeta_j + (quadratic perturbation), so the
/// extensions stay close to the identity but are not radial.
pub fn extension_family(
    seed: u64,
    count: usize,
    kind: KernelKind,
    n: usize,
    level: u32,
) -> CoreResult<Vec<MapSpec>> {
    if n < 2 {
        return Err(CoreError::invalid("extension family needs ball dimension >= 2"));
    }
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        // Draw a small quadratic form per component: amp * zeta_a * zeta_b.
        let coeffs: Vec<(f64, usize, usize)> = (0..n)
            .map(|_| {
                (
                    rng.gen_range(-0.3..0.3),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )
            })
            .collect();
        let shift: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.2..0.2)).collect();
        let dim = n;
        let boundary = BoundaryData::closure(dim, dim, move |zeta: &[f64]| {
            (0..dim)
                .map(|j| {
                    let (amp, a, b) = coeffs[j];
                    zeta[j] + amp * zeta[a] * zeta[b] + shift[j]
                })
                .collect()
        });
        let ext = Extension::new(kind, boundary, level)?;
        out.push(match kind {
            KernelKind::Euclidean => MapSpec::HarmonicExtension(ext),
            KernelKind::Hyperbolic => MapSpec::InvariantHarmonicExtension(ext),
        });
    }
    Ok(out)
}

/// Low-discrepancy points in the ball of radius `scale`, dimension `dim`.
///
/// Kronecker sequence with the generalized plastic constant, mapped to the
/// cube [-1, 1]^d and filtered to the unit ball before scaling. Deterministic
/// for a given (dim, count, scale).
pub fn r2_points(dim: usize, count: usize, scale: f64) -> Vec<Vec<f64>> {
    assert!(dim >= 1, "need a positive dimension");
    assert!((0.0..1.0).contains(&scale.abs()) || scale == 1.0);
    // gamma solves x^(d+1) = x + 1; alpha_j = gamma^-(j+1).
    let mut gamma = 1.5f64;
    for _ in 0..64 {
        let f = gamma.powi(dim as i32 + 1) - gamma - 1.0;
        let df = (dim as f64 + 1.0) * gamma.powi(dim as i32) - 1.0;
        gamma -= f / df;
    }
    let alpha: Vec<f64> = (1..=dim).map(|j| gamma.powi(-(j as i32))).collect();

    let mut out = Vec::with_capacity(count);
    let mut n = 0u64;
    while out.len() < count {
        n += 1;
        let point: Vec<f64> = alpha
            .iter()
            .map(|a| 2.0 * ((0.5 + a * n as f64).fract()) - 1.0)
            .collect();
        let norm_sq: f64 = point.iter().map(|x| x * x).sum();
        if norm_sq <= 1.0 {
            out.push(point.iter().map(|x| x * scale).collect());
        }
        assert!(n < 10_000_000, "ball rejection sampling stalled");
    }
    out
}

/// Empirical maximal dilatation over a point sample.
#[derive(Debug, Clone, Copy)]
pub struct DilatationEstimate {
    /// max over samples of |Df|^d / det Df; infinite if any sample degenerates.
    pub k_hat: f64,
    pub samples: usize,
    pub degenerate: usize,
}

impl DilatationEstimate {
    pub fn is_finite(&self) -> bool {
        self.k_hat.is_finite()
    }
}

/// Sample local dilatations and keep the maximum.
///
/// The estimate never exceeds the true maximal dilatation: it is a maximum
/// over finitely many interior points of the same pointwise quantity.
pub fn empirical_dilatation(
    map: &MapSpec,
    points: &[Vec<f64>],
    scheme: SchemeRequest,
) -> CoreResult<DilatationEstimate> {
    if points.is_empty() {
        return Err(CoreError::invalid("dilatation estimate needs sample points"));
    }
    let mut k_hat = 1.0f64;
    let mut degenerate = 0usize;
    for x in points {
        let jet = map.jet(x, scheme)?;
        let sample = local_dilatation(&jet)?;
        if sample.is_finite() {
            k_hat = k_hat.max(sample.k);
        } else {
            degenerate += 1;
            k_hat = f64::INFINITY;
        }
    }
    Ok(DilatationEstimate {
        k_hat,
        samples: points.len(),
        degenerate,
    })
}

/// Largest second-Beltrami operator norm over a sample; used to confirm a
/// claimed kappa class membership a posteriori.
pub fn beltrami_bound(
    map: &MapSpec,
    points: &[Vec<f64>],
    scheme: SchemeRequest,
) -> CoreResult<f64> {
    let mut worst = 0.0f64;
    for x in points {
        let jet = map.jet(x, scheme)?;
        let omega = crate::calculus::second_beltrami(&jet)?;
        worst = worst.max(crate::calculus::op_norm_complex(&omega));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_deterministic_per_seed() {
        let a = disk_poly_coeffs(DEFAULT_SEED, 5);
        let b = disk_poly_coeffs(DEFAULT_SEED, 5);
        assert_eq!(a, b);
        let c = disk_poly_coeffs(DEFAULT_SEED + 1, 5);
        assert_ne!(a, c);
        for coeffs in &a {
            assert!(coeffs.len() >= 2 && coeffs.len() <= MAX_DEGREE + 1);
            assert!(coeffs.iter().all(|z| z.norm() <= 1.0 + 1e-12));
        }
    }

    #[test]
    fn planar_family_respects_the_distortion_budget() {
        let maps = planar_qr_family(DEFAULT_SEED, 6, 0.4).unwrap();
        let points = r2_points(2, 40, 0.95);
        for map in &maps {
            let bound = beltrami_bound(map, &points, SchemeRequest::Analytic).unwrap();
            assert!(bound <= 0.4 + 1e-12, "beltrami bound {bound}");
            let est = empirical_dilatation(map, &points, SchemeRequest::Analytic).unwrap();
            assert!(est.is_finite());
            assert!(est.k_hat <= (1.0 + 0.4) / (1.0 - 0.4) + 1e-9);
        }
    }

    #[test]
    fn pluriharmonic_family_has_exact_kappa_beltrami() {
        let maps = pluriharmonic_family(DEFAULT_SEED, 4, 2, 0.5).unwrap();
        let points = r2_points(4, 25, 0.9);
        for map in &maps {
            // g(0) = 0 was enforced by the constructor; the Beltrami tensor
            // is kappa I at every point, hence exactly kappa in norm.
            let bound = beltrami_bound(map, &points, SchemeRequest::Analytic).unwrap();
            assert!((bound - 0.5).abs() <= 1e-12, "bound {bound}");
        }
    }

    #[test]
    fn r2_points_fill_the_ball_deterministically() {
        let pts = r2_points(3, 200, 0.95);
        assert_eq!(pts.len(), 200);
        let again = r2_points(3, 200, 0.95);
        assert_eq!(pts, again);
        let mut max_norm = 0.0f64;
        for p in &pts {
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(norm <= 0.95 + 1e-12);
            max_norm = max_norm.max(norm);
        }
        // The sample is not clustered near the origin.
        assert!(max_norm > 0.8, "max norm {max_norm}");
    }

    #[test]
    fn extension_family_members_evaluate() {
        use crate::maps::BallMap;
        let maps =
            extension_family(DEFAULT_SEED, 2, KernelKind::Euclidean, 3, 3).unwrap();
        for map in &maps {
            let val = map.eval(&[0.2, 0.1, -0.3]).unwrap();
            assert_eq!(val.len(), 3);
            assert!(val.iter().all(|v| v.is_finite()));
        }
    }

    #[test]
    fn degenerate_jacobian_is_flagged_not_hidden() {
        // f(z) = z^2 has a critical point at 0.
        let map = MapSpec::disk_analytic(vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        let est = empirical_dilatation(
            &map,
            &[vec![0.0, 0.0], vec![0.5, 0.0]],
            SchemeRequest::Analytic,
        )
        .unwrap();
        assert!(!est.is_finite());
        assert_eq!(est.degenerate, 1);
    }
}
