//! Harmonic conjugation on the disk and the sharp conjugation constant.
//!
//! A real harmonic polynomial on the disk is stored by its Fourier data
//! u(r, theta) = a0 + sum_k r^k (a_k cos k theta + b_k sin k theta). Its
//! conjugate, normalized to vanish at the origin, is
//! v(r, theta) = sum_k r^k (a_k sin k theta - b_k cos k theta).
//!
//! The sharp constant for M_p(r, v) <= C_p M_p(r, u) is cot(pi / (2 p*))
//! with p* = max(p, p / (p - 1)); this single expression covers both
//! branches (for p < 2 it equals tan(pi / (2 p))).

use num_complex::Complex64;

use crate::error::{CoreError, CoreResult};
use crate::maps::spec::{FnMap, MapSpec};

/// Real trigonometric polynomial on the disk, harmonic by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    pub a0: f64,
    /// Cosine coefficients, a[k] belonging to frequency k + 1.
    pub a: Vec<f64>,
    /// Sine coefficients, same indexing.
    pub b: Vec<f64>,
}

impl TrigPoly {
    pub fn new(a0: f64, a: Vec<f64>, b: Vec<f64>) -> CoreResult<Self> {
        if a.len() != b.len() {
            return Err(CoreError::invalid(
                "cosine and sine coefficient lists must have equal length",
            ));
        }
        Ok(Self { a0, a, b })
    }

    /// Degree (highest frequency present).
    pub fn degree(&self) -> usize {
        self.a.len()
    }

    pub fn eval_polar(&self, r: f64, theta: f64) -> f64 {
        let mut acc = self.a0;
        let mut rk = 1.0;
        for (k, (a, b)) in self.a.iter().zip(&self.b).enumerate() {
            let freq = (k + 1) as f64;
            rk *= r;
            acc += rk * (a * (freq * theta).cos() + b * (freq * theta).sin());
        }
        acc
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
        let theta = x[1].atan2(x[0]);
        self.eval_polar(r, theta)
    }

    /// Harmonic conjugate vanishing at the origin.
    pub fn conjugate(&self) -> TrigPoly {
        TrigPoly {
            a0: 0.0,
            a: self.b.iter().map(|b| -b).collect(),
            b: self.a.clone(),
        }
    }

    /// Coefficients of the analytic completion u + iv as a disk polynomial:
    /// c_0 = a0, c_k = a_k - i b_k.
    pub fn analytic_completion(&self) -> Vec<Complex64> {
        let mut coeffs = Vec::with_capacity(self.a.len() + 1);
        coeffs.push(Complex64::new(self.a0, 0.0));
        for (a, b) in self.a.iter().zip(&self.b) {
            coeffs.push(Complex64::new(*a, -*b));
        }
        coeffs
    }

    /// The analytic completion as a disk map (value u + iv).
    pub fn completion_map(&self) -> MapSpec {
        MapSpec::disk_analytic(self.analytic_completion()).expect("nonempty coefficients")
    }

    /// Real and imaginary parts of a disk polynomial sum c_k z^k.
    pub fn split_disk_poly(coeffs: &[Complex64]) -> (TrigPoly, TrigPoly) {
        let a0 = coeffs.first().map_or(0.0, |c| c.re);
        let v0 = coeffs.first().map_or(0.0, |c| c.im);
        let mut ua = Vec::new();
        let mut ub = Vec::new();
        let mut va = Vec::new();
        let mut vb = Vec::new();
        for ck in &coeffs[1.min(coeffs.len())..] {
            // Re(c z^k) = r^k (Re c cos - Im c sin), Im likewise.
            ua.push(ck.re);
            ub.push(-ck.im);
            va.push(ck.im);
            vb.push(ck.re);
        }
        (
            TrigPoly { a0, a: ua, b: ub },
            TrigPoly {
                a0: v0,
                a: va,
                b: vb,
            },
        )
    }

    /// Exact squared 2-mean on the circle of radius r:
    /// a0^2 + (1/2) sum r^(2k) (a_k^2 + b_k^2).
    pub fn mean_sq(&self, r: f64) -> f64 {
        let mut acc = self.a0 * self.a0;
        let mut r2k = 1.0;
        let r2 = r * r;
        for (a, b) in self.a.iter().zip(&self.b) {
            r2k *= r2;
            acc += 0.5 * r2k * (a * a + b * b);
        }
        acc
    }

    /// View as a scalar map on the disk.
    pub fn ball_map(&self) -> FnMap<impl Fn(&[f64]) -> CoreResult<Vec<f64>> + Sync + '_> {
        FnMap {
            dim: 2,
            codim: 1,
            f: move |x: &[f64]| Ok(vec![self.eval(x)]),
        }
    }
}

/// p* = max(p, p / (p - 1)); requires p > 1.
pub fn p_star(p: f64) -> CoreResult<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(CoreError::invalid(format!(
            "conjugation constant needs p in (1, inf), got {p}"
        )));
    }
    Ok(p.max(p / (p - 1.0)))
}

/// Sharp conjugation constant cot(pi / (2 p*)).
pub fn conjugation_constant(p: f64) -> CoreResult<f64> {
    let ps = p_star(p)?;
    Ok(1.0 / (std::f64::consts::PI / (2.0 * ps)).tan())
}
