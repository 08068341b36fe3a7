//! Complex polynomials in one and several variables: evaluation, formal
//! partial derivatives, and Horner helpers for the single-variable case.

use num_complex::Complex64;

use crate::error::{CoreError, CoreResult};

/// Evaluate a polynomial given by ascending coefficients at z.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// First derivative of a coefficient list (ascending powers).
pub fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

/// Antiderivative with zero constant term.
pub fn antiderivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(Complex64::new(0.0, 0.0));
    out.extend(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c / (k as f64 + 1.0)),
    );
    out
}

/// One monomial c * z_1^{p_1} ... z_n^{p_n}.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub powers: Vec<u32>,
}

/// Polynomial in several complex variables, stored as a term list.
#[derive(Debug, Clone, PartialEq)]
pub struct CPoly {
    nvars: usize,
    terms: Vec<Term>,
}

impl CPoly {
    pub fn new(nvars: usize, terms: Vec<Term>) -> CoreResult<Self> {
        if nvars == 0 {
            return Err(CoreError::invalid("polynomial needs at least one variable"));
        }
        for t in &terms {
            if t.powers.len() != nvars {
                return Err(CoreError::invalid(format!(
                    "term has {} exponents, expected {nvars}",
                    t.powers.len()
                )));
            }
        }
        Ok(Self { nvars, terms })
    }

    /// The zero polynomial.
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: Vec::new(),
        }
    }

    /// The coordinate monomial z_j.
    pub fn coordinate(nvars: usize, j: usize) -> Self {
        let mut powers = vec![0u32; nvars];
        powers[j] = 1;
        Self {
            nvars,
            terms: vec![Term {
                coeff: Complex64::new(1.0, 0.0),
                powers,
            }],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Value at the given constant term, i.e. the polynomial at z = 0.
    pub fn constant_term(&self) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.powers.iter().all(|p| *p == 0))
            .map(|t| t.coeff)
            .sum()
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut m = t.coeff;
            for (zj, p) in z.iter().zip(&t.powers) {
                m *= zj.powu(*p);
            }
            acc += m;
        }
        acc
    }

    /// Formal partial derivative with respect to z_j.
    pub fn partial(&self, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.powers[j] > 0)
            .map(|t| {
                let mut powers = t.powers.clone();
                let p = powers[j];
                powers[j] = p - 1;
                Term {
                    coeff: t.coeff * p as f64,
                    powers,
                }
            })
            .collect();
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    /// Scale every coefficient.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff * c,
                    powers: t.powers.clone(),
                })
                .collect(),
        }
    }

    /// Sum of two polynomials over the same variables.
    pub fn plus(&self, other: &Self) -> CoreResult<Self> {
        if self.nvars != other.nvars {
            return Err(CoreError::invalid("polynomial variable counts differ"));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.clone());
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }
}

/// Polynomial map C^n -> C^n given componentwise, with cached partials.
#[derive(Debug, Clone)]
pub struct PolyMap {
    n: usize,
    components: Vec<CPoly>,
    partials: Vec<Vec<CPoly>>,
}

impl PolyMap {
    pub fn new(components: Vec<CPoly>) -> CoreResult<Self> {
        let n = components.len();
        if n == 0 {
            return Err(CoreError::invalid("polynomial map needs components"));
        }
        for c in &components {
            if c.nvars() != n {
                return Err(CoreError::invalid(format!(
                    "component over {} variables in a {n}-variable map",
                    c.nvars()
                )));
            }
        }
        let partials = components
            .iter()
            .map(|c| (0..n).map(|j| c.partial(j)).collect())
            .collect();
        Ok(Self {
            n,
            components,
            partials,
        })
    }

    /// The identity map z -> z.
    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|j| CPoly::coordinate(n, j)).collect())
            .expect("identity map is well formed")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[CPoly] {
        &self.components
    }

    pub fn eval(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    pub fn value_at_zero(&self) -> Vec<Complex64> {
        self.components.iter().map(|c| c.constant_term()).collect()
    }

    /// Complex Jacobian entries d f_k / d z_j, row-major by component.
    pub fn jacobian(&self, z: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for row in &self.partials {
            for p in row {
                out.push(p.eval(z));
            }
        }
        out
    }

    /// Map with every coefficient scaled.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self::new(self.components.iter().map(|p| p.scaled(c)).collect())
            .expect("scaling preserves shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn horner_and_derivative_agree_with_direct_sums() {
        let coeffs = vec![c(1.0, 0.0), c(0.0, 2.0), c(-0.5, 0.0)];
        let z = c(0.3, -0.4);
        let direct = coeffs[0] + coeffs[1] * z + coeffs[2] * z * z;
        assert_abs_diff_eq!((horner(&coeffs, z) - direct).norm(), 0.0, epsilon = 1e-15);
        let d = derivative(&coeffs);
        let direct_d = coeffs[1] + coeffs[2] * z * 2.0;
        assert_abs_diff_eq!((horner(&d, z) - direct_d).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn antiderivative_inverts_derivative() {
        let coeffs = vec![c(2.0, 1.0), c(0.0, -3.0), c(1.0, 1.0)];
        let back = derivative(&antiderivative(&coeffs));
        for (a, b) in coeffs.iter().zip(&back) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
        assert_eq!(antiderivative(&coeffs)[0], c(0.0, 0.0));
    }

    #[test]
    fn multivariate_partials_match_hand_computation() {
        // p(z) = z1^2 z2 + 3 z2
        let p = CPoly::new(
            2,
            vec![
                Term {
                    coeff: c(1.0, 0.0),
                    powers: vec![2, 1],
                },
                Term {
                    coeff: c(3.0, 0.0),
                    powers: vec![0, 1],
                },
            ],
        )
        .unwrap();
        let z = [c(0.5, 0.2), c(-0.3, 0.1)];
        let expect = z[0] * z[0] * z[1] + z[1] * 3.0;
        assert_abs_diff_eq!((p.eval(&z) - expect).norm(), 0.0, epsilon = 1e-15);
        let d1 = p.partial(0).eval(&z); // 2 z1 z2
        assert_abs_diff_eq!((d1 - z[0] * z[1] * 2.0).norm(), 0.0, epsilon = 1e-15);
        let d2 = p.partial(1).eval(&z); // z1^2 + 3
        assert_abs_diff_eq!((d2 - (z[0] * z[0] + 3.0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn identity_map_has_identity_jacobian() {
        let id = PolyMap::identity(3);
        let z = [c(0.1, 0.2), c(0.3, -0.1), c(-0.2, 0.0)];
        let jac = id.jacobian(&z);
        for r in 0..3 {
            for col in 0..3 {
                let expect = if r == col { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(jac[r * 3 + col].re, expect, epsilon = 1e-15);
                assert_abs_diff_eq!(jac[r * 3 + col].im, 0.0, epsilon = 1e-15);
            }
        }
    }
}
