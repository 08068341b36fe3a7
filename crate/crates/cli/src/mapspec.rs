//! Map files: TOML descriptions of the supported map families.
//!
//! One table per file with a `kind` field naming the family plus
//! family-specific fields; complex numbers are `[re, im]` pairs and all
//! numbers parse at full double precision. The schema is documented in
//! docs/mapspec.md; fields that do not belong to the named kind are
//! rejected rather than ignored.

use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use rieszlab_core::maps::{BoundaryData, CPoly, MapSpec, PolyMap, Term};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    kind: String,
    /// disk_analytic: Taylor coefficients a_0, a_1, ...
    coeffs: Option<Vec<[f64; 2]>>,
    /// planar_harmonic: f = h + conj(g) as coefficient lists.
    h: Option<Vec<[f64; 2]>>,
    g: Option<Vec<[f64; 2]>>,
    /// sharpness: local dilatation K >= 1.
    #[serde(rename = "K")]
    k: Option<f64>,
    /// shear: second-dilatation bound kappa in [0, 1).
    kappa: Option<f64>,
    /// extensions: ambient dimension and boundary rule level.
    dim: Option<usize>,
    level: Option<u32>,
    /// extensions: one boundary polynomial per codomain component.
    boundary: Option<Vec<RealPoly>>,
    /// pluriharmonic: variable count and polynomial components.
    nvars: Option<usize>,
    h_poly: Option<Vec<ComplexPoly>>,
    g_poly: Option<Vec<ComplexPoly>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RealPoly {
    terms: Vec<RealTerm>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RealTerm {
    coeff: f64,
    powers: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexPoly {
    terms: Vec<ComplexTerm>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexTerm {
    coeff: [f64; 2],
    powers: Vec<u32>,
}

impl RealPoly {
    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.coeff
                    * t.powers
                        .iter()
                        .zip(x)
                        .map(|(&pw, &xi)| xi.powi(pw as i32))
                        .product::<f64>()
            })
            .sum()
    }
}

fn to_complex(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn to_cpoly(nvars: usize, doc: &ComplexPoly) -> Result<CPoly> {
    let terms = doc
        .terms
        .iter()
        .map(|t| Term {
            coeff: Complex64::new(t.coeff[0], t.coeff[1]),
            powers: t.powers.clone(),
        })
        .collect();
    Ok(CPoly::new(nvars, terms)?)
}

/// Load and validate a map file.
pub fn load(path: &Path) -> Result<MapSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read map file {}", path.display()))?;
    let doc: MapFile =
        toml::from_str(&text).with_context(|| format!("malformed map file {}", path.display()))?;
    build(doc).with_context(|| format!("invalid map file {}", path.display()))
}

fn build(doc: MapFile) -> Result<MapSpec> {
    let present: Vec<&str> = [
        ("coeffs", doc.coeffs.is_some()),
        ("h", doc.h.is_some()),
        ("g", doc.g.is_some()),
        ("K", doc.k.is_some()),
        ("kappa", doc.kappa.is_some()),
        ("dim", doc.dim.is_some()),
        ("level", doc.level.is_some()),
        ("boundary", doc.boundary.is_some()),
        ("nvars", doc.nvars.is_some()),
        ("h_poly", doc.h_poly.is_some()),
        ("g_poly", doc.g_poly.is_some()),
    ]
    .into_iter()
    .filter_map(|(name, set)| set.then_some(name))
    .collect();
    let allowed: &[&str] = match doc.kind.as_str() {
        "disk_analytic" => &["coeffs"],
        "planar_harmonic" => &["h", "g"],
        "sharpness" => &["K"],
        "shear" => &["kappa"],
        "harmonic_extension" | "invariant_harmonic_extension" => &["dim", "level", "boundary"],
        "pluriharmonic" => &["nvars", "h_poly", "g_poly"],
        other => bail!(
            "unknown kind {other:?}; expected one of disk_analytic, planar_harmonic, \
             sharpness, shear, harmonic_extension, invariant_harmonic_extension, pluriharmonic"
        ),
    };
    if let Some(extra) = present.iter().find(|f| !allowed.contains(f)) {
        bail!("field {extra:?} does not apply to kind {:?}", doc.kind);
    }

    match doc.kind.as_str() {
        "disk_analytic" => {
            let coeffs = doc.coeffs.context("disk_analytic needs coeffs = [[re, im], ...]")?;
            Ok(MapSpec::disk_analytic(to_complex(&coeffs))?)
        }
        "planar_harmonic" => {
            let h = doc.h.context("planar_harmonic needs h = [[re, im], ...]")?;
            let mut g = doc.g.map(|g| to_complex(&g)).unwrap_or_default();
            if g.is_empty() {
                g.push(Complex64::new(0.0, 0.0));
            }
            Ok(MapSpec::planar_harmonic(to_complex(&h), g)?)
        }
        "sharpness" => {
            let k = doc.k.context("sharpness needs K >= 1")?;
            Ok(MapSpec::sharpness(k)?)
        }
        "shear" => {
            let kappa = doc.kappa.context("shear needs kappa in [0, 1)")?;
            Ok(MapSpec::shear(kappa)?)
        }
        kind @ ("harmonic_extension" | "invariant_harmonic_extension") => {
            let dim = doc.dim.context("extensions need dim >= 2")?;
            let level = doc.level.unwrap_or(4);
            let polys = doc
                .boundary
                .context("extensions need [[boundary]] tables with term lists")?;
            if polys.is_empty() {
                bail!("boundary data needs at least one component");
            }
            for (j, poly) in polys.iter().enumerate() {
                if let Some(t) = poly.terms.iter().find(|t| t.powers.len() != dim) {
                    bail!(
                        "boundary component {j}: term has {} exponents, expected {dim}",
                        t.powers.len()
                    );
                }
            }
            let codim = polys.len();
            let data = BoundaryData::closure(dim, codim, move |zeta: &[f64]| {
                polys.iter().map(|poly| poly.eval(zeta)).collect()
            });
            Ok(if kind == "harmonic_extension" {
                MapSpec::harmonic_extension(data, level)?
            } else {
                MapSpec::invariant_harmonic_extension(data, level)?
            })
        }
        "pluriharmonic" => {
            let nvars = doc.nvars.context("pluriharmonic needs nvars >= 1")?;
            let h_docs = doc
                .h_poly
                .context("pluriharmonic needs [[h_poly]] tables with term lists")?;
            if h_docs.len() != nvars {
                bail!(
                    "pluriharmonic maps are square: expected {nvars} [[h_poly]] components, got {}",
                    h_docs.len()
                );
            }
            if let Some(g_docs) = &doc.g_poly {
                if g_docs.len() != nvars {
                    bail!(
                        "pluriharmonic maps are square: expected {nvars} [[g_poly]] components, got {}",
                        g_docs.len()
                    );
                }
            }
            let h_components: Vec<CPoly> = h_docs
                .iter()
                .map(|p| to_cpoly(nvars, p))
                .collect::<Result<_>>()?;
            let g_components: Vec<CPoly> = match doc.g_poly {
                Some(g_docs) => g_docs
                    .iter()
                    .map(|p| to_cpoly(nvars, p))
                    .collect::<Result<_>>()?,
                None => vec![CPoly::zero(nvars); h_components.len()],
            };
            let h = PolyMap::new(h_components)?;
            let g = PolyMap::new(g_components)?;
            Ok(MapSpec::pluriharmonic(h, g)?)
        }
        _ => unreachable!("kind was validated above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rieszlab_core::maps::BallMap;

    fn parse(text: &str) -> Result<MapSpec> {
        build(toml::from_str(text).unwrap())
    }

    #[test]
    fn parses_each_kind() {
        let disk = parse("kind = \"disk_analytic\"\ncoeffs = [[0, 0], [1, 0], [0.25, -0.5]]")
            .unwrap();
        assert_eq!(disk.domain_dim(), 2);

        let pair = parse(concat!(
            "kind = \"pluriharmonic\"\n",
            "nvars = 2\n",
            "[[h_poly]]\n",
            "terms = [{ coeff = [1, 0], powers = [1, 0] }]\n",
            "[[h_poly]]\n",
            "terms = [{ coeff = [1, 0], powers = [0, 1] }]\n",
            "[[g_poly]]\n",
            "terms = [{ coeff = [0.5, 0], powers = [1, 0] }]\n",
            "[[g_poly]]\n",
            "terms = []\n",
        ))
        .unwrap();
        assert_eq!(pair.domain_dim(), 4);

        let ext = parse(concat!(
            "kind = \"harmonic_extension\"\n",
            "dim = 3\n",
            "level = 2\n",
            "[[boundary]]\n",
            "terms = [{ coeff = 1.0, powers = [1, 0, 0] }]\n",
        ))
        .unwrap();
        assert_eq!(ext.domain_dim(), 3);
        let v = ext.eval(&[0.0, 0.0, 0.0]).unwrap();
        assert!(v[0].abs() < 1e-12, "linear data extends to 0 at the origin");
    }

    #[test]
    fn rejects_foreign_fields_and_bad_exponent_counts() {
        let err = parse("kind = \"sharpness\"\nK = 2.0\nkappa = 0.1").unwrap_err();
        assert!(err.to_string().contains("kappa"));

        let err = parse(concat!(
            "kind = \"harmonic_extension\"\n",
            "dim = 3\n",
            "[[boundary]]\n",
            "terms = [{ coeff = 1.0, powers = [1, 0] }]\n",
        ))
        .unwrap_err();
        assert!(err.to_string().contains("expected 3"));
    }

    #[test]
    fn integer_literals_parse_as_doubles() {
        let map = parse("kind = \"sharpness\"\nK = 2").unwrap();
        match map {
            MapSpec::SharpnessExample { k } => assert_eq!(k, 2.0),
            other => panic!("wrong variant: {other:?}"),
        }
    }
}
