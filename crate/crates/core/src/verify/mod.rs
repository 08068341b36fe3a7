//! Numerical verification: reports, seeded families, checks, and suites.

pub mod checks;
pub mod families;
pub mod report;
pub mod suites;

pub use checks::{
    check_b2_consistency, check_cor_1_2, check_heinz_class, check_prop_1_1, check_riesz_planar,
    check_thm_1_3_b1, check_thm_1_5, map_label, sharpness_probe, CheckOptions,
};
pub use families::{
    beltrami_bound, disk_analytic_family, disk_poly_coeffs, empirical_dilatation,
    extension_family, holomorphic_family, planar_qr_family, pluriharmonic_family, r2_points,
    DilatationEstimate, DEFAULT_COUNT, DEFAULT_SEED, MAX_DEGREE,
};
pub use report::{params, verdict_rule, Verdict, VerificationReport};
pub use suites::{feasible_level, run_suite, suite_names, SuiteConfig, SUITE_NAMES};
