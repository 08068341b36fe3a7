//! `verify`: run one suite, print a record per check, emit a report CSV.

use anyhow::{ensure, Result};
use rieszlab_core::verify::{run_suite, SuiteConfig, Verdict, VerificationReport};

use crate::output::{csv_row, stamp_line, write_out};
use crate::VerifyArgs;

pub const REPORT_HEADER: &str = "suite,check,params,lhs,rhs,margin,err,verdict";

/// Drop repeated values, keeping first occurrences: grids are sets, and
/// duplicate entries would duplicate report keys.
fn dedup(xs: Vec<f64>) -> Vec<f64> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for x in xs {
        if !seen.contains(&x.to_bits()) {
            seen.push(x.to_bits());
            out.push(x);
        }
    }
    out
}

fn validated(args: &VerifyArgs) -> Result<SuiteConfig> {
    if let Some(ps) = &args.p {
        for &p in ps {
            ensure!(p > 0.0 && p.is_finite(), "--p values must be positive, got {p}");
        }
    }
    if let Some(rs) = &args.r {
        for &r in rs {
            ensure!((0.0..1.0).contains(&r), "--r values must lie in [0, 1), got {r}");
        }
    }
    if let Some(ks) = &args.k {
        for &k in ks {
            ensure!(k >= 1.0 && k.is_finite(), "--K values must be at least 1, got {k}");
        }
    }
    if let Some(level) = args.level {
        ensure!(level >= 1, "--level must be at least 1");
    }
    Ok(SuiteConfig {
        seed: args.seed,
        level: args.level,
        ps: args.p.clone().map(dedup),
        rs: args.r.clone().map(dedup),
        ks: args.k.clone().map(dedup),
        kappa: args.kappa,
        tolerance: args.tolerance,
        count: None,
    })
}

/// Serialize reports in record order, params as `key=value` pairs joined
/// by `;` inside one field.
pub fn report_csv(suite: &str, reports: &[VerificationReport]) -> String {
    let mut body = String::from(REPORT_HEADER);
    body.push('\n');
    for rep in reports {
        let params: Vec<String> = rep
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        body.push_str(&csv_row(&[
            suite,
            &rep.check_name,
            &params.join(";"),
            &rep.lhs.to_string(),
            &rep.rhs.to_string(),
            &rep.margin.to_string(),
            &rep.err.to_string(),
            &rep.verdict.to_string(),
        ]));
    }
    body
}

/// 0 all pass, 1 any fail, 3 inconclusive with none failing.
pub fn exit_code(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        1
    } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        3
    } else {
        0
    }
}

pub fn run(args: &VerifyArgs) -> Result<u8> {
    let cfg = validated(args)?;
    let reports = run_suite(&args.suite, &cfg)?;

    for rep in &reports {
        println!("{}", rep.summary_line());
    }
    let (pass, fail, inconclusive) = reports.iter().fold((0, 0, 0), |(p, f, i), r| match r.verdict {
        Verdict::Pass => (p + 1, f, i),
        Verdict::Fail => (p, f + 1, i),
        Verdict::Inconclusive => (p, f, i + 1),
    });
    println!(
        "{}: {} checks, {pass} pass, {fail} fail, {inconclusive} inconclusive",
        args.suite,
        reports.len()
    );

    if args.out.is_some() {
        let mut content = stamp_line(args.timestamp).unwrap_or_default();
        content.push_str(&report_csv(&args.suite, &reports));
        write_out(args.out.as_deref(), &content)?;
    }
    Ok(exit_code(&reports))
}
