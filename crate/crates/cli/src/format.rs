//! Fixed-precision text output: nine significant digits, `.` separator,
//! `\n` line endings.

use std::fmt::Write as _;

use leo_doppler_core::validation::ComparisonReport;

pub const SIGNIFICANT_DIGITS: i32 = 9;

/// Formats `v` like C's `%.9g`.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let sci = format!("{:.*e}", (SIGNIFICANT_DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("`{:e}` output has an exponent");
    let exp: i32 = exp.parse().expect("`{:e}` exponent is an integer");
    if !(-4..SIGNIFICANT_DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS - 1 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Two-column CSV with header `x_hz,value`.
pub fn value_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("x_hz,value\n");
    for &(x, v) in rows {
        let _ = writeln!(out, "{},{}", fmt_sig(x), fmt_sig(v));
    }
    out
}

pub fn report_csv(report: &ComparisonReport) -> String {
    let mut out = String::from("x_hz,cdf_analytic,cdf_emp_exact,cdf_emp_bound\n");
    for r in &report.grid {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_sig(r.x_hz),
            fmt_sig(r.analytic),
            fmt_sig(r.empirical_exact),
            fmt_sig(r.empirical_bound)
        );
    }
    out
}

pub fn summary_text(report: &ComparisonReport) -> String {
    format!(
        "ks_bound={}\nks_exact={}\nviolations={}\nexcluded={}\nexact_samples={}\nbound_samples={}\n",
        fmt_sig(report.ks_bound),
        fmt_sig(report.ks_exact),
        report.dominance_violations,
        report.excluded,
        report.exact_samples,
        report.bound_samples
    )
}
