//! CSV output for the bound tables.

use welbound_core::asymptotics::BoundReport;
use welbound_core::PolygonSpec;

use crate::format::family_name;

pub const CSV_HEADER: &str = "family,d,d1,d2,n,log_lb,n_ln_n,ratio,target";

/// Formats with 12 significant digits, plain decimal notation.
pub fn format_significant(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Round to 12 significant digits via exponent normalization.
    let exp = x.abs().log10().floor() as i32;
    let digits_after_point = (11 - exp).max(0) as usize;
    let s = format!("{:.*}", digits_after_point, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn bound_csv(spec: &PolygonSpec, report: &BoundReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let d1 = spec.d1.map(|v| v.to_string()).unwrap_or_default();
    let d2 = spec.d2.map(|v| v.to_string()).unwrap_or_default();
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            family_name(spec.family),
            spec.d,
            d1,
            d2,
            row.n,
            format_significant(row.log_lb),
            format_significant(row.n_ln_n),
            format_significant(row.ratio),
            format_significant(report.target),
        ));
    }
    out
}
