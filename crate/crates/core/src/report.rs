//! CSV and text rendering of certificates and sweep rows.

use crate::bounds::BoundReport;

/// Formats like C's `%.10g`: ten significant digits, trailing zeros removed,
/// scientific notation outside `1e-4 ≤ |x| < 1e10`.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..10).contains(&exp) {
        let decimals = (9 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub const REPORT_HEADER: &str = "K,f_greedy,S,R,B,alpha,alpha_G,bound_new,bound_cc,bound_classical";

/// One CSV row matching [`REPORT_HEADER`].
pub fn report_csv_row(r: &BoundReport) -> String {
    [r.f_greedy, r.s, r.r, r.b, r.alpha, r.alpha_g, r.bound_new, r.bound_cc, r.bound_classical]
        .iter()
        .fold(r.k.to_string(), |mut line, v| {
            line.push(',');
            line.push_str(&format_sig(*v));
            line
        })
}

pub const SWEEP_HEADER: &str = "lambda,delta,K,f_greedy,S,R,B,alpha,alpha_G,bound_new,bound_cc,bound_classical";

/// One decay rate of the coverage benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub delta: f64,
    pub report: BoundReport,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!("{},{},{}", format_sig(self.lambda), format_sig(self.delta), report_csv_row(&self.report))
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(8.0 / 11.0), "0.7272727273");
        assert_eq!(format_sig(1.0 - (-1f64).exp()), "0.6321205588");
        assert_eq!(format_sig(123456.789), "123456.789");
        assert_eq!(format_sig(f64::INFINITY), "inf");
        assert_eq!(format_sig(1.5e-7), "1.5e-07");
        assert_eq!(format_sig(2.5e12), "2.5e+12");
        assert_eq!(format_sig(0.00012345678901), "0.000123456789");
        assert_eq!(format_sig(-3.25), "-3.25");
    }

    #[test]
    fn header_matches_fields() {
        assert_eq!(SWEEP_HEADER.split(',').count(), 12);
        assert_eq!(REPORT_HEADER.split(',').count(), 10);
    }
}
