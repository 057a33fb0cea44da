//! Text formatting of floating-point results.

/// Significant digits in all numeric report output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds `x` to 12 significant digits and prints the shortest decimal
/// that reads back as the rounded value.
pub fn sig(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("valid float text");
    if rounded == 0.0 {
        return "0".into();
    }
    let exp = rounded.abs().log10().floor() as i32;
    if (-5..16).contains(&exp) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Like [`sig`], with an empty field for missing values.
pub fn sig_opt(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_default()
}
