//! Locale-independent number formatting with 12 significant digits.

use crate::linalg::C64;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%.12g`: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros trimmed.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= p as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `a+bi` with components below `1e-12·|z|` printed as zero.
pub fn fmt_complex(z: C64) -> String {
    let scale = z.norm() * 1e-12;
    let clean = |v: f64| if v.abs() <= scale { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    if im < 0.0 {
        format!("{}-{}i", fmt_num(re), fmt_num(-im))
    } else {
        format!("{}+{}i", fmt_num(re), fmt_num(im))
    }
}
