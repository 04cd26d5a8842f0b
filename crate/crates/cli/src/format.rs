//! Locale-free number formatting for CSV output.

/// `%.{digits}g`-style rendering: shortest of fixed or scientific notation,
/// trailing zeros removed.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let precision = digits.max(1) - 1;
    let sci = format!("{x:.precision$e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (precision as i32 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig(0.0, 12), "0");
        assert_eq!(sig(3.919927969080108, 12), "3.91992796908");
        assert_eq!(sig(-0.959963984540054, 12), "-0.95996398454");
        assert_eq!(sig(1.0, 12), "1");
        assert_eq!(sig(0.5, 12), "0.5");
        assert_eq!(sig(1e-7, 12), "1e-07");
        assert_eq!(sig(123456789012345.0, 12), "1.23456789012e+14");
        assert_eq!(sig(0.000123, 12), "0.000123");
        assert_eq!(sig(999999999999.5, 12), "1e+12");
    }
}
