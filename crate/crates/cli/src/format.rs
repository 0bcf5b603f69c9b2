//! Deterministic, locale-independent number formatting for CSV output.

/// Formats `x` with 12 significant decimal digits in plain (non-scientific)
/// notation, e.g. `1.00000000000` and `0.987688340595`.
///
/// The decimal position is taken from the exponent of the value after
/// rounding to 12 significant digits, so values like `1 - 1e-16` print as
/// `1.00000000000` rather than picking up a 13th digit.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..]
        .parse()
        .expect("exponent of formatted float");
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(0.9876883405951378), "0.987688340595");
        assert_eq!(sig12(0.0), "0.00000000000");
        assert_eq!(sig12(-0.3), "-0.300000000000");
        assert_eq!(sig12(0.005), "0.00500000000000");
        assert_eq!(sig12(123.456), "123.456000000");
    }

    #[test]
    fn rounding_does_not_gain_a_digit() {
        assert_eq!(sig12(1.0 - 1e-16), "1.00000000000");
        assert_eq!(sig12(0.09999999999999999), "0.100000000000");
    }
}
