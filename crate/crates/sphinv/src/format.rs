//! Number formatting for human and machine output.

/// `x` to `digits` significant digits, plain notation for moderate
/// magnitudes and scientific otherwise.
pub fn significant(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{}e{}", mantissa, exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Shortest decimal that parses back to `x`; non-finite values as strings.
pub fn json_number(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::Value::from(x)
    } else {
        serde_json::Value::from(significant(x, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_digits() {
        assert_eq!(significant(0.7390851332151607, 6), "0.739085");
        assert_eq!(significant(2.798386045783887, 6), "2.79839");
        assert_eq!(significant(-0.3365084, 6), "-0.336508");
        assert_eq!(significant(0.0, 6), "0");
        assert_eq!(significant(1.0, 6), "1");
        assert_eq!(significant(123456789.0, 6), "1.23457e8");
        assert_eq!(significant(1.5e-7, 6), "1.5e-7");
        assert_eq!(significant(f64::NEG_INFINITY, 6), "-inf");
        assert_eq!(significant(99999.95, 6), "99999.9");
    }

    #[test]
    fn json_round_trip() {
        for x in [0.1, 1.0 / 3.0, 0.7390851332151607, -1.7832434280487487, 5e-324, 1e300] {
            let s = json_number(x).to_string();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(json_number(f64::INFINITY), serde_json::Value::from("inf"));
    }
}
