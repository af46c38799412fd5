//! Number formatting shared by every tabular output.

/// Scientific notation with 9 significant digits.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

#[cfg(test)]
mod tests {
    use super::sig9;

    #[test]
    fn nine_digits() {
        assert_eq!(sig9(4.82e9), "4.82000000e9");
        assert_eq!(sig9(-1.0587e-7), "-1.05870000e-7");
        assert_eq!(sig9(0.0), "0.00000000e0");
        let x = 1.234567891234;
        let back: f64 = sig9(x).parse().unwrap();
        assert!(((back - x) / x).abs() < 5e-9);
    }
}
