//! Deterministic numeric text output: every floating-point number in CSVs
//! and JSON reports is rendered with 17 significant digits, enough to
//! round-trip any f64 bit pattern, so identical runs produce byte-identical
//! artifacts.

use serde_json::ser::Formatter;
use std::io;

/// 17-significant-digit scientific notation (`{:.16e}`).
pub fn sig17(value: f64) -> String {
    format!("{value:.16e}")
}

/// Joins one CSV row of numbers in [`sig17`] form.
pub fn csv_row(values: &[f64]) -> String {
    let mut row = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            row.push(',');
        }
        row.push_str(&sig17(*v));
    }
    row
}

/// JSON formatter that writes all f64 values with 17 significant digits.
/// (`3.69e0`-style exponents are valid JSON.) Everything else uses the
/// compact defaults.
pub struct Sig17Formatter;

impl Formatter for Sig17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any `Serialize` value to compact JSON with [`Sig17Formatter`]
/// numbers, plus a trailing newline.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17Formatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_round_trips_f64_exactly() {
        for v in [
            (4.0 - 2.0_f64.sqrt()) / 0.7,
            0.1,
            -1.0 / 3.0,
            1e-300,
            17.311670374,
        ] {
            let text = sig17(v);
            let back: f64 = text.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{text}");
        }
    }

    #[test]
    fn csv_row_is_comma_joined() {
        let row = csv_row(&[1.0, 2.5]);
        assert_eq!(row, "1.0000000000000000e0,2.5000000000000000e0");
    }

    #[test]
    fn json_floats_use_17_digits() {
        #[derive(serde::Serialize)]
        struct Demo {
            x: f64,
        }
        let text = to_json_string(&Demo { x: 0.1 });
        assert_eq!(text, "{\"x\":1.0000000000000001e-1}\n");
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["x"].as_f64().unwrap(), 0.1);
    }
}
