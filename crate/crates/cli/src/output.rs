//! Number formatting and JSON emission. Every float is printed with 12
//! significant digits.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io::{self, Write};

pub const SIG_DIGITS: usize = 12;

/// `x` with [`SIG_DIGITS`] significant digits, positional unless the
/// exponent is extreme.
pub fn sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.*}", SIG_DIGITS - 1, 0.0);
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..16).contains(&exp) {
        format!("{:.*}", (SIG_DIGITS as i32 - 1 - exp).max(0) as usize, x)
    } else {
        sci
    }
}

struct SigFormatter;

impl Formatter for SigFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(sig(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with 12-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter);
    value.serialize(&mut ser).expect("serializable");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Serializes `value` and appends `wall_seconds` to the top-level object.
pub fn with_wall_seconds<T: Serialize>(value: &T, seconds: f64) -> String {
    let mut v = serde_json::to_value(value).expect("serializable");
    if let serde_json::Value::Object(map) = &mut v {
        map.insert("wall_seconds".into(), seconds.into());
    }
    to_json(&v)
}
