//! Text form of complex scalars and sphere points.
//!
//! Grammar: `inf` | `<real>` | `<real><sign><unsigned>i` | `<sign><unsigned>i`.
//! No whitespace is allowed. Formatting uses the shortest decimal that
//! round-trips, so `format` followed by `parse` is lossless.

use crate::error::{Error, Result};
use crate::sphere::{Complex, SpherePoint};

fn parse_real(s: &str, whole: &str) -> Result<f64> {
    if s.is_empty() || s.contains(|c: char| c.is_whitespace()) {
        return Err(Error::Parse(format!("invalid complex literal `{whole}`")));
    }
    // `f64::from_str` also accepts "inf"/"nan", which are not reals here.
    if !s
        .trim_start_matches(['+', '-'])
        .starts_with(|c: char| c.is_ascii_digit() || c == '.')
    {
        return Err(Error::Parse(format!("invalid complex literal `{whole}`")));
    }
    let v: f64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("invalid complex literal `{whole}`")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("non-finite component in `{whole}`")));
    }
    Ok(v)
}

/// Parses a finite complex literal (`inf` is rejected).
pub fn parse_complex(s: &str) -> Result<Complex> {
    let bad = || Error::Parse(format!("invalid complex literal `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(parse_real(s, s)?, 0.0));
    };
    // Split at the last sign that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => {
            let im_part = &body[i..];
            let im_digits = &im_part[1..];
            if im_digits.starts_with(['+', '-']) {
                return Err(bad());
            }
            let im = if im_digits.is_empty() {
                1.0
            } else {
                parse_real(im_digits, s)?
            };
            let sign = if im_part.starts_with('-') { -1.0 } else { 1.0 };
            (parse_real(&body[..i], s)?, sign * im)
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => parse_real(body, s)?,
            };
            (0.0, im)
        }
    };
    Ok(Complex::new(re, im))
}

/// Parses a sphere point: `inf` or a complex literal.
pub fn parse_point(s: &str) -> Result<SpherePoint> {
    if s == "inf" {
        Ok(SpherePoint::infinity())
    } else {
        parse_complex(s).map(SpherePoint::finite)
    }
}

fn fmt_real(x: f64) -> String {
    // normalizes -0
    format!("{}", x + 0.0)
}

/// Formats a complex scalar in the literal grammar.
pub fn format_complex(z: Complex) -> String {
    let (re, im) = (z.re + 0.0, z.im + 0.0);
    if im == 0.0 {
        fmt_real(re)
    } else if re == 0.0 {
        format!("{}i", fmt_real(im))
    } else if im < 0.0 {
        format!("{}-{}i", fmt_real(re), fmt_real(-im))
    } else {
        format!("{}+{}i", fmt_real(re), fmt_real(im))
    }
}

/// Formats a sphere point; infinity prints as `inf`.
pub fn format_point(p: &SpherePoint) -> String {
    match p.to_finite() {
        Some(z) => format_complex(z),
        None => "inf".to_string(),
    }
}

/// Serde adapters for fields holding complex scalars as literal strings.
pub mod serde_complex {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_complex(*z))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex, D::Error> {
        let s = String::deserialize(d)?;
        parse_complex(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            v: &[Complex],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for z in v {
                seq.serialize_element(&format_complex(*z))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Complex>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_complex(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

/// Serde adapter for lists of sphere points.
pub mod serde_points {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[SpherePoint],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for p in v {
            seq.serialize_element(&format_point(p))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<SpherePoint>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_point(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_grammar_examples() {
        assert_eq!(parse_complex("-6").unwrap(), Complex::new(-6.0, 0.0));
        assert_eq!(
            parse_complex("-2+1.4142135623730951i").unwrap(),
            Complex::new(-2.0, std::f64::consts::SQRT_2)
        );
        assert_eq!(parse_complex("1i").unwrap(), Complex::new(0.0, 1.0));
        assert_eq!(parse_complex("-1i").unwrap(), Complex::new(0.0, -1.0));
        assert_eq!(parse_complex("2-0.5i").unwrap(), Complex::new(2.0, -0.5));
        assert_eq!(parse_complex("1e-3+2e5i").unwrap(), Complex::new(1e-3, 2e5));
        assert!(parse_point("inf").unwrap().is_infinity());
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "inf+1i", "nan", "1 +2i", "1+-2i", "abc", "1+2", "--1", "i2"] {
            assert!(parse_complex(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn formats_compactly() {
        assert_eq!(format_complex(Complex::new(-6.0, 0.0)), "-6");
        assert_eq!(format_complex(Complex::new(0.0, 1.0)), "1i");
        assert_eq!(format_complex(Complex::new(-0.0, -0.0)), "0");
        assert_eq!(format_complex(Complex::new(2.0, -1.5)), "2-1.5i");
        assert_eq!(format_point(&SpherePoint::infinity()), "inf");
    }

    proptest! {
        #[test]
        fn literal_roundtrip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = Complex::new(re, im);
            prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }
}
