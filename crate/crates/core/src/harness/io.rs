//! JSON interchange. Rationals travel as strings, `"p"` or `"p/q"` on
//! output; input also accepts JSON integers and decimal fractions such as
//! `"-1.25"`.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::HarnessError;
use crate::duality::PointSet;
use crate::exact::{Line, Point2, Rational};

pub const FORMAT: &str = "arrcolor/1";

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, HarnessError> {
    let bad = || HarnessError::Format(format!("not a rational: {s:?}"));
    let s = s.trim();
    let int = |t: &str| -> Result<BigInt, HarnessError> {
        if t.is_empty() || t.starts_with('+') && t.len() == 1 {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    if let Some((p, q)) = s.split_once('/') {
        let q = int(q)?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(int(p)?, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mut numer = int(&digits)?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    Ok(Rational::from_integer(int(s)?))
}

/// `#[serde(with = "rational_serde")]` for [`Rational`] fields.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => parse_rational(&s).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Rational::from_integer(BigInt::from(i))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    #[serde(with = "rational_serde")]
    pub a: Rational,
    #[serde(with = "rational_serde")]
    pub b: Rational,
    #[serde(with = "rational_serde")]
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    #[serde(with = "rational_serde")]
    pub x: Rational,
    #[serde(with = "rational_serde")]
    pub y: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinesFile {
    #[serde(default = "default_format")]
    pub format: String,
    pub lines: Vec<LineRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsFile {
    #[serde(default = "default_format")]
    pub format: String,
    pub points: Vec<PointRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    #[serde(default = "default_format")]
    pub format: String,
    pub colors: Vec<usize>,
    pub k: usize,
    pub seed: u64,
}

fn default_format() -> String {
    FORMAT.to_string()
}

fn check_format(format: &str) -> Result<(), HarnessError> {
    if format == FORMAT {
        Ok(())
    } else {
        Err(HarnessError::Format(format!("unsupported format {format:?}, expected {FORMAT:?}")))
    }
}

impl LinesFile {
    pub fn from_lines(lines: &[Line]) -> LinesFile {
        LinesFile {
            format: FORMAT.into(),
            lines: lines
                .iter()
                .map(|l| {
                    let (a, b, c) = l.coefficients();
                    LineRecord { a, b, c }
                })
                .collect(),
        }
    }

    /// Normalized lines; a degenerate record is a format error.
    pub fn to_lines(&self) -> Result<Vec<Line>, HarnessError> {
        check_format(&self.format)?;
        self.lines
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Line::new(r.a.clone(), r.b.clone(), r.c.clone())
                    .map_err(|e| HarnessError::Format(format!("line {i}: {e}")))
            })
            .collect()
    }
}

impl PointsFile {
    pub fn from_points(ps: &PointSet) -> PointsFile {
        PointsFile {
            format: FORMAT.into(),
            points: ps.points().iter().map(|p| PointRecord { x: p.x.clone(), y: p.y.clone() }).collect(),
        }
    }

    pub fn to_points(&self) -> Result<PointSet, HarnessError> {
        check_format(&self.format)?;
        PointSet::new(self.points.iter().map(|r| Point2::new(r.x.clone(), r.y.clone())).collect())
            .map_err(|e| HarnessError::Precondition(e.to_string()))
    }
}

impl ColoringFile {
    pub fn new(colors: Vec<usize>, seed: u64) -> ColoringFile {
        let k = colors.iter().max().map_or(0, |&c| c + 1);
        ColoringFile { format: FORMAT.into(), colors, k, seed }
    }
}

/// Pretty JSON with a trailing newline; deterministic for equal values.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, HarnessError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), HarnessError> {
    fs::write(path, to_json(value)?).map_err(|e| HarnessError::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_lines(path: &Path) -> Result<Vec<Line>, HarnessError> {
    read_json::<LinesFile>(path)?.to_lines()
}

pub fn read_points(path: &Path) -> Result<PointSet, HarnessError> {
    read_json::<PointsFile>(path)?.to_points()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("0.5").unwrap(), ratio(1, 2));
        for bad in ["", "1/0", "x", "1.", "1/", "--1", "1.2.3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lines_file_shape() {
        let lines = vec![Line::from_ints(1, 0, 0).unwrap(), Line::from_ints(0, 2, 1).unwrap()];
        let json = serde_json::to_value(LinesFile::from_lines(&lines)).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "format": "arrcolor/1",
                "lines": [{"a": "1", "b": "0", "c": "0"}, {"a": "0", "b": "2", "c": "1"}]
            })
        );
    }

    #[test]
    fn lines_file_accepts_integers_and_fractions() {
        let text = r#"{"lines":[{"a":1,"b":"0","c":"1/2"},{"a":"0.5","b":-1,"c":0}]}"#;
        let lines = serde_json::from_str::<LinesFile>(text).unwrap().to_lines().unwrap();
        assert_eq!(lines[0], Line::from_ints(2, 0, 1).unwrap());
        assert_eq!(lines[1], Line::from_ints(1, -2, 0).unwrap());
        let bad = r#"{"format":"other/9","lines":[]}"#;
        assert!(serde_json::from_str::<LinesFile>(bad).unwrap().to_lines().is_err());
    }

    proptest! {
        #[test]
        fn rational_text_round_trips(n in any::<i64>(), d in 1i64..1_000_000) {
            let r = ratio(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }

        #[test]
        fn lines_round_trip(raw in prop::collection::vec((-1000i64..1000, -1000i64..1000, -1000i64..1000), 1..10)) {
            let lines: Vec<Line> = raw.iter().filter_map(|&(a, b, c)| Line::from_ints(a, b, c).ok()).collect();
            let text = to_json(&LinesFile::from_lines(&lines)).unwrap();
            let back = serde_json::from_str::<LinesFile>(&text).unwrap().to_lines().unwrap();
            prop_assert_eq!(back, lines);
        }
    }
}
