//! Line-oriented curve description:
//!
//! ```text
//! # comment
//! [curve]
//! p = 2
//! F = X^3*Z + X^4 + Y^3*Z + Y*Z^3
//! [places]
//! P1 = 0,1,1
//! ```

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub p: u64,
    pub form: String,
    /// Pinned labels with integer homogeneous coordinates.
    pub pinned: Vec<(String, [i64; 3])>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::CurveFile { line, msg: msg.into() }
}

pub fn parse_curve_file(text: &str) -> Result<CurveSpec> {
    let mut section = "";
    let mut p = None;
    let mut form = None;
    let mut pinned: Vec<(String, [i64; 3])> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            section = match line {
                "[curve]" => "curve",
                "[places]" => "places",
                _ => return Err(err(line_no, format!("unknown section {}", line))),
            };
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(line_no, "expected key = value"))?;
        match section {
            "curve" => match key {
                "p" => {
                    let v: u64 = value.parse().map_err(|_| err(line_no, format!("bad prime '{}'", value)))?;
                    p = Some(v);
                }
                "F" => form = Some(value.to_string()),
                _ => return Err(err(line_no, format!("unknown key '{}'", key))),
            },
            "places" => {
                if key.is_empty() || !key.chars().next().unwrap().is_ascii_alphabetic() {
                    return Err(err(line_no, format!("bad label '{}'", key)));
                }
                if !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(err(line_no, format!("bad label '{}'", key)));
                }
                let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(err(line_no, "expected three coordinates"));
                }
                let mut c = [0i64; 3];
                for (i, s) in parts.iter().enumerate() {
                    c[i] = s.parse().map_err(|_| err(line_no, format!("bad coordinate '{}'", s)))?;
                }
                if pinned.iter().any(|(l, _)| l == key) {
                    return Err(err(line_no, format!("label {} pinned twice", key)));
                }
                pinned.push((key.to_string(), c));
            }
            _ => return Err(err(line_no, "entry outside of a section")),
        }
    }
    Ok(CurveSpec {
        p: p.ok_or_else(|| err(0, "missing p in [curve]"))?,
        form: form.ok_or_else(|| err(0, "missing F in [curve]"))?,
        pinned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_sections() {
        let s = parse_curve_file("# quartic\n[curve]\np = 2\nF = X^4+X^3*Z+Y^3*Z+Y*Z^3\n\n[places]\nP1 = 0,1,0\nQ = 0, 0, 1\n").unwrap();
        assert_eq!(s.p, 2);
        assert_eq!(s.pinned, vec![("P1".to_string(), [0, 1, 0]), ("Q".to_string(), [0, 0, 1])]);
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(parse_curve_file("[curve]\np=2\nbogus\n").unwrap_err(), err(3, "expected key = value"));
        assert!(matches!(parse_curve_file("[curve]\np=2\n"), Err(Error::CurveFile { .. })));
    }
}
