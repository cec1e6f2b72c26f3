use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::Curve;
use crate::error::{Error, Result};

/// Order labels as text prefix, then numeric suffix (P2 before P10).
pub fn label_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        (&s[..cut], s[cut..].parse().ok())
    }
    let (pa, na) = split(a);
    let (pb, nb) = split(b);
    pa.cmp(pb).then(na.cmp(&nb)).then(a.cmp(b))
}

/// A formal sum of places, keyed by label.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    coeffs: BTreeMap<String, i64>,
}

impl Divisor {
    pub fn new() -> Divisor {
        Divisor::default()
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Divisor {
        let mut d = Divisor::new();
        for (l, n) in pairs {
            d.add_at(l.as_ref(), n);
        }
        d
    }

    pub fn single(label: &str, n: i64) -> Divisor {
        Divisor::from_pairs([(label, n)])
    }

    pub fn get(&self, label: &str) -> i64 {
        *self.coeffs.get(label).unwrap_or(&0)
    }

    pub fn add_at(&mut self, label: &str, n: i64) {
        let e = self.coeffs.entry(label.to_string()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.remove(label);
        }
    }

    /// Nonzero entries in label order.
    pub fn entries(&self) -> Vec<(&str, i64)> {
        let mut v: Vec<(&str, i64)> = self.coeffs.iter().map(|(l, n)| (l.as_str(), *n)).collect();
        v.sort_by(|a, b| label_cmp(a.0, b.0));
        v
    }

    pub fn support(&self) -> Vec<&str> {
        self.entries().into_iter().map(|(l, _)| l).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&n| n >= 0)
    }

    pub fn positive_part(&self) -> Divisor {
        Divisor::from_pairs(self.coeffs.iter().filter(|(_, &n)| n > 0).map(|(l, &n)| (l.as_str(), n)))
    }

    pub fn negative_part(&self) -> Divisor {
        Divisor::from_pairs(self.coeffs.iter().filter(|(_, &n)| n < 0).map(|(l, &n)| (l.as_str(), -n)))
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (l, &n) in &o.coeffs {
            d.add_at(l, n);
        }
        d
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_pairs(self.coeffs.iter().map(|(l, &n)| (l.as_str(), n * k)))
    }

    /// self >= o coefficientwise.
    pub fn dominates(&self, o: &Divisor) -> bool {
        self.sub(o).is_effective()
    }

    pub fn degree(&self, c: &Curve) -> Result<i64> {
        let mut s = 0;
        for (l, n) in &self.coeffs {
            s += n * c.place(l)?.degree() as i64;
        }
        Ok(s)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.entries();
        if e.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, n)) in e.iter().enumerate() {
            if *n < 0 {
                write!(f, "-{}*{}", -n, l)?;
            } else if i == 0 {
                write!(f, "{}*{}", n, l)?;
            } else {
                write!(f, "+{}*{}", n, l)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor({})", self)
    }
}

/// Parse `n*L (+|- n*L)*` against the labels of `c`. A bare label counts
/// once and `0` is the zero divisor.
pub fn divisor_parse(text: &str, c: &Curve) -> Result<Divisor> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut d = Divisor::new();
    let skip_ws = |i: &mut usize| {
        while *i < b.len() && b[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let err = |pos: usize, msg: &str| Error::DivisorSyntax { pos, msg: msg.to_string() };
    skip_ws(&mut i);
    if text[i..].trim() == "0" {
        return Ok(d);
    }
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i >= b.len() {
            if first {
                return Err(err(i, "empty divisor"));
            }
            return Ok(d);
        }
        let mut sign = 1;
        if b[i] == b'+' || b[i] == b'-' {
            if b[i] == b'-' {
                sign = -1;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(err(i, "expected '+' or '-'"));
        }
        let start = i;
        let mut coeff = 1i64;
        if i < b.len() && b[i].is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            coeff = text[start..i].parse().map_err(|_| err(start, "coefficient out of range"))?;
            skip_ws(&mut i);
            if i >= b.len() || b[i] != b'*' {
                return Err(err(i, "expected '*' after coefficient"));
            }
            i += 1;
            skip_ws(&mut i);
        }
        let ls = i;
        while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
            i += 1;
        }
        if ls == i || !b[ls].is_ascii_alphabetic() {
            return Err(err(ls, "expected a place label"));
        }
        let label = &text[ls..i];
        c.place(label)?;
        d.add_at(label, sign * coeff);
        first = false;
    }
}
