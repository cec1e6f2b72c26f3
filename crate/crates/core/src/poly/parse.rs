//! expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
//! factor := coeff | var ('^' int)? | '(' expr ')'
//!
//! A leading sign on a term and a power on a parenthesised group are also
//! accepted. Juxtaposition such as `2X` is rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Form, Mono, PolyError};
use crate::gf::FieldCtx;

type Sparse = BTreeMap<Mono, u64>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(s[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            other => {
                return Err(PolyError::Syntax { pos: start, msg: format!("unexpected character '{}'", other) });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    ctx: &'a FieldCtx,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.end)
    }
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Sparse, PolyError> {
        let mut acc = self.signed_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    let t = self.term()?;
                    acc = add(self.ctx, &acc, &t, false);
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    let t = self.term()?;
                    acc = add(self.ctx, &acc, &t, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<Sparse, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.i += 1;
                let t = self.term()?;
                Ok(add(self.ctx, &Sparse::new(), &t, true))
            }
            Some(Tok::Plus) => {
                self.i += 1;
                self.term()
            }
            _ => self.term(),
        }
    }

    fn term(&mut self) -> Result<Sparse, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.i += 1;
                    let f = self.factor()?;
                    acc = mul(self.ctx, &acc, &f);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    return self.err("implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                let v = n.parse::<u32>().ok().filter(|&v| v <= 4096);
                match v {
                    Some(v) => {
                        self.i += 1;
                        Ok(v)
                    }
                    None => self.err("exponent too large"),
                }
            }
            _ => self.err("expected an integer exponent after '^'"),
        }
    }

    fn factor(&mut self) -> Result<Sparse, PolyError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                let p = self.ctx.p();
                let v = n.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(constant(v))
            }
            Some(Tok::Ident(name)) => {
                let var = match name.as_str() {
                    "X" | "X0" => 0,
                    "Y" | "X1" => 1,
                    "Z" | "X2" => 2,
                    _ => return Err(PolyError::UnknownVariable { pos, name }),
                };
                self.i += 1;
                let mut e = 1;
                if self.peek() == Some(&Tok::Caret) {
                    self.i += 1;
                    e = self.exponent()?;
                }
                let mut exps = [0; 3];
                exps[var] = e;
                Ok(Sparse::from([(Mono(exps), 1)]))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.i += 1;
                if self.peek() == Some(&Tok::Caret) {
                    self.i += 1;
                    let e = self.exponent()?;
                    let mut acc = constant(1);
                    for _ in 0..e {
                        acc = mul(self.ctx, &acc, &inner);
                    }
                    return Ok(acc);
                }
                Ok(inner)
            }
            Some(_) => self.err("expected a coefficient, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn constant(v: u64) -> Sparse {
    let mut s = Sparse::new();
    if v != 0 {
        s.insert(Mono([0, 0, 0]), v);
    }
    s
}

fn add(f: &FieldCtx, a: &Sparse, b: &Sparse, negate: bool) -> Sparse {
    let mut out = a.clone();
    for (m, &c) in b {
        let c = if negate { f.neg(c) } else { c };
        let e = out.entry(*m).or_insert(0);
        *e = f.add(*e, c);
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mul(f: &FieldCtx, a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (m1, &c1) in a {
        for (m2, &c2) in b {
            let e = out.entry(m1.mul(m2)).or_insert(0);
            *e = f.add(*e, f.mul(c1, c2));
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Parse a homogeneous polynomial with coefficients reduced mod p.
/// An expression that cancels to zero yields the zero form of degree 0.
pub fn parse_form(text: &str, ctx: &Arc<FieldCtx>) -> Result<Form, PolyError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(PolyError::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, i: 0, end: text.len(), ctx };
    let s = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("unexpected token");
    }
    let Some((&hi, _)) = s.iter().next_back() else {
        return Ok(Form::zero(ctx, 0));
    };
    let (&lo, _) = s.iter().next().unwrap();
    if hi.degree() != lo.degree() {
        return Err(PolyError::NotHomogeneous {
            first: hi.to_string(),
            first_degree: hi.degree(),
            second: lo.to_string(),
            second_degree: lo.degree(),
        });
    }
    Ok(Form::from_terms(ctx, hi.degree(), s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;
    use proptest::prelude::*;

    #[test]
    fn parses_quartic() {
        let f2 = field_make(2, 1).unwrap();
        let h = parse_form("X^3*Z+X^4+Y^3*Z+Y*Z^3", &f2).unwrap();
        assert_eq!(h.degree(), 4);
        assert_eq!(h.to_string(), "X^4+X^3*Z+Y^3*Z+Y*Z^3");
    }

    #[test]
    fn aliases_and_groups() {
        let f3 = field_make(3, 1).unwrap();
        let a = parse_form("(X0+X1)^2 - X2*X2", &f3).unwrap();
        let b = parse_form("X^2+2*X*Y+Y^2+2*Z^2", &f3).unwrap();
        assert_eq!(a, b);
        let c = parse_form("-X^3 + Y^2*Z", &f3).unwrap();
        assert_eq!(c.to_string(), "2*X^3+Y^2*Z");
    }

    #[test]
    fn rejects_juxtaposition() {
        let f2 = field_make(2, 1).unwrap();
        assert!(matches!(parse_form("2X", &f2), Err(PolyError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_form("X Y", &f2), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn reports_unknown_variable() {
        let f2 = field_make(2, 1).unwrap();
        assert_eq!(
            parse_form("X+W", &f2).unwrap_err(),
            PolyError::UnknownVariable { pos: 2, name: "W".into() }
        );
    }

    #[test]
    fn reports_inhomogeneous_terms() {
        let f2 = field_make(2, 1).unwrap();
        match parse_form("X^2+Y", &f2).unwrap_err() {
            PolyError::NotHomogeneous { first, second, .. } => {
                assert_eq!(first, "X^2");
                assert_eq!(second, "Y");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let f2 = field_make(2, 1).unwrap();
        assert!(matches!(parse_form("X^", &f2), Err(PolyError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_form("(X+Y", &f2), Err(PolyError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_form("X+#", &f2), Err(PolyError::Syntax { pos: 2, .. })));
    }

    fn arb_form() -> impl Strategy<Value = (u64, u32, Vec<u64>)> {
        (prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], 0u32..6).prop_flat_map(|(p, d)| {
            let n = ((d + 1) * (d + 2) / 2) as usize;
            (Just(p), Just(d), proptest::collection::vec(0..p, n))
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip((p, d, coeffs) in arb_form()) {
            let ctx = field_make(p, 1).unwrap();
            let h = Form::from_dense(&ctx, d, &coeffs);
            prop_assume!(!h.is_zero());
            let back = parse_form(&h.to_string(), &ctx).unwrap();
            prop_assert_eq!(back, h);
        }
    }
}
