use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{local_indices, BiPoly, PolyError, VAR_NAMES};
use crate::gf::{format_elem, FieldCtx, GfError};

/// Exponent vector of X^a Y^b Z^c.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub [u32; 3]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..3).all(|i| self.0[i] <= o.0[i])
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

// graded lex, X > Y > Z
impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.degree(), self.0[0], self.0[1], self.0[2]).cmp(&(o.degree(), o.0[0], o.0[1], o.0[2]))
    }
}
impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(VAR_NAMES[i].to_string()),
                _ => parts.push(format!("{}^{}", VAR_NAMES[i], e)),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// All monomials of degree `n`, largest first.
pub fn monomials(n: u32) -> Vec<Mono> {
    let mut out = Vec::with_capacity(((n + 1) * (n + 2) / 2) as usize);
    for a in (0..=n).rev() {
        for b in (0..=n - a).rev() {
            out.push(Mono([a, b, n - a - b]));
        }
    }
    out
}

/// A homogeneous polynomial in X, Y, Z.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    ctx: Arc<FieldCtx>,
    degree: u32,
    terms: BTreeMap<Mono, u64>,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({})", self)
    }
}

impl Form {
    pub fn zero(ctx: &Arc<FieldCtx>, degree: u32) -> Form {
        Form { ctx: ctx.clone(), degree, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: u64) -> Form {
        Form::from_terms(ctx, 0, [(Mono([0, 0, 0]), c)])
    }

    pub fn var(ctx: &Arc<FieldCtx>, i: usize) -> Form {
        let mut e = [0; 3];
        e[i] = 1;
        Form::from_terms(ctx, 1, [(Mono(e), 1)])
    }

    /// Collect terms, summing repeated monomials; all must have degree `degree`.
    pub fn from_terms(ctx: &Arc<FieldCtx>, degree: u32, terms: impl IntoIterator<Item = (Mono, u64)>) -> Form {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.degree(), degree, "term of wrong degree");
            let e = map.entry(m).or_insert(0);
            *e = ctx.add(*e, c);
        }
        map.retain(|_, c| *c != 0);
        Form { ctx: ctx.clone(), degree, terms: map }
    }

    pub fn from_dense(ctx: &Arc<FieldCtx>, degree: u32, coeffs: &[u64]) -> Form {
        let monos = monomials(degree);
        assert_eq!(monos.len(), coeffs.len());
        Form::from_terms(ctx, degree, monos.into_iter().zip(coeffs.iter().copied()))
    }

    /// Coefficients against `monomials(self.degree())`.
    pub fn to_dense(&self) -> Vec<u64> {
        monomials(self.degree).iter().map(|m| self.coeff(m)).collect()
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, m: &Mono) -> u64 {
        *self.terms.get(m).unwrap_or(&0)
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (Mono, u64)> + '_ {
        self.terms.iter().rev().map(|(m, c)| (*m, *c))
    }

    pub fn leading(&self) -> Option<(Mono, u64)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, *c))
    }

    fn same_field(&self, o: &Form) {
        assert!(*self.ctx == *o.ctx, "forms over different fields");
    }

    pub fn add(&self, o: &Form) -> Form {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.combine(o, true)
    }

    fn combine(&self, o: &Form, negate: bool) -> Form {
        self.same_field(o);
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.scale(self.ctx.neg(1)) } else { o.clone() };
        }
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        let mut out = self.terms.clone();
        for (m, &c) in &o.terms {
            let c = if negate { self.ctx.neg(c) } else { c };
            let e = out.entry(*m).or_insert(0);
            *e = self.ctx.add(*e, c);
        }
        out.retain(|_, c| *c != 0);
        Form { ctx: self.ctx.clone(), degree: self.degree, terms: out }
    }

    pub fn scale(&self, c: u64) -> Form {
        let terms = self
            .terms
            .iter()
            .map(|(m, &x)| (*m, self.ctx.mul(x, c)))
            .filter(|(_, x)| *x != 0)
            .collect();
        Form { ctx: self.ctx.clone(), degree: self.degree, terms }
    }

    pub fn mul(&self, o: &Form) -> Form {
        self.same_field(o);
        let mut out: BTreeMap<Mono, u64> = BTreeMap::new();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &o.terms {
                let e = out.entry(m1.mul(m2)).or_insert(0);
                *e = self.ctx.add(*e, self.ctx.mul(c1, c2));
            }
        }
        out.retain(|_, c| *c != 0);
        Form { ctx: self.ctx.clone(), degree: self.degree + o.degree, terms: out }
    }

    pub fn pow(&self, e: u32) -> Form {
        let mut acc = Form::constant(&self.ctx, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Form {
        if self.degree == 0 {
            return Form::zero(&self.ctx, 0);
        }
        let mut out = Vec::new();
        for (m, &c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0;
            e[i] -= 1;
            let f = self.ctx.from_int((m.0[i] as u64 % self.ctx.p()) as i64);
            out.push((Mono(e), self.ctx.mul(c, f)));
        }
        Form::from_terms(&self.ctx, self.degree - 1, out)
    }

    /// Value at a point with coordinates in `ext`; the form must be defined
    /// over `ext` itself or over its prime field.
    pub fn eval(&self, ext: &FieldCtx, pt: &[u64; 3]) -> Result<u64, GfError> {
        self.check_coeff_field(ext)?;
        let mut pw: [Vec<u64>; 3] = Default::default();
        for i in 0..3 {
            pw[i].push(1);
            for e in 1..=self.degree as usize {
                let prev = pw[i][e - 1];
                pw[i].push(ext.mul(prev, pt[i]));
            }
        }
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let v = ext.mul(ext.mul(pw[0][m.0[0] as usize], pw[1][m.0[1] as usize]), pw[2][m.0[2] as usize]);
            acc = ext.add(acc, ext.mul(c, v));
        }
        Ok(acc)
    }

    pub(crate) fn check_coeff_field(&self, ext: &FieldCtx) -> Result<(), GfError> {
        if self.ctx.p() != ext.p() || (self.ctx.k() != 1 && *self.ctx != *ext) {
            return Err(GfError::MixedFields);
        }
        Ok(())
    }

    /// Multivariate division by `g` in graded-lex order.
    pub fn divrem(&self, g: &Form) -> (Form, Form) {
        self.same_field(g);
        let (lm, lc) = g.leading().expect("division by zero form");
        let inv = self.ctx.inv(lc).unwrap();
        let qdeg = self.degree.saturating_sub(g.degree);
        let mut q: BTreeMap<Mono, u64> = BTreeMap::new();
        let mut rem: BTreeMap<Mono, u64> = BTreeMap::new();
        let mut p = self.terms.clone();
        while let Some((&m, &c)) = p.iter().next_back() {
            if self.degree >= g.degree && lm.divides(&m) {
                let qm = Mono([m.0[0] - lm.0[0], m.0[1] - lm.0[1], m.0[2] - lm.0[2]]);
                let qc = self.ctx.mul(c, inv);
                *q.entry(qm).or_insert(0) = qc;
                for (gm, &gc) in &g.terms {
                    let e = p.entry(qm.mul(gm)).or_insert(0);
                    *e = self.ctx.sub(*e, self.ctx.mul(qc, gc));
                }
                p.retain(|_, c| *c != 0);
            } else {
                rem.insert(m, c);
                p.remove(&m);
            }
        }
        (
            Form { ctx: self.ctx.clone(), degree: qdeg, terms: q },
            Form { ctx: self.ctx.clone(), degree: self.degree, terms: rem },
        )
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Form {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ctx.inv(c).unwrap()),
        }
    }
}

pub fn form_divides(g: &Form, h: &Form) -> bool {
    if g.is_zero() {
        return h.is_zero();
    }
    if h.is_zero() {
        return true;
    }
    if g.degree() > h.degree() {
        return false;
    }
    h.divrem(g).1.is_zero()
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let cs = format_elem(&self.ctx, c);
            let cs = if self.ctx.k() > 1 && cs.contains('+') { format!("({})", cs) } else { cs };
            if m.degree() == 0 {
                f.write_str(&cs)?;
            } else if c == 1 {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", cs, m)?;
            }
        }
        Ok(())
    }
}

/// A point of P^2 with coordinates in some F_{p^k}, normalized so that its
/// chart coordinate (the last nonzero one) equals 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint {
    ctx: Arc<FieldCtx>,
    coords: [u64; 3],
}

impl ProjPoint {
    pub fn new(ctx: &Arc<FieldCtx>, coords: [u64; 3]) -> Option<ProjPoint> {
        let i = (0..3).rev().find(|&i| coords[i] != 0)?;
        let inv = ctx.inv(coords[i]).ok()?;
        let c = [ctx.mul(coords[0], inv), ctx.mul(coords[1], inv), ctx.mul(coords[2], inv)];
        Some(ProjPoint { ctx: ctx.clone(), coords: c })
    }
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn coords(&self) -> &[u64; 3] {
        &self.coords
    }
    /// Index of the coordinate normalized to 1.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| self.coords[i] != 0).unwrap()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|&x| format_elem(&self.ctx, x)).collect();
        write!(f, "[{}]", c.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Set the chart coordinate to 1 and move `center` to the origin. The result
/// lives over the field of the center; local coordinates follow
/// [`local_indices`].
pub fn dehomogenize(h: &Form, chart: usize, center: &ProjPoint) -> Result<BiPoly, PolyError> {
    let ctx = center.ctx();
    h.check_coeff_field(ctx)?;
    let cc = center.coords()[chart];
    if cc == 0 {
        return Err(PolyError::BadChart);
    }
    let inv = ctx.inv(cc)?;
    let (i, j) = local_indices(chart);
    let (ci, cj) = (ctx.mul(center.coords()[i], inv), ctx.mul(center.coords()[j], inv));
    let n = h.degree() as usize;
    // (x + c)^e as coefficient lists
    let shifted = |c: u64| {
        let mut out: Vec<Vec<u64>> = vec![vec![1]];
        for e in 1..=n {
            let prev = &out[e - 1];
            let mut next = vec![0u64; e + 1];
            for (r, &a) in prev.iter().enumerate() {
                next[r + 1] = ctx.add(next[r + 1], a);
                next[r] = ctx.add(next[r], ctx.mul(a, c));
            }
            out.push(next);
        }
        out
    };
    let (px, py) = (shifted(ci), shifted(cj));
    let mut terms: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for (m, c) in h.terms() {
        let (ei, ej) = (m.0[i] as usize, m.0[j] as usize);
        for (a, &u) in px[ei].iter().enumerate() {
            if u == 0 {
                continue;
            }
            let cu = ctx.mul(c, u);
            for (b, &v) in py[ej].iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let e = terms.entry((a as u32, b as u32)).or_insert(0);
                *e = ctx.add(*e, ctx.mul(cu, v));
            }
        }
    }
    Ok(BiPoly::from_map(ctx, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;
    use crate::poly::parse_form;

    #[test]
    fn monomial_order() {
        let m = monomials(2);
        let s: Vec<String> = m.iter().map(|m| m.to_string()).collect();
        assert_eq!(s, ["X^2", "X*Y", "X*Z", "Y^2", "Y*Z", "Z^2"]);
    }

    #[test]
    fn division_detects_factor() {
        let f2 = field_make(2, 1).unwrap();
        let h = parse_form("X^2*Y+X*Y*Z", &f2).unwrap();
        let g = parse_form("X+Z", &f2).unwrap();
        assert!(form_divides(&g, &h));
        let (q, r) = h.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q.to_string(), "X*Y");
        assert!(!form_divides(&parse_form("X+Y", &f2).unwrap(), &h));
    }

    #[test]
    fn partials_and_eval() {
        let f3 = field_make(3, 1).unwrap();
        let h = parse_form("X^3+2*X*Y*Z+Z^3", &f3).unwrap();
        assert_eq!(h.partial(0).to_string(), "2*Y*Z");
        assert_eq!(h.eval(&f3, &[1, 1, 1]).unwrap(), 1);
    }

    #[test]
    fn dehomogenize_translates_center() {
        let f2 = field_make(2, 1).unwrap();
        let h = parse_form("X^4+X^3*Z+Y^3*Z+Y*Z^3", &f2).unwrap();
        let pt = ProjPoint::new(&f2, [0, 1, 1]).unwrap();
        let b = dehomogenize(&h, 2, &pt).unwrap();
        // x^4 + x^3 + (y+1)^3 + (y+1) = x^4 + x^3 + y^3 + y^2
        assert_eq!(b.to_string(), "x^4+x^3+y^3+y^2");
        let inf = ProjPoint::new(&f2, [0, 1, 0]).unwrap();
        let b = dehomogenize(&h, 1, &inf).unwrap();
        assert_eq!(b.to_string(), "x^4+x^3*y+y^3+y");
        assert_eq!(dehomogenize(&h, 2, &inf).unwrap_err(), PolyError::BadChart);
    }
}
