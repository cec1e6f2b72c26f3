use std::fmt;
use std::sync::Arc;

use super::{BiPoly, Form, PolyError};
use crate::gf::{format_elem, FieldCtx, GfError};

/// A power series in t known modulo t^prec.
///
/// Products keep every coefficient that is determined by the inputs: for
/// a = O(t^pa) with order oa and b likewise, a*b is known modulo
/// t^min(pa + ob, pb + oa). Sums are known to the smaller precision.
#[derive(Clone, PartialEq, Eq)]
pub struct TSeries {
    ctx: Arc<FieldCtx>,
    c: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOrder {
    /// Exact t-adic order.
    Order(usize),
    /// All known coefficients vanish; the order is at least this.
    AtLeast(usize),
}

impl SeriesOrder {
    pub fn exact(self) -> Option<usize> {
        match self {
            SeriesOrder::Order(n) => Some(n),
            SeriesOrder::AtLeast(_) => None,
        }
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.c.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let cs = format_elem(&self.ctx, c);
            let cs = if cs.contains('+') { format!("({})", cs) } else { cs };
            parts.push(match (i, c == 1) {
                (0, _) => cs,
                (1, true) => "t".into(),
                (1, false) => format!("{}*t", cs),
                (_, true) => format!("t^{}", i),
                (_, false) => format!("{}*t^{}", cs, i),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}+O(t^{})", parts.join("+"), self.c.len())
    }
}

impl TSeries {
    pub fn new(ctx: &Arc<FieldCtx>, coeffs: Vec<u64>) -> TSeries {
        TSeries { ctx: ctx.clone(), c: coeffs }
    }

    pub fn zero(ctx: &Arc<FieldCtx>, prec: usize) -> TSeries {
        TSeries::new(ctx, vec![0; prec])
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: u64, prec: usize) -> TSeries {
        let mut v = vec![0; prec];
        if prec > 0 {
            v[0] = c;
        }
        TSeries::new(ctx, v)
    }

    /// The series t, known to `prec`.
    pub fn var(ctx: &Arc<FieldCtx>, prec: usize) -> TSeries {
        let mut v = vec![0; prec];
        if prec > 1 {
            v[1] = 1;
        }
        TSeries::new(ctx, v)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn prec(&self) -> usize {
        self.c.len()
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> u64 {
        self.c[i]
    }

    pub fn order(&self) -> SeriesOrder {
        match self.c.iter().position(|&x| x != 0) {
            Some(i) => SeriesOrder::Order(i),
            None => SeriesOrder::AtLeast(self.c.len()),
        }
    }

    fn ord_or_prec(&self) -> usize {
        self.c.iter().position(|&x| x != 0).unwrap_or(self.c.len())
    }

    pub fn truncate(&self, n: usize) -> TSeries {
        TSeries::new(&self.ctx, self.c[..n.min(self.c.len())].to_vec())
    }

    fn check(&self, o: &TSeries) {
        assert!(Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx, "series over different fields");
    }

    pub fn add(&self, o: &TSeries) -> TSeries {
        self.check(o);
        let n = self.prec().min(o.prec());
        TSeries::new(&self.ctx, (0..n).map(|i| self.ctx.add(self.c[i], o.c[i])).collect())
    }

    pub fn sub(&self, o: &TSeries) -> TSeries {
        self.check(o);
        let n = self.prec().min(o.prec());
        TSeries::new(&self.ctx, (0..n).map(|i| self.ctx.sub(self.c[i], o.c[i])).collect())
    }

    pub fn neg(&self) -> TSeries {
        TSeries::new(&self.ctx, self.c.iter().map(|&x| self.ctx.neg(x)).collect())
    }

    pub fn scale(&self, k: u64) -> TSeries {
        TSeries::new(&self.ctx, self.c.iter().map(|&x| self.ctx.mul(x, k)).collect())
    }

    pub fn add_const(&self, k: u64) -> TSeries {
        let mut out = self.clone();
        if !out.c.is_empty() {
            out.c[0] = self.ctx.add(out.c[0], k);
        }
        out
    }

    pub fn mul(&self, o: &TSeries) -> TSeries {
        self.mul_capped(o, usize::MAX)
    }

    /// Product, keeping at most `cap` coefficients.
    pub fn mul_capped(&self, o: &TSeries, cap: usize) -> TSeries {
        self.check(o);
        let f = &self.ctx;
        let (pa, pb) = (self.prec(), o.prec());
        let (oa, ob) = (self.ord_or_prec(), o.ord_or_prec());
        let n = (pa + ob).min(pb + oa).min(cap);
        let mut out = vec![0u64; n];
        for i in oa..pa.min(n) {
            let a = self.c[i];
            if a == 0 {
                continue;
            }
            let jmax = pb.min(n - i);
            for j in ob..jmax {
                let b = o.c[j];
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        TSeries::new(f, out)
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self) -> Result<TSeries, GfError> {
        let f = &self.ctx;
        let n = self.prec();
        if n == 0 {
            return Ok(self.clone());
        }
        let a0 = f.inv(self.c[0])?;
        let mut b = vec![0u64; n];
        b[0] = a0;
        for k in 1..n {
            let mut s = 0;
            for i in 1..=k {
                if self.c[i] != 0 {
                    s = f.add(s, f.mul(self.c[i], b[k - i]));
                }
            }
            b[k] = f.neg(f.mul(s, a0));
        }
        Ok(TSeries::new(f, b))
    }

    /// Quotient by a unit.
    pub fn div(&self, o: &TSeries) -> Result<TSeries, GfError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn derivative(&self) -> TSeries {
        let f = &self.ctx;
        let n = self.prec().saturating_sub(1);
        TSeries::new(
            f,
            (0..n).map(|i| f.mul(self.c[i + 1], f.from_int(((i as u64 + 1) % f.p()) as i64))).collect(),
        )
    }

    pub fn pow(&self, e: u32, cap: usize) -> TSeries {
        let mut acc = TSeries::constant(&self.ctx, 1, cap.min(self.prec().max(1) * (e as usize).max(1)));
        for _ in 0..e {
            acc = acc.mul_capped(self, cap);
        }
        acc
    }

    pub fn map_coeffs(&self, ctx: &Arc<FieldCtx>, mut f: impl FnMut(u64) -> u64) -> TSeries {
        TSeries::new(ctx, self.c.iter().map(|&x| f(x)).collect())
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

pub fn series_order(s: &TSeries) -> SeriesOrder {
    s.order()
}

fn coeff_field_ok(poly_ctx: &FieldCtx, target: &FieldCtx) -> Result<(), PolyError> {
    if poly_ctx.p() != target.p() || (poly_ctx.k() != 1 && *poly_ctx != *target) {
        return Err(PolyError::Gf(GfError::MixedFields));
    }
    Ok(())
}

/// h(xs, ys); coefficients of `h` must lie in the series field or its prime field.
pub fn series_substitute(h: &BiPoly, xs: &TSeries, ys: &TSeries) -> Result<TSeries, PolyError> {
    coeff_field_ok(h.ctx(), xs.ctx())?;
    xs.check(ys);
    let cap = xs.prec().max(ys.prec());
    let (mx, my) = h.max_exponents();
    let powers = |s: &TSeries, m: u32| {
        let mut v = vec![TSeries::constant(s.ctx(), 1, cap)];
        for e in 1..=m as usize {
            let next = v[e - 1].mul_capped(s, cap);
            v.push(next);
        }
        v
    };
    let (px, py) = (powers(xs, mx), powers(ys, my));
    let f = xs.ctx();
    let mut acc: Option<TSeries> = None;
    for ((i, j), c) in h.terms() {
        let term = px[i as usize].mul_capped(&py[j as usize], cap).scale(c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    let out = acc.unwrap_or_else(|| TSeries::zero(f, cap));
    if out.prec() == 0 {
        return Err(PolyError::PrecisionUnderflow);
    }
    Ok(out)
}

/// H(X(t), Y(t), Z(t)) for a homogeneous parametrization.
pub fn form_substitute(h: &Form, hom: &[TSeries; 3]) -> Result<TSeries, PolyError> {
    let ctx = hom[0].ctx();
    coeff_field_ok(h.ctx(), ctx)?;
    let cap = hom.iter().map(|s| s.prec()).max().unwrap();
    let n = h.degree();
    let mut pw: [Vec<TSeries>; 3] = Default::default();
    for i in 0..3 {
        let used = h.terms().map(|(m, _)| m.0[i]).max().unwrap_or(0);
        pw[i].push(TSeries::constant(ctx, 1, cap));
        for e in 1..=used.min(n) as usize {
            let next = pw[i][e - 1].mul_capped(&hom[i], cap);
            pw[i].push(next);
        }
    }
    let mut acc: Option<TSeries> = None;
    for (m, c) in h.terms() {
        let t = pw[0][m.0[0] as usize]
            .mul_capped(&pw[1][m.0[1] as usize], cap)
            .mul_capped(&pw[2][m.0[2] as usize], cap)
            .scale(c);
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    let out = acc.unwrap_or_else(|| TSeries::zero(ctx, cap));
    if out.prec() == 0 {
        return Err(PolyError::PrecisionUnderflow);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;

    #[test]
    fn product_precision_uses_orders() {
        let f = field_make(5, 1).unwrap();
        let a = TSeries::new(&f, vec![0, 0, 1, 2]); // t^2 + 2t^3 + O(t^4)
        let b = TSeries::new(&f, vec![1, 1, 0]); // 1 + t + O(t^3)
        let c = a.mul(&b);
        assert_eq!(c.prec(), 4);
        assert_eq!(c.coeffs(), &[0, 0, 1, 3]);
        let d = a.mul(&a);
        assert_eq!(d.prec(), 6);
    }

    #[test]
    fn inverse() {
        let f = field_make(7, 1).unwrap();
        let a = TSeries::new(&f, vec![3, 1, 4, 1, 5]);
        let p = a.mul(&a.inv().unwrap());
        assert_eq!(p.coeffs(), &[1, 0, 0, 0, 0]);
        let z = TSeries::new(&f, vec![0, 1]);
        assert!(z.inv().is_err());
    }

    #[test]
    fn order_reports_unknown() {
        let f = field_make(2, 1).unwrap();
        assert_eq!(TSeries::zero(&f, 5).order(), SeriesOrder::AtLeast(5));
        assert_eq!(TSeries::new(&f, vec![0, 0, 1]).order(), SeriesOrder::Order(2));
    }

    #[test]
    fn substitute_into_cusp() {
        let f2 = field_make(2, 1).unwrap();
        // y^2 - x^3 at (t^2, t^3)
        let h = BiPoly::from_terms(&f2, [((0, 2), 1), ((3, 0), 1)]);
        let xs = TSeries::new(&f2, vec![0, 0, 1, 0, 0, 0, 0, 0]);
        let ys = TSeries::new(&f2, vec![0, 0, 0, 1, 0, 0, 0, 0]);
        let v = series_substitute(&h, &xs, &ys).unwrap();
        assert_eq!(v.order(), SeriesOrder::AtLeast(8));
    }
}
