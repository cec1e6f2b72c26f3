//! Riemann–Roch spaces L(D) by the Brill–Noether residue theorem.
//!
//! Pick an adjoint H0 whose divisor N*H0 dominates A + D+; then
//! L(D) = { H / H0 : H adjoint of the same degree, N*H >= N*H0 - D },
//! taken modulo multiples of F.

use std::fmt;

use crate::adjunction::{adjoint_system, adjunction_divisor, conditions, genus};
use crate::curve::{Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::poly::{form_divides, monomials, Form, SeriesOrder};

/// A rational function num/den with forms of equal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    pub num: Form,
    pub den: Form,
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Intersection divisor of the form H with the curve.
pub fn pullback(c: &Curve, h: &Form) -> Result<Divisor> {
    if h.is_zero() || form_divides(c.form(), h) {
        return Err(Error::CurveComponent);
    }
    let d = c.degree();
    let mut div = Divisor::new();
    let mut total = 0i64;
    for q in c.places() {
        let r = q.order_of(h, d)?;
        if r > 0 {
            div.add_at(q.label(), r as i64);
            total += r as i64 * q.degree() as i64;
        }
    }
    let want = (h.degree() * d) as i64;
    if total < want {
        return Err(Error::UnsupportedDegree { needed: c.enumerated_degree() + 1, max: c.enumerated_degree() });
    }
    if total > want {
        return Err(Error::Inconsistent(format!("intersection of {} with the curve exceeds Bezout", h)));
    }
    Ok(div)
}

/// Lines over F_p, normalized, in canonical order.
fn lines(c: &Curve) -> Vec<Form> {
    let ctx = c.ctx();
    let p = ctx.p();
    let mut out = Vec::new();
    for v in 1..p * p * p {
        let coeffs = [v / (p * p), (v / p) % p, v % p];
        if coeffs.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let l = Form::from_dense(ctx, 1, &coeffs);
        if !form_divides(c.form(), &l) {
            out.push(l);
        }
    }
    out
}

fn line_pullback(c: &Curve, l: &Form) -> Result<Divisor> {
    let key = l.to_dense();
    if let Some(r) = c.line_cache.lock().unwrap().get(&key) {
        return r.clone();
    }
    let r = pullback(c, l);
    c.line_cache.lock().unwrap().insert(key, r.clone());
    r
}

/// Smallest degree allowed for the auxiliary adjoint.
fn min_degree(c: &Curve, base_degree: i64) -> u32 {
    let d = c.degree() as i64;
    // n > d - 1 and n > (d - 3)/2 + deg(base)/d
    let second = (d * (d - 3) + 2 * base_degree).div_euclid(2 * d) + 1;
    d.max(second).max(1) as u32
}

/// An adjoint H0 with N*H0 >= base, and the residual R = N*H0 - base.
pub fn find_h0(c: &Curve, base: &Divisor) -> Result<(Form, Divisor)> {
    if !base.is_effective() {
        return Err(Error::InvalidArgument(format!("base divisor {} is not effective", base)));
    }
    let n_min = min_degree(c, base.degree(c)?);
    if let Some(h) = greedy_lines(c, base, n_min)? {
        let r = pullback(c, &h)?.sub(base);
        return Ok((h, r));
    }
    for n in n_min..n_min + 4 {
        let sys = conditions(c, base, n)?;
        for h in sys.solutions() {
            if form_divides(c.form(), &h) {
                continue;
            }
            if let Ok(div) = pullback(c, &h) {
                return Ok((h, div.sub(base)));
            }
        }
    }
    Err(Error::NoAdjointFound(n_min + 3))
}

// Product of F_p-lines covering `base`, padded to degree n_min.
fn greedy_lines(c: &Curve, base: &Divisor, n_min: u32) -> Result<Option<Form>> {
    let all = lines(c);
    let mut deficit = base.clone();
    let mut chosen: Vec<Form> = Vec::new();
    let mut usable_first: Option<Form> = None;
    while !deficit.is_zero() {
        let targets: Vec<&Place> = deficit.support().iter().map(|l| c.place(l)).collect::<Result<_>>()?;
        let mut best: Option<(i64, Form, Divisor)> = None;
        for l in &all {
            let mut touches = false;
            for q in &targets {
                if q.form_vanishes(l)? {
                    touches = true;
                    break;
                }
            }
            if !touches {
                continue;
            }
            let Ok(div) = line_pullback(c, l) else { continue };
            let score: i64 = deficit
                .entries()
                .iter()
                .map(|(lab, need)| div.get(lab).min(*need) * c.place(lab).map(|q| q.degree() as i64).unwrap_or(0))
                .sum();
            if score > 0 && best.as_ref().is_none_or(|(s, _, _)| score > *s) {
                best = Some((score, l.clone(), div));
            }
        }
        let Some((_, l, div)) = best else {
            return Ok(None);
        };
        for (lab, need) in deficit.clone().entries() {
            deficit.add_at(lab, -div.get(lab).min(need));
        }
        chosen.push(l);
    }
    while (chosen.len() as u32) < n_min {
        if usable_first.is_none() {
            usable_first = all.iter().find(|l| line_pullback(c, l).is_ok()).cloned();
        }
        match &usable_first {
            Some(l) => chosen.push(l.clone()),
            None => return Ok(None),
        }
    }
    let mut h = Form::constant(c.ctx(), 1);
    for l in &chosen {
        h = h.mul(l);
    }
    Ok(Some(h))
}

/// A basis of L(D): functions num_i / h0.
#[derive(Clone, Debug)]
pub struct LBasis {
    pub divisor: Divisor,
    pub h0: Form,
    pub numerators: Vec<Form>,
}

impl LBasis {
    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    pub fn functions(&self) -> Vec<RatFun> {
        self.numerators.iter().map(|n| RatFun { num: n.clone(), den: self.h0.clone() }).collect()
    }
}

pub fn lbasis(c: &Curve, d: &Divisor) -> Result<LBasis> {
    for (l, _) in d.entries() {
        c.place(l)?;
    }
    let a = adjunction_divisor(c)?;
    let base = a.add(&d.positive_part());
    let (h0, _) = find_h0(c, &base)?;
    let n0 = pullback(c, &h0)?;
    let residual = n0.sub(&a).sub(d);
    let n = h0.degree();
    let sys = adjoint_system(c, &residual, n)?;
    let fp = c.ctx();
    let mut mult = Echelon::new();
    let deg_f = c.degree();
    if n >= deg_f {
        for m in monomials(n - deg_f) {
            let g = c.form().mul(&Form::from_terms(fp, n - deg_f, [(m, 1)]));
            mult.insert(fp, &g.to_dense());
        }
    }
    let kernel = sys.kernel();
    let mut quot = Echelon::new();
    for v in &kernel {
        let r = mult.reduce(fp, v);
        quot.insert(fp, &r);
    }
    if quot.len() + mult.len() != kernel.len() {
        return Err(Error::Inconsistent(format!(
            "multiples of F are not all adjoint (kernel {}, multiples {})",
            kernel.len(),
            mult.len()
        )));
    }
    let mut rows = quot.into_rows();
    rows.sort_by_key(|(pc, _)| *pc);
    let numerators = rows.into_iter().map(|(_, v)| Form::from_dense(fp, n, &v)).collect();
    Ok(LBasis { divisor: d.clone(), h0, numerators })
}

pub fn ldim(c: &Curve, d: &Divisor) -> Result<usize> {
    let l = lbasis(c, d)?.dim();
    let g = genus(c)? as i64;
    let deg = d.degree(c)?;
    if deg >= 2 * g - 1 && l as i64 != deg - g + 1 {
        return Err(Error::Inconsistent(format!("l({}) = {} but Riemann-Roch gives {}", d, l, deg - g + 1)));
    }
    Ok(l)
}

/// i(D) = l(D) - deg D - 1 + g.
pub fn index_of_speciality(c: &Curve, d: &Divisor) -> Result<i64> {
    Ok(ldim(c, d)? as i64 - d.degree(c)? - 1 + genus(c)? as i64)
}

/// ord_Q(f) = ord_Q(num) - ord_Q(den).
pub fn valuation(c: &Curve, f: &RatFun, q: &Place) -> Result<i64> {
    if f.num.degree() != f.den.degree() {
        return Err(Error::InvalidArgument("numerator and denominator degrees differ".into()));
    }
    let den = match q.order_of(&f.den, c.degree()) {
        Err(Error::CurveComponent) => return Err(Error::FunctionUndefinedOnCurve),
        r => r?,
    };
    let num = match q.order_of(&f.num, c.degree()) {
        Err(Error::CurveComponent) => {
            return Err(Error::InvalidArgument("the zero function has no finite order".into()));
        }
        r => r?,
    };
    Ok(num as i64 - den as i64)
}

/// Pole order at Q, i.e. -ord_Q(f).
pub fn pole_order(c: &Curve, f: &RatFun, q: &Place) -> Result<i64> {
    Ok(-valuation(c, f, q)?)
}

/// Leading Laurent coefficient (in the residue field) of num at its order.
pub(crate) fn leading_coeff(c: &Curve, h: &Form, q: &Place) -> Result<(usize, u64)> {
    let ord = q.order_of(h, c.degree())?;
    let s = q.form_series(h, ord + 1)?;
    match s.order() {
        SeriesOrder::Order(n) if n == ord => Ok((ord, s.coeff(ord))),
        _ => Err(Error::PrecisionExhausted(q.label().to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{curve_load, divisor_parse};

    const QUARTIC: &str = "X^3*Z+X^4+Y^3*Z+Y*Z^3";

    #[test]
    fn quartic_line_pullbacks() {
        let c = curve_load(QUARTIC, 2).unwrap();
        let f2 = c.ctx().clone();
        let show = |i: usize| pullback(&c, &Form::var(&f2, i)).unwrap().to_string();
        assert_eq!(show(0), "1*P1+2*P2+1*P5");
        assert_eq!(show(1), "3*P1+1*P3");
        assert_eq!(show(2), "4*P5");
    }

    #[test]
    fn pullback_rejects_multiples_of_f() {
        let c = curve_load(QUARTIC, 2).unwrap();
        let h = c.form().mul(&Form::var(c.ctx(), 0));
        assert_eq!(pullback(&c, &h).unwrap_err(), Error::CurveComponent);
    }

    #[test]
    fn cusp_h0_degree() {
        let c = curve_load("X^3+Y^2*Z", 2).unwrap();
        let a = adjunction_divisor(&c).unwrap();
        let (h, r) = find_h0(&c, &a).unwrap();
        assert_eq!(h.degree(), 3);
        assert!(r.is_effective());
    }

    #[test]
    fn quartic_small_spaces() {
        let c = curve_load(QUARTIC, 2).unwrap();
        let l = |s: &str| ldim(&c, &divisor_parse(s, &c).unwrap()).unwrap();
        assert_eq!(l("0"), 1);
        assert_eq!(l("-1*P1"), 0);
        assert_eq!(l("1*P5"), 1);
        assert_eq!(l("2*P5"), 1);
        assert_eq!(l("3*P5"), 2);
        assert_eq!(l("4*P5"), 3);
        // N*X - A, a canonical divisor
        assert_eq!(l("1*P1+1*P5"), 2);
        assert_eq!(l("1*P2+1*P5"), 1);
    }
}
