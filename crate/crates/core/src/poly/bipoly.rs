use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::gf::{format_elem, FieldCtx};

/// A polynomial in two local coordinates x, y.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    ctx: Arc<FieldCtx>,
    terms: BTreeMap<(u32, u32), u64>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self)
    }
}

impl BiPoly {
    pub fn zero(ctx: &Arc<FieldCtx>) -> BiPoly {
        BiPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub(crate) fn from_map(ctx: &Arc<FieldCtx>, mut terms: BTreeMap<(u32, u32), u64>) -> BiPoly {
        terms.retain(|_, c| *c != 0);
        BiPoly { ctx: ctx.clone(), terms }
    }

    pub fn from_terms(ctx: &Arc<FieldCtx>, terms: impl IntoIterator<Item = ((u32, u32), u64)>) -> BiPoly {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            let v = map.entry(e).or_insert(0);
            *v = ctx.add(*v, c);
        }
        BiPoly::from_map(ctx, map)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> u64 {
        *self.terms.get(&(i, j)).unwrap_or(&0)
    }

    /// Terms as ((i, j), c) for c * x^i * y^j, in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    /// Lowest total degree of a term, `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn max_exponents(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(a, b), (i, j)| (a.max(*i), b.max(*j)))
    }

    /// Terms of total degree exactly `m`.
    pub fn homogeneous_part(&self, m: u32) -> BiPoly {
        let t = self.terms.iter().filter(|((i, j), _)| i + j == m).map(|(e, c)| (*e, *c)).collect();
        BiPoly { ctx: self.ctx.clone(), terms: t }
    }

    pub fn eval(&self, x: u64, y: u64) -> u64 {
        let f = &self.ctx;
        self.terms
            .iter()
            .fold(0, |acc, ((i, j), c)| f.add(acc, f.mul(*c, f.mul(f.pow(x, *i as u64), f.pow(y, *j as u64)))))
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut t = self.terms.clone();
        for (e, &c) in &o.terms {
            let v = t.entry(*e).or_insert(0);
            *v = self.ctx.add(*v, c);
        }
        BiPoly::from_map(&self.ctx, t)
    }

    pub fn scale(&self, c: u64) -> BiPoly {
        let t = self.terms.iter().map(|(e, &x)| (*e, self.ctx.mul(x, c))).collect();
        BiPoly::from_map(&self.ctx, t)
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.scale(self.ctx.neg(1)))
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut t: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for ((a, b), &c) in &self.terms {
            for ((i, j), &d) in &o.terms {
                let v = t.entry((a + i, b + j)).or_insert(0);
                *v = self.ctx.add(*v, self.ctx.mul(c, d));
            }
        }
        BiPoly::from_map(&self.ctx, t)
    }

    fn int(&self, n: u32) -> u64 {
        self.ctx.from_int((n as u64 % self.ctx.p()) as i64)
    }

    pub fn partial_x(&self) -> BiPoly {
        let t = self
            .terms
            .iter()
            .filter(|((i, _), _)| *i > 0)
            .map(|((i, j), &c)| ((i - 1, *j), self.ctx.mul(c, self.int(*i))))
            .collect();
        BiPoly::from_map(&self.ctx, t)
    }

    pub fn partial_y(&self) -> BiPoly {
        let t = self
            .terms
            .iter()
            .filter(|((_, j), _)| *j > 0)
            .map(|((i, j), &c)| ((*i, j - 1), self.ctx.mul(c, self.int(*j))))
            .collect();
        BiPoly::from_map(&self.ctx, t)
    }

    /// Swap the roles of x and y.
    pub fn swap(&self) -> BiPoly {
        let t = self.terms.iter().map(|((i, j), &c)| ((*j, *i), c)).collect();
        BiPoly::from_map(&self.ctx, t)
    }

    /// Apply `f` to every coefficient, landing in `ctx`.
    pub fn map_coeffs(&self, ctx: &Arc<FieldCtx>, mut f: impl FnMut(u64) -> u64) -> BiPoly {
        let t = self.terms.iter().map(|(e, &c)| (*e, f(c))).collect();
        BiPoly::from_map(ctx, t)
    }

    /// Strict transform under x = u, y = u (a + v), divided by u^m where m is
    /// the order at the origin.
    pub fn blowup_slope(&self, a: u64) -> BiPoly {
        let m = self.order().unwrap_or(0);
        let f = &self.ctx;
        let (_, maxj) = self.max_exponents();
        // (a + v)^j
        let mut pw: Vec<Vec<u64>> = vec![vec![1]];
        for j in 1..=maxj as usize {
            let prev = &pw[j - 1];
            let mut next = vec![0u64; j + 1];
            for (r, &c) in prev.iter().enumerate() {
                next[r + 1] = f.add(next[r + 1], c);
                next[r] = f.add(next[r], f.mul(c, a));
            }
            pw.push(next);
        }
        let mut t: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for ((i, j), &c) in &self.terms {
            let ue = i + j - m;
            for (r, &b) in pw[*j as usize].iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let v = t.entry((ue, r as u32)).or_insert(0);
                *v = f.add(*v, f.mul(c, b));
            }
        }
        BiPoly::from_map(f, t)
    }

    /// Strict transform under x = u v, y = v, divided by v^m.
    pub fn blowup_vertical(&self) -> BiPoly {
        let m = self.order().unwrap_or(0);
        let t = self.terms.iter().map(|((i, j), &c)| ((*i, i + j - m), c)).collect();
        BiPoly::from_map(&self.ctx, t)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // descending total degree, then x exponent
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|((a, b), _), ((c, d), _)| (c + d, c).cmp(&(a + b, a)));
        let mut parts = Vec::new();
        for ((i, j), &c) in terms {
            let mut vars = Vec::new();
            for (name, e) in [("x", *i), ("y", *j)] {
                match e {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{}^{}", name, e)),
                }
            }
            let cs = format_elem(&self.ctx, c);
            let cs = if cs.contains('+') { format!("({})", cs) } else { cs };
            parts.push(match (vars.is_empty(), c == 1) {
                (true, _) => cs,
                (false, true) => vars.join("*"),
                (false, false) => format!("{}*{}", cs, vars.join("*")),
            });
        }
        f.write_str(&parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;

    #[test]
    fn cusp_blows_up_to_smooth() {
        let f2 = field_make(2, 1).unwrap();
        // y^2 + y^3 + x^3 + x^4
        let f = BiPoly::from_terms(&f2, [((0, 2), 1), ((0, 3), 1), ((3, 0), 1), ((4, 0), 1)]);
        assert_eq!(f.order(), Some(2));
        let g = f.blowup_slope(0);
        assert_eq!(g.to_string(), "x*y^3+x^2+y^2+x");
        assert_eq!(g.order(), Some(1));
        let h = f.blowup_vertical();
        // x = u v: y^2 + y^3 + u^3 y^3 + u^4 y^4 divided by y^2
        assert_eq!(h.to_string(), "x^4*y^2+x^3*y+y+1");
    }

    #[test]
    fn partials_in_char_three() {
        let f3 = field_make(3, 1).unwrap();
        let f = BiPoly::from_terms(&f3, [((3, 1), 1), ((1, 2), 2)]);
        assert_eq!(f.partial_x().to_string(), "2*y^2");
        assert_eq!(f.partial_y().to_string(), "x^3+x*y");
    }
}
