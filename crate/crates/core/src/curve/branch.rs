//! Branches through a point by repeated blow-ups.
//!
//! The local equation is blown up at the origin along every tangent direction
//! until the strict transform is smooth; the smooth germ is then solved by
//! Newton iteration and the chart substitutions are composed back. This
//! works in every characteristic, including wild branches such as x = t^2 in
//! characteristic 2 where Puiseux expansions do not exist.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{field_make, upoly, Embedding, FieldCtx};
use crate::poly::{dehomogenize, series_substitute, BiPoly, Form, ProjPoint, TSeries};

pub(crate) const MAX_DEPTH: usize = 12;
/// Cap on the resolution field degree, as a multiple of the point degree.
pub(crate) const MAX_EXT_FACTOR: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    /// x = u, y = u (a + v)
    Slope(u64),
    /// x = u v, y = v
    Vertical,
}

#[derive(Debug)]
pub(crate) struct BranchRecipe {
    pub field: Arc<FieldCtx>,
    pub chain: Vec<Step>,
    pub smooth: BiPoly,
    pub mults: Vec<u32>,
}

impl BranchRecipe {
    fn key(&self) -> Vec<(u8, u64)> {
        self.chain
            .iter()
            .map(|s| match s {
                Step::Slope(a) => (0, self.field.lex_key(*a)),
                Step::Vertical => (1, 0),
            })
            .collect()
    }

    /// Local parametrization (x(t), y(t)) over the resolution field.
    pub fn param(&self, prec: usize) -> Result<(TSeries, TSeries)> {
        let g = &self.smooth;
        let (mut u, mut v) = if g.coeff(0, 1) != 0 {
            (TSeries::var(&self.field, prec), hensel(g, prec)?)
        } else {
            (hensel(&g.swap(), prec)?, TSeries::var(&self.field, prec))
        };
        for step in self.chain.iter().rev() {
            let (x, y) = match *step {
                Step::Slope(a) => (u.clone(), u.mul_capped(&v.add_const(a), prec)),
                Step::Vertical => (u.mul_capped(&v, prec), v.clone()),
            };
            u = x;
            v = y;
        }
        Ok((u.truncate(prec), v.truncate(prec)))
    }
}

/// Solve g(t, v(t)) = 0 with v(0) = 0, assuming dg/dy(0,0) != 0.
fn hensel(g: &BiPoly, prec: usize) -> Result<TSeries> {
    let ctx = g.ctx();
    let gy = g.partial_y();
    let mut v = TSeries::zero(ctx, 1.min(prec));
    let mut cur = 1;
    while cur < prec {
        cur = (2 * cur).min(prec);
        let mut c = v.coeffs().to_vec();
        c.resize(cur, 0);
        let vext = TSeries::new(ctx, c);
        let t = TSeries::var(ctx, cur);
        let val = series_substitute(g, &t, &vext)?.truncate(cur);
        let der = series_substitute(&gy, &t, &vext)?.truncate(cur);
        let corr = val.div(&der)?;
        v = vext.sub(&corr).truncate(cur);
    }
    Ok(v)
}

enum Halt {
    NeedExt(u32),
    Fail(Error),
}

struct Resolver<'a> {
    point: &'a str,
    out: Vec<BranchRecipe>,
    delta: u64,
}

impl Resolver<'_> {
    fn run(&mut self, f: &BiPoly, chain: &mut Vec<Step>, mults: &mut Vec<u32>) -> std::result::Result<(), Halt> {
        let ctx = f.ctx().clone();
        let m = f.order().expect("local equation vanishes identically");
        debug_assert!(m >= 1);
        if m == 1 {
            self.out.push(BranchRecipe { field: ctx, chain: chain.clone(), smooth: f.clone(), mults: mults.clone() });
            return Ok(());
        }
        if chain.len() >= MAX_DEPTH {
            return Err(Halt::Fail(Error::SingularResolutionDepthExceeded {
                point: self.point.to_string(),
                depth: MAX_DEPTH,
            }));
        }
        // tangent cone f_m(1, a)
        let cone: Vec<u64> = upoly::trim((0..=m).map(|j| f.coeff(m - j, j)).collect());
        let dc = upoly::degree(&cone).unwrap_or(0);
        let roots = upoly::roots(&ctx, &cone);
        let counted: usize = roots.iter().map(|(_, k)| k).sum();
        if counted < dc {
            let mut rest = cone.clone();
            for (r, k) in &roots {
                for _ in 0..*k {
                    rest = upoly::divrem(&ctx, &rest, &[ctx.neg(*r), 1]).0;
                }
            }
            return Err(Halt::NeedExt(upoly::first_ext_degree(&ctx, &rest) as u32));
        }
        self.delta += (m as u64) * (m as u64 - 1) / 2;
        mults.push(m);
        let mut roots: Vec<u64> = roots.into_iter().map(|(r, _)| r).collect();
        roots.sort_by_key(|&r| ctx.lex_key(r));
        for a in roots {
            chain.push(Step::Slope(a));
            let r = self.run(&f.blowup_slope(a), chain, mults);
            chain.pop();
            r?;
        }
        if dc < m as usize {
            chain.push(Step::Vertical);
            let r = self.run(&f.blowup_vertical(), chain, mults);
            chain.pop();
            r?;
        }
        mults.pop();
        Ok(())
    }
}

/// One Frobenius class of branches at a point; becomes a place.
pub(crate) struct BranchClass {
    pub recipe: Arc<BranchRecipe>,
    /// Place degree: point degree times orbit length.
    pub degree: u32,
    pub field: Arc<FieldCtx>,
    /// field -> recipe.field, when they differ
    pub lift: Option<Embedding>,
    pub center: [u64; 3],
    pub local_eq: BiPoly,
}

pub(crate) struct PointBranches {
    pub classes: Vec<BranchClass>,
    pub delta: u64,
    pub geometric_branches: usize,
}

/// Resolve all branches of `form` through `point` (of degree k over F_p).
pub(crate) fn resolve_point(form: &Form, point: &ProjPoint) -> Result<PointBranches> {
    let pctx = point.ctx().clone();
    let (p, k) = (pctx.p(), pctx.k());
    let chart = point.chart();
    let name = point.to_string();
    let mut e = k;
    let (res, big) = loop {
        let big = field_make(p, e)?;
        let emb = Embedding::new(&pctx, &big)?;
        let c = point.coords().map(|x| emb.apply(x));
        let center = ProjPoint::new(&big, c).expect("nonzero point");
        let f = dehomogenize(form, chart, &center)?;
        let mut r = Resolver { point: &name, out: Vec::new(), delta: 0 };
        match r.run(&f, &mut Vec::new(), &mut Vec::new()) {
            Ok(()) => break (r, big),
            Err(Halt::Fail(err)) => return Err(err),
            Err(Halt::NeedExt(j)) => {
                e *= j;
                if e > MAX_EXT_FACTOR * k {
                    return Err(Error::BranchClassUnsupported { point: name, limit: MAX_EXT_FACTOR * k });
                }
            }
        }
    };
    let emb = Embedding::new(&pctx, &big)?;
    let big_center = point.coords().map(|x| emb.apply(x));
    let n = res.out.len();
    let keys: Vec<Vec<(u8, u64)>> = res.out.iter().map(|b| b.key()).collect();
    // relative Frobenius x -> x^(p^k) acting on chains
    let tau = |s: &Step| match *s {
        Step::Slope(a) => Step::Slope(big.pow(a, pctx.order())),
        Step::Vertical => Step::Vertical,
    };
    let mut seen = vec![false; n];
    let mut classes: Vec<(Vec<(u8, u64)>, usize, usize)> = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut members = vec![i];
        let mut chain: Vec<Step> = res.out[i].chain.iter().map(tau).collect();
        loop {
            let probe = BranchRecipe { field: big.clone(), chain: chain.clone(), smooth: BiPoly::zero(&big), mults: vec![] };
            let key = probe.key();
            let j = keys
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::Inconsistent(format!("Frobenius image of a branch at {} not found", name)))?;
            if j == i {
                break;
            }
            members.push(j);
            chain = chain.iter().map(tau).collect();
        }
        for &j in &members {
            seen[j] = true;
        }
        let rep = *members.iter().min_by_key(|&&j| &keys[j]).unwrap();
        classes.push((keys[rep].clone(), rep, members.len()));
    }
    classes.sort();
    let mut out_classes = Vec::new();
    let mut recipes: Vec<Option<BranchRecipe>> = res.out.into_iter().map(Some).collect();
    for (_, rep, s) in classes {
        let degree = k * s as u32;
        let field = field_make(p, degree)?;
        let recipe = recipes[rep].take().unwrap();
        let (lift, center, local_eq) = if degree == big.k() {
            let f = dehomogenize(form, chart, &ProjPoint::new(&big, big_center).unwrap())?;
            (None, big_center, f)
        } else {
            let lift = Embedding::new(&field, &big)?;
            let down = |x: u64| {
                lift.restrict(x).ok_or_else(|| Error::Inconsistent(format!("branch data at {} not in its field", name)))
            };
            let c = [down(big_center[0])?, down(big_center[1])?, down(big_center[2])?];
            let f = dehomogenize(form, chart, &ProjPoint::new(&field, c).unwrap())?;
            (Some(lift), c, f)
        };
        out_classes.push(BranchClass { recipe: Arc::new(recipe), degree, field, lift, center, local_eq });
    }
    Ok(PointBranches { classes: out_classes, delta: res.delta, geometric_branches: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_form;

    #[test]
    fn quartic_cusp_parametrization() {
        let f2 = field_make(2, 1).unwrap();
        let h = parse_form("X^3*Z+X^4+Y^3*Z+Y*Z^3", &f2).unwrap();
        let pt = ProjPoint::new(&f2, [0, 1, 1]).unwrap();
        let pb = resolve_point(&h, &pt).unwrap();
        assert_eq!(pb.classes.len(), 1);
        assert_eq!(pb.delta, 1);
        let (x, y) = pb.classes[0].recipe.param(8).unwrap();
        // x = t^2 + t^4 + t^5 + ..., y = t^3 + t^5 + ...
        assert_eq!(&x.coeffs()[..6], &[0, 0, 1, 0, 1, 1]);
        assert_eq!(&y.coeffs()[..6], &[0, 0, 0, 1, 0, 1]);
        let f = &pb.classes[0].local_eq;
        assert!(series_substitute(f, &x, &y).unwrap().is_zero_to_prec());
    }

    #[test]
    fn node_with_conjugate_tangents() {
        // x^2 + x y + y^2 + x^3 = 0 over F_2: tangents need F_4
        let f2 = field_make(2, 1).unwrap();
        let h = parse_form("X^2*Z+X*Y*Z+Y^2*Z+X^3", &f2).unwrap();
        let pt = ProjPoint::new(&f2, [0, 0, 1]).unwrap();
        let pb = resolve_point(&h, &pt).unwrap();
        assert_eq!(pb.geometric_branches, 2);
        assert_eq!(pb.classes.len(), 1);
        assert_eq!(pb.classes[0].degree, 2);
        assert_eq!(pb.delta, 1);
    }

    #[test]
    fn split_node() {
        // y^2 + x y + x^3 over F_2: tangents y = 0 and y = x
        let f2 = field_make(2, 1).unwrap();
        let h = parse_form("Y^2*Z+X*Y*Z+X^3", &f2).unwrap();
        let pt = ProjPoint::new(&f2, [0, 0, 1]).unwrap();
        let pb = resolve_point(&h, &pt).unwrap();
        assert_eq!(pb.classes.len(), 2);
        assert!(pb.classes.iter().all(|c| c.degree == 1));
        for c in &pb.classes {
            let (x, y) = c.recipe.param(10).unwrap();
            assert!(series_substitute(&c.local_eq, &x, &y).unwrap().is_zero_to_prec());
        }
    }

    #[test]
    fn deep_singularity_depth_limit() {
        // y^2 = x^29: needs 14 blow-ups
        let f3 = field_make(3, 1).unwrap();
        let h = parse_form("Y^2*Z^27+2*X^29", &f3).unwrap();
        let pt = ProjPoint::new(&f3, [0, 0, 1]).unwrap();
        assert!(matches!(resolve_point(&h, &pt), Err(Error::SingularResolutionDepthExceeded { .. })));
    }
}
