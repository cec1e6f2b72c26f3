//! Conductor exponents, the adjunction divisor, genus and adjoint conditions.

use std::sync::Arc;

use crate::curve::{Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::{self, Echelon};
use crate::poly::{local_indices, monomials, series_substitute, BiPoly, Form, Mono, SeriesOrder, TSeries};

/// Orders of f_y(x(t), y(t)) / x'(t) and f_x(x(t), y(t)) / y'(t); `None`
/// where the quotient is undefined because a factor vanishes identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DedekindOrders {
    pub via_fy: Option<i64>,
    pub via_fx: Option<i64>,
}

#[derive(Debug)]
pub struct AdjunctionData {
    pub divisor: Divisor,
    pub genus: u32,
}

fn certified_order(s: &TSeries, bound: usize, place: &Place) -> Result<Option<usize>> {
    match s.order() {
        SeriesOrder::Order(n) => Ok(Some(n)),
        SeriesOrder::AtLeast(n) if n > bound => Ok(None),
        SeriesOrder::AtLeast(_) => Err(Error::PrecisionExhausted(place.label().to_string())),
    }
}

/// Both derivative quotients at a place.
pub fn dedekind_orders(c: &Curve, q: &Place) -> Result<DedekindOrders> {
    let d = c.degree() as usize;
    // a partial of F has degree d - 1 and no common component with F, so
    // its order at q is at most (d - 1) d
    let bound = (d - 1) * d / q.degree() as usize;
    let prec = bound + 2;
    let par = q.param(prec)?;
    let (x, y) = (par.x.truncate(prec), par.y.truncate(prec));
    let f = q.local_eq();
    let quotient = |g: &BiPoly, der: &TSeries| -> Result<Option<i64>> {
        if g.is_zero() {
            return Ok(None);
        }
        let Some(a) = certified_order(&series_substitute(g, &x, &y)?, bound, q)? else {
            return Ok(None);
        };
        match der.order() {
            SeriesOrder::Order(b) => Ok(Some(a as i64 - b as i64)),
            // a nonzero derivative would have order <= a
            SeriesOrder::AtLeast(n) if n > a => Ok(None),
            SeriesOrder::AtLeast(_) => Err(Error::PrecisionExhausted(q.label().to_string())),
        }
    };
    Ok(DedekindOrders {
        via_fy: quotient(&f.partial_y(), &x.derivative())?,
        via_fx: quotient(&f.partial_x(), &y.derivative())?,
    })
}

/// d_Q, the exponent of the place in the adjunction divisor.
pub fn conductor_exponent(c: &Curve, q: &Place) -> Result<u32> {
    if !q.is_singular() {
        return Ok(0);
    }
    let dd = dedekind_orders(c, q)?;
    let v = match (dd.via_fy, dd.via_fx) {
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => {
            let cp = c.point_of(q);
            if cp.geometric_branches != 1 {
                return Err(Error::BothFormsDegenerate(q.label().to_string()));
            }
            2 * cp.delta as i64
        }
    };
    if v <= 0 {
        return Err(Error::Inconsistent(format!("conductor exponent {} at singular place {}", v, q.label())));
    }
    Ok(v as u32)
}

pub(crate) fn data(c: &Curve) -> Result<Arc<AdjunctionData>> {
    c.adjunction.get_or_init(|| compute(c).map(Arc::new)).clone()
}

fn compute(c: &Curve) -> Result<AdjunctionData> {
    let mut divisor = Divisor::new();
    for q in c.singular_places() {
        divisor.add_at(q.label(), conductor_exponent(c, q)? as i64);
    }
    let d = c.degree() as i64;
    let two_g = (d - 1) * (d - 2) - divisor.degree(c)?;
    if two_g < 0 {
        return Err(Error::NegativeGenus(two_g.div_euclid(2)));
    }
    if two_g % 2 != 0 {
        return Err(Error::Inconsistent(format!("adjunction divisor of odd degree on {:?}", c)));
    }
    Ok(AdjunctionData { divisor, genus: (two_g / 2) as u32 })
}

pub fn adjunction_divisor(c: &Curve) -> Result<Divisor> {
    Ok(data(c)?.divisor.clone())
}

pub fn genus(c: &Curve) -> Result<u32> {
    Ok(data(c)?.genus)
}

/// Where an adjoint condition comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowTag {
    pub place: String,
    /// Power of t whose coefficient is forced to vanish.
    pub t_power: usize,
    /// Base-p digit of that coefficient (0 for rational places).
    pub digit: u32,
}

/// Linear conditions on the coefficients of a degree-n form, one column per
/// monomial in `monomials(n)` order.
#[derive(Clone, Debug)]
pub struct AdjointSystem {
    pub degree: u32,
    pub columns: Vec<Mono>,
    pub rows: Vec<Vec<u64>>,
    pub tags: Vec<RowTag>,
    ctx: Arc<FieldCtx>,
}

impl AdjointSystem {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.ctx, &self.rows, self.columns.len())
    }

    /// Kernel basis as dense coefficient vectors, ordered by free column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        linalg::kernel(&self.ctx, &self.rows, self.columns.len())
    }

    pub fn solutions(&self) -> Vec<Form> {
        self.kernel().iter().map(|v| Form::from_dense(&self.ctx, self.degree, v)).collect()
    }
}

/// Adjoint forms of degree n whose divisor dominates the adjunction divisor
/// plus R.
pub fn adjoint_system(c: &Curve, r: &Divisor, n: u32) -> Result<AdjointSystem> {
    if !r.is_effective() {
        return Err(Error::InvalidArgument(format!("R = {} is not effective", r)));
    }
    let a = adjunction_divisor(c)?;
    let sys = conditions(c, &a.add(r), n)?;
    let expected = a.degree(c)? / 2 + r.degree(c)?;
    if sys.rows.len() as i64 != expected {
        return Err(Error::Inconsistent(format!(
            "{} adjoint conditions for A + {}, expected {}",
            sys.rows.len(),
            r,
            expected
        )));
    }
    Ok(sys)
}

/// Series of each monomial of degree n (and of affine monomials) at a place.
struct LocalPowers {
    pw: [Vec<TSeries>; 3],
}

impl LocalPowers {
    fn new(q: &Place, upto: u32, prec: usize) -> Result<LocalPowers> {
        let par = q.param(prec)?;
        let mut pw: [Vec<TSeries>; 3] = Default::default();
        for i in 0..3 {
            let s = par.hom[i].truncate(prec);
            pw[i].push(TSeries::constant(q.field(), 1, prec));
            for e in 1..=upto as usize {
                let next = pw[i][e - 1].mul_capped(&s, prec);
                pw[i].push(next);
            }
        }
        Ok(LocalPowers { pw })
    }

    fn mono(&self, e: [u32; 3], prec: usize) -> TSeries {
        self.pw[0][e[0] as usize]
            .mul_capped(&self.pw[1][e[1] as usize], prec)
            .mul_capped(&self.pw[2][e[2] as usize], prec)
    }
}

/// Conditions ord_Q(H) >= req_Q on forms of degree n. At singular points
/// only the locally independent conditions are kept.
pub(crate) fn conditions(c: &Curve, req: &Divisor, n: u32) -> Result<AdjointSystem> {
    let fp = c.ctx().clone();
    let columns = monomials(n);
    let mut rows = Vec::new();
    let mut tags = Vec::new();
    for cp in c.closed_points() {
        let qs: Vec<&Place> = cp.places.iter().map(|&i| &c.places()[i]).filter(|q| req.get(q.label()) > 0).collect();
        if qs.is_empty() {
            continue;
        }
        // local filter space: affine monomials of degree < bound in the chart
        let bound: u32 = if cp.singular {
            qs.iter().map(|q| q.degree() * req.get(q.label()) as u32).sum()
        } else {
            0
        };
        let affine: Vec<[u32; 3]> = if cp.singular {
            let chart = cp.point.chart();
            let (i, j) = local_indices(chart);
            let mut v = Vec::new();
            for s in 0..bound {
                for a in (0..=s).rev() {
                    let mut e = [0u32; 3];
                    e[i] = a;
                    e[j] = s - a;
                    v.push(e);
                }
            }
            v
        } else {
            Vec::new()
        };
        let mut local = Echelon::new();
        for q in qs {
            let need = req.get(q.label()) as usize;
            let lp = LocalPowers::new(q, n.max(bound), need)?;
            let f = q.field();
            let col_series: Vec<TSeries> = columns.iter().map(|m| lp.mono(m.0, need)).collect();
            let aff_series: Vec<TSeries> = affine.iter().map(|e| lp.mono(*e, need)).collect();
            for j in 0..need {
                for digit in 0..q.degree() {
                    let pick = |s: &TSeries| -> u64 {
                        if j < s.prec() {
                            f.digits(s.coeff(j))[digit as usize]
                        } else {
                            0
                        }
                    };
                    if cp.singular {
                        let probe: Vec<u64> = aff_series.iter().map(pick).collect();
                        if !local.insert(&fp, &probe) {
                            continue;
                        }
                    }
                    rows.push(col_series.iter().map(pick).collect());
                    tags.push(RowTag { place: q.label().to_string(), t_power: j, digit });
                }
            }
        }
    }
    Ok(AdjointSystem { degree: n, columns, rows, tags, ctx: fp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::curve_load;

    const QUARTIC: &str = "X^3*Z+X^4+Y^3*Z+Y*Z^3";

    #[test]
    fn quartic_genus_and_adjunction() {
        let c = curve_load(QUARTIC, 2).unwrap();
        assert_eq!(adjunction_divisor(&c).unwrap().to_string(), "2*P2");
        assert_eq!(genus(&c).unwrap(), 2);
    }

    #[test]
    fn cusp_uses_second_quotient() {
        // y^2 = x^3 in char 2: f_y = 0 and x' = 0, so only f_x / y' is defined
        let c = curve_load("X^3+Y^2*Z", 2).unwrap();
        let q = c.singular_places()[0];
        let dd = dedekind_orders(&c, q).unwrap();
        assert_eq!(dd, DedekindOrders { via_fy: None, via_fx: Some(2) });
        assert_eq!(genus(&c).unwrap(), 0);
    }

    #[test]
    fn smooth_curves_have_empty_adjunction() {
        let c = curve_load("X^3*Y+Y^3*Z+Z^3*X", 2).unwrap();
        assert!(adjunction_divisor(&c).unwrap().is_zero());
        assert_eq!(genus(&c).unwrap(), 3);
    }

    #[test]
    fn adjoint_lines_for_quartic() {
        let c = curve_load(QUARTIC, 2).unwrap();
        // only the condition at the cusp: ord >= 2 leaves Y + Z, X, and Z... kernel of b + c = 0
        let sys = adjoint_system(&c, &Divisor::new(), 1).unwrap();
        assert_eq!(sys.rows.len(), 1);
        let sols: Vec<String> = sys.solutions().iter().map(|f| f.to_string()).collect();
        assert_eq!(sols, ["X", "Y+Z"]);
        // one more order at the cusp forces a = 0 as well
        let sys = adjoint_system(&c, &Divisor::single("P2", 1), 1).unwrap();
        let sols: Vec<String> = sys.solutions().iter().map(|f| f.to_string()).collect();
        assert_eq!(sols, ["Y+Z"]);
    }
}
