//! Weierstrass semigroups at one and two rational places.
//!
//! m is a nongap at (P_1..P_r) iff some function has pole order exactly m_i
//! at each P_i and no other poles; equivalently l(mP) = l(mP - P_i) + 1 for
//! every i.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::adjunction::genus;
use crate::curve::{Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::rroch::{lbasis, leading_coeff, LBasis, RatFun};

/// Outcome of one quotient L(mP) / L(mP - P_i).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub dim: u32,
    /// Basis function with pole order exactly m_i at P_i.
    pub representative: Option<RatFun>,
    /// Pole orders at P_i of the basis of L(mP), basis order.
    pub pole_orders: Vec<i64>,
    /// Spans L(mP - P_i) together with nothing else.
    pub complement: Vec<RatFun>,
}

/// Gaps at a single place.
#[derive(Clone, Debug, Serialize)]
pub struct OnePoint {
    pub genus: u32,
    pub place: String,
    pub gaps: Vec<u32>,
    pub nongaps: Vec<u32>,
    /// (m, function with pole divisor m P) for each listed nongap.
    #[serde(skip)]
    pub functions: Vec<(u32, RatFun)>,
}

/// Two-point gap structure.
#[derive(Clone, Debug, Serialize)]
pub struct GapBox {
    pub genus: u32,
    pub places: Vec<String>,
    pub gaps: Vec<[u32; 2]>,
    pub minimal_nongaps: Vec<[u32; 2]>,
    pub pure_gaps: Vec<[u32; 2]>,
    pub gaps_wrt_first: Vec<[u32; 2]>,
    pub gaps_wrt_second: Vec<[u32; 2]>,
}

/// Semigroup queries on one curve sharing a cache of L(D) bases.
pub struct Weierstrass<'c> {
    curve: &'c Curve,
    bases: Mutex<HashMap<Divisor, Arc<LBasis>>>,
    members: Mutex<HashMap<(Vec<String>, Vec<i64>), bool>>,
}

impl<'c> Weierstrass<'c> {
    pub fn new(curve: &'c Curve) -> Weierstrass<'c> {
        Weierstrass { curve, bases: Mutex::new(HashMap::new()), members: Mutex::new(HashMap::new()) }
    }

    pub fn curve(&self) -> &'c Curve {
        self.curve
    }

    pub fn lbasis(&self, d: &Divisor) -> Result<Arc<LBasis>> {
        if let Some(b) = self.bases.lock().unwrap().get(d) {
            return Ok(b.clone());
        }
        let b = Arc::new(lbasis(self.curve, d)?);
        self.bases.lock().unwrap().insert(d.clone(), b.clone());
        Ok(b)
    }

    pub fn ell(&self, d: &Divisor) -> Result<usize> {
        Ok(self.lbasis(d)?.dim())
    }

    /// Resolve labels to distinct rational places.
    pub fn marked(&self, labels: &[&str]) -> Result<Vec<&'c Place>> {
        let mut out: Vec<&'c Place> = Vec::new();
        for l in labels {
            let q = self.curve.place(l)?;
            if !q.is_rational() {
                return Err(Error::NotRationalPlace(l.to_string()));
            }
            if out.iter().any(|o| o.index() == q.index()) {
                return Err(Error::InvalidArgument(format!("place {} given twice", l)));
            }
            out.push(q);
        }
        Ok(out)
    }

    /// The divisor m_1 P_1 + ... + m_r P_r.
    pub fn divisor(m: &[i64], places: &[&Place]) -> Divisor {
        Divisor::from_pairs(places.iter().zip(m).map(|(q, &n)| (q.label(), n)))
    }

    /// L(D) / L(D - P) for a rational place P.
    pub fn quotient_at(&self, d: &Divisor, q: &Place) -> Result<Quotient> {
        let b = self.lbasis(d)?;
        let funcs = b.functions();
        let c = self.curve;
        let h0 = leading_coeff(c, &b.h0, q)?.0 as i64;
        let mut pole_orders = Vec::with_capacity(funcs.len());
        let mut leads = Vec::with_capacity(funcs.len());
        for n in &b.numerators {
            let (o, lc) = leading_coeff(c, n, q)?;
            pole_orders.push(h0 - o as i64);
            leads.push(lc);
        }
        let target = d.get(q.label());
        let Some(pivot) = pole_orders.iter().position(|&v| v == target) else {
            if pole_orders.iter().any(|&v| v > target) {
                return Err(Error::Inconsistent(format!("basis function of L({}) with pole above {}", d, target)));
            }
            return Ok(Quotient { dim: 0, representative: None, pole_orders, complement: funcs });
        };
        let f = q.field();
        let fp = c.ctx();
        let mut complement = Vec::new();
        for (j, g) in funcs.iter().enumerate() {
            if j == pivot {
                continue;
            }
            if pole_orders[j] == target {
                // g - (lc_g / lc_f) f loses the top pole
                let lam = f.div(leads[j], leads[pivot])?;
                let num = g.num.sub(&funcs[pivot].num.scale(lam));
                debug_assert!(fp.is_prime_field());
                complement.push(RatFun { num, den: g.den.clone() });
            } else {
                complement.push(g.clone());
            }
        }
        Ok(Quotient { dim: 1, representative: Some(funcs[pivot].clone()), pole_orders, complement })
    }

    /// dim L(mP) / L(mP - P_i), with i counted from 0.
    pub fn rr_quotient(&self, m: &[i64], labels: &[&str], i: usize) -> Result<Quotient> {
        let places = self.marked(labels)?;
        check_vector(m, places.len())?;
        if i >= places.len() {
            return Err(Error::InvalidArgument(format!("index {} out of range for {} places", i + 1, places.len())));
        }
        self.quotient_at(&Self::divisor(m, &places), places[i])
    }

    /// dim L(mP) / L((m - 1)P) as a telescoping sum of single steps.
    pub fn rr_quotient_full(&self, m: &[i64], labels: &[&str]) -> Result<u32> {
        let places = self.marked(labels)?;
        check_vector(m, places.len())?;
        let mut d = Self::divisor(m, &places);
        let mut total = 0;
        for q in &places {
            total += self.quotient_at(&d, q)?.dim;
            d.add_at(q.label(), -1);
        }
        Ok(total)
    }

    pub fn in_semigroup(&self, m: &[i64], labels: &[&str]) -> Result<bool> {
        let key = (labels.iter().map(|s| s.to_string()).collect::<Vec<_>>(), m.to_vec());
        if let Some(&v) = self.members.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let places = self.marked(labels)?;
        check_vector(m, places.len())?;
        let d = Self::divisor(m, &places);
        let mut member = true;
        for q in &places {
            if self.quotient_at(&d, q)?.dim == 0 {
                member = false;
                break;
            }
        }
        self.members.lock().unwrap().insert(key, member);
        Ok(member)
    }

    /// Some nongap n <= m with n_i = m_i exists.
    pub fn nabla(&self, m: &[i64], labels: &[&str], i: usize) -> Result<bool> {
        check_vector(m, labels.len())?;
        if i >= labels.len() {
            return Err(Error::InvalidArgument(format!("index {} out of range", i + 1)));
        }
        let mut n = vec![0i64; m.len()];
        loop {
            n[i] = m[i];
            if self.in_semigroup(&n, labels)? {
                return Ok(true);
            }
            // next point of the box with coordinate i pinned
            let mut k = 0;
            loop {
                if k == m.len() {
                    return Ok(false);
                }
                if k != i && n[k] < m[k] {
                    n[k] += 1;
                    break;
                }
                if k != i {
                    n[k] = 0;
                }
                k += 1;
            }
        }
    }

    pub fn semigroup_one(&self, label: &str, limit: u32) -> Result<OnePoint> {
        let q = self.marked(&[label])?[0];
        let g = genus(self.curve)?;
        if limit < 2 * g {
            return Err(Error::InvalidArgument(format!("limit {} is below 2g = {}", limit, 2 * g)));
        }
        let mut gaps = Vec::new();
        let mut nongaps = Vec::new();
        let mut functions = Vec::new();
        for m in 1..=limit {
            let r = self.quotient_at(&Divisor::single(q.label(), m as i64), q)?;
            match r.representative {
                Some(f) => {
                    nongaps.push(m);
                    functions.push((m, f));
                }
                None => gaps.push(m),
            }
        }
        if gaps.len() != g as usize || gaps.iter().any(|&m| m >= 2 * g) {
            return Err(Error::Inconsistent(format!("gaps {:?} at {} for genus {}", gaps, label, g)));
        }
        Ok(OnePoint { genus: g, place: label.to_string(), gaps, nongaps, functions })
    }

    /// For each gap m1 at P1, the least b with (m1, b) a nongap.
    pub fn minimal_nongaps(&self, p1: &str, p2: &str) -> Result<Vec<[u32; 2]>> {
        let places = self.marked(&[p1, p2])?;
        let g = genus(self.curve)?;
        let gaps1 = self.semigroup_one(p1, 2 * g)?.gaps;
        let mut left: Vec<u32> = self.semigroup_one(p2, 2 * g)?.gaps;
        let mut out = Vec::new();
        for &m1 in &gaps1 {
            // l(m1 P1 + b P2) - l((m1-1) P1 + b P2) is monotone in b and the
            // jump happens at a gap of P2 not used by a smaller m1
            let step = |b: u32| -> Result<bool> {
                let d = Divisor::from_pairs([(places[0].label(), m1 as i64), (places[1].label(), b as i64)]);
                Ok(self.quotient_at(&d, places[0])?.dim == 1)
            };
            let mut j = left.len();
            while j > 0 && step(left[j - 1])? {
                j -= 1;
            }
            if j == left.len() {
                return Err(Error::Inconsistent(format!("no minimal nongap above gap {} at {}", m1, p1)));
            }
            let beta = left.remove(j);
            if !self.in_semigroup(&[m1 as i64, beta as i64], &[p1, p2])? {
                return Err(Error::Inconsistent(format!("({}, {}) is not a nongap", m1, beta)));
            }
            out.push([m1, beta]);
        }
        Ok(out)
    }

    pub fn two_point(&self, p1: &str, p2: &str) -> Result<GapBox> {
        let g = genus(self.curve)?;
        let mins = self.minimal_nongaps(p1, p2)?;
        let mut back: Vec<[u32; 2]> = self.minimal_nongaps(p2, p1)?.iter().map(|&[a, b]| [b, a]).collect();
        back.sort();
        let mut sorted = mins.clone();
        sorted.sort();
        if sorted != back {
            return Err(Error::Inconsistent(format!("minimal nongaps {:?} and {:?} disagree", mins, back)));
        }
        let wrt1: BTreeSet<[u32; 2]> = mins.iter().flat_map(|&[a, beta]| (0..beta).map(move |b| [a, b])).collect();
        let wrt2: BTreeSet<[u32; 2]> = mins.iter().flat_map(|&[alpha, b]| (0..alpha).map(move |a| [a, b])).collect();
        let gaps: Vec<[u32; 2]> = wrt1.union(&wrt2).copied().collect();
        let pure_gaps: Vec<[u32; 2]> = wrt1.intersection(&wrt2).copied().collect();
        if let Some(m) = gaps.iter().find(|m| m[0] + m[1] >= 2 * g) {
            return Err(Error::Inconsistent(format!("gap {:?} lies on or above m1 + m2 = 2g", m)));
        }
        Ok(GapBox {
            genus: g,
            places: vec![p1.to_string(), p2.to_string()],
            gaps,
            minimal_nongaps: mins,
            pure_gaps,
            gaps_wrt_first: wrt1.into_iter().collect(),
            gaps_wrt_second: wrt2.into_iter().collect(),
        })
    }
}

fn check_vector(m: &[i64], r: usize) -> Result<()> {
    if m.len() != r {
        return Err(Error::InvalidArgument(format!("{} entries for {} places", m.len(), r)));
    }
    if m.iter().any(|&v| v < 0) {
        return Err(Error::InvalidArgument("m must be nonnegative".into()));
    }
    Ok(())
}

pub fn rr_quotient(c: &Curve, m: &[i64], labels: &[&str], i: usize) -> Result<Quotient> {
    Weierstrass::new(c).rr_quotient(m, labels, i)
}

pub fn rr_quotient_full(c: &Curve, m: &[i64], labels: &[&str]) -> Result<u32> {
    Weierstrass::new(c).rr_quotient_full(m, labels)
}

pub fn semigroup_one(c: &Curve, label: &str, limit: u32) -> Result<OnePoint> {
    Weierstrass::new(c).semigroup_one(label, limit)
}

pub fn minimal_nongaps(c: &Curve, p1: &str, p2: &str) -> Result<Vec<[u32; 2]>> {
    Weierstrass::new(c).minimal_nongaps(p1, p2)
}

pub fn two_point_gaps(c: &Curve, p1: &str, p2: &str) -> Result<GapBox> {
    Weierstrass::new(c).two_point(p1, p2)
}

pub fn nabla(c: &Curve, m: &[i64], labels: &[&str], i: usize) -> Result<bool> {
    Weierstrass::new(c).nabla(m, labels, i)
}
