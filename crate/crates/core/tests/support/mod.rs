//! Oracles shared by the property suite and the acceptance run.
#![allow(dead_code)]

use wsemi_core::curve::{parse_curve_file, CurveConfig};
use wsemi_core::gf::{field_make, upoly, FieldCtx};
use wsemi_core::poly::Form;
use wsemi_core::{genus, lbasis, pullback, valuation, Curve, Divisor, RatFun, Weierstrass};

pub fn load(text: &str) -> Curve {
    Curve::from_spec(&parse_curve_file(text).unwrap(), CurveConfig::default()).unwrap()
}

/// Curve file under the workspace `curves/` directory.
pub fn fixture(name: &str) -> Curve {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../curves").join(name);
    load(&std::fs::read_to_string(path).unwrap())
}

pub fn check_members(c: &Curve, f: &RatFun, d: &Divisor) {
    // div f >= -D wherever f could have a pole
    let poles = pullback(c, &f.den).unwrap();
    for l in poles.support() {
        let q = c.place(l).unwrap();
        assert!(valuation(c, f, q).unwrap() >= -d.get(l), "{} at {} for D = {}", f, l, d);
    }
}

/// Semigroup closure and region classification on the 2g box.
pub fn closure_box(c: &Curve, p1: &str, p2: &str) {
    let w = Weierstrass::new(c);
    let g = genus(c).unwrap() as i64;
    let n = 2 * g;
    let mut member = vec![vec![false; n as usize + 1]; n as usize + 1];
    for a in 0..=n {
        for b in 0..=n {
            let m = [a, b];
            let inside = w.in_semigroup(&m, &[p1, p2]).unwrap();
            member[a as usize][b as usize] = inside;
            let lemma = (0..2).all(|i| w.rr_quotient(&m, &[p1, p2], i).unwrap().dim == 1);
            assert_eq!(inside, lemma);
            for i in 0..2 {
                assert_eq!(w.nabla(&m, &[p1, p2], i).unwrap(), w.rr_quotient(&m, &[p1, p2], i).unwrap().dim == 1);
            }
            if a + b >= n && a > 0 && b > 0 {
                assert!(inside, "({}, {}) should be a nongap", a, b);
            }
            // quotient chain vs direct difference
            let d = Divisor::from_pairs([(p1, a), (p2, b)]);
            let dm = Divisor::from_pairs([(p1, a - 1), (p2, b - 1)]);
            let direct = w.ell(&d).unwrap() - w.ell(&dm).unwrap();
            assert_eq!(w.rr_quotient_full(&m, &[p1, p2]).unwrap() as usize, direct);
        }
    }
    for a in 0..=n as usize {
        for b in 0..=n as usize {
            for a2 in 0..=n as usize - a {
                for b2 in 0..=n as usize - b {
                    if member[a][b] && member[a2][b2] {
                        assert!(member[a + a2][b + b2]);
                    }
                }
            }
        }
    }
    let gb = w.two_point(p1, p2).unwrap();
    assert_eq!(gb.minimal_nongaps.len() as i64, g);
    for gap in &gb.gaps {
        assert!(!member[gap[0] as usize][gap[1] as usize]);
    }
    let count = member.iter().flatten().filter(|&&x| !x).count();
    assert_eq!(count, gb.gaps.len());
}

// Brute force on P^1: count reduced fractions A/B in tau with div >= -D.

/// tau-coordinate of each rational place, with p standing for infinity.
pub fn tau_values(c: &Curve) -> Vec<(String, u64)> {
    let f = c.ctx();
    let x = Form::var(f, 0);
    let y = Form::var(f, 1);
    let mut out = Vec::new();
    for q in c.rational_places() {
        let ratio = RatFun { num: y.clone(), den: x.clone() };
        let v = valuation(c, &ratio, q).unwrap();
        let t = if v < 0 {
            f.p()
        } else {
            (0..f.p())
                .find(|&a| {
                    let num = y.sub(&x.scale(a));
                    valuation(c, &RatFun { num, den: x.clone() }, q).unwrap() > 0
                })
                .unwrap()
        };
        out.push((q.label().to_string(), t));
    }
    out
}

pub fn all_polys(f: &FieldCtx, max_deg: usize) -> Vec<Vec<u64>> {
    let p = f.p();
    let mut out = vec![vec![]];
    let total = p.pow(max_deg as u32 + 1);
    for v in 1..total {
        let mut c = Vec::new();
        let mut r = v;
        while r > 0 {
            c.push(r % p);
            r /= p;
        }
        out.push(c);
    }
    out
}

pub fn brute_ell(f: &FieldCtx, taus: &[(String, u64)], d: &Divisor) -> u32 {
    let n = d.entries().iter().map(|(_, k)| *k).sum::<i64>() as usize;
    let at_inf = taus.iter().find(|(_, t)| *t == f.p()).map(|(l, _)| d.get(l)).unwrap_or(0);
    let polys = all_polys(f, n);
    let mut count = 1u64; // zero function
    for b in polys.iter().filter(|b| b.last() == Some(&1)) {
        // finite poles only at places of D, within D
        let mut rest = b.clone();
        let mut ok = true;
        for (l, t) in taus {
            if *t == f.p() {
                continue;
            }
            let lin = vec![f.neg(*t), 1];
            let mut e = 0;
            loop {
                let (qt, r) = upoly::divrem(f, &rest, &lin);
                if !r.is_empty() {
                    break;
                }
                rest = qt;
                e += 1;
            }
            if e > d.get(l) {
                ok = false;
            }
        }
        if !ok || upoly::degree(&rest) != Some(0) {
            continue;
        }
        let db = upoly::degree(b).unwrap() as i64;
        for a in polys.iter().filter(|a| !a.is_empty()) {
            if upoly::degree(&upoly::gcd(f, a, b)) != Some(0) {
                continue;
            }
            if upoly::degree(a).unwrap() as i64 - db <= at_inf {
                count += 1;
            }
        }
    }
    let mut e = 0;
    let mut c = count;
    while c > 1 {
        c /= f.p();
        e += 1;
    }
    assert_eq!(f.p().pow(e), count);
    e
}

pub fn divisors_up_to(labels: &[String], deg: i64) -> Vec<Divisor> {
    let mut out = vec![Divisor::new()];
    for l in labels {
        let mut next = Vec::new();
        for d in &out {
            let used: i64 = d.entries().iter().map(|(_, k)| *k).sum();
            for k in 0..=deg - used {
                let mut e = d.clone();
                e.add_at(l, k);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

/// l(D) against the P^1 count for every effective D of degree <= max_deg on
/// rational places.
pub fn oracle_rational(c: &Curve, max_deg: i64) {
    let fp = field_make(c.p(), 1).unwrap();
    let taus = tau_values(c);
    let labels: Vec<String> = taus.iter().map(|(l, _)| l.clone()).collect();
    for d in divisors_up_to(&labels, max_deg) {
        let ours = lbasis(c, &d).unwrap().dim() as u32;
        assert_eq!(ours, brute_ell(&fp, &taus, &d), "D = {}", d);
    }
}
