//! Dense univariate polynomials over a `FieldCtx`, coefficients low degree first.
//!
//! Used for modulus selection, root finding and distinct-degree probing.

use super::FieldCtx;

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn sub(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn scale(f: &FieldCtx, a: &[u64], c: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(f: &FieldCtx, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by the zero polynomial");
    let inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], inv);
        q[dr - db] = c;
        for j in 0..=db {
            r[dr - db + j] = f.sub(r[dr - db + j], f.mul(c, b[j]));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    divrem(f, a, b).1
}

pub fn monic(f: &FieldCtx, a: &[u64]) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).unwrap();
            scale(f, &a[..=d], inv)
        }
    }
}

pub fn gcd(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// (g, s, t) with s*a + t*b = g monic.
pub fn xgcd(f: &FieldCtx, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match degree(&r0) {
        None => (r0, s0, t0),
        Some(d) => {
            let inv = f.inv(r0[d]).unwrap();
            (scale(f, &r0, inv), scale(f, &s0, inv), scale(f, &t0, inv))
        }
    }
}

pub fn mulmod(f: &FieldCtx, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &FieldCtx, a: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

pub fn eval(f: &FieldCtx, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn derivative(f: &FieldCtx, a: &[u64]) -> Vec<u64> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p()) as i64)))
            .collect(),
    )
}

/// Rabin's test for irreducibility over the field of `f`.
pub fn is_irreducible(f: &FieldCtx, a: &[u64]) -> bool {
    let n = match degree(a) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let a = monic(f, a);
    let q = f.order();
    let x = vec![0u64, 1];
    // x^{q^j} mod a for j = 0..=n
    let mut frob = vec![rem(f, &x, &a)];
    for j in 1..=n {
        let prev = frob[j - 1].clone();
        frob.push(powmod(f, &prev, q, &a));
    }
    if !sub(f, &frob[n], &frob[0]).is_empty() {
        return false;
    }
    for r in super::prime_factors(n as u64) {
        let h = sub(f, &frob[n / r as usize], &frob[0]);
        if degree(&gcd(f, &a, &h)) != Some(0) {
            return false;
        }
    }
    true
}

/// Distinct roots in the field of `f`, each with its multiplicity, sorted by
/// encoding. The zero polynomial has no roots by convention.
pub fn roots(f: &FieldCtx, a: &[u64]) -> Vec<(u64, usize)> {
    let a = monic(f, a);
    let d = match degree(&a) {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let mut found = Vec::new();
    if d == 1 {
        found.push(f.neg(a[0]));
    } else if f.order() <= 4096 {
        for x in f.elements() {
            if eval(f, &a, x) == 0 {
                found.push(x);
            }
        }
    } else {
        let x = vec![0u64, 1];
        let xq = powmod(f, &x, f.order(), &a);
        let g = gcd(f, &a, &sub(f, &xq, &x));
        split(f, &g, &mut found);
    }
    found.sort_unstable();
    found
        .into_iter()
        .map(|r| {
            let lin = vec![f.neg(r), 1];
            let mut m = 0;
            let mut cur = a.clone();
            loop {
                let (q, rr) = divrem(f, &cur, &lin);
                if !rr.is_empty() {
                    break;
                }
                m += 1;
                cur = q;
            }
            (r, m)
        })
        .collect()
}

// Equal-degree splitting of a product of distinct linear factors.
fn split(f: &FieldCtx, g: &[u64], out: &mut Vec<u64>) {
    let d = match degree(g) {
        None | Some(0) => return,
        Some(d) => d,
    };
    if d == 1 {
        let g = monic(f, g);
        out.push(f.neg(g[0]));
        return;
    }
    for delta in 1..f.order() {
        let h = if f.p() == 2 {
            // absolute trace of delta*x
            let mut t = vec![0u64, delta];
            let mut acc = Vec::new();
            for _ in 0..f.k() {
                acc = add(f, &acc, &t);
                t = mulmod(f, &t, &t, g);
            }
            gcd(f, g, &acc)
        } else {
            let base = vec![delta, 1];
            let pw = powmod(f, &base, (f.order() - 1) / 2, g);
            gcd(f, g, &sub(f, &pw, &[1]))
        };
        if let Some(dh) = degree(&h) {
            if dh > 0 && dh < d {
                let (q, _) = divrem(f, g, &h);
                split(f, &h, out);
                split(f, &q, out);
                return;
            }
        }
    }
    unreachable!("splitting failed for a split squarefree polynomial");
}

/// Smallest j >= 1 such that `a` has a root in the degree-j extension of the
/// field of `f`. `a` must be nonconstant.
pub fn first_ext_degree(f: &FieldCtx, a: &[u64]) -> usize {
    let a = monic(f, a);
    let x = vec![0u64, 1];
    let mut h = rem(f, &x, &a);
    for j in 1..=degree(&a).expect("nonconstant") {
        h = powmod(f, &h, f.order(), &a);
        let g = gcd(f, &a, &sub(f, &h, &x));
        if degree(&g).unwrap_or(0) > 0 {
            return j;
        }
    }
    unreachable!("every polynomial splits over an extension of degree <= its degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;

    #[test]
    fn irreducibles_over_f2_counted() {
        let f2 = field_make(2, 1).unwrap();
        // number of monic irreducibles of degree n over F_2: 2,1,2,3,6
        for (n, want) in [(1usize, 2usize), (2, 1), (3, 2), (4, 3), (5, 6)] {
            let mut count = 0;
            for bits in 0..(1u64 << n) {
                let mut a: Vec<u64> = (0..n).map(|i| (bits >> i) & 1).collect();
                a.push(1);
                if is_irreducible(&f2, &a) {
                    count += 1;
                }
            }
            assert_eq!(count, want, "degree {}", n);
        }
    }

    #[test]
    fn roots_with_multiplicity() {
        let f5 = field_make(5, 1).unwrap();
        // (x-1)^2 (x-3) (x^2+2)
        let a = mul(&f5, &mul(&f5, &[4, 1], &[4, 1]), &mul(&f5, &[2, 1], &[2, 0, 1]));
        assert_eq!(roots(&f5, &a), vec![(1, 2), (3, 1)]);
        assert_eq!(first_ext_degree(&f5, &[2, 0, 1]), 2);
    }

    #[test]
    fn cantor_zassenhaus_matches_brute_force() {
        for (p, k) in [(2u64, 13u32), (3, 8)] {
            let f = field_make(p, k).unwrap();
            let rs = [5u64, 77, 1000, 4001];
            let mut a = vec![1u64];
            for &r in &rs {
                a = mul(&f, &a, &[f.neg(r), 1]);
            }
            a = mul(&f, &a, &[1, 1, 0, 1]);
            let got: Vec<u64> = roots(&f, &a).into_iter().map(|(r, _)| r).collect();
            for r in got.iter() {
                assert_eq!(eval(&f, &a, *r), 0);
            }
            for r in rs {
                assert!(got.contains(&r));
            }
        }
    }

    #[test]
    fn xgcd_identity() {
        let f7 = field_make(7, 1).unwrap();
        let a = vec![1, 2, 3, 4];
        let b = vec![6, 0, 1];
        let (g, s, t) = xgcd(&f7, &a, &b);
        assert_eq!(add(&f7, &mul(&f7, &s, &a), &mul(&f7, &t, &b)), g);
    }
}
