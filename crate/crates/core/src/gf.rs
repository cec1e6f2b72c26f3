//! Exact arithmetic in F_p and F_{p^k}.
//!
//! Elements of F_{p^k} are polynomials of degree < k over F_p reduced modulo a
//! fixed monic irreducible. Internally an element is packed into a `u64` as
//! `sum c_i p^i`; containers carry the field context next to raw values.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub mod upoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("no monic irreducible polynomial of degree {k} over F_{p}")]
    NoIrreducibleFound { p: u64, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    MixedFields,
    #[error("F_{p}^{sub} does not embed in F_{p}^{sup}")]
    NotASubfield { p: u64, sub: u32, sup: u32 },
    #[error("F_{p}^{k} does not fit the 64-bit element encoding")]
    FieldTooLarge { p: u64, k: u32 },
}

/// Largest characteristic accepted; keeps products of residues inside u64.
pub const MAX_PRIME: u64 = (1 << 31) - 1;
const TABLE_LIMIT: u64 = 1 << 16;

struct Tables {
    log: Vec<u32>,
    exp: Vec<u64>,
}

/// A finite field F_{p^k} together with its defining modulus.
pub struct FieldCtx {
    p: u64,
    k: u32,
    modulus: Vec<u64>,
    order: u64,
    pow_p: Vec<u64>,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.k)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn cache() -> &'static Mutex<HashMap<(u64, u32), Arc<FieldCtx>>> {
    static C: OnceLock<Mutex<HashMap<(u64, u32), Arc<FieldCtx>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build (or fetch) the canonical F_{p^k}.
///
/// The modulus is the first monic irreducible of degree k when coefficient
/// vectors (c_0, .., c_{k-1}) are scanned in lexicographic order. For k = 1
/// the modulus is `x`.
pub fn field_make(p: u64, k: u32) -> Result<Arc<FieldCtx>, GfError> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if k == 0 {
        return Err(GfError::NoIrreducibleFound { p, k });
    }
    let order = p.checked_pow(k).ok_or(GfError::FieldTooLarge { p, k })?;
    if let Some(c) = cache().lock().unwrap().get(&(p, k)) {
        return Ok(c.clone());
    }
    let ctx = if k == 1 {
        FieldCtx::raw(p, 1, vec![0, 1], order)
    } else {
        let fp = field_make(p, 1)?;
        let mut found = None;
        for n in 0..p.pow(k) {
            let mut m = vec![0u64; k as usize + 1];
            let mut r = n;
            for i in (0..k as usize).rev() {
                m[i] = r % p;
                r /= p;
            }
            m[k as usize] = 1;
            if m[0] == 0 {
                continue;
            }
            if upoly::is_irreducible(&fp, &m) {
                found = Some(m);
                break;
            }
        }
        let m = found.ok_or(GfError::NoIrreducibleFound { p, k })?;
        FieldCtx::raw(p, k, m, order)
    };
    let ctx = Arc::new(ctx);
    cache().lock().unwrap().insert((p, k), ctx.clone());
    Ok(ctx)
}

impl FieldCtx {
    fn raw(p: u64, k: u32, modulus: Vec<u64>, order: u64) -> FieldCtx {
        let mut pow_p = Vec::with_capacity(k as usize);
        let mut acc = 1u64;
        for i in 0..k {
            pow_p.push(acc);
            if i + 1 < k {
                acc *= p;
            }
        }
        let mut ctx = FieldCtx { p, k, modulus, order, pow_p, tables: None };
        if k > 1 && order <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx
    }

    fn build_tables(&self) -> Tables {
        let q = self.order;
        let factors = prime_factors(q - 1);
        let mut g = 0;
        for cand in 2..q {
            if factors.iter().all(|&r| self.pow_slow(cand, (q - 1) / r) != 1) {
                g = cand;
                break;
            }
        }
        assert!(g != 0, "multiplicative group of {:?} has no generator", self);
        let mut exp = vec![0u64; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for i in 0..(q as usize - 1) {
            exp[i] = x;
            exp[i + q as usize - 1] = x;
            log[x as usize] = i as u32;
            x = self.mul_poly(x, g);
        }
        Tables { log, exp }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    /// Number of elements, p^k.
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    pub fn digits(&self, a: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut r = a;
        for _ in 0..self.k {
            v.push(r % self.p);
            r /= self.p;
        }
        v
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        let mut v = 0u64;
        for (i, &c) in d.iter().enumerate().take(self.k as usize) {
            v += (c % self.p) * self.pow_p[i];
        }
        v
    }

    /// Sort key comparing coefficient vectors low degree first.
    pub fn lex_key(&self, a: u64) -> u64 {
        let mut r = a;
        let mut key = 0u64;
        for _ in 0..self.k {
            key = key * self.p + r % self.p;
            r /= self.p;
        }
        key
    }

    pub fn from_int(&self, i: i64) -> u64 {
        i.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut x, mut y, mut out) = (a, b, 0u64);
            for i in 0..self.k as usize {
                let s = (x % self.p + y % self.p) % self.p;
                out += s * self.pow_p[i];
                x /= self.p;
                y /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let (mut x, mut out) = (a, 0u64);
            for i in 0..self.k as usize {
                let d = x % self.p;
                if d != 0 {
                    out += (self.p - d) * self.pow_p[i];
                }
                x /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            return t.exp[t.log[a as usize] as usize + t.log[b as usize] as usize];
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: u64, b: u64) -> u64 {
        let (p, k) = (self.p, self.k as usize);
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let m = self.modulus[j];
                prod[i - k + j] = (prod[i - k + j] + (p - c) * m) % p;
            }
        }
        self.from_digits(&prod[..k])
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        if let (Some(t), true) = (&self.tables, a != 0) {
            let l = (t.log[a as usize] as u128 * e as u128 % (self.order as u128 - 1)) as usize;
            return t.exp[l];
        }
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        if self.k == 1 {
            let (mut r0, mut r1) = (self.p as i64, a as i64);
            let (mut s0, mut s1) = (0i64, 1i64);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (s0, s1) = (s1, s0 - q * s1);
            }
            return Ok(s0.rem_euclid(self.p as i64) as u64);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize] as usize;
            return Ok(t.exp[(self.order as usize - 1 - l) % (self.order as usize - 1)]);
        }
        // Euclid over F_p[x] against the modulus.
        let fp = field_make(self.p, 1).expect("prime subfield");
        let (g, s, _) = upoly::xgcd(&fp, &self.digits(a), &self.modulus);
        debug_assert_eq!(g, vec![1]);
        Ok(self.from_digits(&s))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(a, self.p)
    }

    /// Degree over F_p of the subfield generated by `a`.
    pub fn elem_degree(&self, a: u64) -> u32 {
        let mut x = a;
        for j in 1..=self.k {
            x = self.frobenius(x);
            if x == a && self.k.is_multiple_of(j) {
                return j;
            }
        }
        self.k
    }

    /// Iterator over all elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order
    }
}

/// The embedding F_{p^a} -> F_{p^b} sending the generator of the smaller
/// field to the first root (by `lex_key`) of its modulus in the larger one.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: Arc<FieldCtx>,
    sup: Arc<FieldCtx>,
    basis: Vec<u64>,
}

impl Embedding {
    pub fn new(sub: &Arc<FieldCtx>, sup: &Arc<FieldCtx>) -> Result<Embedding, GfError> {
        if sub.p != sup.p || !sup.k.is_multiple_of(sub.k) {
            return Err(GfError::NotASubfield { p: sub.p, sub: sub.k, sup: sup.k });
        }
        let theta = if sub.k == 1 {
            0
        } else {
            let roots = upoly::roots(sup, &sub.modulus);
            roots
                .into_iter()
                .map(|(r, _)| r)
                .min_by_key(|&r| sup.lex_key(r))
                .ok_or(GfError::NotASubfield { p: sub.p, sub: sub.k, sup: sup.k })?
        };
        let mut basis = Vec::with_capacity(sub.k as usize);
        let mut acc = 1u64;
        for _ in 0..sub.k {
            basis.push(acc);
            acc = sup.mul(acc, theta);
        }
        Ok(Embedding { sub: sub.clone(), sup: sup.clone(), basis })
    }

    pub fn sub(&self) -> &Arc<FieldCtx> {
        &self.sub
    }
    pub fn sup(&self) -> &Arc<FieldCtx> {
        &self.sup
    }

    pub fn apply(&self, a: u64) -> u64 {
        if self.sub.k == 1 {
            return a;
        }
        let d = self.sub.digits(a);
        let mut out = 0u64;
        for (c, &b) in d.iter().zip(&self.basis) {
            if *c != 0 {
                out = self.sup.add(out, self.sup.mul(*c, b));
            }
        }
        out
    }

    /// Inverse of `apply` on its image; `None` when `b` is not in the image.
    pub fn restrict(&self, b: u64) -> Option<u64> {
        let (p, ks, kb) = (self.sub.p, self.sub.k as usize, self.sup.k as usize);
        if ks == kb {
            // same field, same canonical modulus
            return Some(b);
        }
        // columns: digits of basis elements; augmented with digits of b
        let mut rows: Vec<Vec<u64>> = (0..kb).map(|_| vec![0u64; ks + 1]).collect();
        for (j, &e) in self.basis.iter().enumerate() {
            for (i, d) in self.sup.digits(e).into_iter().enumerate() {
                rows[i][j] = d;
            }
        }
        for (i, d) in self.sup.digits(b).into_iter().enumerate() {
            rows[i][ks] = d;
        }
        let fp = field_make(p, 1).ok()?;
        let piv = crate::linalg::rref(&fp, &mut rows, ks + 1);
        if piv.contains(&ks) {
            return None;
        }
        let mut c = vec![0u64; ks];
        for (r, &col) in piv.iter().enumerate() {
            c[col] = rows[r][ks];
        }
        Some(self.sub.from_digits(&c))
    }
}

/// A checked field element carrying its context.
#[derive(Clone)]
pub struct FFElem {
    ctx: Arc<FieldCtx>,
    rep: u64,
}

impl PartialEq for FFElem {
    fn eq(&self, o: &Self) -> bool {
        self.rep == o.rep && (Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx)
    }
}
impl Eq for FFElem {}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_elem(&self.ctx, self.rep))
    }
}

/// Render an element as a polynomial in the generator `w`.
pub fn format_elem(ctx: &FieldCtx, a: u64) -> String {
    if ctx.k == 1 {
        return a.to_string();
    }
    let d = ctx.digits(a);
    let mut parts = Vec::new();
    for i in (0..d.len()).rev() {
        let c = d[i];
        if c == 0 {
            continue;
        }
        let mon = match i {
            0 => String::new(),
            1 => "w".to_string(),
            _ => format!("w^{}", i),
        };
        parts.push(match (c, mon.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mon,
            (_, false) => format!("{}*{}", c, mon),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FFElem {
    /// Element from its coefficient vector (low degree first).
    pub fn new(ctx: &Arc<FieldCtx>, coeffs: &[u64]) -> FFElem {
        FFElem { ctx: ctx.clone(), rep: ctx.from_digits(coeffs) }
    }
    pub fn from_int(ctx: &Arc<FieldCtx>, i: i64) -> FFElem {
        FFElem { ctx: ctx.clone(), rep: ctx.from_int(i) }
    }
    pub fn from_raw(ctx: &Arc<FieldCtx>, rep: u64) -> FFElem {
        assert!(rep < ctx.order, "raw value out of range");
        FFElem { ctx: ctx.clone(), rep }
    }
    pub fn zero(ctx: &Arc<FieldCtx>) -> FFElem {
        FFElem::from_raw(ctx, 0)
    }
    pub fn one(ctx: &Arc<FieldCtx>) -> FFElem {
        FFElem::from_raw(ctx, 1)
    }
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn raw(&self) -> u64 {
        self.rep
    }
    pub fn coeffs(&self) -> Vec<u64> {
        self.ctx.digits(self.rep)
    }
    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }
    pub fn neg(&self) -> FFElem {
        FFElem { ctx: self.ctx.clone(), rep: self.ctx.neg(self.rep) }
    }
    pub fn inv(&self) -> Result<FFElem, GfError> {
        Ok(FFElem { ctx: self.ctx.clone(), rep: self.ctx.inv(self.rep)? })
    }
    pub fn pow(&self, e: u64) -> FFElem {
        FFElem { ctx: self.ctx.clone(), rep: self.ctx.pow(self.rep, e) }
    }
    pub fn add(&self, o: &FFElem) -> Result<FFElem, GfError> {
        ff_arith(self, o, ArithOp::Add)
    }
    pub fn sub(&self, o: &FFElem) -> Result<FFElem, GfError> {
        ff_arith(self, o, ArithOp::Sub)
    }
    pub fn mul(&self, o: &FFElem) -> Result<FFElem, GfError> {
        ff_arith(self, o, ArithOp::Mul)
    }
    pub fn div(&self, o: &FFElem) -> Result<FFElem, GfError> {
        ff_arith(self, o, ArithOp::Div)
    }
}

pub fn ff_arith(a: &FFElem, b: &FFElem, op: ArithOp) -> Result<FFElem, GfError> {
    if !Arc::ptr_eq(&a.ctx, &b.ctx) && *a.ctx != *b.ctx {
        return Err(GfError::MixedFields);
    }
    let c = &a.ctx;
    let rep = match op {
        ArithOp::Add => c.add(a.rep, b.rep),
        ArithOp::Sub => c.sub(a.rep, b.rep),
        ArithOp::Mul => c.mul(a.rep, b.rep),
        ArithOp::Div => c.div(a.rep, b.rep)?,
    };
    Ok(FFElem { ctx: c.clone(), rep })
}

/// Map `a` along the canonical embedding `sub -> sup`.
pub fn ff_embed(a: &FFElem, sub: &Arc<FieldCtx>, sup: &Arc<FieldCtx>) -> Result<FFElem, GfError> {
    if *a.ctx != **sub {
        return Err(GfError::MixedFields);
    }
    let e = Embedding::new(sub, sup)?;
    Ok(FFElem { ctx: sup.clone(), rep: e.apply(a.rep) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn all_fields() -> Vec<Arc<FieldCtx>> {
        [(2, 1), (3, 1), (2, 2), (2, 4), (3, 2), (5, 1), (7, 1), (5, 2), (2, 8)]
            .iter()
            .map(|&(p, k)| field_make(p, k).unwrap())
            .collect()
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(field_make(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(field_make(1, 1).unwrap_err(), GfError::NotPrime(1));
    }

    #[test]
    fn f16_modulus_is_first_in_lex_order() {
        // (1,0,0,1) precedes (1,1,0,0): x^4 + x^3 + 1
        assert_eq!(field_make(2, 4).unwrap().modulus(), &[1, 0, 0, 1, 1]);
        assert_eq!(field_make(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(field_make(3, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn f4_generator_squares() {
        let f4 = field_make(2, 2).unwrap();
        let w = FFElem::new(&f4, &[0, 1]);
        let w2 = w.mul(&w).unwrap();
        assert_eq!(w2.coeffs(), vec![1, 1]);
        assert_eq!(w2.mul(&w).unwrap(), FFElem::one(&f4));
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for ctx in all_fields() {
            let q = ctx.order();
            for _ in 0..1200 {
                let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
                assert_eq!(ctx.add(a, b), ctx.add(b, a));
                assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
                assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
                assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
                assert_eq!(ctx.add(a, ctx.neg(a)), 0);
                if a != 0 {
                    assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn table_and_schoolbook_agree() {
        let ctx = field_make(3, 4).unwrap();
        for a in 0..ctx.order() {
            assert_eq!(ctx.mul(a, 17 % ctx.order()), ctx.mul_poly(a, 17 % ctx.order()));
        }
    }

    #[test]
    fn large_field_without_tables() {
        let ctx = field_make(2, 20).unwrap();
        assert!(ctx.tables.is_none());
        let a = 0b1011_0111_0001u64;
        assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), 1);
        assert_eq!(ctx.pow(a, ctx.order() - 1), 1);
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        for ctx in all_fields() {
            for c in 0..ctx.p() {
                assert_eq!(ctx.frobenius(c), c);
            }
            let fixed = ctx.elements().filter(|&a| ctx.frobenius(a) == a).count() as u64;
            assert_eq!(fixed, ctx.p());
        }
    }

    #[test]
    fn division_by_zero_reported() {
        let f = field_make(5, 1).unwrap();
        let a = FFElem::from_int(&f, 3);
        assert_eq!(a.div(&FFElem::zero(&f)).unwrap_err(), GfError::DivisionByZero);
    }

    #[test]
    fn mixed_fields_reported() {
        let a = FFElem::one(&field_make(2, 2).unwrap());
        let b = FFElem::one(&field_make(2, 4).unwrap());
        assert_eq!(a.add(&b).unwrap_err(), GfError::MixedFields);
    }

    #[test]
    fn f4_into_f16_hits_first_order_three_element() {
        let f4 = field_make(2, 2).unwrap();
        let f16 = field_make(2, 4).unwrap();
        let w = FFElem::new(&f4, &[0, 1]);
        let img = ff_embed(&w, &f4, &f16).unwrap();
        // exhaustive scan for elements of multiplicative order 3
        let first = f16
            .elements()
            .filter(|&a| a != 1 && a != 0 && f16.pow(a, 3) == 1)
            .min_by_key(|&a| f16.lex_key(a))
            .unwrap();
        assert_eq!(img.raw(), first);
    }

    #[test]
    fn embedding_is_a_homomorphism_and_restricts_back() {
        for (a, b) in [(2u32, 4u32), (1, 3), (2, 6), (3, 6)] {
            let sub = field_make(2, a).unwrap();
            let sup = field_make(2, b).unwrap();
            let e = Embedding::new(&sub, &sup).unwrap();
            for x in sub.elements() {
                for y in sub.elements() {
                    assert_eq!(e.apply(sub.mul(x, y)), sup.mul(e.apply(x), e.apply(y)));
                    assert_eq!(e.apply(sub.add(x, y)), sup.add(e.apply(x), e.apply(y)));
                }
                assert_eq!(e.restrict(e.apply(x)), Some(x));
            }
            let image: std::collections::HashSet<u64> = sub.elements().map(|x| e.apply(x)).collect();
            for z in sup.elements() {
                assert_eq!(e.restrict(z).is_some(), image.contains(&z));
            }
        }
    }

    #[test]
    fn no_embedding_between_incompatible_degrees() {
        let a = field_make(2, 2).unwrap();
        let b = field_make(2, 3).unwrap();
        assert!(matches!(Embedding::new(&a, &b), Err(GfError::NotASubfield { .. })));
    }

    #[test]
    fn element_degree() {
        let f16 = field_make(2, 4).unwrap();
        let counts = f16.elements().fold([0usize; 5], |mut acc, a| {
            acc[f16.elem_degree(a) as usize] += 1;
            acc
        });
        assert_eq!(counts, [0, 2, 2, 0, 12]);
    }

    proptest::proptest! {
        #[test]
        fn inverse_roundtrip_f9(a in 1u64..9) {
            let f9 = field_make(3, 2).unwrap();
            let x = FFElem::from_raw(&f9, a);
            proptest::prop_assert_eq!(x.inv().unwrap().inv().unwrap(), x.clone());
            proptest::prop_assert_eq!(x.pow(8), FFElem::one(&f9));
        }
    }
}
