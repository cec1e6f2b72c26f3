//! Plane curves, their closed points and places.

mod branch;
mod divisor;
mod file;
mod place;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use divisor::{divisor_parse, label_cmp, Divisor};
pub use file::{parse_curve_file, CurveSpec};
pub use place::{Place, PlaceParam};

use crate::error::{Error, Result};
use crate::gf::{field_make, upoly, FieldCtx};
use crate::poly::{form_divides, monomials, parse_form, Form, ProjPoint};

/// Closed points of degree k are enumerated only while p^k stays below this.
pub const ENUMERATION_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConfig {
    /// Largest degree of closed points enumerated at load.
    pub max_ext_degree: u32,
    /// Default series precision; `None` means 2 d^2 + 16.
    pub precision: Option<usize>,
}

impl Default for CurveConfig {
    fn default() -> Self {
        CurveConfig { max_ext_degree: 4, precision: None }
    }
}

/// How absolute irreducibility was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// A smooth F_p-rational point exists.
    SmoothRationalPoint,
    /// Smooth points of coprime degrees exist.
    CoprimeSmoothPoints(u32, u32),
    /// No certificate among the enumerated points.
    Unverified,
}

/// A closed point together with the places above it.
#[derive(Debug)]
pub struct ClosedPoint {
    pub point: ProjPoint,
    pub singular: bool,
    /// delta invariant of one geometric point of the orbit.
    pub delta: u64,
    pub geometric_branches: usize,
    /// Indices into `Curve::places`.
    pub places: Vec<usize>,
}

pub struct Curve {
    ctx: Arc<FieldCtx>,
    form: Form,
    config: CurveConfig,
    enumerated_degree: u32,
    places: Vec<Place>,
    by_label: BTreeMap<String, usize>,
    points: Vec<ClosedPoint>,
    irreducibility: Irreducibility,
    pub(crate) adjunction: OnceLock<Result<Arc<crate::adjunction::AdjunctionData>>>,
    pub(crate) line_cache: Mutex<BTreeMap<Vec<u64>, Result<Divisor>>>,
}

impl std::fmt::Debug for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Curve({} over F_{})", self.form, self.ctx.p())
    }
}

/// Parse `F` over F_p and load the curve with default settings.
pub fn curve_load(text: &str, p: u64) -> Result<Curve> {
    let ctx = field_make(p, 1)?;
    let form = parse_form(text, &ctx)?;
    Curve::new(form, CurveConfig::default(), &[])
}

/// Places of degree at most `bound`, in canonical order.
pub fn enumerate_places(c: &Curve, bound: u32) -> Result<Vec<&Place>> {
    if bound > c.enumerated_degree {
        return Err(Error::UnsupportedDegree { needed: bound, max: c.enumerated_degree });
    }
    Ok(c.places.iter().filter(|q| q.degree() <= bound).collect())
}

impl Curve {
    pub fn from_spec(spec: &CurveSpec, config: CurveConfig) -> Result<Curve> {
        let ctx = field_make(spec.p, 1)?;
        let form = parse_form(&spec.form, &ctx)?;
        Curve::new(form, config, &spec.pinned)
    }

    pub fn new(form: Form, config: CurveConfig, pinned: &[(String, [i64; 3])]) -> Result<Curve> {
        let ctx = form.ctx().clone();
        if !ctx.is_prime_field() {
            return Err(Error::InvalidArgument("the defining form must have coefficients in F_p".into()));
        }
        let d = form.degree();
        if d == 0 || form.is_zero() {
            return Err(Error::DegenerateForm);
        }
        if let Some(g) = find_factor(&form) {
            return Err(Error::Reducible { p: ctx.p(), factor: g.to_string() });
        }
        let default_prec = config.precision.unwrap_or((2 * d * d + 16) as usize);
        let mut enumerated_degree = 1;
        for k in 2..=config.max_ext_degree {
            match ctx.p().checked_pow(k) {
                Some(q) if q <= ENUMERATION_LIMIT => enumerated_degree = k,
                _ => break,
            }
        }
        let grads = [form.partial(0), form.partial(1), form.partial(2)];
        let mut places = Vec::new();
        let mut points = Vec::new();
        for k in 1..=enumerated_degree {
            for pt in points_of_degree(&form, k)? {
                let pf = pt.ctx().clone();
                let mut singular = true;
                for g in &grads {
                    if g.eval(&pf, pt.coords())? != 0 {
                        singular = false;
                    }
                }
                let pb = branch::resolve_point(&form, &pt)?;
                let mut idx = Vec::new();
                for (bi, class) in pb.classes.into_iter().enumerate() {
                    idx.push(places.len());
                    places.push(Place::new(pt.clone(), singular, bi, class, default_prec));
                }
                points.push(ClosedPoint {
                    point: pt,
                    singular,
                    delta: pb.delta,
                    geometric_branches: pb.geometric_branches,
                    places: idx,
                });
            }
        }
        let by_label = assign_labels(&ctx, &form, &mut places, &points, pinned)?;
        let irreducibility = certify(&points, d);
        Ok(Curve {
            ctx,
            form,
            config,
            enumerated_degree,
            places,
            by_label,
            points,
            irreducibility,
            adjunction: OnceLock::new(),
            line_cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn p(&self) -> u64 {
        self.ctx.p()
    }
    pub fn form(&self) -> &Form {
        &self.form
    }
    pub fn degree(&self) -> u32 {
        self.form.degree()
    }
    pub fn config(&self) -> &CurveConfig {
        &self.config
    }
    /// Largest closed-point degree that was enumerated.
    pub fn enumerated_degree(&self) -> u32 {
        self.enumerated_degree
    }
    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }
    /// All enumerated places in canonical order.
    pub fn places(&self) -> &[Place] {
        &self.places
    }
    pub fn closed_points(&self) -> &[ClosedPoint] {
        &self.points
    }

    pub fn place(&self, label: &str) -> Result<&Place> {
        self.by_label.get(label).map(|&i| &self.places[i]).ok_or_else(|| Error::UnknownPlace(label.to_string()))
    }

    pub fn rational_places(&self) -> Vec<&Place> {
        self.places.iter().filter(|q| q.is_rational()).collect()
    }

    pub fn singular_places(&self) -> Vec<&Place> {
        self.places.iter().filter(|q| q.is_singular()).collect()
    }

    /// The closed point below a place.
    pub fn point_of(&self, place: &Place) -> &ClosedPoint {
        self.points.iter().find(|cp| cp.places.contains(&place.index)).expect("every place lies over a point")
    }
}

// Sort key: degree, then chart Z before Y before X, then coordinates by lex key.
fn point_key(pt: &ProjPoint) -> (u32, usize, [u64; 3]) {
    let c = pt.ctx();
    (c.k(), 2 - pt.chart(), pt.coords().map(|x| c.lex_key(x)))
}

/// Representatives of the closed points of exact degree k on F = 0.
fn points_of_degree(form: &Form, k: u32) -> Result<Vec<ProjPoint>> {
    let p = form.ctx().p();
    let ctx = field_make(p, k)?;
    let d = form.degree() as usize;
    let mut found = Vec::new();
    // chart Z: F(x, Y, 1) as a polynomial in Y
    for x in ctx.elements() {
        let mut xp = vec![1u64; d + 1];
        for i in 1..=d {
            xp[i] = ctx.mul(xp[i - 1], x);
        }
        let mut coeffs = vec![0u64; d + 1];
        for (m, c) in form.terms() {
            let b = m.0[1] as usize;
            coeffs[b] = ctx.add(coeffs[b], ctx.mul(c, xp[m.0[0] as usize]));
        }
        let coeffs = upoly::trim(coeffs);
        if coeffs.is_empty() {
            for y in ctx.elements() {
                found.push([x, y, 1]);
            }
        } else {
            for (y, _) in upoly::roots(&ctx, &coeffs) {
                found.push([x, y, 1]);
            }
        }
    }
    // chart Y: F(x, 1, 0)
    let mut line = vec![0u64; d + 1];
    for (m, c) in form.terms() {
        if m.0[2] == 0 {
            line[m.0[0] as usize] = ctx.add(line[m.0[0] as usize], c);
        }
    }
    let line = upoly::trim(line);
    if line.is_empty() {
        for x in ctx.elements() {
            found.push([x, 1, 0]);
        }
    } else {
        for (x, _) in upoly::roots(&ctx, &line) {
            found.push([x, 1, 0]);
        }
    }
    if form.eval(&ctx, &[1, 0, 0])? == 0 {
        found.push([1, 0, 0]);
    }
    let mut reps = Vec::new();
    for c in found {
        let deg = c.iter().map(|&v| ctx.elem_degree(v)).fold(1, lcm);
        if deg != k {
            continue;
        }
        let pt = ProjPoint::new(&ctx, c).unwrap();
        // keep only the smallest point of each Frobenius orbit
        let mut is_rep = true;
        let mut cur = c;
        for _ in 1..k {
            cur = cur.map(|v| ctx.frobenius(v));
            let other = ProjPoint::new(&ctx, cur).unwrap();
            if point_key(&other) < point_key(&pt) {
                is_rep = false;
                break;
            }
        }
        if is_rep {
            reps.push(pt);
        }
    }
    reps.sort_by_key(point_key);
    Ok(reps)
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Search space cap for exhaustive factor search.
const FACTOR_SEARCH_LIMIT: u64 = 1 << 22;

/// A proper factor of degree <= d/2 over F_p, by exhaustive trial division.
fn find_factor(form: &Form) -> Option<Form> {
    let ctx = form.ctx();
    let p = ctx.p();
    let d = form.degree();
    for e in 1..=d / 2 {
        let monos = monomials(e);
        let n = monos.len() as u32;
        let total = match p.checked_pow(n) {
            Some(t) if t <= FACTOR_SEARCH_LIMIT => t,
            _ => break,
        };
        for v in 1..total {
            // digits most significant first against the monomial list
            let mut coeffs = vec![0u64; n as usize];
            let mut r = v;
            for i in (0..n as usize).rev() {
                coeffs[i] = r % p;
                r /= p;
            }
            if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            let g = Form::from_dense(ctx, e, &coeffs);
            if form_divides(&g, form) {
                return Some(g);
            }
        }
    }
    None
}

fn certify(points: &[ClosedPoint], d: u32) -> Irreducibility {
    if d == 1 {
        return Irreducibility::SmoothRationalPoint;
    }
    let smooth: Vec<u32> = points.iter().filter(|cp| !cp.singular).map(|cp| cp.point.ctx().k()).collect();
    if smooth.contains(&1) {
        return Irreducibility::SmoothRationalPoint;
    }
    for &a in &smooth {
        for &b in &smooth {
            if lcm(a, b) == a * b && a < b {
                return Irreducibility::CoprimeSmoothPoints(a, b);
            }
        }
    }
    Irreducibility::Unverified
}

fn assign_labels(
    ctx: &Arc<FieldCtx>,
    form: &Form,
    places: &mut [Place],
    points: &[ClosedPoint],
    pinned: &[(String, [i64; 3])],
) -> Result<BTreeMap<String, usize>> {
    let mut by_label = BTreeMap::new();
    let mut taken = vec![false; places.len()];
    for (label, c) in pinned {
        let raw = c.map(|v| ctx.from_int(v));
        let pt = ProjPoint::new(ctx, raw)
            .ok_or_else(|| Error::CurveFile { line: 0, msg: format!("{} has all coordinates zero", label) })?;
        if form.eval(ctx, pt.coords())? != 0 {
            return Err(Error::PointNotOnCurve(format!("{} = {}", label, pt)));
        }
        let cp = points
            .iter()
            .find(|cp| cp.point == pt)
            .ok_or_else(|| Error::PointNotOnCurve(format!("{} = {}", label, pt)))?;
        let i = cp.places[0];
        if taken[i] {
            return Err(Error::CurveFile { line: 0, msg: format!("{} pins a place that is already labelled", label) });
        }
        taken[i] = true;
        places[i].label = label.clone();
        by_label.insert(label.clone(), i);
    }
    let mut n = 1;
    for (i, q) in places.iter_mut().enumerate() {
        q.index = i;
        if taken[i] {
            continue;
        }
        while by_label.contains_key(&format!("P{}", n)) {
            n += 1;
        }
        q.label = format!("P{}", n);
        by_label.insert(q.label.clone(), i);
        n += 1;
    }
    Ok(by_label)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const QUARTIC: &str = "X^3*Z+X^4+Y^3*Z+Y*Z^3";

    #[test]
    fn quartic_rational_places() {
        let c = curve_load(QUARTIC, 2).unwrap();
        let pts: Vec<String> = enumerate_places(&c, 1).unwrap().iter().map(|q| q.point().to_string()).collect();
        assert_eq!(pts, ["[0:0:1]", "[0:1:1]", "[1:0:1]", "[1:1:1]", "[0:1:0]"]);
        let sing: Vec<&str> = c.singular_places().iter().map(|q| q.label()).collect();
        assert_eq!(sing, ["P2"]);
        assert_eq!(c.irreducibility(), Irreducibility::SmoothRationalPoint);
    }

    #[test]
    fn reducible_form_rejected() {
        assert_eq!(curve_load("X*Y", 2).unwrap_err(), Error::Reducible { p: 2, factor: "Y".into() });
        assert!(matches!(curve_load("X^2*Z+Y^2*Z+X^2*Y+Y^3", 3), Err(Error::Reducible { .. })));
    }

    #[test]
    fn pinned_labels_come_first() {
        let spec = CurveSpec { p: 2, form: QUARTIC.into(), pinned: vec![("P1".into(), [0, 1, 0]), ("Q".into(), [0, 1, 1])] };
        let c = Curve::from_spec(&spec, CurveConfig::default()).unwrap();
        assert_eq!(c.place("P1").unwrap().point().to_string(), "[0:1:0]");
        assert_eq!(c.place("Q").unwrap().point().to_string(), "[0:1:1]");
        assert_eq!(c.place("P2").unwrap().point().to_string(), "[0:0:1]");
        assert_eq!(c.place("P3").unwrap().point().to_string(), "[1:0:1]");
        let bad = CurveSpec { p: 2, form: QUARTIC.into(), pinned: vec![("A".into(), [1, 1, 0])] };
        assert!(matches!(Curve::from_spec(&bad, CurveConfig::default()), Err(Error::PointNotOnCurve(_))));
    }

    #[test]
    fn point_counts_match_brute_force() {
        // count F_{p^k}-points of the projective curve directly
        for (f, p) in [(QUARTIC, 2u64), ("X^3*Y+Y^3*Z+Z^3*X", 2), ("Y^2*Z+X^3+2*X*Z^2+Z^3", 5)] {
            let c = curve_load(f, p).unwrap();
            for k in 1..=c.enumerated_degree().min(3) {
                let fq = field_make(p, k).unwrap();
                let mut brute = 0u64;
                for x in fq.elements() {
                    for y in fq.elements() {
                        if c.form().eval(&fq, &[x, y, 1]).unwrap() == 0 {
                            brute += 1;
                        }
                    }
                    if c.form().eval(&fq, &[x, 1, 0]).unwrap() == 0 {
                        brute += 1;
                    }
                }
                if c.form().eval(&fq, &[1, 0, 0]).unwrap() == 0 {
                    brute += 1;
                }
                let from_points: u64 = c
                    .closed_points()
                    .iter()
                    .map(|cp| cp.point.ctx().k())
                    .filter(|j| k % j == 0)
                    .map(|j| j as u64)
                    .sum();
                assert_eq!(brute, from_points, "{} over F_{}^{}", f, p, k);
            }
        }
    }

    #[test]
    fn divisor_text_roundtrip() {
        let c = curve_load(QUARTIC, 2).unwrap();
        let d = divisor_parse("2*P1 - 1*P3 + P5", &c).unwrap();
        assert_eq!(d.to_string(), "2*P1-1*P3+1*P5");
        assert_eq!(d.degree(&c).unwrap(), 2);
        assert_eq!(divisor_parse("0", &c).unwrap(), Divisor::new());
        assert_eq!(divisor_parse("2*P999", &c).unwrap_err(), Error::UnknownPlace("P999".into()));
        assert!(matches!(divisor_parse("2P1", &c), Err(Error::DivisorSyntax { pos: 1, .. })));
    }
}
