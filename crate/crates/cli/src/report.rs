use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use wsemi_core::curve::Irreducibility;
use wsemi_core::{
    adjunction_divisor, conductor_exponent, divisor_parse, genus, pole_order, Curve, Error, RatFun, Weierstrass,
};

use crate::svg;
use crate::Failure;

#[derive(Serialize)]
struct Function {
    num: String,
    den: String,
}

impl From<&RatFun> for Function {
    fn from(f: &RatFun) -> Function {
        Function { num: f.num.to_string(), den: f.den.to_string() }
    }
}

#[derive(Serialize)]
struct PlaceRow {
    label: String,
    point: String,
    degree: u32,
    point_degree: u32,
    branch: usize,
    singular: bool,
    conductor_exponent: u32,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn place_rows(c: &Curve) -> Result<Vec<PlaceRow>, Failure> {
    let mut rows = Vec::new();
    for q in c.places() {
        rows.push(PlaceRow {
            label: q.label().to_string(),
            point: q.point().to_string(),
            degree: q.degree(),
            point_degree: q.point_degree(),
            branch: q.branch_index(),
            singular: q.is_singular(),
            conductor_exponent: conductor_exponent(c, q)?,
        });
    }
    Ok(rows)
}

fn table(rows: &[PlaceRow]) -> String {
    let w = rows.iter().map(|r| r.point.len()).max().unwrap_or(5).max(5);
    let lw = rows.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
    let mut out = format!("{:<lw$}  {:<w$}  deg  branch  singular  d_Q\n", "label", "point");
    for r in rows {
        let _ = writeln!(
            out,
            "{:<lw$}  {:<w$}  {:>3}  {:>6}  {:<8}  {:>3}",
            r.label,
            r.point,
            r.degree,
            r.branch,
            if r.singular { "yes" } else { "no" },
            r.conductor_exponent
        );
    }
    out
}

#[derive(Serialize)]
struct Info {
    p: u64,
    form: String,
    degree: u32,
    genus: u32,
    adjunction_divisor: String,
    irreducibility: String,
    enumerated_degree: u32,
    places: Vec<PlaceRow>,
}

fn irreducibility(c: &Curve) -> String {
    match c.irreducibility() {
        Irreducibility::SmoothRationalPoint => "absolutely irreducible (smooth rational point)".into(),
        Irreducibility::CoprimeSmoothPoints(a, b) => {
            format!("absolutely irreducible (smooth points of degrees {} and {})", a, b)
        }
        Irreducibility::Unverified => "irreducible over F_p; absolute irreducibility not certified".into(),
    }
}

pub fn info(c: &Curve, as_json: bool) -> Result<String, Failure> {
    let info = Info {
        p: c.p(),
        form: c.form().to_string(),
        degree: c.degree(),
        genus: genus(c)?,
        adjunction_divisor: adjunction_divisor(c)?.to_string(),
        irreducibility: irreducibility(c),
        enumerated_degree: c.enumerated_degree(),
        places: place_rows(c)?,
    };
    if as_json {
        return Ok(json(&info));
    }
    let mut out = String::new();
    let _ = writeln!(out, "curve: {} over F_{}", info.form, info.p);
    let _ = writeln!(out, "degree: {}", info.degree);
    let _ = writeln!(out, "genus: {}", info.genus);
    let _ = writeln!(out, "A = {}", info.adjunction_divisor);
    let _ = writeln!(out, "{}", info.irreducibility);
    let _ = writeln!(out, "places of degree <= {}:", info.enumerated_degree);
    out.push_str(&table(&info.places));
    Ok(out)
}

pub fn places(c: &Curve, as_json: bool) -> Result<String, Failure> {
    let rows = place_rows(c)?;
    if as_json {
        return Ok(json(&rows));
    }
    Ok(table(&rows))
}

#[derive(Serialize)]
struct Basis {
    divisor: String,
    degree: i64,
    dim: usize,
    denominator: String,
    numerators: Vec<String>,
}

pub fn lbasis(c: &Curve, text: &str, as_json: bool) -> Result<String, Failure> {
    let d = divisor_parse(text, c)?;
    let b = wsemi_core::lbasis(c, &d)?;
    let rep = Basis {
        divisor: d.to_string(),
        degree: d.degree(c)?,
        dim: b.dim(),
        denominator: b.h0.to_string(),
        numerators: b.numerators.iter().map(|n| n.to_string()).collect(),
    };
    if as_json {
        return Ok(json(&rep));
    }
    let mut out = String::new();
    let _ = writeln!(out, "D = {} (degree {})", rep.divisor, rep.degree);
    let _ = writeln!(out, "l(D) = {}", rep.dim);
    if rep.dim > 0 {
        let _ = writeln!(out, "denominator: {}", rep.denominator);
    }
    for (i, n) in rep.numerators.iter().enumerate() {
        let _ = writeln!(out, "f{} = {}", i + 1, n);
    }
    Ok(out)
}

fn parse_vector(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Failure::usage(format!("bad entry '{}' in --m", s.trim()))))
        .collect()
}

fn split_labels(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).collect()
}

#[derive(Serialize)]
struct QuotientRow {
    index: usize,
    place: String,
    dim: u32,
    function: Option<Function>,
    pole_order: Option<i64>,
    basis_pole_orders: Vec<i64>,
}

#[derive(Serialize)]
struct RrQuot {
    m: Vec<i64>,
    points: Vec<String>,
    ell: usize,
    quotients: Vec<QuotientRow>,
    total: u32,
}

pub fn rrquot(c: &Curve, m: &str, points: &str, chart: Option<usize>, as_json: bool) -> Result<String, Failure> {
    let m = parse_vector(m)?;
    let labels = split_labels(points);
    if m.len() != labels.len() {
        return Err(Failure::usage(format!("--m has {} entries but --points has {}", m.len(), labels.len())));
    }
    let w = Weierstrass::new(c);
    let places = w.marked(&labels)?;
    let which: Vec<usize> = match chart {
        Some(i) if i == 0 || i > labels.len() => {
            return Err(Failure::usage(format!("--chart must lie in 1..={}", labels.len())));
        }
        Some(i) => vec![i - 1],
        None => (0..labels.len()).collect(),
    };
    let mut rows = Vec::new();
    for i in which {
        let q = w.rr_quotient(&m, &labels, i)?;
        let pole = match &q.representative {
            Some(f) => Some(pole_order(c, f, places[i])?),
            None => None,
        };
        rows.push(QuotientRow {
            index: i + 1,
            place: labels[i].to_string(),
            dim: q.dim,
            function: q.representative.as_ref().map(Function::from),
            pole_order: pole,
            basis_pole_orders: q.pole_orders,
        });
    }
    let d = Weierstrass::divisor(&m, &places);
    let rep = RrQuot {
        m: m.clone(),
        points: labels.iter().map(|s| s.to_string()).collect(),
        ell: w.ell(&d)?,
        quotients: rows,
        total: w.rr_quotient_full(&m, &labels)?,
    };
    if as_json {
        return Ok(json(&rep));
    }
    let mut out = String::new();
    let _ = writeln!(out, "D = {}", d);
    let _ = writeln!(out, "l(D) = {}", rep.ell);
    for r in &rep.quotients {
        let orders: Vec<String> = r.basis_pole_orders.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "i = {} ({}): dim {}", r.index, r.place, r.dim);
        let _ = writeln!(out, "  basis pole orders at {}: {}", r.place, orders.join(" "));
        if let (Some(f), Some(po)) = (&r.function, r.pole_order) {
            let _ = writeln!(out, "  f = ({})/({})", f.num, f.den);
            let _ = writeln!(out, "  pole order {} at {} (valuation {})", po, r.place, -po);
        }
    }
    let _ = writeln!(out, "dim L(mP)/L((m-1)P) = {}", rep.total);
    Ok(out)
}

#[derive(Serialize)]
struct NonGap {
    m: u32,
    function: Function,
}

#[derive(Serialize)]
struct OnePointReport {
    place: String,
    genus: u32,
    limit: u32,
    gaps: Vec<u32>,
    nongaps: Vec<NonGap>,
}

fn pairs(v: &[[u32; 2]]) -> String {
    v.iter().map(|[a, b]| format!("({},{})", a, b)).collect::<Vec<_>>().join(" ")
}

pub fn semigroup(
    c: &Curve,
    points: &str,
    limit: Option<u32>,
    as_json: bool,
    svg_path: Option<&Path>,
) -> Result<String, Failure> {
    let labels = split_labels(points);
    let w = Weierstrass::new(c);
    let g = genus(c)?;
    match labels.as_slice() {
        [p] => {
            if svg_path.is_some() {
                return Err(Failure::usage("--svg needs two places".into()));
            }
            let limit = limit.unwrap_or((2 * g).max(1));
            let r = w.semigroup_one(p, limit)?;
            let rep = OnePointReport {
                place: r.place.clone(),
                genus: g,
                limit,
                gaps: r.gaps.clone(),
                nongaps: r.functions.iter().map(|(m, f)| NonGap { m: *m, function: f.into() }).collect(),
            };
            if as_json {
                return Ok(json(&rep));
            }
            let mut out = String::new();
            let _ = writeln!(out, "place: {}", rep.place);
            let _ = writeln!(out, "genus: {}", g);
            if rep.gaps.is_empty() {
                let _ = writeln!(out, "no gaps");
            } else {
                let gs: Vec<String> = rep.gaps.iter().map(|m| m.to_string()).collect();
                let _ = writeln!(out, "gaps: {}", gs.join(" "));
            }
            let _ = writeln!(out, "nongaps up to {}:", limit);
            for n in &rep.nongaps {
                let _ = writeln!(out, "  {}: ({})/({})", n.m, n.function.num, n.function.den);
            }
            Ok(out)
        }
        [p1, p2] => {
            if limit.is_some() {
                return Err(Failure::usage("--limit applies to a single place".into()));
            }
            let b = w.two_point(p1, p2)?;
            if let Some(path) = svg_path {
                std::fs::write(path, svg::lattice(&b))
                    .map_err(|e| Failure::io(format!("cannot write {}: {}", path.display(), e)))?;
            }
            if as_json {
                return Ok(json(&b));
            }
            let mut out = String::new();
            let _ = writeln!(out, "places: {}, {}", p1, p2);
            let _ = writeln!(out, "genus: {}", b.genus);
            if b.gaps.is_empty() {
                let _ = writeln!(out, "no gaps");
            } else {
                let _ = writeln!(out, "gaps ({}): {}", b.gaps.len(), pairs(&b.gaps));
            }
            let _ = writeln!(out, "minimal nongaps: {}", if b.minimal_nongaps.is_empty() { "none".into() } else { pairs(&b.minimal_nongaps) });
            let _ = writeln!(out, "pure gaps: {}", if b.pure_gaps.is_empty() { "none".into() } else { pairs(&b.pure_gaps) });
            Ok(out)
        }
        _ => Err(Error::InvalidArgument("semigroup takes one or two places".into()).into()),
    }
}
