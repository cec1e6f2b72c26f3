//! Static SVG of a two-point gap lattice.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use wsemi_core::GapBox;

const CELL: u32 = 40;
const MARGIN: u32 = 60;

/// Box [0, 2g-1]^2: filled circles for nongaps, open circles for gaps,
/// the line m1 + m2 = 2g, axes labelled by the two places.
pub fn lattice(b: &GapBox) -> String {
    let side = 2 * b.genus;
    let span = side.max(1) * CELL;
    let (w, h) = (span + 2 * MARGIN, span + 2 * MARGIN);
    let x = |m: f64| MARGIN as f64 + m * CELL as f64 + CELL as f64 / 2.0;
    let y = |m: f64| (h - MARGIN) as f64 - m * CELL as f64 - CELL as f64 / 2.0;
    let gaps: BTreeSet<[u32; 2]> = b.gaps.iter().copied().collect();
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    // axes
    let (x0, y0) = (MARGIN as f64, (h - MARGIN) as f64);
    let _ = writeln!(s, r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#, x0 + span as f64);
    let _ = writeln!(s, r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{}" stroke="black"/>"#, y0 - span as f64);
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="{}" y="{}" text-anchor="middle" font-size="16">{}</text>"#,
        x0 + span as f64 / 2.0,
        y0 + 40.0,
        b.places[0]
    );
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="{}" y="{}" text-anchor="middle" font-size="16" transform="rotate(-90 {} {})">{}</text>"#,
        x0 - 40.0,
        y0 - span as f64 / 2.0,
        x0 - 40.0,
        y0 - span as f64 / 2.0,
        b.places[1]
    );
    for m in 0..side {
        let _ = writeln!(s, r#"<text class="tick" x="{}" y="{}" text-anchor="middle" font-size="12">{m}</text>"#, x(m as f64), y0 + 18.0);
        let _ = writeln!(s, r#"<text class="tick" x="{}" y="{}" text-anchor="end" font-size="12">{m}</text>"#, x0 - 8.0, y(m as f64) + 4.0);
    }
    // m1 + m2 = 2g through the box
    if side > 0 {
        let _ = writeln!(
            s,
            r#"<line class="diagonal" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="6 4"/>"#,
            x(1.0),
            y((side - 1) as f64),
            x((side - 1) as f64),
            y(1.0)
        );
    }
    for m1 in 0..side {
        for m2 in 0..side {
            let (cx, cy) = (x(m1 as f64), y(m2 as f64));
            if gaps.contains(&[m1, m2]) {
                let _ = writeln!(s, r#"<circle class="gap" cx="{cx}" cy="{cy}" r="8" fill="white" stroke="black" stroke-width="2"/>"#);
            } else {
                let _ = writeln!(s, r#"<circle class="nongap" cx="{cx}" cy="{cy}" r="8" fill="black"/>"#);
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marker_count_is_box_area() {
        let b = GapBox {
            genus: 2,
            places: vec!["P1".into(), "P2".into()],
            gaps: vec![[0, 1], [1, 0]],
            minimal_nongaps: vec![],
            pure_gaps: vec![],
            gaps_wrt_first: vec![],
            gaps_wrt_second: vec![],
        };
        let s = lattice(&b);
        assert_eq!(s.matches("<circle").count(), 16);
        assert_eq!(s.matches(r#"class="gap""#).count(), 2);
        assert!(s.contains(">P1</text>") && s.contains(">P2</text>"));
    }
}
