//! SVG rendering of the embedded polygon and its curve systems.
//!
//! Geodesics of the Poincare disk are circular arcs orthogonal to the unit
//! circle; the arc through `p` and `q` has its Euclidean center `c` on the
//! solution of `2 c . p = |p|^2 + 1`, `2 c . q = |q|^2 + 1`, degenerating
//! to a straight segment when `p`, `q` are collinear with the origin.

use crate::cutter::BPos;
use crate::metric::{geodesic_point, PlanePoint, PolygonEmbedding};
use crate::pants::PantsDecomposition;
use crate::polygon::Polygon;

const PALETTE: [&str; 8] = [
    "#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#7f8c8d", "#2c3e50",
];

/// SVG path fragment for the geodesic from `p` to `q` (starting with `M`).
pub fn geodesic_path(p: PlanePoint, q: PlanePoint) -> String {
    let det = 4.0 * (p.x * q.y - p.y * q.x);
    if det.abs() < 1e-12 {
        return format!("M {:.6} {:.6} L {:.6} {:.6}", p.x, p.y, q.x, q.y);
    }
    let (bp, bq) = (p.norm_sq() + 1.0, q.norm_sq() + 1.0);
    let cx = (bp * 2.0 * q.y - bq * 2.0 * p.y) / det;
    let cy = (bq * 2.0 * p.x - bp * 2.0 * q.x) / det;
    let r = (cx * cx + cy * cy - 1.0).max(0.0).sqrt();
    let a1 = (p.y - cy).atan2(p.x - cx);
    let a2 = (q.y - cy).atan2(q.x - cx);
    let mut delta = a2 - a1;
    while delta > std::f64::consts::PI {
        delta -= 2.0 * std::f64::consts::PI;
    }
    while delta < -std::f64::consts::PI {
        delta += 2.0 * std::f64::consts::PI;
    }
    // Geodesic segments are minor arcs; the sweep flag follows the sign of
    // the turn (the viewBox keeps the mathematical orientation, y up is
    // flipped, so positive mathematical turn renders as sweep 1).
    let sweep = if delta > 0.0 { 1 } else { 0 };
    format!(
        "M {:.6} {:.6} A {:.6} {:.6} 0 0 {} {:.6} {:.6}",
        p.x, p.y, r, r, sweep, q.x, q.y
    )
}

/// Disk point of a boundary position, by geodesic interpolation along its
/// edge.
pub fn boundary_point(emb: &PolygonEmbedding, pos: BPos) -> PlanePoint {
    let k = emb.k;
    let a = emb.corner(pos.edge);
    let b = emb.corner(pos.edge % k + 1);
    let t = (*pos.t.numer() as f64) / (*pos.t.denom() as f64);
    geodesic_point(a, b, t)
}

/// Renders the polygon, its chords, and (optionally) the decomposition
/// curves into a standalone SVG document.
pub fn render(p: &Polygon, emb: &PolygonEmbedding, decomposition: Option<&PantsDecomposition>) -> String {
    let k = p.k;
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1 -1 2 2\">\n",
    );
    out.push_str("  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.004\"/>\n");
    // Polygon edges.
    for e in 1..=k {
        let path = geodesic_path(emb.corner(e), emb.corner(e % k + 1));
        out.push_str(&format!(
            "  <path d=\"{path}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"0.006\"/>\n"
        ));
    }
    // Chords gamma_t, faint.
    for t in 1..k / 2 {
        let path = geodesic_path(emb.corner(t + 1), emb.corner(k + 1 - t));
        out.push_str(&format!(
            "  <path d=\"{path}\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.003\" stroke-dasharray=\"0.02 0.01\"/>\n"
        ));
    }
    // Decomposition curves, one color each.
    if let Some(d) = decomposition {
        for (ci, curve) in d.curves.iter().enumerate() {
            let color = PALETTE[ci % PALETTE.len()];
            for ch in &curve.curve.chords {
                let path = geodesic_path(
                    boundary_point(emb, ch.a),
                    boundary_point(emb, ch.b),
                );
                out.push_str(&format!(
                    "  <path d=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"0.008\"/>\n"
                ));
            }
            let anchor = boundary_point(emb, curve.curve.chords[0].a);
            out.push_str(&format!(
                "  <text x=\"{:.4}\" y=\"{:.4}\" font-size=\"0.05\" fill=\"{color}\">{}</text>\n",
                anchor.x, anchor.y, curve.label
            ));
        }
    }
    // Corner labels.
    for i in 1..=k {
        let c = emb.corner(i);
        let (lx, ly) = (c.x * 1.06, c.y * 1.06);
        out.push_str(&format!(
            "  <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"0.01\" fill=\"#333333\"/>\n",
            c.x, c.y
        ));
        out.push_str(&format!(
            "  <text x=\"{lx:.4}\" y=\"{ly:.4}\" font-size=\"0.05\" fill=\"#333333\" text-anchor=\"middle\">{i}</text>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{ConeDatum, DataSet};
    use crate::metric::embed_polygon;
    use crate::pants::extract_pants;
    use crate::polygon::build_polygon;

    #[test]
    fn octagon_svg_is_well_formed() {
        let d = DataSet::new(
            8,
            0,
            0,
            vec![ConeDatum::new(1, 2), ConeDatum::new(1, 8), ConeDatum::new(3, 8)],
        );
        let p = build_polygon(&d).unwrap();
        let emb = embed_polygon(&p).unwrap();
        let dec = extract_pants(&p, &emb).unwrap();
        let svg = render(&p, &emb, Some(&dec));
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("viewBox=\"-1 -1 2 2\""));
        assert!(svg.contains("version=\"1.1\""));
        assert_eq!(svg.matches("<path").count() >= 8 + 3, true);
        // All arc radii positive and finite coordinates.
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }

    #[test]
    fn diameter_degenerates_to_line() {
        let p = PlanePoint::new(-0.5, 0.0);
        let q = PlanePoint::new(0.5, 0.0);
        let path = geodesic_path(p, q);
        assert!(path.contains(" L "));
    }
}
