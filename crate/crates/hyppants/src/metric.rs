//! Hyperbolic data: radial lengths, the Poincare-disk embedding of the
//! polygon, distances, curve lengths (coordinate oracle and closed form),
//! and admissibility against a Bers-type constant.
//!
//! Conventions. The polygon is centered at the origin with corner `i` at
//! polar angle `2 pi (i - 1) / k`. Corners with interior angle `2 pi / n1`
//! sit at hyperbolic radius `L1`, corners with `2 pi / n2` at `L2`, where
//!
//! ```text
//! cosh L1 = (cos(pi/n1) cos(pi/n) + cos(pi/n2)) / (sin(pi/n1) sin(pi/n))
//! cosh L2 = (cos(pi/n2) cos(pi/n) + cos(pi/n1)) / (sin(pi/n2) sin(pi/n))
//! ```
//!
//! In the `k = 2n` case the odd corners carry `2 pi / n2` (radius `L2`) and
//! the even corners `2 pi / n1` (radius `L1`); in the `k = n` case (`n1 = 2`)
//! every corner carries `2 pi / n2` at radius `L2` and `L1` is the apothem,
//! realized at the edge midpoints (the order-2 fixed points).
//!
//! The chord `gamma_i` joins corner `i + 1` to corner `k + 1 - i`; the chord
//! `gammatilde_i` joins the hyperbolic midpoints of edges `a_i` and
//! `a_{k+1-i}`. The closed form for `l(gamma_i)` is the hyperbolic law of
//! cosines at the center: with endpoint radii `R_a = R_b` (the two corners
//! have the same parity) and apex angle `4 pi i / k`,
//!
//! ```text
//! cosh l(gamma_i) = cosh R_a cosh R_b - sinh R_a sinh R_b cos(4 pi i / k).
//! ```
//!
//! Two alternative conventions circulate for the apex angle (`i pi / n` and
//! `(2i - 1) pi / n`) together with a `+cos` variant; they are retained
//! behind [`SignPolicy`] / [`ApexConvention`] and resolved against the
//! coordinate oracle, with the losing candidates reported rather than
//! silently discarded.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::MetricError;
use crate::polygon::Polygon;

/// Sign of the `cos` term in the closed-form length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SignPolicy {
    /// Resolve against the coordinate oracle (picks `Minus`).
    #[default]
    Auto,
    Plus,
    Minus,
}

/// Apex-angle convention for `gamma_i` at the polygon center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApexConvention {
    /// `i pi / n`: half-index central angle candidate.
    HalfIndex,
    /// `(2i - 1) pi / n`: central angle between corners `i` and `k + 1 - i`.
    OffsetIndex,
    /// `4 pi i / k`: central angle between the actual chord endpoints,
    /// corners `i + 1` and `k + 1 - i`.
    Central,
}

/// `L1`, `L2` and the ambient signature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialLengths {
    pub n: u64,
    pub n1: u64,
    pub n2: u64,
    pub l1: f64,
    pub l2: f64,
}

/// Computes `L1`, `L2` for signature `(0; n1, n2, n)`.
pub fn radial_lengths(n: u64, n1: u64, n2: u64) -> Result<RadialLengths, MetricError> {
    if (n1 as f64).recip() + (n2 as f64).recip() + (n as f64).recip() >= 1.0 {
        return Err(MetricError::NotHyperbolic { n, n1, n2 });
    }
    let (pn, p1, p2) = (
        std::f64::consts::PI / n as f64,
        std::f64::consts::PI / n1 as f64,
        std::f64::consts::PI / n2 as f64,
    );
    let cosh_l1 = (p1.cos() * pn.cos() + p2.cos()) / (p1.sin() * pn.sin());
    let cosh_l2 = (p2.cos() * pn.cos() + p1.cos()) / (p2.sin() * pn.sin());
    debug_assert!(cosh_l1 >= 1.0 && cosh_l2 >= 1.0);
    Ok(RadialLengths {
        n,
        n1,
        n2,
        l1: cosh_l1.acosh(),
        l2: cosh_l2.acosh(),
    })
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    fn c(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    fn from_c(z: Complex64) -> Self {
        PlanePoint { x: z.re, y: z.im }
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }
}

/// Hyperbolic distance between two points of the Poincare disk:
/// `cosh d = 1 + 2 |p - q|^2 / ((1 - |p|^2)(1 - |q|^2))`.
pub fn geodesic_dist(p: PlanePoint, q: PlanePoint) -> Result<f64, MetricError> {
    for pt in [p, q] {
        if pt.norm_sq() >= 1.0 {
            return Err(MetricError::OutsideDisk { x: pt.x, y: pt.y });
        }
    }
    let d2 = (p.x - q.x).powi(2) + (p.y - q.y).powi(2);
    let arg = 1.0 + 2.0 * d2 / ((1.0 - p.norm_sq()) * (1.0 - q.norm_sq()));
    Ok(arg.acosh())
}

/// Point at fraction `t` of the hyperbolic distance along the geodesic
/// segment from `p` to `q`.
pub fn geodesic_point(p: PlanePoint, q: PlanePoint, t: f64) -> PlanePoint {
    let (pc, qc) = (p.c(), q.c());
    // Translate p to the origin, scale the radial distance, translate back.
    let w = (qc - pc) / (Complex64::new(1.0, 0.0) - pc.conj() * qc);
    let r = w.norm();
    if r == 0.0 {
        return p;
    }
    let part = ((2.0 * r.atanh()) * t / 2.0).tanh();
    let m = w / r * part;
    PlanePoint::from_c((m + pc) / (Complex64::new(1.0, 0.0) + pc.conj() * m))
}

/// Hyperbolic midpoint of the geodesic segment from `p` to `q`.
pub fn hyperbolic_midpoint(p: PlanePoint, q: PlanePoint) -> PlanePoint {
    geodesic_point(p, q, 0.5)
}

/// The polygon embedded in the Poincare disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonEmbedding {
    pub k: usize,
    pub radial: RadialLengths,
    /// Disk coordinates of corner `i` (1-based at index `i - 1`).
    pub vertices: Vec<PlanePoint>,
    /// Hyperbolic midpoints of the edges (`mids[i - 1]` for edge `a_i`).
    pub mids: Vec<PlanePoint>,
    /// Common hyperbolic edge length.
    pub edge_length: f64,
}

/// Embeds the polygon with corner `i` at polar angle `2 pi (i - 1) / k`.
pub fn embed_polygon(p: &Polygon) -> Result<PolygonEmbedding, MetricError> {
    let radial = radial_lengths(p.n, p.n1, p.n2)?;
    let k = p.k;
    let is_2n = k == 2 * p.n as usize;
    let vertices: Vec<PlanePoint> = (1..=k)
        .map(|i| {
            let radius = if is_2n && i % 2 == 0 {
                radial.l1
            } else {
                radial.l2
            };
            let r = (radius / 2.0).tanh();
            let phi = 2.0 * std::f64::consts::PI * (i as f64 - 1.0) / k as f64;
            PlanePoint::new(r * phi.cos(), r * phi.sin())
        })
        .collect();
    let mids: Vec<PlanePoint> = (0..k)
        .map(|i| hyperbolic_midpoint(vertices[i], vertices[(i + 1) % k]))
        .collect();
    let edge_length = geodesic_dist(vertices[0], vertices[1])?;
    Ok(PolygonEmbedding {
        k,
        radial,
        vertices,
        mids,
        edge_length,
    })
}

impl PolygonEmbedding {
    /// 1-based corner coordinates (index taken mod `k`).
    pub fn corner(&self, i: usize) -> PlanePoint {
        self.vertices[(i - 1) % self.k]
    }

    /// 1-based edge-midpoint coordinates.
    pub fn mid(&self, e: usize) -> PlanePoint {
        self.mids[(e - 1) % self.k]
    }

    /// Interior angle at corner `i`, computed from coordinates as the angle
    /// of the geodesic triangle (corner `i-1`, corner `i`, corner `i+1`)
    /// at the middle vertex.
    pub fn corner_angle(&self, i: usize) -> f64 {
        let v = self.corner(i);
        let u = self.corner(if i == 1 { self.k } else { i - 1 });
        let w = self.corner(i % self.k + 1);
        let a = geodesic_dist(u, w).unwrap();
        let b = geodesic_dist(v, w).unwrap();
        let c = geodesic_dist(u, v).unwrap();
        let cos_a = (b.cosh() * c.cosh() - a.cosh()) / (b.sinh() * c.sinh());
        cos_a.clamp(-1.0, 1.0).acos()
    }

    /// Oracle length of `gamma_i`: geodesic distance between corners
    /// `i + 1` and `k + 1 - i`.
    pub fn gamma_length(&self, i: usize) -> f64 {
        geodesic_dist(self.corner(i + 1), self.corner(self.k + 1 - i)).unwrap()
    }

    /// Oracle length of `gammatilde_i`: geodesic distance between the
    /// midpoints of edges `a_i` and `a_{k+1-i}`.
    pub fn gamma_tilde_length(&self, i: usize) -> f64 {
        geodesic_dist(self.mid(i), self.mid(self.k + 1 - i)).unwrap()
    }
}

/// Closed-form length of `gamma_i` under an explicit convention. The radius
/// pair is taken from the actual endpoint corners (equal-parity, hence equal
/// radii); `sign` and `apex` select the candidate formula.
pub fn curve_length_closed(
    emb: &PolygonEmbedding,
    i: usize,
    sign: SignPolicy,
    apex: ApexConvention,
) -> f64 {
    let k = emb.k as f64;
    let n = emb.radial.n as f64;
    let is_2n = emb.k == 2 * emb.radial.n as usize;
    // Endpoint corners i + 1 and k + 1 - i have the same parity.
    let odd_endpoints = is_2n && i % 2 == 0;
    let radius = if odd_endpoints {
        emb.radial.l2
    } else if is_2n {
        emb.radial.l1
    } else {
        emb.radial.l2
    };
    let apex_angle = match apex {
        ApexConvention::HalfIndex => i as f64 * std::f64::consts::PI / n,
        ApexConvention::OffsetIndex => (2 * i - 1) as f64 * std::f64::consts::PI / n,
        ApexConvention::Central => 4.0 * std::f64::consts::PI * i as f64 / k,
    };
    let s = match sign {
        SignPolicy::Plus => 1.0,
        // Auto resolves to Minus (the law-of-cosines sign); see
        // `resolve_conventions`.
        SignPolicy::Minus | SignPolicy::Auto => -1.0,
    };
    let c = radius.cosh();
    let sh = radius.sinh();
    let arg = c * c + s * sh * sh * apex_angle.cos();
    arg.max(1.0).acosh()
}

/// Result of resolving the sign / apex ambiguity against the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConventionResolution {
    pub sign: SignPolicy,
    pub apex: ApexConvention,
    /// Max |closed - oracle| of the winning convention over all `gamma_i`.
    pub max_deviation: f64,
    /// Max deviation of each rejected candidate, for the report.
    pub rejected: Vec<(SignPolicy, ApexConvention, f64)>,
}

/// Evaluates every candidate `(sign, apex)` pair against the coordinate
/// oracle on all `gamma_i` and returns the best, with the losers' deviations.
pub fn resolve_conventions(emb: &PolygonEmbedding) -> ConventionResolution {
    let candidates = [
        (SignPolicy::Minus, ApexConvention::Central),
        (SignPolicy::Minus, ApexConvention::OffsetIndex),
        (SignPolicy::Minus, ApexConvention::HalfIndex),
        (SignPolicy::Plus, ApexConvention::Central),
        (SignPolicy::Plus, ApexConvention::OffsetIndex),
        (SignPolicy::Plus, ApexConvention::HalfIndex),
    ];
    let mut scored: Vec<(SignPolicy, ApexConvention, f64)> = candidates
        .iter()
        .map(|&(s, a)| {
            let dev = (1..emb.k / 2)
                .map(|i| (curve_length_closed(emb, i, s, a) - emb.gamma_length(i)).abs())
                .fold(0.0f64, f64::max);
            (s, a, dev)
        })
        .collect();
    let best = scored
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.2.total_cmp(&b.2))
        .map(|(idx, _)| idx)
        .unwrap();
    let (sign, apex, max_deviation) = scored.remove(best);
    ConventionResolution {
        sign,
        apex,
        max_deviation,
        rejected: scored,
    }
}

/// Upper bound `2 max(A, B)` on the length of any curve in the system, where
/// `A = arccosh(cosh^2 L2 + sinh^2 L2)` = `2 L2` and `B = 2 L1` take the
/// `cos` term at its extreme over the curve index range. Single chords are
/// bounded by `max(A, B)` and concatenations of two by the stated bound.
pub fn length_bound(rl: &RadialLengths) -> f64 {
    let a = (rl.l2.cosh().powi(2) + rl.l2.sinh().powi(2)).acosh();
    let b = (rl.l1.cosh().powi(2) + rl.l1.sinh().powi(2)).acosh();
    2.0 * a.max(b)
}

/// Default Bers-type constant `6 sqrt(3 pi) (g - 1)`.
pub fn bers_default(g: u64) -> f64 {
    6.0 * (3.0 * std::f64::consts::PI).sqrt() * (g as f64 - 1.0)
}

/// Every length strictly below `bers`; an empty list is admissible.
pub fn is_admissible(lengths: &[f64], bers: f64) -> bool {
    lengths.iter().all(|&l| l < bers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{ConeDatum, DataSet};
    use crate::polygon::build_polygon;
    use approx::assert_relative_eq;

    fn ds(n: u64, cone: &[(u64, u64)]) -> DataSet {
        DataSet::new(
            n,
            0,
            0,
            cone.iter().map(|&(c, m)| ConeDatum::new(c, m)).collect(),
        )
    }

    fn octagon() -> PolygonEmbedding {
        let p = build_polygon(&ds(8, &[(1, 2), (1, 8), (3, 8)])).unwrap();
        embed_polygon(&p).unwrap()
    }

    #[test]
    fn radial_lengths_octagon() {
        let rl = radial_lengths(8, 2, 8).unwrap();
        let pi8 = std::f64::consts::PI / 8.0;
        // L1 is the apothem cot(pi/8) here, L2 the vertex radius cot^2(pi/8).
        assert_relative_eq!(rl.l1.cosh(), pi8.cos() / pi8.sin(), epsilon = 1e-12);
        assert_relative_eq!(rl.l1, 2.414214f64.acosh(), epsilon = 1e-6);
        assert_relative_eq!(
            rl.l2.cosh(),
            (pi8.cos() / pi8.sin()).powi(2),
            epsilon = 1e-12
        );
    }

    #[test]
    fn radial_lengths_24gon_finite() {
        let rl = radial_lengths(12, 3, 4).unwrap();
        assert!(rl.l1.is_finite() && rl.l1 > 0.0);
        assert!(rl.l2.is_finite() && rl.l2 > 0.0);
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert!(matches!(
            radial_lengths(4, 2, 4),
            Err(MetricError::NotHyperbolic { .. })
        ));
    }

    #[test]
    fn geodesic_dist_matches_radial_param() {
        let p = PlanePoint::new(0.0, 0.0);
        let t = 1.7f64;
        let q = PlanePoint::new((t / 2.0).tanh(), 0.0);
        assert_relative_eq!(geodesic_dist(p, q).unwrap(), t, epsilon = 1e-12);
        // Symmetry.
        assert_relative_eq!(
            geodesic_dist(q, p).unwrap(),
            geodesic_dist(p, q).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn midpoint_is_equidistant() {
        let p = PlanePoint::new(0.3, -0.4);
        let q = PlanePoint::new(-0.5, 0.1);
        let m = hyperbolic_midpoint(p, q);
        let dp = geodesic_dist(p, m).unwrap();
        let dq = geodesic_dist(q, m).unwrap();
        assert_relative_eq!(dp, dq, epsilon = 1e-12);
        assert_relative_eq!(dp + dq, geodesic_dist(p, q).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn octagon_embedding_is_regular() {
        let emb = octagon();
        for i in 1..=8 {
            let l = geodesic_dist(emb.corner(i), emb.corner(i % 8 + 1)).unwrap();
            assert_relative_eq!(l, emb.edge_length, epsilon = 1e-12);
            assert_relative_eq!(
                emb.corner_angle(i),
                std::f64::consts::PI / 4.0,
                epsilon = 1e-9
            );
        }
        // Edge midpoints sit at the apothem L1.
        for e in 1..=8 {
            let r = geodesic_dist(PlanePoint::new(0.0, 0.0), emb.mid(e)).unwrap();
            assert_relative_eq!(r, emb.radial.l1, epsilon = 1e-9);
        }
    }

    #[test]
    fn closed_form_matches_oracle_up_to_genus_4() {
        for g in 2..=4 {
            for d in crate::dataset::enumerate_irreducible_type1(g) {
                let p = build_polygon(&d).unwrap();
                let emb = embed_polygon(&p).unwrap();
                let res = resolve_conventions(&emb);
                assert_eq!(res.sign, SignPolicy::Minus, "{d}");
                assert_eq!(res.apex, ApexConvention::Central, "{d}");
                assert!(res.max_deviation < 1e-9, "{d}: dev {}", res.max_deviation);
            }
        }
    }

    #[test]
    fn corner_angles_match_schedule_up_to_genus_4() {
        for g in 2..=4 {
            for d in crate::dataset::enumerate_irreducible_type1(g) {
                let p = build_polygon(&d).unwrap();
                let emb = embed_polygon(&p).unwrap();
                for i in 1..=p.k {
                    assert_relative_eq!(
                        emb.corner_angle(i),
                        p.corner_angles[i - 1].to_f64(),
                        epsilon = 1e-9
                    );
                }
            }
        }
    }

    #[test]
    fn length_bound_dominates_gamma_lengths() {
        for g in 2..=4 {
            for d in crate::dataset::enumerate_irreducible_type1(g) {
                let p = build_polygon(&d).unwrap();
                let emb = embed_polygon(&p).unwrap();
                let bound = length_bound(&emb.radial);
                assert!(bound >= 2.0 * emb.radial.l1);
                for i in 1..p.k / 2 {
                    assert!(emb.gamma_length(i) <= bound / 2.0 + 1e-12, "{d} gamma {i}");
                    assert!(emb.gamma_tilde_length(i) <= bound / 2.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn bers_default_genus2() {
        assert_relative_eq!(
            bers_default(2),
            6.0 * (3.0 * std::f64::consts::PI).sqrt(),
            epsilon = 1e-12
        );
        assert!(is_admissible(&[], 1.0));
        assert!(is_admissible(&[0.5, 0.9], 1.0));
        assert!(!is_admissible(&[1.0], 1.0));
    }
}
