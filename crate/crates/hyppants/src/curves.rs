//! The combinatorial curve system on a side-paired polygon.
//!
//! The chords `gamma_i` (corner `i+1` to corner `k+1-i`, `i = 1..k/2-1`)
//! cut the polygon into regions `R_1, ..., R_{k/2}`, where
//! `R_i = (a_i, a_{k+1-i})`; `R_1` and `R_{k/2}` are triangles, the rest
//! quadrilaterals. The side pairing glues `R_i` to `R_{partner(i)}` along
//! both of its polygon edges, producing pieces whose boundaries are composed
//! of `gamma` arcs. The chords `gammatilde_i` join the midpoints of `a_i`
//! and `a_{k+1-i}`; they stay inside `R_i` and close up into the cores of
//! the pieces.
//!
//! Everything here is exact integer combinatorics; lengths live in
//! [`crate::metric`].

use serde::{Deserialize, Serialize};

use crate::dataset::gcd;
use crate::error::CurveError;
use crate::polygon::{Polygon, VertexOrbitSet};

/// Region index (1-based, `1..=k/2`) of the polygon edge `e`.
pub fn region_of_edge(k: usize, e: usize) -> usize {
    let e = (e - 1) % k + 1;
    e.min(k + 1 - e)
}

/// The region glued to `R_i` by the side pairing, after verifying the
/// mirror property `pairing(k+1-i) = k+1-pairing(i)` that makes the partner
/// well defined.
pub fn region_partner(p: &Polygon, i: usize) -> Result<usize, CurveError> {
    let k = p.k;
    let si = p.paired(i);
    let mi = k + 1 - i;
    let msi = p.paired(mi);
    if msi != k + 1 - si {
        return Err(CurveError::MirrorViolation { i, si, mi, msi });
    }
    Ok(region_of_edge(k, si))
}

/// A glued piece: one self-paired region, or a pair `R_i`, `R_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    /// Sorted region indices (length 1 or 2).
    pub regions: Vec<usize>,
}

/// All pieces, sorted by smallest region index.
pub fn pieces(p: &Polygon) -> Result<Vec<Piece>, CurveError> {
    let half = p.k / 2;
    let mut seen = vec![false; half + 1];
    let mut out = Vec::new();
    for i in 1..=half {
        if seen[i] {
            continue;
        }
        let j = region_partner(p, i)?;
        seen[i] = true;
        seen[j] = true;
        let mut regions = vec![i];
        if j != i {
            regions.push(j);
        }
        regions.sort_unstable();
        out.push(Piece { regions });
    }
    Ok(out)
}

/// Vertex coincidence data at region index `i`: whether `v_i = vhat_i`
/// (corners `i` and `k+2-i`) and `w_i = what_i` (corners `i+1` and `k+1-i`)
/// on the glued surface, per the orbit trace; for `k = 2n` polygons and odd
/// `i` the gcd criteria are evaluated too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coincidence {
    pub index: usize,
    pub v_eq: bool,
    pub w_eq: bool,
    /// `gcd(n, qj) | i - 1`, when applicable.
    pub gcd_v: Option<bool>,
    /// `gcd(n, qj - 1) | i`, when applicable.
    pub gcd_w: Option<bool>,
}

/// Evaluates the coincidences at index `i`, returning an error when a gcd
/// criterion disagrees with the trace.
pub fn vertex_coincidence(
    p: &Polygon,
    orbits: &VertexOrbitSet,
    i: usize,
) -> Result<Coincidence, CurveError> {
    let k = p.k;
    let v_eq = orbits.orbit(i) == orbits.orbit(k + 2 - i);
    let w_eq = orbits.orbit(i + 1) == orbits.orbit(k + 1 - i);
    let (mut gcd_v, mut gcd_w) = (None, None);
    if k == 2 * p.n as usize && i % 2 == 1 {
        let qj = p.qj();
        let dv = gcd(p.n, qj);
        let dw = gcd(p.n, (qj + p.n - 1) % p.n);
        let (dv, dw) = (dv.max(1), dw.max(1));
        gcd_v = Some((i as u64 - 1) % dv == 0);
        gcd_w = Some((i as u64) % dw == 0);
        if gcd_v != Some(v_eq) {
            return Err(CurveError::CriteriaMismatch {
                index: i,
                gcd_pred: gcd_v.unwrap(),
                trace: v_eq,
            });
        }
        if gcd_w != Some(w_eq) {
            return Err(CurveError::CriteriaMismatch {
                index: i,
                gcd_pred: gcd_w.unwrap(),
                trace: w_eq,
            });
        }
    }
    Ok(Coincidence {
        index: i,
        v_eq,
        w_eq,
        gcd_v,
        gcd_w,
    })
}

/// One `gamma` arc as it appears on a region's boundary: chord index plus
/// the region whose side it is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSide {
    pub gamma: usize,
    pub region: usize,
}

/// A boundary circle of a piece cut along all chords: a cyclic sequence of
/// `gamma` arcs, with the surface vertex passed between consecutive arcs.
/// `junctions[t]` is the vertex-orbit id crossed between `arcs[t-1]` and
/// `arcs[t]` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCircle {
    pub arcs: Vec<ArcSide>,
    pub junctions: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Edge(usize),
    Gamma(usize),
}

/// Boundary sides of region `r` in cyclic order, as (side, from-corner,
/// to-corner).
fn region_sides(k: usize, r: usize) -> Vec<(Side, usize, usize)> {
    let half = k / 2;
    let m = k + 1 - r; // mirrored edge
    if r == 1 {
        vec![
            (Side::Edge(1), 1, 2),
            (Side::Gamma(1), 2, k),
            (Side::Edge(k), k, 1),
        ]
    } else if r == half {
        vec![
            (Side::Edge(half), half, half + 1),
            (Side::Edge(half + 1), half + 1, half + 2),
            (Side::Gamma(half - 1), half + 2, half),
        ]
    } else {
        vec![
            (Side::Edge(r), r, r + 1),
            (Side::Gamma(r), r + 1, m),
            (Side::Edge(m), m, m + 1),
            (Side::Gamma(r - 1), m + 1, r),
        ]
    }
}

/// Traces the boundary circles of a piece cut along all chords. Within the
/// piece only the polygon-edge gluings are applied; the chords remain cut.
pub fn trace_piece_circles(
    p: &Polygon,
    orbits: &VertexOrbitSet,
    piece: &Piece,
) -> Vec<CutCircle> {
    let k = p.k;
    // Collect this piece's sides; key a slot by (region, corner).
    let in_piece = |r: usize| piece.regions.contains(&r);
    let mut gamma_sides: Vec<(usize, usize, usize, usize)> = Vec::new(); // (gamma, region, from, to)
    for &r in &piece.regions {
        for (side, from, to) in region_sides(k, r) {
            if let Side::Gamma(g) = side {
                gamma_sides.push((g, r, from, to));
            }
        }
    }
    gamma_sides.sort_unstable();
    // Continuation: from a slot (region, corner), fan through edge gluings
    // to the next gamma side ending there; returns (index into gamma_sides,
    // entering at its `from` (false) or `to` (true) end).
    let next_arc = |mut region: usize, mut corner: usize, mut via: Side| -> (usize, bool) {
        loop {
            let sides = region_sides(k, region);
            // The two sides at `corner` within this region.
            let (s1, s2) = {
                let adj: Vec<(Side, usize, usize)> = sides
                    .iter()
                    .copied()
                    .filter(|&(_, f, t)| f == corner || t == corner)
                    .collect();
                assert_eq!(adj.len(), 2);
                (adj[0], adj[1])
            };
            let other = if s1.0 == via { s2 } else { s1 };
            match other.0 {
                Side::Gamma(g) => {
                    let idx = gamma_sides
                        .iter()
                        .position(|&(gg, rr, _, _)| gg == g && rr == region)
                        .expect("gamma side in piece");
                    let entering_to = gamma_sides[idx].3 == corner;
                    return (idx, entering_to);
                }
                Side::Edge(e) => {
                    // Jump across the gluing a_e ~ a_{sigma(e)} (reversed):
                    // corner e <-> sigma(e)+1, corner e+1 <-> sigma(e).
                    let se = p.paired(e);
                    let r2 = region_of_edge(k, se);
                    assert!(in_piece(r2), "gluing leaves the piece");
                    let c2 = if corner == other.1 {
                        // corner is the from-corner of edge side; edges run
                        // from their smaller label: side Edge(e) from e to e+1
                        // in region_sides, except labels are literal corners.
                        // from-corner of a_e is e, mapping to sigma(e)+1.
                        (se % k) + 1
                    } else {
                        se
                    };
                    region = r2;
                    corner = c2;
                    via = Side::Edge(se);
                }
            }
        }
    };

    let mut used = vec![false; gamma_sides.len()];
    let mut circles = Vec::new();
    for start in 0..gamma_sides.len() {
        if used[start] {
            continue;
        }
        let mut arcs = Vec::new();
        let mut junctions = Vec::new();
        let (mut idx, mut at_to) = (start, false);
        loop {
            used[idx] = true;
            let (g, r, from, to) = gamma_sides[idx];
            arcs.push(ArcSide { gamma: g, region: r });
            // Leave through the far end of this arc.
            let exit_corner = if at_to { from } else { to };
            junctions.push(orbits.orbit(exit_corner));
            let (nidx, n_at_to) = next_arc(r, exit_corner, Side::Gamma(g));
            idx = nidx;
            at_to = n_at_to;
            if idx == start {
                break;
            }
        }
        // `junctions[t]` as produced sits after arcs[t]; rotate so that
        // junctions[t] precedes arcs[t].
        junctions.rotate_right(1);
        circles.push(CutCircle { arcs, junctions });
    }
    circles
}

/// Splits a cut circle into the closed curves it represents on the glued
/// surface: if some junction vertex occurs at least twice, the circle
/// pinches there and decomposes into the sub-chains between consecutive
/// occurrences; otherwise it is a single closed curve.
pub fn quotient_split(circle: &CutCircle) -> Vec<Vec<ArcSide>> {
    let m = circle.arcs.len();
    let mut best: Option<(usize, usize)> = None; // (count, vertex)
    for &v in &circle.junctions {
        let count = circle.junctions.iter().filter(|&&x| x == v).count();
        if count >= 2 {
            match best {
                Some((bc, bv)) if (count, std::cmp::Reverse(v)) <= (bc, std::cmp::Reverse(bv)) => {}
                _ => best = Some((count, v)),
            }
        }
    }
    match best {
        None => vec![circle.arcs.clone()],
        Some((_, v)) => {
            let cuts: Vec<usize> = (0..m).filter(|&t| circle.junctions[t] == v).collect();
            let mut out = Vec::new();
            for (ci, &start) in cuts.iter().enumerate() {
                let end = cuts[(ci + 1) % cuts.len()];
                let mut chain = Vec::new();
                let mut t = start;
                loop {
                    chain.push(circle.arcs[t]);
                    t = (t + 1) % m;
                    if t == end {
                        break;
                    }
                }
                out.push(chain);
            }
            out
        }
    }
}

/// Topological type of a glued piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceClass {
    Cylinder,
    PairOfPants,
    FourHoledSphere,
}

impl PieceClass {
    pub fn boundary_circles(self) -> usize {
        match self {
            PieceClass::Cylinder => 2,
            PieceClass::PairOfPants => 3,
            PieceClass::FourHoledSphere => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            PieceClass::Cylinder => "cylinder",
            PieceClass::PairOfPants => "pair of pants",
            PieceClass::FourHoledSphere => "four-holed sphere",
        }
    }
}

/// A classified piece with its boundary data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedPiece {
    pub piece: Piece,
    pub class: PieceClass,
    pub cut_circles: Vec<CutCircle>,
    /// Closed boundary curves on the glued surface, as chord chains.
    pub boundary_curves: Vec<Vec<ArcSide>>,
}

/// Classifies a piece by counting its closed boundary curves, and checks
/// the count against the coincidence prediction (triangle pieces through
/// the triangle's index, quadrilateral pairs through `v`/`w`).
pub fn classify_piece(
    p: &Polygon,
    orbits: &VertexOrbitSet,
    piece: &Piece,
) -> Result<ClassifiedPiece, CurveError> {
    let half = p.k / 2;
    let cut_circles = trace_piece_circles(p, orbits, piece);
    let boundary_curves: Vec<Vec<ArcSide>> = cut_circles
        .iter()
        .flat_map(|c| quotient_split(c))
        .collect();
    let class = match boundary_curves.len() {
        2 => PieceClass::Cylinder,
        3 => PieceClass::PairOfPants,
        4 => PieceClass::FourHoledSphere,
        circles => {
            return Err(CurveError::UnknownShape {
                regions: piece.regions.clone(),
                circles,
            })
        }
    };

    let predicted = if piece.regions.len() == 1 {
        PieceClass::Cylinder
    } else if piece.regions == [1, half] {
        PieceClass::Cylinder
    } else if piece.regions[0] == 1 {
        let c = vertex_coincidence(p, orbits, 1)?;
        if c.w_eq {
            PieceClass::PairOfPants
        } else {
            PieceClass::Cylinder
        }
    } else if piece.regions[1] == half {
        let c = vertex_coincidence(p, orbits, half)?;
        if c.v_eq {
            PieceClass::PairOfPants
        } else {
            PieceClass::Cylinder
        }
    } else {
        let c = vertex_coincidence(p, orbits, piece.regions[0])?;
        match (c.v_eq, c.w_eq) {
            (true, true) => PieceClass::FourHoledSphere,
            (false, false) => PieceClass::Cylinder,
            _ => PieceClass::PairOfPants,
        }
    };
    if predicted != class {
        return Err(CurveError::ClassificationMismatch {
            regions: piece.regions.clone(),
            predicted: predicted.name(),
            circles: boundary_curves.len(),
        });
    }
    Ok(ClassifiedPiece {
        piece: piece.clone(),
        class,
        cut_circles,
        boundary_curves,
    })
}

/// A member of the multicurve inventory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    /// A single chord `gamma_i`; closed iff its endpoint corners are glued.
    Gamma { i: usize, closed: bool },
    /// A concatenation of `gamma` chords (a piece boundary curve).
    GammaChain { indices: Vec<usize> },
    /// A closed chain of midpoint chords (the core of a piece).
    TildeChain { indices: Vec<usize> },
}

/// The multicurve: single chords, the closed boundary curves of the pieces,
/// and the midpoint cores. Concatenations arise only between the chord
/// indices adjacent across a piece, as read off from the traced boundaries.
pub fn build_multicurve(p: &Polygon) -> Result<Vec<CurveSpec>, CurveError> {
    let orbits = p.vertex_orbits();
    let mut out = Vec::new();
    for i in 1..p.k / 2 {
        let closed = orbits.orbit(i + 1) == orbits.orbit(p.k + 1 - i);
        out.push(CurveSpec::Gamma { i, closed });
    }
    for piece in pieces(p)? {
        let classified = classify_piece(p, &orbits, &piece)?;
        for curve in &classified.boundary_curves {
            if curve.len() >= 2 {
                out.push(CurveSpec::GammaChain {
                    indices: curve.iter().map(|a| a.gamma).collect(),
                });
            }
        }
        out.push(CurveSpec::TildeChain {
            indices: piece.regions.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{ConeDatum, DataSet};
    use crate::polygon::build_polygon;

    fn poly(n: u64, cone: &[(u64, u64)]) -> Polygon {
        let d = DataSet::new(
            n,
            0,
            0,
            cone.iter().map(|&(c, m)| ConeDatum::new(c, m)).collect(),
        );
        build_polygon(&d).unwrap()
    }

    #[test]
    fn octagon_regions_and_pieces() {
        let p = poly(8, &[(1, 2), (1, 8), (3, 8)]);
        assert_eq!(region_partner(&p, 1).unwrap(), 4);
        assert_eq!(region_partner(&p, 2).unwrap(), 3);
        let ps = pieces(&p).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].regions, vec![1, 4]);
        assert_eq!(ps[1].regions, vec![2, 3]);
    }

    #[test]
    fn octagon_piece_classification() {
        let p = poly(8, &[(1, 2), (1, 8), (3, 8)]);
        let orbits = p.vertex_orbits();
        let ps = pieces(&p).unwrap();
        let c0 = classify_piece(&p, &orbits, &ps[0]).unwrap();
        assert_eq!(c0.class, PieceClass::Cylinder);
        // Boundary curves of R_1 u R_4 are gamma_1 and gamma_3, singly.
        let mut bc: Vec<Vec<usize>> = c0
            .boundary_curves
            .iter()
            .map(|c| c.iter().map(|a| a.gamma).collect())
            .collect();
        bc.sort();
        assert_eq!(bc, vec![vec![1], vec![3]]);
        let c1 = classify_piece(&p, &orbits, &ps[1]).unwrap();
        assert_eq!(c1.class, PieceClass::FourHoledSphere);
        let mut bc: Vec<Vec<usize>> = c1
            .boundary_curves
            .iter()
            .map(|c| c.iter().map(|a| a.gamma).collect())
            .collect();
        bc.sort();
        assert_eq!(bc, vec![vec![1], vec![2], vec![2], vec![3]]);
    }

    #[test]
    fn decagon_self_piece_is_cylinder() {
        let p = poly(10, &[(1, 2), (1, 5), (3, 10)]);
        let orbits = p.vertex_orbits();
        let ps = pieces(&p).unwrap();
        // Pieces: {1,5}, {2,4}, {3} (self-paired).
        assert_eq!(
            ps.iter().map(|x| x.regions.clone()).collect::<Vec<_>>(),
            vec![vec![1, 5], vec![2, 4], vec![3]]
        );
        let self_piece = classify_piece(&p, &orbits, &ps[2]).unwrap();
        assert_eq!(self_piece.class, PieceClass::Cylinder);
        let four = classify_piece(&p, &orbits, &ps[1]).unwrap();
        assert_eq!(four.class, PieceClass::FourHoledSphere);
        let tri = classify_piece(&p, &orbits, &ps[0]).unwrap();
        assert_eq!(tri.class, PieceClass::Cylinder);
    }

    #[test]
    fn gcd_criteria_24gon() {
        let p = poly(12, &[(1, 3), (3, 4), (11, 12)]);
        let orbits = p.vertex_orbits();
        // qj = 9: v-coincidence at odd index 2k+1 iff 3 | 2k, i.e. k in
        // {0,3,6,9}; w-coincidence never (gcd(12,8) = 4 divides no odd i).
        for kk in 0..12usize {
            let i = 2 * kk + 1;
            let c = vertex_coincidence(&p, &orbits, i).unwrap();
            assert_eq!(c.v_eq, kk % 3 == 0, "index {i}");
            assert!(!c.w_eq, "index {i}");
            assert_eq!(c.gcd_v, Some(c.v_eq));
            assert_eq!(c.gcd_w, Some(false));
        }
    }

    #[test]
    fn triangle_coincidence_is_trivial() {
        let p = poly(8, &[(1, 2), (1, 8), (3, 8)]);
        let orbits = p.vertex_orbits();
        let c = vertex_coincidence(&p, &orbits, 1).unwrap();
        assert!(c.v_eq);
    }

    #[test]
    fn mirror_and_classification_up_to_genus_6() {
        for g in 2..=6 {
            for d in crate::dataset::enumerate_irreducible_type1(g) {
                let p = build_polygon(&d).unwrap();
                let orbits = p.vertex_orbits();
                for i in 1..=p.k {
                    region_partner(&p, i).unwrap_or_else(|e| panic!("{d}: {e}"));
                }
                for i in (1..=p.k).step_by(2) {
                    vertex_coincidence(&p, &orbits, i).unwrap_or_else(|e| panic!("{d}: {e}"));
                }
                for piece in pieces(&p).unwrap() {
                    classify_piece(&p, &orbits, &piece)
                        .unwrap_or_else(|e| panic!("{d}: {e}"));
                }
            }
        }
    }

    #[test]
    fn cut_circles_use_each_arc_side_once() {
        for g in 2..=4 {
            for d in crate::dataset::enumerate_irreducible_type1(g) {
                let p = build_polygon(&d).unwrap();
                let orbits = p.vertex_orbits();
                let mut all_arcs: Vec<ArcSide> = Vec::new();
                for piece in pieces(&p).unwrap() {
                    let circles = trace_piece_circles(&p, &orbits, &piece);
                    assert_eq!(circles.len(), 2, "{d}: piece {piece:?} not an annulus");
                    for c in circles {
                        all_arcs.extend(c.arcs);
                    }
                }
                all_arcs.sort_by_key(|a| (a.gamma, a.region));
                // gamma_t borders R_t and R_{t+1}: each side exactly once.
                let mut expected: Vec<ArcSide> = (1..p.k / 2)
                    .flat_map(|t| {
                        [
                            ArcSide {
                                gamma: t,
                                region: t,
                            },
                            ArcSide {
                                gamma: t,
                                region: t + 1,
                            },
                        ]
                    })
                    .collect();
                expected.sort_by_key(|a| (a.gamma, a.region));
                assert_eq!(all_arcs, expected, "{d}");
            }
        }
    }
}
