//! Pants decomposition extraction.
//!
//! The chords span a graph on the surface: vertices are the corner orbits,
//! edges the chords `gamma_t`. A regular neighborhood of each connected
//! component is a subsurface whose boundary circles are exactly the
//! cut-level piece circles carried by its chords. Components of Euler
//! characteristic `0` are annuli; together with the pieces (which are all
//! annuli at cut level) they link into chains, and each maximal chain
//! contributes one decomposition curve, represented by the midpoint core of
//! its canonical piece. Components of negative characteristic need
//! additional internal splitters: closed chord walks realized as embedded
//! curves by pushing vertex passages off the vertex. Every candidate system
//! is verified by exact cutting before it is accepted.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::curves::{classify_piece, pieces, ClassifiedPiece};
use crate::cutter::{cut_surface, glue_pos, verify_disjoint, verify_pants, BPos, Chord, CutCurve, Param};
use crate::error::CurveError;
use crate::metric::PolygonEmbedding;
use crate::polygon::Polygon;

/// A cut-level boundary circle, addressed by piece and circle index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleRef {
    pub piece: usize,
    pub circle: usize,
    /// Chord indices of its arcs, in traversal order.
    pub gammas: Vec<usize>,
}

/// A connected component of the chord graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NComponent {
    pub gammas: Vec<usize>,
    /// Corner-orbit ids spanned by the chords.
    pub vertices: Vec<usize>,
    pub chi: i64,
    pub circles: Vec<CircleRef>,
    pub essential: bool,
}

impl NComponent {
    /// Genus of the regular neighborhood.
    pub fn genus(&self) -> i64 {
        (2 - self.circles.len() as i64 - self.chi) / 2
    }

    /// Internal curves needed to split the neighborhood into pants.
    pub fn splitters_needed(&self) -> usize {
        if !self.essential {
            return 0;
        }
        let b = self.circles.len() as i64;
        (3 * self.genus() - 3 + b).max(0) as usize
    }
}

/// A maximal chain of annuli: pieces linked through annulus components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    /// Piece indices in the chain, sorted.
    pub pieces: Vec<usize>,
    /// Annulus component indices in the chain, sorted.
    pub annulus_components: Vec<usize>,
    /// Terminal circles: (essential component index, circle).
    pub ends: Vec<(usize, CircleRef)>,
    /// Piece whose midpoint core represents the chain curve.
    pub canonical_piece: usize,
}

/// One curve of the decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PantsCurve {
    pub label: String,
    pub splitter: bool,
    /// Chain index for chain curves, component index for splitters.
    pub source: usize,
    #[serde(skip)]
    pub curve: CutCurve,
    /// Chord indices of the underlying representative.
    pub chords: Vec<usize>,
    pub length: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PantsDecomposition {
    pub pieces: Vec<ClassifiedPiece>,
    pub components: Vec<NComponent>,
    pub chains: Vec<Chain>,
    pub curves: Vec<PantsCurve>,
}

impl PantsDecomposition {
    pub fn lengths(&self) -> Vec<f64> {
        self.curves.iter().map(|c| c.length).collect()
    }
}

fn half_param() -> Param {
    Ratio::new(1, 2)
}

/// The midpoint core of a piece, as a closed chord chain.
pub fn core_curve(p: &Polygon, regions: &[usize]) -> CutCurve {
    let k = p.k;
    let start = BPos::new(regions[0], half_param());
    let mut chords = Vec::new();
    let mut at = start;
    loop {
        let r = at.edge.min(k + 1 - at.edge);
        let other_edge = if at.edge == r { k + 1 - r } else { r };
        let b = BPos::new(other_edge, half_param());
        chords.push(Chord { a: at, b });
        at = glue_pos(p, b);
        if at == start {
            break;
        }
    }
    let label = format!(
        "core({})",
        regions.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
    );
    CutCurve { label, chords }
}

/// Oriented use of a chord in a closed walk: (chord index, from, to) with
/// `from`, `to` its endpoint corners.
type OrientedChord = (usize, usize, usize);

/// Closed walks of up to three distinct chords in the component, every
/// orientation, in deterministic order.
fn closed_walks(p: &Polygon, orbits: &crate::polygon::VertexOrbitSet, gammas: &[usize]) -> Vec<Vec<OrientedChord>> {
    let k = p.k;
    let ends = |t: usize| (t + 1, k + 1 - t);
    let o = |c: usize| orbits.orbit(c);
    let mut out: Vec<Vec<OrientedChord>> = Vec::new();
    for &t in gammas {
        let (u, v) = ends(t);
        if o(u) == o(v) {
            out.push(vec![(t, u, v)]);
            out.push(vec![(t, v, u)]);
        }
    }
    let orientations = |t: usize| {
        let (u, v) = ends(t);
        [(t, u, v), (t, v, u)]
    };
    for (ia, &a) in gammas.iter().enumerate() {
        for &b in &gammas[ia + 1..] {
            for ca in orientations(a) {
                for cb in orientations(b) {
                    if o(ca.2) == o(cb.1) && o(cb.2) == o(ca.1) {
                        out.push(vec![ca, cb]);
                    }
                }
            }
        }
    }
    for (ia, &a) in gammas.iter().enumerate() {
        for (ib, &b) in gammas.iter().enumerate() {
            for (ic, &c) in gammas.iter().enumerate() {
                if ia >= ib || ia >= ic || ib == ic {
                    continue;
                }
                for ca in orientations(a) {
                    for cb in orientations(b) {
                        for cc in orientations(c) {
                            if o(ca.2) == o(cb.1) && o(cb.2) == o(cc.1) && o(cc.2) == o(ca.1) {
                                out.push(vec![ca, cb, cc]);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Realizes a closed chord walk as an embedded curve: each chord endpoint
/// is pushed onto one of the two edges at its corner (the `sides` bits pick
/// which), and every vertex passage is completed by short chords cutting
/// across the corner wedges. Returns `None` when the passage walk does not
/// reach the next chord.
fn realize_walk(
    p: &Polygon,
    walk: &[OrientedChord],
    sides: &[(bool, bool)],
    eps_base: usize,
) -> Option<CutCurve> {
    let k = p.k;
    let l = walk.len();
    let eps = |passage: usize| Ratio::new(1, 5 + 2 * (eps_base + passage) as i64);
    let prev_edge = |c: usize| (c + k - 2) % k + 1;
    // Endpoint near corner `c`: after it (on edge c) or before (edge c-1).
    let side_point = |c: usize, after: bool, e: Param| {
        if after {
            BPos::new(c, e)
        } else {
            BPos::new(prev_edge(c), Ratio::from_integer(1) - e)
        }
    };
    let mut chords = Vec::new();
    for i in 0..l {
        let (_, from, to) = walk[i];
        let e_start = eps((i + l - 1) % l);
        let e_end = eps(i);
        let a = side_point(from, sides[i].0, e_start);
        let b = side_point(to, sides[i].1, e_end);
        chords.push(Chord { a, b });
        // Vertex passage from glue(b) to the start of the next chord.
        let (_, nfrom, _) = walk[(i + 1) % l];
        let target = side_point(nfrom, sides[(i + 1) % l].0, e_end);
        let mut cur = glue_pos(p, b);
        let mut steps = 0;
        while cur != target {
            if steps > k {
                return None;
            }
            steps += 1;
            let w = if cur.t > half_param() {
                BPos::new(cur.edge % k + 1, Ratio::from_integer(1) - cur.t)
            } else {
                BPos::new(prev_edge(cur.edge), Ratio::from_integer(1) - cur.t)
            };
            chords.push(Chord { a: cur, b: w });
            cur = glue_pos(p, w);
        }
    }
    let label = format!(
        "splitter({})",
        walk.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(",")
    );
    Some(CutCurve { label, chords })
}

/// Extracts and verifies a pants decomposition with certified lengths.
pub fn extract_pants(p: &Polygon, emb: &PolygonEmbedding) -> Result<PantsDecomposition, CurveError> {
    let k = p.k;
    let half = k / 2;
    let g = p.dataset.genus().expect("valid data set") as usize;
    let orbits = p.vertex_orbits();
    let piece_list = pieces(p)?;
    let classified: Vec<ClassifiedPiece> = piece_list
        .iter()
        .map(|pc| classify_piece(p, &orbits, pc))
        .collect::<Result<_, _>>()?;

    // Chord-graph components, by union-find over corner orbits.
    let mut uf: Vec<usize> = (0..=k).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for t in 1..half {
        let (a, b) = (orbits.orbit(t + 1), orbits.orbit(k + 1 - t));
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra != rb {
            uf[ra] = rb;
        }
    }
    let mut roots: Vec<usize> = (1..half)
        .map(|t| find(&mut uf, orbits.orbit(t + 1)))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    let mut components: Vec<NComponent> = roots
        .iter()
        .map(|&r| {
            let gammas: Vec<usize> = (1..half)
                .filter(|&t| find(&mut uf, orbits.orbit(t + 1)) == r)
                .collect();
            let mut vertices: Vec<usize> = gammas
                .iter()
                .flat_map(|&t| [orbits.orbit(t + 1), orbits.orbit(k + 1 - t)])
                .collect();
            vertices.sort_unstable();
            vertices.dedup();
            NComponent {
                chi: vertices.len() as i64 - gammas.len() as i64,
                gammas,
                vertices,
                circles: Vec::new(),
                essential: false,
            }
        })
        .collect();
    components.sort_by_key(|c| c.gammas[0]);
    let comp_of_gamma = |components: &[NComponent], t: usize| {
        components
            .iter()
            .position(|c| c.gammas.contains(&t))
            .expect("chord in a component")
    };
    for (pi, cp) in classified.iter().enumerate() {
        for (ci, circ) in cp.cut_circles.iter().enumerate() {
            let gammas: Vec<usize> = circ.arcs.iter().map(|a| a.gamma).collect();
            let comp = comp_of_gamma(&components, gammas[0]);
            debug_assert!(gammas.iter().all(|&t| comp_of_gamma(&components, t) == comp));
            components[comp].circles.push(CircleRef {
                piece: pi,
                circle: ci,
                gammas,
            });
        }
    }
    for c in &mut components {
        c.essential = c.chi <= -1;
        if c.chi == 0 && c.circles.len() != 2 {
            return Err(CurveError::NotPants {
                reason: format!(
                    "annulus component with {} boundary circles",
                    c.circles.len()
                ),
            });
        }
    }

    // Chains: pieces linked through annulus components.
    let np = classified.len();
    let nodes = np + components.len();
    let mut cuf: Vec<usize> = (0..nodes).collect();
    for (cj, c) in components.iter().enumerate() {
        if c.essential {
            continue;
        }
        for circ in &c.circles {
            let (ra, rb) = (find(&mut cuf, circ.piece), find(&mut cuf, np + cj));
            if ra != rb {
                cuf[ra] = rb;
            }
        }
    }
    let mut chain_roots: Vec<usize> = (0..np).map(|i| find(&mut cuf, i)).collect();
    chain_roots.sort_unstable();
    chain_roots.dedup();
    let mut chains: Vec<Chain> = chain_roots
        .iter()
        .map(|&r| {
            let pieces: Vec<usize> = (0..np).filter(|&i| find(&mut cuf, i) == r).collect();
            let annulus_components: Vec<usize> = components
                .iter()
                .enumerate()
                .filter(|(cj, c)| !c.essential && find(&mut cuf, np + cj) == r)
                .map(|(cj, _)| cj)
                .collect();
            let mut ends = Vec::new();
            for (cj, c) in components.iter().enumerate() {
                if !c.essential {
                    continue;
                }
                for circ in &c.circles {
                    if pieces.contains(&circ.piece) {
                        ends.push((cj, circ.clone()));
                    }
                }
            }
            let canonical_piece = pieces[0];
            Chain {
                pieces,
                annulus_components,
                ends,
                canonical_piece,
            }
        })
        .collect();
    chains.sort_by_key(|c| classified[c.canonical_piece].piece.regions[0]);

    // Chain curves: midpoint core of the canonical piece; certified length
    // is the minimum over the isotopic representatives we can read off.
    let mut curves: Vec<PantsCurve> = Vec::new();
    let mut cut_curves: Vec<CutCurve> = Vec::new();
    for (chi_idx, chain) in chains.iter().enumerate() {
        let regions = &classified[chain.canonical_piece].piece.regions;
        let curve = core_curve(p, regions);
        let mut best = f64::INFINITY;
        for &pi in &chain.pieces {
            let cp = &classified[pi];
            let tilde: f64 = cp
                .piece
                .regions
                .iter()
                .map(|&r| emb.gamma_tilde_length(r))
                .sum();
            best = best.min(tilde);
            for circ in &cp.cut_circles {
                let s: f64 = circ.arcs.iter().map(|a| emb.gamma_length(a.gamma)).sum();
                best = best.min(s);
            }
        }
        curves.push(PantsCurve {
            label: curve.label.clone(),
            splitter: false,
            source: chi_idx,
            chords: regions.clone(),
            curve: curve.clone(),
            length: best,
        });
        cut_curves.push(curve);
    }

    // Splitters: for each essential component, candidate closed walks with
    // all their valid embedded realizations, locally disjoint from the
    // chain curves. A candidate set for one component is accepted when
    // cutting along the chain curves plus the set splits that component
    // into pants while leaving every other essential component intact;
    // the components are disjoint subsurfaces, so local acceptance is
    // independent of the choices made elsewhere.
    let essential: Vec<usize> = components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.essential)
        .map(|(j, _)| j)
        .collect();
    let mut chosen: Vec<(usize, CutCurve, Vec<usize>)> = Vec::new();
    for (cj, comp) in components.iter().enumerate() {
        let need = comp.splitters_needed();
        if need == 0 {
            continue;
        }
        // Expected complement after cutting the chain curves plus this
        // component's splitters: the component falls apart into -chi
        // pants while every other essential component stays intact; the
        // components are disjoint subsurfaces, so acceptance here is
        // independent of the choices made elsewhere.
        let mut expected: Vec<(i64, usize)> = vec![(-1, 3); (-comp.chi) as usize];
        for &other in &essential {
            if other != cj {
                expected.push((components[other].chi, components[other].circles.len()));
            }
        }
        expected.sort_unstable();
        let set = search_splitters(p, &orbits, comp, need, &cut_curves, &expected).ok_or(
            CurveError::NotPants {
                reason: format!("no verified splitter set in component {cj}"),
            },
        )?;
        for (c, walk) in set {
            chosen.push((cj, c, walk));
        }
    }

    let total = chains.len() + chosen.len();
    if total != 3 * g - 3 {
        return Err(CurveError::NotPants {
            reason: format!("{total} curves from chain/splitter count, expected {}", 3 * g - 3),
        });
    }
    let mut all = cut_curves.clone();
    all.extend(chosen.iter().map(|(_, c, _)| c.clone()));
    verify_pants(p, &all)?;
    for (cj, c, walk_gammas) in chosen {
        let length: f64 = walk_gammas.iter().map(|&t| emb.gamma_length(t)).sum();
        curves.push(PantsCurve {
            label: c.label.clone(),
            splitter: true,
            source: cj,
            chords: walk_gammas,
            curve: c,
            length,
        });
    }

    Ok(PantsDecomposition {
        pieces: classified,
        components,
        chains,
        curves,
    })
}

/// Chord-level disjointness of two closed curves.
fn curves_disjoint(a: &CutCurve, b: &CutCurve) -> bool {
    a.chords
        .iter()
        .all(|x| b.chords.iter().all(|y| !crate::cutter::chords_cross(x, y)))
}

fn curve_embedded(a: &CutCurve) -> bool {
    for (i, x) in a.chords.iter().enumerate() {
        for y in &a.chords[i + 1..] {
            if crate::cutter::chords_cross(x, y) {
                return false;
            }
        }
    }
    true
}

/// Finds `need` mutually disjoint embedded splitters in the component whose
/// cut, together with the chain curves, matches the `expected` complement.
/// Shorter walks are tried before longer ones; the first hit wins.
fn search_splitters(
    p: &Polygon,
    orbits: &crate::polygon::VertexOrbitSet,
    comp: &NComponent,
    need: usize,
    cores: &[CutCurve],
    expected: &[(i64, usize)],
) -> Option<Vec<(CutCurve, Vec<usize>)>> {
    let all_walks = closed_walks(p, orbits, &comp.gammas);
    for max_len in [2usize, 3] {
        // Realizations of every walk up to this length, pre-screened
        // against the chain curves; entry = (curve, chords, walk id).
        let mut realized: Vec<(CutCurve, Vec<usize>, usize)> = Vec::new();
        for (wi, walk) in all_walks.iter().enumerate() {
            if walk.len() > max_len {
                continue;
            }
            for bits in 0..1usize << (2 * walk.len()) {
                let sides: Vec<(bool, bool)> = (0..walk.len())
                    .map(|i| (bits >> (2 * i) & 1 == 1, bits >> (2 * i + 1) & 1 == 1))
                    .collect();
                let Some(c) = realize_walk(p, walk, &sides, wi * 4) else {
                    continue;
                };
                if c.is_closed(p) && curve_embedded(&c) && cores.iter().all(|b| curves_disjoint(b, &c)) {
                    realized.push((c, walk.iter().map(|x| x.0).collect(), wi));
                }
            }
        }
        fn dfs(
            p: &Polygon,
            cores: &[CutCurve],
            realized: &[(CutCurve, Vec<usize>, usize)],
            need: usize,
            start: usize,
            acc: &mut Vec<usize>,
            expected: &[(i64, usize)],
        ) -> bool {
            if acc.len() == need {
                let mut all: Vec<CutCurve> = cores.to_vec();
                all.extend(acc.iter().map(|&i| realized[i].0.clone()));
                if verify_disjoint(p, &all).is_err() {
                    return false;
                }
                let Ok(comps) = cut_surface(p, &all) else {
                    return false;
                };
                let mut got: Vec<(i64, usize)> =
                    comps.iter().map(|c| (c.chi, c.boundary_circles)).collect();
                got.sort_unstable();
                return got == expected;
            }
            for i in start..realized.len() {
                // Distinct walks, mutually disjoint with what we have.
                if acc.iter().any(|&j| realized[j].2 == realized[i].2) {
                    continue;
                }
                if !acc.iter().all(|&j| curves_disjoint(&realized[j].0, &realized[i].0)) {
                    continue;
                }
                acc.push(i);
                if dfs(p, cores, realized, need, i + 1, acc, expected) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        let mut acc = Vec::new();
        if dfs(p, cores, &realized, need, 0, &mut acc, expected) {
            return Some(
                acc.into_iter()
                    .map(|i| (realized[i].0.clone(), realized[i].1.clone()))
                    .collect(),
            );
        }
    }
    None
}

/// Re-verifies a finished decomposition (used by the CLI and tests).
pub fn reverify(p: &Polygon, d: &PantsDecomposition) -> Result<(), CurveError> {
    let all: Vec<CutCurve> = d.curves.iter().map(|c| c.curve.clone()).collect();
    verify_pants(p, &all)?;
    let _ = cut_surface(p, &all)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{ConeDatum, DataSet};
    use crate::metric::embed_polygon;
    use crate::polygon::build_polygon;

    fn setup(n: u64, cone: &[(u64, u64)]) -> (Polygon, PolygonEmbedding) {
        let d = DataSet::new(
            n,
            0,
            0,
            cone.iter().map(|&(c, m)| ConeDatum::new(c, m)).collect(),
        );
        let p = build_polygon(&d).unwrap();
        let emb = embed_polygon(&p).unwrap();
        (p, emb)
    }

    #[test]
    fn octagon_decomposition() {
        let (p, emb) = setup(8, &[(1, 2), (1, 8), (3, 8)]);
        let d = extract_pants(&p, &emb).unwrap();
        assert_eq!(d.curves.len(), 3);
        assert_eq!(d.chains.len(), 2);
        assert_eq!(d.components.len(), 1);
        assert!(d.components[0].essential);
        assert_eq!(d.components[0].chi, -2);
        assert_eq!(d.components[0].circles.len(), 4);
        assert_eq!(d.curves.iter().filter(|c| c.splitter).count(), 1);
        reverify(&p, &d).unwrap();
    }

    #[test]
    fn decagon_decomposition() {
        let (p, emb) = setup(10, &[(1, 2), (1, 5), (3, 10)]);
        let d = extract_pants(&p, &emb).unwrap();
        assert_eq!(d.curves.len(), 3);
        assert_eq!(d.chains.len(), 3);
        // Both components are pants neighborhoods: no splitters.
        assert!(d.curves.iter().all(|c| !c.splitter));
        assert_eq!(d.components.len(), 2);
        assert!(d.components.iter().all(|c| c.chi == -1 && c.circles.len() == 3));
        reverify(&p, &d).unwrap();
    }

    #[test]
    fn genus3_24gon_decomposition() {
        let (p, emb) = setup(12, &[(1, 3), (3, 4), (11, 12)]);
        let d = extract_pants(&p, &emb).unwrap();
        assert_eq!(d.curves.len(), 6);
        assert_eq!(d.chains.len(), 5);
        assert_eq!(d.curves.iter().filter(|c| c.splitter).count(), 1);
        reverify(&p, &d).unwrap();
    }

    #[test]
    fn extraction_verifies_up_to_genus_4() {
        for g in 2..=4 {
            for ds in crate::dataset::enumerate_irreducible_type1(g) {
                let p = build_polygon(&ds).unwrap();
                let emb = embed_polygon(&p).unwrap();
                let d = extract_pants(&p, &emb)
                    .unwrap_or_else(|e| panic!("{ds}: {e}"));
                assert_eq!(d.curves.len(), 3 * g as usize - 3, "{ds}");
                assert!(d.curves.iter().all(|c| c.length > 0.0), "{ds}");
            }
        }
    }
}
