//! Exact verification of curve systems by cutting.
//!
//! Curves are closed chains of chords with endpoints at rational positions
//! strictly inside polygon edges. Cutting the polygon along all chords and
//! regluing its edges yields the complement of the curve system in the
//! closed surface; we compute the Euler characteristic and boundary-circle
//! count of every component with integer arithmetic only.

use num_rational::Ratio;

use crate::error::CurveError;
use crate::polygon::Polygon;

pub type Param = Ratio<i64>;

/// A point on the polygon boundary: edge `e` (1-based) at parameter
/// `t` with `0 < t < 1`, measured from the initial corner of the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BPos {
    pub edge: usize,
    pub t: Param,
}

impl BPos {
    pub fn new(edge: usize, t: Param) -> Self {
        BPos { edge, t }
    }

    /// Coordinate in `[0, k)` around the polygon boundary.
    pub fn global(&self) -> Ratio<i64> {
        Ratio::from_integer(self.edge as i64 - 1) + self.t
    }
}

/// Image of a boundary point under the side pairing.
pub fn glue_pos(p: &Polygon, pos: BPos) -> BPos {
    BPos {
        edge: p.paired(pos.edge),
        t: Ratio::from_integer(1) - pos.t,
    }
}

/// A chord of the polygon between two boundary points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub a: BPos,
    pub b: BPos,
}

/// A closed curve on the surface: chords traversed in order, the end of
/// each glued to the start of the next (cyclically).
#[derive(Debug, Clone, Default)]
pub struct CutCurve {
    pub label: String,
    pub chords: Vec<Chord>,
}

impl CutCurve {
    /// Checks the closed-chain condition.
    pub fn is_closed(&self, p: &Polygon) -> bool {
        self.chords.iter().zip(self.chords.iter().cycle().skip(1)).all(|(c, n)| {
            glue_pos(p, c.b) == n.a
        })
    }
}

/// Strict crossing test: the chords' endpoints interleave on the circle.
/// Endpoints are assumed pairwise distinct.
pub fn chords_cross(c1: &Chord, c2: &Chord) -> bool {
    let (a1, b1) = order(c1);
    let inside = |g: Ratio<i64>| a1 < g && g < b1;
    inside(c2.a.global()) != inside(c2.b.global())
}

fn order(c: &Chord) -> (Ratio<i64>, Ratio<i64>) {
    let (x, y) = (c.a.global(), c.b.global());
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

/// A connected component of the cut-open surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Component {
    pub chi: i64,
    pub boundary_circles: usize,
    pub faces: usize,
}

/// Verifies that the curves are closed chains, each is embedded, and no two
/// cross. Indices in errors refer to positions in `curves`.
pub fn verify_disjoint(p: &Polygon, curves: &[CutCurve]) -> Result<(), CurveError> {
    for (i, c) in curves.iter().enumerate() {
        if !c.is_closed(p) {
            return Err(CurveError::NotPants {
                reason: format!("curve {} ({}) is not a closed chain", i, c.label),
            });
        }
    }
    let mut endpoints: Vec<Ratio<i64>> = curves
        .iter()
        .flat_map(|c| c.chords.iter().flat_map(|ch| [ch.a.global(), ch.b.global()]))
        .collect();
    endpoints.sort_unstable();
    if endpoints.windows(2).any(|w| w[0] == w[1]) {
        return Err(CurveError::NotPants {
            reason: "coincident chord endpoints".into(),
        });
    }
    for i in 0..curves.len() {
        for j in i..curves.len() {
            for (ci, x) in curves[i].chords.iter().enumerate() {
                for (cj, y) in curves[j].chords.iter().enumerate() {
                    if i == j && ci >= cj {
                        continue;
                    }
                    if chords_cross(x, y) {
                        return Err(CurveError::NotDisjoint {
                            a: curves[i].label.clone(),
                            b: curves[j].label.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Cuts the surface along the curves and returns the components of the
/// complement, each with its Euler characteristic and boundary-circle
/// count. Call [`verify_disjoint`] first.
pub fn cut_surface(p: &Polygon, curves: &[CutCurve]) -> Result<Vec<Component>, CurveError> {
    let k = p.k as i64;
    // Boundary points: all chord endpoints plus the polygon corners.
    let mut globals: Vec<Ratio<i64>> = (0..k).map(Ratio::from_integer).collect();
    for c in curves {
        for ch in &c.chords {
            globals.push(ch.a.global());
            globals.push(ch.b.global());
        }
    }
    globals.sort_unstable();
    globals.dedup();
    let m = globals.len();
    let point = |g: Ratio<i64>| globals.binary_search(&g).expect("known boundary point");

    // Edges of the planar graph: arcs 0..m (arc i: point i -> i+1 mod m),
    // then chords.
    #[derive(Clone, Copy, PartialEq)]
    enum EKind {
        Arc,
        ChordE,
    }
    let mut edges: Vec<(usize, usize, EKind)> =
        (0..m).map(|i| (i, (i + 1) % m, EKind::Arc)).collect();
    let n_arcs = m;
    for c in curves {
        for ch in &c.chords {
            edges.push((point(ch.a.global()), point(ch.b.global()), EKind::ChordE));
        }
    }
    // Half-edge 2e goes tail->head, 2e+1 the reverse.
    let tail = |h: usize| {
        let (u, v, _) = edges[h / 2];
        if h % 2 == 0 {
            u
        } else {
            v
        }
    };
    let head = |h: usize| tail(h ^ 1);

    // CCW rotation of outgoing half-edges at each point: forward arc, then
    // the chord (at most one per point), then the backward arc.
    let mut chord_at: Vec<Option<usize>> = vec![None; m];
    for (e, &(u, v, kind)) in edges.iter().enumerate() {
        if kind == EKind::ChordE {
            for (pt, h) in [(u, 2 * e), (v, 2 * e + 1)] {
                if chord_at[pt].replace(h).is_some() {
                    return Err(CurveError::NotPants {
                        reason: "coincident chord endpoints".into(),
                    });
                }
            }
        }
    }
    let rotation: Vec<Vec<usize>> = (0..m)
        .map(|v| {
            let fwd = 2 * v; // arc v -> v+1, outgoing
            let bwd = 2 * ((v + m - 1) % m) + 1; // arc v-1 -> v reversed
            match chord_at[v] {
                Some(c) => vec![fwd, c, bwd],
                None => vec![fwd, bwd],
            }
        })
        .collect();

    // Face tracing, faces on the left: successor of h is the rotation
    // predecessor of its twin at head(h).
    let nh = 2 * edges.len();
    let succ: Vec<usize> = (0..nh)
        .map(|h| {
            let v = head(h);
            let rot = &rotation[v];
            let idx = rot.iter().position(|&x| x == (h ^ 1)).expect("twin at head");
            rot[(idx + rot.len() - 1) % rot.len()]
        })
        .collect();
    let mut face_of = vec![usize::MAX; nh];
    let mut face_edges: Vec<Vec<usize>> = Vec::new();
    for start in 0..nh {
        if face_of[start] != usize::MAX {
            continue;
        }
        let f = face_edges.len();
        let mut cycle = Vec::new();
        let mut h = start;
        loop {
            face_of[h] = f;
            cycle.push(h);
            h = succ[h];
            if h == start {
                break;
            }
        }
        face_edges.push(cycle);
    }
    // The outer face is the one traversing arc 0 backwards.
    let outer = face_of[1];
    debug_assert_eq!(face_edges.len() as i64 - 1, edges.len() as i64 - m as i64 + 1);

    // Pair up the arcs under the side gluing.
    let image = |g: Ratio<i64>| -> Ratio<i64> {
        let e = g.floor().to_integer() as usize + 1;
        let t = g - Ratio::from_integer(e as i64 - 1);
        let se = p.paired(e) as i64;
        Ratio::from_integer(se - 1) + (Ratio::from_integer(1) - t)
    };
    let mut arc_partner = vec![usize::MAX; n_arcs];
    for i in 0..n_arcs {
        let (u, v, _) = edges[i];
        let (ga, gb) = (globals[u], globals[v]);
        // Use the arc midpoint to find the image arc; endpoints may be
        // corners shared between edges.
        let len = if v == 0 {
            Ratio::from_integer(k) - ga
        } else {
            gb - ga
        };
        let mid = ga + len / 2;
        let img_mid = {
            let g = image(mid);
            if g < Ratio::from_integer(0) {
                g + Ratio::from_integer(k)
            } else {
                g
            }
        };
        let j = match globals.binary_search(&img_mid) {
            Ok(_) => {
                return Err(CurveError::NotPants {
                    reason: "arc midpoint collides with a marked point".into(),
                })
            }
            Err(pos) => (pos + m - 1) % m,
        };
        arc_partner[i] = j;
    }
    for i in 0..n_arcs {
        if arc_partner[arc_partner[i]] != i {
            return Err(CurveError::NotPants {
                reason: format!("edge gluing does not match arcs ({i})"),
            });
        }
    }

    // Interior faces only from here on.
    let is_interior = |f: usize| f != outer;
    let next_in_face: Vec<usize> = succ.clone();

    // Union-find over faces (components) and face corners (vertices of the
    // cut surface). The corner at the tail of half-edge h is keyed by h.
    let mut face_uf = UnionFind::new(face_edges.len());
    let mut corner_uf = UnionFind::new(nh);
    for i in 0..n_arcs {
        let j = arc_partner[i];
        let (h, h2) = (2 * i, 2 * j); // forward half-edges, interior side
        debug_assert!(is_interior(face_of[h]) && is_interior(face_of[h2]));
        face_uf.union(face_of[h], face_of[h2]);
        // The gluing reverses orientation: start of h ~ end of h2.
        corner_uf.union(h, next_in_face[h2]);
        corner_uf.union(next_in_face[h], h2);
    }

    // Tally per component.
    let mut comp_ids: Vec<usize> = (0..face_edges.len())
        .filter(|&f| is_interior(f))
        .map(|f| face_uf.find(f))
        .collect();
    comp_ids.sort_unstable();
    comp_ids.dedup();
    let comp_index = |f: usize, uf: &mut UnionFind| -> usize {
        let root = uf.find(f);
        comp_ids.binary_search(&root).expect("component root")
    };

    let mut faces_n = vec![0i64; comp_ids.len()];
    let mut edges_n = vec![0i64; comp_ids.len()];
    let mut verts = vec![std::collections::BTreeSet::new(); comp_ids.len()];
    for f in 0..face_edges.len() {
        if !is_interior(f) {
            continue;
        }
        let c = comp_index(f, &mut face_uf);
        faces_n[c] += 1;
        for &h in &face_edges[f] {
            verts[c].insert(corner_uf.find(h));
            match edges[h / 2].2 {
                EKind::ChordE => edges_n[c] += 1, // each chord side is an edge
                EKind::Arc => {
                    // Glued pairs: count once, at the smaller arc index.
                    if h % 2 == 0 && h / 2 <= arc_partner[h / 2] {
                        edges_n[c] += 1;
                    }
                }
            }
        }
    }

    // Boundary circles: chord half-edges chained around cut vertices.
    let mut next_boundary = std::collections::BTreeMap::new();
    for f in 0..face_edges.len() {
        if !is_interior(f) {
            continue;
        }
        for &h in &face_edges[f] {
            if edges[h / 2].2 != EKind::ChordE {
                continue;
            }
            let mut x = next_in_face[h];
            loop {
                match edges[x / 2].2 {
                    EKind::ChordE => break,
                    EKind::Arc => {
                        let h2 = 2 * arc_partner[x / 2];
                        x = next_in_face[h2];
                    }
                }
            }
            next_boundary.insert(h, x);
        }
    }
    let mut circles = vec![0usize; comp_ids.len()];
    let mut seen = std::collections::BTreeSet::new();
    for (&start, _) in &next_boundary {
        if seen.contains(&start) {
            continue;
        }
        let c = comp_index(face_of[start], &mut face_uf);
        circles[c] += 1;
        let mut h = start;
        loop {
            seen.insert(h);
            h = next_boundary[&h];
            if h == start {
                break;
            }
        }
    }

    let comps: Vec<Component> = (0..comp_ids.len())
        .map(|c| Component {
            chi: verts[c].len() as i64 - edges_n[c] + faces_n[c],
            boundary_circles: circles[c],
            faces: faces_n[c] as usize,
        })
        .collect();
    // The complement of circles in the closed surface keeps its Euler
    // characteristic.
    let total_chi: i64 = comps.iter().map(|c| c.chi).sum();
    let g = p.dataset.genus().expect("valid data set") as i64;
    if total_chi != 2 - 2 * g {
        return Err(CurveError::NotPants {
            reason: format!("component characteristics sum to {total_chi}, expected {}", 2 - 2 * g),
        });
    }
    Ok(comps)
}

/// Verifies a full pants decomposition: `3g - 3` pairwise disjoint closed
/// curves whose complement consists of `2g - 2` components, all of Euler
/// characteristic `-1` with three boundary circles.
pub fn verify_pants(p: &Polygon, curves: &[CutCurve]) -> Result<(), CurveError> {
    let g = p.dataset.genus().expect("valid data set") as usize;
    if curves.len() != 3 * g - 3 {
        return Err(CurveError::NotPants {
            reason: format!("{} curves, expected {}", curves.len(), 3 * g - 3),
        });
    }
    verify_disjoint(p, curves)?;
    let comps = cut_surface(p, curves)?;
    if comps.len() != 2 * g - 2 {
        return Err(CurveError::NotPants {
            reason: format!("{} complement components, expected {}", comps.len(), 2 * g - 2),
        });
    }
    for c in &comps {
        if c.chi != -1 || c.boundary_circles != 3 {
            return Err(CurveError::NotPants {
                reason: format!(
                    "component with chi = {}, {} boundary circles",
                    c.chi, c.boundary_circles
                ),
            });
        }
    }
    Ok(())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
