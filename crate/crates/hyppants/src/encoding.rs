//! Canonical tuple encoding of pants decompositions, and the distance
//! between equivalence classes of tuples.
//!
//! A genus-`g` decomposition is recorded as a tuple of length `2g` in which
//! each of the values `1..=g` occurs exactly twice; positions index the
//! attachment circles, values the handles. Tuples are considered up to the
//! moves: full reversal, swapping the first two positions, swapping the
//! last two positions, and relabeling values. The distance between two
//! classes is the minimal number of adjacent transpositions connecting any
//! two representatives.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::TupleError;
use crate::pants::PantsDecomposition;
use crate::polygon::Polygon;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalTuple {
    pub values: Vec<usize>,
}

impl CanonicalTuple {
    pub fn new(values: Vec<usize>) -> Result<Self, TupleError> {
        let t = CanonicalTuple { values };
        t.validate()?;
        Ok(t)
    }

    pub fn genus(&self) -> usize {
        self.values.len() / 2
    }

    pub fn validate(&self) -> Result<(), TupleError> {
        let g = self.values.len() / 2;
        let bad = || TupleError::NotCanonical {
            values: self.values.clone(),
            genus: g,
        };
        if self.values.len() != 2 * g || g == 0 {
            return Err(bad());
        }
        let mut counts = vec![0usize; g + 1];
        for &v in &self.values {
            if v < 1 || v > g {
                return Err(bad());
            }
            counts[v] += 1;
        }
        if counts[1..].iter().any(|&c| c != 2) {
            return Err(bad());
        }
        Ok(())
    }

    /// Relabels values in order of first appearance; the result is the
    /// canonical representative of the tuple under value relabeling.
    pub fn relabeled(&self) -> CanonicalTuple {
        let g = self.genus();
        let mut map = vec![0usize; g + 1];
        let mut next = 1;
        let values = self
            .values
            .iter()
            .map(|&v| {
                if map[v] == 0 {
                    map[v] = next;
                    next += 1;
                }
                map[v]
            })
            .collect();
        CanonicalTuple { values }
    }
}

impl std::fmt::Display for CanonicalTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Number of inversions of a permutation of `0..n` — its word length in
/// adjacent transpositions.
pub fn inversion_length(perm: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Minimal inversion count over the `2^g` position bijections carrying `a`
/// onto `b` value for value.
pub fn tuple_distance(a: &CanonicalTuple, b: &CanonicalTuple) -> Result<usize, TupleError> {
    a.validate()?;
    b.validate()?;
    if a.values.len() != b.values.len() {
        return Err(TupleError::LengthMismatch { a: a.values.len(), b: b.values.len() });
    }
    let g = a.genus();
    // Positions of each value in a and b.
    let pos = |t: &CanonicalTuple, v: usize| -> [usize; 2] {
        let mut it = t.values.iter().enumerate().filter(|(_, &x)| x == v);
        let p0 = it.next().expect("value present").0;
        let p1 = it.next().expect("value present twice").0;
        [p0, p1]
    };
    let pa: Vec<[usize; 2]> = (1..=g).map(|v| pos(a, v)).collect();
    let pb: Vec<[usize; 2]> = (1..=g).map(|v| pos(b, v)).collect();
    let mut best = usize::MAX;
    for bits in 0..1usize << g {
        // perm[i] = position in `a` matched to position i of `b`.
        let mut perm = vec![0usize; 2 * g];
        for v in 0..g {
            let flip = bits >> v & 1 == 1;
            let (x, y) = if flip { (1, 0) } else { (0, 1) };
            perm[pb[v][0]] = pa[v][x];
            perm[pb[v][1]] = pa[v][y];
        }
        best = best.min(inversion_length(&perm));
    }
    Ok(best)
}

/// The full reversal move.
pub fn reversal(t: &CanonicalTuple) -> CanonicalTuple {
    let mut values = t.values.clone();
    values.reverse();
    CanonicalTuple { values }
}

/// All members of the equivalence class of `t`, by closure under the moves.
pub fn class_members(t: &CanonicalTuple, cap: usize) -> Result<BTreeSet<CanonicalTuple>, TupleError> {
    t.validate()?;
    let n = t.values.len();
    let g = t.genus();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.clone());
    queue.push_back(t.clone());
    while let Some(cur) = queue.pop_front() {
        let mut nexts: Vec<CanonicalTuple> = Vec::new();
        nexts.push(reversal(&cur));
        let mut s = cur.values.clone();
        s.swap(0, 1);
        nexts.push(CanonicalTuple { values: s });
        let mut s = cur.values.clone();
        s.swap(n - 2, n - 1);
        nexts.push(CanonicalTuple { values: s });
        for v in 1..g {
            // Value transpositions generate all relabelings.
            let values = cur
                .values
                .iter()
                .map(|&x| {
                    if x == v {
                        v + 1
                    } else if x == v + 1 {
                        v
                    } else {
                        x
                    }
                })
                .collect();
            nexts.push(CanonicalTuple { values });
        }
        for nx in nexts {
            if seen.insert(nx.clone()) {
                if seen.len() > cap {
                    return Err(TupleError::OrbitCapExceeded { cap });
                }
                queue.push_back(nx);
            }
        }
    }
    Ok(seen)
}

/// Distance between the classes of `a` and `b`: the minimum tuple distance
/// over both orbits.
pub fn class_distance(a: &CanonicalTuple, b: &CanonicalTuple, cap: usize) -> Result<usize, TupleError> {
    if a.values.len() != b.values.len() {
        return Err(TupleError::LengthMismatch { a: a.values.len(), b: b.values.len() });
    }
    let oa = class_members(a, cap)?;
    let ob = class_members(b, cap)?;
    let mut best = usize::MAX;
    for x in &oa {
        for y in &ob {
            best = best.min(tuple_distance(x, y)?);
        }
    }
    Ok(best)
}

/// Encodes a verified decomposition as a canonical tuple.
///
/// For `k = n` polygons the regions read in the alternating outward order
/// are the tuple positions and the glued region pairs its fibers. For
/// `k = 2n` polygons the chains that survive a spanning tree of the
/// (essential component, chain) multigraph are the handles; their terminal
/// circles, deterministically ordered, are the positions.
pub fn from_pants(p: &Polygon, d: &PantsDecomposition) -> Result<CanonicalTuple, TupleError> {
    let g = p
        .dataset
        .genus()
        .map_err(|_| TupleError::UnhandledCase)? as usize;
    let k = p.k;
    let half = k / 2;
    if k == p.n as usize {
        // Alternating outward region sequence.
        let seq: Vec<usize> = if p.n2 == p.n {
            // n = 4g: (R_g, R_{g+1}, R_{g-1}, R_{g+2}, ..., R_1, R_{2g}).
            (0..g)
                .flat_map(|i| [g - i, g + 1 + i])
                .collect()
        } else if p.n2 == p.n / 2 {
            // n = 4g + 2: (R_{g+1}, R_g, R_{g+2}, ..., R_1, R_{2g+1}),
            // with the self-glued middle region dropped below.
            std::iter::once(g + 1)
                .chain((0..g).flat_map(|i| [g - i, g + 2 + i]))
                .collect()
        } else {
            return Err(TupleError::UnhandledCase);
        };
        let piece_of = |r: usize| {
            d.pieces
                .iter()
                .position(|cp| cp.piece.regions.contains(&r))
                .expect("region in a piece")
        };
        let values: Vec<usize> = seq
            .into_iter()
            .filter(|&r| d.pieces[piece_of(r)].piece.regions.len() == 2)
            .map(piece_of)
            .collect();
        if values.len() != 2 * g {
            return Err(TupleError::UnhandledCase);
        }
        let t = CanonicalTuple {
            values: values.iter().map(|&v| v + 1).collect(),
        }
        .relabeled();
        t.validate()?;
        return Ok(t);
    }

    // k = 2n: spanning tree over (essential component, chain) multigraph.
    let chains = &d.chains;
    let n_comp = d.components.len();
    let mut uf: Vec<usize> = (0..n_comp).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut handles: Vec<usize> = Vec::new();
    for (ci, chain) in chains.iter().enumerate() {
        if chain.ends.len() != 2 {
            return Err(TupleError::UnhandledCase);
        }
        let (a, b) = (chain.ends[0].0, chain.ends[1].0);
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra == rb {
            handles.push(ci);
        } else {
            uf[ra] = rb;
        }
    }
    if handles.len() != g {
        return Err(TupleError::UnhandledCase);
    }
    // Terminal circles of the handle chains, deterministically ordered.
    let mut circles: Vec<(usize, usize, usize, usize)> = Vec::new(); // (key gamma, key region, end idx, handle)
    for (hi, &ci) in handles.iter().enumerate() {
        for (ei, (_, circ)) in chains[ci].ends.iter().enumerate() {
            let min_gamma = *circ.gammas.iter().min().expect("nonempty circle");
            let min_region = d.pieces[circ.piece].piece.regions[0];
            circles.push((min_gamma, min_region, ei, hi));
        }
    }
    circles.sort_unstable();
    let values: Vec<usize> = circles.iter().map(|&(_, _, _, h)| h + 1).collect();
    let t = (CanonicalTuple { values }).relabeled();
    t.validate()?;
    let _ = half;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{ConeDatum, DataSet};
    use crate::metric::embed_polygon;
    use crate::pants::extract_pants;
    use crate::polygon::build_polygon;

    fn tup(v: &[usize]) -> CanonicalTuple {
        CanonicalTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(CanonicalTuple::new(vec![1, 1, 2, 2]).is_ok());
        assert!(CanonicalTuple::new(vec![1, 1, 1, 2]).is_err());
        assert!(CanonicalTuple::new(vec![1, 1, 3, 3]).is_err());
        assert!(CanonicalTuple::new(vec![1, 2, 3]).is_err());
    }

    #[test]
    fn reversal_has_six_inversions_at_genus_2() {
        // The reversal of 4 positions is the longest element: 6 inversions.
        let perm: Vec<usize> = (0..4).rev().collect();
        assert_eq!(inversion_length(&perm), 6);
        let a = tup(&[1, 2, 1, 2]);
        let d = tuple_distance(&a, &reversal(&a)).unwrap();
        // Reversal is realized by a connecting permutation of length <= 6,
        // but shorter matchings exist for symmetric tuples.
        assert!(d <= 6);
    }

    #[test]
    fn genus2_class_table() {
        let all: Vec<CanonicalTuple> = vec![
            tup(&[1, 1, 2, 2]),
            tup(&[1, 2, 1, 2]),
            tup(&[1, 2, 2, 1]),
            tup(&[2, 1, 1, 2]),
            tup(&[2, 1, 2, 1]),
            tup(&[2, 2, 1, 1]),
        ];
        let o1 = class_members(&all[0], 1000).unwrap();
        assert_eq!(o1.len(), 2);
        assert!(o1.contains(&tup(&[2, 2, 1, 1])));
        let o2 = class_members(&all[1], 1000).unwrap();
        assert_eq!(o2.len(), 4);
        assert!(o2.contains(&tup(&[1, 2, 2, 1])));
        // Every genus-2 tuple lies in one of the two classes.
        for t in &all {
            assert!(o1.contains(t) || o2.contains(t));
        }
    }

    #[test]
    fn class_distance_example() {
        let a = tup(&[1, 1, 2, 2]);
        let b = tup(&[1, 2, 1, 2]);
        assert_eq!(class_distance(&a, &b, 1000).unwrap(), 1);
        assert_eq!(class_distance(&a, &a, 1000).unwrap(), 0);
        // Symmetry.
        assert_eq!(
            class_distance(&a, &b, 1000).unwrap(),
            class_distance(&b, &a, 1000).unwrap()
        );
    }

    fn encode(n: u64, cone: &[(u64, u64)]) -> CanonicalTuple {
        let ds = DataSet::new(
            n,
            0,
            0,
            cone.iter().map(|&(c, m)| ConeDatum::new(c, m)).collect(),
        );
        let p = build_polygon(&ds).unwrap();
        let emb = embed_polygon(&p).unwrap();
        let d = extract_pants(&p, &emb).unwrap();
        from_pants(&p, &d).unwrap()
    }

    #[test]
    fn octagon_and_decagon_encode_to_1122() {
        assert_eq!(encode(8, &[(1, 2), (1, 8), (3, 8)]).values, vec![1, 1, 2, 2]);
        assert_eq!(encode(10, &[(1, 2), (1, 5), (3, 10)]).values, vec![1, 1, 2, 2]);
    }

    #[test]
    fn doubled_polygons_encode_validly() {
        // Every k = 2n data set at genus 2 goes through the spanning-tree
        // encoder and yields a well-formed tuple.
        let mut seen = 0;
        for ds in crate::dataset::enumerate_irreducible_type1(2) {
            let p = build_polygon(&ds).unwrap();
            if p.k != 2 * p.n as usize {
                continue;
            }
            seen += 1;
            let emb = embed_polygon(&p).unwrap();
            let d = extract_pants(&p, &emb).unwrap();
            let t = from_pants(&p, &d).unwrap_or_else(|e| panic!("{ds}: {e}"));
            assert_eq!(t.genus(), 2, "{ds}");
        }
        assert!(seen > 0);
    }
}
