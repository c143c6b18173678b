//! Side-paired polygons realizing irreducible Type 1 actions.
//!
//! A data set `(n, 0; (c1,n1), (c2,n2), (c3,n))` (canonically ordered, so
//! `n1 <= n2 <= n`) is realized on a `k`-gon with `k = 2n` in general, and
//! `k = n` when `n1 = 2`. Edges are `a_1, ..., a_k` counterclockwise; corner
//! `i` sits between `a_{i-1}` and `a_i` (so corner `i` is the initial vertex
//! of `a_i`). The side pairing identifies `a_i` with `a_{pairing(i)}`
//! orientation-reversingly.
//!
//! Corner angles: gluing orbits of corners must have total angle `2 pi`.
//! With the pairing below the odd corners fall into `gcd(qj, n)` = `n/n2`
//! orbits of size `n2` and carry angle `2 pi / n2`; even corners fall into
//! `n/n1` orbits of size `n1` and carry `2 pi / n1`. (In the `k = n` case
//! `n1 = 2` and the would-be flat corners are the edge midpoints, so all `n`
//! polygon corners carry `2 pi / n2`.)

use serde::{Deserialize, Serialize};

use crate::dataset::{gcd, mod_inverse, ActionClass, DataSet};
use crate::error::PolygonError;

/// Exact rational multiple of pi: `(num / den) * pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiFrac {
    pub num: u64,
    pub den: u64,
}

impl PiFrac {
    pub fn new(num: u64, den: u64) -> Self {
        let g = gcd(num, den);
        PiFrac {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }
}

/// A side-paired `k`-gon built from an irreducible Type 1 data set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    pub dataset: DataSet,
    /// Number of edges: `2n`, or `n` when `n1 = 2`.
    pub k: usize,
    pub n: u64,
    pub n1: u64,
    pub n2: u64,
    /// Rotation angle of the generating isometry: `2 pi c3^{-1} / n`.
    pub theta: PiFrac,
    /// `q = (n / n2) c3^{-1} mod n`.
    pub q: u64,
    /// `j = n2 - c2`.
    pub j: u64,
    /// 1-based: edge `i` is identified with edge `pairing[i - 1]`.
    pub pairing: Vec<usize>,
    /// 1-based corner angles, as exact multiples of pi.
    pub corner_angles: Vec<PiFrac>,
}

/// Gluing orbits of polygon corners (the vertices of the glued surface).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOrbitSet {
    /// `orbit_of[i - 1]` is the orbit id of corner `i` (ids are 0-based,
    /// ordered by smallest corner).
    pub orbit_of: Vec<usize>,
    /// Orbit members, each sorted; orbits sorted by first member.
    pub orbits: Vec<Vec<usize>>,
}

impl VertexOrbitSet {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    /// Orbit id of 1-based corner `i` (taken mod `k` into `1..=k`).
    pub fn orbit(&self, i: usize) -> usize {
        let k = self.orbit_of.len();
        self.orbit_of[(i - 1) % k]
    }
}

/// Builds the side-paired polygon for an irreducible Type 1 data set.
pub fn build_polygon(d: &DataSet) -> Result<Polygon, PolygonError> {
    let class = d.classify()?;
    if class != ActionClass::Type1Irreducible {
        return Err(PolygonError::NotType1Irreducible(class));
    }
    let d = d.canonicalized();
    let n = d.n;
    let n1 = d.cone[0].m;
    let n2 = d.cone[1].m;
    let (c2, c3) = (d.cone[1].c, d.cone[2].c);
    debug_assert_eq!(d.cone[2].m, n);
    let c3_inv = mod_inverse(c3, n).expect("c3 is a unit mod n");
    let theta = PiFrac::new(2 * c3_inv, n);
    let q = (n / n2) * c3_inv % n;
    let j = n2 - c2;
    let qj = (q * j) % n;

    let k = if n1 != 2 { 2 * n as usize } else { n as usize };
    let mut pairing = vec![0usize; k];
    if n1 != 2 {
        // a_{2m+1}^{-1} ~ a_{2z}, z = m + qj (mod n), for m = 0..n-1.
        for m in 0..n as usize {
            let z = (m + qj as usize) % n as usize; // 0-based residue; edge 2z+... "a_{2z}" with z in 1..n
            let odd = 2 * m + 1;
            let even = 2 * (if z == 0 { n as usize } else { z });
            pairing[odd - 1] = even;
            pairing[even - 1] = odd;
        }
    } else {
        // a_{m+1}^{-1} ~ a_z, z = m + qj (mod n).
        for m in 0..n as usize {
            let z = (m + qj as usize - 1) % n as usize + 1;
            pairing[m] = z;
        }
    }
    for i in 1..=k {
        let p = pairing[i - 1];
        if p == 0 || p == i || pairing[p - 1] != i {
            return Err(PolygonError::BrokenPairing { edge: i });
        }
    }

    let corner_angles = (1..=k)
        .map(|i| {
            if n1 != 2 {
                if i % 2 == 1 {
                    PiFrac::new(2, n2)
                } else {
                    PiFrac::new(2, n1)
                }
            } else {
                PiFrac::new(2, n2)
            }
        })
        .collect();

    let poly = Polygon {
        dataset: d,
        k,
        n,
        n1,
        n2,
        theta,
        q,
        j,
        pairing,
        corner_angles,
    };
    // The gluing must produce a closed surface of the data set's genus.
    let g = poly.glued_genus()?;
    debug_assert_eq!(Some(g), poly.dataset.genus().ok());
    Ok(poly)
}

impl Polygon {
    /// 1-based pairing lookup.
    pub fn paired(&self, i: usize) -> usize {
        self.pairing[(i - 1) % self.k]
    }

    /// `q * j mod n`, the pairing shift parameter.
    pub fn qj(&self) -> u64 {
        self.q * self.j % self.n
    }

    /// Gluing orbits of corners. Identifying `a_i` reversed with
    /// `a_{pairing(i)}` matches corner `i+1` with corner `pairing(i)` and
    /// corner `i` with corner `pairing(i) + 1`.
    pub fn vertex_orbits(&self) -> VertexOrbitSet {
        let k = self.k;
        let mut uf: Vec<usize> = (0..k).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let r = find(uf, uf[x]);
                uf[x] = r;
            }
            uf[x]
        }
        fn union(uf: &mut Vec<usize>, a: usize, b: usize) {
            let (ra, rb) = (find(uf, a), find(uf, b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                uf[hi] = lo;
            }
        }
        for i in 1..=k {
            let p = self.paired(i);
            union(&mut uf, (i + 1 - 1) % k, p - 1);
            union(&mut uf, i - 1, (p + 1 - 1) % k);
        }
        let roots: Vec<usize> = (0..k).map(|x| find(&mut uf, x)).collect();
        let mut ids = std::collections::BTreeMap::new();
        for &r in &roots {
            let next = ids.len();
            ids.entry(r).or_insert(next);
        }
        let orbit_of: Vec<usize> = roots.iter().map(|r| ids[r]).collect();
        let mut orbits = vec![Vec::new(); ids.len()];
        for (idx, &o) in orbit_of.iter().enumerate() {
            orbits[o].push(idx + 1);
        }
        VertexOrbitSet { orbit_of, orbits }
    }

    /// Genus of the glued surface via `V - E + F = 2 - 2g` with `E = k/2`,
    /// `F = 1`.
    pub fn glued_genus(&self) -> Result<u64, PolygonError> {
        let v = self.vertex_orbits().count() as i64;
        let chi = v - (self.k as i64) / 2 + 1;
        let two_g = 2 - chi;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(PolygonError::ChiParity { chi });
        }
        Ok((two_g / 2) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::ConeDatum;

    fn ds(n: u64, cone: &[(u64, u64)]) -> DataSet {
        DataSet::new(
            n,
            0,
            0,
            cone.iter().map(|&(c, m)| ConeDatum::new(c, m)).collect(),
        )
    }

    #[test]
    fn golden_octagon_polygon() {
        let p = build_polygon(&ds(8, &[(1, 2), (1, 8), (3, 8)])).unwrap();
        assert_eq!(p.k, 8);
        assert_eq!(p.q, 3);
        assert_eq!(p.j, 7);
        assert_eq!(p.theta, PiFrac::new(6, 8));
        // a_i ~ a_{i + 4 mod 8}
        for i in 1..=8 {
            assert_eq!(p.paired(i), (i + 4 - 1) % 8 + 1, "edge {i}");
        }
        let orbits = p.vertex_orbits();
        assert_eq!(orbits.count(), 1);
        assert_eq!(p.glued_genus(), Ok(2));
        // All corners carry 2 pi / 8.
        assert!(p.corner_angles.iter().all(|&a| a == PiFrac::new(2, 8)));
    }

    #[test]
    fn golden_decagon_polygon() {
        let p = build_polygon(&ds(10, &[(1, 2), (1, 5), (3, 10)])).unwrap();
        assert_eq!(p.k, 10);
        assert_eq!(p.q, 4);
        assert_eq!(p.j, 4);
        for i in 1..=10 {
            assert_eq!(p.paired(i), (i + 5 - 1) % 10 + 1, "edge {i}");
        }
        let orbits = p.vertex_orbits();
        assert_eq!(orbits.count(), 2);
        assert_eq!(p.glued_genus(), Ok(2));
    }

    #[test]
    fn golden_24gon_polygon() {
        let p = build_polygon(&ds(12, &[(1, 3), (3, 4), (11, 12)])).unwrap();
        assert_eq!(p.k, 24);
        assert_eq!(p.q, 9);
        assert_eq!(p.j, 1);
        assert_eq!(p.paired(1), 18);
        assert_eq!(p.glued_genus(), Ok(3));
        // Odd corners carry 2 pi / n2 = pi/2, even corners 2 pi / n1 = 2 pi/3;
        // orbit angle sums are checked in the metric module's embedding tests,
        // but the combinatorial sum must already match 2 pi * V.
        let orbits = p.vertex_orbits();
        assert_eq!(orbits.count(), 7);
        for orbit in &orbits.orbits {
            let sum: f64 = orbit
                .iter()
                .map(|&c| p.corner_angles[c - 1].to_f64())
                .sum();
            assert!(
                (sum - 2.0 * std::f64::consts::PI).abs() < 1e-12,
                "orbit {orbit:?} angle sum {sum}"
            );
        }
    }

    #[test]
    fn rejects_non_type1() {
        let d = DataSet::new(2, 2, 1, vec![]);
        assert!(matches!(
            build_polygon(&d),
            Err(PolygonError::NotType1Irreducible(_))
        ));
    }

    #[test]
    fn pairing_commutes_with_rotation() {
        for g in 2..=5 {
            for d in crate::dataset::enumerate_irreducible_type1(g) {
                let p = build_polygon(&d).unwrap();
                let step = if p.k == 2 * p.n as usize { 2 } else { 1 };
                for i in 1..=p.k {
                    let rot = (i + step - 1) % p.k + 1;
                    let want = (p.paired(i) + step - 1) % p.k + 1;
                    assert_eq!(p.paired(rot), want, "{d} edge {i}");
                }
            }
        }
    }

    #[test]
    fn orbit_angle_sums_are_2pi_up_to_genus_5() {
        for g in 2..=5 {
            for d in crate::dataset::enumerate_irreducible_type1(g) {
                let p = build_polygon(&d).unwrap();
                assert_eq!(p.glued_genus().unwrap(), g, "{d}");
                for orbit in &p.vertex_orbits().orbits {
                    let sum: f64 = orbit
                        .iter()
                        .map(|&c| p.corner_angles[c - 1].to_f64())
                        .sum();
                    assert!(
                        (sum - 2.0 * std::f64::consts::PI).abs() < 1e-9,
                        "{d}: orbit {orbit:?} angle sum {sum}"
                    );
                }
            }
        }
    }
}
