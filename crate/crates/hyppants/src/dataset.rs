//! Data sets encoding conjugacy classes of finite cyclic actions on a closed
//! orientable surface.
//!
//! A data set `(n, g0, r; (c1,n1), ..., (cl,nl))` records the order `n` of the
//! action, the quotient genus `g0`, the rotation residue `r` (used only for
//! free actions), and one `(c, m)` pair per branch point: `m` is the order of
//! the local isotropy and `c` the rotation-number residue, a unit mod `m`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::DataSetError;

/// One branch-point datum: residue `c` and local order `m`, with
/// `1 <= c < m`, `gcd(c, m) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConeDatum {
    pub c: u64,
    pub m: u64,
}

impl ConeDatum {
    pub fn new(c: u64, m: u64) -> Self {
        ConeDatum { c, m }
    }
}

impl fmt::Display for ConeDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.m)
    }
}

/// A data set for a cyclic action of order `n` with quotient genus `g0`.
///
/// `r` must be nonzero exactly when the branch list is empty (free rotation).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DataSet {
    pub n: u64,
    pub g0: u64,
    pub r: u64,
    pub cone: Vec<ConeDatum>,
}

impl fmt::Display for DataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};", self.n, self.g0, self.r)?;
        for (i, cd) in self.cone.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{cd}")?;
        }
        write!(f, ")")
    }
}

/// Classification of a valid data set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActionClass {
    /// Free rotation: no branch points.
    RotationalFree,
    /// Branch data consists of `k` pairs `(s, n), (n - s, n)` (with `k = 1`
    /// when `n > 2`).
    RotationalNonFree,
    /// Signature `(0; n1, n2, n)`: realized by a side-paired polygon.
    Type1Irreducible,
    /// Signature `(g0; n1, n2, n)` with `g0 > 0`.
    Type1Reducible,
    /// Everything else.
    Type2,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Multiplicative inverse of `a` mod `m` (requires `gcd(a, m) = 1`, `m >= 1`).
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let egcd = num_integer::Integer::extended_gcd(&(a as i128), &(m as i128));
    if egcd.gcd != 1 {
        return None;
    }
    Some(egcd.x.rem_euclid(m as i128) as u64)
}

impl DataSet {
    pub fn new(n: u64, g0: u64, r: u64, cone: Vec<ConeDatum>) -> Self {
        DataSet { n, g0, r, cone }
    }

    /// Checks the defining conditions:
    ///
    /// 1. `n >= 1`; each `(c, m)` has `2 <= m | n`, `1 <= c < m`, `gcd(c, m) = 1`;
    /// 2. `r > 0` iff the branch list is empty, and then `gcd(r, n) = 1`;
    /// 3. when `g0 = 0`, the lcm of the branch orders omitting any single one
    ///    equals `n` (for `g0 > 0` no lcm constraint is imposed);
    /// 4. `sum_j (n / m_j) c_j = 0 (mod n)`;
    /// 5. the Riemann-Hurwitz genus is a nonnegative integer.
    pub fn validate(&self) -> Result<(), DataSetError> {
        if self.n == 0 {
            return Err(DataSetError::BadOrder { n: self.n });
        }
        if self.cone.is_empty() {
            if self.r == 0 {
                return Err(DataSetError::BadRotation {
                    r: self.r,
                    n: self.n,
                });
            }
            if self.r >= self.n || gcd(self.r, self.n) != 1 {
                return Err(DataSetError::BadRotation {
                    r: self.r,
                    n: self.n,
                });
            }
        } else if self.r != 0 {
            return Err(DataSetError::BadRotation {
                r: self.r,
                n: self.n,
            });
        }
        for cd in &self.cone {
            if cd.m < 2 || self.n % cd.m != 0 {
                return Err(DataSetError::BranchOrderNotDivisor { m: cd.m, n: self.n });
            }
            if cd.c == 0 || cd.c >= cd.m || gcd(cd.c, cd.m) != 1 {
                return Err(DataSetError::ResidueNotUnit { c: cd.c, m: cd.m });
            }
        }
        if self.g0 == 0 {
            for omit in 0..self.cone.len() {
                let l = self
                    .cone
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| *idx != omit)
                    .fold(1u64, |acc, (_, cd)| lcm(acc, cd.m));
                if l != self.n {
                    return Err(DataSetError::LcmCondition {
                        omitted: omit,
                        lcm: l,
                        n: self.n,
                    });
                }
            }
        }
        let total: u64 = self
            .cone
            .iter()
            .map(|cd| (self.n / cd.m) * cd.c % self.n)
            .fold(0, |acc, t| (acc + t) % self.n);
        if total % self.n != 0 {
            return Err(DataSetError::ResidueSum {
                sum_mod_n: total,
                n: self.n,
            });
        }
        self.genus_checked().map(|_| ())
    }

    /// Genus of the total surface from Riemann-Hurwitz:
    /// `2 - 2g = n * (2 - 2 g0 + sum_j (1/m_j - 1))`.
    pub fn genus(&self) -> Result<u64, DataSetError> {
        self.genus_checked()
    }

    fn genus_checked(&self) -> Result<u64, DataSetError> {
        // 2 - 2g = n(2 - 2 g0) + sum_j (n/m_j - n); integral since m_j | n.
        let base = self.n as i128 * (2 - 2 * self.g0 as i128);
        let branch: i128 = self
            .cone
            .iter()
            .map(|cd| (self.n / cd.m) as i128 - self.n as i128)
            .sum();
        let chi = base + branch; // = 2 - 2g
        let two_g = 2 - chi;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(DataSetError::GenusNotIntegral { two_g });
        }
        Ok((two_g / 2) as u64)
    }

    /// Classifies a valid data set into exactly one [`ActionClass`].
    pub fn classify(&self) -> Result<ActionClass, DataSetError> {
        self.validate()?;
        if self.cone.is_empty() {
            return Ok(ActionClass::RotationalFree);
        }
        if self.is_rotational_nonfree() {
            return Ok(ActionClass::RotationalNonFree);
        }
        if self.cone.len() == 3 && self.cone.iter().any(|cd| cd.m == self.n) {
            if self.g0 == 0 {
                return Ok(ActionClass::Type1Irreducible);
            }
            return Ok(ActionClass::Type1Reducible);
        }
        Ok(ActionClass::Type2)
    }

    /// Branch data matching `k` pairs `(s, n), (n - s, n)`, with `k = 1`
    /// forced when `n > 2`.
    fn is_rotational_nonfree(&self) -> bool {
        let l = self.cone.len();
        if l == 0 || l % 2 != 0 {
            return false;
        }
        if self.n > 2 && l != 2 {
            return false;
        }
        if self.cone.iter().any(|cd| cd.m != self.n) {
            return false;
        }
        // Pair off residues s with n - s.
        let mut residues: Vec<u64> = self.cone.iter().map(|cd| cd.c).collect();
        while let Some(s) = residues.pop() {
            let want = self.n - s;
            match residues.iter().position(|&x| x == want) {
                Some(pos) => {
                    residues.swap_remove(pos);
                }
                None => return false,
            }
        }
        true
    }

    /// Canonical form: branch data sorted by `(m, c)` ascending. Two data
    /// sets with the same branch multiset are the same conjugacy class; the
    /// positional reading of `(c1,n1),(c2,n2),(c3,n)` in the polygon
    /// construction is taken from this ordering.
    pub fn canonicalized(&self) -> DataSet {
        let mut cone = self.cone.clone();
        cone.sort_by_key(|cd| (cd.m, cd.c));
        DataSet {
            n: self.n,
            g0: self.g0,
            r: self.r,
            cone,
        }
    }
}

/// All irreducible Type 1 data sets of total genus `g`, canonicalized and
/// sorted. The order of the action is bounded by `4g + 2`.
pub fn enumerate_irreducible_type1(g: u64) -> Vec<DataSet> {
    enumerate_irreducible_type1_with_bound(g, 4 * g + 2)
}

/// Enumeration with an explicit search window on `n`; the default window of
/// `4g + 2` is sharp (widening it must produce nothing new).
pub fn enumerate_irreducible_type1_with_bound(g: u64, n_max: u64) -> Vec<DataSet> {
    let mut out = std::collections::BTreeSet::new();
    for n in 2..=n_max {
        let divisors: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
        for &n1 in &divisors {
            for &n2 in &divisors {
                if n1 > n2 || lcm(n1, n2) != n {
                    continue;
                }
                for c1 in units(n1) {
                    for c2 in units(n2) {
                        for c3 in units(n) {
                            let sum = ((n / n1) * c1 + (n / n2) * c2 + c3) % n;
                            if sum != 0 {
                                continue;
                            }
                            let d = DataSet::new(
                                n,
                                0,
                                0,
                                vec![
                                    ConeDatum::new(c1, n1),
                                    ConeDatum::new(c2, n2),
                                    ConeDatum::new(c3, n),
                                ],
                            )
                            .canonicalized();
                            if d.validate().is_ok() && d.genus() == Ok(g) {
                                out.insert(d);
                            }
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn units(m: u64) -> Vec<u64> {
    (1..m).filter(|&c| gcd(c, m) == 1).collect()
}
