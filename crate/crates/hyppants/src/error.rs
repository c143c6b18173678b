//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataSetError {
    #[error("order n = {n} must be positive")]
    BadOrder { n: u64 },
    #[error("rotation residue r = {r} invalid for order {n} (r > 0 iff no branch points, gcd(r, n) = 1)")]
    BadRotation { r: u64, n: u64 },
    #[error("branch order {m} does not divide n = {n} (or is < 2)")]
    BranchOrderNotDivisor { m: u64, n: u64 },
    #[error("residue {c} is not a unit mod {m}")]
    ResidueNotUnit { c: u64, m: u64 },
    #[error("lcm of branch orders omitting index {omitted} is {lcm}, expected {n}")]
    LcmCondition { omitted: usize, lcm: u64, n: u64 },
    #[error("sum of (n/m_j) c_j is {sum_mod_n} mod {n}, expected 0")]
    ResidueSum { sum_mod_n: u64, n: u64 },
    #[error("Riemann-Hurwitz gives 2g = {two_g}, not a nonnegative even integer")]
    GenusNotIntegral { two_g: i128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("data set is not irreducible Type 1: {0:?}")]
    NotType1Irreducible(crate::dataset::ActionClass),
    #[error(transparent)]
    DataSet(#[from] DataSetError),
    #[error("side pairing is not a fixed-point-free involution at edge {edge}")]
    BrokenPairing { edge: usize },
    #[error("gluing gives V - E + F = {chi}, not an even Euler characteristic 2 - 2g")]
    ChiParity { chi: i64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("signature (n, n1, n2) = ({n}, {n1}, {n2}) is not hyperbolic: 1/n1 + 1/n2 + 1/n >= 1")]
    NotHyperbolic { n: u64, n1: u64, n2: u64 },
    #[error("point ({x}, {y}) lies outside the open unit disk")]
    OutsideDisk { x: f64, y: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("mirror pairing violated: edge {i} pairs to {si} but edge {mi} pairs to {msi}")]
    MirrorViolation {
        i: usize,
        si: usize,
        mi: usize,
        msi: usize,
    },
    #[error("gcd criterion disagrees with vertex-orbit trace at index {index}: gcd predicts {gcd_pred}, trace gives {trace}")]
    CriteriaMismatch {
        index: usize,
        gcd_pred: bool,
        trace: bool,
    },
    #[error("piece over regions {regions:?} has {circles} boundary circles; expected 2, 3, or 4")]
    UnknownShape { regions: Vec<usize>, circles: usize },
    #[error("piece classification from coincidences ({predicted}) disagrees with boundary-circle count {circles} for regions {regions:?}")]
    ClassificationMismatch {
        regions: Vec<usize>,
        predicted: &'static str,
        circles: usize,
    },
    #[error("curves {a} and {b} are not disjoint")]
    NotDisjoint { a: String, b: String },
    #[error("candidate system is not a pants decomposition: {reason}")]
    NotPants { reason: String },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("tuple {values:?} is not canonical: values must cover 1..={genus} with every fiber of size 2")]
    NotCanonical { values: Vec<usize>, genus: usize },
    #[error("tuples have different lengths {a} and {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("equivalence-class search exceeded orbit cap {cap}")]
    OrbitCapExceeded { cap: usize },
    #[error("polygon does not fit any handled encoding case")]
    UnhandledCase,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("genus mismatch: {a} vs {b}")]
    GenusMismatch { a: u64, b: u64 },
    #[error(transparent)]
    DataSet(#[from] DataSetError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Tuple(#[from] TupleError),
}
