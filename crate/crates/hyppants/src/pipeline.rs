//! End-to-end comparison pipeline: from two data sets to a deterministic
//! distance report.

use serde::{Deserialize, Serialize};

use crate::dataset::DataSet;
use crate::encoding::{class_distance, from_pants, CanonicalTuple};
use crate::error::PipelineError;
use crate::metric::{
    bers_default, embed_polygon, is_admissible, length_bound, radial_lengths,
    resolve_conventions, ConventionResolution, RadialLengths, SignPolicy,
};
use crate::pants::extract_pants;
use crate::polygon::build_polygon;

/// Quasi-isometry constants in the distance bound `K * D + eps`. The
/// defaults `K = 1`, `eps = 0` are illustrative placeholders, not derived
/// constants; override them with calibrated values when available.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiIsometryParams {
    pub k_const: f64,
    pub eps: f64,
}

impl Default for QuasiIsometryParams {
    fn default() -> Self {
        QuasiIsometryParams {
            k_const: 1.0,
            eps: 0.0,
        }
    }
}

/// Pipeline configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// Admissibility cutoff; `None` uses the genus default.
    pub bers_override: Option<f64>,
    pub params: QuasiIsometryParams,
    /// Numeric tolerance for internal certification checks.
    pub tol: f64,
    pub sign_policy: SignPolicy,
    /// Cap on tuple equivalence-class enumeration.
    pub orbit_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        let tol = std::env::var("HYPPANTS_TOL")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(1e-9);
        Config {
            bers_override: None,
            params: QuasiIsometryParams::default(),
            tol,
            sign_policy: SignPolicy::Auto,
            orbit_cap: 1_000_000,
        }
    }
}

/// One decomposition curve in the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub label: String,
    pub splitter: bool,
    pub length: f64,
}

/// Everything derived from a single data set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceAnalysis {
    pub dataset: DataSet,
    pub genus: u64,
    pub k: usize,
    pub n1: u64,
    pub n2: u64,
    pub q: u64,
    pub j: u64,
    pub radial: RadialLengths,
    pub convention: ConventionResolution,
    pub curves: Vec<CurveReport>,
    /// Uniform upper bound on the decomposition curve lengths.
    pub length_bound: f64,
    pub bers_constant: f64,
    pub admissible: bool,
    pub tuple: CanonicalTuple,
}

/// The comparison report. Serialization is fully deterministic: the two
/// analyses are stored in canonical order regardless of argument order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub schema: String,
    pub genus: u64,
    pub surfaces: [SurfaceAnalysis; 2],
    pub class_distance: usize,
    pub params: QuasiIsometryParams,
    /// `K * D + eps`.
    pub wp_upper_bound: f64,
    pub constants_note: String,
}

pub const REPORT_SCHEMA: &str = "hyppants/report/1";

/// Analyzes a single data set end to end.
pub fn analyze(d: &DataSet, config: &Config) -> Result<SurfaceAnalysis, PipelineError> {
    let p = build_polygon(d)?;
    let genus = p.dataset.genus().expect("validated by build_polygon");
    let emb = embed_polygon(&p)?;
    let radial = radial_lengths(p.n, p.n1, p.n2)?;
    let convention = resolve_conventions(&emb);
    let decomposition = extract_pants(&p, &emb)?;
    let tuple = from_pants(&p, &decomposition)?;
    let lengths = decomposition.lengths();
    let bers = config.bers_override.unwrap_or_else(|| bers_default(genus));
    let curves = decomposition
        .curves
        .iter()
        .map(|c| CurveReport {
            label: c.label.clone(),
            splitter: c.splitter,
            length: c.length,
        })
        .collect();
    Ok(SurfaceAnalysis {
        dataset: p.dataset.clone(),
        genus,
        k: p.k,
        n1: p.n1,
        n2: p.n2,
        q: p.q,
        j: p.j,
        radial,
        convention,
        curves,
        length_bound: length_bound(&radial),
        bers_constant: bers,
        admissible: is_admissible(&lengths, bers),
        tuple,
    })
}

/// Compares two data sets of the same genus and bounds the Weil-Petersson
/// distance between the corresponding points of moduli space.
pub fn compare(d1: &DataSet, d2: &DataSet, config: &Config) -> Result<DistanceReport, PipelineError> {
    let a1 = analyze(d1, config)?;
    let a2 = analyze(d2, config)?;
    if a1.genus != a2.genus {
        return Err(PipelineError::GenusMismatch {
            a: a1.genus,
            b: a2.genus,
        });
    }
    let genus = a1.genus;
    // Canonical pair order: the report is identical for either argument
    // order.
    let (a1, a2) = if a1.dataset.to_string() <= a2.dataset.to_string() {
        (a1, a2)
    } else {
        (a2, a1)
    };
    let d = class_distance(&a1.tuple, &a2.tuple, config.orbit_cap)?;
    let bound = config.params.k_const * d as f64 + config.params.eps;
    Ok(DistanceReport {
        schema: REPORT_SCHEMA.to_string(),
        genus,
        surfaces: [a1, a2],
        class_distance: d,
        params: config.params,
        wp_upper_bound: bound,
        constants_note:
            "K and eps are illustrative defaults; the bound is K * class_distance + eps".to_string(),
    })
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
    fn report_is_order_independent() {
        let a = ds(8, &[(1, 2), (1, 8), (3, 8)]);
        let b = ds(10, &[(1, 2), (1, 5), (3, 10)]);
        let cfg = Config::default();
        let r1 = serde_json::to_string(&compare(&a, &b, &cfg).unwrap()).unwrap();
        let r2 = serde_json::to_string(&compare(&b, &a, &cfg).unwrap()).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn bound_is_exact_product() {
        let a = ds(8, &[(1, 2), (1, 8), (3, 8)]);
        let b = ds(10, &[(1, 2), (1, 5), (3, 10)]);
        let mut cfg = Config::default();
        cfg.params = QuasiIsometryParams {
            k_const: 2.5,
            eps: 0.25,
        };
        let r = compare(&a, &b, &cfg).unwrap();
        assert_eq!(r.wp_upper_bound, 2.5 * r.class_distance as f64 + 0.25);
    }

    #[test]
    fn genus_mismatch_rejected() {
        let a = ds(8, &[(1, 2), (1, 8), (3, 8)]);
        let b = ds(12, &[(1, 3), (3, 4), (11, 12)]);
        let cfg = Config::default();
        match compare(&a, &b, &cfg) {
            Err(PipelineError::GenusMismatch { a: 2, b: 3 }) => {}
            other => panic!("expected genus mismatch, got {other:?}"),
        }
    }

    #[test]
    fn octagon_analysis_is_admissible() {
        let a = analyze(&ds(8, &[(1, 2), (1, 8), (3, 8)]), &Config::default()).unwrap();
        assert_eq!(a.genus, 2);
        assert_eq!(a.tuple.values, vec![1, 1, 2, 2]);
        assert!(a.admissible);
        assert!(a.curves.iter().all(|c| c.length < a.bers_constant));
        assert!(a.curves.iter().all(|c| c.length <= a.length_bound + 1e-9));
    }
}
