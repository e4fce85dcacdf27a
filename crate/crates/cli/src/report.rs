//! Structured analysis report with a versioned schema; serializes to
//! line-delimited-friendly JSON and round-trips losslessly.

use std::collections::BTreeMap;

use perron_core::growth::{BoundednessVerdict, GridParams};
use perron_core::spectral::{CyclicityReport, SpectrumReport};
use perron_core::structure::{IrreducibilityReport, ZhangVerdict};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundednessSection {
    pub power: BoundednessVerdict,
    pub cesaro: BoundednessVerdict,
    /// `sup_j ||T^j|| / j`, the quadratic-resolvent-growth criterion.
    pub sup_power_over_j: f64,
    /// Present when the spectral radius is 1 within tolerance.
    pub abel: Option<BoundednessVerdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    /// SHA-256 of the raw input bytes.
    pub input_sha256: String,
    pub n: usize,
    pub norm_choice: String,
    pub nonneg_certified: bool,
    pub spectrum: SpectrumReport,
    /// Absent in spectral-only mode (uncertified input).
    pub irreducibility: Option<IrreducibilityReport>,
    pub cyclicity: CyclicityReport,
    pub boundedness: BoundednessSection,
    pub zhang: Option<ZhangVerdict>,
    pub grid: GridParams,
    pub horizon: usize,
    pub tolerances: BTreeMap<String, f64>,
}

impl AnalysisReport {
    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            serde_json::to_string(self).expect("report serializes")
        }
    }
}

pub fn pinned_tolerances() -> BTreeMap<String, f64> {
    use perron_core::tol;
    let mut m = BTreeMap::new();
    m.insert("cluster_rel".into(), tol::CLUSTER_REL);
    m.insert("rank_rel".into(), tol::RANK_REL);
    m.insert("eps_per".into(), tol::EPS_PER);
    m.insert("resolvent_rel_resid".into(), tol::RESOLVENT_REL_RESID);
    m.insert("angular_tol".into(), tol::ANGULAR_TOL);
    m.insert("ineq_slack".into(), tol::INEQ_SLACK);
    m.insert("trend_bounded".into(), tol::TREND_BOUNDED);
    m.insert("trend_unbounded".into(), tol::TREND_UNBOUNDED);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use perron_core::generators;
    use perron_core::growth;
    use perron_core::lattice::NormChoice;
    use perron_core::spectral;
    use perron_core::structure;
    use perron_core::tol;

    #[test]
    fn report_roundtrips_losslessly() {
        let (t, _) = generators::cyclic_family(3, 2, 9).unwrap();
        let spec = spectral::spectrum(&t).unwrap();
        let pc = growth::power_and_cesaro(&t, 40);
        let grid = GridParams::default();
        let abel = growth::abel_bound(&t, &GridParams::with_range(2, 14)).unwrap();
        let report = AnalysisReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_sha256: "ab".repeat(32),
            n: t.dim(),
            norm_choice: NormChoice::Inf.to_string(),
            nonneg_certified: t.nonneg_certified(),
            cyclicity: spectral::is_cyclic_set(
                &spec.peripheral,
                spec.spectral_radius,
                tol::ANGULAR_TOL,
                Some(t.dim()),
            )
            .unwrap(),
            irreducibility: Some(structure::irreducibility(&t).unwrap()),
            spectrum: spec,
            boundedness: BoundednessSection {
                power: pc.power,
                cesaro: pc.cesaro,
                sup_power_over_j: pc.sup_power_over_j,
                abel: Some(abel.verdict),
            },
            zhang: Some(structure::zhang_condition(&t, 8).unwrap()),
            grid,
            horizon: 40,
            tolerances: pinned_tolerances(),
        };
        let json = report.to_json(false);
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
        // line-delimited friendly: single line
        assert!(!json.contains('\n'));
    }
}
