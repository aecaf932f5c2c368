//! Sweep results and their CSV / JSON serialization.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{GeometrySpec, GridSpec};
use super::fit::PowerLawFit;
use super::predict::Regime;
use crate::geometry::LocationClass;
use crate::strip2d::StripMeshOptions;
use crate::Result;

pub const CSV_HEADER: &str = "alpha,n,E_strip,E_lambda_prime,E_lambda_rho,E_predicted,residual,regime,n_s,n_t,r";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub alpha: f64,
    pub n: usize,
    pub e_strip: f64,
    pub e_lambda_prime: f64,
    pub e_lambda_rho: f64,
    pub e_predicted: f64,
    pub residual: f64,
    pub regime: Regime,
    pub n_s: usize,
    pub n_t: usize,
    pub r: f64,
}

impl ReportRow {
    pub fn failed(&self) -> bool {
        !self.e_strip.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentFit {
    pub n: usize,
    pub fit: Option<PowerLawFit>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowFailure {
    pub alpha: f64,
    pub error: String,
}

/// A row whose strip eigenvalue leaves the window spanned by the effective operators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichViolation {
    pub alpha: f64,
    pub n: usize,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRecord {
    pub alpha: f64,
    pub r: f64,
    pub bound_a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub geometry: GeometrySpec,
    pub length: f64,
    pub ell: f64,
    pub sigma: f64,
    pub rho: f64,
    pub n_max: usize,
    pub grids: GridSpec,
    pub strip_mesh: StripMeshOptions,
    pub effective_degree: usize,
    pub k_star: f64,
    pub s_star: f64,
    pub location_class: LocationClass,
    pub m: u32,
    pub dm: f64,
    pub regime: Regime,
    /// Bound constant per α; each includes a 10% margin over the sampled supremum.
    pub bound_a: Vec<BoundRecord>,
    pub bound_margin: f64,
    pub notes: Vec<String>,
    pub failures: Vec<RowFailure>,
    pub sandwich_violations: Vec<SandwichViolation>,
    /// Rows with E_lambda_prime < E_lambda_rho.
    pub ordering_violations: Vec<(f64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub rows: Vec<ReportRow>,
    pub fitted_exponents: Vec<ExponentFit>,
    pub metadata: ReportMetadata,
}

fn float(out: &mut String, x: f64) {
    // 17 significant digits round-trip every double
    let _ = write!(out, "{x:.16e}");
}

impl AsymptoticReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(256 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            float(&mut out, row.alpha);
            let _ = write!(out, ",{},", row.n);
            for x in [row.e_strip, row.e_lambda_prime, row.e_lambda_rho, row.e_predicted, row.residual] {
                float(&mut out, x);
                out.push(',');
            }
            let _ = write!(out, "{},{},{},", row.regime.as_str(), row.n_s, row.n_t);
            float(&mut out, row.r);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes `report.csv` and `report.json` into `dir`, creating it if needed.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let csv = dir.join("report.csv");
        let json = dir.join("report.json");
        std::fs::write(&csv, self.to_csv())?;
        std::fs::write(&json, self.to_json()?)?;
        Ok((csv, json))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(rows: Vec<ReportRow>) -> AsymptoticReport {
        let metadata = ReportMetadata {
            geometry: GeometrySpec::Shape { shape: "circle:1".into(), phase: 0.0 },
            length: 2.0 * std::f64::consts::PI,
            ell: std::f64::consts::PI,
            sigma: 0.5,
            rho: 0.25,
            n_max: 1,
            grids: GridSpec::default(),
            strip_mesh: StripMeshOptions::default(),
            effective_degree: 3,
            k_star: 1.0,
            s_star: 0.0,
            location_class: LocationClass::Interior,
            m: 0,
            dm: 0.0,
            regime: Regime::Constant,
            bound_a: vec![],
            bound_margin: 1.1,
            notes: vec![],
            failures: vec![],
            sandwich_violations: vec![],
            ordering_violations: vec![],
        };
        AsymptoticReport { rows, fitted_exponents: vec![], metadata }
    }

    #[test]
    fn csv_rows_round_trip_and_keep_nan() {
        let row = ReportRow {
            alpha: 10.0,
            n: 1,
            e_strip: -110.1 + 1e-13,
            e_lambda_prime: 0.1,
            e_lambda_rho: f64::NAN,
            e_predicted: -110.5,
            residual: 0.4,
            regime: Regime::Constant,
            n_s: 64,
            n_t: 33,
            r: 10f64.powf(-0.5),
        };
        let csv = report(vec![row.clone()]).to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), CSV_HEADER.split(',').count());
        assert_eq!(fields[2].parse::<f64>().unwrap(), row.e_strip);
        assert!(fields[4].parse::<f64>().unwrap().is_nan());
        assert_eq!(fields[7], "constant");
        assert_eq!(fields[10].parse::<f64>().unwrap(), row.r);
        assert!(lines.next().is_none());
    }

    #[test]
    fn write_creates_both_files() {
        let dir = tempfile::tempdir().unwrap();
        let (csv, json) = report(vec![]).write(&dir.path().join("nested")).unwrap();
        assert_eq!(std::fs::read_to_string(csv).unwrap(), format!("{CSV_HEADER}\n"));
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
        assert_eq!(v["metadata"]["regime"], "constant");
    }
}
