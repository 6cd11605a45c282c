//! Run reports: a plain-text summary per run and CSV rows for sweeps.

use std::fmt;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::Connectivity;
use crate::labels::LabelMap;
use crate::metric::MetricKind;
use crate::seeds::SeedOrder;

use super::pnm::LabelFormat;

pub const CSV_HEADER: &str = "algorithm,metric,lambda,param,connectivity,seed_order,regions,millis";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Flat,
    Eta,
    Mu,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Flat => "flat",
            Algorithm::Eta => "eta",
            Algorithm::Mu => "mu",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "flat" | "lambda" => Ok(Algorithm::Flat),
            "eta" => Ok(Algorithm::Eta),
            "mu" => Ok(Algorithm::Mu),
            other => Err(format!(
                "unknown algorithm '{other}' (expected flat, eta or mu)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentationReport {
    pub algorithm: Algorithm,
    pub metric: MetricKind,
    pub lambda: f64,
    /// η or μ; absent for flat zones.
    pub param: Option<f64>,
    pub connectivity: Connectivity,
    /// Absent for flat zones.
    pub seed_order: Option<SeedOrder>,
    pub regions: usize,
    pub sizes: Vec<usize>,
    pub millis: f64,
    /// Set once the label map has been written.
    pub label_format: Option<LabelFormat>,
}

impl SegmentationReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        algorithm: Algorithm,
        metric: MetricKind,
        lambda: f64,
        param: Option<f64>,
        connectivity: Connectivity,
        seed_order: Option<SeedOrder>,
        labels: &LabelMap,
        millis: f64,
    ) -> Self {
        Self {
            algorithm,
            metric,
            lambda,
            param,
            connectivity,
            seed_order,
            regions: labels.count(),
            sizes: labels.sizes(),
            millis,
            label_format: None,
        }
    }

    fn param_name(&self) -> &'static str {
        match self.algorithm {
            Algorithm::Flat => "param",
            Algorithm::Eta => "eta",
            Algorithm::Mu => "mu",
        }
    }

    /// One `key: value` line per field.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        };
        line("algorithm", self.algorithm.to_string());
        line("metric", self.metric.to_string());
        line("lambda", self.lambda.to_string());
        if let Some(p) = self.param {
            line(self.param_name(), p.to_string());
        }
        line("connectivity", self.connectivity.to_string());
        if let Some(order) = self.seed_order {
            line("seed_order", order.to_string());
        }
        line("regions", self.regions.to_string());
        line(
            "sizes",
            self.sizes
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        );
        line("millis", format!("{:.3}", self.millis));
        if let Some(format) = self.label_format {
            let note = match format {
                LabelFormat::Pgm16 => format.to_string(),
                LabelFormat::Hsc1 => format!("{format} (too many regions for a 16-bit graymap)"),
            };
            line("label_format", note);
        }
        out
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.3}",
            self.algorithm,
            self.metric,
            self.lambda,
            self.param.map(|p| p.to_string()).unwrap_or_default(),
            self.connectivity,
            self.seed_order.map(|o| o.to_string()).unwrap_or_default(),
            self.regions,
            self.millis
        )
    }
}

pub fn write_report(report: &SegmentationReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, report.to_text()).map_err(|e| Error::io(path, e))
}

/// Appends one row to a sweep CSV, writing the header first if the file is new or empty.
pub fn append_sweep_row(report: &SegmentationReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    let empty = file.metadata().map_err(|e| Error::io(path, e))?.len() == 0;
    let mut text = String::new();
    if empty {
        text.push_str(CSV_HEADER);
        text.push('\n');
    }
    text.push_str(&report.csv_row());
    text.push('\n');
    file.write_all(text.as_bytes())
        .map_err(|e| Error::io(path, e))
}
